/*
 * Copyright 2026 The tiso Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

/**
 * @file conj.hpp
 * @brief Intertwiner spaces {X : X A_i = B_i X} of matrix tuples, conjugacy
 * search, and the unital algebra generated by a pair of matrices.
 */

#include <cstddef>
#include <optional>
#include <vector>

#include "tiso/error.hpp"
#include "tiso/matrix.hpp"
#include "tiso/rng.hpp"

namespace tiso {

namespace detail {

inline std::size_t tuple_side(const std::vector<Matrix>& As, const std::vector<Matrix>& Bs) {
  require(As.size() == Bs.size(), Errc::ShapeMismatch, "tuples differ in length");
  if (As.empty()) return 0;
  const std::size_t n = As[0].rows();
  for (const auto* t : {&As, &Bs})
    for (const auto& M : *t) {
      require(M.rows() == n && M.cols() == n, Errc::ShapeMismatch, "tuple members must be n x n");
      if (!(M.field() == As[0].field())) fail(Errc::FieldMismatch, "tuple members over different fields");
    }
  return n;
}

/// Krylov matrix [w, A w, ..., A^{n-1} w] (columns).
inline Matrix krylov(const Matrix& A, const Vec& w) {
  const std::size_t n = A.rows();
  Matrix K(A.field(), n, n);
  Vec v = w;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) K(i, j) = v[i];
    if (j + 1 < n) v = mat_vec(A, v);
  }
  return K;
}

/// Cyclic vector for A among e_1..e_n and eight fixed pseudo-random vectors;
/// returns the Krylov matrix and its inverse.
inline std::optional<std::pair<Matrix, Matrix>> cyclic_krylov(const Matrix& A) {
  const std::size_t n = A.rows();
  const Field& F = A.field();
  Rng rng(0x6379636c6963ULL ^ n);
  for (std::size_t c = 0; c < n + 8; ++c) {
    Vec w;
    if (c < n) {
      w.assign(n, 0);
      w[c] = 1;
    } else {
      w = random_vector(F, n, rng);
    }
    Matrix K = krylov(A, w);
    auto inv = inverse_det(K);
    if (inv.inverse) return std::make_pair(std::move(K), std::move(*inv.inverse));
  }
  return std::nullopt;
}

// With A_k cyclic, X A_k = B_k X forces X = K_B(X w) K_A^{-1}, so X is linear in
// y = X w: X = sum_j y_j M_j, M_j = K_B(e_j) K_A^{-1}. Every intertwining
// equation then becomes n^2 linear equations in the n unknowns y.
inline std::vector<Matrix> intertwiners_cyclic(const std::vector<Matrix>& As, const std::vector<Matrix>& Bs,
                                               std::size_t k, const Matrix& KAinv) {
  const Field& F = As[0].field();
  const std::size_t n = As[0].rows(), m = As.size();
  // powers of B_k; column j of B_k^t is B_k^t e_j
  std::vector<Matrix> Bpow;
  Bpow.push_back(Matrix::identity(F, n));
  for (std::size_t t = 1; t < n; ++t) Bpow.push_back(Bs[k] * Bpow.back());
  std::vector<Matrix> Ms;
  for (std::size_t j = 0; j < n; ++j) {
    Matrix Kb(F, n, n);
    for (std::size_t t = 0; t < n; ++t)
      for (std::size_t i = 0; i < n; ++i) Kb(i, t) = Bpow[t](i, j);
    Ms.push_back(Kb * KAinv);
  }
  Matrix sys(F, m * n * n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) {
      const Matrix D = Ms[j] * As[i] - Bs[i] * Ms[j];
      for (std::size_t e = 0; e < n * n; ++e) sys(i * n * n + e, j) = D.data()[e];
    }
  std::vector<Vec> gens;
  for (const auto& y : right_kernel(sys)) {
    Vec x(n * n, 0);
    for (std::size_t j = 0; j < n; ++j) detail::axpy(F, x.data(), y[j], Ms[j].data(), n * n);
    gens.push_back(std::move(x));
  }
  std::vector<Matrix> out;
  for (auto& v : echelon_basis(F, gens, n * n)) out.emplace_back(F, n, n, std::move(v));
  return out;
}

// n^2 unknowns x_{r n + c} = X(r, c); equation (r, c) of pair i is
// sum_k X(r,k) A_i(k,c) - sum_k B_i(r,k) X(k,c) = 0.
inline std::vector<Matrix> intertwiners_dense(const std::vector<Matrix>& As, const std::vector<Matrix>& Bs) {
  const Field& F = As[0].field();
  const std::size_t n = As[0].rows(), m = As.size(), N = n * n;
  Matrix sys(F, m * N, N);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        Elem* row = sys.data() + (i * N + r * n + c) * N;
        for (std::size_t k = 0; k < n; ++k) {
          row[r * n + k] = F.add(row[r * n + k], As[i](k, c));
          row[k * n + c] = F.sub(row[k * n + c], Bs[i](r, k));
        }
      }
  std::vector<Matrix> out;
  for (auto& v : right_kernel(sys)) out.emplace_back(F, n, n, std::move(v));
  return out;
}

}  // namespace detail

/// Reduced echelon basis (as n^2-vectors) of {X : X A_i = B_i X for all i}.
/// Uses an O(m n^4) path when some A_i has a cyclic vector among the fixed
/// candidates, else the dense n^2-unknown system.
inline std::vector<Matrix> intertwiner_space(const std::vector<Matrix>& As, const std::vector<Matrix>& Bs) {
  const std::size_t n = detail::tuple_side(As, Bs);
  if (As.empty()) fail(Errc::ShapeMismatch, "empty tuple has no defined side length");
  if (n == 0) return {};
  for (std::size_t k = 0; k < As.size(); ++k) {
    if (auto kry = detail::cyclic_krylov(As[k])) return detail::intertwiners_cyclic(As, Bs, k, kry->second);
  }
  return detail::intertwiners_dense(As, Bs);
}

inline std::vector<Matrix> centralizer(const std::vector<Matrix>& As) { return intertwiner_space(As, As); }

enum class ConjStatus { Conjugate, NotConjugate, Undecided };

struct ConjCoset {
  ConjStatus status = ConjStatus::NotConjugate;
  std::optional<Matrix> representative;  // invertible, X A_i = B_i X
  std::vector<Matrix> basis;             // intertwiner space
  std::size_t dim() const noexcept { return basis.size(); }
};

/// Exact when the intertwiner space has dimension <= 1; otherwise tests up
/// to 8n random span elements and reports Undecided if none is invertible.
inline ConjCoset conj_coset(const std::vector<Matrix>& As, const std::vector<Matrix>& Bs, Rng& rng) {
  ConjCoset out;
  out.basis = intertwiner_space(As, Bs);
  if (out.basis.empty()) return out;
  const Field& F = As[0].field();
  const std::size_t n = As[0].rows();
  if (out.basis.size() == 1) {
    if (det(out.basis[0]) != 0) {
      out.status = ConjStatus::Conjugate;
      out.representative = out.basis[0];
    }
    return out;
  }
  for (std::size_t t = 0; t < 8 * n; ++t) {
    Matrix X(F, n, n);
    for (const auto& b : out.basis) detail::axpy(F, X.data(), rng.below(F.q()), b.data(), n * n);
    if (det(X) != 0) {
      out.status = ConjStatus::Conjugate;
      out.representative = std::move(X);
      return out;
    }
  }
  out.status = ConjStatus::Undecided;
  return out;
}

namespace detail {

/// Incrementally maintained reduced echelon basis.
class EchelonSpace {
 public:
  EchelonSpace(Field f, std::size_t len) : f_(std::move(f)), len_(len) {}

  std::size_t dim() const noexcept { return rows_.size(); }

  /// Adds v if independent; returns whether it was.
  bool insert(Vec v) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Elem c = v[piv_[r]];
      if (c) axpy(f_, v.data(), f_.neg(c), rows_[r].data(), len_);
    }
    std::size_t p = 0;
    while (p < len_ && v[p] == 0) ++p;
    if (p == len_) return false;
    scale_in_place(f_, v.data(), f_.inv(v[p]), len_);
    for (auto& row : rows_)
      if (row[p]) axpy(f_, row.data(), f_.neg(row[p]), v.data(), len_);
    rows_.push_back(std::move(v));
    piv_.push_back(p);
    return true;
  }

 private:
  Field f_;
  std::size_t len_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> piv_;
};

}  // namespace detail

/// Dimension of the unital algebra generated by the given matrices.
/// Words are extended one letter per round from the newly added elements
/// only; the dimension grows every round until stable, so at most n^2 + 1
/// rounds run.
inline std::size_t algebra_closure_dim(const std::vector<Matrix>& gens) {
  require(!gens.empty(), Errc::ShapeMismatch, "no generators");
  const std::size_t n = gens[0].rows();
  for (const auto& g : gens) require(g.rows() == n && g.cols() == n, Errc::ShapeMismatch, "generators must be n x n");
  const Field& F = gens[0].field();
  detail::EchelonSpace space(F, n * n);
  std::vector<Matrix> frontier{Matrix::identity(F, n)};
  space.insert(frontier[0].entries());
  for (std::size_t round = 0; round <= n * n && !frontier.empty(); ++round) {
    std::vector<Matrix> next;
    for (const auto& w : frontier)
      for (const auto& g : gens) {
        Matrix x = w * g;
        if (space.insert(x.entries())) next.push_back(std::move(x));
        if (space.dim() == n * n) return n * n;
      }
    frontier = std::move(next);
  }
  return space.dim();
}

/// True iff {A1, A2} generate all of M(n, q) as a unital algebra.
inline bool generates_full_algebra(const Matrix& A1, const Matrix& A2) {
  require(A1.is_square() && A1.rows() == A2.rows() && A2.is_square(), Errc::ShapeMismatch, "pair shapes");
  const std::size_t n = A1.rows();
  return algebra_closure_dim({A1, A2}) == n * n;
}

}  // namespace tiso
