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
 * @file codes.hpp
 * @brief Matrix codes (subspaces of M(n, q)) under the trace form
 * f(A, B) = Tr(AB), and their hulls.
 */

#include <cstddef>
#include <vector>

#include "tiso/error.hpp"
#include "tiso/matrix.hpp"
#include "tiso/tensor.hpp"

namespace tiso {

/// Subspace of M(n, q) held as the reduced echelon basis of its row-major
/// vectorizations, so equal subspaces compare equal.
class MatrixCode {
 public:
  MatrixCode(Field f, std::size_t n) : f_(std::move(f)), n_(n) {}

  static MatrixCode span(const Field& f, std::size_t n, const std::vector<Matrix>& gens) {
    MatrixCode c(f, n);
    std::vector<Vec> vs;
    vs.reserve(gens.size());
    for (const auto& g : gens) {
      require(g.rows() == n && g.cols() == n, Errc::ShapeMismatch, "code generator shape");
      vs.push_back(g.entries());
    }
    c.basis_ = echelon_basis(f, vs, n * n);
    return c;
  }

  const Field& field() const noexcept { return f_; }
  std::size_t ambient_n() const noexcept { return n_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<Vec>& basis_vectors() const noexcept { return basis_; }

  Matrix basis(std::size_t i) const { return Matrix(f_, n_, n_, basis_.at(i)); }

  std::vector<Matrix> basis_matrices() const {
    std::vector<Matrix> out;
    for (std::size_t i = 0; i < basis_.size(); ++i) out.push_back(basis(i));
    return out;
  }

  bool contains(const Matrix& X) const {
    std::vector<Vec> vs = basis_;
    vs.push_back(X.entries());
    return echelon_basis(f_, vs, n_ * n_).size() == basis_.size();
  }

  friend bool operator==(const MatrixCode& a, const MatrixCode& b) noexcept {
    return a.n_ == b.n_ && a.f_ == b.f_ && a.basis_ == b.basis_;
  }

 private:
  Field f_;
  std::size_t n_;
  std::vector<Vec> basis_;
};

struct SliceCode {
  MatrixCode code;
  bool independent = false;
};

inline SliceCode code_from_slices(const Tensor3& A, Direction d) {
  const auto s = slices(A, d);
  require(!s.empty() && s[0].is_square(), Errc::ShapeMismatch, "slices must be square matrices");
  auto code = MatrixCode::span(A.field(), s[0].rows(), s);
  const bool indep = code.dim() == s.size();
  return {std::move(code), indep};
}

/// G(i, j) = Tr(C_i C_j) on the canonical basis.
inline Matrix gram_trace_form(const MatrixCode& C) {
  const auto B = C.basis_matrices();
  Matrix G(C.field(), B.size(), B.size());
  for (std::size_t i = 0; i < B.size(); ++i)
    for (std::size_t j = i; j < B.size(); ++j) G(i, j) = G(j, i) = trace_product(B[i], B[j]);
  return G;
}

/// C intersected with its orthogonal complement under Tr(XY).
inline MatrixCode hull(const MatrixCode& C) {
  const Matrix G = gram_trace_form(C);
  const Field& F = C.field();
  const auto& basis = C.basis_vectors();
  std::vector<Matrix> gens;
  for (const auto& k : right_kernel(G)) {
    Vec x(C.ambient_n() * C.ambient_n(), 0);
    for (std::size_t i = 0; i < k.size(); ++i) detail::axpy(F, x.data(), k[i], basis[i].data(), x.size());
    gens.emplace_back(F, C.ambient_n(), C.ambient_n(), std::move(x));
  }
  return MatrixCode::span(F, C.ambient_n(), gens);
}

/// L C R = { L X R : X in C }.
inline MatrixCode equivalent_code(const MatrixCode& C, const Matrix& L, const Matrix& R) {
  require(det(L) != 0 && det(R) != 0, Errc::Singular, "equivalence by a singular matrix");
  std::vector<Matrix> gens;
  for (const auto& X : C.basis_matrices()) gens.push_back(L * X * R);
  return MatrixCode::span(C.field(), C.ambient_n(), gens);
}

/// T C T^{-1}.
inline MatrixCode conjugate_code(const MatrixCode& C, const Matrix& T) {
  return equivalent_code(C, T, inverse(T));
}

}  // namespace tiso
