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
 * @file tensor.hpp
 * @brief Cubic 3- and 4-way arrays over F_q, their slicings, group actions,
 * flattening, and witness verification.
 *
 * Entries are stored lexicographically in (i, j, k[, l]); all indices are
 * 0-based. The flattening index is iota(i, j) = i*n + j on both axes.
 */

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tiso/error.hpp"
#include "tiso/gf.hpp"
#include "tiso/matrix.hpp"
#include "tiso/rng.hpp"

namespace tiso {

class Tensor3 {
 public:
  Tensor3(Field f, std::size_t l, std::size_t m, std::size_t n)
      : f_(std::move(f)), d_{l, m, n}, a_(l * m * n, 0) {}

  Tensor3(Field f, std::size_t l, std::size_t m, std::size_t n, std::vector<Elem> entries)
      : f_(std::move(f)), d_{l, m, n}, a_(std::move(entries)) {
    require(a_.size() == l * m * n, Errc::ShapeMismatch, "tensor entry count");
    for (Elem e : a_) require(f_.contains(e), Errc::FieldMismatch, "entry outside field");
  }

  const Field& field() const noexcept { return f_; }
  const std::array<std::size_t, 3>& dims() const noexcept { return d_; }
  bool is_cubic() const noexcept { return d_[0] == d_[1] && d_[1] == d_[2]; }

  Elem operator()(std::size_t i, std::size_t j, std::size_t k) const noexcept { return a_[(i * d_[1] + j) * d_[2] + k]; }
  Elem& operator()(std::size_t i, std::size_t j, std::size_t k) noexcept { return a_[(i * d_[1] + j) * d_[2] + k]; }

  const std::vector<Elem>& entries() const noexcept { return a_; }
  Elem* data() noexcept { return a_.data(); }

  bool is_zero() const noexcept {
    for (Elem e : a_)
      if (e) return false;
    return true;
  }

  friend bool operator==(const Tensor3& a, const Tensor3& b) noexcept {
    return a.d_ == b.d_ && a.f_ == b.f_ && a.a_ == b.a_;
  }

 private:
  Field f_;
  std::array<std::size_t, 3> d_;
  std::vector<Elem> a_;
};

/// n x n x n x n array.
class Tensor4 {
 public:
  Tensor4(Field f, std::size_t n) : f_(std::move(f)), n_(n), a_(n * n * n * n, 0) {}

  Tensor4(Field f, std::size_t n, std::vector<Elem> entries) : f_(std::move(f)), n_(n), a_(std::move(entries)) {
    require(a_.size() == n * n * n * n, Errc::ShapeMismatch, "tensor entry count");
    for (Elem e : a_) require(f_.contains(e), Errc::FieldMismatch, "entry outside field");
  }

  const Field& field() const noexcept { return f_; }
  std::size_t n() const noexcept { return n_; }

  Elem operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const noexcept {
    return a_[((i * n_ + j) * n_ + k) * n_ + l];
  }
  Elem& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) noexcept {
    return a_[((i * n_ + j) * n_ + k) * n_ + l];
  }

  const std::vector<Elem>& entries() const noexcept { return a_; }

  friend bool operator==(const Tensor4& a, const Tensor4& b) noexcept {
    return a.n_ == b.n_ && a.f_ == b.f_ && a.a_ == b.a_;
  }

 private:
  Field f_;
  std::size_t n_;
  std::vector<Elem> a_;
};

enum class Direction { Horizontal, Vertical, Frontal };

/// Horizontal: A_i(j,k) = a_ijk. Vertical: A_j(i,k) = a_ijk. Frontal: A_k(i,j) = a_ijk.
inline std::vector<Matrix> slices(const Tensor3& A, Direction d) {
  const auto [l, m, n] = A.dims();
  std::vector<Matrix> out;
  switch (d) {
    case Direction::Horizontal:
      for (std::size_t i = 0; i < l; ++i) {
        Matrix s(A.field(), m, n);
        for (std::size_t j = 0; j < m; ++j)
          for (std::size_t k = 0; k < n; ++k) s(j, k) = A(i, j, k);
        out.push_back(std::move(s));
      }
      break;
    case Direction::Vertical:
      for (std::size_t j = 0; j < m; ++j) {
        Matrix s(A.field(), l, n);
        for (std::size_t i = 0; i < l; ++i)
          for (std::size_t k = 0; k < n; ++k) s(i, k) = A(i, j, k);
        out.push_back(std::move(s));
      }
      break;
    case Direction::Frontal:
      for (std::size_t k = 0; k < n; ++k) {
        Matrix s(A.field(), l, m);
        for (std::size_t i = 0; i < l; ++i)
          for (std::size_t j = 0; j < m; ++j) s(i, j) = A(i, j, k);
        out.push_back(std::move(s));
      }
      break;
  }
  return out;
}

/// Inverse of slices().
inline Tensor3 from_slices(const std::vector<Matrix>& s, Direction d) {
  require(!s.empty(), Errc::ShapeMismatch, "no slices");
  const std::size_t r = s[0].rows(), c = s[0].cols(), cnt = s.size();
  for (const auto& m : s) require(m.rows() == r && m.cols() == c, Errc::ShapeMismatch, "ragged slices");
  const Field& F = s[0].field();
  switch (d) {
    case Direction::Horizontal: {
      Tensor3 A(F, cnt, r, c);
      for (std::size_t i = 0; i < cnt; ++i)
        for (std::size_t j = 0; j < r; ++j)
          for (std::size_t k = 0; k < c; ++k) A(i, j, k) = s[i](j, k);
      return A;
    }
    case Direction::Vertical: {
      Tensor3 A(F, r, cnt, c);
      for (std::size_t j = 0; j < cnt; ++j)
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t k = 0; k < c; ++k) A(i, j, k) = s[j](i, k);
      return A;
    }
    case Direction::Frontal:
    default: {
      Tensor3 A(F, r, c, cnt);
      for (std::size_t k = 0; k < cnt; ++k)
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < c; ++j) A(i, j, k) = s[k](i, j);
      return A;
    }
  }
}

/// b_ijk = sum L_ii' R_jj' T_kk' a_i'j'k', as three mode products.
inline Tensor3 act3(const Tensor3& A, const Matrix& L, const Matrix& R, const Matrix& T) {
  const auto [l, m, n] = A.dims();
  require(L.rows() == l && L.cols() == l && R.rows() == m && R.cols() == m && T.rows() == n && T.cols() == n,
          Errc::ShapeMismatch, "act3 shapes");
  const Field& F = A.field();
  // mode 1
  Matrix X = L * Matrix(F, l, m * n, A.entries());
  // mode 2, slice by slice
  std::vector<Elem> Y(l * m * n);
  for (std::size_t i = 0; i < l; ++i) {
    Matrix s(F, m, n, std::vector<Elem>(X.data() + i * m * n, X.data() + (i + 1) * m * n));
    Matrix t = R * s;
    std::copy(t.data(), t.data() + m * n, Y.begin() + static_cast<std::ptrdiff_t>(i * m * n));
  }
  // mode 3
  Matrix Z = Matrix(F, l * m, n, std::move(Y)) * T.transpose();
  return Tensor3(F, l, m, n, Z.entries());
}

/// (T, T, T^{-t}): horizontal slices transform as B_i = sum_i' t_ii' T A_i' T^{-1}.
inline Tensor3 act_algebra(const Tensor3& A, const Matrix& T) {
  require(A.is_cubic() && T.rows() == A.dims()[0] && T.is_square(), Errc::ShapeMismatch, "act_algebra shapes");
  return act3(A, T, T, inverse(T).transpose());
}

/// (P (x) Q)(iota(i,k), iota(j,l)) = P_ij Q_kl.
inline Matrix kron(const Matrix& P, const Matrix& Q) {
  const Field& F = P.field();
  Matrix K(F, P.rows() * Q.rows(), P.cols() * Q.cols());
  for (std::size_t i = 0; i < P.rows(); ++i)
    for (std::size_t j = 0; j < P.cols(); ++j) {
      const Elem p = P(i, j);
      if (p == 0) continue;
      for (std::size_t k = 0; k < Q.rows(); ++k)
        for (std::size_t l = 0; l < Q.cols(); ++l) K(i * Q.rows() + k, j * Q.cols() + l) = F.mul(p, Q(k, l));
    }
  return K;
}

/// flat(iota(i,j), iota(k,l)) = a_ijkl.
inline Matrix flatten4(const Tensor4& A) {
  const std::size_t n = A.n();
  return Matrix(A.field(), n * n, n * n, A.entries());
}

inline Tensor4 unflatten4(const Matrix& M) {
  require(M.is_square(), Errc::ShapeMismatch, "flattening must be square");
  std::size_t n = 0;
  while (n * n < M.rows()) ++n;
  require(n * n == M.rows(), Errc::ShapeMismatch, "flattening side must be n^2");
  return Tensor4(M.field(), n, M.entries());
}

/// (L (x) R (x) S (x) T) . A, computed through the flattening:
/// flat(B) = (L (x) R) flat(A) (S (x) T)^t.
inline Tensor4 act4(const Tensor4& A, const Matrix& L, const Matrix& R, const Matrix& S, const Matrix& T) {
  const std::size_t n = A.n();
  for (const Matrix* X : {&L, &R, &S, &T})
    require(X->rows() == n && X->cols() == n, Errc::ShapeMismatch, "act4 shapes");
  return unflatten4(kron(L, R) * flatten4(A) * kron(S, T).transpose());
}

inline Tensor3 sample_tensor3(const Field& f, std::size_t l, std::size_t m, std::size_t n, Rng& rng) {
  Tensor3 A(f, l, m, n);
  for (std::size_t i = 0; i < l * m * n; ++i) A.data()[i] = rng.below(f.q());
  return A;
}

inline Tensor4 sample_tensor4(const Field& f, std::size_t n, Rng& rng) {
  return unflatten4(random_matrix(f, n * n, n * n, rng));
}

enum class Problem { Algiso, Mcc, T4 };

constexpr std::string_view problem_name(Problem p) noexcept {
  switch (p) {
    case Problem::Algiso: return "algiso";
    case Problem::Mcc: return "mcc";
    case Problem::T4: return "t4";
  }
  return "?";
}

inline Problem parse_problem(std::string_view s) {
  if (s == "algiso") return Problem::Algiso;
  if (s == "mcc") return Problem::Mcc;
  if (s == "t4") return Problem::T4;
  fail(Errc::Format, "unknown problem '" + std::string(s) + "'");
}

/// Named transformation matrices: T (algiso); S, T (mcc); L, R, S, T (t4).
struct Witness {
  Problem problem = Problem::Algiso;
  std::map<std::string, Matrix> matrices;
  std::optional<Elem> lambda;

  const Matrix& at(const std::string& name) const {
    auto it = matrices.find(name);
    if (it == matrices.end()) fail(Errc::ShapeMismatch, "witness lacks matrix " + name);
    return it->second;
  }
};

enum class VerdictKind { Isomorphic, NotIsomorphic, Failure };

constexpr std::string_view verdict_name(VerdictKind k) noexcept {
  switch (k) {
    case VerdictKind::Isomorphic: return "Isomorphic";
    case VerdictKind::NotIsomorphic: return "NotIsomorphic";
    case VerdictKind::Failure: return "Failure";
  }
  return "?";
}

/// Witness present iff kind is Isomorphic; solvers re-verify before returning.
struct Verdict {
  VerdictKind kind = VerdictKind::Failure;
  std::optional<Witness> witness;
  std::optional<std::string> stage;
  std::optional<Elem> scalar;
};

struct AlgisoCheck {
  bool ok = false;
  Elem lambda = 0;
};

/// Accepts iff B = lambda * act_algebra(A, T) for a nonzero lambda, which is
/// read off the first nonzero entry.
inline AlgisoCheck verify_algiso(const Tensor3& A, const Tensor3& B, const Matrix& T) {
  require(A.dims() == B.dims() && A.is_cubic(), Errc::ShapeMismatch, "algiso tensors must be cubic and equal-sized");
  require(T.rows() == A.dims()[0] && T.is_square(), Errc::ShapeMismatch, "algiso witness shape");
  if (!(A.field() == B.field()) || !(A.field() == T.field())) fail(Errc::FieldMismatch, "algiso fields differ");
  const auto inv = inverse_det(T);
  if (!inv.inverse) return {};
  const Tensor3 C = act3(A, T, T, inv.inverse->transpose());
  const Field& F = A.field();
  const auto& c = C.entries();
  const auto& b = B.entries();
  std::size_t first = 0;
  while (first < c.size() && c[first] == 0) ++first;
  if (first == c.size()) return {B.is_zero(), 1};
  const Elem lambda = F.div(b[first], c[first]);
  if (lambda == 0) return {};
  for (std::size_t i = 0; i < c.size(); ++i)
    if (F.mul(lambda, c[i]) != b[i]) return {};
  return {true, lambda};
}

/// sum_k' t_kk' S A_k' S^{-1} = B_k on frontal slices, i.e. B = act3(A, S, S^{-t}, T).
inline bool verify_mcc(const Tensor3& A, const Tensor3& B, const Matrix& S, const Matrix& T) {
  require(A.dims() == B.dims() && A.is_cubic(), Errc::ShapeMismatch, "mcc tensors must be cubic and equal-sized");
  const std::size_t n = A.dims()[0];
  require(S.rows() == n && S.is_square() && T.rows() == n && T.is_square(), Errc::ShapeMismatch, "mcc witness shape");
  const auto si = inverse_det(S);
  if (!si.inverse || det(T) == 0) return false;
  return act3(A, S, si.inverse->transpose(), T) == B;
}

inline bool verify_t4(const Tensor4& A, const Tensor4& B, const Matrix& L, const Matrix& R, const Matrix& S,
                      const Matrix& T) {
  require(A.n() == B.n(), Errc::ShapeMismatch, "t4 tensors differ in size");
  for (const Matrix* X : {&L, &R, &S, &T})
    if (det(*X) == 0) return false;
  return act4(A, L, R, S, T) == B;
}

}  // namespace tiso
