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
 * @file matrix.hpp
 * @brief Dense row-major matrices over F_q: elimination, kernels,
 * characteristic polynomials and the spectral primitives built on them.
 */

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tiso/error.hpp"
#include "tiso/gf.hpp"
#include "tiso/poly.hpp"
#include "tiso/rng.hpp"

namespace tiso {

using Vec = std::vector<Elem>;

class Matrix {
 public:
  Matrix(Field f, std::size_t rows, std::size_t cols) : f_(std::move(f)), r_(rows), c_(cols), a_(rows * cols, 0) {}

  Matrix(Field f, std::size_t rows, std::size_t cols, std::vector<Elem> entries)
      : f_(std::move(f)), r_(rows), c_(cols), a_(std::move(entries)) {
    require(a_.size() == r_ * c_, Errc::ShapeMismatch, "entry count does not match shape");
    for (Elem e : a_) require(f_.contains(e), Errc::FieldMismatch, "entry outside field");
  }

  /// Entries given as integers, reduced into the prime subfield.
  static Matrix from_ints(const Field& f, std::size_t rows, std::size_t cols, const std::vector<std::int64_t>& v) {
    require(v.size() == rows * cols, Errc::ShapeMismatch, "entry count does not match shape");
    Matrix m(f, rows, cols);
    for (std::size_t i = 0; i < v.size(); ++i) m.a_[i] = f.from_int(v[i]);
    return m;
  }

  static Matrix identity(const Field& f, std::size_t n) { return scalar(f, n, 1); }

  static Matrix scalar(const Field& f, std::size_t n, Elem c) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
    return m;
  }

  static Matrix column(const Field& f, const Vec& v) { return Matrix(f, v.size(), 1, v); }
  static Matrix row(const Field& f, const Vec& v) { return Matrix(f, 1, v.size(), v); }

  const Field& field() const noexcept { return f_; }
  std::size_t rows() const noexcept { return r_; }
  std::size_t cols() const noexcept { return c_; }
  bool is_square() const noexcept { return r_ == c_; }

  Elem operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * c_ + j]; }
  Elem& operator()(std::size_t i, std::size_t j) noexcept { return a_[i * c_ + j]; }

  const std::vector<Elem>& entries() const noexcept { return a_; }
  Elem* data() noexcept { return a_.data(); }
  const Elem* data() const noexcept { return a_.data(); }

  std::span<const Elem> row_span(std::size_t i) const noexcept { return {a_.data() + i * c_, c_}; }
  Vec row_vec(std::size_t i) const { return Vec(a_.begin() + static_cast<std::ptrdiff_t>(i * c_), a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * c_)); }
  Vec col_vec(std::size_t j) const {
    Vec v(r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  bool is_zero() const noexcept {
    for (Elem e : a_)
      if (e) return false;
    return true;
  }

  void swap_rows(std::size_t i, std::size_t j) noexcept {
    if (i == j) return;
    for (std::size_t k = 0; k < c_; ++k) std::swap(a_[i * c_ + k], a_[j * c_ + k]);
  }

  Matrix transpose() const {
    Matrix t(f_, c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) noexcept {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.f_ == b.f_ && a.a_ == b.a_;
  }

 private:
  Field f_;
  std::size_t r_, c_;
  std::vector<Elem> a_;
};

namespace detail {

/// y[0..len) += a * x[0..len)
inline void axpy(const Field& F, Elem* y, Elem a, const Elem* x, std::size_t len) noexcept {
  if (a == 0) return;
  if (F.is_prime_field()) {
    const std::uint64_t p = F.p();
    for (std::size_t k = 0; k < len; ++k) y[k] = (y[k] + a * x[k]) % p;
  } else {
    for (std::size_t k = 0; k < len; ++k) y[k] = F.fma(a, x[k], y[k]);
  }
}

inline void scale_in_place(const Field& F, Elem* y, Elem a, std::size_t len) noexcept {
  for (std::size_t k = 0; k < len; ++k) y[k] = F.mul(a, y[k]);
}

inline void same_field(const Matrix& a, const Matrix& b) {
  if (!(a.field() == b.field())) fail(Errc::FieldMismatch, "matrices over different fields");
}

}  // namespace detail

inline Matrix operator*(const Matrix& a, const Matrix& b) {
  detail::same_field(a, b);
  require(a.cols() == b.rows(), Errc::ShapeMismatch, "matrix product shape");
  const Field& F = a.field();
  Matrix c(F, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      detail::axpy(F, c.data() + i * c.cols(), a(i, k), b.data() + k * b.cols(), b.cols());
  return c;
}

inline Matrix operator+(const Matrix& a, const Matrix& b) {
  detail::same_field(a, b);
  require(a.rows() == b.rows() && a.cols() == b.cols(), Errc::ShapeMismatch, "matrix sum shape");
  Matrix c = a;
  for (std::size_t i = 0; i < c.entries().size(); ++i) c.data()[i] = a.field().add(a.data()[i], b.data()[i]);
  return c;
}

inline Matrix operator-(const Matrix& a, const Matrix& b) {
  detail::same_field(a, b);
  require(a.rows() == b.rows() && a.cols() == b.cols(), Errc::ShapeMismatch, "matrix difference shape");
  Matrix c = a;
  for (std::size_t i = 0; i < c.entries().size(); ++i) c.data()[i] = a.field().sub(a.data()[i], b.data()[i]);
  return c;
}

inline Matrix scale(const Matrix& a, Elem s) {
  Matrix c = a;
  detail::scale_in_place(a.field(), c.data(), s, c.entries().size());
  return c;
}

/// A v
inline Vec mat_vec(const Matrix& a, const Vec& v) {
  require(a.cols() == v.size(), Errc::ShapeMismatch, "matrix-vector shape");
  const Field& F = a.field();
  Vec out(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Elem acc = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) acc = F.fma(a(i, j), v[j], acc);
    out[i] = acc;
  }
  return out;
}

/// v A
inline Vec vec_mat(const Vec& v, const Matrix& a) {
  require(a.rows() == v.size(), Errc::ShapeMismatch, "vector-matrix shape");
  Vec out(a.cols(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) detail::axpy(a.field(), out.data(), v[i], a.data() + i * a.cols(), a.cols());
  return out;
}

inline bool is_zero_vec(const Vec& v) noexcept {
  for (Elem e : v)
    if (e) return false;
  return true;
}

/// Scales v so its first nonzero coordinate is 1; zero vectors are left alone.
inline void normalize_first_nonzero(const Field& F, Vec& v) {
  for (Elem e : v) {
    if (e) {
      if (e != 1) detail::scale_in_place(F, v.data(), F.inv(e), v.size());
      return;
    }
  }
}

/// Gauss-Jordan in place on columns [0, col_limit); returns pivot columns.
/// The result is the unique reduced row echelon form restricted to those columns.
inline std::vector<std::size_t> rref_in_place(Matrix& M, std::size_t col_limit) {
  const Field& F = M.field();
  const std::size_t rows = M.rows(), cols = M.cols();
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < col_limit && r < rows; ++c) {
    std::size_t s = r;
    while (s < rows && M(s, c) == 0) ++s;
    if (s == rows) continue;
    M.swap_rows(s, r);
    if (M(r, c) != 1) detail::scale_in_place(F, &M(r, c), F.inv(M(r, c)), cols - c);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || M(i, c) == 0) continue;
      detail::axpy(F, &M(i, c), F.neg(M(i, c)), &M(r, c), cols - c);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

inline std::vector<std::size_t> rref_in_place(Matrix& M) { return rref_in_place(M, M.cols()); }

inline std::size_t rank(Matrix M) { return rref_in_place(M).size(); }

/// Canonical basis of span(vs): the nonzero rows of the reduced echelon form.
inline std::vector<Vec> echelon_basis(const Field& F, const std::vector<Vec>& vs, std::size_t len) {
  if (vs.empty()) return {};
  Matrix M(F, vs.size(), len);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    require(vs[i].size() == len, Errc::ShapeMismatch, "vector length");
    std::copy(vs[i].begin(), vs[i].end(), M.data() + i * len);
  }
  const auto piv = rref_in_place(M);
  std::vector<Vec> out;
  out.reserve(piv.size());
  for (std::size_t i = 0; i < piv.size(); ++i) out.push_back(M.row_vec(i));
  return out;
}

namespace detail {

// Right kernel of an already reduced matrix with pivot columns `piv`.
inline std::vector<Vec> kernel_from_rref(const Matrix& R, const std::vector<std::size_t>& piv, std::size_t ncols) {
  const Field& F = R.field();
  std::vector<bool> is_piv(ncols, false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<Vec> ker;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_piv[f]) continue;
    Vec x(ncols, 0);
    x[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = F.neg(R(r, f));
    ker.push_back(std::move(x));
  }
  return ker;
}

}  // namespace detail

inline std::vector<Vec> right_kernel(const Matrix& A) {
  Matrix R = A;
  const auto piv = rref_in_place(R);
  return echelon_basis(A.field(), detail::kernel_from_rref(R, piv, A.cols()), A.cols());
}

inline std::vector<Vec> left_kernel(const Matrix& A) { return right_kernel(A.transpose()); }

struct RankKernel {
  std::size_t rank = 0;
  std::vector<Vec> right_kernel;  // column vectors k with A k = 0
  std::vector<Vec> left_kernel;   // row vectors v with v A = 0
};

inline RankKernel rref_rank_kernel(const Matrix& A) {
  RankKernel out;
  out.right_kernel = right_kernel(A);
  out.left_kernel = left_kernel(A);
  out.rank = A.cols() - out.right_kernel.size();
  return out;
}

/// Basis of the column space of A, as reduced echelon row vectors.
inline std::vector<Vec> column_space(const Matrix& A) {
  Matrix R = A.transpose();
  const auto piv = rref_in_place(R);
  std::vector<Vec> out;
  for (std::size_t i = 0; i < piv.size(); ++i) out.push_back(R.row_vec(i));
  return out;
}

enum class Side { Left, Right };

struct LinearSolution {
  Vec particular;
  std::vector<Vec> kernel;
};

/// Right: A x = b. Left: x A = b. Empty when inconsistent.
inline std::optional<LinearSolution> solve_linear(const Matrix& A, const Vec& b, Side side = Side::Right) {
  if (side == Side::Left) return solve_linear(A.transpose(), b, Side::Right);
  require(b.size() == A.rows(), Errc::ShapeMismatch, "right-hand side length");
  const std::size_t n = A.cols();
  Matrix M(A.field(), A.rows(), n + 1);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    std::copy(A.data() + i * n, A.data() + (i + 1) * n, M.data() + i * (n + 1));
    M(i, n) = b[i];
  }
  const auto piv = rref_in_place(M, n);
  for (std::size_t r = piv.size(); r < M.rows(); ++r)
    if (M(r, n) != 0) return std::nullopt;
  LinearSolution sol;
  sol.particular.assign(n, 0);
  for (std::size_t r = 0; r < piv.size(); ++r) sol.particular[piv[r]] = M(r, n);
  sol.kernel = echelon_basis(A.field(), detail::kernel_from_rref(M, piv, n), n);
  return sol;
}

struct InverseDet {
  std::optional<Matrix> inverse;
  Elem det = 0;
};

inline InverseDet inverse_det(const Matrix& A) {
  require(A.is_square(), Errc::ShapeMismatch, "inverse of a non-square matrix");
  const Field& F = A.field();
  const std::size_t n = A.rows();
  Matrix M(F, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(A.data() + i * n, A.data() + (i + 1) * n, M.data() + i * 2 * n);
    M(i, n + i) = 1;
  }
  Elem det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t s = c;
    while (s < n && M(s, c) == 0) ++s;
    if (s == n) return {std::nullopt, 0};
    if (s != c) {
      M.swap_rows(s, c);
      det = F.neg(det);
    }
    const Elem pv = M(c, c);
    det = F.mul(det, pv);
    detail::scale_in_place(F, &M(c, c), F.inv(pv), 2 * n - c);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || M(i, c) == 0) continue;
      detail::axpy(F, &M(i, c), F.neg(M(i, c)), &M(c, c), 2 * n - c);
    }
  }
  Matrix inv(F, n, n);
  for (std::size_t i = 0; i < n; ++i) std::copy(M.data() + i * 2 * n + n, M.data() + (i + 1) * 2 * n, inv.data() + i * n);
  return {std::move(inv), det};
}

inline Matrix inverse(const Matrix& A) {
  auto r = inverse_det(A);
  if (!r.inverse) fail(Errc::Singular, "matrix is not invertible");
  return std::move(*r.inverse);
}

inline Elem det(const Matrix& A) { return inverse_det(A).det; }

inline Elem trace(const Matrix& A) {
  require(A.is_square(), Errc::ShapeMismatch, "trace of a non-square matrix");
  Elem t = 0;
  for (std::size_t i = 0; i < A.rows(); ++i) t = A.field().add(t, A(i, i));
  return t;
}

/// Tr(A B) without forming the product.
inline Elem trace_product(const Matrix& A, const Matrix& B) {
  require(A.rows() == B.cols() && A.cols() == B.rows(), Errc::ShapeMismatch, "trace product shape");
  const Field& F = A.field();
  Elem t = 0;
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) t = F.fma(A(i, j), B(j, i), t);
  return t;
}

inline Elem trace_of_square(const Matrix& A) {
  require(A.is_square(), Errc::ShapeMismatch, "trace of a non-square matrix");
  return trace_product(A, A);
}

/// det(tI - A) via Hessenberg reduction, O(n^3).
inline Poly charpoly(const Matrix& A) {
  require(A.is_square(), Errc::ShapeMismatch, "charpoly of a non-square matrix");
  const Field& F = A.field();
  const std::size_t n = A.rows();
  Matrix H = A;
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t i = m;
    while (i < n && H(i, m - 1) == 0) ++i;
    if (i == n) continue;
    if (i != m) {
      H.swap_rows(i, m);
      for (std::size_t r = 0; r < n; ++r) std::swap(H(r, i), H(r, m));
    }
    const Elem tinv = F.inv(H(m, m - 1));
    for (i = m + 1; i < n; ++i) {
      const Elem u = F.mul(H(i, m - 1), tinv);
      if (u == 0) continue;
      // row_i -= u row_m, then col_m += u col_i keeps the similarity class
      detail::axpy(F, &H(i, 0), F.neg(u), &H(m, 0), n);
      for (std::size_t r = 0; r < n; ++r) H(r, m) = F.fma(u, H(r, i), H(r, m));
    }
  }
  // p_k = (t - h_kk) p_{k-1} - sum_{i<k} h_ik (prod_{j=i+1..k} h_{j,j-1}) p_{i-1}, 1-based
  std::vector<Poly> p;
  p.reserve(n + 1);
  p.push_back(Poly::constant(F, 1));
  for (std::size_t k = 1; k <= n; ++k) {
    Poly pk = Poly::linear(F, H(k - 1, k - 1)) * p[k - 1];
    Elem prod = 1;
    for (std::size_t i = k - 1; i >= 1; --i) {
      prod = F.mul(prod, H(i, i - 1));
      if (prod == 0) break;
      const Elem coef = F.mul(H(i - 1, k - 1), prod);
      if (coef) pk = pk - p[i - 1].scaled(coef);
    }
    p.push_back(std::move(pk));
  }
  return p[n];
}

/// f(A) by Horner's rule.
inline Matrix poly_eval(const Poly& f, const Matrix& A) {
  require(A.is_square(), Errc::ShapeMismatch, "polynomial of a non-square matrix");
  const Field& F = A.field();
  Matrix r(F, A.rows(), A.cols());
  const auto& c = f.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    r = r * A;
    for (std::size_t i = 0; i < A.rows(); ++i) r(i, i) = F.add(r(i, i), *it);
  }
  return r;
}

struct EigenProfile {
  std::vector<Root> pairs;  // ascending eigenvalue, algebraic multiplicity
  unsigned total_mult = 0;
};

inline EigenProfile eigen_profile(const Matrix& A) {
  EigenProfile e;
  e.pairs = roots_in_field(charpoly(A));
  for (const auto& r : e.pairs) e.total_mult += r.multiplicity;
  return e;
}

inline Matrix shifted(const Matrix& A, Elem lambda) {
  Matrix M = A;
  for (std::size_t i = 0; i < A.rows(); ++i) M(i, i) = A.field().sub(M(i, i), lambda);
  return M;
}

struct SimpleEigen {
  Elem lambda = 0;
  Vec left;   // v A = lambda v
  Vec right;  // A w = lambda w
};

/// Present iff the F_q-eigenvalues of A are exactly one simple root
/// (nonzero when requested). Eigenvectors have first nonzero coordinate 1.
inline std::optional<SimpleEigen> unique_simple_eigenvalue(const Matrix& A, bool require_nonzero = false) {
  const auto prof = eigen_profile(A);
  if (prof.pairs.size() != 1 || prof.pairs[0].multiplicity != 1) return std::nullopt;
  const Elem lambda = prof.pairs[0].value;
  if (require_nonzero && lambda == 0) return std::nullopt;
  const Matrix M = shifted(A, lambda);
  auto rk = rref_rank_kernel(M);
  SimpleEigen out{lambda, std::move(rk.left_kernel.at(0)), std::move(rk.right_kernel.at(0))};
  normalize_first_nonzero(A.field(), out.left);
  normalize_first_nonzero(A.field(), out.right);
  return out;
}

/// P with P A P^{-1} = diag(lambda, A_0). The first basis vector spans the
/// lambda-eigenspace; the rest span the image of (A - lambda I), the
/// complementary invariant subspace.
inline Matrix primary_split_basis(const Matrix& A, Elem lambda) {
  const auto prof = eigen_profile(A);
  bool simple = false;
  for (const auto& r : prof.pairs)
    if (r.value == lambda) simple = r.multiplicity == 1;
  if (!simple) fail(Errc::NotSimpleEigenvalue, "eigenvalue is not simple");
  const std::size_t n = A.rows();
  const Matrix M = shifted(A, lambda);
  Vec w = right_kernel(M).at(0);
  normalize_first_nonzero(A.field(), w);
  const auto E0 = column_space(M);
  Matrix Q(A.field(), n, n);
  for (std::size_t i = 0; i < n; ++i) Q(i, 0) = w[i];
  for (std::size_t j = 0; j < E0.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) Q(i, j + 1) = E0[j][i];
  return inverse(Q);
}

inline Matrix random_matrix(const Field& f, std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows * cols; ++i) m.data()[i] = rng.below(f.q());
  return m;
}

inline Vec random_vector(const Field& f, std::size_t len, Rng& rng) {
  Vec v(len);
  for (auto& e : v) e = rng.below(f.q());
  return v;
}

/// Rejection sampling; the acceptance rate is |GL(n,q)| / q^(n^2) > 1/4.
inline Matrix random_invertible(const Field& f, std::size_t n, Rng& rng) {
  while (true) {
    Matrix m = random_matrix(f, n, n, rng);
    if (det(m) != 0) return m;
  }
}

/// Row-major vectorization and its inverse.
inline Vec vec(const Matrix& A) { return A.entries(); }
inline Matrix unvec(const Field& f, std::size_t rows, std::size_t cols, const Vec& v) { return Matrix(f, rows, cols, v); }

}  // namespace tiso
