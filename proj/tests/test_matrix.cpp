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
#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>

#include "tiso/matrix.hpp"

using namespace tiso;

namespace {

Matrix M(const Field& F, std::size_t r, std::size_t c, std::vector<std::int64_t> v) {
  return Matrix::from_ints(F, r, c, v);
}

// Leibniz expansion of det(tI - A) with polynomial entries.
Poly leibniz_charpoly(const Matrix& A) {
  const Field& F = A.field();
  const std::size_t n = A.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Poly total(F);
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Poly term = Poly::constant(F, inversions % 2 ? F.neg(1) : 1);
    for (std::size_t i = 0; i < n; ++i) {
      Poly entry = Poly::constant(F, F.neg(A(i, perm[i])));
      if (perm[i] == i) entry = entry + Poly::x(F);
      term = term * entry;
    }
    total = total + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

Matrix companion(const Poly& f) {
  const Field& F = f.field();
  const std::size_t n = static_cast<std::size_t>(f.degree());
  Matrix C(F, n, n);
  for (std::size_t i = 1; i < n; ++i) C(i, i - 1) = 1;
  for (std::size_t i = 0; i < n; ++i) C(i, n - 1) = F.neg(f.coeff(i));
  return C;
}

Matrix enumerate(const Field& F, std::size_t n, std::uint64_t code) {
  Matrix A(F, n, n);
  for (std::size_t i = 0; i < n * n; ++i) {
    A.data()[i] = code % F.q();
    code /= F.q();
  }
  return A;
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix r(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) r(a.rows() + i, a.cols() + j) = b(i, j);
  return r;
}

}  // namespace

TEST_CASE("rank and kernels") {
  auto F2 = Field::create(2);
  auto F3 = Field::create(3);
  auto rk = rref_rank_kernel(Matrix::identity(F2, 3));
  CHECK(rk.rank == 3);
  CHECK(rk.right_kernel.empty());
  CHECK(rk.left_kernel.empty());
  rk = rref_rank_kernel(Matrix(F3, 2, 2));
  CHECK(rk.rank == 0);
  CHECK(rk.right_kernel == std::vector<Vec>{{1, 0}, {0, 1}});
  CHECK(rk.left_kernel == std::vector<Vec>{{1, 0}, {0, 1}});
  rk = rref_rank_kernel(M(F2, 2, 2, {1, 1, 1, 1}));
  CHECK(rk.rank == 1);
  CHECK(rk.right_kernel == std::vector<Vec>{{1, 1}});
}

TEST_CASE("rank-nullity and kernel identities on random matrices") {
  Rng rng(11);
  for (std::uint64_t q : {2ULL, 3ULL, 4ULL, 7ULL, 9ULL}) {
    auto F = Field::of_order(q);
    for (int t = 0; t < 60; ++t) {
      const std::size_t r = 1 + rng.below(7), c = 1 + rng.below(7);
      Matrix A = random_matrix(F, r, c, rng);
      if (t % 2) A = A * Matrix(F, c, c) + random_matrix(F, r, 2, rng) * random_matrix(F, 2, c, rng);
      auto rk = rref_rank_kernel(A);
      CHECK(rk.rank + rk.right_kernel.size() == c);
      CHECK(rk.rank + rk.left_kernel.size() == r);
      for (const auto& k : rk.right_kernel) CHECK(is_zero_vec(mat_vec(A, k)));
      for (const auto& v : rk.left_kernel) CHECK(is_zero_vec(vec_mat(v, A)));
    }
  }
}

TEST_CASE("solve_linear") {
  auto F3 = Field::create(3);
  auto F5 = Field::create(5);
  auto s = solve_linear(Matrix::identity(F3, 2), {1, 0});
  REQUIRE(s);
  CHECK(s->particular == Vec{1, 0});
  CHECK(s->kernel.empty());
  CHECK_FALSE(solve_linear(Matrix(F3, 2, 2), {1, 0}));
  s = solve_linear(M(F5, 2, 2, {1, 2, 2, 4}), {1, 2});
  REQUIRE(s);
  CHECK(s->particular == Vec{1, 0});
  CHECK(s->kernel == echelon_basis(F5, {{3, 1}}, 2));
  // left side: x A = b
  auto A = M(F5, 2, 3, {1, 2, 3, 0, 1, 4});
  s = solve_linear(A, vec_mat({1, 3}, A), Side::Left);
  REQUIRE(s);
  CHECK(s->particular == Vec{1, 3});
  CHECK_FALSE(solve_linear(A, {2, 0, 1}, Side::Left));
}

TEST_CASE("inverse and determinant") {
  auto F5 = Field::create(5);
  auto F2 = Field::create(2);
  auto id = inverse_det(Matrix::identity(F5, 4));
  CHECK(id.det == 1);
  CHECK(*id.inverse == Matrix::identity(F5, 4));
  auto d = inverse_det(M(F5, 2, 2, {2, 0, 0, 3}));
  CHECK(d.det == 1);
  CHECK(*d.inverse == M(F5, 2, 2, {3, 0, 0, 2}));
  auto s = inverse_det(M(F2, 2, 2, {0, 1, 1, 0}));
  CHECK(s.det == 1);
  CHECK(*s.inverse == M(F2, 2, 2, {0, 1, 1, 0}));
  auto z = inverse_det(M(F5, 2, 2, {1, 2, 2, 4}));
  CHECK_FALSE(z.inverse);
  CHECK(z.det == 0);
  CHECK_THROWS_AS(inverse(Matrix(F5, 2, 2)), Error);

  Rng rng(3);
  for (std::uint64_t q : {2ULL, 3ULL, 4ULL, 5ULL, 7ULL}) {
    auto F = Field::of_order(q);
    for (int t = 0; t < 50; ++t) {
      const std::size_t n = 1 + rng.below(6);
      auto A = random_matrix(F, n, n, rng), B = random_matrix(F, n, n, rng);
      CHECK(det(A * B) == F.mul(det(A), det(B)));
      auto r = inverse_det(A);
      if (r.inverse) CHECK(A * *r.inverse == Matrix::identity(F, n));
    }
  }
}

TEST_CASE("charpoly examples") {
  auto F3 = Field::create(3);
  auto F2 = Field::create(2);
  CHECK(charpoly(Matrix::identity(F3, 2)) == Poly(F3, {1, 1, 1}));
  const Poly f(F2, {1, 1, 1});
  CHECK(charpoly(companion(f)) == f);
}

TEST_CASE("charpoly equals Leibniz determinant on all of M(3,2)") {
  auto F = Field::create(2);
  for (std::uint64_t code = 0; code < 512; ++code) {
    auto A = enumerate(F, 3, code);
    CHECK(charpoly(A) == leibniz_charpoly(A));
  }
}

TEST_CASE("charpoly equals Leibniz determinant on sampled M(4,q)") {
  Rng rng(5);
  for (std::uint64_t q : {3ULL, 4ULL, 5ULL, 9ULL}) {
    auto F = Field::of_order(q);
    for (int t = 0; t < 40; ++t) {
      auto A = random_matrix(F, 4, 4, rng);
      if (t % 3 == 0) A(1, 0) = A(2, 0) = A(3, 0) = 0;  // exercise empty pivot columns
      CHECK(charpoly(A) == leibniz_charpoly(A));
    }
  }
}

TEST_CASE("Cayley-Hamilton") {
  Rng rng(17);
  for (std::uint64_t q : {2ULL, 3ULL, 4ULL, 5ULL, 7ULL}) {
    auto F = Field::of_order(q);
    for (int t = 0; t < 100; ++t) {
      const std::size_t n = 1 + rng.below(8);
      auto A = random_matrix(F, n, n, rng);
      auto c = charpoly(A);
      CHECK(c.degree() == static_cast<int>(n));
      CHECK(c.is_monic());
      CHECK(poly_eval(c, A).is_zero());
    }
  }
}

TEST_CASE("eigen profiles") {
  auto F2 = Field::create(2);
  auto F3 = Field::create(3);
  CHECK(eigen_profile(companion(Poly(F2, {1, 1, 1}))).pairs.empty());
  auto p = eigen_profile(M(F3, 2, 2, {0, 0, 0, 1}));
  CHECK(p.pairs == std::vector<Root>{{0, 1}, {1, 1}});
  p = eigen_profile(M(F2, 2, 2, {1, 1, 0, 1}));
  CHECK(p.pairs == std::vector<Root>{{1, 2}});
}

TEST_CASE("profile total plus cofactor degree is n, exhaustively") {
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL}) {
    auto F = Field::of_order(q);
    const std::size_t n = q == 2 ? 3 : 2;
    const std::uint64_t count = q == 2 ? 512 : q * q * q * q;
    for (std::uint64_t code = 0; code < count; ++code) {
      auto A = enumerate(F, n, code);
      auto prof = eigen_profile(A);
      Poly rest = charpoly(A);
      for (const auto& r : prof.pairs)
        for (unsigned k = 0; k < r.multiplicity; ++k) rest = divmod(rest, Poly::linear(F, r.value)).first;
      CHECK(prof.total_mult + static_cast<unsigned>(rest.degree()) == n);
      for (Elem a = 0; a < q; ++a) CHECK(rest.eval(a) != 0);
    }
  }
}

TEST_CASE("unique simple eigenvalue") {
  auto F2 = Field::create(2);
  auto F3 = Field::create(3);
  auto A = block_diag(Matrix::identity(F2, 1), companion(Poly(F2, {1, 1, 1})));
  auto e = unique_simple_eigenvalue(A);
  REQUIRE(e);
  CHECK(e->lambda == 1);
  CHECK(e->left == Vec{1, 0, 0});
  CHECK(e->right == Vec{1, 0, 0});
  CHECK_FALSE(unique_simple_eigenvalue(Matrix::identity(F3, 2)));
  auto Z = block_diag(Matrix(F3, 1, 1), companion(Poly(F3, {1, 0, 1})));
  CHECK(unique_simple_eigenvalue(Z));
  CHECK_FALSE(unique_simple_eigenvalue(Z, true));
}

TEST_CASE("spectral data is conjugation invariant") {
  Rng rng(23);
  int seen = 0;
  for (std::uint64_t q : {3ULL, 4ULL, 5ULL, 7ULL}) {
    auto F = Field::of_order(q);
    for (int t = 0; t < 200; ++t) {
      const std::size_t n = 2 + rng.below(5);
      auto A = random_matrix(F, n, n, rng);
      auto P = random_invertible(F, n, rng);
      auto Pi = inverse(P);
      auto B = P * A * Pi;
      CHECK(eigen_profile(A).pairs == eigen_profile(B).pairs);
      auto ea = unique_simple_eigenvalue(A);
      auto eb = unique_simple_eigenvalue(B);
      REQUIRE(ea.has_value() == eb.has_value());
      if (!ea) continue;
      ++seen;
      CHECK(ea->lambda == eb->lambda);
      CHECK(vec_mat(ea->left, A) == vec_mat(ea->left, Matrix::scalar(F, n, ea->lambda)));
      CHECK(mat_vec(A, ea->right) == mat_vec(Matrix::scalar(F, n, ea->lambda), ea->right));
      Vec moved = vec_mat(ea->left, Pi);
      normalize_first_nonzero(F, moved);
      CHECK(moved == eb->left);
    }
  }
  CHECK(seen > 50);
}

TEST_CASE("primary split basis") {
  auto F3 = Field::create(3);
  auto F2 = Field::create(2);
  auto A = block_diag(Matrix::identity(F2, 1), companion(Poly(F2, {1, 1, 1})));
  CHECK(primary_split_basis(A, 1) == Matrix::identity(F2, 3));
  auto J = M(F3, 2, 2, {1, 1, 0, 2});
  auto P = primary_split_basis(J, 1);
  CHECK(P * J * inverse(P) == M(F3, 2, 2, {1, 0, 0, 2}));
  CHECK_THROWS_AS(primary_split_basis(Matrix::identity(F3, 2), 1), Error);

  Rng rng(29);
  int seen = 0;
  for (std::uint64_t q : {2ULL, 5ULL, 8ULL, 13ULL}) {
    auto F = Field::of_order(q);
    for (int t = 0; t < 200; ++t) {
      const std::size_t n = 2 + rng.below(6);
      auto X = random_matrix(F, n, n, rng);
      for (const auto& r : eigen_profile(X).pairs) {
        if (r.multiplicity != 1) continue;
        ++seen;
        auto S = primary_split_basis(X, r.value);
        auto Y = S * X * inverse(S);
        CHECK(Y(0, 0) == r.value);
        for (std::size_t i = 1; i < n; ++i) {
          CHECK(Y(0, i) == 0);
          CHECK(Y(i, 0) == 0);
        }
      }
    }
  }
  CHECK(seen > 100);
}

TEST_CASE("trace of square") {
  auto F5 = Field::create(5);
  CHECK(trace_of_square(Matrix::identity(F5, 7)) == 2);
  CHECK(trace_of_square(M(F5, 2, 2, {0, 1, 0, 0})) == 0);
  Rng rng(31);
  for (int t = 0; t < 200; ++t) {
    auto A = random_matrix(F5, 4, 4, rng);
    CHECK(trace_of_square(A) == trace(A * A));
  }
}

TEST_CASE("random sampling") {
  auto F2 = Field::create(2);
  Rng a(99), b(99);
  CHECK(random_matrix(F2, 2, 2, a) == random_matrix(F2, 2, 2, b));

  auto F5 = Field::create(5);
  Rng rng(101);
  std::vector<double> counts(5, 0);
  const int draws = 10000;
  auto X = random_matrix(F5, 100, 100, rng);
  for (Elem e : X.entries()) counts[e] += 1;
  double chi2 = 0;
  for (double c : counts) chi2 += (c - draws / 5.0) * (c - draws / 5.0) / (draws / 5.0);
  // 4 degrees of freedom: P[chi2 > 33.4] ~ 1e-6
  CHECK(chi2 < 33.4);

  for (int t = 0; t < 100; ++t) CHECK(det(random_invertible(F2, 4, rng)) != 0);
}
