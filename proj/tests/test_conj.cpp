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

#include "tiso/conj.hpp"

using namespace tiso;

namespace {

Matrix enumerate(const Field& F, std::size_t n, std::uint64_t code) {
  Matrix A(F, n, n);
  for (std::size_t i = 0; i < n * n; ++i) {
    A.data()[i] = code % F.q();
    code /= F.q();
  }
  return A;
}

bool intertwines(const Matrix& X, const std::vector<Matrix>& As, const std::vector<Matrix>& Bs) {
  for (std::size_t i = 0; i < As.size(); ++i)
    if (!(X * As[i] == Bs[i] * X)) return false;
  return true;
}

}  // namespace

TEST_CASE("intertwiner examples") {
  auto F = Field::create(2);
  CHECK(intertwiner_space({Matrix::identity(F, 3)}, {Matrix::identity(F, 3)}).size() == 9);
  CHECK(intertwiner_space({Matrix(F, 3, 3)}, {Matrix::identity(F, 3)}).empty());

  // companion of t^3 + t + 1, irreducible over F_2
  auto C = Matrix::from_ints(F, 3, 3, {0, 0, 1, 1, 0, 1, 0, 1, 0});
  auto basis = intertwiner_space({C}, {C});
  CHECK(basis.size() == 3);
  std::size_t brute = 0;
  for (std::uint64_t code = 0; code < 512; ++code)
    if (intertwines(enumerate(F, 3, code), {C}, {C})) ++brute;
  CHECK(brute == 8);
  for (const auto& X : basis) CHECK(intertwines(X, {C}, {C}));
}

TEST_CASE("cyclic and dense paths agree") {
  Rng rng(1);
  for (std::uint64_t q : {2ULL, 3ULL, 4ULL, 5ULL}) {
    auto F = Field::of_order(q);
    for (int t = 0; t < 60; ++t) {
      const std::size_t n = 2 + rng.below(4), m = 1 + rng.below(3);
      std::vector<Matrix> As, Bs;
      auto P = random_invertible(F, n, rng);
      auto Pi = inverse(P);
      for (std::size_t i = 0; i < m; ++i) {
        // low-rank or scalar-heavy members exercise the non-cyclic fallback
        Matrix A = t % 4 == 0 ? Matrix::scalar(F, n, rng.below(q)) : random_matrix(F, n, n, rng);
        As.push_back(A);
        Bs.push_back(t % 2 ? P * A * Pi : random_matrix(F, n, n, rng));
      }
      auto fast = intertwiner_space(As, Bs);
      auto dense = detail::intertwiners_dense(As, Bs);
      CHECK(fast == dense);
      for (const auto& X : fast) CHECK(intertwines(X, As, Bs));
    }
  }
}

TEST_CASE("brute-force intertwiner dimension on M(2,3) pairs") {
  auto F = Field::create(3);
  Rng rng(2);
  for (int t = 0; t < 40; ++t) {
    std::vector<Matrix> As{random_matrix(F, 2, 2, rng)}, Bs{random_matrix(F, 2, 2, rng)};
    if (t % 2) Bs[0] = As[0];
    std::size_t count = 0;
    for (std::uint64_t code = 0; code < 81; ++code) count += intertwines(enumerate(F, 2, code), As, Bs);
    std::size_t expect = 1;
    for (std::size_t d = 0; d < intertwiner_space(As, Bs).size(); ++d) expect *= 3;
    CHECK(count == expect);
  }
}

TEST_CASE("conjugacy cosets") {
  Rng rng(3);
  for (std::uint64_t q : {3ULL, 5ULL, 7ULL}) {
    auto F = Field::of_order(q);
    for (int t = 0; t < 40; ++t) {
      const std::size_t n = 2 + rng.below(5);
      auto T = random_invertible(F, n, rng);
      auto Ti = inverse(T);
      std::vector<Matrix> As{random_matrix(F, n, n, rng), random_matrix(F, n, n, rng)};
      std::vector<Matrix> Bs{T * As[0] * Ti, T * As[1] * Ti};
      auto cc = conj_coset(As, Bs, rng);
      REQUIRE(cc.status == ConjStatus::Conjugate);
      REQUIRE(cc.representative);
      CHECK(det(*cc.representative) != 0);
      CHECK(intertwines(*cc.representative, As, Bs));
    }
  }
  auto F = Field::create(5);
  auto cc = conj_coset({Matrix::identity(F, 3)}, {Matrix(F, 3, 3)}, rng);
  CHECK(cc.status == ConjStatus::NotConjugate);
  CHECK(cc.dim() == 0);

  int not_conj = 0;
  for (int s = 0; s < 100; ++s) {
    Rng r(1000 + s);
    std::vector<Matrix> As{random_matrix(F, 6, 6, r), random_matrix(F, 6, 6, r)};
    std::vector<Matrix> Bs{random_matrix(F, 6, 6, r), random_matrix(F, 6, 6, r)};
    auto c = conj_coset(As, Bs, r);
    not_conj += c.status == ConjStatus::NotConjugate && c.dim() == 0;
  }
  CHECK(not_conj == 100);

  // single member: the centralizer of a single matrix has dim >= n, so the
  // random search path runs and must still return a genuine conjugator
  auto A = random_matrix(F, 4, 4, rng);
  auto T = random_invertible(F, 4, rng);
  auto c1 = conj_coset({A}, {T * A * inverse(T)}, rng);
  CHECK(c1.dim() >= 4);
  REQUIRE(c1.status == ConjStatus::Conjugate);
  CHECK(intertwines(*c1.representative, {A}, {T * A * inverse(T)}));
}

TEST_CASE("algebra closure") {
  auto F2 = Field::create(2);
  CHECK_FALSE(generates_full_algebra(Matrix::identity(F2, 3), Matrix::identity(F2, 3)));
  auto C = Matrix::from_ints(F2, 2, 2, {0, 1, 1, 1});  // companion of t^2 + t + 1
  auto E11 = Matrix::from_ints(F2, 2, 2, {1, 0, 0, 0});
  CHECK(generates_full_algebra(C, E11));
  // E11 and E12 generate the upper triangular algebra (dim 3) yet only
  // scalars commute with both
  auto E12 = Matrix::from_ints(F2, 2, 2, {0, 1, 0, 0});
  CHECK(algebra_closure_dim({E11, E12}) == 3);
  CHECK(centralizer({E11, E12}).size() == 1);

  auto F3 = Field::create(3);
  int full = 0;
  for (int s = 0; s < 300; ++s) {
    Rng rng(5000 + s);
    auto A1 = random_matrix(F3, 6, 6, rng), A2 = random_matrix(F3, 6, 6, rng);
    const bool g = generates_full_algebra(A1, A2);
    full += g;
    if (g) {
      CHECK(centralizer({A1, A2}).size() == 1);
      // Schur: at most a line of intertwiners to any other pair
      auto B1 = random_matrix(F3, 6, 6, rng), B2 = random_matrix(F3, 6, 6, rng);
      CHECK(intertwiner_space({A1, A2}, {B1, B2}).size() <= 1);
    }
  }
  CHECK(full >= 270);
}
