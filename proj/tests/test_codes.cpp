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

#include <cmath>

#include "tiso/codes.hpp"

using namespace tiso;

namespace {

Matrix E(const Field& F, std::size_t n, std::size_t i, std::size_t j) {
  Matrix m(F, n, n);
  m(i, j) = 1;
  return m;
}

}  // namespace

TEST_CASE("codes from slices") {
  auto F = Field::create(3);
  Tensor3 A = from_slices({E(F, 2, 0, 0), E(F, 2, 1, 1)}, Direction::Horizontal);
  auto sc = code_from_slices(A, Direction::Horizontal);
  CHECK(sc.code.dim() == 2);
  CHECK(sc.independent);
  Tensor3 D = from_slices({E(F, 2, 0, 1), E(F, 2, 0, 1)}, Direction::Horizontal);
  auto sd = code_from_slices(D, Direction::Horizontal);
  CHECK(sd.code.dim() == 1);
  CHECK_FALSE(sd.independent);

  Rng rng(1);
  int full = 0;
  for (int t = 0; t < 2000; ++t) full += code_from_slices(sample_tensor3(F, 4, 4, 4, rng), Direction::Horizontal).independent;
  // deficiency probability is about 3^{-12}; 2000 draws should all be full
  CHECK(full >= 1999);
}

TEST_CASE("gram form and hull examples") {
  auto F = Field::create(3);
  auto C11 = MatrixCode::span(F, 2, {E(F, 2, 0, 0)});
  CHECK(gram_trace_form(C11) == Matrix::from_ints(F, 1, 1, {1}));
  CHECK(hull(C11).dim() == 0);
  auto C12 = MatrixCode::span(F, 2, {E(F, 2, 0, 1)});
  CHECK(gram_trace_form(C12) == Matrix::from_ints(F, 1, 1, {0}));
  CHECK(hull(C12) == C12);
  auto C2 = MatrixCode::span(F, 2, {E(F, 2, 0, 1), E(F, 2, 1, 0)});
  CHECK(gram_trace_form(C2) == Matrix::from_ints(F, 2, 2, {0, 1, 1, 0}));
  auto F2 = Field::create(2);
  auto CI = MatrixCode::span(F2, 2, {Matrix::identity(F2, 2)});
  CHECK(hull(CI) == CI);
}

TEST_CASE("hull is self-orthogonal and sits in the code") {
  Rng rng(2);
  for (std::uint64_t q : {2ULL, 3ULL, 4ULL, 5ULL}) {
    auto F = Field::of_order(q);
    for (int t = 0; t < 100; ++t) {
      const std::size_t n = 2 + rng.below(4);
      std::vector<Matrix> gens;
      for (std::size_t i = 0; i < n; ++i) gens.push_back(random_matrix(F, n, n, rng));
      auto C = MatrixCode::span(F, n, gens);
      auto H = hull(C);
      CHECK(H.dim() == C.dim() - rank(gram_trace_form(C)));
      for (const auto& X : H.basis_matrices()) {
        CHECK(C.contains(X));
        CHECK(trace_of_square(X) == 0);
        for (const auto& Y : C.basis_matrices()) CHECK(trace_product(X, Y) == 0);
      }
    }
  }
}

TEST_CASE("conjugation and hull equivariance") {
  Rng rng(3);
  auto F = Field::create(3);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 3;
    std::vector<Matrix> gens;
    for (std::size_t i = 0; i < n; ++i) gens.push_back(random_matrix(F, n, n, rng));
    auto C = MatrixCode::span(F, n, gens);
    auto T = random_invertible(F, n, rng);
    auto D = conjugate_code(C, T);
    CHECK(D.dim() == C.dim());
    CHECK(hull(D) == conjugate_code(hull(C), T));
    auto L = random_invertible(F, n, rng), R = random_invertible(F, n, rng);
    CHECK(equivalent_code(C, L, R).dim() == C.dim());
  }
  auto C = MatrixCode::span(F, 2, {E(F, 2, 0, 1)});
  CHECK(conjugate_code(C, Matrix::identity(F, 2)) == C);
  CHECK_THROWS_AS(conjugate_code(C, Matrix(F, 2, 2)), Error);
}

TEST_CASE("dimension-one hull rate is close to 1/q") {
  for (std::uint64_t q : {3ULL, 5ULL, 7ULL}) {
    auto F = Field::of_order(q);
    Rng rng(100 + q);
    const int trials = 5000;
    int hits = 0;
    for (int t = 0; t < trials; ++t) {
      auto sc = code_from_slices(sample_tensor3(F, 8, 8, 8, rng), Direction::Horizontal);
      auto H = hull(sc.code);
      if (H.dim() == 1) {
        ++hits;
        CHECK(trace_of_square(H.basis(0)) == 0);
      }
    }
    const double p = 1.0 / double(q), est = double(hits) / trials;
    CHECK(std::abs(est - p) <= 3 * std::sqrt(p * (1 - p) / trials));
  }
}
