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
 * @file instance.hpp
 * @brief Seeded generation of problem instances and witness checking on them.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "tiso/codes.hpp"
#include "tiso/error.hpp"
#include "tiso/matrix.hpp"
#include "tiso/tensor.hpp"

namespace tiso {

struct Mode {
  enum class Kind { Planted, Unrelated, PlantedCorank, UnrelatedCorank, PlantedHull };
  Kind kind = Kind::Planted;
  unsigned corank = 0;

  static Mode planted() { return {Kind::Planted, 0}; }
  static Mode unrelated() { return {Kind::Unrelated, 0}; }
  static Mode planted_corank(unsigned c) { return {Kind::PlantedCorank, c}; }
  static Mode unrelated_corank(unsigned c) { return {Kind::UnrelatedCorank, c}; }
  static Mode planted_hull() { return {Kind::PlantedHull, 0}; }

  bool is_planted() const noexcept { return kind != Kind::Unrelated && kind != Kind::UnrelatedCorank; }

  friend bool operator==(const Mode&, const Mode&) = default;
};

inline std::string mode_name(const Mode& m) {
  switch (m.kind) {
    case Mode::Kind::Planted: return "planted";
    case Mode::Kind::Unrelated: return "unrelated";
    case Mode::Kind::PlantedCorank: return "planted_corank(" + std::to_string(m.corank) + ")";
    case Mode::Kind::UnrelatedCorank: return "unrelated_corank(" + std::to_string(m.corank) + ")";
    case Mode::Kind::PlantedHull: return "planted_hull";
  }
  return "?";
}

/// Accepts the names above; "planted_corank(3)" and "planted_corank:3" are equivalent.
inline Mode parse_mode(std::string_view s) {
  if (s == "planted") return Mode::planted();
  if (s == "unrelated") return Mode::unrelated();
  if (s == "planted_hull") return Mode::planted_hull();
  for (auto [prefix, kind] : {std::pair{std::string_view("planted_corank"), Mode::Kind::PlantedCorank},
                              std::pair{std::string_view("unrelated_corank"), Mode::Kind::UnrelatedCorank}}) {
    if (s.substr(0, prefix.size()) != prefix) continue;
    std::string_view rest = s.substr(prefix.size());
    if (!rest.empty() && (rest.front() == '(' || rest.front() == ':')) rest.remove_prefix(1);
    if (!rest.empty() && rest.back() == ')') rest.remove_suffix(1);
    if (rest.size() != 1 || rest[0] < '0' || rest[0] > '4') break;
    return {kind, static_cast<unsigned>(rest[0] - '0')};
  }
  fail(Errc::Format, "unknown mode '" + std::string(s) + "'");
}

/// A and B as flat lexicographic entry arrays; n^3 entries for algiso and
/// mcc, n^4 for t4.
struct Instance {
  Problem problem;
  Field field;
  std::size_t n;
  std::vector<Elem> a, b;
  Mode mode;
  std::uint64_t seed = 0;

  Tensor3 a3() const { return Tensor3(field, n, n, n, a); }
  Tensor3 b3() const { return Tensor3(field, n, n, n, b); }
  Tensor4 a4() const { return Tensor4(field, n, a); }
  Tensor4 b4() const { return Tensor4(field, n, b); }
};

struct Generated {
  Instance instance;
  std::optional<Witness> secret;
};

namespace detail {

/// Uniform n x n matrix of rank r: product of full-rank factors.
inline Matrix random_rank(const Field& f, std::size_t n, std::size_t r, Rng& rng) {
  Matrix P(f, n, r), Q(f, r, n);
  do P = random_matrix(f, n, r, rng);
  while (rank(P) < r);
  do Q = random_matrix(f, r, n, rng);
  while (rank(Q) < r);
  return P * Q;
}

/// Self-dual H (Tr H^2 = 0) whose F_q-spectrum is one simple eigenvalue.
inline Matrix self_dual_spanner(const Field& F, std::size_t n, bool nonzero, Rng& rng) {
  while (true) {
    Matrix H = random_matrix(F, n, n, rng);
    if (F.p() == 2) {
      // Tr(H^2) = Tr(H)^2 in characteristic 2
      Elem t = 0;
      for (std::size_t i = 1; i < n; ++i) t = F.add(t, H(i, i));
      H(0, 0) = t;
    } else {
      if (H(1, 0) == 0) continue;
      H(0, 1) = 0;
      const Elem rest = trace_of_square(H);
      H(0, 1) = F.div(F.neg(rest), F.mul(2 % F.p(), H(1, 0)));
    }
    if (trace_of_square(H) != 0) continue;
    if (unique_simple_eigenvalue(H, nonzero)) return H;
  }
}

inline Matrix orthogonal_to(const Matrix& H, Rng& rng) {
  const Field& F = H.field();
  const std::size_t n = H.rows();
  Matrix X = random_matrix(F, n, n, rng);
  std::size_t i0 = 0, j0 = 0;
  while (H(i0, j0) == 0) {
    if (++j0 == n) {
      j0 = 0;
      ++i0;
    }
  }
  X(j0, i0) = 0;
  X(j0, i0) = F.div(F.neg(trace_product(H, X)), H(i0, j0));
  return X;
}

// Slices spanning a code whose hull is the line through a spectrally
// admissible self-dual matrix.
inline Tensor3 hull_planted_tensor(const Field& F, std::size_t n, Direction dir, bool nonzero, Rng& rng) {
  require(n >= 2, Errc::BadParams, "planted_hull needs n >= 2");
  while (true) {
    const Matrix H = self_dual_spanner(F, n, nonzero, rng);
    std::vector<Matrix> gens{H};
    for (std::size_t i = 1; i < n; ++i) gens.push_back(orthogonal_to(H, rng));
    const Matrix M = random_invertible(F, n, rng);
    std::vector<Matrix> mixed;
    for (std::size_t i = 0; i < n; ++i) {
      Matrix Y(F, n, n);
      for (std::size_t j = 0; j < n; ++j) axpy(F, Y.data(), M(i, j), gens[j].data(), n * n);
      mixed.push_back(std::move(Y));
    }
    Tensor3 A = from_slices(mixed, dir);
    auto sc = code_from_slices(A, dir);
    if (sc.independent && hull(sc.code).dim() == 1) return A;
  }
}

}  // namespace detail

/// Deterministic in (problem, n, field, mode, seed).
inline Generated gen_instance(Problem problem, std::size_t n, const Field& F, Mode mode, std::uint64_t seed) {
  require(n >= 1, Errc::BadParams, "n must be positive");
  const bool corank = mode.kind == Mode::Kind::PlantedCorank || mode.kind == Mode::Kind::UnrelatedCorank;
  if (corank && (problem != Problem::T4 || mode.corank > 4 || mode.corank > n * n))
    fail(Errc::BadParams, "corank modes need problem t4 and 0 <= c <= 4");
  if (mode.kind == Mode::Kind::PlantedHull && problem == Problem::T4)
    fail(Errc::BadParams, "planted_hull applies to algiso and mcc");

  const Rng root(seed);
  Rng ra = root.fork("A"), rb = root.fork("B"), rw = root.fork("witness");
  Instance I{problem, F, n, {}, {}, mode, seed};
  std::optional<Witness> secret;

  if (problem == Problem::T4) {
    Tensor4 A(F, n);
    if (corank)
      A = unflatten4(detail::random_rank(F, n * n, n * n - mode.corank, ra));
    else
      A = sample_tensor4(F, n, ra);
    I.a = A.entries();
    if (!mode.is_planted()) {
      I.b = (corank ? unflatten4(detail::random_rank(F, n * n, n * n - mode.corank, rb)) : sample_tensor4(F, n, rb))
                .entries();
      return {std::move(I), std::move(secret)};
    }
    Witness w{Problem::T4, {}, std::nullopt};
    for (const char* name : {"L", "R", "S", "T"}) w.matrices.emplace(name, random_invertible(F, n, rw));
    I.b = act4(A, w.at("L"), w.at("R"), w.at("S"), w.at("T")).entries();
    secret = std::move(w);
    return {std::move(I), std::move(secret)};
  }

  Tensor3 A(F, n, n, n);
  if (mode.kind == Mode::Kind::PlantedHull)
    A = detail::hull_planted_tensor(F, n, problem == Problem::Algiso ? Direction::Horizontal : Direction::Frontal,
                                    problem == Problem::Mcc, ra);
  else
    A = sample_tensor3(F, n, n, n, ra);
  I.a = A.entries();
  if (!mode.is_planted()) {
    I.b = sample_tensor3(F, n, n, n, rb).entries();
    return {std::move(I), std::move(secret)};
  }
  if (problem == Problem::Algiso) {
    Witness w{Problem::Algiso, {}, std::nullopt};
    w.matrices.emplace("T", random_invertible(F, n, rw));
    I.b = act_algebra(A, w.at("T")).entries();
    secret = std::move(w);
  } else {
    Witness w{Problem::Mcc, {}, std::nullopt};
    w.matrices.emplace("S", random_invertible(F, n, rw));
    w.matrices.emplace("T", random_invertible(F, n, rw));
    const Matrix& S = w.at("S");
    I.b = act3(A, S, inverse(S).transpose(), w.at("T")).entries();
    secret = std::move(w);
  }
  return {std::move(I), std::move(secret)};
}

struct WitnessCheck {
  bool ok = false;
  std::optional<Elem> lambda;
};

inline WitnessCheck verify_witness(const Instance& I, const Witness& w) {
  if (w.problem != I.problem) fail(Errc::ShapeMismatch, "witness is for a different problem");
  for (const auto& [name, M] : w.matrices) {
    require(M.rows() == I.n && M.cols() == I.n, Errc::ShapeMismatch, "witness matrix shape");
    if (!(M.field() == I.field)) fail(Errc::FieldMismatch, "witness over a different field");
  }
  switch (I.problem) {
    case Problem::Algiso: {
      auto r = verify_algiso(I.a3(), I.b3(), w.at("T"));
      if (!r.ok) return {};
      return {true, r.lambda};
    }
    case Problem::Mcc: return {verify_mcc(I.a3(), I.b3(), w.at("S"), w.at("T")), std::nullopt};
    case Problem::T4:
      return {verify_t4(I.a4(), I.b4(), w.at("L"), w.at("R"), w.at("S"), w.at("T")), std::nullopt};
  }
  return {};
}

}  // namespace tiso
