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
 * @file io.hpp
 * @brief JSON encodings of fields, instances, witnesses, verdicts and stage
 * traces. Every decoder validates shape and range and throws
 * Error(Errc::Format) on malformed input.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tiso/error.hpp"
#include "tiso/gf.hpp"
#include "tiso/instance.hpp"
#include "tiso/solvers.hpp"
#include "tiso/tensor.hpp"

namespace tiso::io {

using json = nlohmann::json;

namespace detail {

inline const json& member(const json& j, const char* key) {
  if (!j.is_object()) fail(Errc::Format, "expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) fail(Errc::Format, std::string("missing key '") + key + "'");
  return *it;
}

inline std::uint64_t as_uint(const json& j, const char* what) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0))
    fail(Errc::Format, std::string(what) + " must be a non-negative integer");
  return j.get<std::uint64_t>();
}

inline std::vector<Elem> elems(const json& j, const Field& F, std::size_t expect, const char* what) {
  if (!j.is_array()) fail(Errc::Format, std::string(what) + " must be an array");
  if (j.size() != expect)
    fail(Errc::Format, std::string(what) + " has " + std::to_string(j.size()) + " entries, expected " +
                           std::to_string(expect));
  std::vector<Elem> out;
  out.reserve(expect);
  for (const auto& e : j) {
    const auto v = as_uint(e, what);
    if (!F.contains(v)) fail(Errc::Format, std::string(what) + " entry outside the field");
    out.push_back(v);
  }
  return out;
}

}  // namespace detail

inline json to_json(const Field& F) {
  json j = {{"p", F.p()}, {"m", F.m()}};
  if (F.m() > 1) j["modulus"] = F.modulus();
  return j;
}

inline Field field_from_json(const json& j) {
  const auto p = detail::as_uint(detail::member(j, "p"), "p");
  const auto m = j.contains("m") ? detail::as_uint(j["m"], "m") : 1;
  if (m < 1 || m > Field::kMaxDegree) fail(Errc::Format, "m out of range");
  std::vector<std::uint64_t> modulus;
  if (j.contains("modulus")) {
    const auto& mj = j["modulus"];
    if (!mj.is_array()) fail(Errc::Format, "modulus must be an array");
    for (const auto& c : mj) modulus.push_back(detail::as_uint(c, "modulus coefficient"));
  }
  return Field::create(p, static_cast<unsigned>(m), modulus);
}

inline std::size_t entry_count(Problem p, std::size_t n) { return p == Problem::T4 ? n * n * n * n : n * n * n; }

inline json to_json(const Instance& I) {
  return {{"problem", problem_name(I.problem)},
          {"field", to_json(I.field)},
          {"n", I.n},
          {"A", I.a},
          {"B", I.b},
          {"meta", {{"mode", mode_name(I.mode)}, {"seed", I.seed}}}};
}

inline Instance instance_from_json(const json& j) {
  const auto& pj = detail::member(j, "problem");
  if (!pj.is_string()) fail(Errc::Format, "problem must be a string");
  const Problem prob = parse_problem(pj.get<std::string>());
  const Field F = field_from_json(detail::member(j, "field"));
  const auto n = detail::as_uint(detail::member(j, "n"), "n");
  if (n < 1 || n > 4096) fail(Errc::Format, "n out of range");
  const std::size_t count = entry_count(prob, n);
  auto a = detail::elems(detail::member(j, "A"), F, count, "A");
  auto b = detail::elems(detail::member(j, "B"), F, count, "B");
  Mode mode = Mode::planted();
  std::uint64_t seed = 0;
  if (j.contains("meta")) {
    const auto& meta = j["meta"];
    if (!meta.is_object()) fail(Errc::Format, "meta must be an object");
    if (meta.contains("mode")) {
      if (!meta["mode"].is_string()) fail(Errc::Format, "meta.mode must be a string");
      mode = parse_mode(meta["mode"].get<std::string>());
    }
    if (meta.contains("seed")) seed = detail::as_uint(meta["seed"], "meta.seed");
  }
  return Instance{prob, F, n, std::move(a), std::move(b), mode, seed};
}

inline json to_json(const Witness& w) {
  json mats = json::object();
  for (const auto& [name, M] : w.matrices) mats[name] = M.entries();
  json j = {{"problem", problem_name(w.problem)}, {"matrices", mats}};
  if (w.lambda) j["lambda"] = *w.lambda;
  return j;
}

inline const std::vector<std::string>& witness_names(Problem p) {
  static const std::vector<std::string> algiso{"T"}, mcc{"S", "T"}, t4{"L", "R", "S", "T"};
  return p == Problem::Algiso ? algiso : p == Problem::Mcc ? mcc : t4;
}

/// Decodes a witness for an instance over F with size n; the matrix names
/// must be exactly those of the problem.
inline Witness witness_from_json(const json& j, const Field& F, std::size_t n) {
  const auto& pj = detail::member(j, "problem");
  if (!pj.is_string()) fail(Errc::Format, "problem must be a string");
  Witness w{parse_problem(pj.get<std::string>()), {}, std::nullopt};
  const auto& mats = detail::member(j, "matrices");
  if (!mats.is_object()) fail(Errc::Format, "matrices must be an object");
  const auto& names = witness_names(w.problem);
  if (mats.size() != names.size()) fail(Errc::Format, "wrong number of witness matrices");
  for (const auto& name : names) {
    auto vals = detail::elems(detail::member(mats, name.c_str()), F, n * n, name.c_str());
    w.matrices.emplace(name, Matrix(F, n, n, std::move(vals)));
  }
  if (j.contains("lambda") && !j["lambda"].is_null()) {
    const auto l = detail::as_uint(j["lambda"], "lambda");
    if (!F.contains(l)) fail(Errc::Format, "lambda outside the field");
    w.lambda = l;
  }
  return w;
}

inline json to_json(const StageTrace& tr) {
  json arr = json::array();
  for (const auto& e : tr) arr.push_back({{"stage", e.stage}, {"outcome", outcome_name(e.outcome)}, {"digest", e.digest}});
  return arr;
}

/// {"verdict", "stage"?, "scalar"?, "witness"?, "stages"}; wall time is
/// added by the caller so the rest stays deterministic.
inline json to_json(const SolveResult& r) {
  json j = {{"verdict", verdict_name(r.verdict.kind)}};
  j["stage"] = r.verdict.stage ? json(*r.verdict.stage) : json(nullptr);
  j["scalar"] = r.verdict.scalar ? json(*r.verdict.scalar) : json(nullptr);
  j["witness"] = r.verdict.witness ? to_json(*r.verdict.witness) : json(nullptr);
  j["stages"] = to_json(r.trace);
  return j;
}

/// Parses text, mapping parser errors to Errc::Format.
inline json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(Errc::Format, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace tiso::io
