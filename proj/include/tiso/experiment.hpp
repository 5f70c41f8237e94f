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
 * @file experiment.hpp
 * @brief Batch harness: generate and solve many seeded instances in
 * parallel and summarize stage attrition and success fractions.
 *
 * Trial i uses instance seed Seed128::derive(master_seed, i).hi, and the
 * solver stream Rng(instance seed).fork("solve"), the same stream `tiso solve`
 * uses. Any trial can be replayed alone, and the report body does not depend
 * on the number of threads.
 */

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "tiso/instance.hpp"
#include "tiso/io.hpp"
#include "tiso/solvers.hpp"

namespace tiso {

struct ExperimentConfig {
  Problem problem = Problem::Algiso;
  std::size_t n = 0;
  std::optional<Field> field;
  std::uint64_t trials = 0;
  std::uint64_t master_seed = 0;
  Mode mode = Mode::planted();
  unsigned jobs = 1;
  unsigned c_max = 4;
};

inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index) { return Seed128::derive(master, index).hi; }

inline Rng solver_stream(std::uint64_t instance_seed) { return Rng(instance_seed).fork("solve"); }

struct TrialRecord {
  VerdictKind kind = VerdictKind::Failure;
  std::string last_stage;
  bool cleared_final_gate = false;
  bool witness_ok = true;
  double ms = 0;
};

/// Wilson score interval for k successes in n trials.
inline std::pair<double, double> wilson_interval(std::uint64_t k, std::uint64_t n, double z = 1.959963984540054) {
  if (n == 0) return {0.0, 1.0};
  const double p = double(k) / double(n), z2 = z * z, dn = double(n);
  const double centre = (p + z2 / (2 * dn)) / (1 + z2 / dn);
  const double half = z / (1 + z2 / dn) * std::sqrt(p * (1 - p) / dn + z2 / (4 * dn * dn));
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

inline TrialRecord run_trial(const ExperimentConfig& cfg, std::uint64_t index) {
  const auto seed = trial_seed(cfg.master_seed, index);
  const auto t0 = std::chrono::steady_clock::now();
  const auto g = gen_instance(cfg.problem, cfg.n, *cfg.field, cfg.mode, seed);
  Rng rng = solver_stream(seed);
  const auto r = solve(g.instance, rng, cfg.c_max);
  TrialRecord rec;
  rec.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  rec.kind = r.verdict.kind;
  rec.last_stage = r.trace.back().stage;
  for (const auto& e : r.trace)
    if (e.stage == "step5" && e.outcome == StageOutcome::Pass) rec.cleared_final_gate = true;
  if (r.verdict.witness) rec.witness_ok = verify_witness(g.instance, *r.verdict.witness).ok;
  return rec;
}

inline std::vector<TrialRecord> run_trials(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) fail(Errc::BadParams, "trials must be at least 1");
  if (!cfg.field) fail(Errc::BadParams, "experiment needs a field");
  std::vector<TrialRecord> out(cfg.trials);
  const unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(std::min<std::uint64_t>(cfg.trials, 256))));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(jobs);
  for (unsigned j = 0; j < jobs; ++j)
    pool.emplace_back([&, j] {
      try {
        for (std::uint64_t i = j; i < cfg.trials; i += jobs) out[i] = run_trial(cfg, i);
      } catch (...) {
        errors[j] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

/// Report with a deterministic "body" and a separate "timing" object.
inline nlohmann::json experiment_report(const ExperimentConfig& cfg, const std::vector<TrialRecord>& recs) {
  using nlohmann::json;
  std::map<std::string, std::uint64_t> verdicts{{"Isomorphic", 0}, {"NotIsomorphic", 0}, {"Failure", 0}};
  std::map<std::string, std::map<std::string, std::uint64_t>> attrition;
  for (int s = 1; s <= 6; ++s) attrition["step" + std::to_string(s)] = {{"failure", 0}, {"not_isomorphic", 0}};
  std::uint64_t cleared = 0, cleared_iso = 0, bad_witness = 0;
  for (const auto& r : recs) {
    ++verdicts[std::string(verdict_name(r.kind))];
    if (r.kind == VerdictKind::Failure) ++attrition[r.last_stage]["failure"];
    if (r.kind == VerdictKind::NotIsomorphic) ++attrition[r.last_stage]["not_isomorphic"];
    if (r.cleared_final_gate) {
      ++cleared;
      if (r.kind == VerdictKind::Isomorphic) ++cleared_iso;
    }
    if (!r.witness_ok) ++bad_witness;
  }
  const std::uint64_t n = recs.size();
  const std::uint64_t non_failure = n - verdicts["Failure"];
  const auto [lo, hi] = wilson_interval(non_failure, n);
  const auto [ilo, ihi] = wilson_interval(verdicts["Isomorphic"], n);

  json body = {
      {"config",
       {{"problem", problem_name(cfg.problem)},
        {"n", cfg.n},
        {"field", io::to_json(*cfg.field)},
        {"trials", cfg.trials},
        {"master_seed", cfg.master_seed},
        {"mode", mode_name(cfg.mode)},
        {"c_max", cfg.c_max}}},
      {"verdicts", verdicts},
      {"attrition", attrition},
      {"non_failure", {{"count", non_failure}, {"fraction", double(non_failure) / double(n)}, {"wilson95", {lo, hi}}}},
      {"isomorphic", {{"count", verdicts["Isomorphic"]}, {"fraction", double(verdicts["Isomorphic"]) / double(n)},
                      {"wilson95", {ilo, ihi}}}},
      {"final_gate", {{"cleared", cleared}, {"isomorphic_given_cleared", cleared_iso}}},
      {"rejected_witnesses", bad_witness}};

  std::vector<double> ms;
  for (const auto& r : recs) ms.push_back(r.ms);
  std::sort(ms.begin(), ms.end());
  double total = 0;
  for (double x : ms) total += x;
  const double median = ms.size() % 2 ? ms[ms.size() / 2] : (ms[ms.size() / 2 - 1] + ms[ms.size() / 2]) / 2;
  json timing = {{"mean_ms", total / double(n)}, {"median_ms", median}, {"total_ms", total}, {"jobs", cfg.jobs}};
  return {{"body", body}, {"timing", timing}};
}

inline nlohmann::json run_experiment(const ExperimentConfig& cfg) { return experiment_report(cfg, run_trials(cfg)); }

/// Flat key,value rendering of a report body.
inline std::string report_csv(const nlohmann::json& report) {
  std::string out = "key,value\n";
  const auto flat = report.flatten();
  for (auto it = flat.begin(); it != flat.end(); ++it) {
    std::string v = it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
    out += it.key() + "," + v + "\n";
  }
  return out;
}

}  // namespace tiso
