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
// tiso: command-line front end.
//
// Exit codes: 0 ran to a verdict or report; 1 internal error; 2 usage error
// or malformed input; 3 (verify only) the witness was rejected.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "tiso/tiso.hpp"

using nlohmann::json;
using namespace tiso;

namespace {

constexpr int kOk = 0, kInternal = 1, kUsage = 2, kRejected = 3;

struct FieldArgs {
  std::uint64_t p = 0;
  unsigned m = 1;
  std::vector<std::uint64_t> modulus;

  void add(CLI::App* app) {
    app->add_option("--p", p, "field characteristic")->required();
    app->add_option("--m", m, "extension degree");
    app->add_option("--modulus", modulus, "modulus coefficients, low to high")->delimiter(',');
  }
  Field make() const { return Field::create(p, m, modulus); }
};

unsigned default_jobs() {
  if (const char* env = std::getenv("TISO_JOBS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::Format, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) fail(Errc::Format, "cannot write '" + out + "'");
  f << text;
}

std::string pretty(const json& j) { return j.dump(2) + "\n"; }

std::string rational_str(const rmt::Rational& r) {
  std::ostringstream os;
  os << numerator(r) << "/" << denominator(r);
  return os.str();
}

bool usage_error(Errc c) {
  switch (c) {
    case Errc::NotPrime:
    case Errc::ReducibleModulus:
    case Errc::DegreeMismatch:
    case Errc::FieldMismatch:
    case Errc::ShapeMismatch:
    case Errc::BadParams:
    case Errc::TooLarge:
    case Errc::Format: return true;
    default: return false;
  }
}

// ---------------------------------------------------------------------------

// Every rmt quantity is indexed by a field order.
void require_field_order(std::uint64_t q) {
  std::uint64_t p = 2;
  while (p * p <= q && q % p) ++p;
  if (q % p) p = q;
  std::uint64_t r = q;
  while (r % p == 0) r /= p;
  if (q < 2 || r != 1) fail(Errc::NotPrime, std::to_string(q) + " is not a prime power");
}

json rmt_exact(const std::string& what, std::uint64_t n, std::uint64_t q) {
  json j = {{"quantity", what}, {"n", n}, {"q", q}};
  if (what == "alpha") {
    j["exact"] = rational_str(rmt::alpha(n, q));
    j["limit"] = rmt::alpha_inf(q);
    const auto b = rmt::bound_alpha(n, q);
    j["bound"] = b.valid ? json(b.value) : json(nullptr);
  } else if (what == "alpha_star") {
    j["exact"] = rational_str(rmt::alpha_star(n, q));
    j["limit"] = rmt::alpha_star_inf(q);
    const auto b = rmt::bound_alpha_star(n, q);
    j["bound"] = b.valid ? json(b.value) : json(nullptr);
  } else if (what == "v") {
    j["exact"] = rational_str(rmt::v_gl(n, q));
    j["limit"] = rmt::v_inf(q);
  } else if (what == "c") {
    j["exact"] = rational_str(rmt::c_n(q, n));
    j["limit"] = rmt::c_inf(q);
    j["bound"] = 4 * std::pow(double(q), -double(n + 1));
  } else if (what == "sigma") {
    if (q % 2) fail(Errc::BadParams, "exact sigma is available for even q only; use 'rmt census sigma'");
    j["exact"] = "1/" + std::to_string(q);
    j["limit"] = rmt::sigma_inf(q);
    j["bound"] = rmt::sigma_bound(n, q);
  } else {
    fail(Errc::BadParams, "unknown exact quantity '" + what + "'");
  }
  return j;
}

json rmt_census(const std::string& what, std::uint64_t n, std::uint64_t q, std::uint64_t k, unsigned jobs) {
  const Field F = Field::of_order(q);
  json j = {{"quantity", what}, {"n", n}, {"q", q}};
  const auto c = rmt::brute_force_census(n, F, jobs);
  if (what == "alpha") {
    j["census"] = rational_str(rmt::alpha_census(c));
    j["exact"] = rational_str(rmt::alpha(n, q));
    j["limit"] = rmt::alpha_inf(q);
  } else if (what == "alpha_star") {
    j["census"] = rational_str(rmt::alpha_star_census(c));
    j["exact"] = rational_str(rmt::alpha_star(n, q));
    j["limit"] = rmt::alpha_star_inf(q);
  } else if (what == "sigma") {
    const auto s = rmt::sigma_census(c);
    j["census"] = rational_str(s);
    j["limit"] = rmt::sigma_inf(q);
    j["bound"] = rmt::sigma_bound(n, q);
    j["within_bound"] = rmt::sigma_bound_holds(n, q, s);
  } else if (what == "gamma" || what == "delta") {
    if (n < 1) fail(Errc::BadParams, "n must be positive");
    const auto lower = rmt::brute_force_census(n - 1, F, jobs);
    const auto delta = rmt::delta_from_beta(lower, F);
    if (what == "gamma") {
      j["census"] = rational_str(rmt::gamma_census(c));
      j["exact"] = rational_str(delta / rmt::sigma_census(c));
      j["limit"] = rmt::gamma_inf(q);
    } else {
      j["census"] = rational_str(rmt::delta_census(c));
      j["exact"] = rational_str(delta);
      j["limit"] = rmt::delta_inf(q);
    }
  } else if (what == "v") {
    j["census"] = rational_str(rmt::v_census(c));
    j["exact"] = rational_str(rmt::v_gl(n, q));
    j["limit"] = rmt::v_inf(q);
  } else if (what == "beta") {
    if (k >= q) fail(Errc::BadParams, "k must be a field element");
    j["k"] = k;
    j["census"] = rational_str(rmt::beta_census(c, k));
    j["limit"] = rmt::beta_inf(q);
  } else {
    fail(Errc::BadParams, "unknown census quantity '" + what + "'");
  }
  return j;
}

json rmt_mc(const std::string& what, std::uint64_t n, std::uint64_t q, std::uint64_t trials, std::uint64_t seed,
            unsigned c, unsigned jobs) {
  const Field F = Field::of_order(q);
  const auto stat = rmt::parse_stat(what);
  const auto r = rmt::monte_carlo(stat, n, F, trials, seed, c, jobs);
  json j = {{"quantity", what},
            {"n", n},
            {"q", q},
            {"mc", {{"estimate", r.estimate}, {"stderr", r.std_error}, {"trials", r.trials}, {"seed", r.seed}}}};
  switch (stat) {
    case rmt::Stat::UniqueSimple:
      j["exact"] = rational_str(rmt::alpha(n, q));
      j["limit"] = rmt::alpha_inf(q);
      break;
    case rmt::Stat::UniqueSimpleNonzero:
      j["exact"] = rational_str(rmt::alpha_star(n, q));
      j["limit"] = rmt::alpha_star_inf(q);
      break;
    case rmt::Stat::SelfDual:
      j["limit"] = rmt::sigma_inf(q);
      j["bound"] = rmt::sigma_bound(n, q);
      break;
    case rmt::Stat::GammaConditional: j["limit"] = rmt::gamma_inf(q); break;
    case rmt::Stat::HullDim1: j["limit"] = 1.0 / double(q); break;
    case rmt::Stat::Corank:
      j["c"] = c;
      j["exact"] = rational_str(rmt::corank_probability(n, q, c));
      break;
    case rmt::Stat::FullAlgebraPair: break;
  }
  return j;
}

json rmt_limits(std::uint64_t q) {
  const auto c = rmt::c_limit(q);
  json lim = {{"alpha_inf", rmt::alpha_inf(q)},     {"alpha_star_inf", rmt::alpha_star_inf(q)},
              {"beta_inf", rmt::beta_inf(q)},       {"gamma_inf", rmt::gamma_inf(q)},
              {"sigma_inf", rmt::sigma_inf(q)},     {"delta_inf", rmt::delta_inf(q)},
              {"v_inf", rmt::v_inf(q)}};
  // c(q)^q against its universal floor exp(-23/9)
  json floor = {{"c_pow_q", rmt::cq_pow(q, double(q))}, {"floor", std::exp(-23.0 / 9.0)},
                {"holds", rmt::cq_pow(q, double(q)) >= std::exp(-23.0 / 9.0)}};
  return {{"quantity", "limits"}, {"q", q},          {"c", {{"value", c.value}, {"bound", c.bound}, {"n", c.n}}},
          {"limits", lim},      {"floor", floor}};
}

json selftest() {
  json checks = json::array();
  auto check = [&](const std::string& name, bool ok) { checks.push_back({{"name", name}, {"ok", ok}}); };
  check("alpha(3,2) = 7/32", rmt::alpha(3, 2) == rmt::Rational(7) / 32);
  check("census alpha(3,2)", rmt::alpha_census(rmt::brute_force_census(3, 2)) == rmt::alpha(3, 2));
  check("v(GL,2,2) = 1/3", rmt::v_gl(2, 2) == rmt::Rational(1) / 3);
  const Field F = Field::of_order(5);
  bool round_trip = false;
  for (std::uint64_t s = 0; s < 200 && !round_trip; ++s) {
    const auto g = gen_instance(Problem::Algiso, 6, F, Mode::planted_hull(), s);
    Rng rng = solver_stream(s);
    const auto r = solve(g.instance, rng);
    if (r.verdict.kind == VerdictKind::Isomorphic) round_trip = verify_witness(g.instance, *r.verdict.witness).ok;
  }
  check("planted algiso round trip", round_trip);
  return {{"checks", checks}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Average-case tensor isomorphism solvers and random matrix statistics over finite fields"};
  app.require_subcommand(1);

  std::string out, format = "json";
  unsigned jobs = default_jobs();

  // gen
  auto* gen = app.add_subcommand("gen", "generate an instance");
  FieldArgs gen_field;
  gen_field.add(gen);
  std::string problem, mode = "planted", secret_out;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  gen->add_option("--problem", problem, "algiso | mcc | t4")->required();
  gen->add_option("--n", n, "size")->required();
  gen->add_option("--mode", mode, "planted | unrelated | planted_corank(c) | unrelated_corank(c) | planted_hull");
  gen->add_option("--seed", seed, "instance seed");
  gen->add_option("--out", out, "instance path (default stdout)");
  gen->add_option("--secret", secret_out, "write the planted witness here");

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "solve an instance");
  std::string instance_path;
  std::optional<std::uint64_t> solve_seed;
  unsigned c_max = 4;
  solve_cmd->add_option("instance", instance_path, "instance file")->required();
  solve_cmd->add_option("--seed", solve_seed, "solver seed (default: the instance seed)");
  solve_cmd->add_option("--c-max", c_max, "largest kernel dimension for t4")->check(CLI::Range(1, 4));
  solve_cmd->add_option("--out", out, "verdict path (default stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "check a witness; exit 0 if it verifies, 3 if not");
  std::string witness_path;
  verify->add_option("instance", instance_path, "instance file")->required();
  verify->add_option("witness", witness_path, "witness file")->required();

  // experiment
  auto* exp = app.add_subcommand("experiment", "run seeded trials and report stage attrition");
  FieldArgs exp_field;
  exp_field.add(exp);
  std::uint64_t trials = 0;
  exp->add_option("--problem", problem, "algiso | mcc | t4")->required();
  exp->add_option("--n", n, "size")->required();
  exp->add_option("--mode", mode, "instance mode");
  exp->add_option("--trials", trials, "number of trials")->required()->check(CLI::PositiveNumber);
  exp->add_option("--seed", seed, "master seed");
  exp->add_option("--jobs", jobs, "worker threads (default $TISO_JOBS or all cores)")->check(CLI::PositiveNumber);
  exp->add_option("--c-max", c_max, "largest kernel dimension for t4")->check(CLI::Range(1, 4));
  exp->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  exp->add_option("--out", out, "report path (default stdout)");
  std::optional<std::uint64_t> only_trial;
  exp->add_option("--trial", only_trial, "rerun one trial by index and print its stage trace");

  // rmt
  auto* rmt_cmd = app.add_subcommand("rmt", "random matrix statistics");
  rmt_cmd->require_subcommand(1);
  std::string quantity;
  std::uint64_t q = 0, rn = 0, k = 0;
  unsigned corank = 0;
  auto* r_exact = rmt_cmd->add_subcommand("exact", "closed-form finite-n value");
  auto* r_census = rmt_cmd->add_subcommand("census", "brute-force enumeration of M(n,q)");
  auto* r_mc = rmt_cmd->add_subcommand("mc", "Monte Carlo estimate");
  auto* r_limits = rmt_cmd->add_subcommand("limits", "n -> infinity limits");
  for (auto* sub : {r_exact, r_census, r_mc}) {
    sub->add_option("quantity", quantity, "quantity name")->required();
    sub->add_option("--n", rn, "matrix size")->required();
    sub->add_option("--q", q, "field order")->required();
    sub->add_option("--out", out, "report path (default stdout)");
  }
  r_census->add_option("--k", k, "trace value for beta");
  r_census->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  r_mc->add_option("--trials", trials, "number of samples")->required();
  r_mc->add_option("--seed", seed, "seed");
  r_mc->add_option("--c", corank, "corank for corank_c");
  r_mc->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  r_limits->add_option("--q", q, "field order")->required();
  r_limits->add_option("--out", out, "report path (default stdout)");

  auto* self = app.add_subcommand("selftest", "quick internal consistency checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) {
      const Field F = gen_field.make();
      const auto g = gen_instance(parse_problem(problem), n, F, parse_mode(mode), seed);
      if (!secret_out.empty() && g.secret) emit(pretty(io::to_json(*g.secret)), secret_out);
      emit(pretty(io::to_json(g.instance)), out);
      return kOk;
    }
    if (*solve_cmd) {
      const Instance I = io::instance_from_json(io::parse(read_file(instance_path)));
      Rng rng = solver_stream(solve_seed.value_or(I.seed));
      const auto t0 = std::chrono::steady_clock::now();
      const auto r = solve(I, rng, c_max);
      json j = io::to_json(r);
      j["wall_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      emit(pretty(j), out);
      return kOk;
    }
    if (*verify) {
      const Instance I = io::instance_from_json(io::parse(read_file(instance_path)));
      const Witness w = io::witness_from_json(io::parse(read_file(witness_path)), I.field, I.n);
      const auto r = verify_witness(I, w);
      json j = {{"ok", r.ok}};
      if (r.lambda) j["lambda"] = *r.lambda;
      std::cout << pretty(j);
      return r.ok ? kOk : kRejected;
    }
    if (*exp) {
      ExperimentConfig cfg;
      cfg.problem = parse_problem(problem);
      cfg.n = n;
      cfg.field = exp_field.make();
      cfg.trials = trials;
      cfg.master_seed = seed;
      cfg.mode = parse_mode(mode);
      cfg.jobs = jobs;
      cfg.c_max = c_max;
      if (only_trial) {
        const auto ts = trial_seed(cfg.master_seed, *only_trial);
        const auto g = gen_instance(cfg.problem, cfg.n, *cfg.field, cfg.mode, ts);
        Rng rng = solver_stream(ts);
        json j = io::to_json(solve(g.instance, rng, cfg.c_max));
        j["trial"] = *only_trial;
        j["instance_seed"] = ts;
        emit(pretty(j), out);
        return kOk;
      }
      const json report = run_experiment(cfg);
      emit(format == "csv" ? report_csv(report) : pretty(report), out);
      return kOk;
    }
    if (*rmt_cmd) {
      require_field_order(q);
      json j;
      if (*r_exact) j = rmt_exact(quantity, rn, q);
      if (*r_census) j = rmt_census(quantity, rn, q, k, jobs);
      if (*r_mc) j = rmt_mc(quantity, rn, q, trials, seed, corank, jobs);
      if (*r_limits) j = rmt_limits(q);
      emit(pretty(j), out);
      return kOk;
    }
    if (*self) {
      const json j = selftest();
      std::cout << pretty(j);
      for (const auto& c : j["checks"])
        if (!c["ok"].get<bool>()) return kInternal;
      return kOk;
    }
  } catch (const Error& e) {
    std::cerr << "tiso: " << e.what() << "\n";
    return usage_error(e.code()) ? kUsage : kInternal;
  } catch (const std::exception& e) {
    std::cerr << "tiso: internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
