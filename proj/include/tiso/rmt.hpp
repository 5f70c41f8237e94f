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
 * @file rmt.hpp
 * @brief Random matrix statistics over F_q: exact finite-n probabilities,
 * their n -> infinity limits with error bounds, character sums, and the
 * brute-force and Monte Carlo oracles used to check them.
 *
 * Finite-n quantities are exact rationals. Doubles appear only in limits,
 * bounds and character sums.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tiso/codes.hpp"
#include "tiso/conj.hpp"
#include "tiso/error.hpp"
#include "tiso/gf.hpp"
#include "tiso/matrix.hpp"
#include "tiso/poly.hpp"
#include "tiso/rng.hpp"
#include "tiso/tensor.hpp"

namespace tiso::rmt {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace detail {

inline void check_q(std::uint64_t q) {
  if (q < 2) fail(Errc::BadParams, "q must be at least 2");
}

inline BigInt big_pow(std::uint64_t q, std::uint64_t e) { return boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(e)); }

inline Rational inv_pow(std::uint64_t q, std::uint64_t e) { return Rational(BigInt(1), big_pow(q, e)); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Group orders and c_n(q)

/// c_n(q) = |GL(n,q)| / q^{n^2} = prod_{i=1}^n (1 - q^{-i}).
inline Rational c_n(std::uint64_t q, std::uint64_t n) {
  detail::check_q(q);
  Rational r = 1;
  for (std::uint64_t i = 1; i <= n; ++i) r *= 1 - detail::inv_pow(q, i);
  return r;
}

/// |GL(n,q)| = prod_{i<n} (q^n - q^i).
inline BigInt gl_order(std::uint64_t q, std::uint64_t n) {
  detail::check_q(q);
  BigInt r = 1;
  const BigInt qn = detail::big_pow(q, n);
  for (std::uint64_t i = 0; i < n; ++i) r *= qn - detail::big_pow(q, i);
  return r;
}

struct CLimit {
  double value;    // c_n(q) at the chosen n
  double deficit;  // 1 - c_n(q), computed exactly then rounded
  double bound;    // 0 <= c_n(q) - c(q) <= bound
  std::uint64_t n;
};

/// c(q) = lim c_n(q), truncated at the smallest n with 4 q^{-(n+1)} < tol.
inline CLimit c_limit(std::uint64_t q, double tol = 1e-15) {
  detail::check_q(q);
  if (!(tol > 0)) fail(Errc::BadParams, "tolerance must be positive");
  std::uint64_t n = 1;
  while (4 * std::pow(double(q), -double(n + 1)) >= tol) ++n;
  const Rational c = c_n(q, n);
  return {detail::to_double(c), detail::to_double(1 - c), 4 * std::pow(double(q), -double(n + 1)), n};
}

// ---------------------------------------------------------------------------
// Truncated power series with exact coefficients

class RationalSeries {
 public:
  explicit RationalSeries(std::size_t order) : c_(order + 1, Rational(0)) {}
  RationalSeries(std::size_t order, std::vector<Rational> coeffs) : c_(std::move(coeffs)) { c_.resize(order + 1, Rational(0)); }

  std::size_t order() const noexcept { return c_.size() - 1; }
  const Rational& operator[](std::size_t i) const { return c_.at(i); }
  Rational& operator[](std::size_t i) { return c_.at(i); }
  const std::vector<Rational>& coeffs() const noexcept { return c_; }

  static RationalSeries one(std::size_t order) {
    RationalSeries s(order);
    s.c_[0] = 1;
    return s;
  }

  friend RationalSeries operator*(const RationalSeries& a, const RationalSeries& b) {
    const std::size_t N = std::min(a.order(), b.order());
    RationalSeries r(N);
    for (std::size_t i = 0; i <= N; ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; i + j <= N; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
  }

  friend bool operator==(const RationalSeries&, const RationalSeries&) = default;

  /// Multiplicative inverse; needs a nonzero constant term.
  RationalSeries inverse() const {
    if (c_[0] == 0) fail(Errc::DivideByZero, "series with zero constant term is not invertible");
    RationalSeries r(order());
    r.c_[0] = 1 / c_[0];
    for (std::size_t n = 1; n <= order(); ++n) {
      Rational acc = 0;
      for (std::size_t k = 1; k <= n; ++k) acc += c_[k] * r.c_[n - k];
      r.c_[n] = -acc * r.c_[0];
    }
    return r;
  }

  RationalSeries pow(std::uint64_t e) const {
    RationalSeries result = one(order()), base = *this;
    while (e) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

 private:
  std::vector<Rational> c_;
};

/// U(GL,q,z) = sum_n u(GL,n,q) z^n with u(GL,n,q) = 1 / (c_n(q) q^n).
inline RationalSeries u_series(std::uint64_t q, std::size_t N) {
  detail::check_q(q);
  RationalSeries s(N);
  Rational c = 1;
  for (std::size_t n = 0; n <= N; ++n) {
    if (n) c *= 1 - detail::inv_pow(q, n);
    s[n] = detail::inv_pow(q, n) / c;
  }
  return s;
}

/// V(GL,q,z) = (1 - z)^{-1} U(GL,q,z)^{-(q-1)}: v(GL,n,q) is the
/// probability that a uniform element of GL(n,q) has no eigenvalue in F_q.
inline RationalSeries v_series(std::uint64_t q, std::size_t N) {
  RationalSeries geo(N);
  for (std::size_t i = 0; i <= N; ++i) geo[i] = 1;
  return geo * u_series(q, N).pow(q - 1).inverse();
}

inline Rational v_gl(std::uint64_t n, std::uint64_t q) { return v_series(q, n)[n]; }

// ---------------------------------------------------------------------------
// Eigenvalue profiles

/// Multiplicity m(lambda) >= 1 per listed eigenvalue; D = sum of m.
using ProfileSpec = std::map<Elem, unsigned>;

inline unsigned profile_total(const ProfileSpec& m) {
  unsigned d = 0;
  for (const auto& [lambda, mult] : m) {
    if (mult == 0) fail(Errc::BadParams, "profile multiplicities must be positive");
    d += mult;
  }
  return d;
}

/// |C_m(n,q)| = |GL(n,q)| v(GL,r,q) prod_lambda q^{-m(lambda)} / c_{m(lambda)}(q), r = n - D(m).
inline BigInt profile_count(std::uint64_t n, std::uint64_t q, const ProfileSpec& m) {
  detail::check_q(q);
  for (const auto& [lambda, mult] : m)
    if (lambda >= q) fail(Errc::BadParams, "profile eigenvalue outside F_q");
  const unsigned D = profile_total(m);
  if (D > n) fail(Errc::BadParams, "profile exceeds n");
  Rational r = Rational(gl_order(q, n)) * v_gl(n - D, q);
  for (const auto& [lambda, mult] : m) r *= detail::inv_pow(q, mult) / c_n(q, mult);
  if (denominator(r) != 1) fail(Errc::NonIntegralCount, "profile count is not an integer");
  return numerator(r);
}

inline Rational profile_probability(std::uint64_t n, std::uint64_t q, const ProfileSpec& m) {
  return Rational(profile_count(n, q, m), detail::big_pow(q, n * n));
}

/// Exactly one eigenvalue in F_q, of algebraic multiplicity 1.
inline Rational alpha(std::uint64_t n, std::uint64_t q) {
  if (n < 1) fail(Errc::BadParams, "alpha needs n >= 1");
  return Rational(BigInt(q), BigInt(q - 1)) * v_gl(n - 1, q) * c_n(q, n);
}

/// As alpha, with that eigenvalue nonzero.
inline Rational alpha_star(std::uint64_t n, std::uint64_t q) {
  if (n < 1) fail(Errc::BadParams, "alpha_star needs n >= 1");
  return v_gl(n - 1, q) * c_n(q, n);
}

// ---------------------------------------------------------------------------
// Limits and error bounds

inline double c_inf(std::uint64_t q) { return c_limit(q).value; }
inline double cq_pow(std::uint64_t q, double e) { return std::exp(e * std::log1p(-c_limit(q).deficit)); }

inline double alpha_inf(std::uint64_t q) { return double(q) / double(q - 1) * cq_pow(q, double(q)); }
inline double alpha_star_inf(std::uint64_t q) { return cq_pow(q, double(q)); }
inline double v_inf(std::uint64_t q) { return cq_pow(q, double(q - 1)); }
inline double beta_inf(std::uint64_t q) { return cq_pow(q, double(q - 1)) / double(q); }
inline double sigma_inf(std::uint64_t q) { return 1.0 / double(q); }
inline double delta_inf(std::uint64_t q) { return cq_pow(q, double(q)) / double(q - 1); }
inline double gamma_inf(std::uint64_t q) { return alpha_inf(q); }

/// An error bound together with whether (n, q) lies where it is proved.
struct Bound {
  double value;
  bool valid;
};

namespace detail {

// (1/2) 16^{q-1} q^{-(n+1)(n+q)/(2(q-1))}, via logs
inline double v_tail(std::uint64_t n, std::uint64_t q) {
  const double lq = std::log(double(q));
  return 0.5 * std::exp(double(q - 1) * std::log(16.0) -
                        double(n + 1) * double(n + q) / (2.0 * double(q - 1)) * lq);
}

inline bool np_valid(std::uint64_t n, std::uint64_t q) { return n > 5 * (q - 1) * (q - 1); }

}  // namespace detail

/// |alpha(inf,q) - alpha(n,q)|, proved for n - 1 > 5 (q-1)^2.
inline Bound bound_alpha(std::uint64_t n, std::uint64_t q) {
  detail::check_q(q);
  if (n < 1) fail(Errc::BadParams, "n must be positive");
  const std::uint64_t m = n - 1;
  return {double(q) / double(q - 1) * (detail::v_tail(m, q) + 4 * std::pow(double(q), -double(m + 1))),
          detail::np_valid(m, q)};
}

inline Bound bound_alpha_star(std::uint64_t n, std::uint64_t q) {
  detail::check_q(q);
  if (n < 1) fail(Errc::BadParams, "n must be positive");
  const std::uint64_t m = n - 1;
  return {detail::v_tail(m, q) + 4 * std::pow(double(q), -double(m + 1)), detail::np_valid(m, q)};
}

/// Sigma(n,q) = (q-1) q^{-n^2/2 - 1}, valid for all n.
inline double sigma_bound(std::uint64_t n, std::uint64_t q) {
  detail::check_q(q);
  return double(q - 1) * std::pow(double(q), -double(n * n) / 2.0 - 1.0);
}

/// Exact form of |x - 1/q| <= Sigma(n,q): squares both sides, so odd n
/// (irrational bound) is decided without rounding.
inline bool sigma_bound_holds(std::uint64_t n, std::uint64_t q, const Rational& x) {
  detail::check_q(q);
  const Rational d = x - Rational(BigInt(1), BigInt(q));
  return d * d * Rational(detail::big_pow(q, n * n + 2)) <= Rational(BigInt((q - 1) * (q - 1)));
}

/// Gamma(n,q), the error bound on beta(n,q,k), proved for n >= 5 (q-1)^2.
inline Bound Gamma_bound(std::uint64_t n, std::uint64_t q) {
  detail::check_q(q);
  const double dn = double(n), dq = double(q), lq = std::log(dq);
  const double first = 0.5 * std::exp(double(q - 1) * std::log(16.0) - ((dn + 1) * (dn + dq) / (2 * (dq - 1)) + 1) * lq);
  double second = 0;
  if (q >= 2) {
    const double log_binom = q >= 2 ? std::lgamma(dn + dq - 1) - std::lgamma(dq - 1) - std::lgamma(dn + 1) : 0.0;
    const double expo = -dn * dn / (2 * (dq + 1)) + (dq - 1) * dn / (2 * (dq + 1)) + (dq - 1) / (4 * (dq + 1));
    second = std::exp(2 * std::log(dn + 1) + log_binom + dn * std::log(dq / (dq - 1)) + expo * lq);
  }
  return {first + second, n >= 5 * (q - 1) * (q - 1)};
}

/// |gamma(inf,q) - gamma(n,q)|, valid where Gamma_bound is.
inline Bound gamma_bound(std::uint64_t n, std::uint64_t q) {
  const auto G = Gamma_bound(n, q);
  const double dq = double(q), dn = double(n);
  const double s = (dq - 1) * std::pow(dq, -dn * dn / 2);
  const double v = dq * dq / (1 - s) * (s / dq + dq / (dq - 1) * (std::pow(dq, -(dn + 1)) + G.value));
  return {v, G.valid && s < 1};
}

// ---------------------------------------------------------------------------
// Characteristic polynomial distribution on GL(n,q)

struct Factor {
  Poly g;  // monic irreducible
  unsigned e;
};

/// Factorization of a monic f by trial division with monic polynomials in
/// increasing degree; each first divisor found is irreducible.
inline std::vector<Factor> factor_exhaustive(const Poly& f) {
  const Field& F = f.field();
  if (f.is_zero() || !f.is_monic()) fail(Errc::BadParams, "factor_exhaustive needs a monic polynomial");
  std::uint64_t reach = 1;
  for (int i = 0; i < f.degree(); ++i) {
    reach *= F.q();
    if (reach > (1ULL << 20)) fail(Errc::TooLarge, "exhaustive factorization needs q^deg <= 2^20");
  }
  std::vector<Factor> out;
  Poly rest = f;
  for (int d = 1; rest.degree() >= 2 * d; ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= F.q();
    for (std::uint64_t idx = 0; idx < count && rest.degree() >= 2 * d; ++idx) {
      std::vector<Elem> c(d + 1);
      std::uint64_t x = idx;
      for (int i = 0; i < d; ++i) {
        c[i] = x % F.q();
        x /= F.q();
      }
      c[d] = 1;
      const Poly g(F, c);
      unsigned e = 0;
      while (true) {
        auto [quo, rem] = divmod(rest, g);
        if (!rem.is_zero()) break;
        rest = std::move(quo);
        ++e;
      }
      if (e) out.push_back({g, e});
    }
  }
  // no factor of degree <= deg/2 remains
  if (rest.degree() >= 1) out.push_back({rest, 1});
  return out;
}

/// Pr[c_A = f] for A uniform in GL(n,q), n = deg f:
/// prod_i q^{d_i e_i (e_i - 1)} / |GL(e_i, q^{d_i})|.
inline Rational p_gl(const Poly& f) {
  if (f.is_zero() || !f.is_monic() || f.coeff(0) == 0) fail(Errc::BadParams, "p_gl needs monic f with f(0) != 0");
  const std::uint64_t q = f.field().q();
  Rational r = 1;
  for (const auto& [g, e] : factor_exhaustive(f)) {
    const std::uint64_t d = static_cast<std::uint64_t>(g.degree());
    BigInt Q = detail::big_pow(q, d);
    if (Q > BigInt(~std::uint64_t{0})) fail(Errc::TooLarge, "extension too large");
    const std::uint64_t qd = Q.convert_to<std::uint64_t>();
    r *= Rational(detail::big_pow(q, d * e * (e - 1)), gl_order(qd, e));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Character sums

/// sum_x psi(lambda x^2), psi the canonical additive character.
inline std::complex<double> gauss_sum(const Field& F, Elem lambda) {
  if (lambda == 0 || !F.contains(lambda)) fail(Errc::BadParams, "gauss_sum needs a nonzero field element");
  std::complex<double> s = 0;
  for (Elem x = 0; x < F.q(); ++x) s += F.character(lambda, F.mul(x, x));
  return s;
}

/// sum_{x,y} psi(2 lambda x y).
inline std::complex<double> xy_sum(const Field& F, Elem lambda) {
  if (lambda == 0 || !F.contains(lambda)) fail(Errc::BadParams, "xy_sum needs a nonzero field element");
  const Elem two_lambda = F.add(lambda, lambda);
  std::complex<double> s = 0;
  for (Elem x = 0; x < F.q(); ++x)
    for (Elem y = 0; y < F.q(); ++y) s += F.character(two_lambda, F.mul(x, y));
  return s;
}

// ---------------------------------------------------------------------------
// Brute-force census

using Signature = std::vector<std::pair<Elem, unsigned>>;

/// Joint counts of (eigenvalue profile, Tr(A^2)) over all of M(n,q).
struct CensusReport {
  std::uint64_t n = 0, q = 0;
  std::map<std::pair<Signature, Elem>, std::uint64_t> counts;

  BigInt total() const {
    BigInt t = 0;
    for (const auto& [k, c] : counts) t += c;
    return t;
  }

  template <class Pred>
  std::uint64_t count_if(Pred pred) const {
    std::uint64_t t = 0;
    for (const auto& [k, c] : counts)
      if (pred(k.first, k.second)) t += c;
    return t;
  }

  std::map<Signature, std::uint64_t> profile_marginal() const {
    std::map<Signature, std::uint64_t> out;
    for (const auto& [k, c] : counts) out[k.first] += c;
    return out;
  }

  std::map<Elem, std::uint64_t> trace_marginal() const {
    std::map<Elem, std::uint64_t> out;
    for (const auto& [k, c] : counts) out[k.second] += c;
    return out;
  }

  Rational fraction(std::uint64_t count) const { return Rational(BigInt(count), detail::big_pow(q, n * n)); }
};

inline bool is_unique_simple(const Signature& s) { return s.size() == 1 && s[0].second == 1; }
inline bool is_unique_simple_nonzero(const Signature& s) { return is_unique_simple(s) && s[0].first != 0; }

namespace detail {

inline void census_range(const Field& F, std::size_t n, std::uint64_t begin, std::uint64_t end, CensusReport& out) {
  const std::uint64_t q = F.q();
  Matrix A(F, n, n);
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    std::uint64_t x = idx;
    for (std::size_t i = 0; i < A.entries().size(); ++i) {
      A.data()[i] = x % q;
      x /= q;
    }
    Signature sig;
    for (const auto& r : eigen_profile(A).pairs) sig.emplace_back(r.value, r.multiplicity);
    ++out.counts[{std::move(sig), trace_of_square(A)}];
  }
}

}  // namespace detail

/// Enumerates all q^{n^2} matrices (at most 2^24), split over `jobs` threads.
inline CensusReport brute_force_census(std::uint64_t n, const Field& F, unsigned jobs = 1) {
  const std::uint64_t q = F.q();
  std::uint64_t total = 1;
  for (std::uint64_t i = 0; i < n * n; ++i) {
    total *= q;
    if (total > (1ULL << 24)) fail(Errc::TooLarge, "census needs q^(n^2) <= 2^24");
  }
  CensusReport rep;
  rep.n = n;
  rep.q = q;
  if (n == 0) {
    rep.counts[{{}, 0}] = 1;
    return rep;
  }
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::min<std::uint64_t>(total, 64))));
  std::vector<CensusReport> parts(jobs);
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < jobs; ++j)
    pool.emplace_back([&, j] { detail::census_range(F, n, total * j / jobs, total * (j + 1) / jobs, parts[j]); });
  for (auto& t : pool) t.join();
  for (const auto& p : parts)
    for (const auto& [k, c] : p.counts) rep.counts[k] += c;
  return rep;
}

inline CensusReport brute_force_census(std::uint64_t n, std::uint64_t q, unsigned jobs = 1) {
  return brute_force_census(n, Field::of_order(q), jobs);
}

/// Census quantities; beta and v are relative to |GL(n,q)|.
inline Rational alpha_census(const CensusReport& c) {
  return c.fraction(c.count_if([](const Signature& s, Elem) { return is_unique_simple(s); }));
}
inline Rational alpha_star_census(const CensusReport& c) {
  return c.fraction(c.count_if([](const Signature& s, Elem) { return is_unique_simple_nonzero(s); }));
}
inline Rational sigma_census(const CensusReport& c) {
  return c.fraction(c.count_if([](const Signature&, Elem t) { return t == 0; }));
}
inline Rational delta_census(const CensusReport& c) {
  return c.fraction(c.count_if([](const Signature& s, Elem t) { return t == 0 && is_unique_simple(s); }));
}
inline Rational gamma_census(const CensusReport& c) {
  const auto self_dual = c.count_if([](const Signature&, Elem t) { return t == 0; });
  const auto both = c.count_if([](const Signature& s, Elem t) { return t == 0 && is_unique_simple(s); });
  return Rational(BigInt(both), BigInt(self_dual));
}
inline Rational v_census(const CensusReport& c) {
  return Rational(BigInt(c.count_if([](const Signature& s, Elem) { return s.empty(); })), gl_order(c.q, c.n));
}
inline Rational beta_census(const CensusReport& c, Elem k) {
  return Rational(BigInt(c.count_if([k](const Signature& s, Elem t) { return s.empty() && t == k; })),
                  gl_order(c.q, c.n));
}

/// delta(n,q) = c_n(q) / (q-1) * sum_{lambda in F_q} beta(n-1, q, -lambda^2),
/// from a census at size n - 1. Counting the decompositions V_lambda + V_0
/// requires Tr(A_0^2) = -lambda^2 for each lambda, so the sum runs over
/// lambda rather than over all trace values k.
inline Rational delta_from_beta(const CensusReport& lower, const Field& F) {
  if (lower.q != F.q()) fail(Errc::FieldMismatch, "census over a different field");
  Rational s = 0;
  for (Elem lambda = 0; lambda < F.q(); ++lambda) s += beta_census(lower, F.neg(F.mul(lambda, lambda)));
  return c_n(F.q(), lower.n + 1) / Rational(BigInt(F.q() - 1)) * s;
}

/// The same prefactor with the sum over all k; equals c_n v(n-1) / (q-1).
inline Rational delta_sum_over_k(const CensusReport& lower) {
  Rational s = 0;
  for (Elem k = 0; k < lower.q; ++k) s += beta_census(lower, k);
  return c_n(lower.q, lower.n + 1) / Rational(BigInt(lower.q - 1)) * s;
}

/// Number of N x N matrices over F_q of rank N - c:
/// prod_{i<r} (q^N - q^i)^2 / (q^r - q^i), r = N - c.
inline BigInt corank_count(std::uint64_t N, std::uint64_t q, std::uint64_t c) {
  detail::check_q(q);
  if (c > N) fail(Errc::BadParams, "corank exceeds size");
  const std::uint64_t r = N - c;
  Rational x = 1;
  const BigInt qN = detail::big_pow(q, N), qr = detail::big_pow(q, r);
  for (std::uint64_t i = 0; i < r; ++i) {
    const BigInt qi = detail::big_pow(q, i);
    x *= Rational((qN - qi) * (qN - qi), qr - qi);
  }
  if (denominator(x) != 1) fail(Errc::NonIntegralCount, "corank count is not an integer");
  return numerator(x);
}

inline Rational corank_probability(std::uint64_t N, std::uint64_t q, std::uint64_t c) {
  return Rational(corank_count(N, q, c), detail::big_pow(q, N * N));
}

// ---------------------------------------------------------------------------
// Monte Carlo

enum class Stat { HullDim1, UniqueSimple, UniqueSimpleNonzero, SelfDual, GammaConditional, FullAlgebraPair, Corank };

constexpr std::string_view stat_name(Stat s) noexcept {
  switch (s) {
    case Stat::HullDim1: return "hull_dim1";
    case Stat::UniqueSimple: return "unique_simple";
    case Stat::UniqueSimpleNonzero: return "unique_simple_nonzero";
    case Stat::SelfDual: return "selfdual";
    case Stat::GammaConditional: return "gamma_conditional";
    case Stat::FullAlgebraPair: return "full_algebra_pair";
    case Stat::Corank: return "corank_c";
  }
  return "?";
}

inline Stat parse_stat(std::string_view s) {
  for (Stat x : {Stat::HullDim1, Stat::UniqueSimple, Stat::UniqueSimpleNonzero, Stat::SelfDual, Stat::GammaConditional,
                 Stat::FullAlgebraPair, Stat::Corank})
    if (stat_name(x) == s) return x;
  fail(Errc::Format, "unknown statistic '" + std::string(s) + "'");
}

struct McResult {
  double estimate;
  double std_error;
  std::uint64_t trials;
  std::uint64_t seed;
  std::uint64_t hits;
};

namespace detail {

inline bool unique_simple(const Matrix& A) {
  const auto p = eigen_profile(A);
  return p.pairs.size() == 1 && p.pairs[0].multiplicity == 1;
}

inline bool mc_trial(Stat stat, const Field& F, std::size_t n, unsigned c, Rng& rng) {
  switch (stat) {
    case Stat::HullDim1: {
      const auto code = code_from_slices(sample_tensor3(F, n, n, n, rng), Direction::Horizontal);
      return hull(code.code).dim() == 1;
    }
    case Stat::UniqueSimple: return unique_simple(random_matrix(F, n, n, rng));
    case Stat::UniqueSimpleNonzero: {
      const auto p = eigen_profile(random_matrix(F, n, n, rng));
      return p.pairs.size() == 1 && p.pairs[0].multiplicity == 1 && p.pairs[0].value != 0;
    }
    case Stat::SelfDual: return trace_of_square(random_matrix(F, n, n, rng)) == 0;
    case Stat::GammaConditional:
      // uniform on {Tr(A^2) = 0} by rejection
      while (true) {
        Matrix A = random_matrix(F, n, n, rng);
        if (trace_of_square(A) == 0) return unique_simple(A);
      }
    case Stat::FullAlgebraPair:
      return generates_full_algebra(random_matrix(F, n, n, rng), random_matrix(F, n, n, rng));
    case Stat::Corank: return rank(random_matrix(F, n, n, rng)) + c == n;
  }
  return false;
}

}  // namespace detail

/// Frequency of `stat` over `trials` independent samples; trial i draws from
/// its own stream derived from (seed, i), so results do not depend on `jobs`.
inline McResult monte_carlo(Stat stat, std::size_t n, const Field& F, std::uint64_t trials, std::uint64_t seed,
                            unsigned c = 0, unsigned jobs = 1) {
  if (trials < 100) fail(Errc::BadParams, "monte_carlo needs at least 100 trials");
  if (n < 1) fail(Errc::BadParams, "n must be positive");
  if (stat == Stat::Corank && c > n) fail(Errc::BadParams, "corank exceeds n");
  jobs = std::max(1u, std::min<unsigned>(jobs, 256));
  std::vector<std::uint64_t> hits(jobs, 0);
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < jobs; ++j)
    pool.emplace_back([&, j] {
      for (std::uint64_t i = j; i < trials; i += jobs) {
        Rng rng(Seed128::derive(seed, i));
        if (detail::mc_trial(stat, F, n, c, rng)) ++hits[j];
      }
    });
  for (auto& t : pool) t.join();
  std::uint64_t h = 0;
  for (auto x : hits) h += x;
  const double p = double(h) / double(trials);
  return {p, std::sqrt(p * (1 - p) / double(trials)), trials, seed, h};
}

}  // namespace tiso::rmt
