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

#include <algorithm>
#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

#include "tiso/error.hpp"
#include "tiso/gf.hpp"
#include "tiso/rng.hpp"

namespace tiso {

/// Univariate polynomial over F_q, coefficients low to high, no trailing zeros.
class Poly {
 public:
  explicit Poly(Field f) : f_(std::move(f)) {}
  Poly(Field f, std::vector<Elem> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) {
    for (Elem e : c_) require(f_.contains(e), Errc::FieldMismatch, "coefficient outside field");
    trim();
  }

  static Poly constant(const Field& f, Elem c) { return Poly(f, {c}); }
  static Poly x(const Field& f) { return Poly(f, {0, 1}); }
  /// t - a
  static Poly linear(const Field& f, Elem a) { return Poly(f, {f.neg(a), 1}); }

  const Field& field() const noexcept { return f_; }
  const std::vector<Elem>& coeffs() const noexcept { return c_; }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  Elem coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
  Elem lead() const noexcept { return c_.empty() ? 0 : c_.back(); }
  bool is_monic() const noexcept { return !c_.empty() && c_.back() == 1; }

  Elem eval(Elem a) const noexcept {
    Elem r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = f_.fma(r, a, *it);
    return r;
  }

  Poly monic() const {
    if (c_.empty() || c_.back() == 1) return *this;
    const Elem il = f_.inv(c_.back());
    Poly r(f_);
    r.c_.reserve(c_.size());
    for (Elem e : c_) r.c_.push_back(f_.mul(e, il));
    return r;
  }

  Poly scaled(Elem s) const {
    Poly r(f_);
    if (s == 0) return r;
    for (Elem e : c_) r.c_.push_back(f_.mul(e, s));
    return r;
  }

  friend bool operator==(const Poly& a, const Poly& b) noexcept { return a.f_ == b.f_ && a.c_ == b.c_; }

  friend Poly operator+(const Poly& a, const Poly& b) {
    check_same(a, b);
    Poly r(a.f_);
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.f_.add(a.coeff(i), b.coeff(i));
    r.trim();
    return r;
  }

  friend Poly operator-(const Poly& a, const Poly& b) {
    check_same(a, b);
    Poly r(a.f_);
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.f_.sub(a.coeff(i), b.coeff(i));
    r.trim();
    return r;
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    check_same(a, b);
    Poly r(a.f_);
    if (a.is_zero() || b.is_zero()) return r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
    const Field& F = a.f_;
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] = F.fma(a.c_[i], b.c_[j], r.c_[i + j]);
    }
    r.trim();
    return r;
  }

  static void check_same(const Poly& a, const Poly& b) {
    if (!(a.f_ == b.f_)) fail(Errc::FieldMismatch, "polynomials over different fields");
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  Field f_;
  std::vector<Elem> c_;
};

/// (quotient, remainder) with deg(remainder) < deg(g).
inline std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g) {
  Poly::check_same(f, g);
  if (g.is_zero()) fail(Errc::DivideByZero, "polynomial division by zero");
  const Field& F = f.field();
  std::vector<Elem> r = f.coeffs();
  const std::size_t dg = static_cast<std::size_t>(g.degree());
  if (r.size() <= dg) return {Poly(F), f};
  std::vector<Elem> quo(r.size() - dg, 0);
  const Elem il = F.inv(g.lead());
  const auto& gc = g.coeffs();
  for (std::size_t k = r.size(); k-- > dg;) {
    const Elem c = F.mul(r[k], il);
    quo[k - dg] = c;
    if (c == 0) continue;
    const Elem nc = F.neg(c);
    for (std::size_t i = 0; i <= dg; ++i) r[k - dg + i] = F.fma(nc, gc[i], r[k - dg + i]);
  }
  r.resize(dg);
  return {Poly(F, std::move(quo)), Poly(F, std::move(r))};
}

inline Poly operator%(const Poly& f, const Poly& g) { return divmod(f, g).second; }

/// Monic gcd; gcd(0, 0) = 0.
inline Poly gcd(Poly a, Poly b) {
  Poly::check_same(a, b);
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.monic();
}

/// base^e mod modulus by square-and-multiply.
inline Poly powmod(const Poly& base, std::uint64_t e, const Poly& modulus) {
  Poly::check_same(base, modulus);
  if (modulus.degree() < 1) fail(Errc::DivideByZero, "powmod needs a nonconstant modulus");
  const Field& F = base.field();
  Poly result = Poly::constant(F, 1) % modulus;
  Poly b = base % modulus;
  while (e) {
    if (e & 1) result = (result * b) % modulus;
    e >>= 1;
    if (e) b = (b * b) % modulus;
  }
  return result;
}

struct Root {
  Elem value;
  unsigned multiplicity;
  friend bool operator==(const Root&, const Root&) = default;
};

namespace detail {

inline constexpr std::uint64_t kExhaustiveRootLimit = 1ULL << 12;

// g is monic, squarefree, and a product of distinct linear factors.
inline void split_linear(const Poly& g, Rng& rng, std::vector<Elem>& out) {
  const Field& F = g.field();
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    out.push_back(F.neg(g.coeff(0)));
    return;
  }
  const std::uint64_t q = F.q();
  const unsigned attempts = 4 * static_cast<unsigned>(std::bit_width(q));
  for (unsigned attempt = 0; attempt < attempts; ++attempt) {
    Poly h(F);
    if (F.p() == 2) {
      // Tr(a t) = sum_{i<m} (a t)^(2^i) takes values in F_2 on the roots.
      const Elem a = 1 + rng.below(q - 1);
      Poly term = Poly(F, {0, a}) % g;
      h = term;
      for (unsigned i = 1; i < F.m(); ++i) {
        term = (term * term) % g;
        h = h + term;
      }
    } else {
      const Elem a = rng.below(q);
      h = powmod(Poly(F, {a, 1}), (q - 1) / 2, g) - Poly::constant(F, 1);
    }
    Poly d = gcd(g, h);
    if (d.degree() > 0 && d.degree() < g.degree()) {
      split_linear(d, rng, out);
      split_linear(divmod(g, d).first.monic(), rng, out);
      return;
    }
  }
  fail(Errc::RetryExhausted, "equal-degree splitting did not separate roots");
}

inline std::uint64_t poly_hash(const Poly& f) {
  std::uint64_t h = 0x243f6a8885a308d3ULL ^ f.field().q();
  for (Elem c : f.coeffs()) h = splitmix64(h ^ c);
  return h;
}

}  // namespace detail

/// Distinct F_q-roots of f with exact multiplicities, ascending by representative.
/// The cofactor f / prod (t - r)^mult has no root in F_q. Fields with
/// q <= exhaustive_limit are scanned; larger ones use randomized splitting.
inline std::vector<Root> roots_in_field(const Poly& f, Rng& rng,
                                        std::uint64_t exhaustive_limit = detail::kExhaustiveRootLimit) {
  if (f.is_zero()) fail(Errc::ZeroPolynomial, "roots of the zero polynomial");
  const Field& F = f.field();
  std::vector<Root> out;
  if (f.degree() <= 0) return out;

  const Poly fm = f.monic();
  const Poly t = Poly::x(F);
  const Poly g = gcd(fm, powmod(t, F.q(), fm) - t);
  if (g.degree() <= 0) return out;

  std::vector<Elem> values;
  if (F.q() <= exhaustive_limit) {
    for (Elem a = 0; a < F.q(); ++a)
      if (g.eval(a) == 0) values.push_back(a);
  } else {
    detail::split_linear(g, rng, values);
  }
  std::sort(values.begin(), values.end());

  for (Elem v : values) {
    unsigned mult = 0;
    Poly rest = fm;
    const Poly lin = Poly::linear(F, v);
    while (true) {
      auto [quo, rem] = divmod(rest, lin);
      if (!rem.is_zero()) break;
      rest = std::move(quo);
      ++mult;
    }
    out.push_back({v, mult});
  }
  return out;
}

/// Deterministic overload: the splitting stream is seeded from f itself.
inline std::vector<Root> roots_in_field(const Poly& f) {
  if (f.is_zero()) fail(Errc::ZeroPolynomial, "roots of the zero polynomial");
  Rng rng(detail::poly_hash(f));
  return roots_in_field(f, rng);
}

}  // namespace tiso
