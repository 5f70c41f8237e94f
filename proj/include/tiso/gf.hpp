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
 * @file gf.hpp
 * @brief Runtime finite fields F_q, q = p^m, with p < 2^31, m <= 8, q < 2^62.
 *
 * An element is its canonical integer representative in [0, q): the base-p
 * digits are the coefficients (low to high) of the residue polynomial modulo
 * the defining modulus. For m = 1 this is just the residue mod p.
 *
 * @code{.cpp}
 * auto F4 = tiso::Field::create(2, 2, std::vector<std::uint64_t>{1, 1, 1});  // t^2 + t + 1
 * auto t = F4.generator_t();
 * assert(F4.mul(t, t) == F4.add(t, F4.one()));
 * @endcode
 */

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "tiso/error.hpp"

namespace tiso {

/// Canonical field element representative; meaningful only next to its Field.
using Elem = std::uint64_t;

namespace detail {

inline std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, a, m);
    a = mulmod64(a, a, m);
    e >>= 1;
  }
  return r;
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t sp : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % sp == 0) return n == sp;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Small dense polynomials over F_p (coefficients low to high), used only to
// validate and search for field moduli before any Field exists.
using PolyP = std::vector<std::uint64_t>;

inline void trim(PolyP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline PolyP mod_p(PolyP a, const PolyP& f, std::uint64_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  const std::uint64_t inv_lead = powmod64(f.back(), p - 2, p);
  while (a.size() > df) {
    const std::uint64_t c = mulmod64(a.back(), inv_lead, p);
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i) {
      a[shift + i] = (a[shift + i] + p - mulmod64(c, f[i], p)) % p;
    }
    trim(a);
  }
  return a;
}

inline PolyP mulmod_p(const PolyP& a, const PolyP& b, const PolyP& f, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  PolyP r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod64(a[i], b[j], p)) % p;
  return mod_p(std::move(r), f, p);
}

inline PolyP powmod_p(PolyP base, std::uint64_t e, const PolyP& f, std::uint64_t p) {
  PolyP r{1};
  base = mod_p(std::move(base), f, p);
  while (e) {
    if (e & 1) r = mulmod_p(r, base, f, p);
    base = mulmod_p(base, base, f, p);
    e >>= 1;
  }
  return r;
}

inline PolyP gcd_p(PolyP a, PolyP b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    PolyP r = mod_p(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// x^(p^k) mod f.
inline PolyP frobenius_power(const PolyP& f, std::uint64_t p, unsigned k) {
  PolyP x = mod_p(PolyP{0, 1}, f, p);
  for (unsigned i = 0; i < k; ++i) x = powmod_p(x, p, f, p);
  return x;
}

/// Rabin's irreducibility test for a monic f of degree m over F_p.
inline bool is_irreducible_p(const PolyP& f, std::uint64_t p) {
  const unsigned m = static_cast<unsigned>(f.size() - 1);
  if (m == 0) return false;
  if (m == 1) return true;
  auto sub_x = [p](PolyP a) {
    if (a.size() < 2) a.resize(2, 0);
    a[1] = (a[1] + p - 1) % p;
    trim(a);
    return a;
  };
  if (!sub_x(frobenius_power(f, p, m)).empty()) return false;
  for (std::uint64_t r : prime_factors(m)) {
    PolyP g = gcd_p(f, sub_x(frobenius_power(f, p, m / static_cast<unsigned>(r))), p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace detail

/// Immutable description of F_q. Copies share one table set; safe to use
/// concurrently from any number of threads.
class Field {
 public:
  static constexpr unsigned kMaxDegree = 8;
  static constexpr std::uint64_t kTableLimit = 1ULL << 16;

  /// Validated field. An empty modulus with m > 1 selects the smallest
  /// irreducible monic polynomial in base-p lexicographic order of its
  /// coefficients (low to high).
  static Field create(std::uint64_t p, unsigned m = 1, std::vector<std::uint64_t> modulus = {}) {
    if (!detail::is_prime(p)) fail(Errc::NotPrime, std::to_string(p) + " is not prime");
    if (p >= (1ULL << 31)) fail(Errc::BadParams, "characteristic must be below 2^31");
    if (m < 1 || m > kMaxDegree) fail(Errc::BadParams, "extension degree must be in [1, 8]");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < m; ++i) {
      if (q > (1ULL << 62) / p) fail(Errc::BadParams, "field order must be below 2^62");
      q *= p;
    }
    if (m == 1) {
      if (!modulus.empty() && !(modulus.size() == 2 && modulus[1] == 1))
        fail(Errc::DegreeMismatch, "prime field takes no modulus");
      modulus.clear();
    } else if (modulus.empty()) {
      modulus = default_modulus(p, m);
    } else {
      if (modulus.size() != m + 1) fail(Errc::DegreeMismatch, "modulus must have m+1 coefficients");
      for (auto c : modulus)
        if (c >= p) fail(Errc::BadParams, "modulus coefficient out of range");
      if (modulus.back() != 1) fail(Errc::DegreeMismatch, "modulus must be monic of degree m");
      if (!detail::is_irreducible_p(modulus, p)) fail(Errc::ReducibleModulus, "modulus is reducible over F_p");
    }
    return Field(std::make_shared<Impl>(p, m, q, std::move(modulus)));
  }

  /// F_q for a prime power q, default modulus.
  static Field of_order(std::uint64_t q) {
    if (q < 2) fail(Errc::BadParams, "field order must be >= 2");
    auto pf = detail::prime_factors(q);
    if (pf.size() != 1) fail(Errc::BadParams, std::to_string(q) + " is not a prime power");
    unsigned m = 0;
    for (std::uint64_t x = q; x > 1; x /= pf[0]) ++m;
    return create(pf[0], m);
  }

  std::uint64_t p() const noexcept { return d_->p; }
  unsigned m() const noexcept { return d_->m; }
  std::uint64_t q() const noexcept { return d_->q; }
  const std::vector<std::uint64_t>& modulus() const noexcept { return d_->modulus; }
  bool is_prime_field() const noexcept { return d_->m == 1; }

  bool operator==(const Field& o) const noexcept {
    return d_ == o.d_ || (d_->p == o.d_->p && d_->m == o.d_->m && d_->modulus == o.d_->modulus);
  }

  Elem zero() const noexcept { return 0; }
  Elem one() const noexcept { return 1; }
  /// The residue class of t (the adjoined root); equals the integer p when m > 1.
  Elem generator_t() const noexcept { return d_->m == 1 ? 0 : d_->p; }
  bool contains(Elem a) const noexcept { return a < d_->q; }

  /// Image of an integer in the prime subfield.
  Elem from_int(std::int64_t x) const noexcept {
    const auto p = static_cast<std::int64_t>(d_->p);
    std::int64_t r = x % p;
    return static_cast<Elem>(r < 0 ? r + p : r);
  }

  Elem add(Elem a, Elem b) const noexcept {
    if (d_->m == 1) {
      Elem s = a + b;
      return s >= d_->p ? s - d_->p : s;
    }
    if (d_->p == 2) return a ^ b;
    return digitwise(a, b, [p = d_->p](std::uint64_t x, std::uint64_t y) { return x + y >= p ? x + y - p : x + y; });
  }

  Elem neg(Elem a) const noexcept {
    if (d_->m == 1) return a == 0 ? 0 : d_->p - a;
    if (d_->p == 2) return a;
    return digitwise(0, a, [p = d_->p](std::uint64_t, std::uint64_t y) { return y == 0 ? 0 : p - y; });
  }

  Elem sub(Elem a, Elem b) const noexcept {
    if (d_->m == 1) return a >= b ? a - b : a + d_->p - b;
    if (d_->p == 2) return a ^ b;
    return digitwise(a, b, [p = d_->p](std::uint64_t x, std::uint64_t y) { return x >= y ? x - y : x + p - y; });
  }

  Elem mul(Elem a, Elem b) const noexcept {
    if (d_->m == 1) return (a * b) % d_->p;
    if (a == 0 || b == 0) return 0;
    if (!d_->exp.empty()) return d_->exp[d_->log[a] + d_->log[b]];
    return d_->poly_mul(a, b);
  }

  /// a*b + c, the inner-loop primitive of elimination.
  Elem fma(Elem a, Elem b, Elem c) const noexcept { return add(mul(a, b), c); }

  Elem inv(Elem a) const {
    if (a == 0) fail(Errc::DivideByZero, "inverse of zero");
    if (d_->m == 1) {
      // extended Euclid on (a, p)
      std::int64_t t = 0, nt = 1;
      std::int64_t r = static_cast<std::int64_t>(d_->p), nr = static_cast<std::int64_t>(a);
      while (nr != 0) {
        const std::int64_t qt = r / nr;
        t = t - qt * nt;
        std::swap(t, nt);
        r = r - qt * nr;
        std::swap(r, nr);
      }
      return static_cast<Elem>(t < 0 ? t + static_cast<std::int64_t>(d_->p) : t);
    }
    if (!d_->exp.empty()) return d_->exp[(d_->q - 1) - d_->log[a]];
    return pow(a, d_->q - 2);
  }

  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  Elem pow(Elem a, std::uint64_t e) const noexcept {
    Elem r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  /// Tr_{F_q/F_p}(a) = a + a^p + ... + a^(p^(m-1)), returned as a prime-subfield element.
  Elem absolute_trace(Elem a) const noexcept {
    Elem acc = 0;
    Elem x = a;
    for (unsigned i = 0; i < d_->m; ++i) {
      acc = add(acc, x);
      x = pow(x, d_->p);
    }
    return acc;
  }

  /// psi_b(a) = exp(2 pi i Tr(b a) / p).
  std::complex<double> character(Elem b, Elem a) const noexcept {
    const double t = static_cast<double>(absolute_trace(mul(b, a)));
    return std::polar(1.0, 2.0 * std::numbers::pi * t / static_cast<double>(d_->p));
  }

  bool is_square(Elem a) const noexcept {
    if (a == 0 || d_->p == 2) return true;
    return pow(a, (d_->q - 1) / 2) == 1;
  }

  std::array<std::uint64_t, kMaxDegree> digits(Elem a) const noexcept {
    std::array<std::uint64_t, kMaxDegree> out{};
    for (unsigned i = 0; i < d_->m; ++i) {
      out[i] = a % d_->p;
      a /= d_->p;
    }
    return out;
  }

 private:
  struct Impl {
    std::uint64_t p;
    unsigned m;
    std::uint64_t q;
    std::vector<std::uint64_t> modulus;
    std::vector<std::uint32_t> exp;  // doubled: exp[i] for i in [0, 2(q-1))
    std::vector<std::uint32_t> log;

    Impl(std::uint64_t p_, unsigned m_, std::uint64_t q_, std::vector<std::uint64_t> mod)
        : p(p_), m(m_), q(q_), modulus(std::move(mod)) {
      if (m > 1 && q <= kTableLimit) build_tables();
    }

    Elem poly_mul(Elem a, Elem b) const noexcept {
      std::array<std::uint64_t, 2 * kMaxDegree> prod{};
      std::array<std::uint64_t, kMaxDegree> da{}, db{};
      for (unsigned i = 0; i < m; ++i) {
        da[i] = a % p;
        a /= p;
        db[i] = b % p;
        b /= p;
      }
      for (unsigned i = 0; i < m; ++i) {
        if (!da[i]) continue;
        for (unsigned j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j] % p) % p;
      }
      for (unsigned k = 2 * m - 2; k >= m; --k) {
        const std::uint64_t c = prod[k];
        if (!c) continue;
        prod[k] = 0;
        for (unsigned i = 0; i < m; ++i) {
          prod[k - m + i] = (prod[k - m + i] + (p - modulus[i]) % p * c % p) % p;
        }
      }
      Elem r = 0;
      for (unsigned i = m; i-- > 0;) r = r * p + prod[i];
      return r;
    }

    void build_tables() {
      const auto factors = detail::prime_factors(q - 1);
      Elem g = 0;
      for (Elem cand = 2; cand < q; ++cand) {
        bool primitive = true;
        for (auto r : factors) {
          if (slow_pow(cand, (q - 1) / r) == 1) {
            primitive = false;
            break;
          }
        }
        if (primitive) {
          g = cand;
          break;
        }
      }
      exp.assign(2 * (q - 1), 0);
      log.assign(q, 0);
      Elem x = 1;
      for (std::uint64_t i = 0; i < q - 1; ++i) {
        exp[i] = static_cast<std::uint32_t>(x);
        exp[i + q - 1] = static_cast<std::uint32_t>(x);
        log[x] = static_cast<std::uint32_t>(i);
        x = poly_mul(x, g);
      }
    }

    Elem slow_pow(Elem a, std::uint64_t e) const noexcept {
      Elem r = 1;
      while (e) {
        if (e & 1) r = poly_mul(r, a);
        a = poly_mul(a, a);
        e >>= 1;
      }
      return r;
    }
  };

  explicit Field(std::shared_ptr<const Impl> d) : d_(std::move(d)) {}

  template <class Op>
  Elem digitwise(Elem a, Elem b, Op op) const noexcept {
    Elem r = 0, scale = 1;
    for (unsigned i = 0; i < d_->m; ++i) {
      r += op(a % d_->p, b % d_->p) * scale;
      a /= d_->p;
      b /= d_->p;
      scale *= d_->p;
    }
    return r;
  }

  static std::vector<std::uint64_t> default_modulus(std::uint64_t p, unsigned m) {
    detail::PolyP f(m + 1, 0);
    f[m] = 1;
    // odometer over (c_0, ..., c_{m-1}) with c_0 varying fastest
    while (true) {
      if (f[0] != 0 && detail::is_irreducible_p(f, p)) return f;
      unsigned i = 0;
      while (i < m && ++f[i] == p) f[i++] = 0;
      if (i == m) break;
    }
    fail(Errc::ReducibleModulus, "no irreducible polynomial found");
  }

  std::shared_ptr<const Impl> d_;
};

}  // namespace tiso
