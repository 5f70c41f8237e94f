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
 * @file solvers.hpp
 * @brief Average-case solvers for algebra isomorphism (algiso), matrix code
 * conjugacy (mcc) and 4-tensor isomorphism (t4).
 *
 * Breakdowns on the A side are reported as Failure (the input fell outside
 * the class the method handles); breakdowns on the B side, or on comparing
 * the two, are NotIsomorphic (an isomorphism invariant differs). An
 * Isomorphic verdict always carries a witness that has been re-verified.
 */

#include <cstdint>
#include <cstdio>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tiso/codes.hpp"
#include "tiso/conj.hpp"
#include "tiso/error.hpp"
#include "tiso/instance.hpp"
#include "tiso/matrix.hpp"
#include "tiso/tensor.hpp"

namespace tiso {

enum class StageOutcome { Pass, Failure, NotIsomorphic, Isomorphic };

constexpr std::string_view outcome_name(StageOutcome o) noexcept {
  switch (o) {
    case StageOutcome::Pass: return "pass";
    case StageOutcome::Failure: return "failure";
    case StageOutcome::NotIsomorphic: return "not_isomorphic";
    case StageOutcome::Isomorphic: return "isomorphic";
  }
  return "?";
}

struct StageEntry {
  std::string stage;  // "step1" .. "step6"
  StageOutcome outcome = StageOutcome::Pass;
  std::string digest;  // FNV-1a of the stage's payload, 16 hex digits

  friend bool operator==(const StageEntry&, const StageEntry&) = default;
};

using StageTrace = std::vector<StageEntry>;

struct SolveResult {
  Verdict verdict;
  StageTrace trace;
};

namespace detail {

class Digest {
 public:
  Digest& add(std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h_ ^= (x >> (8 * i)) & 0xff;
      h_ *= 0x100000001b3ULL;
    }
    return *this;
  }
  Digest& add(const std::vector<Elem>& v) {
    add(v.size());
    for (Elem e : v) add(e);
    return *this;
  }
  Digest& add(const Matrix& m) { return add(m.entries()); }

  std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h_));
    return buf;
  }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

class Recorder {
 public:
  void pass(const char* stage, const Digest& d) { trace_.push_back({stage, StageOutcome::Pass, d.hex()}); }

  SolveResult failure(const char* stage, const Digest& d) { return end(stage, StageOutcome::Failure, d, VerdictKind::Failure); }
  SolveResult not_isomorphic(const char* stage, const Digest& d) {
    return end(stage, StageOutcome::NotIsomorphic, d, VerdictKind::NotIsomorphic);
  }
  SolveResult isomorphic(const char* stage, const Digest& d, Witness w, std::optional<Elem> scalar) {
    SolveResult r = end(stage, StageOutcome::Isomorphic, d, VerdictKind::Isomorphic);
    r.verdict.stage.reset();
    r.verdict.witness = std::move(w);
    r.verdict.scalar = scalar;
    return r;
  }

 private:
  SolveResult end(const char* stage, StageOutcome o, const Digest& d, VerdictKind k) {
    trace_.push_back({stage, o, d.hex()});
    SolveResult r;
    r.verdict.kind = k;
    r.verdict.stage = stage;
    r.trace = std::move(trace_);
    return r;
  }

  StageTrace trace_;
};

inline Matrix combine(const std::vector<Matrix>& ms, const Vec& coeffs) {
  const Field& F = ms.at(0).field();
  Matrix out(F, ms[0].rows(), ms[0].cols());
  for (std::size_t i = 0; i < ms.size(); ++i) axpy(F, out.data(), coeffs[i], ms[i].data(), out.entries().size());
  return out;
}

inline void check_pair3(const Tensor3& A, const Tensor3& B) {
  require(A.is_cubic() && A.dims() == B.dims(), Errc::ShapeMismatch, "inputs must be cubic tensors of equal size");
  if (!(A.field() == B.field())) fail(Errc::FieldMismatch, "inputs over different fields");
}

}  // namespace detail

/// Algebra isomorphism: find T with sum_i' t_ii' T A_i' T^{-1} = B_i on
/// horizontal slices, via hulls and two rounds of eigenvector contraction.
inline SolveResult solve_algiso(const Tensor3& A, const Tensor3& B, Rng& rng) {
  detail::check_pair3(A, B);
  const Field& F = A.field();
  const std::size_t n = A.dims()[0];
  require(n >= 3, Errc::ShapeMismatch, "algiso needs n >= 3");
  detail::Recorder rec;
  using detail::Digest;

  // step 1: horizontal slices span n-dimensional codes
  const auto As = slices(A, Direction::Horizontal), Bs = slices(B, Direction::Horizontal);
  const auto ca = MatrixCode::span(F, n, As), cb = MatrixCode::span(F, n, Bs);
  Digest d1;
  d1.add(ca.dim()).add(cb.dim());
  if (ca.dim() != n) return rec.failure("step1", d1);
  if (cb.dim() != n) return rec.not_isomorphic("step1", d1);
  rec.pass("step1", d1);

  // step 2: one-dimensional hulls
  const auto ha = hull(ca), hb = hull(cb);
  Digest d2;
  d2.add(ha.dim()).add(hb.dim());
  if (ha.dim() != 1) return rec.failure("step2", d2);
  if (hb.dim() != 1) return rec.not_isomorphic("step2", d2);
  const Matrix HA = ha.basis(0), HB = hb.basis(0);
  d2.add(HA).add(HB);
  rec.pass("step2", d2);

  // step 3: a unique simple eigenvalue on the hull spanners; only whether it
  // vanishes is comparable, the spanners being defined up to scale
  const auto ea = unique_simple_eigenvalue(HA);
  Digest d3;
  if (!ea) return rec.failure("step3", d3);
  const auto eb = unique_simple_eigenvalue(HB);
  if (!eb || (ea->lambda == 0) != (eb->lambda == 0)) return rec.not_isomorphic("step3", d3);
  const Matrix A1 = detail::combine(As, ea->left);
  Matrix B1 = detail::combine(Bs, eb->left);
  d3.add(ea->left).add(eb->left);
  rec.pass("step3", d3);

  // step 4: nonzero unique simple eigenvalue on the contractions; match B's
  const auto ea1 = unique_simple_eigenvalue(A1, true);
  Digest d4;
  if (!ea1) return rec.failure("step4", d4);
  const auto eb1 = unique_simple_eigenvalue(B1, true);
  if (!eb1) return rec.not_isomorphic("step4", d4);
  B1 = scale(B1, F.div(ea1->lambda, eb1->lambda));
  const Matrix A2 = detail::combine(As, ea1->left);
  Matrix B2 = detail::combine(Bs, eb1->left);
  d4.add(ea1->lambda).add(ea1->left).add(eb1->left);
  rec.pass("step4", d4);

  // step 5: same again one level down
  const auto ea2 = unique_simple_eigenvalue(A2, true);
  Digest d5;
  if (!ea2) return rec.failure("step5", d5);
  const auto eb2 = unique_simple_eigenvalue(B2, true);
  if (!eb2) return rec.not_isomorphic("step5", d5);
  B2 = scale(B2, F.div(ea2->lambda, eb2->lambda));
  d5.add(ea2->lambda).add(A2).add(B2);
  rec.pass("step5", d5);

  // step 6: (A1, A2) must have only scalar symmetries; then the conjugator
  // is unique up to scale, and the scale is read off one entry
  Digest d6;
  const auto cent = centralizer({A1, A2});
  d6.add(cent.size());
  if (cent.size() != 1) return rec.failure("step6", d6);
  const auto cc = conj_coset({A1, A2}, {B1, B2}, rng);
  d6.add(cc.dim());
  if (cc.status != ConjStatus::Conjugate) return rec.not_isomorphic("step6", d6);
  const auto chk = verify_algiso(A, B, *cc.representative);
  if (!chk.ok) return rec.not_isomorphic("step6", d6);
  Matrix T = scale(*cc.representative, chk.lambda);
  const auto again = verify_algiso(A, B, T);
  if (!again.ok || again.lambda != 1) fail(Errc::Format, "internal: rescaled algiso witness did not re-verify");
  d6.add(T);
  Witness w{Problem::Algiso, {}, Elem{1}};
  w.matrices.emplace("T", std::move(T));
  return rec.isomorphic("step6", d6, std::move(w), chk.lambda);
}

/// Matrix code conjugacy: find S, T with sum_k' t_kk' S A_k' S^{-1} = B_k on
/// frontal slices. The hull spanner and a contraction along a hyperplane
/// normal give a pair matched under S-conjugation up to scalars; the scalars
/// are fixed by eigenvalue ratios.
inline SolveResult solve_mcc(const Tensor3& A, const Tensor3& B, Rng& rng) {
  detail::check_pair3(A, B);
  const Field& F = A.field();
  const std::size_t n = A.dims()[0];
  require(n >= 2, Errc::ShapeMismatch, "mcc needs n >= 2");
  detail::Recorder rec;
  using detail::Digest;

  // step 1
  const auto As = slices(A, Direction::Frontal), Bs = slices(B, Direction::Frontal);
  const auto ca = MatrixCode::span(F, n, As), cb = MatrixCode::span(F, n, Bs);
  Digest d1;
  d1.add(ca.dim()).add(cb.dim());
  if (ca.dim() != n) return rec.failure("step1", d1);
  if (cb.dim() != n) return rec.not_isomorphic("step1", d1);
  rec.pass("step1", d1);

  // step 2: hull lines with nonzero unique simple eigenvalues; S HA S^-1 = c0 HB
  const auto ha = hull(ca), hb = hull(cb);
  Digest d2;
  d2.add(ha.dim()).add(hb.dim());
  if (ha.dim() != 1) return rec.failure("step2", d2);
  if (hb.dim() != 1) return rec.not_isomorphic("step2", d2);
  const Matrix HA = ha.basis(0), HB = hb.basis(0);
  const auto ea = unique_simple_eigenvalue(HA, true);
  if (!ea) return rec.failure("step2", d2);
  const auto eb = unique_simple_eigenvalue(HB, true);
  if (!eb) return rec.not_isomorphic("step2", d2);
  const Elem c0 = F.div(ea->lambda, eb->lambda);
  d2.add(HA).add(HB).add(c0);
  rec.pass("step2", d2);

  // step 3: split off the eigenline; S becomes block-diag(s, S0)
  const Matrix PA = primary_split_basis(HA, ea->lambda), PB = primary_split_basis(HB, eb->lambda);
  const Matrix PAi = inverse(PA), PBi = inverse(PB);
  std::vector<Matrix> Ac, Bc;
  for (std::size_t k = 0; k < n; ++k) {
    Ac.push_back(PA * As[k] * PAi);
    Bc.push_back(PB * Bs[k] * PBi);
  }
  const Matrix HAc = PA * HA * PAi, HBc = PB * HB * PBi;
  Digest d3;
  d3.add(PA).add(PB);
  rec.pass("step3", d3);

  // step 4: the first columns of the slices below the eigenline span a
  // hyperplane, as they must for S to be block diagonal. Its normal is the
  // hull spanner's own coordinate vector, so the contraction that closes the
  // loop uses a second covariant hyperplane: (Tr(A_i H^k))_i, k != 1, which
  // maps under T up to the scalars c0^-k.
  auto first_columns_ok = [&](const std::vector<Matrix>& S) {
    Matrix hat(F, n - 1, n);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t k = 0; k < n; ++k) hat(r - 1, k) = S[k](r, 0);
    return rank(hat) == n - 1;
  };
  auto normal = [&](const std::vector<Matrix>& S, const Matrix& H) -> std::optional<Vec> {
    Matrix W(F, n - 1, n);
    Matrix P = Matrix::identity(F, n);
    for (std::size_t k = 0, row = 0; k < n; ++k) {
      if (k != 1) {
        for (std::size_t i = 0; i < n; ++i) W(row, i) = trace_product(S[i], P);
        ++row;
      }
      if (k + 1 < n) P = P * H;
    }
    auto ker = right_kernel(W);
    if (ker.size() != 1) return std::nullopt;
    return ker[0];
  };
  Digest d4;
  if (!first_columns_ok(Ac)) return rec.failure("step4", d4);
  if (!first_columns_ok(Bc)) return rec.not_isomorphic("step4", d4);
  const auto a = normal(Ac, HAc);
  if (!a) return rec.failure("step4", d4);
  const auto b = normal(Bc, HBc);
  if (!b) return rec.not_isomorphic("step4", d4);
  d4.add(*a).add(*b);
  rec.pass("step4", d4);

  // step 5: contractions and their scalar
  const Matrix A1 = detail::combine(Ac, *a);
  const Matrix B1 = detail::combine(Bc, *b);
  const auto e1 = unique_simple_eigenvalue(A1, true);
  Digest d5;
  if (!e1) return rec.failure("step5", d5);
  const auto f1 = unique_simple_eigenvalue(B1, true);
  if (!f1) return rec.not_isomorphic("step5", d5);
  const Elem c1 = F.div(e1->lambda, f1->lambda);
  d5.add(A1).add(B1).add(c1);
  rec.pass("step5", d5);

  // step 6: conjugate the matched pair, then solve for T row by row
  Digest d6;
  const auto cent = centralizer({HAc, A1});
  d6.add(cent.size());
  if (cent.size() != 1) return rec.failure("step6", d6);
  const auto cc = conj_coset({HAc, A1}, {scale(HBc, c0), scale(B1, c1)}, rng);
  d6.add(cc.dim());
  if (cc.status != ConjStatus::Conjugate) return rec.not_isomorphic("step6", d6);
  const Matrix& Sc = *cc.representative;
  const Matrix Sci = inverse(Sc);
  // columns vec(Sc Ac_k' Sc^-1), right-hand sides vec(Bc_k)
  const std::size_t N = n * n;
  Matrix sys(F, N, 2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    const Matrix img = Sc * Ac[k] * Sci;
    for (std::size_t e = 0; e < N; ++e) {
      sys(e, k) = img.data()[e];
      sys(e, n + k) = Bc[k].data()[e];
    }
  }
  const auto piv = rref_in_place(sys, n);
  bool consistent = piv.size() == n;
  for (std::size_t r = piv.size(); consistent && r < N; ++r)
    for (std::size_t k = 0; k < n; ++k)
      if (sys(r, n + k) != 0) consistent = false;
  if (!consistent) return rec.not_isomorphic("step6", d6);
  Matrix T(F, n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) T(k, j) = sys(j, n + k);
  Matrix S = PBi * Sc * PA;
  if (!verify_mcc(A, B, S, T)) return rec.not_isomorphic("step6", d6);
  d6.add(S).add(T);
  Witness w{Problem::Mcc, {}, std::nullopt};
  w.matrices.emplace("S", std::move(S));
  w.matrices.emplace("T", std::move(T));
  return rec.isomorphic("step6", d6, std::move(w), std::nullopt);
}

namespace detail {

inline std::vector<Vec> all_vectors(const Field& F, std::size_t len) {
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < len; ++i) count *= F.q();
  std::vector<Vec> out;
  out.reserve(count);
  for (std::uint64_t c = 0; c < count; ++c) {
    Vec v(len);
    std::uint64_t x = c;
    for (std::size_t i = 0; i < len; ++i) {
      v[i] = x % F.q();
      x /= F.q();
    }
    out.push_back(std::move(v));
  }
  return out;
}

/// First basis of C whose leading member is invertible: the leading member
/// is the first invertible code element in enumeration order, the rest are
/// canonical basis elements completing it.
inline std::optional<std::vector<Matrix>> basis_with_invertible_head(const MatrixCode& C,
                                                                    const std::vector<Vec>& coeffs) {
  const auto base = C.basis_matrices();
  for (const auto& v : coeffs) {
    if (is_zero_vec(v)) continue;
    Matrix X = combine(base, v);
    if (det(X) == 0) continue;
    std::vector<Matrix> out{X};
    EchelonSpace sp(C.field(), v.size());
    sp.insert(v);
    for (std::size_t i = 0; i < base.size(); ++i) {
      Vec e(base.size(), 0);
      e[i] = 1;
      if (sp.insert(e)) out.push_back(base[i]);
    }
    return out;
  }
  return std::nullopt;
}

inline std::vector<Matrix> reduced_tuple(const std::vector<Matrix>& basis) {
  const Matrix h = inverse(basis[0]);
  std::vector<Matrix> out;
  for (std::size_t i = 1; i < basis.size(); ++i) out.push_back(h * basis[i]);
  return out;
}

/// All P (x) Q^{-1}-type products: for every ordered basis (B_1..B_c) of CB
/// with B_1 invertible and every invertible X with X N_i = M_i X, the pair
/// P = B_1 X A_1^{-1}, Q = X^{-1} satisfies P A_i Q = B_i. Returns
/// kron(P^{-t}, X), which the scalar freedom (mu P, mu^{-1} Q) leaves fixed.
inline std::vector<Matrix> kron_candidates(const std::vector<Matrix>& basisA, const MatrixCode& CB,
                                           const std::vector<Vec>& coeffs, Rng& rng) {
  const Field& F = CB.field();
  const std::size_t c = basisA.size();
  const auto base = CB.basis_matrices();
  const auto N = reduced_tuple(basisA);
  const Matrix A1i = inverse(basisA[0]);
  std::set<std::vector<Elem>> seen;
  std::vector<Matrix> out;

  std::vector<Matrix> elems;
  elems.reserve(coeffs.size());
  for (const auto& v : coeffs) elems.push_back(combine(base, v));

  std::vector<std::size_t> idx(c, 0);
  for (std::size_t h = 0; h < coeffs.size(); ++h) {
    if (is_zero_vec(coeffs[h])) continue;
    const auto hinv = inverse_det(elems[h]);
    if (!hinv.inverse) continue;
    // odometer over the remaining c - 1 members
    std::fill(idx.begin(), idx.end(), 0);
    while (true) {
      std::vector<Vec> rows{coeffs[h]};
      for (std::size_t i = 1; i < c; ++i) rows.push_back(coeffs[idx[i]]);
      if (echelon_basis(F, rows, c).size() == c) {
        std::vector<Matrix> M;
        for (std::size_t i = 1; i < c; ++i) M.push_back(*hinv.inverse * elems[idx[i]]);
        const auto cc = conj_coset(N, M, rng);
        if (cc.status == ConjStatus::Conjugate) {
          const Matrix& X = *cc.representative;
          const Matrix P = elems[h] * X * A1i;
          Matrix K = kron(inverse(P).transpose(), X);
          if (seen.insert(K.entries()).second) out.push_back(std::move(K));
        }
      }
      std::size_t i = 1;
      while (i < c && ++idx[i] == coeffs.size()) idx[i++] = 0;
      if (i >= c) break;
    }
  }
  return out;
}

/// Splits K = P (x) Q into factors, up to the scalar it cannot see.
inline std::pair<Matrix, Matrix> kron_factors(const Matrix& K, std::size_t n) {
  const Field& F = K.field();
  for (std::size_t i0 = 0; i0 < n; ++i0)
    for (std::size_t j0 = 0; j0 < n; ++j0) {
      Matrix Q(F, n, n);
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) Q(k, l) = K(i0 * n + k, j0 * n + l);
      if (Q.is_zero()) continue;
      std::size_t k0 = 0, l0 = 0;
      while (Q(k0, l0) == 0)
        if (++l0 == n) {
          l0 = 0;
          ++k0;
        }
      const Elem inv = F.inv(Q(k0, l0));
      Matrix P(F, n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) P(i, j) = F.mul(K(i * n + k0, j * n + l0), inv);
      return {P, Q};
    }
  fail(Errc::Singular, "zero Kronecker product");
}

inline MatrixCode kernel_code(const Field& F, std::size_t n, const std::vector<Vec>& ker) {
  std::vector<Matrix> gens;
  for (const auto& v : ker) gens.emplace_back(F, n, n, v);
  return MatrixCode::span(F, n, gens);
}

}  // namespace detail

/// 4-tensor isomorphism for flattenings of small corank: the kernel codes of
/// the flattening are equivalent under (L^{-t}, R^{-1}) and (S^{-t}, T^{-1});
/// each side is recovered as a Kronecker product and the pairs are tested.
inline SolveResult solve_t4(const Tensor4& A, const Tensor4& B, unsigned c_max, Rng& rng) {
  require(A.n() == B.n(), Errc::ShapeMismatch, "inputs must have equal size");
  if (!(A.field() == B.field())) fail(Errc::FieldMismatch, "inputs over different fields");
  if (c_max < 1 || c_max > 4) fail(Errc::BadParams, "c_max must be in [1, 4]");
  const Field& F = A.field();
  const std::size_t n = A.n();
  detail::Recorder rec;
  using detail::Digest;

  // step 1: kernel codes
  const Matrix fa = flatten4(A), fb = flatten4(B);
  const auto CA = detail::kernel_code(F, n, left_kernel(fa)), CB = detail::kernel_code(F, n, left_kernel(fb));
  const auto DA = detail::kernel_code(F, n, right_kernel(fa)), DB = detail::kernel_code(F, n, right_kernel(fb));
  Digest d1;
  d1.add(CA.dim()).add(CB.dim()).add(DA.dim()).add(DB.dim());
  rec.pass("step1", d1);

  // step 2
  const std::size_t c = CA.dim();
  if (c != CB.dim() || DA.dim() != DB.dim()) return rec.not_isomorphic("step2", d1);
  if (c == 0 || c > c_max) return rec.failure("step2", d1);
  std::uint64_t bases = 1;
  for (std::size_t i = 0; i < c * c; ++i) {
    if (bases > (1ULL << 24) / F.q()) fail(Errc::TooLarge, "ordered-basis enumeration exceeds 2^24");
    bases *= F.q();
  }
  rec.pass("step2", d1);

  // step 3: left side normal form and the scalar-centralizer gate
  const auto coeffs = detail::all_vectors(F, c);
  Digest d3;
  const auto basisA = detail::basis_with_invertible_head(CA, coeffs);
  if (!basisA) return rec.failure("step3", d3);
  if (!detail::basis_with_invertible_head(CB, coeffs)) return rec.not_isomorphic("step3", d3);
  if (c < 2 || centralizer(detail::reduced_tuple(*basisA)).size() != 1) return rec.failure("step3", d3);
  d3.add((*basisA)[0]);
  rec.pass("step3", d3);

  // step 4: every candidate L (x) R
  const auto K1 = detail::kron_candidates(*basisA, CB, coeffs, rng);
  Digest d4;
  d4.add(K1.size());
  if (K1.empty()) return rec.not_isomorphic("step4", d4);
  rec.pass("step4", d4);

  // step 5: the right side, with the same gate
  Digest d5;
  const auto basisD = detail::basis_with_invertible_head(DA, coeffs);
  if (!basisD) return rec.failure("step5", d5);
  if (!detail::basis_with_invertible_head(DB, coeffs)) return rec.not_isomorphic("step5", d5);
  if (centralizer(detail::reduced_tuple(*basisD)).size() != 1) return rec.failure("step5", d5);
  const auto K2 = detail::kron_candidates(*basisD, DB, coeffs, rng);
  d5.add(K2.size());
  if (K2.empty()) return rec.not_isomorphic("step5", d5);
  rec.pass("step5", d5);

  // step 6: flat(B) = K1 flat(A) K2^t, tested entrywise with early exit
  Digest d6;
  const std::size_t N = n * n;
  for (const auto& K : K1) {
    const Matrix KA = K * fa;
    for (const auto& M : K2) {
      bool match = true;
      for (std::size_t r = 0; r < N && match; ++r)
        for (std::size_t col = 0; col < N && match; ++col) {
          Elem acc = 0;
          for (std::size_t j = 0; j < N; ++j) acc = F.fma(KA(r, j), M(col, j), acc);
          match = acc == fb(r, col);
        }
      if (!match) continue;
      auto [L, R] = detail::kron_factors(K, n);
      auto [S, T] = detail::kron_factors(M, n);
      if (!verify_t4(A, B, L, R, S, T)) fail(Errc::Format, "internal: t4 factors did not re-verify");
      d6.add(L).add(R).add(S).add(T);
      Witness w{Problem::T4, {}, std::nullopt};
      w.matrices.emplace("L", std::move(L));
      w.matrices.emplace("R", std::move(R));
      w.matrices.emplace("S", std::move(S));
      w.matrices.emplace("T", std::move(T));
      return rec.isomorphic("step6", d6, std::move(w), std::nullopt);
    }
  }
  return rec.not_isomorphic("step6", d6);
}

/// Dispatch on the instance's problem; t4 uses c_max = 4.
inline SolveResult solve(const Instance& I, Rng& rng, unsigned c_max = 4) {
  switch (I.problem) {
    case Problem::Algiso: return solve_algiso(I.a3(), I.b3(), rng);
    case Problem::Mcc: return solve_mcc(I.a3(), I.b3(), rng);
    case Problem::T4: return solve_t4(I.a4(), I.b4(), c_max, rng);
  }
  fail(Errc::BadParams, "unknown problem");
}

}  // namespace tiso
