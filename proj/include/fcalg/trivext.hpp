#pragma once
/**
 * Trivial extension A = R ∝ M: the ring on pairs (a, x) with
 * (a,x)(b,y) = (ab, ay + bx), plus the pair-ideal and annihilator apparatus
 * and the idempotent splitting isomorphism.
 *
 * Carrier ordering: row-major over (ring index, module index), so
 * index(a, x) = a·|M| + x and the zero pair lands at index 0.
 */

#include "fcalg/core.hpp"
#include "fcalg/deciders.hpp"
#include "fcalg/module.hpp"
#include "fcalg/ring.hpp"

namespace fcalg {

struct TrivialExtension {
  RingPtr ring;    // A itself
  RingPtr base;    // R
  ModulePtr module;  // M
  std::vector<Elem> embed_ring;    // r ↦ (r, 0)
  std::vector<Elem> embed_module;  // x ↦ (0, x)

  Elem index(Elem r, Elem x) const { return r * module->size() + x; }
  Elem ring_part(Elem a) const { return a / module->size(); }
  Elem module_part(Elem a) const { return a % module->size(); }
  /// (0, M): the square-zero ideal.
  Mask module_ideal_mask() const { return full_mask(module->size()); }
};

inline TrivialExtension trivial_extension(const RingPtr& R,
                                          const ModulePtr& M) {
  require_same_ring(R, M->ring(), "trivial extension over a foreign module");
  const long size = static_cast<long>(R->size()) * M->size();
  if (size > kMaxCarrier)
    throw AlgebraError(Errc::SizeBoundExceeded,
                       "trivial extension carrier exceeds bound");
  const int s = static_cast<int>(size);
  const int ms = M->size();
  std::vector<Elem> add(static_cast<size_t>(s) * s), mul(static_cast<size_t>(s) * s);
  for (int a = 0; a < s; ++a) {
    const Elem ra = a / ms, xa = a % ms;
    for (int b = 0; b < s; ++b) {
      const Elem rb = b / ms, xb = b % ms;
      add[static_cast<size_t>(a) * s + b] = R->add(ra, rb) * ms + M->add(xa, xb);
      mul[static_cast<size_t>(a) * s + b] =
          R->mul(ra, rb) * ms + M->add(M->act(ra, xb), M->act(rb, xa));
    }
  }
  auto A = std::make_shared<FiniteRing>(
      s, std::move(add), std::move(mul), 0, R->one() * ms,
      trivext_desc(R->pedigree(), M->pedigree()));

  TrivialExtension t;
  t.ring = A;
  t.base = R;
  t.module = M;
  t.embed_ring.resize(R->size());
  for (Elem r = 0; r < R->size(); ++r) t.embed_ring[r] = r * ms;
  t.embed_module.resize(ms);
  for (Elem x = 0; x < ms; ++x) t.embed_module[x] = x;

  // Structural facts guaranteed by the construction; assert, don't assume.
  for (Elem r = 0; r < R->size(); ++r)
    for (Elem q = 0; q < R->size(); ++q) {
      if (t.embed_ring[R->add(r, q)] !=
          A->add(t.embed_ring[r], t.embed_ring[q]))
        throw AlgebraError(Errc::AxiomViolation, "ring embedding not additive");
      if (t.embed_ring[R->mul(r, q)] !=
          A->mul(t.embed_ring[r], t.embed_ring[q]))
        throw AlgebraError(Errc::AxiomViolation,
                           "ring embedding not multiplicative");
    }
  std::vector<Elem> expected_idem;
  for (Elem e : R->idempotent_elements()) expected_idem.push_back(e * ms);
  if (A->idempotent_elements() != expected_idem)
    throw AlgebraError(Errc::AxiomViolation,
                       "idempotents of the extension are not the pairs (e, 0)");
  for (Elem x = 0; x < ms; ++x)
    for (Elem y = 0; y < ms; ++y)
      if (A->mul(t.embed_module[x], t.embed_module[y]) != A->zero())
        throw AlgebraError(Errc::AxiomViolation,
                           "(0, M) does not square to zero");
  return t;
}

/// The ideal (I, N) = {(a, x) : a ∈ I, x ∈ N} of A; requires I·M ⊆ N.
inline Ideal pair_ideal(const TrivialExtension& A, const Ideal& I, Mask N) {
  require_same_ring(A.base, I.ring, "pair ideal over a foreign ideal");
  Submodule(A.module, N);  // validates submodule closure
  for (Elem i : mask_elements(I.elements))
    for (Elem x = 0; x < A.module->size(); ++x)
      if (!has(N, A.module->act(i, x)))
        throw AlgebraError(Errc::ContainmentViolation,
                           "pair ideal requires I·M contained in N");
  Mask out = 0;
  for (Elem a : mask_elements(I.elements))
    for (Elem x : mask_elements(N)) out |= bit(A.index(a, x));
  return Ideal(A.ring, out);
}

/// Checks Ann_A((I, N)) = (Ann_R(I) ∩ Ann_R(N), Ann_M(I)) by computing both
/// sides independently.
inline Verdict ann_pair_formula_check(const TrivialExtension& A,
                                      const Ideal& I, Mask N) {
  const Ideal P = pair_ideal(A, I, N);
  const Ideal direct = annihilator_of_subset(A.ring, P.elements);
  const Mask ring_part = annihilator_of_subset(A.base, I.elements).elements &
                         annihilator_in_ring(*A.module, N).elements;
  const Mask mod_part = annihilator_in_module(*A.module, I);
  Mask formula = 0;
  for (Elem a : mask_elements(ring_part))
    for (Elem x : mask_elements(mod_part)) formula |= bit(A.index(a, x));
  if (direct.elements == formula)
    return {true, "direct-vs-formula", Witness::none()};
  const Mask diff = direct.elements ^ formula;
  return {false, "direct-vs-formula",
          Witness::element(std::countr_zero(diff))};
}

/// The splitting isomorphism A ≅ eR × ((1−e)R ∝ (1−e)M) available when
/// Ann_R(M) = eR:  (r, m) ↦ (e·r, ((1−e)·r, (1−e)·m)).  Verifies the map is
/// a bijective ring homomorphism and that (1−e)M is faithful over (1−e)R.
inline Verdict splitting_iso(const TrivialExtension& A, Elem e) {
  const RingPtr& R = A.base;
  const ModulePtr& M = A.module;
  if (e < 0 || e >= R->size())
    throw AlgebraError(Errc::InvalidElement, "idempotent out of range");
  if (R->mul(e, e) != e)
    throw AlgebraError(Errc::NotIdempotent, "splitting requires an idempotent");
  const Ideal ann = annihilator_in_ring(*M, full_mask(M->size()));
  if (ann.elements != R->principal_ideal_mask(e))
    throw AlgebraError(Errc::AnnihilatorMismatch,
                       "splitting requires Ann(M) = eR");
  const Elem f = R->sub(R->one(), e);

  // eR as a standalone ring and (1−e)R ∝ (1−e)M over the complementary corner.
  const QuotientRing corner_e = corner_ring(R, e);
  const QuotientRing corner_f = corner_ring(R, f);
  Mask fm = 0;
  for (Elem x = 0; x < M->size(); ++x) fm |= bit(M->act(f, x));
  const ModulePtr fM = make_sub(M, mask_elements(fm));
  const ModulePtr fM_over_corner = make_module_over_quotient(fM, corner_f);
  // Faithfulness of (1−e)M over (1−e)R.
  if (!annihilator_in_ring(*fM_over_corner, full_mask(fM_over_corner->size()))
           .is_zero())
    throw AlgebraError(Errc::AnnihilatorMismatch,
                       "(1-e)M is not faithful over (1-e)R");
  const TrivialExtension B = trivial_extension(corner_f.ring, fM_over_corner);
  const RingPtr T = make_product({corner_e.ring, B.ring});

  // Index of f·x inside the fM carrier (ascending parent order).
  std::vector<Elem> back(M->size(), -1);
  {
    const auto carrier = mask_elements(fm);
    for (size_t i = 0; i < carrier.size(); ++i)
      back[carrier[i]] = static_cast<Elem>(i);
  }
  const int bsize = B.ring->size();
  std::vector<Elem> phi(A.ring->size());
  std::vector<bool> hit(T->size(), false);
  for (Elem a = 0; a < A.ring->size(); ++a) {
    const Elem r = A.ring_part(a), m = A.module_part(a);
    const Elem left = corner_e.proj[R->mul(e, r)];
    const Elem right = B.index(corner_f.proj[R->mul(f, r)],
                               back[M->act(f, m)]);
    phi[a] = left * bsize + right;
    if (hit[phi[a]])
      throw AlgebraError(Errc::AxiomViolation, "splitting map not injective");
    hit[phi[a]] = true;
  }
  if (phi[A.ring->one()] != T->one() || phi[A.ring->zero()] != T->zero())
    throw AlgebraError(Errc::AxiomViolation, "splitting map misplaces 0 or 1");
  for (Elem a = 0; a < A.ring->size(); ++a)
    for (Elem b = 0; b < A.ring->size(); ++b) {
      if (phi[A.ring->add(a, b)] != T->add(phi[a], phi[b]) ||
          phi[A.ring->mul(a, b)] != T->mul(phi[a], phi[b]))
        throw AlgebraError(Errc::AxiomViolation,
                           "splitting map not a ring homomorphism");
    }
  return {true, "explicit-pair-map", Witness::idempotent(e)};
}

}  // namespace fcalg
