#pragma once
/**
 * Module-class and ring-class predicates with witnessed verdicts.  Each
 * decider records which algorithm produced its answer; the verification
 * harness runs the alternative characterizations against each other.
 *
 * Witness tie-breaking: lexicographically least in the canonical order
 * (ascending element index / ascending submodule mask).
 */

#include <map>

#include "fcalg/core.hpp"
#include "fcalg/module.hpp"
#include "fcalg/ring.hpp"

namespace fcalg {

namespace detail {

inline void require_nonzero_module(const FiniteModule& M) {
  if (M.is_zero_module())
    throw AlgebraError(Errc::ZeroModule,
                       "predicate requires a nonzero module");
}

inline void require_nonzero_ring(const RingPtr& R) {
  if (R->is_zero_ring())
    throw AlgebraError(Errc::ZeroRing, "predicate requires a nonzero ring");
}

/// Per-lattice-member annihilator data for the weakly-IN / s.IN scans.
struct AnnTable {
  std::vector<Mask> ann;        // Ann_R(N) per lattice member
  std::vector<Mask> one_minus;  // {1 - a : a in Ann_R(N)} per member
};

inline AnnTable annihilator_table(const FiniteModule& M,
                                  const std::vector<Mask>& lattice) {
  const RingPtr& R = M.ring();
  AnnTable t;
  t.ann.reserve(lattice.size());
  t.one_minus.reserve(lattice.size());
  for (Mask N : lattice) {
    Mask a = full_mask(R->size());
    for (Mask m = N; m; m &= m - 1) a &= M.killer_mask(std::countr_zero(m));
    Mask om = 0;
    for (Mask m = a; m; m &= m - 1)
      om |= bit(R->sub(R->one(), std::countr_zero(m)));
    t.ann.push_back(a);
    t.one_minus.push_back(om);
  }
  return t;
}

/// Direct summands of M among the lattice members, as a sorted mask list.
inline std::vector<Mask> summand_set(const FiniteModule& M,
                                     const std::vector<Mask>& lattice) {
  const Mask zero = bit(M.zero());
  std::vector<Mask> out;
  for (Mask D : lattice) {
    const int dc = count(D);
    for (Mask K : lattice)
      if ((D & K) == zero && dc * count(K) == M.size()) {
        out.push_back(D);
        break;
      }
  }
  return out;  // lattice is ascending, so this is too
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Module-class deciders
// ---------------------------------------------------------------------------

/// CS (extending): every submodule is essential in a direct summand.
inline Verdict is_cs_module(const ModulePtr& M, size_t cap = 4096) {
  detail::require_nonzero_module(*M);
  const auto& lattice = M->submodule_lattice(cap);
  const auto summands = detail::summand_set(*M, lattice);
  for (Mask N : lattice) {
    bool housed = false;
    for (Mask D : summands) {
      if ((N & ~D) != 0) continue;
      if (is_essential(*M, N, D).value) {
        housed = true;
        break;
      }
    }
    if (!housed)
      return {false, "definitional-lattice",
              Witness::submodule(mask_elements(N))};
  }
  return {true, "definitional-lattice", Witness::none()};
}

/// Weakly IN: zero-intersecting submodules have annihilators summing to R.
inline Verdict is_weakly_in(const ModulePtr& M, size_t cap = 4096) {
  detail::require_nonzero_module(*M);
  const auto& lattice = M->submodule_lattice(cap);
  const auto t = detail::annihilator_table(*M, lattice);
  const Mask zero = bit(M->zero());
  for (size_t i = 0; i < lattice.size(); ++i)
    for (size_t j = i; j < lattice.size(); ++j) {
      if ((lattice[i] & lattice[j]) != zero) continue;
      // Ann(N) + Ann(L) = R  iff  some a in Ann(N) has 1 - a in Ann(L).
      if ((t.one_minus[i] & t.ann[j]) == 0)
        return {false, "annihilator-pair-scan",
                Witness::submodule_pair(mask_elements(lattice[i]),
                                        mask_elements(lattice[j]))};
    }
  return {true, "annihilator-pair-scan", Witness::none()};
}

/// Strongly CS: every submodule is essential in an idempotent-cut eM.
inline Verdict is_strongly_cs(const ModulePtr& M, size_t cap = 4096) {
  detail::require_nonzero_module(*M);
  const RingPtr& R = M->ring();
  std::vector<Mask> images;  // e·M per idempotent, ascending e
  for (Elem e : R->idempotent_elements()) {
    Mask im = 0;
    for (Elem x = 0; x < M->size(); ++x) im |= bit(M->act(e, x));
    images.push_back(im);
  }
  for (Mask N : M->submodule_lattice(cap)) {
    bool housed = false;
    for (Mask im : images) {
      if ((N & ~im) != 0) continue;
      if (is_essential(*M, N, im).value) {
        housed = true;
        break;
      }
    }
    if (!housed)
      return {false, "idempotent-image-scan",
              Witness::submodule(mask_elements(N))};
  }
  return {true, "idempotent-image-scan", Witness::none()};
}

/// s.IN: Ann(N ∩ L) = Ann(N) + Ann(L) for ALL submodule pairs.
inline Verdict is_sin(const ModulePtr& M, size_t cap = 4096) {
  detail::require_nonzero_module(*M);
  const RingPtr& R = M->ring();
  const auto& lattice = M->submodule_lattice(cap);
  const auto t = detail::annihilator_table(*M, lattice);
  std::map<Mask, Mask> ann_of;  // lattice member -> annihilator
  for (size_t i = 0; i < lattice.size(); ++i) ann_of[lattice[i]] = t.ann[i];
  std::map<std::pair<Mask, Mask>, Mask> sum_cache;
  for (size_t i = 0; i < lattice.size(); ++i)
    for (size_t j = i; j < lattice.size(); ++j) {
      const Mask ann_meet = ann_of.at(lattice[i] & lattice[j]);
      const auto key = std::minmax(t.ann[i], t.ann[j]);
      auto it = sum_cache.find(key);
      if (it == sum_cache.end())
        it = sum_cache
                 .emplace(key, detail::pairwise_sum(key.first, key.second,
                                                    R->size(),
                                                    R->add_table().data()))
                 .first;
      if (it->second != ann_meet)
        return {false, "annihilator-pair-scan",
                Witness::submodule_pair(mask_elements(lattice[i]),
                                        mask_elements(lattice[j]))};
    }
  return {true, "annihilator-pair-scan", Witness::none()};
}

/// Quasi-continuous: CS, and zero-intersecting direct summands have their
/// sum again a direct summand.
inline Verdict is_quasi_continuous(const ModulePtr& M, size_t cap = 4096) {
  detail::require_nonzero_module(*M);
  Verdict cs = is_cs_module(M, cap);
  if (!cs.value) return {false, "definitional", cs.witness};
  const auto& lattice = M->submodule_lattice(cap);
  const auto summands = detail::summand_set(*M, lattice);
  const Mask zero = bit(M->zero());
  for (size_t i = 0; i < summands.size(); ++i)
    for (size_t j = i; j < summands.size(); ++j) {
      if ((summands[i] & summands[j]) != zero) continue;
      const Mask sum = submodule_sum(*M, summands[i], summands[j]);
      if (!std::binary_search(summands.begin(), summands.end(), sum))
        return {false, "definitional",
                Witness::submodule_pair(mask_elements(summands[i]),
                                        mask_elements(summands[j]))};
    }
  return {true, "definitional", Witness::none()};
}

/// Every idempotent endomorphism is multiplication by a ring element.
inline Verdict scalar_idempotent_endos(const ModulePtr& M,
                                       size_t hom_cap = 1000000) {
  detail::require_nonzero_module(*M);
  std::vector<std::vector<Elem>> scalar_tables;
  for (Elem r = 0; r < M->ring()->size(); ++r) {
    std::vector<Elem> t(M->size());
    for (Elem x = 0; x < M->size(); ++x) t[x] = M->act(r, x);
    scalar_tables.push_back(std::move(t));
  }
  std::sort(scalar_tables.begin(), scalar_tables.end());
  for (const ModuleHom& h : endomorphisms(M, hom_cap)) {
    if (!h.is_idempotent()) continue;
    if (!std::binary_search(scalar_tables.begin(), scalar_tables.end(),
                            h.values))
      return {false, "endomorphism-scan", Witness::submodule(h.values)};
  }
  return {true, "endomorphism-scan", Witness::none()};
}

// ---------------------------------------------------------------------------
// Ring-class deciders
// ---------------------------------------------------------------------------

enum class CsRingMethod { Definitional, Annihilator };

/// CS ring.  Definitional route: the regular module is strongly CS.
/// Annihilator route: zero-intersecting ideal pairs have annihilators
/// summing to R.  The harness asserts the two agree on every family ring.
inline Verdict is_cs_ring(const RingPtr& R,
                          CsRingMethod method = CsRingMethod::Definitional,
                          size_t cap = 4096) {
  detail::require_nonzero_ring(R);
  const ModulePtr reg = make_regular(R);
  Verdict v = method == CsRingMethod::Definitional ? is_strongly_cs(reg, cap)
                                                   : is_weakly_in(reg, cap);
  v.method = method == CsRingMethod::Definitional
                 ? "strongly-cs-of-regular"
                 : "ideal-annihilator-pair-scan";
  return v;
}

/// Clean: every element is a unit plus an idempotent.
inline Verdict is_clean(const RingPtr& R) {
  Mask reachable = 0;
  for (Elem e : R->idempotent_elements())
    for (Mask m = R->unit_mask(); m; m &= m - 1)
      reachable |= bit(R->add(std::countr_zero(m), e));
  for (Elem a = 0; a < R->size(); ++a)
    if (!has(reachable, a))
      return {false, "unit-idempotent-scan", Witness::element(a)};
  return {true, "unit-idempotent-scan", Witness::none()};
}

/// Idempotents lift modulo I: r − r² ∈ I  ⇒  r − e ∈ I for some e = e².
inline Verdict idempotents_lift_mod(const RingPtr& R, const Ideal& I) {
  require_same_ring(R, I.ring, "lifting modulo a foreign ideal");
  if (I.is_whole())
    throw AlgebraError(Errc::ImproperIdeal,
                       "idempotent lifting asks for a proper ideal");
  for (Elem r = 0; r < R->size(); ++r) {
    if (!I.contains(R->sub(r, R->mul(r, r)))) continue;
    bool lifts = false;
    for (Elem e : R->idempotent_elements())
      if (I.contains(R->sub(r, e))) {
        lifts = true;
        break;
      }
    if (!lifts) return {false, "residue-scan", Witness::element(r)};
  }
  return {true, "residue-scan", Witness::none()};
}

/// Chain ring: the ideal lattice is totally ordered by inclusion.
inline Verdict is_chain_ring(const RingPtr& R, size_t cap = 4096) {
  detail::require_nonzero_ring(R);
  const auto& lattice = R->ideal_lattice(cap);
  for (size_t i = 0; i < lattice.size(); ++i)
    for (size_t j = i + 1; j < lattice.size(); ++j) {
      const Mask a = lattice[i], b = lattice[j];
      if ((a & ~b) != 0 && (b & ~a) != 0)
        return {false, "lattice-chain-scan",
                Witness::submodule_pair(mask_elements(a), mask_elements(b))};
    }
  return {true, "lattice-chain-scan", Witness::none()};
}

/// Dimension/spectrum flags.  For finite commutative rings all three hold;
/// they are computed definitionally so the degenerate directions of the
/// structure theorems can be asserted rather than assumed.
struct RingClassFlags {
  bool zero_dimensional = false;  // every prime ideal is maximal
  bool mp = false;                // every prime contains a unique minimal prime
  bool purified = false;          // distinct minimal primes split by idempotents
};

inline RingClassFlags ring_class_flags(const RingPtr& R, size_t cap = 4096) {
  detail::require_nonzero_ring(R);
  const SpectrumViews spec = prime_spectrum(R, cap);
  RingClassFlags flags;

  auto masks_of = [](const std::vector<Ideal>& xs) {
    std::vector<Mask> ms;
    for (const auto& i : xs) ms.push_back(i.elements);
    std::sort(ms.begin(), ms.end());
    return ms;
  };
  flags.zero_dimensional = masks_of(spec.primes) == masks_of(spec.maximal);

  flags.mp = true;
  for (const Ideal& p : spec.primes) {
    int below = 0;
    for (const Ideal& q : spec.minimal)
      if ((q.elements & ~p.elements) == 0) ++below;
    if (below != 1) flags.mp = false;
  }

  flags.purified = true;
  for (const Ideal& p : spec.minimal)
    for (const Ideal& q : spec.minimal) {
      if (p.elements == q.elements) continue;
      bool split = false;
      for (Elem e : R->idempotent_elements())
        if (p.contains(e) && q.contains(R->sub(R->one(), e))) {
          split = true;
          break;
        }
      if (!split) flags.purified = false;
    }
  return flags;
}

}  // namespace fcalg
