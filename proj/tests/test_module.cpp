#include <catch2/catch_amalgamated.hpp>

#include "fcalg/module.hpp"
#include "test_support_module.hpp"

using namespace fcalg;
using namespace testsupport;

namespace {

ModulePtr two_plane() {  // (Z/2)^2 over Z/2
  auto z2 = make_zmod(2);
  return make_dsum({make_regular(z2), make_regular(z2)});
}

ModulePtr z2_plus_z3_over_z6() {  // Z/2 ⊕ Z/3 over Z/6
  auto z6 = make_zmod(6);
  return make_dsum({make_cyclic(z6, {2}), make_cyclic(z6, {3})});
}

std::vector<ModulePtr> small_module_pool() {
  std::vector<ModulePtr> pool;
  for (long n : {2L, 3L, 4L, 6L, 8L, 12L}) pool.push_back(make_regular(make_zmod(n)));
  pool.push_back(two_plane());
  pool.push_back(z2_plus_z3_over_z6());
  auto z2 = make_zmod(2);
  pool.push_back(make_dsum({make_regular(z2), make_regular(z2), make_regular(z2)}));
  auto z8 = make_zmod(8);
  pool.push_back(make_dsum({make_cyclic(z8, {2}), make_regular(z8)}));  // Z/2 ⊕ Z/8
  pool.push_back(make_cyclic(make_zmod(6), {2}));  // simple Z/2 over Z/6
  pool.push_back(make_regular(make_polyquot(2, {0, 0, 1})));
  return pool;
}

}  // namespace

TEST_CASE("regular module has the ring action") {
  auto z4 = make_zmod(4);
  auto m = make_regular(z4);
  REQUIRE(m->size() == 4);
  REQUIRE(m->zero() == 0);
  for (Elem r = 0; r < 4; ++r)
    for (Elem x = 0; x < 4; ++x) REQUIRE(m->act(r, x) == z4->mul(r, x));
  REQUIRE(to_text(m->pedigree()) == "regular(zmod 4)");
}

TEST_CASE("cyclic modules are coset modules") {
  auto z6 = make_zmod(6);
  // [DERIVED] Cyclic(Z/6,{3}) has size 3 (cosets of {0,3})
  auto m3 = make_cyclic(z6, {3});
  REQUIRE(m3->size() == 3);
  REQUIRE(to_text(m3->pedigree()) == "cyclic(zmod 6,[3])");
  // [DERIVED] Cyclic(Z/6,{2}) ≅ Z/2; action through the parity of r
  auto m2 = make_cyclic(z6, {2});
  REQUIRE(m2->size() == 2);
  for (Elem r = 0; r < 6; ++r) REQUIRE(m2->act(r, 1) == r % 2);
  // Quotient by the zero ideal is the regular module.
  REQUIRE(make_cyclic(z6, {})->same_table(*make_regular(z6)));
  // Quotient by the whole ring is the zero module.
  REQUIRE(make_cyclic(z6, {1})->is_zero_module());
}

TEST_CASE("direct sums have componentwise action and canonical indexing") {
  auto m = z2_plus_z3_over_z6();
  REQUIRE(m->size() == 6);
  REQUIRE(m->zero() == 0);
  REQUIRE(to_text(m->pedigree()) == "dsum(cyclic(zmod 6,[2]),cyclic(zmod 6,[3]))");
  // [DERIVED] Z/2⊕Z/3 over Z/6 is isomorphic to Regular(Z/6)
  REQUIRE(find_module_iso(*m, *make_regular(make_zmod(6))).has_value());
  // Parts over genuinely different rings are rejected.
  REQUIRE(throws_with(Errc::RingMismatch, [] {
    make_dsum({make_regular(make_zmod(2)), make_regular(make_zmod(3))});
  }));
  // Same ring presented through distinct handles is fine (table identity).
  REQUIRE_NOTHROW(make_dsum({make_regular(make_zmod(2)), make_regular(make_zmod(2))}));
  REQUIRE(throws_with(Errc::SizeBoundExceeded, [] {
    auto z12 = make_zmod(12);
    make_dsum({make_regular(z12), make_regular(z12)});
  }));
  REQUIRE(throws_with(Errc::MalformedDescriptor, [] { make_dsum({}); }));
}

TEST_CASE("module axiom validation rejects tampered tables") {
  auto z4 = make_zmod(4);
  auto m = make_regular(z4);
  auto add = m->add_table();
  auto act = m->act_table();
  SECTION("action not unital") {
    auto bad = act;
    bad[1 * 4 + 1] = 0;
    REQUIRE(throws_with(Errc::AxiomViolation, [&] {
      FiniteModule(z4, 4, add, bad, 0, m->pedigree());
    }));
  }
  SECTION("addition not commutative") {
    auto bad = add;
    bad[1 * 4 + 2] = 0;
    REQUIRE(throws_with(Errc::AxiomViolation, [&] {
      FiniteModule(z4, 4, bad, act, 0, m->pedigree());
    }));
  }
  SECTION("entry out of range") {
    auto bad = act;
    bad[0] = 7;
    REQUIRE(throws_with(Errc::InvalidElement, [&] {
      FiniteModule(z4, 4, add, bad, 0, m->pedigree());
    }));
  }
}

TEST_CASE("submodule spans match frozen values") {
  auto r4 = make_regular(make_zmod(4));
  REQUIRE(submodule_span(r4, {}).elements == mask_from({0}));
  // [DERIVED] span{2} in Regular(Z/4) = {0,2}
  REQUIRE(submodule_span(r4, {2}).elements == mask_from({0, 2}));
  // [DERIVED] span{(1,0)} in (Z/2)^2 = first axis; (1,0) has index 2
  auto plane = two_plane();
  REQUIRE(submodule_span(plane, {2}).elements == mask_from({0, 2}));
  REQUIRE(throws_with(Errc::InvalidElement, [&] { submodule_span(r4, {4}); }));
}

TEST_CASE("submodule constructor validates closure") {
  auto r4 = make_regular(make_zmod(4));
  REQUIRE(throws_with(Errc::AxiomViolation, [&] { Submodule(r4, mask_from({0, 1})); }));
  REQUIRE(throws_with(Errc::AxiomViolation, [&] { Submodule(r4, mask_from({2})); }));
  REQUIRE(throws_with(Errc::InvalidElement, [&] { Submodule(r4, bit(9)); }));
}

TEST_CASE("submodule lattice matches the brute-force subset oracle") {
  for (const auto& M : small_module_pool()) {
    INFO("module " << to_text(M->pedigree()));
    auto oracle = oracle_all_submodules(*M);
    std::sort(oracle.begin(), oracle.end());
    REQUIRE(M->submodule_lattice() == oracle);
  }
}

TEST_CASE("submodule counts match frozen values") {
  // [DERIVED] Regular(Z/4): 3 submodules; (Z/2)^2: 5; simple module: 2
  REQUIRE(make_regular(make_zmod(4))->submodule_lattice().size() == 3);
  REQUIRE(two_plane()->submodule_lattice().size() == 5);
  REQUIRE(make_cyclic(make_zmod(6), {2})->submodule_lattice().size() == 2);
}

TEST_CASE("lattice is closed under sum and intersection") {
  for (const auto& M : small_module_pool()) {
    INFO("module " << to_text(M->pedigree()));
    const auto& lat = M->submodule_lattice();
    REQUIRE(std::find(lat.begin(), lat.end(), bit(M->zero())) != lat.end());
    REQUIRE(std::find(lat.begin(), lat.end(), full_mask(M->size())) != lat.end());
    for (Mask a : lat)
      for (Mask b : lat) {
        REQUIRE(std::binary_search(lat.begin(), lat.end(), a & b));
        REQUIRE(std::binary_search(lat.begin(), lat.end(),
                                   submodule_sum(*M, a, b)));
      }
  }
}

TEST_CASE("ring-side annihilators match frozen values") {
  auto m = z2_plus_z3_over_z6();
  // [DERIVED] the Z/2 component is {(0,0),(1,0)} = indices {0,3}
  REQUIRE(annihilator_in_ring(*m, mask_from({0, 3})).elements == mask_from({0, 2, 4}));
  REQUIRE(annihilator_in_ring(*m, mask_from({0})).is_whole());
  auto r6 = make_regular(make_zmod(6));
  REQUIRE(annihilator_in_ring(*r6, full_mask(6)).is_zero());

  // Antitone in the subset: Ann(M) ⊆ Ann(S) for every S.
  const Mask ann_full = annihilator_in_ring(*m, full_mask(6)).elements;
  for (Mask s = 0; s < (Mask{1} << 6); ++s) {
    const Mask ann_s = annihilator_in_ring(*m, s).elements;
    REQUIRE((ann_full & ~ann_s) == 0);
  }
}

TEST_CASE("module-side annihilators match frozen values") {
  auto z4 = make_zmod(4);
  auto r4 = make_regular(z4);
  REQUIRE(annihilator_in_module(*r4, ideal_span(z4, {})) == full_mask(4));
  REQUIRE(annihilator_in_module(*r4, Ideal(z4, full_mask(4))) == mask_from({0}));
  // [DERIVED] Ann_M(span{2}) in Regular(Z/4) = {0,2}
  REQUIRE(annihilator_in_module(*r4, ideal_span(z4, {2})) == mask_from({0, 2}));
  REQUIRE(throws_with(Errc::RingMismatch, [&] {
    annihilator_in_module(*r4, ideal_span(make_zmod(6), {2}));
  }));
}

TEST_CASE("essentiality matches frozen values") {
  auto r4 = make_regular(make_zmod(4));
  // [DERIVED] {0,2} is essential in Regular(Z/4)
  REQUIRE(is_essential(*r4, mask_from({0, 2}), full_mask(4)).value);
  auto r6 = make_regular(make_zmod(6));
  // [DERIVED] {0,3} is not essential in Regular(Z/6); witness x = 2
  auto v = is_essential(*r6, mask_from({0, 3}), full_mask(6));
  REQUIRE_FALSE(v.value);
  REQUIRE(v.witness.kind == Witness::Kind::Element);
  REQUIRE(v.witness.first == std::vector<Elem>{2});
  REQUIRE(throws_with(Errc::NotNested, [&] {
    is_essential(*r6, mask_from({0, 3}), mask_from({0, 2, 4}));
  }));
}

TEST_CASE("essentiality: reflexivity, lattice form and transitivity") {
  for (const auto& M : small_module_pool()) {
    INFO("module " << to_text(M->pedigree()));
    const auto& lat = M->submodule_lattice();
    const Mask zero = bit(M->zero());
    for (Mask N : lat) {
      REQUIRE(is_essential(*M, N, N).value);
      for (Mask L : lat) {
        if (N & ~L) continue;
        const bool cyclic_form = is_essential(*M, N, L).value;
        bool lattice_form = true;
        for (Mask X : lat)
          if (X != zero && (X & ~L) == 0 && (X & N) == zero) lattice_form = false;
        REQUIRE(cyclic_form == lattice_form);
        if (!cyclic_form) continue;
        for (Mask T : lat)  // N ess L and L ess T implies N ess T
          if ((L & ~T) == 0 && is_essential(*M, L, T).value)
            REQUIRE(is_essential(*M, N, T).value);
      }
    }
  }
}

TEST_CASE("complements match frozen values") {
  auto plane = two_plane();
  // [TRIVIAL] complements of {0} = [whole]
  auto c0 = complements_of(*plane, mask_from({0}));
  REQUIRE(c0 == std::vector<Mask>{full_mask(4)});
  // [DERIVED] first axis {0,2} in (Z/2)^2 has the two other lines as complements
  auto c1 = complements_of(*plane, mask_from({0, 2}));
  REQUIRE(c1 == std::vector<Mask>{mask_from({0, 1}), mask_from({0, 3})});
  // [DERIVED] {0,2} in Regular(Z/4) has no complement
  auto r4 = make_regular(make_zmod(4));
  REQUIRE(complements_of(*r4, mask_from({0, 2})).empty());
  REQUIRE(is_direct_summand(*plane, mask_from({0, 2})));
  REQUIRE_FALSE(is_direct_summand(*r4, mask_from({0, 2})));

  for (const auto& M : small_module_pool()) {
    for (Mask N : M->submodule_lattice())
      for (Mask K : complements_of(*M, N)) REQUIRE(count(N) * count(K) == M->size());
  }
}

TEST_CASE("uniformity matches frozen values") {
  REQUIRE(is_uniform(*make_regular(make_zmod(4))).value);
  REQUIRE(is_uniform(*make_cyclic(make_zmod(6), {2})).value);
  auto v = is_uniform(*z2_plus_z3_over_z6());
  REQUIRE_FALSE(v.value);
  REQUIRE(v.witness.kind == Witness::Kind::SubmodulePair);
  // [DERIVED] lexicographically least zero-intersecting pair: the components
  REQUIRE(v.witness.first == std::vector<Elem>{0, 1, 2});   // Z/3 component
  REQUIRE(v.witness.second == std::vector<Elem>{0, 3});     // Z/2 component
  REQUIRE(throws_with(Errc::ZeroModule, [] {
    is_uniform(*make_sub(make_regular(make_zmod(2)), {}));
  }));
}

TEST_CASE("minimal generators are exact and deterministic") {
  REQUIRE(minimal_generators(*make_regular(make_zmod(6))) == std::vector<Elem>{1});
  REQUIRE(minimal_generators(*two_plane()) == std::vector<Elem>{1, 2});
  REQUIRE(minimal_generators(*z2_plus_z3_over_z6()) == std::vector<Elem>{4});
  REQUIRE(minimal_generators(*make_sub(make_regular(make_zmod(2)), {})).empty());
  auto z2 = make_zmod(2);
  auto cube = make_dsum({make_regular(z2), make_regular(z2), make_regular(z2)});
  REQUIRE(minimal_generators(*cube).size() == 3);
}

TEST_CASE("endomorphisms match the brute-force map oracle") {
  for (const auto& M : small_module_pool()) {
    if (M->size() > 6) continue;
    INFO("module " << to_text(M->pedigree()));
    auto got = endomorphisms(M);
    std::vector<std::vector<Elem>> tables;
    for (const auto& h : got) tables.push_back(h.values);
    std::sort(tables.begin(), tables.end());
    auto want = oracle_all_endos(*M);
    std::sort(want.begin(), want.end());
    REQUIRE(tables == want);
  }
}

TEST_CASE("endomorphism counts match frozen values") {
  // [DERIVED] Regular(Z/6): 6 endomorphisms, 4 idempotent (mult by 0,1,3,4)
  auto endos6 = endomorphisms(make_regular(make_zmod(6)));
  REQUIRE(endos6.size() == 6);
  int idem = 0;
  for (const auto& h : endos6) idem += h.is_idempotent();
  REQUIRE(idem == 4);
  // [DERIVED] simple module over Z/5: 5 scalar maps
  REQUIRE(endomorphisms(make_regular(make_zmod(5))).size() == 5);
  // Identity and zero are always present.
  for (const auto& M : small_module_pool()) {
    auto es = endomorphisms(M);
    std::vector<Elem> id(M->size()), zero(M->size(), M->zero());
    for (Elem x = 0; x < M->size(); ++x) id[x] = x;
    auto found = [&](const std::vector<Elem>& t) {
      for (const auto& h : es)
        if (h.values == t) return true;
      return false;
    };
    REQUIRE(found(id));
    REQUIRE(found(zero));
  }
  REQUIRE(throws_with(Errc::SizeBoundExceeded, [] { endomorphisms(two_plane(), 2); }));
}

TEST_CASE("projectivity matches frozen values") {
  // [TRIVIAL] Regular(R) is free
  REQUIRE(is_projective(make_regular(make_zmod(6))).value);
  // [DERIVED] Cyclic(Z/6,{3}) ≅ Z/3 splits off Regular(Z/6) via idempotent 4
  REQUIRE(is_projective(make_cyclic(make_zmod(6), {3})).value);
  // [DERIVED] Cyclic(Z/4,{2}) ≅ Z/2 over Z/4 is not projective
  REQUIRE_FALSE(is_projective(make_cyclic(make_zmod(4), {2})).value);
  REQUIRE(is_projective(make_sub(make_regular(make_zmod(2)), {})).value);
  REQUIRE(throws_with(Errc::SizeBoundExceeded, [] {
    auto z12 = make_zmod(12);
    is_projective(make_dsum({make_cyclic(z12, {4}), make_cyclic(z12, {6})}));
  }));
}

TEST_CASE("sub-modules agree with cyclic quotients where isomorphic") {
  auto z6 = make_zmod(6);
  // {0,3} inside Regular(Z/6), as a standalone module, has the same canonical
  // table as the coset module Cyclic(Z/6,{2}).
  auto sub3 = make_sub(make_regular(z6), {3});
  REQUIRE(sub3->size() == 2);
  REQUIRE(sub3->same_table(*make_cyclic(z6, {2})));
  REQUIRE(to_text(sub3->pedigree()) == "sub(regular(zmod 6),[3])");
}

TEST_CASE("quotient modules") {
  auto r4 = make_regular(make_zmod(4));
  auto q0 = make_quotient_module(r4, {});
  REQUIRE(q0.module->same_table(*r4));
  auto qw = make_quotient_module(r4, {1});
  REQUIRE(qw.module->is_zero_module());
  // [DERIVED] Regular(Z/4)/{0,2} has size 2
  auto q2 = make_quotient_module(r4, {2});
  REQUIRE(q2.module->size() == 2);
  for (Elem k = 0; k < q2.module->size(); ++k) REQUIRE(q2.proj[q2.section[k]] == k);
  REQUIRE(to_text(q2.module->pedigree()) == "quotmod(regular(zmod 4),[2])");
}

TEST_CASE("modules can be recast over the quotient by their annihilator") {
  auto z6 = make_zmod(6);
  auto m2 = make_cyclic(z6, {2});  // Z/2 with Ann = {0,2,4}
  auto q = make_quotient(z6, ideal_span(z6, {2}));
  auto recast = make_module_over_quotient(m2, q);
  REQUIRE(recast->ring()->size() == 2);
  REQUIRE(recast->same_table(*make_regular(make_zmod(2))));
  // A quotient by an ideal that does not annihilate the module is rejected.
  REQUIRE(throws_with(Errc::AnnihilatorMismatch, [&] {
    make_module_over_quotient(m2, make_quotient(z6, ideal_span(z6, {3})));
  }));
}

TEST_CASE("free modules") {
  auto z4 = make_zmod(4);
  REQUIRE(make_free(z4, 0)->is_zero_module());
  REQUIRE(make_free(z4, 1)->same_table(*make_regular(z4)));
  auto f2 = make_free(make_zmod(2), 2);
  REQUIRE(f2->size() == 4);
  REQUIRE(minimal_generators(*f2).size() == 2);
}
