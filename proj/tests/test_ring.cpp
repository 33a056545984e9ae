#include <catch2/catch_amalgamated.hpp>

#include "fcalg/ring.hpp"
#include "test_support.hpp"

using namespace fcalg;
using namespace testsupport;

namespace {

std::vector<RingPtr> small_ring_pool() {
  std::vector<RingPtr> pool;
  for (long n : {1L, 2L, 3L, 4L, 6L, 8L, 9L, 12L, 16L}) pool.push_back(make_zmod(n));
  pool.push_back(make_polyquot(2, {0, 0, 1}));  // F2[x]/(x^2)
  pool.push_back(make_polyquot(2, {1, 1, 1}));  // F4
  pool.push_back(make_polyquot(3, {0, 0, 1}));  // F3[x]/(x^2)
  pool.push_back(make_product({make_zmod(2), make_zmod(2)}));
  pool.push_back(make_product({make_zmod(2), make_zmod(3)}));
  pool.push_back(make_product({make_zmod(4), make_zmod(2)}));
  pool.push_back(make_product({make_zmod(2), make_zmod(2), make_zmod(2)}));
  return pool;
}

}  // namespace

TEST_CASE("zmod construction, bounds and pedigree") {
  auto z6 = make_zmod(6);
  REQUIRE(z6->size() == 6);
  REQUIRE(z6->zero() == 0);
  REQUIRE(z6->one() == 1);
  REQUIRE(z6->add(4, 5) == 3);
  REQUIRE(z6->mul(4, 5) == 2);
  REQUIRE(z6->neg(2) == 4);
  REQUIRE(to_text(z6->pedigree()) == "zmod 6");

  auto z1 = make_zmod(1);
  REQUIRE(z1->is_zero_ring());
  REQUIRE(z1->one() == z1->zero());

  REQUIRE(throws_with(Errc::MalformedDescriptor, [] { make_zmod(0); }));
  REQUIRE(throws_with(Errc::SizeBoundExceeded, [] { make_zmod(65); }));
}

TEST_CASE("table validation rejects non-rings") {
  auto z4 = make_zmod(4);
  auto good_add = z4->add_table();
  auto good_mul = z4->mul_table();

  SECTION("broken multiplicative identity") {
    auto mul = good_mul;
    mul[1 * 4 + 1] = 2;
    REQUIRE(throws_with(Errc::AxiomViolation, [&] {
      FiniteRing(4, good_add, mul, 0, 1, zmod_desc(4));
    }));
  }
  SECTION("broken commutativity") {
    auto mul = good_mul;
    mul[2 * 4 + 3] = 0;  // 3*2 stays 2, 2*3 becomes 0
    REQUIRE(throws_with(Errc::AxiomViolation, [&] {
      FiniteRing(4, good_add, mul, 0, 1, zmod_desc(4));
    }));
  }
  SECTION("entry out of range") {
    auto add = good_add;
    add[0] = 9;
    REQUIRE(throws_with(Errc::InvalidElement, [&] {
      FiniteRing(4, add, good_mul, 0, 1, zmod_desc(4));
    }));
  }
  SECTION("table shape mismatch") {
    REQUIRE(throws_with(Errc::AxiomViolation, [&] {
      FiniteRing(4, std::vector<Elem>(9, 0), good_mul, 0, 1, zmod_desc(4));
    }));
  }
}

TEST_CASE("ideal spans match frozen values") {
  auto z4 = make_zmod(4);
  auto z6 = make_zmod(6);
  // [DERIVED] span{} in Z/4 = {0}; span{2} in Z/4 = {0,2}
  REQUIRE(ideal_span(z4, {}).elements == mask_from({0}));
  REQUIRE(ideal_span(z4, {2}).elements == mask_from({0, 2}));
  // [DERIVED] span{3} in Z/6 = {0,3}; span{2} in Z/6 = {0,2,4}
  REQUIRE(ideal_span(z6, {3}).elements == mask_from({0, 3}));
  REQUIRE(ideal_span(z6, {2}).elements == mask_from({0, 2, 4}));
  REQUIRE(ideal_span(z6, {2, 3}).elements == full_mask(6));

  REQUIRE(throws_with(Errc::InvalidElement, [&] { ideal_span(z6, {6}); }));
}

TEST_CASE("ideal sum and intersection") {
  auto z6 = make_zmod(6);
  Ideal a = ideal_span(z6, {2});  // {0,2,4}
  Ideal b = ideal_span(z6, {3});  // {0,3}
  // [DERIVED] {0,2,4} + {0,3} = Z/6, intersection = {0}
  REQUIRE(ideal_sum(a, b).is_whole());
  REQUIRE(ideal_intersect(a, b).is_zero());

  auto other = make_zmod(4);
  REQUIRE(throws_with(Errc::RingMismatch, [&] {
    ideal_sum(a, ideal_span(other, {2}));
  }));
}

TEST_CASE("ideal constructor validates closure") {
  auto z4 = make_zmod(4);
  REQUIRE(throws_with(Errc::AxiomViolation, [&] { Ideal(z4, mask_from({0, 1})); }));
  REQUIRE(throws_with(Errc::AxiomViolation, [&] { Ideal(z4, mask_from({2})); }));
  REQUIRE(throws_with(Errc::InvalidElement, [&] { Ideal(z4, bit(5)); }));
}

TEST_CASE("annihilators match frozen values and are antitone") {
  auto z6 = make_zmod(6);
  // [DERIVED] Ann({0}) = R, Ann({3}) = {0,2,4}, Ann({1}) = {0}
  REQUIRE(annihilator_of_subset(z6, mask_from({0})).is_whole());
  REQUIRE(annihilator_of_subset(z6, mask_from({3})).elements == mask_from({0, 2, 4}));
  REQUIRE(annihilator_of_subset(z6, mask_from({1})).is_zero());
  REQUIRE(annihilator_of_subset(z6, 0).is_whole());

  // Antitone: S subset of T implies Ann(T) subset of Ann(S), all 2^6 subsets.
  for (Mask t = 0; t < (Mask{1} << 6); ++t) {
    const Mask ann_t = annihilator_of_subset(z6, t).elements;
    for (Mask s = t; ; s = (s - 1) & t) {  // all subsets s of t
      const Mask ann_s = annihilator_of_subset(z6, s).elements;
      REQUIRE((ann_t & ~ann_s) == 0);
      if (s == 0) break;
    }
  }
}

TEST_CASE("idempotents, units and nilpotents of the standard examples") {
  // [DERIVED] idempotents: Z/4 -> {0,1}; Z/6 -> {0,1,3,4}
  REQUIRE(make_zmod(4)->idempotent_elements() == std::vector<Elem>{0, 1});
  REQUIRE(make_zmod(6)->idempotent_elements() == std::vector<Elem>{0, 1, 3, 4});

  // F2[x]/(x^2): carrier (c0,c1) lexicographic -> 0, x, 1, 1+x.
  auto dual = make_polyquot(2, {0, 0, 1});
  REQUIRE(dual->one() == 2);
  REQUIRE(dual->mul(1, 1) == 0);  // x^2 = 0
  REQUIRE(dual->nilpotent_mask() == mask_from({0, 1}));
  REQUIRE(dual->unit_mask() == mask_from({2, 3}));

  // F4: a field, so every nonzero element is a unit and only 0 is nilpotent.
  auto f4 = make_polyquot(2, {1, 1, 1});
  REQUIRE(f4->one() == 2);
  REQUIRE(f4->mul(1, 1) == 3);  // x^2 = x + 1
  REQUIRE(f4->unit_mask() == mask_from({1, 2, 3}));
  REQUIRE(f4->nilpotent_mask() == mask_from({0}));
  REQUIRE(f4->idempotent_elements() == std::vector<Elem>{0, 2});
}

TEST_CASE("ideal lattice agrees with the brute-force subset oracle") {
  for (const auto& R : small_ring_pool()) {
    INFO("ring " << to_text(R->pedigree()));
    auto oracle = oracle_all_ideals(R);
    std::sort(oracle.begin(), oracle.end());
    REQUIRE(R->ideal_lattice() == oracle);
  }
}

TEST_CASE("ideal lattice respects the resource cap") {
  auto z6 = make_zmod(6);
  REQUIRE(throws_with(Errc::SizeBoundExceeded, [&] { z6->ideal_lattice(2); }));
  REQUIRE(z6->ideal_lattice().size() == 4);  // [DERIVED] one per divisor of 6
  REQUIRE(throws_with(Errc::SizeBoundExceeded, [&] { z6->ideal_lattice(2); }));
}

TEST_CASE("structural ideals match frozen values") {
  // [DERIVED] Z/4: nilradical = jacobson = socle = {0,2}
  auto s4 = structural_ideals(make_zmod(4));
  REQUIRE(s4.nilradical.elements == mask_from({0, 2}));
  REQUIRE(s4.jacobson.elements == mask_from({0, 2}));
  REQUIRE(s4.socle.elements == mask_from({0, 2}));

  // [DERIVED] Z/6: nilradical = jacobson = {0}, socle = whole ring
  auto s6 = structural_ideals(make_zmod(6));
  REQUIRE(s6.nilradical.is_zero());
  REQUIRE(s6.jacobson.is_zero());
  REQUIRE(s6.socle.is_whole());

  // [DERIVED] a field: nil = jac = {0}, socle = whole
  auto sf = structural_ideals(make_polyquot(2, {1, 1, 1}));
  REQUIRE(sf.nilradical.is_zero());
  REQUIRE(sf.jacobson.is_zero());
  REQUIRE(sf.socle.is_whole());

  // [DERIVED] F2[x]/(x^2): nil = jac = socle = {0, x}
  auto sd = structural_ideals(make_polyquot(2, {0, 0, 1}));
  REQUIRE(sd.nilradical.elements == mask_from({0, 1}));
  REQUIRE(sd.jacobson.elements == mask_from({0, 1}));
  REQUIRE(sd.socle.elements == mask_from({0, 1}));
}

TEST_CASE("nilradical lies inside the jacobson radical") {
  for (const auto& R : small_ring_pool()) {
    INFO("ring " << to_text(R->pedigree()));
    auto s = structural_ideals(R);
    REQUIRE((s.nilradical.elements & ~s.jacobson.elements) == 0);
  }
}

TEST_CASE("prime spectrum matches frozen values") {
  // [DERIVED] Spec(Z/6) = { {0,2,4}, {0,3} }
  auto v6 = prime_spectrum(make_zmod(6));
  std::vector<Mask> primes6;
  for (const auto& p : v6.primes) primes6.push_back(p.elements);
  std::sort(primes6.begin(), primes6.end());
  REQUIRE(primes6 == std::vector<Mask>{mask_from({0, 3}), mask_from({0, 2, 4})});

  // [DERIVED] Spec(Z/4) = { {0,2} }
  auto v4 = prime_spectrum(make_zmod(4));
  REQUIRE(v4.primes.size() == 1);
  REQUIRE(v4.primes[0].elements == mask_from({0, 2}));

  // [DERIVED] Spec of a field = { {0} }
  auto vf = prime_spectrum(make_polyquot(2, {1, 1, 1}));
  REQUIRE(vf.primes.size() == 1);
  REQUIRE(vf.primes[0].is_zero());

  REQUIRE(throws_with(Errc::ZeroRing, [] { prime_spectrum(make_zmod(1)); }));
}

TEST_CASE("spectrum views coincide for finite commutative rings") {
  for (const auto& R : small_ring_pool()) {
    if (R->is_zero_ring()) continue;
    INFO("ring " << to_text(R->pedigree()));
    auto v = prime_spectrum(R);
    auto masks = [](const std::vector<Ideal>& xs) {
      std::vector<Mask> ms;
      for (const auto& i : xs) ms.push_back(i.elements);
      std::sort(ms.begin(), ms.end());
      return ms;
    };
    REQUIRE(masks(v.primes) == masks(v.maximal));
    REQUIRE(masks(v.primes) == masks(v.minimal));
  }
}

TEST_CASE("product rings") {
  auto p = make_product({make_zmod(2), make_zmod(3)});
  REQUIRE(p->size() == 6);
  REQUIRE(p->zero() == 0);
  REQUIRE(p->one() == 4);  // tuple (1,1), first factor major
  REQUIRE(to_text(p->pedigree()) == "product(zmod 2,zmod 3)");

  // Oracle: explicit isomorphism search against Z/6.
  REQUIRE(find_ring_iso(p, make_zmod(6)).has_value());
  REQUIRE_FALSE(find_ring_iso(make_product({make_zmod(2), make_zmod(2)}),
                              make_zmod(4))
                    .has_value());

  REQUIRE(throws_with(Errc::MalformedDescriptor, [] { make_product({}); }));
  REQUIRE(throws_with(Errc::SizeBoundExceeded, [] {
    make_product({make_zmod(8), make_zmod(9)});
  }));
}

TEST_CASE("polyquot validation") {
  REQUIRE(throws_with(Errc::MalformedDescriptor, [] { make_polyquot(4, {0, 0, 1}); }));
  REQUIRE(throws_with(Errc::MalformedDescriptor, [] { make_polyquot(2, {1}); }));
  REQUIRE(throws_with(Errc::MalformedDescriptor, [] { make_polyquot(2, {0, 1, 2}); }));
  REQUIRE(throws_with(Errc::SizeBoundExceeded, [] {
    make_polyquot(2, std::vector<long>(9, 1));  // degree 8 -> 256 elements
  }));
  REQUIRE(to_text(make_polyquot(2, {0, 0, 1})->pedigree()) == "polyquot(2,[0,0,1])");
}

TEST_CASE("quotient rings match frozen values") {
  auto z12 = make_zmod(12);
  auto q = make_quotient(z12, ideal_span(z12, {6}));
  REQUIRE(q.ring->size() == 6);
  // Least-representative cosets make the table literally the mod-6 table.
  REQUIRE(same_ring(q.ring, make_zmod(6)));
  // Independent oracle: isomorphism search agrees.
  REQUIRE(find_ring_iso(q.ring, make_zmod(6)).has_value());
  REQUIRE(to_text(q.ring->pedigree()) == "quot(zmod 12,[0,6])");
  for (Elem k = 0; k < q.ring->size(); ++k) REQUIRE(q.proj[q.section[k]] == k);
  for (Elem x = 0; x < z12->size(); ++x) {
    REQUIRE(q.proj[x] >= 0);
    REQUIRE(q.proj[x] < q.ring->size());
  }

  auto z6 = make_zmod(6);
  auto q0 = make_quotient(z6, ideal_span(z6, {}));
  REQUIRE(q0.ring->same_table(*z6));

  // [DERIVED] Z/6 / span{3} has size 3 and no zero divisors.
  auto q3 = make_quotient(z6, ideal_span(z6, {3}));
  REQUIRE(q3.ring->size() == 3);
  for (Elem a = 0; a < 3; ++a)
    for (Elem b = 0; b < 3; ++b)
      if (a != q3.ring->zero() && b != q3.ring->zero())
        REQUIRE(q3.ring->mul(a, b) != q3.ring->zero());

  // Quotient by the whole ring is the zero ring.
  auto qw = make_quotient(z6, Ideal(z6, full_mask(6)));
  REQUIRE(qw.ring->is_zero_ring());
}

TEST_CASE("corner rings") {
  auto z6 = make_zmod(6);
  auto c3 = corner_ring(z6, 3);
  REQUIRE(c3.ring->size() == 2);
  REQUIRE(same_ring(c3.ring, make_zmod(2)));
  auto c4 = corner_ring(z6, 4);
  REQUIRE(c4.ring->size() == 3);
  REQUIRE(find_ring_iso(c4.ring, make_zmod(3)).has_value());
  REQUIRE(throws_with(Errc::NotIdempotent, [&] { corner_ring(z6, 2); }));
  REQUIRE(throws_with(Errc::InvalidElement, [&] { corner_ring(z6, 17); }));
  // Corner at 1 is the whole ring; corner at 0 is the zero ring.
  REQUIRE(corner_ring(z6, 1).ring->same_table(*z6));
  REQUIRE(corner_ring(z6, 0).ring->is_zero_ring());
}

TEST_CASE("peirce idempotents match frozen values") {
  // [DERIVED] peirce: Z/4 -> {1}; Z/6 -> {3,4}; Z/30 -> {6,10,15}
  REQUIRE(peirce_idempotents(make_zmod(4)) == std::vector<Elem>{1});
  REQUIRE(peirce_idempotents(make_zmod(6)) == std::vector<Elem>{3, 4});
  REQUIRE(peirce_idempotents(make_zmod(30)) == std::vector<Elem>{6, 10, 15});
  REQUIRE(peirce_idempotents(make_zmod(1)).empty());
}

TEST_CASE("peirce decomposition factors the ring as a product of corners") {
  for (const auto& R : small_ring_pool()) {
    if (R->is_zero_ring()) continue;
    INFO("ring " << to_text(R->pedigree()));
    auto atoms = peirce_idempotents(R);
    std::vector<QuotientRing> corners;
    std::vector<RingPtr> corner_rings;
    for (Elem e : atoms) {
      corners.push_back(corner_ring(R, e));
      corner_rings.push_back(corners.back().ring);
    }
    auto P = make_product(corner_rings);
    REQUIRE(P->size() == R->size());
    // Strides of the product indexing, first factor major.
    const int k = static_cast<int>(atoms.size());
    std::vector<int> stride(k, 1);
    for (int i = k - 2; i >= 0; --i)
      stride[i] = stride[i + 1] * corner_rings[i + 1]->size();
    auto phi = [&](Elem r) {
      int idx = 0;
      for (int i = 0; i < k; ++i) idx += corners[i].proj[r] * stride[i];
      return idx;
    };
    std::vector<bool> hit(P->size(), false);
    for (Elem r = 0; r < R->size(); ++r) {
      REQUIRE_FALSE(hit[phi(r)]);
      hit[phi(r)] = true;
    }
    REQUIRE(phi(R->zero()) == P->zero());
    REQUIRE(phi(R->one()) == P->one());
    for (Elem a = 0; a < R->size(); ++a)
      for (Elem b = 0; b < R->size(); ++b) {
        REQUIRE(phi(R->add(a, b)) == P->add(phi(a), phi(b)));
        REQUIRE(phi(R->mul(a, b)) == P->mul(phi(a), phi(b)));
      }
  }
}

TEST_CASE("span is monotone and idempotent") {
  for (const auto& R : small_ring_pool()) {
    if (R->size() > 12) continue;
    INFO("ring " << to_text(R->pedigree()));
    for (Elem a = 0; a < R->size(); ++a) {
      Ideal sa = ideal_span(R, {a});
      REQUIRE(ideal_span(R, sa.to_vector()).elements == sa.elements);
      for (Elem b = 0; b < R->size(); ++b) {
        Ideal sab = ideal_span(R, {a, b});
        REQUIRE((sa.elements & ~sab.elements) == 0);
      }
    }
  }
}

TEST_CASE("every finite commutative ring is its own total quotient ring") {
  for (const auto& R : small_ring_pool()) {
    INFO("ring " << to_text(R->pedigree()));
    REQUIRE(total_quotient_is_self(R));
  }
}
