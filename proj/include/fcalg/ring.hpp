#pragma once
/**
 * Finite commutative rings with identity, represented by explicit operation
 * tables over an index carrier, plus ideal arithmetic on element-set masks.
 *
 * Canonical element orderings are fixed by the constructors:
 *   - zmod n:       residues ascending, so element index == residue;
 *   - product:      tuples in lexicographic order (first factor major);
 *   - polyquot:     coefficient tuples (c0, c1, ..., c_{k-1}) in lexicographic
 *                   order, i.e. index = sum c_i p^(k-1-i);
 *   - quotient:     cosets ordered by least representative index.
 * The zero element always lands at index 0.
 */

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>

#include "fcalg/core.hpp"
#include "fcalg/descriptor.hpp"

namespace fcalg {

class FiniteRing;
using RingPtr = std::shared_ptr<const FiniteRing>;

class FiniteRing {
 public:
  /// Validates all commutative-ring-with-identity axioms; throws
  /// AxiomViolation / InvalidElement / SizeBoundExceeded on bad tables.
  FiniteRing(int size, std::vector<Elem> add_tab, std::vector<Elem> mul_tab,
             Elem zero, Elem one, RingDescPtr pedigree)
      : size_(size),
        add_(std::move(add_tab)),
        mul_(std::move(mul_tab)),
        zero_(zero),
        one_(one),
        pedigree_(std::move(pedigree)) {
    check_axioms();
    neg_.resize(size_);
    for (Elem a = 0; a < size_; ++a)
      for (Elem b = 0; b < size_; ++b)
        if (add(a, b) == zero_) neg_[a] = b;
    for (Elem a = 0; a < size_; ++a) {
      if (mul(a, a) == a) idempotents_.push_back(a);
      bool unit = false, nilpotent = false;
      Elem p = a;
      for (int k = 1; k <= size_ && !nilpotent; ++k) {
        if (p == zero_) nilpotent = true;
        p = mul(p, a);
      }
      for (Elem b = 0; b < size_ && !unit; ++b) unit = mul(a, b) == one_;
      if (unit) units_ |= bit(a);
      if (nilpotent) nilpotents_ |= bit(a);
    }
    principal_.resize(size_);
    for (Elem a = 0; a < size_; ++a) {
      Mask m = 0;
      for (Elem r = 0; r < size_; ++r) m |= bit(mul(a, r));
      principal_[a] = m;
    }
  }

  int size() const { return size_; }
  Elem add(Elem a, Elem b) const { return add_[static_cast<size_t>(a) * size_ + b]; }
  Elem mul(Elem a, Elem b) const { return mul_[static_cast<size_t>(a) * size_ + b]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg_[b]); }
  Elem zero() const { return zero_; }
  Elem one() const { return one_; }
  bool is_zero_ring() const { return size_ == 1; }
  const RingDescPtr& pedigree() const { return pedigree_; }

  const std::vector<Elem>& add_table() const { return add_; }
  const std::vector<Elem>& mul_table() const { return mul_; }

  /// Idempotent elements, ascending.
  const std::vector<Elem>& idempotent_elements() const { return idempotents_; }
  Mask unit_mask() const { return units_; }
  Mask nilpotent_mask() const { return nilpotents_; }
  /// aR as an element mask.
  Mask principal_ideal_mask(Elem a) const { return principal_[a]; }

  bool same_table(const FiniteRing& o) const {
    return size_ == o.size_ && zero_ == o.zero_ && one_ == o.one_ &&
           add_ == o.add_ && mul_ == o.mul_;
  }

  /// All ideals as masks, ascending by mask value (the canonical lattice
  /// order).  Cached after the first successful computation.
  const std::vector<Mask>& ideal_lattice(size_t cap = 4096) const {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    if (!lattice_) {
      lattice_ = std::make_shared<std::vector<Mask>>(detail::close_under_join(
          principal_, size_, add_.data(), cap, bit(zero_)));
    } else if (lattice_->size() > cap) {
      throw AlgebraError(Errc::SizeBoundExceeded,
                         "ideal lattice exceeds cap of " + std::to_string(cap));
    }
    return *lattice_;
  }

 private:
  void check_axioms() const {
    if (size_ < 1) throw AlgebraError(Errc::AxiomViolation, "empty carrier");
    if (size_ > kMaxCarrier)
      throw AlgebraError(Errc::SizeBoundExceeded,
                         "carrier size " + std::to_string(size_) +
                             " exceeds representation bound " +
                             std::to_string(kMaxCarrier));
    const size_t n = static_cast<size_t>(size_);
    if (add_.size() != n * n || mul_.size() != n * n)
      throw AlgebraError(Errc::AxiomViolation, "table shape mismatch");
    auto in_range = [&](Elem e) { return e >= 0 && e < size_; };
    if (!in_range(zero_) || !in_range(one_))
      throw AlgebraError(Errc::InvalidElement, "zero/one out of range");
    for (Elem e : add_)
      if (!in_range(e))
        throw AlgebraError(Errc::InvalidElement, "addition table entry out of range");
    for (Elem e : mul_)
      if (!in_range(e))
        throw AlgebraError(Errc::InvalidElement, "multiplication table entry out of range");
    auto A = [&](Elem a, Elem b) { return add_[static_cast<size_t>(a) * size_ + b]; };
    auto M = [&](Elem a, Elem b) { return mul_[static_cast<size_t>(a) * size_ + b]; };
    for (Elem a = 0; a < size_; ++a) {
      if (A(a, zero_) != a)
        throw AlgebraError(Errc::AxiomViolation, "additive identity fails");
      if (M(a, one_) != a)
        throw AlgebraError(Errc::AxiomViolation, "multiplicative identity fails");
      bool has_neg = false;
      for (Elem b = 0; b < size_; ++b) has_neg |= A(a, b) == zero_;
      if (!has_neg)
        throw AlgebraError(Errc::AxiomViolation, "additive inverse missing");
    }
    for (Elem a = 0; a < size_; ++a)
      for (Elem b = 0; b < size_; ++b) {
        if (A(a, b) != A(b, a))
          throw AlgebraError(Errc::AxiomViolation, "addition not commutative");
        if (M(a, b) != M(b, a))
          throw AlgebraError(Errc::AxiomViolation, "multiplication not commutative");
      }
    for (Elem a = 0; a < size_; ++a)
      for (Elem b = 0; b < size_; ++b)
        for (Elem c = 0; c < size_; ++c) {
          if (A(A(a, b), c) != A(a, A(b, c)))
            throw AlgebraError(Errc::AxiomViolation, "addition not associative");
          if (M(M(a, b), c) != M(a, M(b, c)))
            throw AlgebraError(Errc::AxiomViolation, "multiplication not associative");
          if (M(a, A(b, c)) != A(M(a, b), M(a, c)))
            throw AlgebraError(Errc::AxiomViolation, "distributivity fails");
        }
  }

  int size_;
  std::vector<Elem> add_, mul_, neg_;
  Elem zero_, one_;
  RingDescPtr pedigree_;
  std::vector<Elem> idempotents_;
  Mask units_ = 0, nilpotents_ = 0;
  std::vector<Mask> principal_;
  mutable std::mutex cache_mutex_;
  mutable std::shared_ptr<std::vector<Mask>> lattice_;
};

/// Same ring: shared handle, or identical operation tables.
inline bool same_ring(const RingPtr& a, const RingPtr& b) {
  return a == b || (a && b && a->same_table(*b));
}

// ---------------------------------------------------------------------------
// Ideal
// ---------------------------------------------------------------------------

/// Ideal of a FiniteRing, stored as an element-set mask.  Construction
/// validates closure (contains 0, closed under + and under ring scaling).
struct Ideal {
  RingPtr ring;
  Mask elements = 0;

  Ideal() = default;
  Ideal(RingPtr r, Mask m) : ring(std::move(r)), elements(m) { validate(); }

  int count() const { return fcalg::count(elements); }
  bool is_zero() const { return elements == bit(ring->zero()); }
  bool is_whole() const { return elements == full_mask(ring->size()); }
  bool is_proper() const { return !is_whole(); }
  bool contains(Elem e) const { return has(elements, e); }
  std::vector<Elem> to_vector() const { return mask_elements(elements); }

  void validate() const {
    if (!ring) throw AlgebraError(Errc::InvalidElement, "ideal without ring");
    const Mask full = full_mask(ring->size());
    if (elements & ~full)
      throw AlgebraError(Errc::InvalidElement, "ideal element out of range");
    if (!has(elements, ring->zero()))
      throw AlgebraError(Errc::AxiomViolation, "ideal misses zero");
    for (Elem a : mask_elements(elements)) {
      for (Elem b : mask_elements(elements))
        if (!has(elements, ring->add(a, b)))
          throw AlgebraError(Errc::AxiomViolation, "ideal not closed under +");
      for (Elem r = 0; r < ring->size(); ++r)
        if (!has(elements, ring->mul(r, a)))
          throw AlgebraError(Errc::AxiomViolation, "ideal not closed under scaling");
    }
  }
};

inline void require_same_ring(const RingPtr& a, const RingPtr& b,
                              const char* what) {
  if (!same_ring(a, b))
    throw AlgebraError(Errc::RingMismatch, what);
}

// ---------------------------------------------------------------------------
// Ideal arithmetic
// ---------------------------------------------------------------------------

/// Smallest ideal containing the generators.
inline Ideal ideal_span(const RingPtr& R, const std::vector<Elem>& gens) {
  Mask m = bit(R->zero());
  for (Elem g : gens) {
    if (g < 0 || g >= R->size())
      throw AlgebraError(Errc::InvalidElement,
                         "generator " + std::to_string(g) + " out of range");
    m = detail::pairwise_sum(m, R->principal_ideal_mask(g), R->size(),
                             R->add_table().data());
  }
  return Ideal(R, m);
}

inline Ideal ideal_span_mask(const RingPtr& R, Mask gens) {
  return ideal_span(R, mask_elements(gens));
}

/// I + J = {i + j}; already an ideal, no reclosure needed.
inline Ideal ideal_sum(const Ideal& I, const Ideal& J) {
  require_same_ring(I.ring, J.ring, "ideal_sum over different rings");
  return Ideal(I.ring,
               detail::pairwise_sum(I.elements, J.elements, I.ring->size(),
                                    I.ring->add_table().data()));
}

inline Ideal ideal_intersect(const Ideal& I, const Ideal& J) {
  require_same_ring(I.ring, J.ring, "ideal_intersect over different rings");
  return Ideal(I.ring, I.elements & J.elements);
}

/// Ann_R(S) = {r : r s = 0 for all s in S}.  Empty S annihilates to R.
inline Ideal annihilator_of_subset(const RingPtr& R, Mask S) {
  Mask out = 0;
  for (Elem r = 0; r < R->size(); ++r) {
    bool kills = true;
    for (Mask m = S; m && kills; m &= m - 1)
      kills = R->mul(r, std::countr_zero(m)) == R->zero();
    if (kills) out |= bit(r);
  }
  return Ideal(R, out);
}

inline std::vector<Ideal> all_ideals(const RingPtr& R, size_t cap = 4096) {
  std::vector<Ideal> out;
  for (Mask m : R->ideal_lattice(cap)) out.push_back(Ideal(R, m));
  return out;
}

// ---------------------------------------------------------------------------
// Structural ideals and the spectrum
// ---------------------------------------------------------------------------

struct StructuralIdeals {
  Ideal nilradical;
  Ideal jacobson;
  Ideal socle;
};

inline StructuralIdeals structural_ideals(const RingPtr& R, size_t cap = 4096) {
  const auto& lattice = R->ideal_lattice(cap);
  const Mask full = full_mask(R->size());
  Mask jac = full;
  // Maximal ideals: proper, not strictly contained in another proper ideal.
  for (Mask m : lattice) {
    if (m == full) continue;
    bool maximal = true;
    for (Mask o : lattice)
      if (o != full && o != m && (m & ~o) == 0) { maximal = false; break; }
    if (maximal) jac &= m;
  }
  // Socle: join of the minimal nonzero ideals.
  const Mask zero = bit(R->zero());
  Mask soc = zero;
  for (Mask m : lattice) {
    if (m == zero) continue;
    bool minimal = true;
    for (Mask o : lattice)
      if (o != zero && o != m && (o & ~m) == 0) { minimal = false; break; }
    if (minimal)
      soc = detail::pairwise_sum(soc, m, R->size(), R->add_table().data());
  }
  return {Ideal(R, R->nilpotent_mask()), Ideal(R, jac), Ideal(R, soc)};
}

/// P (proper) is prime iff a,b outside P implies ab outside P — i.e. the
/// quotient by P has no zero divisors.
inline bool is_prime_ideal(const Ideal& P) {
  const RingPtr& R = P.ring;
  if (P.is_whole()) return false;
  const Mask outside = full_mask(R->size()) & ~P.elements;
  for (Elem a : mask_elements(outside))
    for (Elem b : mask_elements(outside))
      if (P.contains(R->mul(a, b))) return false;
  return true;
}

struct SpectrumViews {
  std::vector<Ideal> primes;    // definitional
  std::vector<Ideal> maximal;   // maximal proper ideals
  std::vector<Ideal> minimal;   // minimal members of the prime set
};

inline SpectrumViews prime_spectrum(const RingPtr& R, size_t cap = 4096) {
  if (R->is_zero_ring())
    throw AlgebraError(Errc::ZeroRing, "zero ring has an empty spectrum");
  const auto& lattice = R->ideal_lattice(cap);
  const Mask full = full_mask(R->size());
  SpectrumViews out;
  for (Mask m : lattice) {
    Ideal I(R, m);
    if (is_prime_ideal(I)) out.primes.push_back(I);
    if (m != full) {
      bool maximal = true;
      for (Mask o : lattice)
        if (o != full && o != m && (m & ~o) == 0) { maximal = false; break; }
      if (maximal) out.maximal.push_back(I);
    }
  }
  for (const Ideal& p : out.primes) {
    bool minimal = true;
    for (const Ideal& q : out.primes)
      if (q.elements != p.elements && (q.elements & ~p.elements) == 0) {
        minimal = false;
        break;
      }
    if (minimal) out.minimal.push_back(p);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

inline RingPtr make_zmod(long n) {
  if (n < 1)
    throw AlgebraError(Errc::MalformedDescriptor,
                       "zmod requires a positive modulus");
  if (n > kMaxCarrier)
    throw AlgebraError(Errc::SizeBoundExceeded,
                       "zmod " + std::to_string(n) + " exceeds carrier bound");
  const int s = static_cast<int>(n);
  std::vector<Elem> add(static_cast<size_t>(s) * s), mul(static_cast<size_t>(s) * s);
  for (int a = 0; a < s; ++a)
    for (int b = 0; b < s; ++b) {
      add[static_cast<size_t>(a) * s + b] = (a + b) % s;
      mul[static_cast<size_t>(a) * s + b] = (a * b) % s;
    }
  return std::make_shared<FiniteRing>(s, std::move(add), std::move(mul), 0,
                                      s == 1 ? 0 : 1, zmod_desc(n));
}

inline RingPtr make_product(const std::vector<RingPtr>& factors) {
  if (factors.empty())
    throw AlgebraError(Errc::MalformedDescriptor, "empty ring product");
  long size = 1;
  for (const auto& f : factors) {
    size *= f->size();
    if (size > kMaxCarrier)
      throw AlgebraError(Errc::SizeBoundExceeded,
                         "product carrier exceeds bound");
  }
  const int s = static_cast<int>(size);
  const int k = static_cast<int>(factors.size());
  // index = sum over factors of coordinate * stride, first factor major.
  std::vector<int> stride(k, 1);
  for (int i = k - 2; i >= 0; --i) stride[i] = stride[i + 1] * factors[i + 1]->size();
  auto decode = [&](int idx, std::vector<Elem>& t) {
    for (int i = 0; i < k; ++i) {
      t[i] = idx / stride[i];
      idx %= stride[i];
    }
  };
  std::vector<Elem> add(static_cast<size_t>(s) * s), mul(static_cast<size_t>(s) * s);
  std::vector<Elem> ta(k), tb(k);
  for (int a = 0; a < s; ++a) {
    decode(a, ta);
    for (int b = 0; b < s; ++b) {
      decode(b, tb);
      int ra = 0, rm = 0;
      for (int i = 0; i < k; ++i) {
        ra += factors[i]->add(ta[i], tb[i]) * stride[i];
        rm += factors[i]->mul(ta[i], tb[i]) * stride[i];
      }
      add[static_cast<size_t>(a) * s + b] = ra;
      mul[static_cast<size_t>(a) * s + b] = rm;
    }
  }
  int one = 0;
  std::vector<RingDescPtr> fdescs;
  for (int i = 0; i < k; ++i) {
    one += factors[i]->one() * stride[i];
    fdescs.push_back(factors[i]->pedigree());
  }
  return std::make_shared<FiniteRing>(s, std::move(add), std::move(mul), 0, one,
                                      product_desc(std::move(fdescs)));
}

namespace detail {
inline bool is_prime_long(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}
}  // namespace detail

/// (Z/p)[x] / (f) for a monic modulus f = c0 + c1 x + ... + x^k, k >= 1.
inline RingPtr make_polyquot(long p, const std::vector<long>& coeffs) {
  if (!detail::is_prime_long(p))
    throw AlgebraError(Errc::MalformedDescriptor,
                       "polyquot characteristic must be prime");
  if (coeffs.size() < 2)
    throw AlgebraError(Errc::MalformedDescriptor,
                       "polyquot modulus must have degree >= 1");
  const int k = static_cast<int>(coeffs.size()) - 1;
  if (coeffs[k] != 1)
    throw AlgebraError(Errc::MalformedDescriptor, "polyquot modulus must be monic");
  for (long c : coeffs)
    if (c < 0 || c >= p)
      throw AlgebraError(Errc::MalformedDescriptor,
                         "polyquot coefficients must lie in [0, p)");
  long size = 1;
  for (int i = 0; i < k; ++i) {
    size *= p;
    if (size > kMaxCarrier)
      throw AlgebraError(Errc::SizeBoundExceeded,
                         "polyquot carrier exceeds bound");
  }
  const int s = static_cast<int>(size);
  // Carrier: coefficient tuples (c0, ..., c_{k-1}) in lexicographic order.
  auto decode = [&](int idx, std::vector<long>& c) {
    for (int i = k - 1; i >= 0; --i) {
      c[i] = idx % p;
      idx /= static_cast<int>(p);
    }
  };
  auto encode = [&](const std::vector<long>& c) {
    int idx = 0;
    for (int i = 0; i < k; ++i) idx = idx * static_cast<int>(p) + static_cast<int>(c[i]);
    return idx;
  };
  std::vector<Elem> add(static_cast<size_t>(s) * s), mul(static_cast<size_t>(s) * s);
  std::vector<long> ca(k), cb(k), sum(k), prod(2 * k - 1);
  for (int a = 0; a < s; ++a) {
    decode(a, ca);
    for (int b = 0; b < s; ++b) {
      decode(b, cb);
      for (int i = 0; i < k; ++i) sum[i] = (ca[i] + cb[i]) % p;
      add[static_cast<size_t>(a) * s + b] = encode(sum);
      std::fill(prod.begin(), prod.end(), 0);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
      // Reduce modulo the monic f: x^k = -(c0 + ... + c_{k-1} x^{k-1}).
      for (int d = 2 * k - 2; d >= k; --d) {
        const long lead = prod[d];
        if (lead == 0) continue;
        prod[d] = 0;
        for (int i = 0; i < k; ++i)
          prod[d - k + i] = ((prod[d - k + i] - lead * coeffs[i]) % p + p * p) % p;
      }
      sum.assign(prod.begin(), prod.begin() + k);
      mul[static_cast<size_t>(a) * s + b] = encode(sum);
    }
  }
  std::vector<long> one(k, 0);
  one[0] = 1;  // constant coefficient; tuple slot 0 is the major digit
  return std::make_shared<FiniteRing>(s, std::move(add), std::move(mul), 0,
                                      encode(one), polyquot_desc(p, coeffs));
}

/// Quotient ring together with the projection map and the least-representative
/// section.
struct QuotientRing {
  RingPtr ring;
  std::vector<Elem> proj;     // base element -> coset index
  std::vector<Elem> section;  // coset index -> least representative
};

inline QuotientRing make_quotient(const RingPtr& R, const Ideal& I) {
  require_same_ring(R, I.ring, "quotient by an ideal of another ring");
  std::vector<Elem> proj(R->size(), -1), section;
  for (Elem x = 0; x < R->size(); ++x) {
    if (proj[x] >= 0) continue;
    const Elem id = static_cast<Elem>(section.size());
    section.push_back(x);
    for (Elem i : mask_elements(I.elements)) proj[R->add(x, i)] = id;
  }
  const int s = static_cast<int>(section.size());
  std::vector<Elem> add(static_cast<size_t>(s) * s), mul(static_cast<size_t>(s) * s);
  for (int a = 0; a < s; ++a)
    for (int b = 0; b < s; ++b) {
      add[static_cast<size_t>(a) * s + b] = proj[R->add(section[a], section[b])];
      mul[static_cast<size_t>(a) * s + b] = proj[R->mul(section[a], section[b])];
    }
  auto ring = std::make_shared<FiniteRing>(
      s, std::move(add), std::move(mul), proj[R->zero()], proj[R->one()],
      quot_desc(R->pedigree(), I.to_vector()));
  return {ring, std::move(proj), std::move(section)};
}

/// Corner ring eR for an idempotent e, realized as the quotient R/(1-e)R
/// (canonically isomorphic, and honest about its construction pedigree).
inline QuotientRing corner_ring(const RingPtr& R, Elem e) {
  if (e < 0 || e >= R->size())
    throw AlgebraError(Errc::InvalidElement, "corner idempotent out of range");
  if (R->mul(e, e) != e)
    throw AlgebraError(Errc::NotIdempotent,
                       "corner requires an idempotent element");
  const Elem f = R->sub(R->one(), e);
  return make_quotient(R, Ideal(R, R->principal_ideal_mask(f)));
}

/// The unique complete set of primitive orthogonal idempotents (the atoms of
/// the Boolean algebra of idempotents), ascending.
inline std::vector<Elem> peirce_idempotents(const RingPtr& R) {
  // Zero ring: the empty set is the complete set (1 = 0 = empty sum).
  const auto& idem = R->idempotent_elements();
  std::vector<Elem> atoms;
  for (Elem e : idem) {
    if (e == R->zero()) continue;
    bool atom = true;
    for (Elem f : idem) {
      if (f == R->zero() || f == e) continue;
      if (R->mul(e, f) == f) { atom = false; break; }  // 0 != f < e
    }
    if (atom) atoms.push_back(e);
  }
  // Completeness and orthogonality are structural facts; assert them.
  Elem sum = R->zero();
  for (size_t i = 0; i < atoms.size(); ++i) {
    sum = R->add(sum, atoms[i]);
    for (size_t j = i + 1; j < atoms.size(); ++j)
      if (R->mul(atoms[i], atoms[j]) != R->zero())
        throw AlgebraError(Errc::AxiomViolation,
                           "primitive idempotents not orthogonal");
  }
  if (sum != R->one())
    throw AlgebraError(Errc::AxiomViolation,
                       "primitive idempotents do not sum to 1");
  return atoms;
}

/// Every non-zero-divisor is a unit (always true for finite rings; the
/// operation exists so the degenerate direction can be asserted explicitly).
inline bool total_quotient_is_self(const RingPtr& R) {
  for (Elem r = 0; r < R->size(); ++r) {
    bool zero_divisor = false;
    for (Elem s = 0; s < R->size() && !zero_divisor; ++s)
      zero_divisor = s != R->zero() && R->mul(r, s) == R->zero();
    if (!zero_divisor && !has(R->unit_mask(), r)) return false;
  }
  return true;
}

}  // namespace fcalg
