#pragma once
/**
 * The integer base ring, observed only through its footprint on finite
 * abelian groups: ideal arithmetic on canonical generators (gcd/lcm), the
 * idempotent set {0, 1}, and residue idempotent lifting.  The ring itself is
 * never materialized as a table.
 *
 * A ZModule is a finite abelian group in canonical invariant-factor form
 * d_1 | d_2 | … | d_k (each ≥ 2), realized as the product of cyclic groups in
 * lexicographic order (first factor major), so subgroup scans reuse the same
 * mask machinery as the table-backed modules.
 */

#include <map>
#include <mutex>
#include <numeric>

#include "fcalg/core.hpp"
#include "fcalg/module.hpp"
#include "fcalg/ring.hpp"

namespace fcalg {

struct IntegerIdeal {
  long generator = 0;  // nZ; 0 = zero ideal, 1 = the whole ring

  IntegerIdeal() = default;
  explicit IntegerIdeal(long n) : generator(n < 0 ? -n : n) {}
  bool is_whole() const { return generator == 1; }
  bool is_zero() const { return generator == 0; }
  friend bool operator==(const IntegerIdeal&, const IntegerIdeal&) = default;
};

inline IntegerIdeal z_ideal_sum(IntegerIdeal a, IntegerIdeal b) {
  return IntegerIdeal(std::gcd(a.generator, b.generator));
}
inline IntegerIdeal z_ideal_intersect(IntegerIdeal a, IntegerIdeal b) {
  return IntegerIdeal(std::lcm(a.generator, b.generator));
}

/// Prime factorization (p, e) pairs in ascending p; n ≥ 1 (1 → empty).
inline std::vector<std::pair<long, long>> factorize(long n) {
  std::vector<std::pair<long, long>> out;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    long e = 0;
    while (n % p == 0) n /= p, ++e;
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

/// Canonical invariant factors d_1 | … | d_k of ⊕ Z/orders[i].
inline std::vector<long> normalize_invariant_factors(
    const std::vector<long>& orders) {
  std::map<long, std::vector<long>> primary;  // prime → exponents, desc
  for (long d : orders) {
    if (d < 2)
      throw AlgebraError(Errc::MalformedDescriptor,
                         "cyclic orders must be at least 2");
    for (auto [p, e] : factorize(d)) primary[p].push_back(e);
  }
  size_t k = 0;
  for (auto& [p, es] : primary) {
    std::sort(es.begin(), es.end(), std::greater<>());
    k = std::max(k, es.size());
  }
  std::vector<long> inv(k, 1);  // inv[0] = largest factor
  for (const auto& [p, es] : primary)
    for (size_t i = 0; i < es.size(); ++i)
      for (long j = 0; j < es[i]; ++j) inv[i] *= p;
  std::reverse(inv.begin(), inv.end());
  return inv;
}

class ZModule {
 public:
  explicit ZModule(const std::vector<long>& orders)
      : inv_(normalize_invariant_factors(orders)) {
    long total = 1;
    for (long d : inv_) {
      total *= d;
      if (total > kMaxCarrier)
        throw AlgebraError(Errc::SizeBoundExceeded,
                           "abelian group carrier exceeds bound");
    }
    size_ = static_cast<int>(total);
    add_.resize(static_cast<size_t>(size_) * size_);
    for (Elem x = 0; x < size_; ++x)
      for (Elem y = 0; y < size_; ++y) {
        Elem out = 0;
        long sx = x, sy = y;
        for (size_t i = 0; i < inv_.size(); ++i) {
          // Decode from most significant (first factor) downward.
          long stride = 1;
          for (size_t j = i + 1; j < inv_.size(); ++j) stride *= inv_[j];
          const long cx = sx / stride, cy = sy / stride;
          sx %= stride, sy %= stride;
          out = static_cast<Elem>(out * inv_[i] + (cx + cy) % inv_[i]);
        }
        add_[static_cast<size_t>(x) * size_ + y] = out;
      }
    order_.assign(size_, 1);
    cyc_.assign(size_, bit(0));
    for (Elem x = 0; x < size_; ++x) {
      Elem acc = x;
      long n = 1;
      while (acc != 0) {
        cyc_[x] |= bit(acc);
        acc = add(acc, x);
        ++n;
      }
      order_[x] = n;
    }
  }

  const std::vector<long>& invariant_factors() const { return inv_; }
  int size() const { return size_; }
  long exponent() const { return inv_.empty() ? 1 : inv_.back(); }
  bool is_trivial() const { return size_ == 1; }
  Elem add(Elem x, Elem y) const {
    return add_[static_cast<size_t>(x) * size_ + y];
  }
  /// k·x for any integer k (reduced mod the element order).
  Elem zmul(long k, Elem x) const {
    k %= order_[x];
    if (k < 0) k += order_[x];
    Elem acc = 0;
    for (long i = 0; i < k; ++i) acc = add(acc, x);
    return acc;
  }
  long order_of(Elem x) const { return order_[x]; }
  Mask cyclic_mask(Elem x) const { return cyc_[x]; }
  const std::vector<Elem>& add_table() const { return add_; }

  /// All subgroups as masks, ascending; cached after first call.
  const std::vector<Mask>& subgroup_lattice(size_t cap = 4096) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (!lattice_) {
      lattice_ = std::make_shared<std::vector<Mask>>(
          detail::close_under_join(cyc_, size_, add_.data(), cap, bit(0)));
    } else if (lattice_->size() > cap) {
      throw AlgebraError(Errc::SizeBoundExceeded,
                         "subgroup lattice exceeds cap of " +
                             std::to_string(cap));
    }
    return *lattice_;
  }

 private:
  std::vector<long> inv_;
  int size_ = 1;
  std::vector<Elem> add_;
  std::vector<long> order_;
  std::vector<Mask> cyc_;
  mutable std::mutex mu_;
  mutable std::shared_ptr<std::vector<Mask>> lattice_;
};

/// Ann_Z(S) = (lcm of element orders)·Z; Ann(∅) = Z.
inline IntegerIdeal z_annihilator(const ZModule& M, Mask S) {
  if (S & ~full_mask(M.size()))
    throw AlgebraError(Errc::InvalidElement,
                       "annihilator of elements outside the carrier");
  long g = 1;
  for (Elem x : mask_elements(S)) g = std::lcm(g, M.order_of(x));
  return IntegerIdeal(g);
}

namespace detail {

inline void require_nontrivial(const ZModule& M) {
  if (M.is_trivial())
    throw AlgebraError(Errc::ZeroModule,
                       "classification requires a nonzero group");
}

inline bool z_essential(const ZModule& M, Mask N, Mask L) {
  for (Elem x : mask_elements(L)) {
    if (x == 0) continue;
    if (!(M.cyclic_mask(x) & N & ~bit(0))) return false;
  }
  return true;
}

/// Subgroups that are direct summands (have a complement), sorted.
inline std::vector<Mask> z_summands(const ZModule& M,
                                    const std::vector<Mask>& lattice) {
  std::vector<Mask> out;
  for (Mask n : lattice) {
    const int cn = std::popcount(n);
    for (Mask k : lattice)
      if ((n & k) == bit(0) && cn * std::popcount(k) == M.size()) {
        out.push_back(n);
        break;
      }
  }
  return out;
}

}  // namespace detail

/// Weakly IN over Z: N ∩ L = 0 forces Ann(N) + Ann(L) = Z.
inline Verdict z_is_weakly_in(const ZModule& M, size_t cap = 4096) {
  detail::require_nontrivial(M);
  const auto& lat = M.subgroup_lattice(cap);
  std::vector<IntegerIdeal> ann(lat.size());
  for (size_t i = 0; i < lat.size(); ++i) ann[i] = z_annihilator(M, lat[i]);
  for (size_t i = 0; i < lat.size(); ++i)
    for (size_t j = i; j < lat.size(); ++j) {
      if ((lat[i] & lat[j]) != bit(0)) continue;
      if (!z_ideal_sum(ann[i], ann[j]).is_whole())
        return {false, "annihilator-pair-scan",
                Witness::submodule_pair(mask_elements(lat[i]),
                                        mask_elements(lat[j]))};
    }
  return {true, "annihilator-pair-scan", Witness::none()};
}

/// Strongly CS over Z: the only idempotents are 0 and 1, so every nonzero
/// subgroup must be essential in the whole group (uniformity).
inline Verdict z_is_strongly_cs(const ZModule& M, size_t cap = 4096) {
  detail::require_nontrivial(M);
  const Mask whole = full_mask(M.size());
  for (Mask n : M.subgroup_lattice(cap)) {
    if (n == bit(0)) continue;  // essential in the image {0} of e = 0
    if (!detail::z_essential(M, n, whole))
      return {false, "idempotent-image-scan",
              Witness::submodule(mask_elements(n))};
  }
  return {true, "idempotent-image-scan", Witness::none()};
}

/// CS over Z: every subgroup is essential in a direct summand.
inline Verdict z_is_cs(const ZModule& M, size_t cap = 4096) {
  detail::require_nontrivial(M);
  const auto& lat = M.subgroup_lattice(cap);
  const auto summands = detail::z_summands(M, lat);
  for (Mask n : lat) {
    bool extended = false;
    for (Mask d : summands)
      if ((n & ~d) == 0 && detail::z_essential(M, n, d)) {
        extended = true;
        break;
      }
    if (!extended)
      return {false, "definitional-lattice",
              Witness::submodule(mask_elements(n))};
  }
  return {true, "definitional-lattice", Witness::none()};
}

/// Do idempotents lift modulo nZ?  True iff the only solutions of
/// r² ≡ r (mod n) are r ≡ 0, 1.
inline Verdict z_idempotent_lift(long n) {
  if (n < 2)
    throw AlgebraError(Errc::MalformedDescriptor,
                       "residue modulus must be at least 2");
  for (long r = 2; r < n; ++r)
    if ((r * r) % n == r)
      return {false, "residue-scan", Witness::element(static_cast<Elem>(r))};
  return {true, "residue-scan", Witness::none()};
}

struct DedekindClassification {
  bool prime_power_cyclic = false;
  long p = 0;  // set when prime_power_cyclic
  long n = 0;
  bool coprime_primary_sum = false;
  std::vector<std::pair<long, long>> primary;  // {(p_i, n_i)}, ascending p_i
};

/// Thm-4.1/4.3-style classification of a finite abelian group: cyclic of
/// prime-power order, or a sum of cyclic prime-power groups with pairwise
/// distinct primes (equivalently: cyclic), or neither.
inline DedekindClassification classify_dedekind(const ZModule& M) {
  detail::require_nontrivial(M);
  DedekindClassification out;
  if (M.invariant_factors().size() == 1) {
    out.coprime_primary_sum = true;
    out.primary = factorize(M.invariant_factors().front());
    if (out.primary.size() == 1) {
      out.prime_power_cyclic = true;
      out.p = out.primary.front().first;
      out.n = out.primary.front().second;
    }
  }
  return out;
}

/// The same group as a table-backed module over Z/exponent (the action
/// factors through the exponent, and subgroups = submodules).
inline ModulePtr zmodule_as_finite_module(const ZModule& M) {
  auto ring = make_zmod(M.exponent());
  std::vector<Elem> act(static_cast<size_t>(ring->size()) * M.size());
  for (Elem r = 0; r < ring->size(); ++r)
    for (Elem x = 0; x < M.size(); ++x)
      act[static_cast<size_t>(r) * M.size() + x] = M.zmul(r, x);
  return std::make_shared<FiniteModule>(
      ring, M.size(), M.add_table(), std::move(act), 0,
      zabelian_desc(M.invariant_factors()));
}

}  // namespace fcalg
