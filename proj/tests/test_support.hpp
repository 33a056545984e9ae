#pragma once
/**
 * Independent brute-force oracles for the unit suites.  These deliberately
 * avoid the library's own lattice/closure machinery: ideals are found by
 * filtering ALL subsets, isomorphisms by backtracking search, so library
 * results are checked against a second, dumber computation.
 */

#include <functional>
#include <optional>
#include <vector>

#include "fcalg/ring.hpp"

namespace testsupport {

using namespace fcalg;

/// All ideals of R found by filtering every subset (rings of size <= 20).
inline std::vector<Mask> oracle_all_ideals(const RingPtr& R) {
  const int n = R->size();
  std::vector<Mask> out;
  for (Mask s = 0; s < (Mask{1} << n); ++s) {
    if (!has(s, R->zero())) continue;
    bool closed = true;
    for (Elem a = 0; a < n && closed; ++a) {
      if (!has(s, a)) continue;
      for (Elem b = 0; b < n && closed; ++b)
        if (has(s, b) && !has(s, R->add(a, b))) closed = false;
      for (Elem r = 0; r < n && closed; ++r)
        if (!has(s, R->mul(r, a))) closed = false;
    }
    if (closed) out.push_back(s);
  }
  return out;
}

/// Bijective ring isomorphism search by backtracking (sizes <= ~16).
inline std::optional<std::vector<Elem>> find_ring_iso(const RingPtr& A,
                                                      const RingPtr& B) {
  const int n = A->size();
  if (B->size() != n) return std::nullopt;
  std::vector<Elem> phi(n, -1);
  std::vector<bool> used(n, false);
  auto consistent = [&](Elem a) {
    for (Elem b = 0; b < n; ++b) {
      if (phi[b] < 0) continue;
      const Elem s = A->add(a, b), p = A->mul(a, b);
      if (phi[s] >= 0 && phi[s] != B->add(phi[a], phi[b])) return false;
      if (phi[p] >= 0 && phi[p] != B->mul(phi[a], phi[b])) return false;
      const Elem p2 = A->mul(b, a);
      if (phi[p2] >= 0 && phi[p2] != B->mul(phi[b], phi[a])) return false;
    }
    return true;
  };
  std::function<bool(Elem)> go = [&](Elem a) -> bool {
    while (a < n && phi[a] >= 0) ++a;
    if (a == n) {
      for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
          if (phi[A->add(x, y)] != B->add(phi[x], phi[y]) ||
              phi[A->mul(x, y)] != B->mul(phi[x], phi[y]))
            return false;
      return true;
    }
    for (Elem v = 0; v < n; ++v) {
      if (used[v]) continue;
      phi[a] = v;
      used[v] = true;
      if (consistent(a) && go(a + 1)) return true;
      phi[a] = -1;
      used[v] = false;
    }
    return false;
  };
  phi[A->zero()] = B->zero();
  used[B->zero()] = true;
  if (A->one() != A->zero()) {
    if (used[B->one()]) return std::nullopt;
    phi[A->one()] = B->one();
    used[B->one()] = true;
  }
  if (!go(0)) return std::nullopt;
  return phi;
}

inline Mask mask_from(std::initializer_list<Elem> xs) {
  Mask m = 0;
  for (Elem x : xs) m |= bit(x);
  return m;
}

/// True iff f() throws AlgebraError carrying exactly the given code.
inline bool throws_with(Errc code, const std::function<void()>& f) {
  try {
    f();
  } catch (const AlgebraError& e) {
    return e.code() == code;
  }
  return false;
}

}  // namespace testsupport
