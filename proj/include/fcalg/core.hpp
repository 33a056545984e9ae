#pragma once
/**
 * Shared primitives: carrier indices, element-set bitmasks, the error
 * taxonomy, and the join-closure routine behind every lattice computation.
 *
 * Carriers are tiny (at most 64 elements), so subsets of a carrier are
 * represented as 64-bit masks; bit i stands for the element with canonical
 * index i.  Every set-level operation (intersection, containment, join)
 * is then a handful of word operations, and "lexicographically least"
 * tie-breaking is just an ascending scan.
 */

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace fcalg {

/// Canonical index of an element within a carrier.
using Elem = int;

/// Subset of a carrier, one bit per element index.
using Mask = std::uint64_t;

/// Hard carrier bound imposed by the mask representation.
inline constexpr int kMaxCarrier = 64;

inline constexpr Mask bit(Elem i) { return Mask{1} << i; }

inline constexpr bool has(Mask m, Elem i) { return (m >> i) & 1u; }

inline int count(Mask m) { return std::popcount(m); }

/// Mask of a full carrier of n elements.
inline constexpr Mask full_mask(int n) {
  return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1;
}

inline std::vector<Elem> mask_elements(Mask m) {
  std::vector<Elem> out;
  out.reserve(static_cast<size_t>(std::popcount(m)));
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

inline Mask mask_of(const std::vector<Elem>& elems) {
  Mask m = 0;
  for (Elem e : elems) m |= bit(e);
  return m;
}

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

enum class Errc {
  MalformedDescriptor,
  SizeBoundExceeded,
  AxiomViolation,
  InvalidElement,
  RingMismatch,
  ZeroRing,
  ZeroModule,
  NotNested,
  ImproperIdeal,
  NotIdempotent,
  AnnihilatorMismatch,
  ContainmentViolation,
  UnknownTheorem,
  ResourceBound,
  SyntaxError,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::MalformedDescriptor: return "MalformedDescriptor";
    case Errc::SizeBoundExceeded: return "SizeBoundExceeded";
    case Errc::AxiomViolation: return "AxiomViolation";
    case Errc::InvalidElement: return "InvalidElement";
    case Errc::RingMismatch: return "RingMismatch";
    case Errc::ZeroRing: return "ZeroRing";
    case Errc::ZeroModule: return "ZeroModule";
    case Errc::NotNested: return "NotNested";
    case Errc::ImproperIdeal: return "ImproperIdeal";
    case Errc::NotIdempotent: return "NotIdempotent";
    case Errc::AnnihilatorMismatch: return "AnnihilatorMismatch";
    case Errc::ContainmentViolation: return "ContainmentViolation";
    case Errc::UnknownTheorem: return "UnknownTheorem";
    case Errc::ResourceBound: return "ResourceBound";
    case Errc::SyntaxError: return "SyntaxError";
  }
  return "UnknownError";
}

class AlgebraError : public std::runtime_error {
 public:
  AlgebraError(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

/// Syntax error with source position (1-based line/column) and expectation.
class ParseError : public AlgebraError {
 public:
  ParseError(int line, int column, const std::string& expected)
      : AlgebraError(Errc::SyntaxError,
                     "line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": expected " + expected),
        line_(line), column_(column), expected_(expected) {}
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& expected() const { return expected_; }

 private:
  int line_, column_;
  std::string expected_;
};

// ---------------------------------------------------------------------------
// Verdicts and witnesses
// ---------------------------------------------------------------------------

/// Evidence attached to a decider verdict.  `first`/`second` carry element
/// indices; for submodule kinds they list the member elements in ascending
/// order, for element/idempotent kinds a single index each.
struct Witness {
  enum class Kind {
    None,
    Element,
    ElementPair,
    Submodule,
    SubmodulePair,
    Idempotent,
  };
  Kind kind = Kind::None;
  std::vector<Elem> first;
  std::vector<Elem> second;

  static Witness none() { return {}; }
  static Witness element(Elem x) { return {Kind::Element, {x}, {}}; }
  static Witness element_pair(Elem x, Elem y) {
    return {Kind::ElementPair, {x}, {y}};
  }
  static Witness submodule(std::vector<Elem> xs) {
    return {Kind::Submodule, std::move(xs), {}};
  }
  static Witness submodule_pair(std::vector<Elem> xs, std::vector<Elem> ys) {
    return {Kind::SubmodulePair, std::move(xs), std::move(ys)};
  }
  static Witness idempotent(Elem e) { return {Kind::Idempotent, {e}, {}}; }
};

/// Decider outcome: the boolean, the algorithm tag that produced it, and a
/// witness (counterexample when false, certificate when true and available).
struct Verdict {
  bool value = false;
  std::string method;
  Witness witness;

  explicit operator bool() const { return value; }
};

// ---------------------------------------------------------------------------
// Join closure
// ---------------------------------------------------------------------------

namespace detail {

/// Pairwise-sum set {a + b : a in x, b in y} under the given addition table.
/// The sum of two subgroups/ideals/submodules is closed, so no re-closure
/// is needed when x and y already are ones.
inline Mask pairwise_sum(Mask x, Mask y, int n, const Elem* add) {
  Mask out = 0;
  for (Mask mx = x; mx; mx &= mx - 1) {
    const Elem a = std::countr_zero(mx);
    const Elem* row = add + static_cast<size_t>(a) * n;
    for (Mask my = y; my; my &= my - 1) out |= bit(row[std::countr_zero(my)]);
  }
  return out;
}

/// Closes the given atoms (plus the bottom object) under pairwise join.
/// Every member of the resulting lattice is a join of atoms, so closing
/// against atoms alone reaches the whole lattice.  Result is sorted
/// ascending by mask value — the canonical lattice order.  Throws when the
/// lattice would exceed `cap` members.
inline std::vector<Mask> close_under_join(const std::vector<Mask>& atoms,
                                          int n, const Elem* add, size_t cap,
                                          Mask bottom = bit(0)) {
  std::vector<Mask> work{bottom};
  std::unordered_set<Mask> seen{bottom};
  auto push = [&](Mask m) {
    if (!seen.insert(m).second) return;
    if (seen.size() > cap)
      throw AlgebraError(Errc::SizeBoundExceeded,
                         "lattice exceeds cap of " + std::to_string(cap) +
                             " members");
    work.push_back(m);
  };
  for (Mask a : atoms) push(a);
  for (size_t i = 0; i < work.size(); ++i)
    for (Mask a : atoms) push(pairwise_sum(work[i], a, n, add));
  std::vector<Mask> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail
}  // namespace fcalg
