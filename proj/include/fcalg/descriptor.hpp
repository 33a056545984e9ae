#pragma once
/**
 * Construction descriptors: also the pedigree a built ring/module carries.
 *
 * Descriptors are immutable trees.  `to_text` renders the canonical form
 * (all elements as canonical indices); the CLI parser accepts exactly this
 * form back, so descriptors embedded in reports round-trip.
 */

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "fcalg/core.hpp"

namespace fcalg {

struct RingDescriptor;
struct ModuleDescriptor;
using RingDescPtr = std::shared_ptr<const RingDescriptor>;
using ModuleDescPtr = std::shared_ptr<const ModuleDescriptor>;

struct RingDescriptor {
  struct ZmodN {
    long n;
  };
  struct Product {
    std::vector<RingDescPtr> factors;  // arity >= 1
  };
  struct PolyQuot {
    long p;                    // prime characteristic
    std::vector<long> coeffs;  // monic modulus c0 + c1 x + ... + x^k
  };
  struct Quotient {
    RingDescPtr base;
    std::vector<Elem> generators;  // generators of the ideal quotiented out
  };
  struct TrivExt {
    RingDescPtr base;
    ModuleDescPtr module;
  };

  using Node = std::variant<ZmodN, Product, PolyQuot, Quotient, TrivExt>;
  Node node;
};

struct ModuleDescriptor {
  struct Regular {
    RingDescPtr ring;
  };
  struct Cyclic {
    RingDescPtr ring;
    std::vector<Elem> generators;  // generators of the ideal quotiented out
  };
  struct DirectSum {
    std::vector<ModuleDescPtr> parts;  // arity >= 1, all over one ring
  };
  struct Sub {
    ModuleDescPtr base;
    std::vector<Elem> generators;
  };
  struct QuotientMod {
    ModuleDescPtr base;
    std::vector<Elem> generators;
  };
  struct ZAbelian {
    std::vector<long> orders;  // cyclic orders, each >= 2
  };

  using Node =
      std::variant<Regular, Cyclic, DirectSum, Sub, QuotientMod, ZAbelian>;
  Node node;
};

// --- convenience constructors ----------------------------------------------

inline RingDescPtr make_ring_desc(RingDescriptor::Node n) {
  return std::make_shared<const RingDescriptor>(RingDescriptor{std::move(n)});
}
inline ModuleDescPtr make_module_desc(ModuleDescriptor::Node n) {
  return std::make_shared<const ModuleDescriptor>(
      ModuleDescriptor{std::move(n)});
}

inline RingDescPtr zmod_desc(long n) {
  return make_ring_desc(RingDescriptor::ZmodN{n});
}
inline RingDescPtr product_desc(std::vector<RingDescPtr> fs) {
  return make_ring_desc(RingDescriptor::Product{std::move(fs)});
}
inline RingDescPtr polyquot_desc(long p, std::vector<long> coeffs) {
  return make_ring_desc(RingDescriptor::PolyQuot{p, std::move(coeffs)});
}
inline RingDescPtr quot_desc(RingDescPtr base, std::vector<Elem> gens) {
  return make_ring_desc(RingDescriptor::Quotient{std::move(base), std::move(gens)});
}
inline RingDescPtr trivext_desc(RingDescPtr base, ModuleDescPtr mod) {
  return make_ring_desc(RingDescriptor::TrivExt{std::move(base), std::move(mod)});
}

inline ModuleDescPtr regular_desc(RingDescPtr r) {
  return make_module_desc(ModuleDescriptor::Regular{std::move(r)});
}
inline ModuleDescPtr cyclic_desc(RingDescPtr r, std::vector<Elem> gens) {
  return make_module_desc(ModuleDescriptor::Cyclic{std::move(r), std::move(gens)});
}
inline ModuleDescPtr dsum_desc(std::vector<ModuleDescPtr> parts) {
  return make_module_desc(ModuleDescriptor::DirectSum{std::move(parts)});
}
inline ModuleDescPtr sub_desc(ModuleDescPtr base, std::vector<Elem> gens) {
  return make_module_desc(ModuleDescriptor::Sub{std::move(base), std::move(gens)});
}
inline ModuleDescPtr quotmod_desc(ModuleDescPtr base, std::vector<Elem> gens) {
  return make_module_desc(
      ModuleDescriptor::QuotientMod{std::move(base), std::move(gens)});
}
inline ModuleDescPtr zabelian_desc(std::vector<long> orders) {
  return make_module_desc(ModuleDescriptor::ZAbelian{std::move(orders)});
}

// --- canonical text ---------------------------------------------------------

std::string to_text(const RingDescPtr& d);
std::string to_text(const ModuleDescPtr& d);

namespace detail {
template <class T>
inline std::string int_list(const std::vector<T>& xs) {
  std::string s = "[";
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(xs[i]);
  }
  return s + "]";
}
}  // namespace detail

inline std::string to_text(const RingDescPtr& d) {
  using R = RingDescriptor;
  return std::visit(
      [](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, R::ZmodN>) {
          return "zmod " + std::to_string(v.n);
        } else if constexpr (std::is_same_v<V, R::Product>) {
          std::string s = "product(";
          for (size_t i = 0; i < v.factors.size(); ++i) {
            if (i) s += ",";
            s += to_text(v.factors[i]);
          }
          return s + ")";
        } else if constexpr (std::is_same_v<V, R::PolyQuot>) {
          return "polyquot(" + std::to_string(v.p) + "," +
                 detail::int_list(v.coeffs) + ")";
        } else if constexpr (std::is_same_v<V, R::Quotient>) {
          return "quot(" + to_text(v.base) + "," +
                 detail::int_list(v.generators) + ")";
        } else {
          return "trivext(" + to_text(v.base) + "," + to_text(v.module) + ")";
        }
      },
      d->node);
}

inline std::string to_text(const ModuleDescPtr& d) {
  using M = ModuleDescriptor;
  return std::visit(
      [](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, M::Regular>) {
          return "regular(" + to_text(v.ring) + ")";
        } else if constexpr (std::is_same_v<V, M::Cyclic>) {
          return "cyclic(" + to_text(v.ring) + "," +
                 detail::int_list(v.generators) + ")";
        } else if constexpr (std::is_same_v<V, M::DirectSum>) {
          std::string s = "dsum(";
          for (size_t i = 0; i < v.parts.size(); ++i) {
            if (i) s += ",";
            s += to_text(v.parts[i]);
          }
          return s + ")";
        } else if constexpr (std::is_same_v<V, M::Sub>) {
          return "sub(" + to_text(v.base) + "," +
                 detail::int_list(v.generators) + ")";
        } else if constexpr (std::is_same_v<V, M::QuotientMod>) {
          return "quotmod(" + to_text(v.base) + "," +
                 detail::int_list(v.generators) + ")";
        } else {
          return "zabelian(" + detail::int_list(v.orders) + ")";
        }
      },
      d->node);
}

}  // namespace fcalg
