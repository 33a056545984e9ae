#pragma once
/**
 * Builders: construction descriptors -> concrete ring/module tables.
 *
 * A Builder memoizes by canonical descriptor text, so repeated subtrees
 * (e.g. the ring under every part of a direct sum) resolve to one shared
 * handle and rebuilding an already-seen descriptor is a map lookup.  All
 * construction goes through the table-level factories, so every build is
 * re-validated against the algebra axioms.
 */

#include <memory>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "fcalg/descriptor.hpp"
#include "fcalg/module.hpp"
#include "fcalg/ring.hpp"
#include "fcalg/trivext.hpp"
#include "fcalg/zring.hpp"

namespace fcalg {

class Builder {
 public:
  RingPtr ring(const RingDescPtr& d) {
    if (!d)
      throw AlgebraError(Errc::MalformedDescriptor, "null ring descriptor");
    const std::string key = to_text(d);
    if (auto it = rings_.find(key); it != rings_.end()) return it->second;
    RingPtr built =
        std::visit([&](const auto& n) { return this->build(n); }, d->node);
    rings_.emplace(key, built);
    return built;
  }

  ModulePtr module(const ModuleDescPtr& d) {
    if (!d)
      throw AlgebraError(Errc::MalformedDescriptor, "null module descriptor");
    const std::string key = to_text(d);
    if (auto it = modules_.find(key); it != modules_.end()) return it->second;
    ModulePtr built =
        std::visit([&](const auto& n) { return this->build(n); }, d->node);
    modules_.emplace(key, built);
    return built;
  }

 private:
  RingPtr build(const RingDescriptor::ZmodN& n) { return make_zmod(n.n); }

  RingPtr build(const RingDescriptor::Product& n) {
    std::vector<RingPtr> factors;
    factors.reserve(n.factors.size());
    for (const auto& f : n.factors) factors.push_back(ring(f));
    return make_product(factors);
  }

  RingPtr build(const RingDescriptor::PolyQuot& n) {
    return make_polyquot(n.p, n.coeffs);
  }

  RingPtr build(const RingDescriptor::Quotient& n) {
    const RingPtr base = ring(n.base);
    return make_quotient(base, ideal_span(base, n.generators)).ring;
  }

  RingPtr build(const RingDescriptor::TrivExt& n) {
    return trivial_extension(ring(n.base), module(n.module)).ring;
  }

  ModulePtr build(const ModuleDescriptor::Regular& n) {
    return make_regular(ring(n.ring));
  }

  ModulePtr build(const ModuleDescriptor::Cyclic& n) {
    return make_cyclic(ring(n.ring), n.generators);
  }

  ModulePtr build(const ModuleDescriptor::DirectSum& n) {
    std::vector<ModulePtr> parts;
    parts.reserve(n.parts.size());
    for (const auto& p : n.parts) parts.push_back(module(p));
    return parts.size() == 1 ? parts[0] : make_dsum(parts);
  }

  ModulePtr build(const ModuleDescriptor::Sub& n) {
    return make_sub(module(n.base), n.generators);
  }

  ModulePtr build(const ModuleDescriptor::QuotientMod& n) {
    return make_quotient_module(module(n.base), n.generators).module;
  }

  ModulePtr build(const ModuleDescriptor::ZAbelian& n) {
    return zmodule_as_finite_module(ZModule(n.orders));
  }

  std::unordered_map<std::string, RingPtr> rings_;
  std::unordered_map<std::string, ModulePtr> modules_;
};

/// One-shot conveniences; use a Builder directly when building many related
/// descriptors so shared subtrees unify.
inline RingPtr build_ring(const RingDescPtr& d) {
  Builder b;
  return b.ring(d);
}

inline ModulePtr build_module(const ModuleDescPtr& d) {
  Builder b;
  return b.module(d);
}

/// Rebuild the full trivial-extension record (base, module, embeddings) from
/// a trivial-extension descriptor; the ring cached by `b.ring(d)` is the same
/// table this record carries.
inline TrivialExtension build_trivext(const RingDescPtr& d, Builder& b) {
  const auto* node = std::get_if<RingDescriptor::TrivExt>(&d->node);
  if (!node)
    throw AlgebraError(Errc::MalformedDescriptor,
                       "expected a trivial-extension descriptor");
  return trivial_extension(b.ring(node->base), b.module(node->module));
}

}  // namespace fcalg
