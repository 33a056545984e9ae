// Command-line front end: decide membership properties of descriptor-defined
// rings and modules, print structural analyses, run the theorem-verification
// suite, and replay single instances against a registered check.
//
// Exit codes: 0 = completed / property true / no counterexamples,
//             1 = property false / counterexample found,
//             2 = error (syntax, unknown name, size bound, I/O).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fcalg/harness.hpp"
#include "fcalg/parse.hpp"

namespace {

using nlohmann::ordered_json;
using namespace fcalg;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw AlgebraError(Errc::MalformedDescriptor,
                       "cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out)
    throw AlgebraError(Errc::MalformedDescriptor,
                       "cannot write file '" + out_path + "'");
  out << content;
}

const char* witness_kind_name(Witness::Kind k) {
  switch (k) {
    case Witness::Kind::None: return "none";
    case Witness::Kind::Element: return "element";
    case Witness::Kind::ElementPair: return "element-pair";
    case Witness::Kind::Submodule: return "submodule";
    case Witness::Kind::SubmodulePair: return "submodule-pair";
    case Witness::Kind::Idempotent: return "idempotent";
  }
  return "none";
}

ordered_json witness_json(const Witness& w) {
  ordered_json j;
  j["kind"] = witness_kind_name(w.kind);
  if (!w.first.empty()) j["first"] = w.first;
  if (!w.second.empty()) j["second"] = w.second;
  return j;
}

std::string witness_text(const Witness& w) {
  if (w.kind == Witness::Kind::None) return "";
  std::string s = "  witness(";
  s += witness_kind_name(w.kind);
  s += ")";
  auto list = [&](const std::vector<Elem>& xs) {
    s += " [";
    for (size_t i = 0; i < xs.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(xs[i]);
    }
    s += "]";
  };
  if (!w.first.empty()) list(w.first);
  if (!w.second.empty()) list(w.second);
  return s;
}

const std::vector<std::string> kRingProperties = {
    "cs_ring", "clean", "chain", "zero_dimensional", "mp", "purified"};
const std::vector<std::string> kModuleProperties = {
    "cs",      "weakly_in",  "strongly_cs",
    "sin",     "quasi_continuous", "uniform",
    "projective", "scalar_idempotent_endos"};

bool is_listed(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

Verdict eval_property(const std::string& prop, const ParsedDescriptor& d,
                      Builder& b, size_t cap) {
  // Integer-base abelian groups route the shared class names to the
  // integer-side deciders.
  if (d.module) {
    if (const auto* z =
            std::get_if<ModuleDescriptor::ZAbelian>(&d.module->node)) {
      const ZModule Z(z->orders);
      if (prop == "cs") return z_is_cs(Z, cap);
      if (prop == "weakly_in") return z_is_weakly_in(Z, cap);
      if (prop == "strongly_cs") return z_is_strongly_cs(Z, cap);
    }
  }
  if (is_listed(kRingProperties, prop)) {
    if (!d.ring)
      throw AlgebraError(Errc::MalformedDescriptor,
                         "property '" + prop +
                             "' applies to ring descriptors");
    const RingPtr R = b.ring(d.ring);
    if (prop == "cs_ring")
      return is_cs_ring(R, CsRingMethod::Definitional, cap);
    if (prop == "clean") return is_clean(R);
    if (prop == "chain") return is_chain_ring(R, cap);
    const RingClassFlags f = ring_class_flags(R, cap);
    const bool v = prop == "zero_dimensional" ? f.zero_dimensional
                   : prop == "mp"             ? f.mp
                                              : f.purified;
    return Verdict{v, "residue-scan", Witness::none()};
  }
  if (is_listed(kModuleProperties, prop)) {
    // A ring descriptor is coerced to its regular module.
    const ModulePtr M =
        d.module ? b.module(d.module) : make_regular(b.ring(d.ring));
    if (prop == "cs") return is_cs_module(M, cap);
    if (prop == "weakly_in") return is_weakly_in(M, cap);
    if (prop == "strongly_cs") return is_strongly_cs(M, cap);
    if (prop == "sin") return is_sin(M, cap);
    if (prop == "quasi_continuous") return is_quasi_continuous(M, cap);
    if (prop == "uniform") return is_uniform(*M, cap);
    if (prop == "projective") return is_projective(M);
    if (prop == "scalar_idempotent_endos") return scalar_idempotent_endos(M);
  }
  throw AlgebraError(Errc::MalformedDescriptor,
                     "unknown property '" + prop + "'");
}

/// The positional target is either literal descriptor text or a path to a
/// file holding one descriptor per line ('#' comments allowed).
std::vector<std::pair<int, ParsedDescriptor>> load_targets(
    const std::string& target) {
  if (std::filesystem::exists(target))
    return parse_descriptor_lines(read_file(target));
  return {{1, parse_descriptor(target)}};
}

int run_check(const std::string& prop, const std::string& target,
              const std::string& format, const std::string& out_path) {
  Builder builder;
  const auto targets = load_targets(target);
  if (targets.empty())
    throw AlgebraError(Errc::MalformedDescriptor,
                       "no descriptors found in '" + target + "'");
  bool all_true = true;
  std::string text;
  ordered_json arr = ordered_json::array();
  for (const auto& [line, parsed] : targets) {
    const Verdict v = eval_property(prop, parsed, builder, 4096);
    all_true = all_true && v.value;
    const std::string desc =
        parsed.is_ring() ? to_text(parsed.ring) : to_text(parsed.module);
    if (format == "structured") {
      ordered_json e;
      e["descriptor"] = desc;
      e["property"] = prop;
      e["value"] = v.value;
      e["method"] = v.method;
      if (v.witness.kind != Witness::Kind::None)
        e["witness"] = witness_json(v.witness);
      arr.push_back(e);
    } else {
      text += desc + ": " + prop + " = " + (v.value ? "true" : "false") +
              "  [" + v.method + "]" + witness_text(v.witness) + "\n";
    }
  }
  emit(out_path, format == "structured" ? arr.dump(2) + "\n" : text);
  return all_true ? 0 : 1;
}

ordered_json analyze_ring(const RingPtr& R, size_t cap) {
  ordered_json j;
  j["kind"] = "ring";
  j["descriptor"] = to_text(R->pedigree());
  j["size"] = R->size();
  j["units"] = mask_elements(R->unit_mask());
  j["idempotents"] = R->idempotent_elements();
  j["nilpotents"] = mask_elements(R->nilpotent_mask());
  const StructuralIdeals s = structural_ideals(R, cap);
  j["nilradical"] = s.nilradical.to_vector();
  j["jacobson_radical"] = s.jacobson.to_vector();
  j["socle"] = s.socle.to_vector();
  if (!R->is_zero_ring()) {
    const SpectrumViews spec = prime_spectrum(R, cap);
    j["prime_count"] = spec.primes.size();
    j["maximal_count"] = spec.maximal.size();
    j["minimal_count"] = spec.minimal.size();
    const RingClassFlags f = ring_class_flags(R, cap);
    j["flags"] = {{"zero_dimensional", f.zero_dimensional},
                  {"mp", f.mp},
                  {"purified", f.purified}};
    j["cs_ring"] = is_cs_ring(R, CsRingMethod::Definitional, cap).value;
    j["clean"] = is_clean(R).value;
    j["chain"] = is_chain_ring(R, cap).value;
  }
  return j;
}

ordered_json analyze_module(const ModulePtr& M, size_t cap) {
  ordered_json j;
  j["kind"] = "module";
  j["descriptor"] = to_text(M->pedigree());
  j["size"] = M->size();
  j["ring"] = to_text(M->ring()->pedigree());
  j["annihilator"] =
      annihilator_in_ring(*M, full_mask(M->size())).to_vector();
  j["minimal_generators"] = minimal_generators(*M);
  j["submodule_count"] = M->submodule_lattice(cap).size();
  j["cs"] = is_cs_module(M, cap).value;
  j["weakly_in"] = is_weakly_in(M, cap).value;
  j["strongly_cs"] = is_strongly_cs(M, cap).value;
  j["sin"] = is_sin(M, cap).value;
  j["quasi_continuous"] = is_quasi_continuous(M, cap).value;
  j["uniform"] = is_uniform(*M, cap).value;
  return j;
}

std::string analyze_text(const ordered_json& j) {
  std::string s;
  for (auto it = j.begin(); it != j.end(); ++it)
    s += it.key() + ": " + it.value().dump() + "\n";
  return s;
}

int run_analyze(const std::string& target, const std::string& format,
                const std::string& out_path) {
  Builder builder;
  const auto targets = load_targets(target);
  std::string text;
  ordered_json arr = ordered_json::array();
  for (const auto& [line, parsed] : targets) {
    const ordered_json j =
        parsed.is_ring() ? analyze_ring(builder.ring(parsed.ring), 4096)
                         : analyze_module(builder.module(parsed.module), 4096);
    if (format == "structured")
      arr.push_back(j);
    else
      text += analyze_text(j) + "\n";
  }
  emit(out_path, format == "structured" ? arr.dump(2) + "\n" : text);
  return 0;
}

std::string report_text(const TheoremReport& r) {
  std::string s = r.theorem_id + " (" + r.paper_ref + "): " +
                  std::to_string(r.instances) + " instances, " +
                  std::to_string(r.agreements) + " agree, " +
                  std::to_string(r.skipped) + " skipped";
  s += r.counterexamples.empty() ? "  [ok]\n" : "  [COUNTEREXAMPLES]\n";
  for (const auto& c : r.counterexamples) {
    s += "  counterexample: " + c.instance + "  clauses=[";
    for (size_t i = 0; i < c.clauses.size(); ++i) {
      if (i) s += ",";
      s += c.clauses[i] ? "1" : "0";
    }
    s += "]\n";
  }
  return s;
}

int run_verify(const std::string& theorem, const FamilyConfig& cfg,
               const std::string& format, const std::string& out_path) {
  std::vector<TheoremReport> reports;
  if (theorem == "all") {
    reports = run_suite(cfg);
  } else {
    Family fam(cfg);
    reports.push_back(run_theorem(theorem, fam));
  }
  bool clean_run = true;
  std::string text;
  for (const TheoremReport& r : reports) {
    clean_run = clean_run && r.counterexamples.empty();
    text += report_text(r);
  }
  emit(out_path,
       format == "structured" ? suite_json(reports).dump(2) + "\n" : text);
  return clean_run ? 0 : 1;
}

int run_explain(const std::string& theorem, const std::string& target,
                const FamilyConfig& cfg, const std::string& format,
                const std::string& out_path) {
  const TheoremCheck& check = find_theorem(theorem);
  const ParsedDescriptor parsed = parse_descriptor(target);
  const Instance inst = parsed.is_ring() ? ring_instance(parsed.ring)
                                         : module_instance(parsed.module);
  Family fam(cfg);
  const std::vector<bool> clauses = check.clauses(inst, fam);
  const bool ok = agrees(check.relation, clauses);
  if (format == "structured") {
    ordered_json j;
    j["theorem_id"] = check.id;
    j["paper_ref"] = check.paper_ref;
    j["instance"] = inst.text;
    j["clause_names"] = check.clause_names;
    j["clauses"] = clauses;
    j["agrees"] = ok;
    emit(out_path, j.dump(2) + "\n");
  } else {
    std::string text = check.id + " (" + check.paper_ref + ") on " +
                       inst.text + "\n";
    for (size_t i = 0; i < clauses.size(); ++i)
      text += "  " + check.clause_names[i] + " = " +
              (clauses[i] ? "true" : "false") + "\n";
    text += ok ? "relation holds\n" : "relation violated: counterexample\n";
    emit(out_path, text);
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite commutative ring and module class explorer"};
  app.require_subcommand(1);

  std::string property, theorem = "all", config_path, format = "text",
              out_path, target;
  int max_ring_size = -1, max_module_size = -1;
  long seed = -1;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "output format: text or structured")
        ->check(CLI::IsMember({"text", "structured"}));
    cmd->add_option("--out", out_path, "write output to a file");
  };
  auto add_family = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path,
                    "key=value family configuration file");
    cmd->add_option("--max-ring-size", max_ring_size,
                    "largest ring carrier to enumerate");
    cmd->add_option("--max-module-size", max_module_size,
                    "largest direct-sum module carrier");
    cmd->add_option("--seed", seed, "recorded enumeration seed");
  };

  CLI::App* check = app.add_subcommand(
      "check", "decide one class property of one descriptor or file");
  check->add_option("--property", property, "property name")->required();
  check->add_option("target", target, "descriptor text or file path")
      ->required();
  add_common(check);

  CLI::App* analyze = app.add_subcommand(
      "analyze", "structural summary of one descriptor or file");
  analyze->add_option("target", target, "descriptor text or file path")
      ->required();
  add_common(analyze);

  CLI::App* verify = app.add_subcommand(
      "verify", "run a registered theorem check (or all) over the family");
  verify->add_option("--theorem", theorem, "theorem id or 'all'");
  add_family(verify);
  add_common(verify);

  CLI::App* explain = app.add_subcommand(
      "explain", "re-evaluate one instance against a theorem's clauses");
  explain->add_option("--theorem", theorem, "theorem id")->required();
  explain->add_option("target", target, "instance descriptor text")
      ->required();
  add_family(explain);
  add_common(explain);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) return run_check(property, target, format, out_path);
    if (analyze->parsed()) return run_analyze(target, format, out_path);

    FamilyConfig cfg;
    if (!config_path.empty())
      cfg = parse_family_config(read_file(config_path), cfg);
    if (max_ring_size >= 0) cfg.max_ring_size = max_ring_size;
    if (max_module_size >= 0) cfg.max_module_size = max_module_size;
    if (seed >= 0) cfg.seed = seed;
    cfg.validate();

    if (verify->parsed()) return run_verify(theorem, cfg, format, out_path);
    if (explain->parsed())
      return run_explain(theorem, target, cfg, format, out_path);
  } catch (const ParseError& e) {
    std::cerr << "syntax error: " << e.what() << "\n";
    return 2;
  } catch (const AlgebraError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
