#pragma once
/**
 * Recursive-descent parser for the construction-descriptor grammar.  The
 * accepted language is exactly what `to_text` renders (plus insignificant
 * whitespace between tokens):
 *
 *   ring    := "zmod" INT
 *            | "product"  "(" ring { "," ring } ")"
 *            | "polyquot" "(" INT "," intlist ")"
 *            | "quot"     "(" ring "," intlist ")"
 *            | "trivext"  "(" ring "," module ")"
 *   module  := "regular"  "(" ring ")"
 *            | "cyclic"   "(" ring "," intlist ")"
 *            | "dsum"     "(" module { "," module } ")"
 *            | "sub"      "(" module "," intlist ")"
 *            | "quotmod"  "(" module "," intlist ")"
 *            | "zabelian" "(" intlist ")"
 *   intlist := "[" [ INT { "," INT } ] "]"
 *
 * Failures raise ParseError with a 1-based line/column and the expected
 * token; semantic validity (primality, element ranges, size bounds) is the
 * builders' job, not the parser's.
 */

#include <cctype>
#include <charconv>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fcalg/descriptor.hpp"

namespace fcalg {

/// Exactly one of the two fields is non-null.
struct ParsedDescriptor {
  RingDescPtr ring;
  ModuleDescPtr module;
  bool is_ring() const { return ring != nullptr; }
};

namespace detail {

class DescriptorScanner {
 public:
  DescriptorScanner(std::string_view text, int line)
      : text_(text), line_(line) {}

  void skip_ws() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t'))
      ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  /// 1-based column of the next unconsumed character.
  int column() {
    skip_ws();
    return static_cast<int>(pos_) + 1;
  }

  int line() const { return line_; }

  [[noreturn]] void fail(const std::string& expected) {
    throw ParseError(line_, column(), expected);
  }

  void expect(char c, const std::string& expected) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(expected);
    ++pos_;
  }

  /// Consume `c` if it is next; report whether it was.
  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string keyword() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < text_.size() &&
           std::islower(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ == start) fail("descriptor keyword");
    return std::string(text_.substr(start, pos_ - start));
  }

  long integer() {
    skip_ws();
    size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    long value = 0;
    const auto [ptr, ec] = std::from_chars(text_.data() + start,
                                           text_.data() + pos_, value);
    if (ec != std::errc() || ptr != text_.data() + pos_ || pos_ == start) {
      pos_ = start;
      fail("integer");
    }
    return value;
  }

  std::vector<long> int_list() {
    expect('[', "'['");
    std::vector<long> out;
    if (accept(']')) return out;
    out.push_back(integer());
    while (true) {
      skip_ws();
      if (accept(']')) return out;
      if (!accept(',')) fail("',' or ']'");
      out.push_back(integer());
    }
  }

 private:
  std::string_view text_;
  size_t pos_ = 0;
  int line_;
};

inline std::vector<Elem> to_elems(const std::vector<long>& xs) {
  return std::vector<Elem>(xs.begin(), xs.end());
}

inline bool is_ring_keyword(const std::string& kw) {
  return kw == "zmod" || kw == "product" || kw == "polyquot" ||
         kw == "quot" || kw == "trivext";
}

inline bool is_module_keyword(const std::string& kw) {
  return kw == "regular" || kw == "cyclic" || kw == "dsum" || kw == "sub" ||
         kw == "quotmod" || kw == "zabelian";
}

RingDescPtr parse_ring(DescriptorScanner& s);
ModuleDescPtr parse_module(DescriptorScanner& s);

inline RingDescPtr parse_ring_rest(DescriptorScanner& s,
                                   const std::string& kw) {
  if (kw == "zmod") return zmod_desc(s.integer());
  if (kw == "product") {
    s.expect('(', "'('");
    std::vector<RingDescPtr> factors;
    factors.push_back(parse_ring(s));
    while (!s.accept(')')) {
      if (!s.accept(',')) s.fail("',' or ')'");
      factors.push_back(parse_ring(s));
    }
    return product_desc(std::move(factors));
  }
  if (kw == "polyquot") {
    s.expect('(', "'('");
    const long p = s.integer();
    s.expect(',', "','");
    std::vector<long> coeffs = s.int_list();
    s.expect(')', "')'");
    return polyquot_desc(p, std::move(coeffs));
  }
  if (kw == "quot") {
    s.expect('(', "'('");
    RingDescPtr base = parse_ring(s);
    s.expect(',', "','");
    std::vector<Elem> gens = to_elems(s.int_list());
    s.expect(')', "')'");
    return quot_desc(std::move(base), std::move(gens));
  }
  // trivext
  s.expect('(', "'('");
  RingDescPtr base = parse_ring(s);
  s.expect(',', "','");
  ModuleDescPtr mod = parse_module(s);
  s.expect(')', "')'");
  return trivext_desc(std::move(base), std::move(mod));
}

inline ModuleDescPtr parse_module_rest(DescriptorScanner& s,
                                       const std::string& kw) {
  if (kw == "regular") {
    s.expect('(', "'('");
    RingDescPtr r = parse_ring(s);
    s.expect(')', "')'");
    return regular_desc(std::move(r));
  }
  if (kw == "cyclic") {
    s.expect('(', "'('");
    RingDescPtr r = parse_ring(s);
    s.expect(',', "','");
    std::vector<Elem> gens = to_elems(s.int_list());
    s.expect(')', "')'");
    return cyclic_desc(std::move(r), std::move(gens));
  }
  if (kw == "dsum") {
    s.expect('(', "'('");
    std::vector<ModuleDescPtr> parts;
    parts.push_back(parse_module(s));
    while (!s.accept(')')) {
      if (!s.accept(',')) s.fail("',' or ')'");
      parts.push_back(parse_module(s));
    }
    return dsum_desc(std::move(parts));
  }
  if (kw == "sub" || kw == "quotmod") {
    s.expect('(', "'('");
    ModuleDescPtr base = parse_module(s);
    s.expect(',', "','");
    std::vector<Elem> gens = to_elems(s.int_list());
    s.expect(')', "')'");
    return kw == "sub" ? sub_desc(std::move(base), std::move(gens))
                       : quotmod_desc(std::move(base), std::move(gens));
  }
  // zabelian
  s.expect('(', "'('");
  std::vector<long> orders = s.int_list();
  s.expect(')', "')'");
  return zabelian_desc(std::move(orders));
}

inline RingDescPtr parse_ring(DescriptorScanner& s) {
  const int at = s.column();
  const std::string kw = s.keyword();
  if (!is_ring_keyword(kw))
    throw ParseError(s.line(), at, "ring descriptor keyword");
  return parse_ring_rest(s, kw);
}

inline ModuleDescPtr parse_module(DescriptorScanner& s) {
  const int at = s.column();
  const std::string kw = s.keyword();
  if (!is_module_keyword(kw))
    throw ParseError(s.line(), at, "module descriptor keyword");
  return parse_module_rest(s, kw);
}

}  // namespace detail

/// Parse one descriptor (ring or module, decided by the leading keyword).
/// `line` seeds the error position for callers parsing multi-line sources.
inline ParsedDescriptor parse_descriptor(std::string_view text, int line = 1) {
  detail::DescriptorScanner s(text, line);
  const int at = s.column();
  const std::string kw = s.keyword();
  ParsedDescriptor out;
  if (detail::is_ring_keyword(kw)) {
    out.ring = detail::parse_ring_rest(s, kw);
  } else if (detail::is_module_keyword(kw)) {
    out.module = detail::parse_module_rest(s, kw);
  } else {
    throw ParseError(line, at, "descriptor keyword");
  }
  if (!s.at_end()) s.fail("end of input");
  return out;
}

/// Parse descriptor-file content: one descriptor per line, '#' starts a
/// comment, blank lines are skipped.  Returns (1-based line, descriptor)
/// pairs; errors carry the file line they occurred on.
inline std::vector<std::pair<int, ParsedDescriptor>> parse_descriptor_lines(
    std::string_view content) {
  std::vector<std::pair<int, ParsedDescriptor>> out;
  int line = 0;
  size_t pos = 0;
  while (pos <= content.size()) {
    const size_t nl = content.find('\n', pos);
    std::string_view raw =
        content.substr(pos, nl == std::string_view::npos ? content.size() - pos
                                                         : nl - pos);
    ++line;
    std::string_view body = raw.substr(0, raw.find('#'));
    if (body.find_first_not_of(" \t\r") != std::string_view::npos)
      out.emplace_back(line, parse_descriptor(body, line));
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return out;
}

}  // namespace fcalg
