#include "fcalg/parse.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "fcalg/build.hpp"
#include "fcalg/deciders.hpp"
#include "test_support.hpp"

using namespace fcalg;
using namespace testsupport;

namespace {

std::string round_trip(const std::string& text) {
  ParsedDescriptor p = parse_descriptor(text);
  return p.is_ring() ? to_text(p.ring) : to_text(p.module);
}

struct ErrorExpectation {
  std::string text;
  int column;
  std::string expected;
};

}  // namespace

TEST_CASE("canonical descriptor texts round-trip through the parser") {
  const std::vector<std::string> canonical = {
      "zmod 6",
      "zmod 1",
      "product(zmod 2,zmod 3)",
      "product(zmod 2,zmod 2,zmod 2)",
      "polyquot(2,[0,0,1])",
      "polyquot(3,[0,0,0,1])",
      "quot(zmod 12,[0,4,8])",
      "quot(product(zmod 4,zmod 2),[0])",
      "trivext(zmod 2,regular(zmod 2))",
      "trivext(zmod 6,cyclic(zmod 6,[2]))",
      "trivext(zmod 2,dsum(regular(zmod 2),regular(zmod 2)))",
      "regular(zmod 6)",
      "regular(polyquot(2,[0,0,1]))",
      "cyclic(zmod 6,[2])",
      "cyclic(zmod 8,[])",
      "dsum(cyclic(zmod 6,[2]),cyclic(zmod 6,[3]))",
      "dsum(regular(zmod 2))",
      "sub(regular(zmod 8),[2])",
      "quotmod(dsum(regular(zmod 2),regular(zmod 2)),[1])",
      "zabelian([2,12])",
      "zabelian([6])",
      "regular(trivext(zmod 2,regular(zmod 2)))",
  };
  for (const std::string& text : canonical) {
    INFO(text);
    CHECK(round_trip(text) == text);
  }
}

TEST_CASE("whitespace between tokens is insignificant") {
  CHECK(round_trip("  zmod   6 ") == "zmod 6");
  CHECK(round_trip("trivext(zmod 2, regular(zmod 2))") ==
        "trivext(zmod 2,regular(zmod 2))");
  CHECK(round_trip("dsum( cyclic( zmod 6 , [ 2 ] ) , cyclic(zmod 6,[3]) )") ==
        "dsum(cyclic(zmod 6,[2]),cyclic(zmod 6,[3]))");
  CHECK(round_trip("zabelian([ 2 , 12 ])") == "zabelian([2,12])");
}

TEST_CASE("syntax errors carry a 1-based column and the expected token") {
  const std::vector<ErrorExpectation> cases = {
      {"zmod", 5, "integer"},
      {"", 1, "descriptor keyword"},
      {"42", 1, "descriptor keyword"},
      {"frobnicate(1)", 1, "descriptor keyword"},
      {"zmod x", 6, "integer"},
      {"zmod 6 extra", 8, "end of input"},
      {"product(zmod 2", 15, "',' or ')'"},
      {"product(zmod 2;zmod 3)", 15, "',' or ')'"},
      {"product(3)", 9, "descriptor keyword"},
      {"product(regular(zmod 2))", 9, "ring descriptor keyword"},
      {"cyclic(zmod 6)", 14, "','"},
      {"cyclic(zmod 6,2)", 15, "'['"},
      {"zabelian(2)", 10, "'['"},
      {"zabelian([2,12)", 15, "',' or ']'"},
      {"polyquot(2,[0,0,1)", 18, "',' or ']'"},
      {"trivext(zmod 2,zmod 2)", 16, "module descriptor keyword"},
      {"sub(regular(zmod 4),[0,2]", 26, "')'"},
  };
  for (const ErrorExpectation& c : cases) {
    INFO(c.text);
    try {
      parse_descriptor(c.text);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 1);
      CHECK(e.column() == c.column);
      CHECK(e.expected() == c.expected);
    }
  }
}

TEST_CASE("starting line number seeds error positions") {
  try {
    parse_descriptor("zmod", 7);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 7);
    CHECK(e.column() == 5);
  }
  try {
    parse_descriptor("product(zmod 2,frob)", 3);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 16);
    CHECK(e.expected() == "ring descriptor keyword");
  }
}

TEST_CASE("descriptor files: one per line, hash comments, blank lines") {
  const std::string content =
      "# header comment\n"
      "zmod 6\n"
      "\n"
      "   \t\n"
      "cyclic(zmod 4,[2]) # trailing note\n"
      "zabelian([2,3])\n";
  auto parsed = parse_descriptor_lines(content);
  REQUIRE(parsed.size() == 3);
  CHECK(parsed[0].first == 2);
  CHECK(to_text(parsed[0].second.ring) == "zmod 6");
  CHECK(parsed[1].first == 5);
  CHECK(to_text(parsed[1].second.module) == "cyclic(zmod 4,[2])");
  CHECK(parsed[2].first == 6);
  CHECK(to_text(parsed[2].second.module) == "zabelian([2,3])");

  try {
    parse_descriptor_lines("zmod 2\nzmod\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 5);
  }
}

TEST_CASE("builder realizes parsed descriptors and unifies shared subtrees") {
  Builder b;
  const RingPtr z6 = b.ring(parse_descriptor("zmod 6").ring);
  CHECK(z6->size() == 6);
  CHECK(b.ring(parse_descriptor("zmod 6").ring).get() == z6.get());

  const ModulePtr pair =
      b.module(parse_descriptor("dsum(cyclic(zmod 6,[2]),cyclic(zmod 6,[3]))")
                   .module);
  CHECK(pair->size() == 6);
  CHECK(pair->ring().get() == z6.get());

  const ModulePtr za = b.module(parse_descriptor("zabelian([2,3])").module);
  CHECK(za->size() == 6);
  CHECK(za->ring()->size() == 6);

  const RingPtr dual =
      b.ring(parse_descriptor("trivext(zmod 2,regular(zmod 2))").ring);
  const RingPtr poly = b.ring(parse_descriptor("polyquot(2,[0,0,1])").ring);
  CHECK(dual->same_table(*poly));

  const RingPtr q = b.ring(parse_descriptor("quot(zmod 12,[4])").ring);
  CHECK(q->size() == 4);
  CHECK(q->same_table(*b.ring(parse_descriptor("zmod 4").ring)));

  TrivialExtension ext =
      build_trivext(parse_descriptor("trivext(zmod 6,cyclic(zmod 6,[2]))").ring,
                    b);
  CHECK(ext.ring->size() == 12);
  CHECK(ext.base.get() == z6.get());
  CHECK(is_cs_ring(ext.ring).value);

  CHECK_THROWS_AS(build_trivext(parse_descriptor("zmod 4").ring, b),
                  AlgebraError);
}

TEST_CASE("built tables re-round-trip through their pedigree text") {
  const std::vector<std::string> texts = {
      "regular(zmod 6)",
      "cyclic(zmod 6,[2])",
      "sub(regular(zmod 8),[2])",
      "quotmod(regular(zmod 8),[4])",
      "dsum(cyclic(zmod 6,[2]),cyclic(zmod 6,[3]))",
      "zabelian([2,3])",
  };
  Builder b;
  for (const std::string& text : texts) {
    INFO(text);
    const ModulePtr m = b.module(parse_descriptor(text).module);
    const std::string rendered = to_text(m->pedigree());
    const ModulePtr again = b.module(parse_descriptor(rendered).module);
    CHECK(m->same_table(*again));
  }
}
