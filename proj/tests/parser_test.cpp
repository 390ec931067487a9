#include <doctest.h>

#include "fixtures.hpp"
#include "test_strings.hpp"
#include "tdm/parser.hpp"

using namespace tdm;
using testing_support::corpus_path;
using testing_support::read_text;

namespace {

std::vector<std::string> codes(const ParseResult& r)
{
  std::vector<std::string> out;
  for (const auto& d : r.diagnostics) out.push_back(d.code);
  return out;
}

std::string wrap_types(const std::string& items) { return "features F { types { " + items + " } }"; }

} // namespace

TEST_CASE("Set corpus parses into the case-study model")
{
  auto r = parse_model(read_text(corpus_path("set.tdm")), "corpus/set.tdm");
  REQUIRE(r.model);
  CHECK(r.diagnostics.empty());
  const auto& m = *r.model;
  CHECK(m.meta.name == "SetFeatures");
  CHECK(m.meta.features.size() == 2);
  CHECK(m.meta.relations.size() == 2);
  CHECK_FALSE(m.meta.relations[0].semantics);
  REQUIRE(m.meta.configurations.size() == 1);
  CHECK(m.meta.configurations[0].required.size() == 2);
  REQUIRE(m.product);
  CHECK(m.product->interfaces.size() == 1);
  CHECK(m.product->implementations.size() == 4);
  const auto& iface = m.product->interfaces[0];
  CHECK(iface.used_features == std::vector<std::string>{"Allocation", "Discipline"});
  REQUIRE(iface.members[0].guard);
  CHECK(iface.members[0].guard->literal.value == "static");
  CHECK_FALSE(iface.members[1].guard);
  CHECK(iface.members[1].params.size() == 1);
  CHECK(iface.members[2].type_text == "elem");
}

TEST_CASE("compact corpus parses to the same structure")
{
  auto canonical = parse_model(read_text(corpus_path("set.tdm")), "a");
  auto compact = parse_model(read_text(corpus_path("set_compact.tdm")), "b");
  REQUIRE(canonical.model);
  REQUIRE(compact.model);
  CHECK(structurally_equal(*canonical.model, *compact.model));
}

TEST_CASE("minimal model")
{
  auto r = parse_model("features F { types { } }", "t.tdm");
  REQUIRE(r.model);
  CHECK(r.model->meta.features.empty());
  CHECK_FALSE(r.model->product);
}

TEST_CASE("empty value set is E0103")
{
  auto r = parse_model("features F { types { feature A = { } } }", "t.tdm");
  CHECK_FALSE(r.model);
  REQUIRE(codes(r) == std::vector<std::string>{"E0103"});
  CHECK(r.diagnostics[0].span.col_start == 36);
}

TEST_CASE("feature with associations and aliased relations")
{
  auto r = parse_model(wrap_types("feature A = { x, y } assoc (B, C) feature B = { z } feature C = { w } "
                                  "relation needs = requires relation bans = excludes"),
                       "t.tdm");
  REQUIRE(r.model);
  CHECK(r.model->meta.features[0].associations == std::vector<std::string>{"B", "C"});
  CHECK(r.model->meta.relations[0].semantics == RelationSemantics::requires_);
  CHECK(r.model->meta.relations[1].semantics == RelationSemantics::excludes);
}

TEST_CASE("bad relation alias is E0105")
{
  auto r = parse_model(wrap_types("relation r = implies"), "t.tdm");
  CHECK(codes(r) == std::vector<std::string>{"E0105"});
}

TEST_CASE("predicate precedence: not > and > or, left associative")
{
  auto r = parse_model("features F { types { feature A = { x } feature B = { y } feature C = { z } } }\n"
                       "product P { interface I features (A, B, C) { attr a : t when not A.x and B.y or C.z\n"
                       "attr b : t when A.x or B.y or C.z attr c : t when not (A.x or B.y) } }",
                       "t.tdm");
  REQUIRE(r.model);
  const auto& members = r.model->product->interfaces[0].members;
  using K = Predicate::Kind;
  const auto& a = *members[0].guard;
  CHECK(a.kind == K::disjunction);
  CHECK(a.operands[0].kind == K::conjunction);
  CHECK(a.operands[0].operands[0].kind == K::negation);
  const auto& b = *members[1].guard;
  CHECK(b.kind == K::disjunction);
  CHECK(b.operands[0].kind == K::disjunction);
  CHECK(b.operands[1].kind == K::literal);
  const auto& c = *members[2].guard;
  CHECK(c.kind == K::negation);
  CHECK(c.operands[0].kind == K::disjunction);
}

TEST_CASE("implementation bodies are kept verbatim")
{
  auto r = parse_model("features F { types { feature A = { x } } }\n"
                       "product P { interface I features (A) { method m() }\n"
                       "implementation M realizes I when A.x { method m { return {1, 2}; } } }",
                       "t.tdm");
  REQUIRE(r.model);
  const auto& impl = r.model->product->implementations[0];
  REQUIRE(impl.bodies.size() == 1);
  CHECK(impl.bodies[0].method == "m");
  CHECK(impl.bodies[0].text == " return {1, 2}; ");
}

TEST_CASE("inherent features")
{
  auto r = parse_model("features F { types { } }\n"
                       "product P { interface I inherent { feature Mode = { fast, safe } } { method m() when Mode.fast } }",
                       "t.tdm");
  REQUIRE(r.model);
  const auto& iface = r.model->product->interfaces[0];
  CHECK(iface.used_features.empty());
  REQUIRE(iface.inherent_features.size() == 1);
  CHECK(iface.inherent_features[0].values.size() == 2);
}

TEST_CASE("recovery reports several errors in one run")
{
  auto r = parse_model("features F {\n"
                       "  types {\n"
                       "    feature A = { }\n"
                       "    feature B = { y z }\n"
                       "    relation r = maybe\n"
                       "    feature C = { w }\n"
                       "  }\n"
                       "  control { A.x requires }\n"
                       "  configuration K { require B }\n"
                       "}\n",
                       "t.tdm");
  CHECK_FALSE(r.model);
  CHECK(codes(r) == std::vector<std::string>{"E0103", "E0104", "E0105", "E0106", "E0108"});
  CHECK(r.diagnostics[0].span.line_start == 3);
  CHECK(r.diagnostics[1].span.line_start == 4);
  CHECK(r.diagnostics[2].span.line_start == 5);
  CHECK(r.diagnostics[3].span.line_start == 8);
  CHECK(r.diagnostics[4].span.line_start == 9);
}

TEST_CASE("block order is enforced")
{
  auto r = parse_model("features F { types { } control { } global { } }", "t.tdm");
  CHECK(codes(r) == std::vector<std::string>{"E0107"});
}

TEST_CASE("header and trailing-input errors are E0101")
{
  CHECK(codes(parse_model("product P { }", "t.tdm")) == std::vector<std::string>{"E0101"});
  CHECK(codes(parse_model("features F { }", "t.tdm")) == std::vector<std::string>{"E0101"});
  CHECK(codes(parse_model("features F { types { } } extra", "t.tdm")) == std::vector<std::string>{"E0101"});
}

TEST_CASE("member and implementation errors")
{
  CHECK(codes(parse_model("features F { types { } } product P { interface I { attr a } }", "t.tdm")) ==
        std::vector<std::string>{"E0110"});
  CHECK(codes(parse_model("features F { types { } } product P { implementation M for I when A.x { } }", "t.tdm")) ==
        std::vector<std::string>{"E0112"});
  CHECK(codes(parse_model("features F { types { } } product P { interface I { attr a : t when } }", "t.tdm")) ==
        std::vector<std::string>{"E0111"});
}

TEST_CASE("lexer errors surface through parse_model")
{
  auto r = parse_model("features F { types { feature A = { x @ y } } }", "t.tdm");
  CHECK_FALSE(r.model);
  REQUIRE_FALSE(r.diagnostics.empty());
  CHECK(r.diagnostics[0].code == "E0002");
}

TEST_CASE("every syntax diagnostic lies within the source and uses a known code")
{
  const std::vector<std::string> broken = {
    "features", "features F {", "features F { types { feature", "features F { types { feature A = { x, } } }",
    "features F { types { } configuration C { require A. } }", "features F { types { } } product",
    "features F { types { } } product P { implementation M realizes I when A.x { method m {",
    "}}}}", "features F { types { } } product P { interface I features ( ) { } }",
  };
  for (const auto& src : broken) {
    auto r = parse_model(src, "t.tdm");
    CHECK_FALSE(r.model);
    CHECK_FALSE(r.diagnostics.empty());
    for (const auto& d : r.diagnostics) {
      CHECK(is_known_code(d.code));
      CHECK(d.span.line_start == 1);
      CHECK(d.span.col_start >= 1);
      CHECK(d.span.col_end <= src.size() + 1);
    }
  }
}

TEST_CASE("parsing is deterministic")
{
  const auto src = read_text(corpus_path("set.tdm"));
  auto a = parse_model(src, "x");
  auto b = parse_model(src, "x");
  REQUIRE(a.model);
  CHECK(*a.model == *b.model);
}
