#include "tdm/parser.hpp"

#include <algorithm>
#include <initializer_list>

#include "tdm/lexer.hpp"

namespace tdm {

namespace {

// Thrown out of an item production; caught at the enclosing block, which
// records the diagnostic and resynchronizes.
struct SyntaxError
{
  Diagnostic diagnostic;
};

std::string describe(const Token& t)
{
  switch (t.kind) {
  case Token::Kind::end_of_input: return "end of input";
  case Token::Kind::opaque_body: return "method body";
  case Token::Kind::keyword: return "keyword '" + t.text + "'";
  case Token::Kind::identifier: return "identifier '" + t.text + "'";
  case Token::Kind::punctuation: return "'" + t.text + "'";
  }
  return "token";
}

SourceSpan join(const SourceSpan& from, const SourceSpan& to)
{
  return SourceSpan{from.file, from.line_start, from.col_start, to.line_end, to.col_end};
}

class Parser
{
public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  std::optional<Model> run()
  {
    Model model;
    try {
      model.meta = meta_model();
      if (peek().is_keyword("product")) model.product = product_model();
      if (peek().kind != Token::Kind::end_of_input)
        fail("E0101", "expected end of input after the model, found " + describe(peek()));
    } catch (const SyntaxError& e) {
      diagnostics_.push_back(e.diagnostic);
    }
    if (has_errors(diagnostics_)) return std::nullopt;
    return model;
  }

  std::vector<Diagnostic> diagnostics() && { return std::move(diagnostics_); }

private:
  // -- token helpers ------------------------------------------------------

  [[nodiscard]] const Token& peek(std::size_t ahead = 0) const
  {
    std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }

  const Token& next()
  {
    const Token& t = tokens_[pos_];
    if (t.kind != Token::Kind::end_of_input) ++pos_;
    return t;
  }

  [[nodiscard]] const Token& previous() const { return tokens_[pos_ == 0 ? 0 : pos_ - 1]; }

  [[noreturn]] void fail(const char* code, std::string message) const
  {
    throw SyntaxError{make_error(code, std::move(message), peek().span)};
  }

  bool accept_punct(char c)
  {
    if (!peek().is_punct(c)) return false;
    next();
    return true;
  }

  bool accept_keyword(std::string_view kw)
  {
    if (!peek().is_keyword(kw)) return false;
    next();
    return true;
  }

  const Token& expect_punct(char c, const char* code, std::string_view context)
  {
    if (!peek().is_punct(c))
      fail(code, "expected '" + std::string(1, c) + "' " + std::string(context) + ", found " + describe(peek()));
    return next();
  }

  const Token& expect_keyword(std::string_view kw, const char* code, std::string_view context)
  {
    if (!peek().is_keyword(kw))
      fail(code, "expected '" + std::string(kw) + "' " + std::string(context) + ", found " + describe(peek()));
    return next();
  }

  const Token& expect_ident(const char* code, std::string_view what)
  {
    if (peek().kind != Token::Kind::identifier)
      fail(code, "expected " + std::string(what) + ", found " + describe(peek()));
    return next();
  }

  // Skips to the next token that starts an item of the current block, or to
  // the block's closing brace (left unconsumed). Nested blocks are skipped.
  void synchronize(std::initializer_list<std::string_view> item_keywords, int depth)
  {
    while (peek().kind != Token::Kind::end_of_input) {
      const Token& t = peek();
      if (depth == 0) {
        if (t.is_punct('}')) return;
        if (t.kind == Token::Kind::keyword) {
          for (auto kw : item_keywords)
            if (t.text == kw) return;
        }
      }
      if (t.is_punct('{')) ++depth;
      if (t.is_punct('}')) --depth;
      next();
    }
  }

  // Runs `item` until the closing brace of the block, recovering from
  // errors inside items.
  template <typename Item>
  void block_items(std::initializer_list<std::string_view> item_keywords, const char* code, std::string_view block,
                   Item&& item)
  {
    while (!peek().is_punct('}')) {
      if (peek().kind == Token::Kind::end_of_input)
        fail(code, "unterminated " + std::string(block) + " block, expected '}'");
      const std::size_t before = pos_;
      try {
        item();
      } catch (const SyntaxError& e) {
        diagnostics_.push_back(e.diagnostic);
        // Braces the failed item opened must be closed before looking
        // for the next item.
        int open = 0;
        for (std::size_t i = before; i < pos_; ++i) {
          if (tokens_[i].is_punct('{')) ++open;
          if (tokens_[i].is_punct('}')) --open;
        }
        if (pos_ == before) next();
        synchronize(item_keywords, std::max(open, 0));
      }
    }
    next();
  }

  // -- meta model ---------------------------------------------------------

  MetaFeaturesModel meta_model()
  {
    MetaFeaturesModel meta;
    const Token& head = expect_keyword("features", "E0101", "at the start of the model");
    meta.span = head.span;
    meta.name = expect_ident("E0101", "feature model name").text;
    expect_punct('{', "E0101", "after the feature model name");

    if (!peek().is_keyword("types")) fail("E0101", "expected 'types' block, found " + describe(peek()));
    types_block(meta);

    enum class Stage { types, global, control, configurations } stage = Stage::types;
    block_items({"global", "control", "configuration"}, "E0101", "features", [&] {
      const Token& t = peek();
      if (t.is_keyword("global")) {
        if (stage >= Stage::global) fail("E0107", "'global' block must appear once, right after 'types'");
        stage = Stage::global;
        global_block(meta.global);
      } else if (t.is_keyword("control")) {
        if (stage >= Stage::control) fail("E0107", "'control' block must appear once, before any configuration");
        stage = Stage::control;
        control_block(meta.control);
      } else if (t.is_keyword("configuration")) {
        stage = Stage::configurations;
        meta.configurations.push_back(configuration());
      } else {
        fail("E0101", "expected 'global', 'control', 'configuration' or '}', found " + describe(t));
      }
    });
    return meta;
  }

  void types_block(MetaFeaturesModel& meta)
  {
    next();
    expect_punct('{', "E0102", "after 'types'");
    block_items({"feature", "relation"}, "E0102", "types", [&] {
      if (peek().is_keyword("feature")) {
        meta.features.push_back(feature_decl());
      } else if (peek().is_keyword("relation")) {
        meta.relations.push_back(relation_decl());
      } else {
        fail("E0102", "expected 'feature', 'relation' or '}', found " + describe(peek()));
      }
    });
  }

  FeatureDecl feature_decl()
  {
    FeatureDecl f;
    const Token& kw = next();
    f.name = expect_ident("E0104", "feature name").text;
    expect_punct('=', "E0104", "after the feature name");
    expect_punct('{', "E0104", "to open the value set");
    if (peek().is_punct('}')) fail("E0103", "feature '" + f.name + "' has an empty value set");
    f.values.push_back(expect_ident("E0104", "feature value").text);
    while (accept_punct(',')) f.values.push_back(expect_ident("E0104", "feature value").text);
    expect_punct('}', "E0104", "to close the value set");
    if (accept_keyword("assoc")) {
      expect_punct('(', "E0104", "after 'assoc'");
      f.associations.push_back(expect_ident("E0104", "associated feature name").text);
      while (accept_punct(',')) f.associations.push_back(expect_ident("E0104", "associated feature name").text);
      expect_punct(')', "E0104", "to close the association list");
    }
    f.span = join(kw.span, previous().span);
    return f;
  }

  RelationDecl relation_decl()
  {
    RelationDecl r;
    const Token& kw = next();
    r.name = expect_ident("E0105", "relation name").text;
    if (accept_punct('=')) {
      const Token& alias = expect_ident("E0105", "'requires' or 'excludes'");
      if (alias.text == "requires") {
        r.semantics = RelationSemantics::requires_;
      } else if (alias.text == "excludes") {
        r.semantics = RelationSemantics::excludes;
      } else {
        throw SyntaxError{make_error("E0105", "relation alias must be 'requires' or 'excludes', found '" + alias.text + "'",
                                     alias.span)};
      }
    }
    r.span = join(kw.span, previous().span);
    return r;
  }

  void global_block(GlobalBlock& global)
  {
    next();
    expect_punct('{', "E0107", "after 'global'");
    block_items({"feature"}, "E0107", "global", [&] {
      if (peek().is_keyword("feature")) {
        global.features.push_back(feature_decl());
      } else if (peek().kind == Token::Kind::identifier) {
        global.rules.push_back(rule());
      } else {
        fail("E0107", "expected 'feature', a rule or '}', found " + describe(peek()));
      }
    });
  }

  void control_block(std::vector<ControlRule>& rules)
  {
    next();
    expect_punct('{', "E0107", "after 'control'");
    block_items({}, "E0107", "control", [&] {
      if (peek().kind != Token::Kind::identifier) fail("E0107", "expected a rule or '}', found " + describe(peek()));
      rules.push_back(rule());
    });
  }

  Literal literal(const char* code)
  {
    Literal l;
    const Token& feature = expect_ident(code, "feature name");
    l.feature = feature.text;
    expect_punct('.', code, "between feature and value");
    const Token& value = expect_ident(code, "feature value");
    l.value = value.text;
    l.span = join(feature.span, value.span);
    return l;
  }

  ControlRule rule()
  {
    ControlRule r;
    r.lhs = literal("E0106");
    r.relation = expect_ident("E0106", "relation name").text;
    r.rhs = literal("E0106");
    r.span = join(r.lhs.span, r.rhs.span);
    return r;
  }

  std::vector<Literal> literal_list()
  {
    std::vector<Literal> out;
    out.push_back(literal("E0108"));
    while (accept_punct(',')) out.push_back(literal("E0108"));
    return out;
  }

  ConfigurationSpec configuration()
  {
    ConfigurationSpec c;
    const Token& kw = next();
    c.name = expect_ident("E0108", "configuration name").text;
    expect_punct('{', "E0108", "after the configuration name");
    if (accept_keyword("require")) c.required = literal_list();
    if (accept_keyword("discard")) c.discarded = literal_list();
    expect_punct('}', "E0108", "to close the configuration");
    c.span = join(kw.span, previous().span);
    return c;
  }

  // -- product model ------------------------------------------------------

  ProductModel product_model()
  {
    ProductModel p;
    const Token& kw = next();
    p.span = kw.span;
    p.name = expect_ident("E0109", "product name").text;
    expect_punct('{', "E0109", "after the product name");
    block_items({"interface", "implementation"}, "E0109", "product", [&] {
      if (peek().is_keyword("interface")) {
        p.interfaces.push_back(interface_decl());
      } else if (peek().is_keyword("implementation")) {
        p.implementations.push_back(implementation_decl());
      } else {
        fail("E0109", "expected 'interface', 'implementation' or '}', found " + describe(peek()));
      }
    });
    return p;
  }

  InterfaceDecl interface_decl()
  {
    InterfaceDecl iface;
    const Token& kw = next();
    iface.name = expect_ident("E0109", "interface name").text;
    if (accept_keyword("features")) {
      expect_punct('(', "E0109", "after 'features'");
      iface.used_features.push_back(expect_ident("E0109", "feature name").text);
      while (accept_punct(',')) iface.used_features.push_back(expect_ident("E0109", "feature name").text);
      expect_punct(')', "E0109", "to close the feature list");
    }
    if (accept_keyword("inherent")) {
      expect_punct('{', "E0109", "after 'inherent'");
      while (peek().is_keyword("feature")) iface.inherent_features.push_back(feature_decl());
      expect_punct('}', "E0109", "to close the inherent features");
    }
    expect_punct('{', "E0109", "to open the interface body");
    block_items({"attr", "method"}, "E0110", "interface", [&] { iface.members.push_back(member()); });
    iface.span = join(kw.span, previous().span);
    return iface;
  }

  MemberDecl member()
  {
    MemberDecl m;
    const Token& kw = peek();
    if (accept_keyword("attr")) {
      m.kind = MemberDecl::Kind::attribute;
      m.name = expect_ident("E0110", "attribute name").text;
      expect_punct(':', "E0110", "after the attribute name");
      m.type_text = expect_ident("E0110", "attribute type").text;
    } else if (accept_keyword("method")) {
      m.kind = MemberDecl::Kind::method;
      m.name = expect_ident("E0110", "method name").text;
      expect_punct('(', "E0110", "after the method name");
      if (!peek().is_punct(')')) {
        do {
          Parameter param;
          param.name = expect_ident("E0110", "parameter name").text;
          expect_punct(':', "E0110", "after the parameter name");
          param.type_text = expect_ident("E0110", "parameter type").text;
          m.params.push_back(std::move(param));
        } while (accept_punct(','));
      }
      expect_punct(')', "E0110", "to close the parameter list");
      if (accept_punct(':')) m.type_text = expect_ident("E0110", "return type").text;
    } else {
      fail("E0110", "expected 'attr', 'method' or '}', found " + describe(peek()));
    }
    if (accept_keyword("when")) m.guard = predicate();
    m.span = join(kw.span, previous().span);
    return m;
  }

  ImplementationDecl implementation_decl()
  {
    ImplementationDecl impl;
    const Token& kw = next();
    impl.name = expect_ident("E0112", "implementation name").text;
    expect_keyword("realizes", "E0112", "after the implementation name");
    impl.realizes = expect_ident("E0112", "interface name").text;
    expect_keyword("when", "E0112", "before the realization predicate");
    impl.when = predicate();
    expect_punct('{', "E0112", "to open the implementation body");
    block_items({"method"}, "E0112", "implementation", [&] {
      MethodBody body;
      const Token& method = expect_keyword("method", "E0112", "in implementation body");
      body.method = expect_ident("E0112", "method name").text;
      expect_punct('{', "E0112", "to open the method body");
      if (peek().kind != Token::Kind::opaque_body) fail("E0112", "expected method body, found " + describe(peek()));
      body.text = next().text;
      expect_punct('}', "E0112", "to close the method body");
      body.span = join(method.span, previous().span);
      impl.bodies.push_back(std::move(body));
    });
    impl.span = join(kw.span, previous().span);
    return impl;
  }

  // pred := or ; or := and ("or" and)* ; and := unary ("and" unary)*
  // unary := "not" unary | "(" pred ")" | literal
  Predicate predicate()
  {
    Predicate lhs = conjunction();
    while (accept_keyword("or")) lhs = Predicate::any_of(std::move(lhs), conjunction());
    return lhs;
  }

  Predicate conjunction()
  {
    Predicate lhs = unary();
    while (accept_keyword("and")) lhs = Predicate::all_of(std::move(lhs), unary());
    return lhs;
  }

  Predicate unary()
  {
    if (accept_keyword("not")) return Predicate::negate(unary());
    if (accept_punct('(')) {
      Predicate inner = predicate();
      expect_punct(')', "E0111", "to close the parenthesized predicate");
      return inner;
    }
    if (peek().kind != Token::Kind::identifier) fail("E0111", "expected a literal, 'not' or '(', found " + describe(peek()));
    return Predicate::lit(literal("E0111"));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::vector<Diagnostic> diagnostics_;
};

} // namespace

ParseResult parse_model(std::string_view source, const std::string& file)
{
  TokenStream stream = tokenize(source, file);
  ParseResult result;
  Parser parser(std::move(stream.tokens));
  auto model = parser.run();
  result.diagnostics = std::move(stream.diagnostics);
  auto syntax = std::move(parser).diagnostics();
  result.diagnostics.insert(result.diagnostics.end(), syntax.begin(), syntax.end());
  sort_diagnostics(result.diagnostics);
  if (!has_errors(result.diagnostics)) result.model = std::move(model);
  return result;
}

} // namespace tdm
