#include "tdm/lexer.hpp"

#include <algorithm>
#include <array>

namespace tdm {

namespace {

constexpr std::array keywords = {
  "and",  "assoc",   "attr",     "configuration", "control",  "discard",  "feature",
  "features", "global", "implementation", "inherent", "interface", "method",  "not",
  "or",   "product", "realizes", "relation",      "require",  "types",    "when",
};

bool ident_start(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; }

bool ident_continue(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

bool punctuation(char c)
{
  switch (c) {
  case '{': case '}': case '(': case ')': case ',': case '.': case '=': case ':':
    return true;
  default:
    return false;
  }
}

class Lexer
{
public:
  Lexer(std::string_view source, const std::string& file) : src_(source), file_(file) {}

  TokenStream run()
  {
    TokenStream out;
    while (true) {
      skip_trivia();
      if (at_end()) break;
      const char c = src_[pos_];
      const Position start = here();
      if (ident_start(c)) {
        std::size_t begin = pos_;
        while (!at_end() && ident_continue(src_[pos_])) advance();
        std::string word(src_.substr(begin, pos_ - begin));
        auto kind = is_keyword(word) ? Token::Kind::keyword : Token::Kind::identifier;
        push(out, kind, std::move(word), start);
      } else if (punctuation(c)) {
        advance();
        push(out, Token::Kind::punctuation, std::string(1, c), start);
        if (c == '{' && opens_body(out.tokens)) {
          if (!capture_body(out, start)) break;
        }
      } else {
        advance_codepoint();
        out.diagnostics.push_back(make_error(
          "E0002", "illegal character '" + std::string(src_.substr(start.offset, pos_ - start.offset)) + "'",
          span_from(start)));
      }
    }
    push(out, Token::Kind::end_of_input, "", here());
    return out;
  }

private:
  struct Position
  {
    std::size_t offset;
    std::size_t line;
    std::size_t col;
  };

  [[nodiscard]] bool at_end() const { return pos_ >= src_.size(); }

  [[nodiscard]] Position here() const { return {pos_, line_, col_}; }

  void advance()
  {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void advance_codepoint()
  {
    advance();
    while (!at_end() && (static_cast<unsigned char>(src_[pos_]) & 0xC0) == 0x80) {
      ++pos_;
    }
  }

  void skip_trivia()
  {
    while (!at_end()) {
      const char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (!at_end() && src_[pos_] != '\n') advance();
      } else {
        return;
      }
    }
  }

  [[nodiscard]] SourceSpan span_from(const Position& start) const
  {
    return SourceSpan{file_, start.line, start.col, line_, col_};
  }

  void push(TokenStream& out, Token::Kind kind, std::string text, const Position& start)
  {
    track(kind, text);
    out.tokens.push_back(Token{kind, std::move(text), span_from(start)});
  }

  // Implementation blocks are the only place where braces enclose opaque
  // text, so the lexer tracks nesting of `implementation ... { ... }`.
  void track(Token::Kind kind, const std::string& text)
  {
    if (kind == Token::Kind::keyword && text == "implementation" && impl_depth_ == 0) {
      pending_impl_ = true;
    } else if (kind == Token::Kind::punctuation && text == "{") {
      if (pending_impl_) {
        pending_impl_ = false;
        impl_depth_ = 1;
      } else if (impl_depth_ > 0) {
        ++impl_depth_;
      }
    } else if (kind == Token::Kind::punctuation && text == "}" && impl_depth_ > 0) {
      --impl_depth_;
    }
  }

  // `method NAME {` directly inside an implementation block.
  [[nodiscard]] bool opens_body(const std::vector<Token>& tokens) const
  {
    if (impl_depth_ != 2 || tokens.size() < 3) return false;
    const auto& name = tokens[tokens.size() - 2];
    const auto& kw = tokens[tokens.size() - 3];
    return name.kind == Token::Kind::identifier && kw.is_keyword("method");
  }

  bool capture_body(TokenStream& out, const Position& open)
  {
    const Position start = here();
    int depth = 1;
    while (!at_end()) {
      const char c = src_[pos_];
      if (c == '{') {
        ++depth;
      } else if (c == '}') {
        if (--depth == 0) break;
      }
      advance();
    }
    if (at_end()) {
      out.diagnostics.push_back(make_error("E0001", "unterminated method body", span_from(open)));
      return false;
    }
    out.tokens.push_back(
      Token{Token::Kind::opaque_body, std::string(src_.substr(start.offset, pos_ - start.offset)), span_from(start)});
    const Position close = here();
    advance();
    push(out, Token::Kind::punctuation, "}", close);
    return true;
  }

  std::string_view src_;
  const std::string& file_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  bool pending_impl_ = false;
  int impl_depth_ = 0;
};

} // namespace

const char* to_string(Token::Kind kind)
{
  switch (kind) {
  case Token::Kind::keyword: return "keyword";
  case Token::Kind::identifier: return "identifier";
  case Token::Kind::punctuation: return "punctuation";
  case Token::Kind::opaque_body: return "opaque-body";
  case Token::Kind::end_of_input: return "end-of-input";
  }
  return "?";
}

bool is_keyword(std::string_view word)
{
  return std::find(keywords.begin(), keywords.end(), word) != keywords.end();
}

TokenStream tokenize(std::string_view source, const std::string& file)
{
  return Lexer(source, file).run();
}

std::string trace_tokens(const std::vector<Token>& tokens)
{
  std::string out;
  for (const auto& t : tokens) {
    out += std::to_string(t.span.line_start) + ":" + std::to_string(t.span.col_start) + " " + to_string(t.kind);
    if (!t.text.empty()) out += " " + t.text;
    out += '\n';
  }
  return out;
}

} // namespace tdm
