#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tdm/diagnostic.hpp"
#include "tdm/model.hpp"

namespace tdm {

struct Token
{
  enum class Kind { keyword, identifier, punctuation, opaque_body, end_of_input };

  Kind kind = Kind::end_of_input;
  std::string text;
  SourceSpan span;

  [[nodiscard]] bool is(Kind k, std::string_view t) const { return kind == k && text == t; }
  [[nodiscard]] bool is_keyword(std::string_view t) const { return is(Kind::keyword, t); }
  [[nodiscard]] bool is_punct(char c) const { return kind == Kind::punctuation && text.size() == 1 && text[0] == c; }

  friend bool operator==(const Token&, const Token&) = default;
};

[[nodiscard]] const char* to_string(Token::Kind kind);

/// Reserved words. `requires` and `excludes` are ordinary identifiers so
/// they can name relations.
[[nodiscard]] bool is_keyword(std::string_view word);

struct TokenStream
{
  std::vector<Token> tokens; // always ends with end_of_input
  std::vector<Diagnostic> diagnostics;
};

/// Splits TDM source into tokens. `//` comments and whitespace (including
/// CR) are skipped. Inside an implementation block, the text between the
/// braces of `method NAME { ... }` is captured as one opaque_body token.
/// Illegal characters are reported (E0002) and skipped so lexing continues.
[[nodiscard]] TokenStream tokenize(std::string_view source, const std::string& file);

/// One line per token: `<line>:<col> <kind> <text>`.
[[nodiscard]] std::string trace_tokens(const std::vector<Token>& tokens);

} // namespace tdm
