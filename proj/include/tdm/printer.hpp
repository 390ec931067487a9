#pragma once

#include <string>

#include "tdm/model.hpp"

namespace tdm {

/// Canonical text form: 2-space indent, one declaration per line, LF line
/// endings, blocks in the order types, global, control, configurations,
/// product. Empty global and control blocks are omitted. Byte output is a
/// pure function of the model's structure (spans are ignored).
[[nodiscard]] std::string pretty_print(const Model& model);

/// Minimal-parenthesis rendering that reparses to the same tree.
[[nodiscard]] std::string print_predicate(const Predicate& predicate);

[[nodiscard]] std::string print_literal(const Literal& literal);

[[nodiscard]] std::string print_rule(const ControlRule& rule);

} // namespace tdm
