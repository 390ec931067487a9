#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tdm/diagnostic.hpp"
#include "tdm/model.hpp"

namespace tdm {

struct ParseResult
{
  std::optional<Model> model; // present iff no ERROR diagnostics
  std::vector<Diagnostic> diagnostics;
};

/// Parses a `.tdm` source. Names are not resolved; that is the checker's
/// job. After a syntax error the parser skips to the next item or the end
/// of the enclosing block, so one run can report several errors.
[[nodiscard]] ParseResult parse_model(std::string_view source, const std::string& file);

} // namespace tdm
