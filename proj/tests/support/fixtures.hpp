#pragma once

#include <string>
#include <vector>

#include "tdm/checker.hpp"
#include "tdm/model.hpp"

namespace testing_support {

std::string read_text(const std::string& path);
std::string corpus_path(const std::string& name);
std::string data_path(const std::string& name);

/// Parses or throws std::runtime_error carrying the formatted diagnostics.
tdm::Model parse_or_throw(const std::string& source, const std::string& file = "test.tdm");

/// Checks and requires certification (throws otherwise).
tdm::ResolvedModel certify(tdm::Model model);

/// The shipped Set case-study model.
tdm::Model set_model();

/// "Feature.value"
tdm::Literal lit(const std::string& text);

tdm::ControlRule make_rule(const std::string& lhs, const std::string& relation, const std::string& rhs);

/// Set model plus the given control rules.
tdm::Model set_with_rules(const std::vector<tdm::ControlRule>& rules);

} // namespace testing_support
