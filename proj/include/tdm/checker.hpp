#pragma once

#include <map>
#include <string>
#include <vector>

#include "tdm/diagnostic.hpp"
#include "tdm/model.hpp"

namespace tdm {

enum class FeatureScope { domain, global, inherent };

[[nodiscard]] const char* to_string(FeatureScope scope);

struct FeatureSymbol
{
  FeatureScope scope = FeatureScope::domain;
  std::string owner; // interface name for inherent features
  FeatureDecl decl;
};

/// A checked model with its symbol tables. Only `check` produces one; the
/// configuration engine and release generator refuse uncertified models.
struct ResolvedModel
{
  Model model;
  std::map<std::string, FeatureSymbol> features;
  std::map<std::string, RelationSemantics> relations; // builtins included
  std::map<std::string, std::size_t> interfaces;      // index into product->interfaces
  std::map<std::string, std::size_t> implementations; // index into product->implementations
  /// Features a configuration assigns, in order: domain, global, then the
  /// inherent features that some rule, configuration, guard or
  /// implementation predicate mentions.
  std::vector<std::string> configuration_space;
  bool certified = false;

  [[nodiscard]] const FeatureDecl& feature(const std::string& name) const;
  [[nodiscard]] RelationSemantics semantics(const ControlRule& rule) const;
  /// Control rules followed by global rules.
  [[nodiscard]] std::vector<ControlRule> rules() const;
};

/// Throws PreconditionError unless `resolved.certified`.
void require_certified(const ResolvedModel& resolved);

struct CheckResult
{
  ResolvedModel resolved;
  std::vector<Diagnostic> diagnostics; // sorted
};

/// Resolves names and validates the model against the feature meta-model.
/// Never throws for model defects; every finding is a diagnostic.
[[nodiscard]] CheckResult check(Model model);

/// Per-feature table in declaration order (domain, global, inherent):
/// value count, number of incident rules, associations.
[[nodiscard]] std::string conformance_report(const ResolvedModel& resolved);

} // namespace tdm
