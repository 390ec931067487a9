#include "tdm/engine.hpp"

#include <algorithm>

#include "tdm/printer.hpp"

namespace tdm {

namespace {

std::string joined(const std::vector<std::string>& names)
{
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
  return out;
}

const std::string& value_of(const Assignment& a, const std::string& feature)
{
  auto it = a.find(feature);
  if (it == a.end()) throw IncompleteAssignment({feature});
  return it->second;
}

bool holds(const Literal& l, const Assignment& a) { return value_of(a, l.feature) == l.value; }

void enforce_cap(const ResolvedModel& resolved, const kernels::CompiledSpace& space, const EngineOptions& options)
{
  const auto size = space.size();
  if (options.force || size <= options.state_cap) return;
  throw DiagnosticError(make_error("E0401",
                                   "configuration space has " + std::to_string(size) +
                                     " assignments, above the safety cap of " + std::to_string(options.state_cap) +
                                     "; raise TDM_STATE_CAP or pass --force",
                                   resolved.model.meta.span));
}

Assignment to_assignment(const ResolvedModel& resolved, const kernels::Values& values)
{
  Assignment a;
  for (std::size_t f = 0; f < values.size(); ++f) {
    const auto& name = resolved.configuration_space[f];
    a.emplace(name, resolved.feature(name).values[values[f]]);
  }
  return a;
}

kernels::Hits run_enumeration(const kernels::CompiledSpace& space, std::uint64_t limit, const EngineOptions& options)
{
  return options.strategy == Strategy::serial ? kernels::enumerate_serial(space, limit)
                                              : kernels::enumerate_parallel(space, limit);
}

} // namespace

IncompleteAssignment::IncompleteAssignment(std::vector<std::string> missing)
    : PreconditionError("assignment is missing feature(s): " + joined(missing)), missing_(std::move(missing))
{
}

bool evaluate_rule(RelationSemantics semantics, const ControlRule& rule, const Assignment& a)
{
  std::vector<std::string> missing;
  if (!a.count(rule.lhs.feature)) missing.push_back(rule.lhs.feature);
  if (!a.count(rule.rhs.feature) && rule.rhs.feature != rule.lhs.feature) missing.push_back(rule.rhs.feature);
  if (!missing.empty()) throw IncompleteAssignment(std::move(missing));
  const bool lhs = holds(rule.lhs, a);
  const bool rhs = holds(rule.rhs, a);
  return semantics == RelationSemantics::requires_ ? (!lhs || rhs) : !(lhs && rhs);
}

bool evaluate_rule(const ResolvedModel& resolved, const ControlRule& rule, const Assignment& a)
{
  return evaluate_rule(resolved.semantics(rule), rule, a);
}

Validity is_valid_configuration(const ResolvedModel& resolved, const Assignment& a)
{
  require_certified(resolved);
  std::vector<std::string> missing;
  for (const auto& name : resolved.configuration_space)
    if (!a.count(name)) missing.push_back(name);
  if (!missing.empty()) throw IncompleteAssignment(std::move(missing));
  for (const auto& [feature, value] : a) {
    auto it = resolved.features.find(feature);
    if (it == resolved.features.end()) throw PreconditionError("assignment names unknown feature '" + feature + "'");
    if (!it->second.decl.has_value(value))
      throw PreconditionError("'" + value + "' is not a value of feature '" + feature + "'");
  }

  Validity out;
  for (const auto& rule : resolved.rules()) {
    const auto semantics = resolved.semantics(rule);
    if (evaluate_rule(semantics, rule, a)) continue;
    out.valid = false;
    Violation v;
    v.source = rule;
    v.excerpt = {rule.lhs, rule.rhs};
    v.explanation = semantics == RelationSemantics::requires_
                      ? print_literal(rule.lhs) + " is selected but " + print_literal(rule.rhs) + " is not"
                      : print_literal(rule.lhs) + " and " + print_literal(rule.rhs) + " are both selected";
    out.violations.push_back(std::move(v));
  }
  return out;
}

std::vector<Violation> spec_violations(const ConfigurationSpec& spec, const Assignment& a)
{
  std::vector<Violation> out;
  for (const auto& l : spec.required) {
    if (holds(l, a)) continue;
    out.push_back({spec, {l}, "configuration '" + spec.name + "' requires " + print_literal(l)});
  }
  for (const auto& l : spec.discarded) {
    if (!holds(l, a)) continue;
    out.push_back({spec, {l}, "configuration '" + spec.name + "' discards " + print_literal(l)});
  }
  return out;
}

kernels::CompiledSpace compile_space(const ResolvedModel& resolved, const ConfigurationSpec* spec)
{
  kernels::CompiledSpace space;
  std::map<std::string, std::uint32_t> index;
  for (const auto& name : resolved.configuration_space) {
    const auto& decl = resolved.feature(name);
    index.emplace(name, static_cast<std::uint32_t>(space.choices.size()));
    std::vector<std::uint32_t> all(decl.values.size());
    for (std::uint32_t v = 0; v < all.size(); ++v) all[v] = v;
    space.choices.push_back(std::move(all));
    space.domain_sizes.push_back(static_cast<std::uint32_t>(decl.values.size()));
  }
  auto locate = [&](const Literal& l) {
    auto it = index.find(l.feature);
    if (it == index.end()) throw PreconditionError("feature '" + l.feature + "' is not in the configuration space");
    auto v = resolved.feature(l.feature).value_index(l.value);
    if (!v) throw PreconditionError("'" + l.value + "' is not a value of feature '" + l.feature + "'");
    return std::pair{it->second, static_cast<std::uint32_t>(*v)};
  };
  for (const auto& rule : resolved.rules()) {
    auto [lf, lv] = locate(rule.lhs);
    auto [rf, rv] = locate(rule.rhs);
    space.rules.push_back({lf, lv, rf, rv, resolved.semantics(rule) == RelationSemantics::requires_});
  }
  if (spec) {
    for (const auto& l : spec->required) {
      auto [f, v] = locate(l);
      auto& c = space.choices[f];
      const bool present = std::find(c.begin(), c.end(), v) != c.end();
      c.clear();
      if (present) c.push_back(v);
    }
    for (const auto& l : spec->discarded) {
      auto [f, v] = locate(l);
      std::erase(space.choices[f], v);
    }
  }
  return space;
}

Enumeration enumerate_configurations(const ResolvedModel& resolved, std::uint64_t limit, const EngineOptions& options)
{
  require_certified(resolved);
  if (limit == 0) throw PreconditionError("enumeration limit must be at least 1");
  const auto space = compile_space(resolved);
  enforce_cap(resolved, space, options);
  auto hits = run_enumeration(space, limit, options);
  Enumeration out;
  out.truncated = hits.truncated;
  out.configurations.reserve(hits.assignments.size());
  for (const auto& values : hits.assignments) out.configurations.push_back(to_assignment(resolved, values));
  return out;
}

std::uint64_t count_configurations(const ResolvedModel& resolved, const EngineOptions& options)
{
  require_certified(resolved);
  const auto space = compile_space(resolved);
  enforce_cap(resolved, space, options);
  return options.strategy == Strategy::serial ? kernels::count_serial(space) : kernels::count_parallel(space);
}

std::vector<Assignment> complete_configuration(const ResolvedModel& resolved, const ConfigurationSpec& spec,
                                               const EngineOptions& options)
{
  require_certified(resolved);
  const auto space = compile_space(resolved, &spec);
  enforce_cap(resolved, space, options);
  auto hits = run_enumeration(space, no_limit, options);
  std::vector<Assignment> out;
  out.reserve(hits.assignments.size());
  for (const auto& values : hits.assignments) out.push_back(to_assignment(resolved, values));
  return out;
}

std::vector<FeatureValue> detect_dead_values(const ResolvedModel& resolved, const EngineOptions& options)
{
  require_certified(resolved);
  const auto space = compile_space(resolved);
  enforce_cap(resolved, space, options);
  const auto seen = options.strategy == Strategy::serial ? kernels::reachability_serial(space)
                                                          : kernels::reachability_parallel(space);
  std::vector<FeatureValue> dead;
  for (std::size_t f = 0; f < seen.size(); ++f) {
    const auto& decl = resolved.feature(resolved.configuration_space[f]);
    for (std::size_t v = 0; v < seen[f].size(); ++v)
      if (!seen[f][v]) dead.emplace_back(decl.name, decl.values[v]);
  }
  return dead;
}

std::string format_assignment(const ResolvedModel& resolved, const Assignment& a)
{
  std::string out;
  for (const auto& name : resolved.configuration_space) {
    auto it = a.find(name);
    if (it == a.end()) continue;
    out += (out.empty() ? "" : ", ") + name + "=" + it->second;
  }
  return out;
}

} // namespace tdm
