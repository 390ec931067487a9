#include "oracle.hpp"

#include <set>
#include <stdexcept>

namespace oracle {

namespace {

bool mentions(const tdm::Predicate& p, const std::string& feature)
{
  if (p.kind == tdm::Predicate::Kind::literal) return p.literal.feature == feature;
  for (const auto& o : p.operands)
    if (mentions(o, feature)) return true;
  return false;
}

bool mentioned(const tdm::Model& model, const std::string& feature)
{
  const auto& meta = model.meta;
  for (const auto* rules : {&meta.control, &meta.global.rules})
    for (const auto& r : *rules)
      if (r.lhs.feature == feature || r.rhs.feature == feature) return true;
  for (const auto& c : meta.configurations) {
    for (const auto& l : c.required)
      if (l.feature == feature) return true;
    for (const auto& l : c.discarded)
      if (l.feature == feature) return true;
  }
  if (model.product) {
    for (const auto& iface : model.product->interfaces)
      for (const auto& m : iface.members)
        if (m.guard && mentions(*m.guard, feature)) return true;
    for (const auto& impl : model.product->implementations)
      if (mentions(impl.when, feature)) return true;
  }
  return false;
}

bool is_requires(const tdm::Model& model, const std::string& relation)
{
  for (const auto& r : model.meta.relations) {
    if (r.name != relation) continue;
    if (r.semantics) return *r.semantics == tdm::RelationSemantics::requires_;
    break;
  }
  if (relation == "requires") return true;
  if (relation == "excludes") return false;
  throw std::invalid_argument("oracle: relation without semantics: " + relation);
}

void extend(const std::vector<tdm::FeatureDecl>& space, std::size_t i, tdm::Assignment& current,
            std::vector<tdm::Assignment>& out)
{
  if (i == space.size()) {
    out.push_back(current);
    return;
  }
  for (const auto& v : space[i].values) {
    current[space[i].name] = v;
    extend(space, i + 1, current, out);
  }
  current.erase(space[i].name);
}

} // namespace

std::vector<tdm::FeatureDecl> space_of(const tdm::Model& model)
{
  std::vector<tdm::FeatureDecl> space = model.meta.features;
  space.insert(space.end(), model.meta.global.features.begin(), model.meta.global.features.end());
  if (model.product)
    for (const auto& iface : model.product->interfaces)
      for (const auto& f : iface.inherent_features)
        if (mentioned(model, f.name)) space.push_back(f);
  return space;
}

std::vector<tdm::Assignment> cartesian_product(const tdm::Model& model)
{
  std::vector<tdm::Assignment> out;
  tdm::Assignment current;
  extend(space_of(model), 0, current, out);
  return out;
}

bool rule_holds(const tdm::Model& model, const tdm::ControlRule& rule, const tdm::Assignment& a)
{
  const bool lhs = a.at(rule.lhs.feature) == rule.lhs.value;
  const bool rhs = a.at(rule.rhs.feature) == rule.rhs.value;
  // requires: truth table row (T,F) is the only false row.
  // excludes: row (T,T) is the only false row.
  if (is_requires(model, rule.relation)) return !(lhs && !rhs);
  return !(lhs && rhs);
}

bool all_rules_hold(const tdm::Model& model, const tdm::Assignment& a)
{
  for (const auto& r : model.meta.control)
    if (!rule_holds(model, r, a)) return false;
  for (const auto& r : model.meta.global.rules)
    if (!rule_holds(model, r, a)) return false;
  return true;
}

std::vector<tdm::Assignment> valid_configurations(const tdm::Model& model, const tdm::ConfigurationSpec* spec)
{
  std::vector<tdm::Assignment> out;
  for (auto& a : cartesian_product(model)) {
    if (!all_rules_hold(model, a)) continue;
    if (spec) {
      bool ok = true;
      for (const auto& l : spec->required) ok = ok && a.at(l.feature) == l.value;
      for (const auto& l : spec->discarded) ok = ok && a.at(l.feature) != l.value;
      if (!ok) continue;
    }
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> dead_values(const tdm::Model& model)
{
  std::set<std::pair<std::string, std::string>> live;
  for (const auto& a : valid_configurations(model))
    for (const auto& [f, v] : a) live.insert({f, v});
  std::vector<std::pair<std::string, std::string>> dead;
  for (const auto& f : space_of(model))
    for (const auto& v : f.values)
      if (!live.count({f.name, v})) dead.emplace_back(f.name, v);
  return dead;
}

} // namespace oracle
