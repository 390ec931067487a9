#include "tdm/checker.hpp"

#include <algorithm>
#include <iomanip>
#include <set>
#include <sstream>

#include "tdm/printer.hpp"

namespace tdm {

const char* to_string(FeatureScope scope)
{
  switch (scope) {
  case FeatureScope::domain: return "domain";
  case FeatureScope::global: return "global";
  case FeatureScope::inherent: return "inherent";
  }
  return "?";
}

const FeatureDecl& ResolvedModel::feature(const std::string& name) const
{
  auto it = features.find(name);
  if (it == features.end()) throw PreconditionError("unknown feature '" + name + "'");
  return it->second.decl;
}

RelationSemantics ResolvedModel::semantics(const ControlRule& rule) const
{
  auto it = relations.find(rule.relation);
  if (it == relations.end()) throw PreconditionError("relation '" + rule.relation + "' has no semantics");
  return it->second;
}

std::vector<ControlRule> ResolvedModel::rules() const
{
  std::vector<ControlRule> out = model.meta.control;
  out.insert(out.end(), model.meta.global.rules.begin(), model.meta.global.rules.end());
  return out;
}

void require_certified(const ResolvedModel& resolved)
{
  if (!resolved.certified) throw PreconditionError("model is not certified; run the checker and fix its errors first");
}

namespace {

// The value token ends the literal.
SourceSpan value_span(const Literal& l)
{
  SourceSpan span = l.span;
  if (span.col_end > l.value.size()) {
    span.line_start = span.line_end;
    span.col_start = span.col_end - l.value.size();
  }
  return span;
}

std::optional<RelationSemantics> builtin(const std::string& name)
{
  if (name == "requires") return RelationSemantics::requires_;
  if (name == "excludes") return RelationSemantics::excludes;
  return std::nullopt;
}

class Checker
{
public:
  explicit Checker(Model model) { out_.model = std::move(model); }

  CheckResult run()
  {
    const auto& meta = out_.model.meta;
    for (const auto& f : meta.features) declare(f, FeatureScope::domain, "");
    for (const auto& f : meta.global.features) declare(f, FeatureScope::global, "");
    relations();
    if (out_.model.product) interfaces();

    for (const auto& r : meta.control) rule(r);
    for (const auto& r : meta.global.rules) rule(r);
    configurations();
    if (out_.model.product) {
      members();
      implementations();
    }
    associations();
    unused_values();
    space();

    sort_diagnostics(diagnostics_);
    out_.certified = !has_errors(diagnostics_);
    return CheckResult{std::move(out_), std::move(diagnostics_)};
  }

private:
  void error(const char* code, std::string message, const SourceSpan& span)
  {
    diagnostics_.push_back(make_error(code, std::move(message), span));
  }

  void warning(const char* code, std::string message, const SourceSpan& span)
  {
    diagnostics_.push_back(make_warning(code, std::move(message), span));
  }

  void declare(const FeatureDecl& f, FeatureScope scope, const std::string& owner)
  {
    std::set<std::string> values;
    for (const auto& v : f.values) {
      if (!values.insert(v).second) error("E0203", "duplicate value '" + v + "' in feature '" + f.name + "'", f.span);
      if (v == f.name) error("E0203", "feature '" + f.name + "' lists its own name as a value", f.span);
    }
    auto [it, inserted] = out_.features.emplace(f.name, FeatureSymbol{scope, owner, f});
    if (!inserted) {
      std::string where = it->second.scope == FeatureScope::inherent
                            ? "inherent feature of interface '" + it->second.owner + "'"
                            : std::string(to_string(it->second.scope)) + " feature";
      error("E0203", "feature '" + f.name + "' is already declared as a " + where, f.span);
    }
  }

  void relations()
  {
    std::set<std::string> seen;
    for (const auto& r : out_.model.meta.relations) {
      if (!seen.insert(r.name).second) {
        error("E0203", "duplicate relation '" + r.name + "'", r.span);
        continue;
      }
      if (auto semantics = r.semantics ? r.semantics : builtin(r.name)) {
        out_.relations[r.name] = *semantics;
      } else {
        unbound_.insert(r.name);
        error("E0205", "relation '" + r.name + "' has no builtin semantics; write 'relation " + r.name +
                         " = requires' or '= excludes'", r.span);
      }
    }
    for (const char* name : {"requires", "excludes"}) {
      if (!seen.count(name)) out_.relations[name] = *builtin(name);
    }
  }

  void interfaces()
  {
    const auto& product = *out_.model.product;
    for (std::size_t i = 0; i < product.interfaces.size(); ++i) {
      const auto& iface = product.interfaces[i];
      if (!out_.interfaces.emplace(iface.name, i).second)
        error("E0203", "duplicate interface '" + iface.name + "'", iface.span);
      std::set<std::string> used;
      for (const auto& name : iface.used_features) {
        if (!used.insert(name).second) {
          error("E0203", "feature '" + name + "' listed twice by interface '" + iface.name + "'", iface.span);
          continue;
        }
        auto it = out_.features.find(name);
        if (it == out_.features.end() || it->second.scope != FeatureScope::domain)
          error("E0201", "interface '" + iface.name + "' uses unknown domain feature '" + name + "'", iface.span);
      }
      for (const auto& f : iface.inherent_features) declare(f, FeatureScope::inherent, iface.name);
    }
  }

  // Resolves a literal. With `iface` set, the feature must also be visible
  // to that interface.
  bool literal(const Literal& l, const InterfaceDecl* iface = nullptr)
  {
    mentioned_.insert(l.feature);
    auto it = out_.features.find(l.feature);
    if (it == out_.features.end()) {
      error("E0201", "unknown feature '" + l.feature + "'", l.span);
      return false;
    }
    if (iface && !visible(*iface, it->second)) {
      error("E0207", "feature '" + l.feature + "' is not visible to interface '" + iface->name + "'", l.span);
      return false;
    }
    if (!it->second.decl.has_value(l.value)) {
      error("E0202", "'" + l.value + "' is not a value of feature '" + l.feature + "'", value_span(l));
      return false;
    }
    used_values_.insert({l.feature, l.value});
    return true;
  }

  static bool visible(const InterfaceDecl& iface, const FeatureSymbol& symbol)
  {
    switch (symbol.scope) {
    case FeatureScope::global: return true;
    case FeatureScope::inherent: return symbol.owner == iface.name;
    case FeatureScope::domain:
      return std::find(iface.used_features.begin(), iface.used_features.end(), symbol.decl.name) !=
             iface.used_features.end();
    }
    return false;
  }

  void predicate(const Predicate& p, const InterfaceDecl& iface)
  {
    for (const auto& l : literals_of(p)) literal(l, &iface);
  }

  void rule(const ControlRule& r)
  {
    const bool lhs = literal(r.lhs);
    const bool rhs = literal(r.rhs);
    if (!out_.relations.count(r.relation) && !unbound_.count(r.relation))
      error("E0205", "relation '" + r.relation + "' is not declared and is not 'requires' or 'excludes'", r.span);
    if (lhs && rhs && r.lhs.feature == r.rhs.feature && out_.relations.count(r.relation)) {
      const bool same_value = r.lhs.value == r.rhs.value;
      const bool requires_ = out_.relations.at(r.relation) == RelationSemantics::requires_;
      std::string effect;
      if (requires_) {
        effect = same_value ? "is always satisfied" : "makes '" + print_literal(r.lhs) + "' unselectable";
      } else {
        effect = same_value ? "makes '" + print_literal(r.lhs) + "' unselectable"
                            : "is always satisfied, a feature holds one value";
      }
      warning("W0301", "rule '" + print_rule(r) + "' relates feature '" + r.lhs.feature + "' to itself and " + effect,
              r.span);
    }
    connected_.insert({r.lhs.feature, r.rhs.feature});
    connected_.insert({r.rhs.feature, r.lhs.feature});
  }

  void configurations()
  {
    std::set<std::string> names;
    for (const auto& c : out_.model.meta.configurations) {
      if (!names.insert(c.name).second) error("E0203", "duplicate configuration '" + c.name + "'", c.span);
      std::map<std::string, std::string> pinned;
      for (const auto& l : c.required) {
        if (!literal(l)) continue;
        auto [it, inserted] = pinned.emplace(l.feature, l.value);
        if (!inserted && it->second != l.value)
          error("E0204", "configuration '" + c.name + "' requires both '" + l.feature + "." + it->second + "' and '" +
                           print_literal(l) + "'", l.span);
      }
      for (const auto& l : c.discarded) {
        if (!literal(l)) continue;
        auto overlap = std::find_if(c.required.begin(), c.required.end(), [&](const Literal& r) {
          return r.feature == l.feature && r.value == l.value;
        });
        if (overlap != c.required.end())
          error("E0209", "configuration '" + c.name + "' both requires and discards '" + print_literal(l) + "'", l.span);
      }
    }
  }

  void members()
  {
    for (const auto& iface : out_.model.product->interfaces) {
      std::vector<const MemberDecl*> seen;
      for (const auto& m : iface.members) {
        auto same = std::find_if(seen.begin(), seen.end(), [&](const MemberDecl* other) {
          return other->kind == m.kind && other->name == m.name &&
                 (other->guard ? std::optional(without_guard_spans(*other->guard)) : std::nullopt) ==
                   (m.guard ? std::optional(without_guard_spans(*m.guard)) : std::nullopt);
        });
        if (same != seen.end())
          error("E0203", "member '" + m.name + "' is declared twice with the same guard in interface '" + iface.name + "'",
                m.span);
        seen.push_back(&m);
        if (m.guard) predicate(*m.guard, iface);
      }
    }
  }

  static Predicate without_guard_spans(Predicate p)
  {
    p.literal.span = SourceSpan{};
    for (auto& operand : p.operands) operand = without_guard_spans(std::move(operand));
    return p;
  }

  void implementations()
  {
    const auto& product = *out_.model.product;
    for (std::size_t i = 0; i < product.implementations.size(); ++i) {
      const auto& impl = product.implementations[i];
      if (!out_.implementations.emplace(impl.name, i).second)
        error("E0203", "duplicate implementation '" + impl.name + "'", impl.span);
      auto it = out_.interfaces.find(impl.realizes);
      if (it == out_.interfaces.end()) {
        error("E0206", "implementation '" + impl.name + "' realizes unknown interface '" + impl.realizes + "'", impl.span);
        for (const auto& l : literals_of(impl.when)) literal(l);
        continue;
      }
      const auto& iface = product.interfaces[it->second];
      predicate(impl.when, iface);
      for (const auto& body : impl.bodies) {
        if (!iface.has_method(body.method))
          error("E0208", "interface '" + iface.name + "' declares no method '" + body.method + "'", body.span);
      }
    }
  }

  void associations()
  {
    auto each = [&](const FeatureDecl& f) {
      for (const auto& a : f.associations) {
        if (!out_.features.count(a)) {
          error("E0201", "feature '" + f.name + "' is associated with unknown feature '" + a + "'", f.span);
        } else if (!connected_.count({f.name, a})) {
          warning("W0303", "association '" + f.name + "' -> '" + a + "' is not backed by any rule", f.span);
        }
      }
    };
    for (const auto& f : out_.model.meta.features) each(f);
    for (const auto& f : out_.model.meta.global.features) each(f);
  }

  void unused_values()
  {
    auto each = [&](const FeatureDecl& f) {
      for (const auto& v : f.values) {
        if (!used_values_.count({f.name, v}))
          warning("W0302", "value '" + f.name + "." + v + "' is not referenced by any rule, guard or configuration", f.span);
      }
    };
    for (const auto& f : out_.model.meta.features) each(f);
    for (const auto& f : out_.model.meta.global.features) each(f);
    if (out_.model.product)
      for (const auto& iface : out_.model.product->interfaces)
        for (const auto& f : iface.inherent_features) each(f);
  }

  void space()
  {
    std::set<std::string> added;
    auto add = [&](const std::string& name) {
      if (added.insert(name).second) out_.configuration_space.push_back(name);
    };
    for (const auto& f : out_.model.meta.features) add(f.name);
    for (const auto& f : out_.model.meta.global.features) add(f.name);
    if (out_.model.product)
      for (const auto& iface : out_.model.product->interfaces)
        for (const auto& f : iface.inherent_features)
          if (mentioned_.count(f.name)) add(f.name);
  }

  ResolvedModel out_;
  std::vector<Diagnostic> diagnostics_;
  std::set<std::string> unbound_;
  std::set<std::string> mentioned_;
  std::set<std::pair<std::string, std::string>> used_values_;
  std::set<std::pair<std::string, std::string>> connected_;
};

} // namespace

CheckResult check(Model model)
{
  return Checker(std::move(model)).run();
}

std::string conformance_report(const ResolvedModel& resolved)
{
  struct Row
  {
    std::string name, scope, values, rules, associations;
  };
  std::vector<Row> rows;
  const auto rules = resolved.rules();
  auto add = [&](const FeatureDecl& f, FeatureScope scope) {
    const auto incident = std::count_if(rules.begin(), rules.end(), [&](const ControlRule& r) {
      return r.lhs.feature == f.name || r.rhs.feature == f.name;
    });
    std::string assoc;
    for (const auto& a : f.associations) assoc += (assoc.empty() ? "" : ", ") + a;
    rows.push_back({f.name, to_string(scope), std::to_string(f.values.size()), std::to_string(incident),
                    assoc.empty() ? "-" : assoc});
  };
  const auto& model = resolved.model;
  for (const auto& f : model.meta.features) add(f, FeatureScope::domain);
  for (const auto& f : model.meta.global.features) add(f, FeatureScope::global);
  if (model.product)
    for (const auto& iface : model.product->interfaces)
      for (const auto& f : iface.inherent_features) add(f, FeatureScope::inherent);

  std::size_t width = 7;
  for (const auto& r : rows) width = std::max(width, r.name.size());
  std::ostringstream out;
  auto line = [&](const std::string& a, const std::string& b, const std::string& c, const std::string& d,
                  const std::string& e) {
    out << std::left << std::setw(static_cast<int>(width)) << a << "  " << std::setw(8) << b << "  " << std::setw(6)
        << c << "  " << std::setw(5) << d << "  " << e << '\n';
  };
  line("feature", "scope", "values", "rules", "associations");
  for (const auto& r : rows) line(r.name, r.scope, r.values, r.rules, r.associations);
  return out.str();
}

} // namespace tdm
