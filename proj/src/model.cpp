#include "tdm/model.hpp"

#include <algorithm>
#include <set>

namespace tdm {

bool FeatureDecl::has_value(const std::string& value) const
{
  return value_index(value).has_value();
}

std::optional<std::size_t> FeatureDecl::value_index(const std::string& value) const
{
  auto it = std::find(values.begin(), values.end(), value);
  if (it == values.end()) return std::nullopt;
  return static_cast<std::size_t>(it - values.begin());
}

const char* to_string(RelationSemantics semantics)
{
  return semantics == RelationSemantics::requires_ ? "requires" : "excludes";
}

Predicate Predicate::lit(Literal l)
{
  Predicate p;
  p.kind = Kind::literal;
  p.literal = std::move(l);
  return p;
}

Predicate Predicate::all_of(Predicate lhs, Predicate rhs)
{
  Predicate p;
  p.kind = Kind::conjunction;
  p.operands.push_back(std::move(lhs));
  p.operands.push_back(std::move(rhs));
  return p;
}

Predicate Predicate::any_of(Predicate lhs, Predicate rhs)
{
  Predicate p;
  p.kind = Kind::disjunction;
  p.operands.push_back(std::move(lhs));
  p.operands.push_back(std::move(rhs));
  return p;
}

Predicate Predicate::negate(Predicate operand)
{
  Predicate p;
  p.kind = Kind::negation;
  p.operands.push_back(std::move(operand));
  return p;
}

namespace {

void collect_literals(const Predicate& p, std::vector<Literal>& out)
{
  if (p.kind == Predicate::Kind::literal) {
    out.push_back(p.literal);
    return;
  }
  for (const auto& operand : p.operands) collect_literals(operand, out);
}

void clear(SourceSpan& span) { span = SourceSpan{}; }

void clear(Literal& l) { clear(l.span); }

void clear(FeatureDecl& f) { clear(f.span); }

void clear(ControlRule& r)
{
  clear(r.span);
  clear(r.lhs);
  clear(r.rhs);
}

void clear(Predicate& p)
{
  clear(p.literal);
  for (auto& operand : p.operands) clear(operand);
}

} // namespace

std::vector<Literal> literals_of(const Predicate& predicate)
{
  std::vector<Literal> out;
  collect_literals(predicate, out);
  return out;
}

std::string MemberDecl::signature() const
{
  std::string out = name;
  if (kind == Kind::attribute) return out + " : " + type_text;
  out += '(';
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i > 0) out += ", ";
    out += params[i].name + " : " + params[i].type_text;
  }
  out += ')';
  if (!type_text.empty()) out += " : " + type_text;
  return out;
}

bool InterfaceDecl::has_method(const std::string& method) const
{
  return std::any_of(members.begin(), members.end(), [&](const MemberDecl& m) {
    return m.kind == MemberDecl::Kind::method && m.name == method;
  });
}

Model without_spans(Model model)
{
  auto& meta = model.meta;
  clear(meta.span);
  for (auto& f : meta.features) clear(f);
  for (auto& r : meta.relations) clear(r.span);
  for (auto& f : meta.global.features) clear(f);
  for (auto& r : meta.global.rules) clear(r);
  for (auto& r : meta.control) clear(r);
  for (auto& c : meta.configurations) {
    clear(c.span);
    for (auto& l : c.required) clear(l);
    for (auto& l : c.discarded) clear(l);
  }
  if (model.product) {
    auto& product = *model.product;
    clear(product.span);
    for (auto& iface : product.interfaces) {
      clear(iface.span);
      for (auto& f : iface.inherent_features) clear(f);
      for (auto& m : iface.members) {
        clear(m.span);
        if (m.guard) clear(*m.guard);
      }
    }
    for (auto& impl : product.implementations) {
      clear(impl.span);
      clear(impl.when);
      for (auto& b : impl.bodies) clear(b.span);
    }
  }
  return model;
}

bool structurally_equal(const Model& a, const Model& b)
{
  return without_spans(a) == without_spans(b);
}

std::optional<FeatureDecl> feature_lookup(const Model& model, const std::string& name)
{
  auto by_name = [&](const FeatureDecl& f) { return f.name == name; };
  const auto& meta = model.meta;
  if (auto it = std::find_if(meta.features.begin(), meta.features.end(), by_name); it != meta.features.end())
    return *it;
  const auto& globals = meta.global.features;
  if (auto it = std::find_if(globals.begin(), globals.end(), by_name); it != globals.end()) return *it;
  if (model.product) {
    for (const auto& iface : model.product->interfaces) {
      const auto& inherent = iface.inherent_features;
      if (auto it = std::find_if(inherent.begin(), inherent.end(), by_name); it != inherent.end()) return *it;
    }
  }
  return std::nullopt;
}

std::vector<FeatureDecl> visible_features(const Model& model, const InterfaceDecl& iface)
{
  std::vector<FeatureDecl> out;
  std::set<std::string> seen;
  auto add = [&](const FeatureDecl& f) {
    if (seen.insert(f.name).second) out.push_back(f);
  };
  for (const auto& used : iface.used_features) {
    auto it = std::find_if(model.meta.features.begin(), model.meta.features.end(),
                           [&](const FeatureDecl& f) { return f.name == used; });
    if (it != model.meta.features.end()) add(*it);
  }
  for (const auto& f : model.meta.global.features) add(f);
  for (const auto& f : iface.inherent_features) add(f);
  return out;
}

const InterfaceDecl* find_interface(const Model& model, const std::string& name)
{
  if (!model.product) return nullptr;
  for (const auto& iface : model.product->interfaces)
    if (iface.name == name) return &iface;
  return nullptr;
}

} // namespace tdm
