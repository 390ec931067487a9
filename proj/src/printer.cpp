#include "tdm/printer.hpp"

namespace tdm {

namespace {

// Binding strength: or < and < not/literal.
int strength(const Predicate& p)
{
  switch (p.kind) {
  case Predicate::Kind::disjunction: return 0;
  case Predicate::Kind::conjunction: return 1;
  default: return 2;
  }
}

void append_predicate(std::string& out, const Predicate& p);

// Operators are left-associative, so a right operand of equal strength
// needs parentheses to keep its shape.
void append_operand(std::string& out, const Predicate& operand, int min_strength)
{
  if (strength(operand) < min_strength) {
    out += '(';
    append_predicate(out, operand);
    out += ')';
  } else {
    append_predicate(out, operand);
  }
}

void append_predicate(std::string& out, const Predicate& p)
{
  switch (p.kind) {
  case Predicate::Kind::literal:
    out += print_literal(p.literal);
    break;
  case Predicate::Kind::negation:
    out += "not ";
    append_operand(out, p.operands[0], 2);
    break;
  case Predicate::Kind::conjunction:
    append_operand(out, p.operands[0], 1);
    out += " and ";
    append_operand(out, p.operands[1], 2);
    break;
  case Predicate::Kind::disjunction:
    append_operand(out, p.operands[0], 0);
    out += " or ";
    append_operand(out, p.operands[1], 1);
    break;
  }
}

std::string join(const std::vector<std::string>& items)
{
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ", ";
    out += items[i];
  }
  return out;
}

std::string join(const std::vector<Literal>& literals)
{
  std::string out;
  for (std::size_t i = 0; i < literals.size(); ++i) {
    if (i > 0) out += ", ";
    out += print_literal(literals[i]);
  }
  return out;
}

class Printer
{
public:
  std::string take() && { return std::move(out_); }

  void line(const std::string& text)
  {
    out_.append(indent_ * 2, ' ');
    out_ += text;
    out_ += '\n';
  }

  void open(const std::string& head)
  {
    line(head + " {");
    ++indent_;
  }

  void close()
  {
    --indent_;
    line("}");
  }

  void feature(const FeatureDecl& f)
  {
    std::string text = "feature " + f.name + " = { " + join(f.values) + " }";
    if (!f.associations.empty()) text += " assoc (" + join(f.associations) + ")";
    line(text);
  }

  void model(const Model& m)
  {
    const auto& meta = m.meta;
    open("features " + meta.name);
    open("types");
    for (const auto& f : meta.features) feature(f);
    for (const auto& r : meta.relations) {
      std::string text = "relation " + r.name;
      if (r.semantics) text += std::string(" = ") + to_string(*r.semantics);
      line(text);
    }
    close();
    if (!meta.global.features.empty() || !meta.global.rules.empty()) {
      open("global");
      for (const auto& f : meta.global.features) feature(f);
      for (const auto& r : meta.global.rules) line(print_rule(r));
      close();
    }
    if (!meta.control.empty()) {
      open("control");
      for (const auto& r : meta.control) line(print_rule(r));
      close();
    }
    for (const auto& c : meta.configurations) {
      open("configuration " + c.name);
      if (!c.required.empty()) line("require " + join(c.required));
      if (!c.discarded.empty()) line("discard " + join(c.discarded));
      close();
    }
    close();
    if (m.product) product(*m.product);
  }

  void product(const ProductModel& p)
  {
    open("product " + p.name);
    for (const auto& iface : p.interfaces) {
      std::string head = "interface " + iface.name;
      if (!iface.used_features.empty()) head += " features (" + join(iface.used_features) + ")";
      if (!iface.inherent_features.empty()) {
        line(head + " inherent {");
        ++indent_;
        for (const auto& f : iface.inherent_features) feature(f);
        --indent_;
        open("}");
      } else {
        open(head);
      }
      for (const auto& m : iface.members) {
        std::string text = (m.kind == MemberDecl::Kind::attribute ? "attr " : "method ") + m.signature();
        if (m.guard) text += " when " + print_predicate(*m.guard);
        line(text);
      }
      close();
    }
    for (const auto& impl : p.implementations) {
      open("implementation " + impl.name + " realizes " + impl.realizes + " when " + print_predicate(impl.when));
      for (const auto& body : impl.bodies) {
        out_.append(indent_ * 2, ' ');
        out_ += "method " + body.method + " {" + body.text + "}\n";
      }
      close();
    }
    close();
  }

private:
  std::string out_;
  std::size_t indent_ = 0;
};

} // namespace

std::string print_literal(const Literal& literal) { return literal.feature + "." + literal.value; }

std::string print_rule(const ControlRule& rule)
{
  return print_literal(rule.lhs) + " " + rule.relation + " " + print_literal(rule.rhs);
}

std::string print_predicate(const Predicate& predicate)
{
  std::string out;
  append_predicate(out, predicate);
  return out;
}

std::string pretty_print(const Model& model)
{
  Printer printer;
  printer.model(model);
  return std::move(printer).take();
}

} // namespace tdm
