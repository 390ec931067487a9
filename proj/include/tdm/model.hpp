#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tdm {

/// Half-open source region. Lines and columns are 1-based; the end position
/// points one past the last character, so a zero-width span has start == end.
struct SourceSpan
{
  std::string file;
  std::size_t line_start = 1;
  std::size_t col_start = 1;
  std::size_t line_end = 1;
  std::size_t col_end = 1;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

/// A feature (variability axis) together with its value domain.
struct FeatureDecl
{
  std::string name;
  std::vector<std::string> values;
  std::vector<std::string> associations;
  SourceSpan span;

  [[nodiscard]] bool has_value(const std::string& value) const;
  [[nodiscard]] std::optional<std::size_t> value_index(const std::string& value) const;

  friend bool operator==(const FeatureDecl&, const FeatureDecl&) = default;
};

enum class RelationSemantics { requires_, excludes };

[[nodiscard]] const char* to_string(RelationSemantics semantics);

/// `relation NAME [= requires|excludes]`. An absent alias leaves semantics
/// empty; the checker binds it to the builtin of the same name, if any.
struct RelationDecl
{
  std::string name;
  std::optional<RelationSemantics> semantics;
  SourceSpan span;

  friend bool operator==(const RelationDecl&, const RelationDecl&) = default;
};

/// `Feature.value`
struct Literal
{
  std::string feature;
  std::string value;
  SourceSpan span;

  friend bool operator==(const Literal&, const Literal&) = default;
};

struct ControlRule
{
  Literal lhs;
  std::string relation;
  Literal rhs;
  SourceSpan span;

  friend bool operator==(const ControlRule&, const ControlRule&) = default;
};

struct GlobalBlock
{
  std::vector<FeatureDecl> features;
  std::vector<ControlRule> rules;

  friend bool operator==(const GlobalBlock&, const GlobalBlock&) = default;
};

struct ConfigurationSpec
{
  std::string name;
  std::vector<Literal> required;
  std::vector<Literal> discarded;
  SourceSpan span;

  friend bool operator==(const ConfigurationSpec&, const ConfigurationSpec&) = default;
};

struct MetaFeaturesModel
{
  std::string name;
  std::vector<FeatureDecl> features;
  std::vector<RelationDecl> relations;
  GlobalBlock global;
  std::vector<ControlRule> control;
  std::vector<ConfigurationSpec> configurations;
  SourceSpan span;

  friend bool operator==(const MetaFeaturesModel&, const MetaFeaturesModel&) = default;
};

/// Boolean formula over literals. Leaves carry a literal; `and`/`or` nodes
/// have exactly two children, `not` has one.
struct Predicate
{
  enum class Kind { literal, conjunction, disjunction, negation };

  Kind kind = Kind::literal;
  Literal literal;
  std::vector<Predicate> operands;

  static Predicate lit(Literal l);
  static Predicate all_of(Predicate lhs, Predicate rhs);
  static Predicate any_of(Predicate lhs, Predicate rhs);
  static Predicate negate(Predicate operand);

  friend bool operator==(const Predicate&, const Predicate&) = default;
};

/// Every literal in the predicate, left to right.
[[nodiscard]] std::vector<Literal> literals_of(const Predicate& predicate);

struct Parameter
{
  std::string name;
  std::string type_text;

  friend bool operator==(const Parameter&, const Parameter&) = default;
};

struct MemberDecl
{
  enum class Kind { attribute, method };

  Kind kind = Kind::attribute;
  std::string name;
  std::string type_text; // empty for a method without a return type
  std::vector<Parameter> params;
  std::optional<Predicate> guard;
  SourceSpan span;

  /// `capacity : int`, `add(e : elem)`, `remove() : elem`
  [[nodiscard]] std::string signature() const;

  friend bool operator==(const MemberDecl&, const MemberDecl&) = default;
};

struct InterfaceDecl
{
  std::string name;
  std::vector<std::string> used_features;
  std::vector<FeatureDecl> inherent_features;
  std::vector<MemberDecl> members;
  SourceSpan span;

  [[nodiscard]] bool has_method(const std::string& method) const;

  friend bool operator==(const InterfaceDecl&, const InterfaceDecl&) = default;
};

struct MethodBody
{
  std::string method;
  std::string text; // verbatim, never interpreted
  SourceSpan span;

  friend bool operator==(const MethodBody&, const MethodBody&) = default;
};

struct ImplementationDecl
{
  std::string name;
  std::string realizes;
  Predicate when;
  std::vector<MethodBody> bodies;
  SourceSpan span;

  friend bool operator==(const ImplementationDecl&, const ImplementationDecl&) = default;
};

struct ProductModel
{
  std::string name;
  std::vector<InterfaceDecl> interfaces;
  std::vector<ImplementationDecl> implementations;
  SourceSpan span;

  friend bool operator==(const ProductModel&, const ProductModel&) = default;
};

struct Model
{
  MetaFeaturesModel meta;
  std::optional<ProductModel> product;

  friend bool operator==(const Model&, const Model&) = default;
};

/// Feature name -> chosen value. Iteration is by feature name.
using Assignment = std::map<std::string, std::string>;

/// Copy of the model with every span reset, so `==` compares structure only.
[[nodiscard]] Model without_spans(Model model);

/// Equality ignoring source positions.
[[nodiscard]] bool structurally_equal(const Model& a, const Model& b);

/// Searches domain features, then global features, then each interface's
/// inherent features, in declaration order.
[[nodiscard]] std::optional<FeatureDecl> feature_lookup(const Model& model, const std::string& name);

/// Used features, then global features, then inherent features; duplicates
/// dropped, unknown used names skipped.
[[nodiscard]] std::vector<FeatureDecl> visible_features(const Model& model, const InterfaceDecl& iface);

[[nodiscard]] const InterfaceDecl* find_interface(const Model& model, const std::string& name);

} // namespace tdm
