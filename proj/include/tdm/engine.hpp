#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tdm/checker.hpp"
#include "tdm/kernels.hpp"

namespace tdm {

inline constexpr std::uint64_t default_state_cap = 1'000'000;
inline constexpr std::uint64_t no_limit = std::numeric_limits<std::uint64_t>::max();

enum class Strategy { serial, parallel };

struct EngineOptions
{
  std::uint64_t state_cap = default_state_cap;
  bool force = false; // ignore the cap
  Strategy strategy = Strategy::parallel;
};

/// Assignment lacks features the operation needs.
class IncompleteAssignment : public PreconditionError
{
public:
  explicit IncompleteAssignment(std::vector<std::string> missing);

  [[nodiscard]] const std::vector<std::string>& missing() const noexcept { return missing_; }

private:
  std::vector<std::string> missing_;
};

struct Violation
{
  std::variant<ControlRule, ConfigurationSpec> source;
  std::vector<Literal> excerpt; // the literals of the falsified constraint
  std::string explanation;
};

struct Validity
{
  bool valid = true;
  std::vector<Violation> violations;
};

struct Enumeration
{
  std::vector<Assignment> configurations;
  bool truncated = false;
};

using FeatureValue = std::pair<std::string, std::string>;

/// Truth of one rule. Throws IncompleteAssignment if either literal's
/// feature is unassigned.
[[nodiscard]] bool evaluate_rule(RelationSemantics semantics, const ControlRule& rule, const Assignment& a);
[[nodiscard]] bool evaluate_rule(const ResolvedModel& resolved, const ControlRule& rule, const Assignment& a);

/// Checks every control and global rule. `a` must assign every feature of
/// the configuration space a value from its domain.
[[nodiscard]] Validity is_valid_configuration(const ResolvedModel& resolved, const Assignment& a);

/// Required literals that `a` misses and discarded literals it selects.
[[nodiscard]] std::vector<Violation> spec_violations(const ConfigurationSpec& spec, const Assignment& a);

/// Valid complete assignments in lexicographic (declaration) order, at most
/// `limit` of them (limit >= 1). Throws DiagnosticError E0401 when the
/// space is larger than the cap and `force` is off.
[[nodiscard]] Enumeration enumerate_configurations(const ResolvedModel& resolved, std::uint64_t limit = no_limit,
                                                   const EngineOptions& options = {});

[[nodiscard]] std::uint64_t count_configurations(const ResolvedModel& resolved, const EngineOptions& options = {});

/// Valid complete assignments honouring the spec's required and discarded
/// literals; empty when the spec is unsatisfiable.
[[nodiscard]] std::vector<Assignment> complete_configuration(const ResolvedModel& resolved,
                                                             const ConfigurationSpec& spec,
                                                             const EngineOptions& options = {});

/// Values that no valid configuration selects, in space order.
[[nodiscard]] std::vector<FeatureValue> detect_dead_values(const ResolvedModel& resolved,
                                                           const EngineOptions& options = {});

/// `Allocation=static, Discipline=stack`, in configuration-space order.
[[nodiscard]] std::string format_assignment(const ResolvedModel& resolved, const Assignment& a);

/// Index form of the model's configuration space, optionally narrowed by a
/// spec. Exposed for the benchmark and kernel tests.
[[nodiscard]] kernels::CompiledSpace compile_space(const ResolvedModel& resolved,
                                                   const ConfigurationSpec* spec = nullptr);

} // namespace tdm
