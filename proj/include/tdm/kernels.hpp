#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace tdm::kernels {

/// Rule over value indices. For `requires`: lhs holds => rhs holds.
/// For `excludes`: not (lhs and rhs).
struct CompiledRule
{
  std::uint32_t lhs_feature;
  std::uint32_t lhs_value;
  std::uint32_t rhs_feature;
  std::uint32_t rhs_value;
  bool requires_;
};

/// Search space in index form. Feature i may take the value indices in
/// `choices[i]` (ascending); the first feature is the most significant
/// digit, so ascending space index is lexicographic declaration order.
struct CompiledSpace
{
  std::vector<std::vector<std::uint32_t>> choices;
  std::vector<std::uint32_t> domain_sizes; // full domain size per feature
  std::vector<CompiledRule> rules;

  /// Number of complete assignments; saturates at UINT64_MAX.
  [[nodiscard]] std::uint64_t size() const;
};

using Values = std::vector<std::uint32_t>; // value index per feature

[[nodiscard]] bool satisfies(const CompiledSpace& space, std::span<const std::uint32_t> values);

/// Per feature, per value: whether some valid assignment selects it.
using Reachability = std::vector<std::vector<bool>>;

/// A result list capped at `limit` entries; `truncated` when more exist.
struct Hits
{
  std::vector<Values> assignments;
  bool truncated = false;
};

// Serial reference: depth-first over features in declaration order, rules
// checked at each complete leaf.
[[nodiscard]] Hits enumerate_serial(const CompiledSpace& space, std::uint64_t limit);
[[nodiscard]] std::uint64_t count_serial(const CompiledSpace& space);
[[nodiscard]] Reachability reachability_serial(const CompiledSpace& space);

// OpenMP kernels over the mixed-radix index range. Results are identical,
// including order, to the serial versions.
[[nodiscard]] Hits enumerate_parallel(const CompiledSpace& space, std::uint64_t limit);
[[nodiscard]] std::uint64_t count_parallel(const CompiledSpace& space);
[[nodiscard]] Reachability reachability_parallel(const CompiledSpace& space);

/// Threads the parallel kernels use (1 without OpenMP).
[[nodiscard]] int max_threads();

} // namespace tdm::kernels
