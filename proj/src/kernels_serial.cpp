#include "tdm/kernels.hpp"

#include <limits>

namespace tdm::kernels {

std::uint64_t CompiledSpace::size() const
{
  std::uint64_t total = 1;
  for (const auto& c : choices) {
    if (c.empty()) return 0;
    if (total > std::numeric_limits<std::uint64_t>::max() / c.size()) return std::numeric_limits<std::uint64_t>::max();
    total *= c.size();
  }
  return total;
}

bool satisfies(const CompiledSpace& space, std::span<const std::uint32_t> values)
{
  for (const auto& r : space.rules) {
    const bool lhs = values[r.lhs_feature] == r.lhs_value;
    const bool rhs = values[r.rhs_feature] == r.rhs_value;
    if (r.requires_ ? (lhs && !rhs) : (lhs && rhs)) return false;
  }
  return true;
}

namespace {

// Visits every complete assignment in lexicographic order until `visit`
// returns false.
template <typename Visit>
bool depth_first(const CompiledSpace& space, Values& values, std::size_t feature, Visit& visit)
{
  if (feature == space.choices.size()) return visit(values);
  for (auto v : space.choices[feature]) {
    values[feature] = v;
    if (!depth_first(space, values, feature + 1, visit)) return false;
  }
  return true;
}

template <typename Visit>
void for_each_assignment(const CompiledSpace& space, Visit visit)
{
  Values values(space.choices.size(), 0);
  depth_first(space, values, 0, visit);
}

} // namespace

Hits enumerate_serial(const CompiledSpace& space, std::uint64_t limit)
{
  Hits hits;
  for_each_assignment(space, [&](const Values& values) {
    if (!satisfies(space, values)) return true;
    if (hits.assignments.size() == limit) {
      hits.truncated = true;
      return false;
    }
    hits.assignments.push_back(values);
    return true;
  });
  return hits;
}

std::uint64_t count_serial(const CompiledSpace& space)
{
  std::uint64_t count = 0;
  for_each_assignment(space, [&](const Values& values) {
    if (satisfies(space, values)) ++count;
    return true;
  });
  return count;
}

Reachability reachability_serial(const CompiledSpace& space)
{
  Reachability seen;
  for (auto size : space.domain_sizes) seen.emplace_back(size, false);
  for_each_assignment(space, [&](const Values& values) {
    if (satisfies(space, values))
      for (std::size_t f = 0; f < values.size(); ++f) seen[f][values[f]] = true;
    return true;
  });
  return seen;
}

} // namespace tdm::kernels
