#include "tdm/kernels.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tdm::kernels {

namespace {

constexpr std::uint64_t chunk_size = 4096;
constexpr std::uint64_t chunks_per_block = 64;

// Digits of `index` in the mixed radix given by the choice list sizes,
// most significant first.
void decode(const CompiledSpace& space, std::uint64_t index, Values& digits)
{
  for (std::size_t f = space.choices.size(); f-- > 0;) {
    const auto radix = space.choices[f].size();
    digits[f] = static_cast<std::uint32_t>(index % radix);
    index /= radix;
  }
}

void increment(const CompiledSpace& space, Values& digits)
{
  for (std::size_t f = space.choices.size(); f-- > 0;) {
    if (++digits[f] < space.choices[f].size()) return;
    digits[f] = 0;
  }
}

void to_values(const CompiledSpace& space, const Values& digits, Values& values)
{
  for (std::size_t f = 0; f < digits.size(); ++f) values[f] = space.choices[f][digits[f]];
}

// Calls visit(values) for each valid assignment with index in [begin, end).
template <typename Visit>
void scan(const CompiledSpace& space, std::uint64_t begin, std::uint64_t end, Visit&& visit)
{
  const std::size_t n = space.choices.size();
  Values digits(n), values(n);
  decode(space, begin, digits);
  for (std::uint64_t i = begin; i < end; ++i) {
    to_values(space, digits, values);
    if (satisfies(space, values)) visit(values);
    increment(space, digits);
  }
}

} // namespace

int max_threads()
{
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

Hits enumerate_parallel(const CompiledSpace& space, std::uint64_t limit)
{
  Hits hits;
  const std::uint64_t total = space.size();
  std::vector<std::vector<Values>> found(chunks_per_block);
  // Blocks run in index order so a small limit stops early; inside a block
  // chunks are scanned concurrently and concatenated in chunk order.
  for (std::uint64_t block = 0; block < total; block += chunk_size * chunks_per_block) {
    const std::uint64_t block_end = std::min(total, block + chunk_size * chunks_per_block);
    const auto chunks = static_cast<std::int64_t>((block_end - block + chunk_size - 1) / chunk_size);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t c = 0; c < chunks; ++c) {
      auto& out = found[static_cast<std::size_t>(c)];
      out.clear();
      const std::uint64_t begin = block + static_cast<std::uint64_t>(c) * chunk_size;
      scan(space, begin, std::min(block_end, begin + chunk_size), [&](const Values& v) { out.push_back(v); });
    }
    for (std::int64_t c = 0; c < chunks; ++c) {
      for (auto& v : found[static_cast<std::size_t>(c)]) {
        if (hits.assignments.size() == limit) {
          hits.truncated = true;
          return hits;
        }
        hits.assignments.push_back(std::move(v));
      }
    }
  }
  return hits;
}

std::uint64_t count_parallel(const CompiledSpace& space)
{
  const std::uint64_t total = space.size();
  const auto chunks = static_cast<std::int64_t>((total + chunk_size - 1) / chunk_size);
  std::uint64_t count = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : count)
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::uint64_t begin = static_cast<std::uint64_t>(c) * chunk_size;
    scan(space, begin, std::min(total, begin + chunk_size), [&](const Values&) { ++count; });
  }
  return count;
}

Reachability reachability_parallel(const CompiledSpace& space)
{
  const std::uint64_t total = space.size();
  const auto chunks = static_cast<std::int64_t>((total + chunk_size - 1) / chunk_size);
  Reachability seen;
  for (auto size : space.domain_sizes) seen.emplace_back(size, false);
#pragma omp parallel
  {
    Reachability local = seen;
#pragma omp for schedule(dynamic)
    for (std::int64_t c = 0; c < chunks; ++c) {
      const std::uint64_t begin = static_cast<std::uint64_t>(c) * chunk_size;
      scan(space, begin, std::min(total, begin + chunk_size), [&](const Values& v) {
        for (std::size_t f = 0; f < v.size(); ++f) local[f][v[f]] = true;
      });
    }
#pragma omp critical
    for (std::size_t f = 0; f < seen.size(); ++f)
      for (std::size_t v = 0; v < seen[f].size(); ++v)
        if (local[f][v]) seen[f][v] = true;
  }
  return seen;
}

} // namespace tdm::kernels
