#include <doctest.h>

#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tdm/kernels.hpp"

using namespace tdm::kernels;

namespace {

CompiledSpace random_space(std::mt19937& rng, int features, int max_values, int rules)
{
  CompiledSpace space;
  std::uniform_int_distribution<int> values(1, max_values);
  for (int f = 0; f < features; ++f) {
    const auto n = static_cast<std::uint32_t>(values(rng));
    std::vector<std::uint32_t> choice;
    for (std::uint32_t v = 0; v < n; ++v)
      if (rng() % 5 != 0 || choice.empty()) choice.push_back(v);
    space.choices.push_back(choice);
    space.domain_sizes.push_back(n);
  }
  std::uniform_int_distribution<int> pick(0, features - 1);
  for (int r = 0; r < rules; ++r) {
    const auto lf = static_cast<std::uint32_t>(pick(rng));
    const auto rf = static_cast<std::uint32_t>(pick(rng));
    space.rules.push_back({lf, static_cast<std::uint32_t>(rng() % space.domain_sizes[lf]), rf,
                           static_cast<std::uint32_t>(rng() % space.domain_sizes[rf]), rng() % 2 == 0});
  }
  return space;
}

struct Threads
{
  Threads()
  {
#ifdef _OPENMP
    omp_set_num_threads(4);
#endif
  }
} const force_threads;

} // namespace

TEST_CASE("size saturates and handles empty choices")
{
  CompiledSpace empty;
  CHECK(empty.size() == 1);
  CompiledSpace none;
  none.choices = {{0}, {}};
  none.domain_sizes = {1, 1};
  CHECK(none.size() == 0);
  CHECK(count_serial(none) == 0);
  CHECK(count_parallel(none) == 0);
  CompiledSpace huge;
  for (int i = 0; i < 70; ++i) {
    huge.choices.push_back({0, 1});
    huge.domain_sizes.push_back(2);
  }
  CHECK(huge.size() == std::numeric_limits<std::uint64_t>::max());
}

TEST_CASE("zero features yield the single empty assignment")
{
  CompiledSpace space;
  auto serial = enumerate_serial(space, 10);
  auto parallel = enumerate_parallel(space, 10);
  REQUIRE(serial.assignments.size() == 1);
  CHECK(serial.assignments[0].empty());
  CHECK(parallel.assignments == serial.assignments);
  CHECK(count_parallel(space) == 1);
}

TEST_CASE("rule semantics on a two-feature space")
{
  // A.0 requires B.0 knocks out exactly (A=0, B=1).
  CompiledSpace space;
  space.choices = {{0, 1}, {0, 1}};
  space.domain_sizes = {2, 2};
  space.rules = {{0, 0, 1, 0, true}};
  auto hits = enumerate_serial(space, 100);
  CHECK(hits.assignments == std::vector<Values>{{0, 0}, {1, 0}, {1, 1}});
  space.rules = {{0, 0, 1, 0, false}};
  CHECK(enumerate_serial(space, 100).assignments == std::vector<Values>{{0, 1}, {1, 0}, {1, 1}});
}

TEST_CASE("parallel kernels match the serial reference on random spaces")
{
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 150; ++trial) {
    const int features = 1 + trial % 6;
    auto space = random_space(rng, features, 4, trial % 8);
    CAPTURE(trial);
    const auto serial = enumerate_serial(space, tdm::kernels::Values::size_type(-1));
    const auto parallel = enumerate_parallel(space, tdm::kernels::Values::size_type(-1));
    CHECK(parallel.assignments == serial.assignments);
    CHECK(count_parallel(space) == serial.assignments.size());
    CHECK(count_serial(space) == serial.assignments.size());
    CHECK(reachability_parallel(space) == reachability_serial(space));
  }
}

TEST_CASE("multi-block spaces keep canonical order and truncate identically")
{
  std::mt19937 rng(77);
  // 5^8 = 390625 assignments, more than one parallel block.
  CompiledSpace space;
  for (int f = 0; f < 8; ++f) {
    space.choices.push_back({0, 1, 2, 3, 4});
    space.domain_sizes.push_back(5);
  }
  space.rules = {{0, 1, 3, 2, true}, {2, 0, 5, 4, false}, {7, 3, 1, 1, true}};
  const auto serial = enumerate_serial(space, std::uint64_t(-1));
  const auto parallel = enumerate_parallel(space, std::uint64_t(-1));
  CHECK(serial.assignments.size() == count_serial(space));
  CHECK(serial.assignments.size() > 262145);
  CHECK(parallel.assignments == serial.assignments);
  CHECK(count_parallel(space) == count_serial(space));
  CHECK(reachability_parallel(space) == reachability_serial(space));

  for (std::uint64_t limit : {1ull, 4095ull, 4096ull, 262144ull, 262145ull, 300000ull}) {
    CAPTURE(limit);
    const auto s = enumerate_serial(space, limit);
    const auto p = enumerate_parallel(space, limit);
    const bool more = limit < serial.assignments.size();
    CHECK(s.truncated == more);
    CHECK(p.truncated == more);
    CHECK(p.assignments == s.assignments);
  }
  const auto exact = enumerate_parallel(space, serial.assignments.size());
  CHECK_FALSE(exact.truncated);
  CHECK(exact.assignments.size() == serial.assignments.size());
}
