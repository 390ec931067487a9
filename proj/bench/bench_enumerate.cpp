// Compares the serial reference kernels with the OpenMP kernels on a
// synthetic model. Usage: tdm_bench [features] [values] [rules] [repeats]
#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <random>
#include <string>

#include "tdm/checker.hpp"
#include "tdm/engine.hpp"
#include "tdm/kernels.hpp"

namespace {

tdm::Model synthetic(int features, int values, int rules, unsigned seed)
{
  std::mt19937 rng(seed);
  tdm::Model model;
  model.meta.name = "Bench";
  for (int f = 0; f < features; ++f) {
    tdm::FeatureDecl decl;
    decl.name = "F" + std::to_string(f);
    for (int v = 0; v < values; ++v) decl.values.push_back("v" + std::to_string(v));
    model.meta.features.push_back(decl);
  }
  std::uniform_int_distribution<int> pick_f(0, features - 1), pick_v(0, values - 1), coin(0, 1);
  for (int r = 0; r < rules; ++r) {
    int lhs = pick_f(rng), rhs = pick_f(rng);
    while (rhs == lhs) rhs = pick_f(rng);
    tdm::ControlRule rule;
    rule.lhs = {"F" + std::to_string(lhs), "v" + std::to_string(pick_v(rng)), {}};
    rule.rhs = {"F" + std::to_string(rhs), "v" + std::to_string(pick_v(rng)), {}};
    rule.relation = coin(rng) ? "requires" : "excludes";
    model.meta.control.push_back(rule);
  }
  return model;
}

template <typename F>
double best_ms(int repeats, F&& f)
{
  double best = 1e300;
  for (int i = 0; i < repeats; ++i) {
    auto start = std::chrono::steady_clock::now();
    f();
    std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
    best = std::min(best, elapsed.count());
  }
  return best;
}

} // namespace

int main(int argc, char** argv)
{
  const int features = argc > 1 ? std::atoi(argv[1]) : 10;
  const int values = argc > 2 ? std::atoi(argv[2]) : 4;
  const int rules = argc > 3 ? std::atoi(argv[3]) : 12;
  const int repeats = argc > 4 ? std::atoi(argv[4]) : 3;
  if (features < 2 || values < 1 || rules < 0 || repeats < 1) {
    std::cerr << "usage: tdm_bench [features>=2] [values>=1] [rules>=0] [repeats>=1]\n";
    return 2;
  }

  auto checked = tdm::check(synthetic(features, values, rules, 7));
  const auto space = tdm::compile_space(checked.resolved);
  std::cout << "space " << space.size() << " assignments, " << space.rules.size() << " rules, "
            << tdm::kernels::max_threads() << " thread(s)\n";

  std::uint64_t serial_count = 0, parallel_count = 0;
  std::size_t serial_hits = 0, parallel_hits = 0;
  const double count_serial = best_ms(repeats, [&] { serial_count = tdm::kernels::count_serial(space); });
  const double count_parallel = best_ms(repeats, [&] { parallel_count = tdm::kernels::count_parallel(space); });
  const double enum_serial =
    best_ms(repeats, [&] { serial_hits = tdm::kernels::enumerate_serial(space, tdm::no_limit).assignments.size(); });
  const double enum_parallel = best_ms(
    repeats, [&] { parallel_hits = tdm::kernels::enumerate_parallel(space, tdm::no_limit).assignments.size(); });
  const double dead_serial = best_ms(repeats, [&] { (void)tdm::kernels::reachability_serial(space); });
  const double dead_parallel = best_ms(repeats, [&] { (void)tdm::kernels::reachability_parallel(space); });

  std::cout << std::fixed << std::setprecision(2);
  std::cout << "kernel        serial ms   parallel ms   speedup\n";
  auto row = [](const char* name, double s, double p) {
    std::cout << std::left << std::setw(12) << name << std::right << std::setw(11) << s << std::setw(14) << p
              << std::setw(10) << (p > 0 ? s / p : 0.0) << '\n';
  };
  row("count", count_serial, count_parallel);
  row("enumerate", enum_serial, enum_parallel);
  row("reachable", dead_serial, dead_parallel);

  if (serial_count != parallel_count || serial_hits != parallel_hits || serial_count != serial_hits) {
    std::cerr << "mismatch: serial " << serial_count << "/" << serial_hits << " parallel " << parallel_count << "/"
              << parallel_hits << '\n';
    return 1;
  }
  std::cout << "valid configurations: " << serial_count << '\n';
  return 0;
}
