/**
 * @file bench_kernels.cpp
 * @brief Serial vs OpenMP timings for the per-index kernels, with a check
 *        that both runs produce identical results.
 */
#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "lcmin/assoc.hpp"
#include "lcmin/envelope.hpp"
#include "lcmin/generators.hpp"
#include "lcmin/matrices.hpp"

using namespace lcmin;

namespace {

template <class Fn>
double best_of(int reps, Fn&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

/// Runs `fn` in both modes, prints one row and returns whether results match.
template <class Fn>
bool row(const std::string& name, int reps, Fn&& fn) {
  decltype(fn(Exec::serial)) serial_out, parallel_out;
  const double ts = best_of(reps, [&] { serial_out = fn(Exec::serial); });
  const double tp = best_of(reps, [&] { parallel_out = fn(Exec::parallel); });
  const bool same = serial_out == parallel_out;
  std::printf("%-28s %10.4f %10.4f %8.2fx  %s\n", name.c_str(), ts, tp, ts / tp, same ? "identical" : "MISMATCH");
  return same;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs parallel kernel timings"};
  bool quick = false;
  int reps = 3;
  app.add_flag("--quick", quick, "small sizes, one repetition");
  app.add_option("--reps", reps, "repetitions per measurement (best is reported)");
  CLI11_PARSE(app, argc, argv);
  if (quick) reps = 1;

  SplitMix64 rng(42);
  const auto g2 = gen::random_lifted(quick ? std::vector<int>{6, 6} : std::vector<int>{20, 20}, rng);
  const auto g2s = gen::random_lifted(quick ? std::vector<int>{4, 4} : std::vector<int>{10, 10}, rng);
  const auto g3 = gen::random_lifted(quick ? std::vector<int>{3, 3, 3} : std::vector<int>{7, 7, 7}, rng);
  const auto ce = single_level(counterexample_grid(quick ? std::vector<int>{8, 8} : std::vector<int>{24, 24}));

  std::printf("threads: %d\n", max_threads());
  std::printf("%-28s %10s %10s %9s\n", "kernel", "serial_s", "parallel_s", "speedup");
  bool ok = true;
  ok &= row("minorant_lp 2-D", reps, [&](Exec e) { return minorant_lp(g2, e).minorant; });
  ok &= row("minorant_lp 3-D", reps, [&](Exec e) { return minorant_lp(g3, e).minorant; });
  ok &= row("q3 table 2-D", reps, [&](Exec e) { return Q3Table(g2, default_s_grid(g2), e).all(e); });
  ok &= row("dual grid 2-D", reps, [&](Exec e) {
    std::vector<double> v;
    for (const auto& d : minorant_dual_grid(g2s, default_k_grid(g2s, 0.5), e)) v.push_back(d.value);
    return v;
  });
  ok &= row("verify L37R", reps, [&](Exec e) {
    const auto r = verify_condition(ce, {Condition::L37R, {{1, 1, 10.0}}}, e);
    return std::make_pair(r.max_slack, r.entries[0].result.first_violation);
  });
  return ok ? 0 : 1;
}
