// Wall-clock comparison of the OpenMP kernels against their serial
// reference versions. Usage: starkwave_bench [repeats]
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <vector>

#include <omp.h>

#include "starkwave/propagator.hpp"

using namespace starkwave;

namespace {

double best_of(int repeats, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s < best) best = s;
  }
  return best;
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-28s serial %9.4f s   parallel %9.4f s   speedup %5.2fx\n", name, serial, parallel, serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
  std::printf("threads: %d\n", omp_get_max_threads());

  const FieldSpec spec = FieldSpec::tabulated({0.0, 10.0, 20.0, 40.0}, {0.1, 0.6, -0.3, 0.2}).with_impulses({{7.0, 0.9}});
  std::vector<double> times;
  for (int k = 0; k <= 800; ++k) times.push_back(0.05 * k);
  const SiteWindow grid_window{-200, 200};

  volatile double sink = 0.0;
  const double gs = best_of(repeats, [&] { sink = reference::intensity_grid(spec, 0, times, grid_window).values[0]; });
  const double gp = best_of(repeats, [&] { sink = intensity_grid(spec, 0, times, grid_window).values[0]; });
  report("intensity_grid 801x401", gs, gp);

  LatticeState wide{-400, std::vector<Complex>(801, Complex{0.0, 0.0})};
  for (int m = -50; m <= 50; ++m) wide.amplitudes[static_cast<std::size_t>(m + 400)] = std::polar(0.1, 0.3 * m);
  const SiteWindow out{-600, 600};
  const double es = best_of(repeats, [&] { sink = reference::evolve_state_in_window(spec, wide, out, 30.0).norm(); });
  const double ep = best_of(repeats, [&] { sink = evolve_state_in_window(spec, wide, out, 30.0).norm(); });
  report("evolve_state 801 -> 1201", es, ep);
  (void)sink;
  return 0;
}
