// Serial reference against the ring-factored OpenMP transforms.
//
//   uinf_bench [l_max ...]
#include <fmt/format.h>
#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "uinf/kernels.hpp"
#include "uinf/sphere_grid.hpp"

namespace {

using uinf::kernels::cplx;

template <class F>
double best_of(int reps, F&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    best = std::min(best, dt.count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> sizes{8, 16, 32, 48};
  if (argc > 1) {
    sizes.clear();
    for (int i = 1; i < argc; ++i) sizes.push_back(std::atoi(argv[i]));
  }
  fmt::print("threads {}\n", omp_get_max_threads());
  fmt::print("{:>6} {:>8} {:>12} {:>12} {:>9} {:>12} {:>12} {:>9} {:>10}\n", "l_max", "nodes", "synth_ser",
             "synth_par", "speedup", "anal_ser", "anal_par", "speedup", "max_diff");
  std::mt19937_64 rng(1);
  std::normal_distribution<double> nd;
  for (int L : sizes) {
    if (L <= 0) continue;
    const auto basis = uinf::basis_for(2 * L, L);
    std::vector<cplx> c((L + 1) * (L + 1));
    for (auto& x : c) x = {nd(rng), nd(rng)};
    const int reps = L <= 16 ? 5 : 2;

    std::vector<cplx> vs, vp, as, ap;
    const double ts = best_of(reps, [&] { vs = uinf::kernels::serial::synthesize(c, L, *basis); });
    const double tp = best_of(reps, [&] { vp = uinf::kernels::parallel::synthesize(c, L, *basis); });
    const double tas = best_of(reps, [&] { as = uinf::kernels::serial::analyze(vp, L, *basis); });
    const double tap = best_of(reps, [&] { ap = uinf::kernels::parallel::analyze(vp, L, *basis); });

    double diff = 0.0;
    for (std::size_t i = 0; i < vs.size(); ++i) diff = std::max(diff, std::abs(vs[i] - vp[i]));
    for (std::size_t i = 0; i < as.size(); ++i) diff = std::max(diff, std::abs(as[i] - ap[i]));
    fmt::print("{:>6} {:>8} {:>12.3e} {:>12.3e} {:>9.1f} {:>12.3e} {:>12.3e} {:>9.1f} {:>10.2e}\n", L,
               basis->grid().size(), ts, tp, ts / tp, tas, tap, tas / tap, diff);
  }
  return 0;
}
