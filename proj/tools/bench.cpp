// Compares the OpenMP kernels against their serial reference
// implementations and reports timings plus agreement.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "dwbec/grid.hpp"
#include "dwbec/quantum.hpp"

using namespace dwbec;
using clk = std::chrono::steady_clock;

static double ms_since(clk::time_point t0) {
  return std::chrono::duration<double, std::milli>(clk::now() - t0).count();
}

int main() {
  {
    ContourGrid g = make_contour(1.8, 0.1, 2001, 2001, false);
    auto t0 = clk::now();
    fill_contour_serial(g);
    const double t_serial = ms_since(t0);
    std::vector<double> ref = g.values;

    t0 = clk::now();
    fill_contour_parallel(g);
    const double t_parallel = ms_since(t0);

    double max_diff = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i)
      max_diff = std::max(max_diff, std::abs(ref[i] - g.values[i]));
    std::printf("contour 2001x2001: serial %.1f ms, omp %.1f ms, "
                "speedup %.2fx, max diff %.3g\n",
                t_serial, t_parallel, t_serial / t_parallel, max_diff);
  }

  {
    const int n = 2000;
    std::mt19937 rng(7);
    std::normal_distribution<double> gauss;
    std::vector<double> state(n + 1);
    double norm = 0.0;
    for (double& c : state) {
      c = gauss(rng);
      norm += c * c;
    }
    for (double& c : state) c /= std::sqrt(norm);

    auto t0 = clk::now();
    PhaseDistribution ref = phase_distribution_serial(state);
    const double t_serial = ms_since(t0);

    t0 = clk::now();
    PhaseDistribution par = phase_distribution(state);
    const double t_parallel = ms_since(t0);

    double max_diff = 0.0;
    for (std::size_t i = 0; i < ref.p.size(); ++i)
      max_diff = std::max(max_diff, std::abs(ref.p[i] - par.p[i]));
    std::printf("phase projection N=%d: serial %.1f ms, omp %.1f ms, "
                "speedup %.2fx, max diff %.3g\n",
                n, t_serial, t_parallel, t_serial / t_parallel, max_diff);
  }
  return 0;
}
