#include "dwbec/grid.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "dwbec/io.hpp"

namespace dwbec {

namespace {
constexpr double kPi = std::numbers::pi;

void fill_axes(ContourGrid& g, int nx, int nphi) {
  g.x_axis.resize(nx);
  g.phi_axis.resize(nphi);
  const double a = kBoundaryMargin, b = 1.0 - kBoundaryMargin;
  for (int i = 0; i < nx; ++i)
    g.x_axis[i] = a + (b - a) * static_cast<double>(i) / (nx - 1);
  for (int j = 0; j < nphi; ++j)
    g.phi_axis[j] = -kPi + 2.0 * kPi * (j + 1) / nphi;
  g.values.assign(static_cast<std::size_t>(nx) * nphi, 0.0);
}
}  // namespace

void fill_contour_serial(ContourGrid& g) {
  const int nx = static_cast<int>(g.x_axis.size());
  const int nphi = static_cast<int>(g.phi_axis.size());
  for (int j = 0; j < nphi; ++j)
    for (int i = 0; i < nx; ++i)
      g.values[static_cast<std::size_t>(j) * nx + i] =
          reduced_energy({g.x_axis[i], g.phi_axis[j]}, g.xi, g.delta);
}

void fill_contour_parallel(ContourGrid& g) {
  const int nx = static_cast<int>(g.x_axis.size());
  const int nphi = static_cast<int>(g.phi_axis.size());
#pragma omp parallel for schedule(static)
  for (int j = 0; j < nphi; ++j)
    for (int i = 0; i < nx; ++i)
      g.values[static_cast<std::size_t>(j) * nx + i] =
          reduced_energy({g.x_axis[i], g.phi_axis[j]}, g.xi, g.delta);
}

ContourGrid make_contour(double xi, double delta, int nx, int nphi,
                         bool parallel) {
  if (nx < 3 || nphi < 3) throw domain_error("make_contour: grid too small");
  ContourGrid g;
  g.xi = xi;
  g.delta = delta;
  fill_axes(g, nx, nphi);
  if (parallel) {
    fill_contour_parallel(g);
  } else {
    fill_contour_serial(g);
  }
  g.overlay = find_fixed_points(xi, delta);
  return g;
}

std::vector<GridCriticalPoint> grid_critical_points(const ContourGrid& g) {
  const int nx = static_cast<int>(g.x_axis.size());
  const int nphi = static_cast<int>(g.phi_axis.size());
  std::vector<GridCriticalPoint> out;

  // Ring order around the center cell.
  static constexpr int di[8] = {1, 1, 0, -1, -1, -1, 0, 1};
  static constexpr int dj[8] = {0, 1, 1, 1, 0, -1, -1, -1};

  for (int j = 0; j < nphi; ++j) {
    for (int i = 1; i + 1 < nx; ++i) {
      const double c = g.at(i, j);
      double diff[8];
      bool pos = false, neg = false;
      for (int k = 0; k < 8; ++k) {
        const int jj = (j + dj[k] + nphi) % nphi;  // phi wraps
        diff[k] = g.at(i + di[k], jj) - c;
        pos |= diff[k] > 0.0;
        neg |= diff[k] < 0.0;
      }
      GridCriticalPoint p;
      p.i = i;
      p.j = j;
      p.x = g.x_axis[i];
      p.phi = g.phi_axis[j];
      if (!neg && pos) {
        p.type = CriticalType::minimum;
        out.push_back(p);
      } else if (!pos && neg) {
        p.type = CriticalType::maximum;
        out.push_back(p);
      } else {
        int changes = 0;
        for (int k = 0; k < 8; ++k)
          if ((diff[k] > 0.0) != (diff[(k + 1) % 8] > 0.0)) ++changes;
        if (changes >= 4) {
          p.type = CriticalType::saddle;
          out.push_back(p);
        }
      }
    }
  }
  return out;
}

void write_contour_csv(const ContourGrid& g, std::ostream& os) {
  os << "phi";
  for (double x : g.x_axis) os << ',' << format_double(x);
  os << '\n';
  const int nx = static_cast<int>(g.x_axis.size());
  for (std::size_t j = 0; j < g.phi_axis.size(); ++j) {
    os << format_double(g.phi_axis[j]);
    for (int i = 0; i < nx; ++i)
      os << ',' << format_double(g.values[j * nx + i]);
    os << '\n';
  }
}

}  // namespace dwbec
