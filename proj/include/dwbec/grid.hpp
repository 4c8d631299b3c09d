#pragma once

#include <iosfwd>
#include <vector>

#include "dwbec/bifurcation.hpp"
#include "dwbec/model.hpp"

namespace dwbec {

/// Reduced-energy surface sampled on a uniform (x, phi) grid, with the
/// fixed points overlaid.
struct ContourGrid {
  std::vector<double> x_axis;    // uniform over [margin, 1-margin]
  std::vector<double> phi_axis;  // uniform over (-pi, pi]
  std::vector<double> values;    // row-major, values[j*nx + i] = h(x_i, phi_j)
  std::vector<FixedPoint> overlay;
  double xi = 0.0;
  double delta = 0.0;

  double at(int i, int j) const {
    return values[static_cast<std::size_t>(j) * x_axis.size() + i];
  }
};

ContourGrid make_contour(double xi, double delta, int nx = 401, int nphi = 401,
                         bool parallel = true);

/// Serial reference for the grid fill, kept for testing the OpenMP kernel.
void fill_contour_serial(ContourGrid& grid);
void fill_contour_parallel(ContourGrid& grid);

enum class CriticalType { minimum, maximum, saddle };

struct GridCriticalPoint {
  int i = 0;  // x index
  int j = 0;  // phi index
  double x = 0.0;
  double phi = 0.0;
  CriticalType type = CriticalType::saddle;
};

/// Discrete critical points from the 8-neighbor ring (periodic in phi,
/// interior in x): extrema where all neighbor differences share a sign,
/// saddles where the differences alternate four or more times.
std::vector<GridCriticalPoint> grid_critical_points(const ContourGrid& grid);

/// Matrix CSV: header `phi,<x values>`, one row per phi sample.
void write_contour_csv(const ContourGrid& grid, std::ostream& os);

}  // namespace dwbec
