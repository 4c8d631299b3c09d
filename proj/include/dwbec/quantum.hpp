#pragma once

#include <span>
#include <vector>

#include "dwbec/model.hpp"

namespace dwbec {

/// Two-mode Hamiltonian in the fixed-N Fock basis |n, N-n>, n = left-well
/// count. Real symmetric tridiagonal, dimension N+1.
struct FockHamiltonian {
  int n_total = 0;
  std::vector<double> diag;     // length N+1
  std::vector<double> offdiag;  // length N, couples |n> and |n+1>
};

FockHamiltonian build(const ModelParams& p, int cap = 20000);

struct PhaseDistribution {
  std::vector<double> phi;  // uniform grid over (-pi, pi]
  std::vector<double> p;    // density, integrates to 1
};

struct QuantumGroundReport {
  double energy = 0.0;
  std::vector<double> state;  // unit-norm real amplitudes
  double mean_n = 0.0;
  double delta_n = 0.0;
  PhaseDistribution phase_distribution;
  double delta_phi_circular = 0.0;
};

QuantumGroundReport ground_state(const FockHamiltonian& h);

struct EigenPair {
  double energy = 0.0;
  std::vector<double> state;
};

/// k lowest eigenpairs, energies non-decreasing. Tridiagonal LAPACK solve.
std::vector<EigenPair> low_spectrum(const FockHamiltonian& h, int k);

struct DoubletReport {
  double gap = 0.0;  // E1 - E0
  double localized_delta_n = 0.0;
  double delta_n_minus = 0.0;  // left-poor localized state
  double delta_n_plus = 0.0;   // left-rich localized state
  double mean_n_minus = 0.0;
  double mean_n_plus = 0.0;
};

/// Symmetry-broken pair built from the two lowest eigenstates. Requires
/// delta = 0, attractive coupling and |xi| > 1, where the pair are true
/// energy minima. The near-degenerate span is resolved by diagonalizing
/// the number operator inside it, which reduces to (|g> +- |e>)/sqrt(2)
/// whenever the eigenstates have definite parity.
DoubletReport localized_doublet(const FockHamiltonian& h,
                                const ModelParams& p);

/// P(phi) by projection onto relative-phase states, on a uniform grid of
/// at least 4096 points (enlarged so the quadrature is exact for the
/// state's harmonics). OpenMP-parallel; the serial version is the
/// reference kept for testing.
PhaseDistribution phase_distribution(std::span<const double> state,
                                     int min_grid = 4096);
PhaseDistribution phase_distribution_serial(std::span<const double> state,
                                            int min_grid = 4096);

/// Circular standard deviation sqrt(-2 ln R) of an angular density.
double circular_stddev(const PhaseDistribution& dist);

}  // namespace dwbec
