#pragma once

#include <cstddef>
#include <vector>

#include "logwell/potential.hpp"

namespace logwell::numeric {

// Uniform Dirichlet grid on [-L, L]: N interior nodes, h = 2L/(N+1),
// x_i = ((i+1) - (N+1)/2)*h + offset. The offset is the first member of
// {0, h/3, -h/3, h/5, ...} keeping every node at least h/4 away from every
// singular point.
struct Grid {
  double L = 0.0;
  int N = 0;
  double h = 0.0;
  double offset = 0.0;
  std::vector<double> nodes;

  bool symmetric() const { return offset == 0.0; }
};

struct GridSpectrum {
  Grid grid;
  std::vector<double> eigenvalues;                 // ascending
  std::vector<std::vector<double>> eigenvectors;   // sum psi_i^2 h = 1
  std::vector<double> region_edges;                // singular points
  std::vector<std::vector<double>> region_mass;    // [state][region]

  // argmax region of state n; ties break toward the region containing
  // smaller |x|.
  int dominant_region(int n) const;
};

// Default half-width: max(s_K, g/omega)*2 + 8/sqrt(omega2).
double default_domain(const ValidatedSpec& spec);

// Throws DomainTooSmall if L <= max singular point + 1 and
// ClearanceImpossible if no candidate offset clears every singular point.
// Requires N >= 99.
Grid build_grid(const ValidatedSpec& spec, double L, int N);

// Lowest k eigenpairs of the tridiagonal discretization (diagonal
// 2/h^2 + V(x_i), off-diagonal -1/h^2) by Sturm-sequence bisection and
// inverse iteration. For symmetric grids the problem is split into its even
// and odd halves, so eigenvectors carry exact parity. Eigenvectors are
// normalized to sum psi_i^2 h = 1 with the first nonzero component positive.
// Region masses are filled in. k <= 20.
GridSpectrum solve(const ValidatedSpec& spec, double L, int N, int k);

// (4 E(2N) - E(N)) / 3 per level.
std::vector<double> richardson(const ValidatedSpec& spec, double L, int N, int k);

// m[n][r] = sum over nodes in region r of psi_i^2 h, with regions the open
// intervals between consecutive singular points (extended to +-L).
std::vector<std::vector<double>> localization(const GridSpectrum& gs,
                                              const SingularSet& sing);

// E_{2*pair+1} - E_{2*pair} evaluated without subtractive cancellation,
// through the cross identity on the even/odd half problems:
//   (E_odd - E_even) <psi_e, psi_o> = (2/h^2) psi_e(c) psi_o(c)
// with c the junction node of the fold. Resolves splittings far below the
// eigenvalue subtraction floor. Requires a symmetric grid with even N.
double pair_splitting(const ValidatedSpec& spec, double L, int N, int pair);

}  // namespace logwell::numeric
