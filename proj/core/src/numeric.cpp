#include "logwell/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "logwell/parallel.hpp"
#include "logwell/tridiag.hpp"

namespace logwell::numeric {

namespace {

using tridiag::Tridiagonal;

struct Folds {
  Tridiagonal even;
  Tridiagonal odd;
  std::size_t junction;  // left-half index adjacent to the fold line
};

std::vector<double> node_positions(double L, int N, double offset) {
  double h = 2.0 * L / (N + 1);
  std::vector<double> x(static_cast<std::size_t>(N));
  double center = (N + 1) * 0.5;
  for (int i = 0; i < N; ++i)
    x[static_cast<std::size_t>(i)] = ((i + 1) - center) * h + offset;
  return x;
}

// Minimum distance from any node to any singular point.
double grid_clearance(const SingularSet& sing, double L, int N, double offset) {
  if (sing.empty()) return std::numeric_limits<double>::infinity();
  double h = 2.0 * L / (N + 1);
  double center = (N + 1) * 0.5;
  double t0 = 1.0 - center;
  double clearance = std::numeric_limits<double>::infinity();
  for (double p : sing.points) {
    double fi = (p - offset) / h - t0;
    long near = std::lround(fi);
    for (long i = near - 1; i <= near + 1; ++i) {
      if (i < 0 || i >= N) continue;
      double x = ((i + 1) - center) * h + offset;
      clearance = std::min(clearance, std::abs(x - p));
    }
  }
  return clearance;
}

Tridiagonal discretize(const ValidatedSpec& spec, const Grid& grid) {
  Tridiagonal t;
  std::size_t n = grid.nodes.size();
  t.diag.resize(n);
  t.off.assign(n - 1, -1.0 / (grid.h * grid.h));
  double kinetic = 2.0 / (grid.h * grid.h);
  for (std::size_t i = 0; i < n; ++i)
    t.diag[i] = kinetic + eval(spec, grid.nodes[i]);
  return t;
}

// Exact even/odd split of a mirror-symmetric tridiagonal problem.
Folds fold(const Tridiagonal& t, int N) {
  Folds f;
  double e = t.off[0];
  if (N % 2 == 0) {
    std::size_t m = static_cast<std::size_t>(N) / 2;
    f.junction = m - 1;
    f.even.diag.assign(t.diag.begin(), t.diag.begin() + m);
    f.odd.diag = f.even.diag;
    f.even.diag[m - 1] += e;
    f.odd.diag[m - 1] -= e;
    f.even.off.assign(m - 1, e);
    f.odd.off.assign(m - 1, e);
  } else {
    std::size_t c = static_cast<std::size_t>(N - 1) / 2;
    f.junction = c;
    f.even.diag.assign(t.diag.begin(), t.diag.begin() + c + 1);
    f.even.off.assign(c, e);
    if (c > 0) f.even.off[c - 1] = std::sqrt(2.0) * e;
    f.odd.diag.assign(t.diag.begin(), t.diag.begin() + c);
    f.odd.off.assign(c > 0 ? c - 1 : 0, e);
  }
  return f;
}

// Rebuild the full-grid vector from a fold eigenvector.
std::vector<double> unfold(const std::vector<double>& half, int N, bool even) {
  std::size_t n = static_cast<std::size_t>(N);
  std::vector<double> full(n, 0.0);
  if (N % 2 == 0) {
    std::size_t m = n / 2;
    for (std::size_t i = 0; i < m; ++i) {
      full[i] = half[i];
      full[n - 1 - i] = even ? half[i] : -half[i];
    }
  } else {
    std::size_t c = (n - 1) / 2;
    if (even) {
      for (std::size_t i = 0; i < c; ++i) {
        full[i] = half[i];
        full[n - 1 - i] = half[i];
      }
      full[c] = std::sqrt(2.0) * half[c];
    } else {
      for (std::size_t i = 0; i < c; ++i) {
        full[i] = half[i];
        full[n - 1 - i] = -half[i];
      }
      full[c] = 0.0;
    }
  }
  return full;
}

void normalize_state(std::vector<double>& psi, double h) {
  double s = 0.0;
  for (double v : psi) s += v * v;
  double scale = 1.0 / std::sqrt(s * h);
  for (double& v : psi) v *= scale;
  for (double v : psi) {
    if (v != 0.0) {
      if (v < 0.0)
        for (double& w : psi) w = -w;
      break;
    }
  }
}

std::vector<double> eigenvalues_only(const ValidatedSpec& spec, double L, int N,
                                     int k) {
  Grid grid = build_grid(spec, L, N);
  Tridiagonal t = discretize(spec, grid);
  if (grid.symmetric()) {
    Folds f = fold(t, N);
    int k_even = (k + 1) / 2, k_odd = k / 2;
    std::vector<double> ev = tridiag::lowest_eigenvalues(f.even, k_even);
    std::vector<double> od =
        k_odd > 0 ? tridiag::lowest_eigenvalues(f.odd, k_odd)
                  : std::vector<double>{};
    std::vector<double> out(static_cast<std::size_t>(k));
    for (int n = 0; n < k; ++n)
      out[static_cast<std::size_t>(n)] =
          (n % 2 == 0) ? ev[static_cast<std::size_t>(n / 2)]
                       : od[static_cast<std::size_t>(n / 2)];
    return out;
  }
  return tridiag::lowest_eigenvalues(t, k);
}

}  // namespace

int GridSpectrum::dominant_region(int n) const {
  const std::vector<double>& m = region_mass[static_cast<std::size_t>(n)];
  auto region_min_abs = [&](std::size_t r) {
    double lo = r == 0 ? -grid.L : region_edges[r - 1];
    double hi = r == region_edges.size() ? grid.L : region_edges[r];
    if (lo <= 0.0 && 0.0 <= hi) return 0.0;
    return std::min(std::abs(lo), std::abs(hi));
  };
  std::size_t best = 0;
  for (std::size_t r = 1; r < m.size(); ++r) {
    if (m[r] > m[best]) {
      best = r;
    } else if (m[r] == m[best] && region_min_abs(r) < region_min_abs(best)) {
      best = r;
    }
  }
  return static_cast<int>(best);
}

double default_domain(const ValidatedSpec& spec) {
  double s_top = spec.spike_count() ? spec.spikes().back().s : 0.0;
  double r = std::sqrt(spec.g2() / spec.omega2());
  return std::max(s_top, r) * 2.0 + 8.0 / std::sqrt(spec.omega2());
}

Grid build_grid(const ValidatedSpec& spec, double L, int N) {
  if (N < 99)
    fail(errc::invalid_argument, "grid needs N >= 99, got " + std::to_string(N));
  SingularSet sing = singularities(spec);
  double top = sing.empty() ? 0.0 : sing.points.back();
  if (!(L > top + 1.0))
    fail(errc::domain_too_small,
         "L must exceed the largest singular point + 1 (need > " +
             std::to_string(top + 1.0) + ")");

  double h = 2.0 * L / (N + 1);
  double delta_grid = h / 4.0;
  std::vector<double> candidates{0.0};
  for (int m = 1; m <= 20; ++m) {
    candidates.push_back(h / (2 * m + 1));
    candidates.push_back(-h / (2 * m + 1));
  }
  for (double offset : candidates) {
    if (grid_clearance(sing, L, N, offset) >= delta_grid) {
      Grid g;
      g.L = L;
      g.N = N;
      g.h = h;
      g.offset = offset;
      g.nodes = node_positions(L, N, offset);
      return g;
    }
  }
  fail(errc::clearance_impossible,
       "no candidate offset clears all singular points at N = " +
           std::to_string(N) + "; retry with N+1 or N-1");
}

GridSpectrum solve(const ValidatedSpec& spec, double L, int N, int k) {
  if (k < 1 || k > 20)
    fail(errc::invalid_argument, "k must be in [1, 20], got " + std::to_string(k));
  GridSpectrum gs;
  gs.grid = build_grid(spec, L, N);
  Tridiagonal t = discretize(spec, gs.grid);
  gs.eigenvalues.resize(static_cast<std::size_t>(k));
  gs.eigenvectors.resize(static_cast<std::size_t>(k));

  if (gs.grid.symmetric()) {
    Folds f = fold(t, N);
    int k_even = (k + 1) / 2, k_odd = k / 2;
    std::vector<double> ev = tridiag::lowest_eigenvalues(f.even, k_even);
    std::vector<double> od =
        k_odd > 0 ? tridiag::lowest_eigenvalues(f.odd, k_odd)
                  : std::vector<double>{};
    par::parallel_for(static_cast<std::size_t>(k), [&](std::size_t n) {
      bool even = (n % 2 == 0);
      double lambda = even ? ev[n / 2] : od[n / 2];
      const Tridiagonal& half = even ? f.even : f.odd;
      std::vector<double> phi = tridiag::inverse_iteration(half, lambda);
      std::vector<double> psi = unfold(phi, N, even);
      normalize_state(psi, gs.grid.h);
      gs.eigenvalues[n] = lambda;
      gs.eigenvectors[n] = std::move(psi);
    });
  } else {
    std::vector<double> evs = tridiag::lowest_eigenvalues(t, k);
    par::parallel_for(static_cast<std::size_t>(k), [&](std::size_t n) {
      gs.eigenvalues[n] = evs[n];
      gs.eigenvectors[n] = tridiag::inverse_iteration(t, evs[n]);
    });
    // near-degenerate neighbours can mix under inverse iteration;
    // re-orthogonalize inside clusters, in index order
    for (std::size_t n = 1; n < gs.eigenvectors.size(); ++n) {
      for (std::size_t m = 0; m < n; ++m) {
        if (std::abs(evs[n] - evs[m]) >
            1e-6 * std::max(1.0, std::abs(evs[n])))
          continue;
        double dot = 0.0;
        for (std::size_t i = 0; i < gs.eigenvectors[n].size(); ++i)
          dot += gs.eigenvectors[n][i] * gs.eigenvectors[m][i];
        for (std::size_t i = 0; i < gs.eigenvectors[n].size(); ++i)
          gs.eigenvectors[n][i] -= dot * gs.eigenvectors[m][i];
      }
    }
    for (auto& psi : gs.eigenvectors) normalize_state(psi, gs.grid.h);
  }

  SingularSet sing = singularities(spec);
  gs.region_edges = sing.points;
  gs.region_mass = localization(gs, sing);
  return gs;
}

std::vector<double> richardson(const ValidatedSpec& spec, double L, int N, int k) {
  std::vector<double> coarse = eigenvalues_only(spec, L, N, k);
  std::vector<double> fine = eigenvalues_only(spec, L, 2 * N, k);
  std::vector<double> out(static_cast<std::size_t>(k));
  for (int n = 0; n < k; ++n)
    out[static_cast<std::size_t>(n)] =
        (4.0 * fine[static_cast<std::size_t>(n)] -
         coarse[static_cast<std::size_t>(n)]) /
        3.0;
  return out;
}

std::vector<std::vector<double>> localization(const GridSpectrum& gs,
                                              const SingularSet& sing) {
  std::size_t regions = sing.region_count();
  std::vector<std::vector<double>> mass(gs.eigenvectors.size(),
                                        std::vector<double>(regions, 0.0));
  for (std::size_t n = 0; n < gs.eigenvectors.size(); ++n) {
    const std::vector<double>& psi = gs.eigenvectors[n];
    for (std::size_t i = 0; i < psi.size(); ++i) {
      std::size_t r = sing.region_of(gs.grid.nodes[i]);
      mass[n][r] += psi[i] * psi[i] * gs.grid.h;
    }
  }
  return mass;
}

double pair_splitting(const ValidatedSpec& spec, double L, int N, int pair) {
  if (N % 2 != 0)
    fail(errc::invalid_argument, "pair_splitting needs an even N");
  Grid grid = build_grid(spec, L, N);
  if (!grid.symmetric())
    fail(errc::invalid_argument,
         "pair_splitting needs a symmetric (offset 0) grid; got offset " +
             std::to_string(grid.offset));
  Tridiagonal t = discretize(spec, grid);
  Folds f = fold(t, N);
  std::vector<double> ev = tridiag::lowest_eigenvalues(f.even, pair + 1);
  std::vector<double> od = tridiag::lowest_eigenvalues(f.odd, pair + 1);
  std::vector<double> pe =
      tridiag::inverse_iteration(f.even, ev[static_cast<std::size_t>(pair)]);
  std::vector<double> po =
      tridiag::inverse_iteration(f.odd, od[static_cast<std::size_t>(pair)]);
  double dot = 0.0;
  for (std::size_t i = 0; i < pe.size(); ++i) dot += pe[i] * po[i];
  if (dot < 0.0) {
    for (double& v : po) v = -v;
    dot = -dot;
  }
  double coupling = 2.0 / (grid.h * grid.h);
  return coupling * pe[f.junction] * po[f.junction] / dot;
}

}  // namespace logwell::numeric
