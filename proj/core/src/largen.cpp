#include "logwell/largen.hpp"

#include <cmath>
#include <string>

namespace logwell::largen {

namespace {

void require_c2(const Well& well) {
  if (!(well.c2 > 0.0))
    fail(errc::degenerate_well,
         "well at x = " + std::to_string(well.location) + " has c2 <= 0");
}

const std::vector<double>& coeffs_for(const Well& well, int M) {
  if (well.coeffs.size() < static_cast<std::size_t>(M) + 1)
    fail(errc::m_too_small,
         "well.coeffs holds " + std::to_string(well.coeffs.size()) +
             " coefficients; need c_0..c_" + std::to_string(M) +
             " (call wells::fill_coeffs first)");
  return well.coeffs;
}

// Position operator of the harmonic part in its own eigenbasis:
// <n|y|n+1> = sqrt((n+1) / (2 sqrt(c2))).
tridiag::SymMatrix position_matrix(double c2, std::size_t n) {
  double omega = std::sqrt(c2);
  tridiag::SymMatrix y(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double v = std::sqrt((i + 1) / (2.0 * omega));
    y(i, i + 1) = v;
    y(i + 1, i) = v;
  }
  return y;
}

// Full Hamiltonian in the working basis of size w, using coefficients
// c_0..c_M; diagonal carries c_0 + (2n+1) sqrt(c_2).
tridiag::SymMatrix build_hamiltonian(const std::vector<double>& c, int M,
                                     std::size_t w) {
  double omega = std::sqrt(c[2]);
  tridiag::SymMatrix h(w);
  for (std::size_t i = 0; i < w; ++i) h(i, i) = c[0] + (2.0 * i + 1.0) * omega;
  if (M < 3) return h;
  tridiag::SymMatrix y = position_matrix(c[2], w);
  tridiag::SymMatrix yk = y;
  for (int k = 2; k <= M; ++k) {
    yk = yk.multiply(y);
    if (k < 3) continue;
    double ck = c[static_cast<std::size_t>(k)];
    if (ck == 0.0) continue;
    for (std::size_t i = 0; i < w; ++i)
      for (std::size_t j = 0; j < w; ++j) h(i, j) += ck * yk(i, j);
  }
  return h;
}

}  // namespace

LocalSpectrum leading_energies(const Well& well, int n_max) {
  require_c2(well);
  LocalSpectrum s;
  s.well_id = well.id;
  s.order_m = 2;
  s.n_max = n_max;
  s.method = Method::leading;
  double omega = std::sqrt(well.c2);
  s.energies.resize(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n)
    s.energies[static_cast<std::size_t>(n)] =
        well.value + (2.0 * n + 1.0) * omega;
  return s;
}

tridiag::SymMatrix ho_matrix(const Well& well, int M, int B) {
  if (M < 2)
    fail(errc::m_too_small, "M must be >= 2, got " + std::to_string(M));
  if (B < 1 || B < M)
    fail(errc::basis_too_small,
         "basis size B = " + std::to_string(B) + " too small for M = " +
             std::to_string(M));
  require_c2(well);
  const std::vector<double>& c = coeffs_for(well, M);
  std::size_t w = static_cast<std::size_t>(B) + static_cast<std::size_t>(M);
  return build_hamiltonian(c, M, w).top_left(static_cast<std::size_t>(B));
}

LocalSpectrum local_spectrum_matrix(const ValidatedSpec& spec, const Well& well,
                                    int M, int B, int n_max) {
  if (B < n_max + 8)
    fail(errc::basis_too_small, "need B >= n_max + 8, got B = " +
                                    std::to_string(B) + ", n_max = " +
                                    std::to_string(n_max));
  Well w = well;
  if (w.coeffs.size() < static_cast<std::size_t>(M) + 1)
    wells::fill_coeffs(spec, w, M);
  tridiag::SymMatrix h = ho_matrix(w, M, B);
  LocalSpectrum s;
  s.well_id = well.id;
  s.order_m = M;
  s.basis = B;
  s.n_max = n_max;
  s.method = Method::matrix;
  s.nonvariational = (M > 2) && (M % 2 == 1);
  s.energies = tridiag::sym_lowest_eigenvalues(h, n_max + 1);
  return s;
}

std::vector<double> rs_series(const Well& well, int M, int P, int n, int B) {
  if (P < 1)
    fail(errc::invalid_argument, "P must be >= 1, got " + std::to_string(P));
  if (n >= B)
    fail(errc::basis_too_small,
         "state n = " + std::to_string(n) + " needs basis > n, got B = " +
             std::to_string(B));
  require_c2(well);
  const std::vector<double>& c = coeffs_for(well, M);

  std::size_t b = static_cast<std::size_t>(B);
  tridiag::SymMatrix h =
      build_hamiltonian(c, M, b + static_cast<std::size_t>(M))
          .top_left(b);
  std::vector<double> h0(b);
  double omega = std::sqrt(c[2]);
  for (std::size_t i = 0; i < b; ++i) h0[i] = c[0] + (2.0 * i + 1.0) * omega;
  // W = H - diag(H0); its diagonal holds the even-power anharmonic terms.
  // Unperturbed harmonic levels are nondegenerate, so the plain recursion
  // with intermediate normalization <n|psi^(q)> = 0 applies.
  std::size_t un = static_cast<std::size_t>(n);
  auto w_at = [&](std::size_t i, std::size_t j) {
    double v = h(i, j);
    if (i == j) v -= h0[i];
    return v;
  };

  std::vector<double> e(static_cast<std::size_t>(P) + 1, 0.0);
  e[0] = h0[un];
  std::vector<std::vector<double>> psi(static_cast<std::size_t>(P) + 1,
                                       std::vector<double>(b, 0.0));
  psi[0][un] = 1.0;
  for (int q = 1; q <= P; ++q) {
    std::size_t uq = static_cast<std::size_t>(q);
    double eq = 0.0;
    for (std::size_t j = 0; j < b; ++j) eq += w_at(un, j) * psi[uq - 1][j];
    e[uq] = eq;
    for (std::size_t m = 0; m < b; ++m) {
      if (m == un) continue;
      double val = 0.0;
      for (std::size_t j = 0; j < b; ++j) val += w_at(m, j) * psi[uq - 1][j];
      for (int r = 1; r < q; ++r)
        val -= e[static_cast<std::size_t>(r)] *
               psi[uq - static_cast<std::size_t>(r)][m];
      psi[uq][m] = val / (h0[un] - h0[m]);
    }
  }
  return e;
}

std::vector<double> partial_sums(const std::vector<double>& coefficients) {
  std::vector<double> sums(coefficients.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    acc += coefficients[i];
    sums[i] = acc;
  }
  return sums;
}

int optimal_truncation(const std::vector<double>& partial_sums) {
  if (partial_sums.size() < 3)
    fail(errc::series_too_short,
         "need at least 3 partial sums, got " +
             std::to_string(partial_sums.size()));
  int best = 1;
  double best_inc = std::abs(partial_sums[1] - partial_sums[0]);
  for (std::size_t k = 2; k < partial_sums.size(); ++k) {
    double inc = std::abs(partial_sums[k] - partial_sums[k - 1]);
    if (inc < best_inc) {
      best_inc = inc;
      best = static_cast<int>(k);
    }
  }
  return best;
}

}  // namespace logwell::largen
