#pragma once

#include <vector>

#include "logwell/potential.hpp"
#include "logwell/tridiag.hpp"
#include "logwell/wells.hpp"

namespace logwell::largen {

enum class Method { leading, matrix, rs_series };

// Approximate spectrum of one well at Taylor truncation order M.
struct LocalSpectrum {
  int well_id = 0;
  int order_m = 2;  // Taylor truncation M
  int basis = 0;    // B (0 for method leading)
  int n_max = 0;
  std::vector<double> energies;  // E_0..E_n_max
  Method method = Method::leading;
  // Per-state Rayleigh-Schroedinger coefficients (method rs_series only).
  std::vector<std::vector<double>> series;
  // Odd-M truncations are unbounded below; eigenvalues in a finite basis are
  // then not variational upper bounds.
  bool nonvariational = false;
};

// Leading-order harmonic levels E_n = c_0 + (2n+1) sqrt(c_2).
LocalSpectrum leading_energies(const Well& well, int n_max);

// Matrix of H_loc = c_0 - d^2/dy^2 + c_2 y^2 + sum_{k=3..M} c_k y^k in the
// first B eigenstates of the harmonic part (levels (2n+1) sqrt(c_2)). Powers
// y^k are formed by repeated multiplication in a working basis of size B+M,
// then truncated to BxB, so every retained element is exact.
// well.coeffs must hold c_0..c_M (see wells::fill_coeffs).
tridiag::SymMatrix ho_matrix(const Well& well, int M, int B);

// Lowest n_max+1 eigenvalues of ho_matrix. Requires B >= n_max + 8.
LocalSpectrum local_spectrum_matrix(const ValidatedSpec& spec, const Well& well,
                                    int M, int B, int n_max);

// Rayleigh-Schroedinger coefficients E_n^(0)..E_n^(P) for H0 = the harmonic
// part (plus the constant c_0) and W = sum_{k>=3} c_k y^k carrying a formal
// book-keeping parameter. Standard recursion in a basis of size B.
std::vector<double> rs_series(const Well& well, int M, int P, int n, int B = 64);

// Running partial sums of a coefficient list.
std::vector<double> partial_sums(const std::vector<double>& coefficients);

// Classic asymptotic-series stopping rule: the index k >= 1 whose increment
// |S_k - S_{k-1}| is smallest; ties break toward the lower order.
int optimal_truncation(const std::vector<double>& partial_sums);

}  // namespace logwell::largen
