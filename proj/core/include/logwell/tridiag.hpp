#pragma once

#include <cstddef>
#include <vector>

namespace logwell::tridiag {

// Symmetric tridiagonal matrix: diag.size() = n, off.size() = n-1.
struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;

  std::size_t size() const { return diag.size(); }
};

// Number of eigenvalues strictly below mu (Sturm sequence via the LDL^T
// pivot recurrence).
int sturm_count(const Tridiagonal& t, double mu);

// Lowest k eigenvalues, ascending, each located by index-selective bisection
// to absolute tolerance tol_scale*max(1,|E|) (and at most a few ulps).
// Individual eigenvalue bisections run concurrently.
std::vector<double> lowest_eigenvalues(const Tridiagonal& t, int k,
                                       double tol_scale = 1e-10);

// Unit-2-norm eigenvector for an eigenvalue estimate lambda, by inverse
// iteration (LU with partial pivoting) plus two refinement steps. The start
// vector is a fixed pseudo-random sequence, so results are bit-stable.
// Throws ConvergenceFailure after 50 iterations.
std::vector<double> inverse_iteration(const Tridiagonal& t, double lambda);

// Dense symmetric matrix in row-major storage, used for the oscillator-basis
// Hamiltonians.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  SymMatrix multiply(const SymMatrix& rhs) const;
  SymMatrix top_left(std::size_t m) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

// Householder reduction of a symmetric matrix to tridiagonal form
// (eigenvalues preserved; no eigenvector accumulation).
Tridiagonal householder_tridiagonalize(SymMatrix a);

// Lowest k eigenvalues of a dense symmetric matrix.
std::vector<double> sym_lowest_eigenvalues(const SymMatrix& a, int k,
                                           double tol_scale = 1e-12);

}  // namespace logwell::tridiag
