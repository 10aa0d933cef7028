#include "logwell/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "logwell/errors.hpp"
#include "logwell/parallel.hpp"

namespace logwell::tridiag {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double inf_norm(const Tridiagonal& t) {
  std::size_t n = t.size();
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::abs(t.diag[i]);
    if (i > 0) row += std::abs(t.off[i - 1]);
    if (i + 1 < n) row += std::abs(t.off[i]);
    norm = std::max(norm, row);
  }
  return norm;
}

// Gershgorin bounds [lo, hi] containing the whole spectrum.
std::pair<double, double> gershgorin(const Tridiagonal& t) {
  std::size_t n = t.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(t.off[i - 1]);
    if (i + 1 < n) r += std::abs(t.off[i]);
    lo = std::min(lo, t.diag[i] - r);
    hi = std::max(hi, t.diag[i] + r);
  }
  return {lo, hi};
}

// Deterministic start vector for inverse iteration (splitmix64 stream).
std::vector<double> seed_vector(std::size_t n) {
  std::vector<double> v(n);
  std::uint64_t state = 0x9e3779b97f4a7c15ull;
  for (std::size_t i = 0; i < n; ++i) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    z = z ^ (z >> 31);
    v[i] = static_cast<double>(z >> 11) * 0x1.0p-53 - 0.5;
  }
  return v;
}

// LU factorization of a general tridiagonal matrix with partial pivoting
// (the usual gttrf scheme; fill-in adds a second superdiagonal).
struct TriLU {
  std::vector<double> dl;   // multipliers
  std::vector<double> d;    // U diagonal
  std::vector<double> du;   // U first superdiagonal
  std::vector<double> du2;  // U second superdiagonal
  std::vector<bool> swapped;
};

TriLU factor_shifted(const Tridiagonal& t, double lambda, double pivmin) {
  std::size_t n = t.size();
  TriLU lu;
  lu.d.resize(n);
  lu.dl.assign(n > 1 ? n - 1 : 0, 0.0);
  lu.du.assign(n > 1 ? n - 1 : 0, 0.0);
  lu.du2.assign(n > 2 ? n - 2 : 0, 0.0);
  lu.swapped.assign(n > 1 ? n - 1 : 0, false);
  for (std::size_t i = 0; i < n; ++i) lu.d[i] = t.diag[i] - lambda;
  std::vector<double> sub(t.off);
  for (std::size_t i = 0; i + 1 < n; ++i) lu.du[i] = t.off[i];

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(lu.d[i]) >= std::abs(sub[i])) {
      if (lu.d[i] == 0.0) lu.d[i] = pivmin;
      double fact = sub[i] / lu.d[i];
      lu.dl[i] = fact;
      lu.d[i + 1] -= fact * lu.du[i];
    } else {
      lu.swapped[i] = true;
      double fact = lu.d[i] / sub[i];
      lu.dl[i] = fact;
      lu.d[i] = sub[i];
      double temp = lu.du[i];
      lu.du[i] = lu.d[i + 1];
      lu.d[i + 1] = temp - fact * lu.d[i + 1];
      if (i + 2 < n) {
        lu.du2[i] = lu.du[i + 1];
        lu.du[i + 1] = -fact * lu.du[i + 1];
      }
    }
  }
  if (lu.d[n - 1] == 0.0) lu.d[n - 1] = pivmin;
  return lu;
}

void lu_solve_inplace(const TriLU& lu, std::vector<double>& b, double pivmin) {
  std::size_t n = b.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!lu.swapped[i]) {
      b[i + 1] -= lu.dl[i] * b[i];
    } else {
      double temp = b[i];
      b[i] = b[i + 1];
      b[i + 1] = temp - lu.dl[i] * b[i];
    }
  }
  auto safe_div = [pivmin](double num, double den) {
    if (den == 0.0) den = pivmin;
    return num / den;
  };
  b[n - 1] = safe_div(b[n - 1], lu.d[n - 1]);
  if (n >= 2)
    b[n - 2] = safe_div(b[n - 2] - lu.du[n - 2] * b[n - 1], lu.d[n - 2]);
  for (std::size_t ii = n; ii >= 3; --ii) {
    std::size_t i = ii - 3;
    b[i] = safe_div(b[i] - lu.du[i] * b[i + 1] - lu.du2[i] * b[i + 2], lu.d[i]);
  }
}

double two_norm(const std::vector<double>& v) {
  double scale = 0.0;
  for (double x : v) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (double x : v) {
    double r = x / scale;
    s += r * r;
  }
  return scale * std::sqrt(s);
}

double residual_inf(const Tridiagonal& t, double lambda,
                    const std::vector<double>& v) {
  std::size_t n = t.size();
  double r = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double y = (t.diag[i] - lambda) * v[i];
    if (i > 0) y += t.off[i - 1] * v[i - 1];
    if (i + 1 < n) y += t.off[i] * v[i + 1];
    r = std::max(r, std::abs(y));
  }
  return r;
}

}  // namespace

int sturm_count(const Tridiagonal& t, double mu) {
  std::size_t n = t.size();
  int count = 0;
  double q = t.diag[0] - mu;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < n; ++i) {
    double e = t.off[i - 1];
    q = (q != 0.0) ? t.diag[i] - mu - e * e / q
                   : t.diag[i] - mu - std::abs(e) / kEps;
    if (q < 0.0) ++count;
  }
  return count;
}

std::vector<double> lowest_eigenvalues(const Tridiagonal& t, int k,
                                       double tol_scale) {
  std::size_t n = t.size();
  if (k <= 0) return {};
  if (static_cast<std::size_t>(k) > n)
    fail(errc::invalid_argument, "requested more eigenvalues than matrix order");
  auto [glo, ghi] = gershgorin(t);

  std::vector<double> out(static_cast<std::size_t>(k));
  par::parallel_for(static_cast<std::size_t>(k), [&](std::size_t j) {
    double lo = glo, hi = ghi;
    for (int iter = 0; iter < 20000; ++iter) {
      double mid = 0.5 * (lo + hi);
      if (!(mid > lo && mid < hi)) break;  // interval exhausted to ulps
      double scale = std::max(1.0, std::abs(mid));
      if (hi - lo <= std::max(tol_scale * scale, 4.0 * kEps * scale)) break;
      if (sturm_count(t, mid) > static_cast<int>(j))
        hi = mid;
      else
        lo = mid;
    }
    out[j] = 0.5 * (lo + hi);
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> inverse_iteration(const Tridiagonal& t, double lambda) {
  std::size_t n = t.size();
  double norm = inf_norm(t);
  double pivmin = std::max(kEps * norm, 1e-300);
  TriLU lu = factor_shifted(t, lambda, pivmin);

  // Achievable residual is limited by the eigenvalue estimate's own error.
  double lambda_tol = 1e-10 * std::max(1.0, std::abs(lambda));
  double accept = 10.0 * (lambda_tol + static_cast<double>(n) * kEps * norm);

  std::vector<double> v = seed_vector(n);
  double nv = two_norm(v);
  for (double& x : v) x /= nv;

  bool converged = false;
  for (int iter = 0; iter < 50; ++iter) {
    lu_solve_inplace(lu, v, pivmin);
    nv = two_norm(v);
    if (nv == 0.0) fail(errc::convergence_failure, "inverse iteration collapsed");
    for (double& x : v) x /= nv;
    if (residual_inf(t, lambda, v) <= accept) {
      converged = true;
      break;
    }
  }
  if (!converged)
    fail(errc::convergence_failure,
         "inverse iteration did not converge in 50 iterations");
  for (int refine = 0; refine < 2; ++refine) {
    lu_solve_inplace(lu, v, pivmin);
    nv = two_norm(v);
    for (double& x : v) x /= nv;
  }
  return v;
}

SymMatrix SymMatrix::multiply(const SymMatrix& rhs) const {
  SymMatrix out(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = 0; k < n_; ++k) {
      double aik = (*this)(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n_; ++j) out(i, j) += aik * rhs(k, j);
    }
  return out;
}

SymMatrix SymMatrix::top_left(std::size_t m) const {
  SymMatrix out(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) out(i, j) = (*this)(i, j);
  return out;
}

Tridiagonal householder_tridiagonalize(SymMatrix a) {
  std::size_t n = a.size();
  Tridiagonal t;
  t.diag.resize(n);
  t.off.resize(n > 1 ? n - 1 : 0);
  if (n == 0) return t;
  if (n == 1) {
    t.diag[0] = a(0, 0);
    return t;
  }
  std::vector<double> u(n), p(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double scale = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) scale += std::abs(a(i, k));
    if (scale == 0.0) {
      t.off[k] = a(k + 1, k);
      continue;
    }
    double sigma = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      u[i] = a(i, k) / scale;
      sigma += u[i] * u[i];
    }
    double alpha = std::sqrt(sigma);
    if (u[k + 1] > 0.0) alpha = -alpha;
    t.off[k] = scale * alpha;
    double h = sigma - u[k + 1] * alpha;
    u[k + 1] -= alpha;
    for (std::size_t i = k + 1; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) s += a(i, j) * u[j];
      p[i] = s / h;
    }
    double kappa = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) kappa += u[i] * p[i];
    kappa /= 2.0 * h;
    for (std::size_t i = k + 1; i < n; ++i) p[i] -= kappa * u[i];
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) -= u[i] * p[j] + p[i] * u[j];
  }
  t.off[n - 2] = a(n - 1, n - 2);
  for (std::size_t i = 0; i < n; ++i) t.diag[i] = a(i, i);
  return t;
}

std::vector<double> sym_lowest_eigenvalues(const SymMatrix& a, int k,
                                           double tol_scale) {
  return lowest_eigenvalues(householder_tridiagonalize(a), k, tol_scale);
}

}  // namespace logwell::tridiag
