#include "logwell/wells.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "logwell/parallel.hpp"

namespace logwell::wells {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDegenerateC2 = 1e-10;

double spike_sum(const ValidatedSpec& spec) {
  double s = 0.0;
  for (const Spike& sp : spec.spikes()) s += sp.h2;
  return s;
}

double min_singular_distance(const SingularSet& sing, double x) {
  double d = kInf;
  for (double p : sing.points) d = std::min(d, std::abs(x - p));
  return d;
}

// Truncation point for the outer search intervals: beyond it V' > 0.
double outer_truncation(const ValidatedSpec& spec, const SingularSet& sing) {
  double s_top = sing.empty() ? 0.0 : sing.points.back();
  double sumh2 = spike_sum(spec);
  double b0 = std::max(1.5 * s_top + 1.0,
                       std::sqrt((spec.g2() + 4.0 * sumh2 + 1.0) / spec.omega2()) +
                           s_top) +
              10.0;
  // Coarse global-minimum guess over the b0-truncated intervals.
  double vmin = kInf;
  std::vector<double> bounds;
  bounds.push_back(-b0);
  bounds.insert(bounds.end(), sing.points.begin(), sing.points.end());
  bounds.push_back(b0);
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    double a = bounds[i], b = bounds[i + 1];
    if (!(b > a)) continue;
    for (int j = 0; j < 65; ++j) {
      double u = a + (b - a) * (j + 0.5) / 65.0;
      if (min_singular_distance(sing, u) < 1e-6 * (1.0 + std::abs(u))) continue;
      vmin = std::min(vmin, eval(spec, u));
    }
  }
  if (!std::isfinite(vmin)) vmin = 0.0;
  double x_max = std::max(
      b0, std::sqrt((std::abs(vmin) + spec.g2() + sumh2) / spec.omega2()) +
              s_top + 10.0);
  while (deriv(spec, x_max, 1) <= 0.0 && x_max < 1e9) x_max *= 1.5;
  return x_max;
}

// Newton polish of a V' sign change inside (lo, hi), with bisection whenever
// a step leaves the bracket (V' has poles at the interval ends).
double polish_minimum(const ValidatedSpec& spec, double lo, double hi) {
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    double f = deriv(spec, x, 1);
    if (f == 0.0) return x;
    if (f < 0.0)
      lo = x;
    else
      hi = x;
    double fp = deriv(spec, x, 2);
    double xn = fp != 0.0 ? x - f / fp : 0.5 * (lo + hi);
    if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
    if (std::abs(xn - x) <= 2.0 * std::numeric_limits<double>::epsilon() *
                                std::max(1.0, std::abs(x)))
      return xn;
    x = xn;
  }
  return x;
}

// All minima of V on the open interval (a, b). Samples V' at n symmetric
// panel centers and doubles n until the sign-change count stabilizes twice.
std::vector<Well> search_interval(const ValidatedSpec& spec, double a, double b) {
  double mid = 0.5 * (a + b);
  double width = b - a;
  auto sample_at = [&](int n, int j) {
    return mid + (j - (n - 1) * 0.5) * (width / n);
  };

  int n = 256;
  std::vector<std::pair<double, double>> brackets;
  int prev_count = -1, stable = 0;
  for (; n <= (1 << 20); n *= 2) {
    brackets.clear();
    double u_prev = sample_at(n, 0);
    double f_prev = deriv(spec, u_prev, 1);
    for (int j = 1; j < n; ++j) {
      double u = sample_at(n, j);
      double f = deriv(spec, u, 1);
      if (f_prev < 0.0 && f >= 0.0) brackets.emplace_back(u_prev, u);
      u_prev = u;
      f_prev = f;
    }
    int count = static_cast<int>(brackets.size());
    stable = (count == prev_count) ? stable + 1 : 0;
    prev_count = count;
    if (stable >= 2) break;
  }
  if (stable < 2)
    fail(errc::bracketing_failed,
         "sign-change count did not stabilize on interval (" +
             std::to_string(a) + ", " + std::to_string(b) + ")");

  std::vector<Well> found;
  for (auto [lo, hi] : brackets) {
    double r = polish_minimum(spec, lo, hi);
    double vpp = deriv(spec, r, 2);
    double c2 = 0.5 * vpp;
    if (!(c2 > kDegenerateC2)) continue;  // shallow/degenerate stationary point
    double resid = std::abs(deriv(spec, r, 1));
    if (!(resid < 1e-10 * (1.0 + std::abs(vpp) * std::max(1.0, std::abs(r)))))
      fail(errc::no_minimum_found,
           "stationary-point polish left residual " + std::to_string(resid));
    Well w;
    w.location = r;
    w.lo = a;
    w.hi = b;
    w.value = eval(spec, r);
    w.c2 = c2;
    found.push_back(std::move(w));
  }
  return found;
}

}  // namespace

std::vector<Well> find_minima(const ValidatedSpec& spec) {
  SingularSet sing = singularities(spec);
  double x_max = outer_truncation(spec, sing);

  std::vector<std::pair<double, double>> intervals;
  std::vector<double> bounds;
  bounds.push_back(-x_max);
  bounds.insert(bounds.end(), sing.points.begin(), sing.points.end());
  bounds.push_back(x_max);
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i)
    if (bounds[i + 1] > bounds[i]) intervals.emplace_back(bounds[i], bounds[i + 1]);

  std::vector<std::vector<Well>> per_interval(intervals.size());
  par::parallel_for(intervals.size(), [&](std::size_t i) {
    per_interval[i] = search_interval(spec, intervals[i].first, intervals[i].second);
    // outer intervals extend to +-infinity in the reported Well
    for (Well& w : per_interval[i]) {
      if (w.lo == -x_max) w.lo = -kInf;
      if (w.hi == x_max) w.hi = kInf;
    }
  });

  std::vector<Well> all;
  for (auto& v : per_interval)
    for (Well& w : v) all.push_back(std::move(w));
  std::sort(all.begin(), all.end(),
            [](const Well& a, const Well& b) { return a.location < b.location; });
  for (std::size_t i = 0; i < all.size(); ++i) all[i].id = static_cast<int>(i);
  if (all.empty())
    fail(errc::no_minimum_found, "no local minimum located (internal error)");
  return all;
}

Well minimum_k0(const ValidatedSpec& spec) {
  if (spec.spike_count() != 0 || !(spec.g2() > 0.0))
    fail(errc::wrong_topology, "minimum_k0 requires K = 0 and g2 > 0");
  Well w;
  w.id = 1;  // the positive member of the +-R pair
  w.location = std::sqrt(spec.g2() / spec.omega2());
  w.lo = 0.0;
  w.hi = kInf;
  w.value = spec.g2() * (1.0 + std::log(spec.omega2()) - std::log(spec.g2()));
  w.c2 = 2.0 * spec.omega2();
  return w;
}

Well central_well_g0(const ValidatedSpec& spec) {
  if (spec.g2() > 0.0)
    fail(errc::wrong_topology,
         "central_well_g0 requires g2 = 0 (the origin is singular otherwise)");
  Well w;
  w.id = static_cast<int>(spec.spike_count());
  w.location = 0.0;
  w.lo = spec.spike_count() ? -spec.spikes().front().s : -kInf;
  w.hi = spec.spike_count() ? spec.spikes().front().s : kInf;
  double value = 0.0, c2 = spec.omega2();
  for (const Spike& sp : spec.spikes()) {
    value -= 4.0 * sp.h2 * std::log(sp.s);
    c2 += 2.0 * sp.h2 / (sp.s * sp.s);
  }
  w.value = value;
  w.c2 = c2;
  return w;
}

std::pair<Well, Well> offcentral_k1_g0(const ValidatedSpec& spec) {
  if (spec.g2() > 0.0 || spec.spike_count() != 1)
    fail(errc::wrong_topology, "offcentral_k1_g0 requires g2 = 0 and K = 1");
  double om2 = spec.omega2();
  double h2 = spec.spikes()[0].h2;
  double s = spec.spikes()[0].s;
  double r = std::sqrt(s * s + 2.0 * h2 / om2);
  double value = om2 * s * s + 2.0 * h2 + h2 * std::log(om2 * om2 / (4.0 * h2 * h2));
  double c2 = 2.0 * om2 + s * s * om2 * om2 / h2;
  Well plus;
  plus.id = 2;
  plus.location = r;
  plus.lo = s;
  plus.hi = kInf;
  plus.value = value;
  plus.c2 = c2;
  Well minus = plus;
  minus.id = 0;
  minus.location = -r;
  minus.lo = -kInf;
  minus.hi = -s;
  return {minus, plus};
}

std::pair<double, double> roots_k1(const ValidatedSpec& spec) {
  if (!(spec.g2() > 0.0) || spec.spike_count() != 1)
    fail(errc::wrong_topology, "roots_k1 requires g2 > 0 and K = 1");
  double om2 = spec.omega2();
  double h2 = spec.spikes()[0].h2;
  double s2 = spec.spikes()[0].s * spec.spikes()[0].s;
  double a = s2 + spec.g2() / om2;
  double b = s2 - spec.g2() / om2;
  double c = 2.0 * h2 / om2;
  double disc = b * b + 2.0 * a * c + c * c;
  if (disc < 0.0)
    fail(errc::complex_roots, "stationarity quadratic has complex roots");
  double z_plus = 0.5 * (a + c + std::sqrt(disc));
  // product of the roots is (a^2 - b^2)/4 = g2*s2/om2; avoids cancellation
  double z_minus = (spec.g2() * s2 / om2) / z_plus;
  return {z_minus, z_plus};
}

void fill_coeffs(const ValidatedSpec& spec, Well& well, int M) {
  well.coeffs = taylor_coeffs(spec, well.location, M);
}

}  // namespace logwell::wells
