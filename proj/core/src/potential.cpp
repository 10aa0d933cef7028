#include "logwell/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace logwell {

namespace {

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Distance from x to the nearest singular point of the spec.
double nearest_singular_distance(const ValidatedSpec& spec, double x) {
  double d = std::numeric_limits<double>::infinity();
  if (spec.g2() > 0.0) d = std::abs(x);
  for (const Spike& sp : spec.spikes()) {
    d = std::min(d, std::abs(x - sp.s));
    d = std::min(d, std::abs(x + sp.s));
  }
  return d;
}

void require_regular(const ValidatedSpec& spec, double x) {
  if (nearest_singular_distance(spec, x) < singular_tolerance(x))
    fail(errc::singular_argument,
         "x = " + fmt_double(x) + " is within delta_sing of a singular point");
}

// Contribution of the logarithmic terms to the Taylor coefficient c_k at x,
// k >= 1. Per linear factor, d^k/dx^k ln|x-p| = (-1)^(k-1) (k-1)! / (x-p)^k,
// so dividing by k! leaves (-1)^(k-1)/k and the sign flips applied below.
double log_terms_ck(const ValidatedSpec& spec, double x, int k) {
  auto inv_pow = [k](double u) {
    double p = 1.0;
    for (int i = 0; i < k; ++i) p *= u;
    return 1.0 / p;
  };
  double sum = 0.0;
  if (spec.g2() > 0.0) sum += spec.g2() * inv_pow(x);
  for (const Spike& sp : spec.spikes())
    sum += sp.h2 * (inv_pow(x - sp.s) + inv_pow(x + sp.s));
  double sign = (k % 2 == 0) ? 1.0 : -1.0;
  return sign * (2.0 / k) * sum;
}

// Harmonic contribution to c_k at x.
double harmonic_ck(const ValidatedSpec& spec, double x, int k) {
  if (k == 0) return spec.omega2() * x * x;
  if (k == 1) return 2.0 * spec.omega2() * x;
  if (k == 2) return spec.omega2();
  return 0.0;
}

}  // namespace

ValidatedSpec validate(PotentialSpec spec) {
  if (!(spec.omega2 > 0.0) || !std::isfinite(spec.omega2))
    fail(errc::non_positive_omega2,
         "omega2 must be finite and > 0, got " + fmt_double(spec.omega2));
  if (!(spec.g2 >= 0.0) || !std::isfinite(spec.g2))
    fail(errc::negative_g2,
         "g2 must be finite and >= 0, got " + fmt_double(spec.g2));
  for (const Spike& sp : spec.spikes) {
    if (!(sp.h2 > 0.0) || !std::isfinite(sp.h2))
      fail(errc::non_positive_spike_field,
           "spike coupling h2 must be finite and > 0, got " + fmt_double(sp.h2));
    if (!(sp.s > 0.0) || !std::isfinite(sp.s))
      fail(errc::non_positive_spike_field,
           "spike position s must be finite and > 0, got " + fmt_double(sp.s));
  }
  std::sort(spec.spikes.begin(), spec.spikes.end(),
            [](const Spike& a, const Spike& b) { return a.s < b.s; });
  for (std::size_t j = 1; j < spec.spikes.size(); ++j) {
    if (!(spec.spikes[j - 1].s < spec.spikes[j].s))
      fail(errc::duplicate_spike_position,
           "spike positions must be pairwise distinct, got s = " +
               fmt_double(spec.spikes[j].s) + " twice");
  }
  return ValidatedSpec(std::move(spec));
}

SingularSet singularities(const ValidatedSpec& spec) {
  SingularSet set;
  for (auto it = spec.spikes().rbegin(); it != spec.spikes().rend(); ++it)
    set.points.push_back(-it->s);
  if (spec.g2() > 0.0) set.points.push_back(0.0);
  for (const Spike& sp : spec.spikes()) set.points.push_back(sp.s);
  return set;
}

std::size_t SingularSet::region_of(double x) const {
  return static_cast<std::size_t>(
      std::upper_bound(points.begin(), points.end(), x) - points.begin());
}

double eval(const ValidatedSpec& spec, double x) {
  require_regular(spec, x);
  double v = spec.omega2() * x * x;
  if (spec.g2() > 0.0) v -= spec.g2() * 2.0 * std::log(std::abs(x));
  for (const Spike& sp : spec.spikes())
    v -= sp.h2 * 2.0 *
         (std::log(std::abs(x - sp.s)) + std::log(std::abs(x + sp.s)));
  return v;
}

double deriv(const ValidatedSpec& spec, double x, int order) {
  if (order < 1 || order > 3)
    fail(errc::unsupported_order,
         "derivative order must be 1, 2 or 3, got " + std::to_string(order));
  require_regular(spec, x);
  // k! * c_k with the k-th Taylor coefficient kernel, so that
  // taylor_coeffs and deriv can never disagree.
  double ck = harmonic_ck(spec, x, order) + log_terms_ck(spec, x, order);
  static const double factorial[4] = {1.0, 1.0, 2.0, 6.0};
  return factorial[order] * ck;
}

std::vector<double> taylor_coeffs(const ValidatedSpec& spec, double R, int M) {
  if (M < 2)
    fail(errc::m_too_small, "Taylor order M must be >= 2, got " + std::to_string(M));
  require_regular(spec, R);
  std::vector<double> c(static_cast<std::size_t>(M) + 1);
  c[0] = eval(spec, R);
  for (int k = 1; k <= M; ++k)
    c[static_cast<std::size_t>(k)] =
        harmonic_ck(spec, R, k) + log_terms_ck(spec, R, k);
  return c;
}

}  // namespace logwell
