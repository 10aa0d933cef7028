#pragma once

#include <utility>
#include <vector>

#include "logwell/potential.hpp"

namespace logwell {

// One local minimum of V. `lo`/`hi` are the adjacent singular points
// (+-infinity for the outer intervals); the interval contains `location`
// strictly and no singular point.
struct Well {
  int id = 0;            // index when ordered by location
  double location = 0.0;  // R
  double lo = 0.0;
  double hi = 0.0;
  double value = 0.0;  // V(R) == c_0
  double c2 = 0.0;     // V''(R)/2 > 0
  std::vector<double> coeffs;  // c_0..c_M, filled lazily by fill_coeffs
};

namespace wells {

// All local minima of V, ordered by location; symmetric in pairs about 0
// (plus possibly one at 0). Brackets every sign change of V' on each open
// inter-singularity interval and polishes with safeguarded Newton/bisection.
// Stationary points with c2 <= 1e-10 are treated as degenerate and dropped.
std::vector<Well> find_minima(const ValidatedSpec& spec);

// K = 0, g > 0 closed form: R = g/omega, V(R) = g2*ln(e*omega2/g2),
// c2 = 2*omega2. Returns the positive-side well.
Well minimum_k0(const ValidatedSpec& spec);

// g = 0 closed form for the well at the origin: V(0) = -4*sum h2_j*ln(s_j),
// c2 = Omega^2 = omega2 + sum 2*h2_j/s_j^2.
Well central_well_g0(const ValidatedSpec& spec);

// g = 0, K = 1 closed form for the two off-central minima at
// +-sqrt(s^2 + 2 h2/omega2).
std::pair<Well, Well> offcentral_k1_g0(const ValidatedSpec& spec);

// K = 1, g > 0: the stationarity condition omega2*Z - g2 - 2*h2*Z/(Z-s^2) = 0
// in Z = x^2 is quadratic; returns its roots (Z_minus, Z_plus), computed as
// (a+c -+ sqrt(b^2 + 2ac + c^2))/2 with a = s^2 + g2/omega2,
// b = s^2 - g2/omega2, c = 2*h2/omega2. Minima sit at +-sqrt(Z_minus) and
// +-sqrt(Z_plus).
std::pair<double, double> roots_k1(const ValidatedSpec& spec);

// Populates well.coeffs with c_0..c_M about well.location.
void fill_coeffs(const ValidatedSpec& spec, Well& well, int M);

}  // namespace wells
}  // namespace logwell
