#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "logwell/errors.hpp"

namespace logwell {

// One symmetric off-central spike pair: -h2 * ln((x^2 - s^2)^2).
struct Spike {
  double h2 = 1.0;  // coupling, > 0
  double s = 1.0;   // position of the +x member of the pair, > 0
};

// Parameters of V_K(x) = omega2*x^2 - g2*ln(x^2) - sum_j h2_j*ln((x^2-s_j^2)^2).
// Left-right symmetric by construction.
struct PotentialSpec {
  double omega2 = 1.0;        // confinement, > 0
  double g2 = 0.0;            // central spike coupling, >= 0
  std::vector<Spike> spikes;  // off-central spikes, positions pairwise distinct
};

// A PotentialSpec that passed validate(): spikes sorted by position,
// all invariants hold. Only obtainable through validate().
class ValidatedSpec {
 public:
  double omega2() const { return spec_.omega2; }
  double g2() const { return spec_.g2; }
  std::span<const Spike> spikes() const { return spec_.spikes; }
  std::size_t spike_count() const { return spec_.spikes.size(); }  // K
  const PotentialSpec& raw() const { return spec_; }

 private:
  friend ValidatedSpec validate(PotentialSpec spec);
  explicit ValidatedSpec(PotentialSpec spec) : spec_(std::move(spec)) {}
  PotentialSpec spec_;
};

// Sorts spikes and checks invariants. Throws error with the violated
// invariant: NonPositiveOmega2, NegativeG2, DuplicateSpikePosition,
// NonPositiveSpikeField.
ValidatedSpec validate(PotentialSpec spec);

// Abscissae where V -> +inf: 0 iff g2 > 0, and +-s_j for every spike.
// Sorted ascending, symmetric about 0. Consecutive points bound the open
// intervals on which V is smooth.
struct SingularSet {
  std::vector<double> points;

  bool empty() const { return points.empty(); }
  std::size_t size() const { return points.size(); }
  // Number of open regions the points cut the line into.
  std::size_t region_count() const { return points.size() + 1; }
  // Index of the region containing x (points themselves belong to no
  // region; callers pass non-singular x).
  std::size_t region_of(double x) const;
};

SingularSet singularities(const ValidatedSpec& spec);

// Evaluation within delta_sing of a singular point is rejected
// (SingularArgument) rather than returning a huge float.
inline double singular_tolerance(double x) {
  double ax = x < 0 ? -x : x;
  return 1e-12 * (ax > 1.0 ? ax : 1.0);
}

// V(x). ln(x^2) is computed as 2*ln|x| so large |x| cannot overflow.
double eval(const ValidatedSpec& spec, double x);

// Closed-form V', V'' or V''' at x; order in {1,2,3}.
double deriv(const ValidatedSpec& spec, double x, int order);

// Taylor coefficients c_0..c_M of V about R, from the exact factorial-form
// derivatives of the logarithmic terms (no finite differences). M >= 2.
std::vector<double> taylor_coeffs(const ValidatedSpec& spec, double R, int M);

}  // namespace logwell
