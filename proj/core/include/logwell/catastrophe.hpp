#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "logwell/potential.hpp"
#include "logwell/wells.hpp"

namespace logwell::catastrophe {

// Linear interpolation of (omega2, g2, h2_j, s_j^2) between two specs that
// share topology (same K, same zero/nonzero pattern of g2).
struct ParamPath {
  PotentialSpec base;
  PotentialSpec target;

  ValidatedSpec at(double t) const;
  ParamPath reversed() const { return {target, base}; }
};

// Validates both endpoints and the shared-topology invariant.
ParamPath make_path(PotentialSpec base, PotentialSpec target);

struct SweepConfig {
  bool use_matrix = false;  // upgrade E0 candidates to the matrix method
  int M = 4;
  int B = 64;
};

struct WellSample {
  int track = -1;
  double location = 0.0;
  double e0 = 0.0;
};

// Well count changed between adjacent samples (reported, not fatal).
struct TopologyEvent {
  double t_lo = 0.0, t_hi = 0.0;
  int count_lo = 0, count_hi = 0;
};

struct SweepTable {
  std::vector<double> ts;
  std::vector<std::vector<WellSample>> rows;  // per sample, by location
  std::vector<TopologyEvent> events;
  int track_count = 0;

  // (t, location, e0) samples of one track, in t order.
  struct TrackPoint {
    double t, location, e0;
  };
  std::vector<TrackPoint> track(int id) const;
};

// Ground-state candidates per well along the path; wells matched across
// adjacent samples by nearest location with a jump guard of half the minimum
// inter-well distance.
SweepTable sweep(const ParamPath& path, int samples, const SweepConfig& cfg = {});

struct NumericConfig {
  double L = 0.0;  // 0 = per-sample default_domain
  int N = 2000;
};

struct NumericConfirmation {
  bool confirmed = false;
  double t_lo = 0.0, t_hi = 0.0;  // flip bracket
  int region_before = -1, region_after = -1;
  std::vector<double> masses_before, masses_after;
};

struct CrossingReport {
  int track_a = -1, track_b = -1;
  double t_star = 0.0;
  double bracket_lo = 0.0, bracket_hi = 0.0;
  double location_a = 0.0, location_b = 0.0;
  double e0_a = 0.0, e0_b = 0.0;
  std::optional<NumericConfirmation> numeric;
};

// Bisection on t of E0_a(t) - E0_b(t) starting from the first strict sign
// change the sweep shows for the pair; refines the bracket to width 1e-10
// and reports its midpoint. Throws NoSignChange / LostWell.
CrossingReport find_crossing(const ParamPath& path, const SweepTable& table,
                             int track_a, int track_b, double tol_cross,
                             const SweepConfig& cfg = {});

// Runs the grid solver at t_star +- delta and records the dominant region of
// the ground state on each side. When the regions differ the flip is
// bisected (up to 8 steps, stopping early once the midpoint state is
// delocalized between the two regions); otherwise the report is marked
// unconfirmed with both mass vectors attached.
void relocalize_check(const ParamPath& path, CrossingReport& report,
                      double delta, const NumericConfig& cfg = {});

// All crossings among representative tracks (location >= 0 at first
// appearance; mirror wells duplicate their partners' curves).
std::vector<CrossingReport> scan_crossings(const ParamPath& path,
                                           const SweepTable& table,
                                           double tol_cross,
                                           const SweepConfig& cfg = {});

// Plain bisection of a scalar sign change on [lo, hi]; f(lo) and f(hi) must
// differ in sign. Returns the final bracket midpoint.
double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double width_tol);

}  // namespace logwell::catastrophe
