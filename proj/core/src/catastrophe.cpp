#include "logwell/catastrophe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "logwell/largen.hpp"
#include "logwell/numeric.hpp"
#include "logwell/parallel.hpp"

namespace logwell::catastrophe {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBracketWidth = 1e-10;
// Region-mass margin below which a state counts as delocalized between the
// competing regions, ending the flip-bracket refinement.
constexpr double kDelocalizedMargin = 0.05;

double lerp(double a, double b, double t) { return a + (b - a) * t; }

double e0_of(const ValidatedSpec& spec, const Well& well, const SweepConfig& cfg) {
  if (!cfg.use_matrix)
    return well.value + std::sqrt(well.c2);
  return largen::local_spectrum_matrix(spec, well, cfg.M, cfg.B, 0).energies[0];
}

// Half the minimum inter-well distance (the tracking jump guard).
double jump_guard(const std::vector<Well>& wells) {
  if (wells.size() < 2) return kInf;
  double dmin = kInf;
  for (std::size_t i = 1; i < wells.size(); ++i)
    dmin = std::min(dmin, wells[i].location - wells[i - 1].location);
  return 0.5 * dmin;
}

int nearest_well(const std::vector<Well>& wells, double where) {
  int best = 0;
  double dist = std::abs(wells[0].location - where);
  for (std::size_t i = 1; i < wells.size(); ++i) {
    double d = std::abs(wells[i].location - where);
    if (d < dist) {
      dist = d;
      best = static_cast<int>(i);
    }
  }
  return best;
}

struct SideState {
  double t;
  double loc_a, loc_b;
  double delta;  // e0_a - e0_b
};

}  // namespace

ValidatedSpec ParamPath::at(double t) const {
  PotentialSpec s;
  s.omega2 = lerp(base.omega2, target.omega2, t);
  s.g2 = lerp(base.g2, target.g2, t);
  s.spikes.resize(base.spikes.size());
  for (std::size_t j = 0; j < base.spikes.size(); ++j) {
    s.spikes[j].h2 = lerp(base.spikes[j].h2, target.spikes[j].h2, t);
    double s2 = lerp(base.spikes[j].s * base.spikes[j].s,
                     target.spikes[j].s * target.spikes[j].s, t);
    s.spikes[j].s = std::sqrt(s2);
  }
  return validate(std::move(s));
}

ParamPath make_path(PotentialSpec base, PotentialSpec target) {
  ValidatedSpec vb = validate(base);
  ValidatedSpec vt = validate(target);
  if (vb.spike_count() != vt.spike_count())
    fail(errc::config_error, "path endpoints must share K, got " +
                                 std::to_string(vb.spike_count()) + " and " +
                                 std::to_string(vt.spike_count()));
  if ((vb.g2() > 0.0) != (vt.g2() > 0.0))
    fail(errc::config_error,
         "path endpoints must share the zero/nonzero pattern of g2");
  return {vb.raw(), vt.raw()};
}

std::vector<SweepTable::TrackPoint> SweepTable::track(int id) const {
  std::vector<TrackPoint> out;
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const WellSample& w : rows[i])
      if (w.track == id) out.push_back({ts[i], w.location, w.e0});
  return out;
}

SweepTable sweep(const ParamPath& path, int samples, const SweepConfig& cfg) {
  if (samples < 2)
    fail(errc::invalid_argument,
         "need at least 2 samples, got " + std::to_string(samples));
  SweepTable table;
  table.ts.resize(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i)
    table.ts[static_cast<std::size_t>(i)] =
        static_cast<double>(i) / (samples - 1);

  std::vector<std::vector<Well>> wells_at(table.ts.size());
  std::vector<std::vector<double>> e0_at(table.ts.size());
  par::parallel_for(table.ts.size(), [&](std::size_t i) {
    ValidatedSpec spec = path.at(table.ts[i]);
    wells_at[i] = wells::find_minima(spec);
    e0_at[i].resize(wells_at[i].size());
    for (std::size_t w = 0; w < wells_at[i].size(); ++w)
      e0_at[i][w] = e0_of(spec, wells_at[i][w], cfg);
  });

  // Track assignment, sequential over samples.
  table.rows.resize(table.ts.size());
  int next_track = 0;
  std::vector<std::pair<int, double>> prev;  // (track, location)
  for (std::size_t i = 0; i < table.ts.size(); ++i) {
    const std::vector<Well>& cur = wells_at[i];
    std::vector<int> assigned(cur.size(), -1);
    if (!prev.empty()) {
      double guard = kInf;
      if (prev.size() >= 2) {
        double dmin = kInf;
        for (std::size_t p = 1; p < prev.size(); ++p)
          dmin = std::min(dmin, prev[p].second - prev[p - 1].second);
        guard = 0.5 * dmin;
      }
      struct Cand {
        double dist;
        std::size_t p, c;
      };
      std::vector<Cand> cands;
      for (std::size_t p = 0; p < prev.size(); ++p)
        for (std::size_t c = 0; c < cur.size(); ++c) {
          double d = std::abs(prev[p].second - cur[c].location);
          if (d <= guard) cands.push_back({d, p, c});
        }
      std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.dist != b.dist) return a.dist < b.dist;
        if (a.p != b.p) return a.p < b.p;
        return a.c < b.c;
      });
      std::vector<bool> used_p(prev.size(), false);
      for (const Cand& cd : cands) {
        if (used_p[cd.p] || assigned[cd.c] != -1) continue;
        used_p[cd.p] = true;
        assigned[cd.c] = prev[cd.p].first;
      }
    }
    for (std::size_t c = 0; c < cur.size(); ++c)
      if (assigned[c] == -1) assigned[c] = next_track++;

    if (i > 0 && wells_at[i - 1].size() != cur.size())
      table.events.push_back({table.ts[i - 1], table.ts[i],
                              static_cast<int>(wells_at[i - 1].size()),
                              static_cast<int>(cur.size())});

    table.rows[i].resize(cur.size());
    prev.clear();
    for (std::size_t c = 0; c < cur.size(); ++c) {
      table.rows[i][c] = {assigned[c], cur[c].location, e0_at[i][c]};
      prev.emplace_back(assigned[c], cur[c].location);
    }
  }
  table.track_count = next_track;
  return table;
}

namespace {

// Evaluate both tracked wells at parameter t, locating them by proximity to
// the expected locations.
SideState eval_pair(const ParamPath& path, double t, double expect_a,
                    double expect_b, const SweepConfig& cfg) {
  ValidatedSpec spec = path.at(t);
  std::vector<Well> ws = wells::find_minima(spec);
  double guard = jump_guard(ws);
  int ia = nearest_well(ws, expect_a);
  int ib = nearest_well(ws, expect_b);
  if (std::abs(ws[static_cast<std::size_t>(ia)].location - expect_a) > guard ||
      std::abs(ws[static_cast<std::size_t>(ib)].location - expect_b) > guard ||
      ia == ib)
    fail(errc::lost_well,
         "tracked well disappeared near t = " + std::to_string(t));
  const Well& wa = ws[static_cast<std::size_t>(ia)];
  const Well& wb = ws[static_cast<std::size_t>(ib)];
  return {t, wa.location, wb.location, e0_of(spec, wa, cfg) - e0_of(spec, wb, cfg)};
}

CrossingReport crossing_from_bracket(const ParamPath& path, SideState lo,
                                     SideState hi, int track_a, int track_b,
                                     double tol_cross, const SweepConfig& cfg) {
  while (hi.t - lo.t > kBracketWidth) {
    double tm = 0.5 * (lo.t + hi.t);
    if (!(tm > lo.t && tm < hi.t)) break;
    double u = (tm - lo.t) / (hi.t - lo.t);
    SideState mid = eval_pair(path, tm, lerp(lo.loc_a, hi.loc_a, u),
                              lerp(lo.loc_b, hi.loc_b, u), cfg);
    if ((mid.delta < 0.0) == (lo.delta < 0.0))
      lo = mid;
    else
      hi = mid;
  }
  CrossingReport report;
  report.track_a = track_a;
  report.track_b = track_b;
  report.bracket_lo = lo.t;
  report.bracket_hi = hi.t;
  report.t_star = 0.5 * (lo.t + hi.t);
  SideState star = eval_pair(path, report.t_star,
                             0.5 * (lo.loc_a + hi.loc_a),
                             0.5 * (lo.loc_b + hi.loc_b), cfg);
  if (!(std::abs(star.delta) < tol_cross))
    fail(errc::convergence_failure,
         "bracket shrank to " + std::to_string(hi.t - lo.t) +
             " but |E0_a - E0_b| = " + std::to_string(std::abs(star.delta)) +
             " is not below tol_cross");
  report.location_a = star.loc_a;
  report.location_b = star.loc_b;
  ValidatedSpec spec = path.at(report.t_star);
  std::vector<Well> ws = wells::find_minima(spec);
  const Well& wa = ws[static_cast<std::size_t>(nearest_well(ws, star.loc_a))];
  const Well& wb = ws[static_cast<std::size_t>(nearest_well(ws, star.loc_b))];
  report.e0_a = e0_of(spec, wa, cfg);
  report.e0_b = e0_of(spec, wb, cfg);
  return report;
}

// First strict sign change of e0_a - e0_b along the sweep, as bracket
// sample indices. Returns false when no change exists.
bool first_sign_change(const SweepTable& table, int a, int b, std::size_t from,
                       std::size_t& i_lo, double& d_lo, double& d_hi,
                       double* loc_pairs) {
  bool have_prev = false;
  double prev_delta = 0.0, prev_la = 0.0, prev_lb = 0.0;
  std::size_t prev_i = 0;
  for (std::size_t i = from; i < table.rows.size(); ++i) {
    const WellSample* sa = nullptr;
    const WellSample* sb = nullptr;
    for (const WellSample& w : table.rows[i]) {
      if (w.track == a) sa = &w;
      if (w.track == b) sb = &w;
    }
    if (!sa || !sb) {
      have_prev = false;
      continue;
    }
    double delta = sa->e0 - sb->e0;
    if (have_prev && prev_i + 1 == i && prev_delta * delta < 0.0) {
      i_lo = prev_i;
      d_lo = prev_delta;
      d_hi = delta;
      loc_pairs[0] = prev_la;
      loc_pairs[1] = prev_lb;
      loc_pairs[2] = sa->location;
      loc_pairs[3] = sb->location;
      return true;
    }
    have_prev = true;
    prev_delta = delta;
    prev_la = sa->location;
    prev_lb = sb->location;
    prev_i = i;
  }
  return false;
}

}  // namespace

CrossingReport find_crossing(const ParamPath& path, const SweepTable& table,
                             int track_a, int track_b, double tol_cross,
                             const SweepConfig& cfg) {
  std::size_t i_lo = 0;
  double d_lo = 0.0, d_hi = 0.0, locs[4];
  if (!first_sign_change(table, track_a, track_b, 0, i_lo, d_lo, d_hi, locs))
    fail(errc::no_sign_change,
         "E0 difference of tracks " + std::to_string(track_a) + " and " +
             std::to_string(track_b) + " never changes sign along the sweep");
  SideState lo{table.ts[i_lo], locs[0], locs[1], d_lo};
  SideState hi{table.ts[i_lo + 1], locs[2], locs[3], d_hi};
  return crossing_from_bracket(path, lo, hi, track_a, track_b, tol_cross, cfg);
}

void relocalize_check(const ParamPath& path, CrossingReport& report,
                      double delta, const NumericConfig& cfg) {
  auto ground_masses = [&](double t) {
    ValidatedSpec spec = path.at(t);
    double L = cfg.L > 0.0 ? cfg.L : numeric::default_domain(spec);
    numeric::GridSpectrum gs = numeric::solve(spec, L, cfg.N, 1);
    return std::make_pair(gs.dominant_region(0), gs.region_mass[0]);
  };
  double t_m = std::clamp(report.t_star - delta, 0.0, 1.0);
  double t_p = std::clamp(report.t_star + delta, 0.0, 1.0);
  auto [region_before, masses_before] = ground_masses(t_m);
  auto [region_after, masses_after] = ground_masses(t_p);

  NumericConfirmation conf;
  conf.region_before = region_before;
  conf.region_after = region_after;
  conf.masses_before = masses_before;
  conf.masses_after = masses_after;
  conf.t_lo = t_m;
  conf.t_hi = t_p;
  conf.confirmed = (region_before != region_after);

  if (conf.confirmed) {
    double lo = t_m, hi = t_p;
    for (int step = 0; step < 8; ++step) {
      double mid = 0.5 * (lo + hi);
      auto [region_mid, masses_mid] = ground_masses(mid);
      double other = 0.0;
      for (std::size_t r = 0; r < masses_mid.size(); ++r)
        if (static_cast<int>(r) != region_before)
          other = std::max(other, masses_mid[r]);
      bool delocalized =
          std::abs(masses_mid[static_cast<std::size_t>(region_before)] -
                   other) < kDelocalizedMargin;
      if (region_mid == region_before)
        lo = mid;
      else
        hi = mid;
      if (delocalized) break;
    }
    conf.t_lo = lo;
    conf.t_hi = hi;
  }
  report.numeric = conf;
}

std::vector<CrossingReport> scan_crossings(const ParamPath& path,
                                           const SweepTable& table,
                                           double tol_cross,
                                           const SweepConfig& cfg) {
  // Representative tracks: first appearance at location >= 0 (mirror wells
  // trace identical E0 curves).
  std::vector<int> reps;
  std::vector<bool> seen(static_cast<std::size_t>(table.track_count), false);
  for (const auto& row : table.rows)
    for (const WellSample& w : row) {
      if (seen[static_cast<std::size_t>(w.track)]) continue;
      seen[static_cast<std::size_t>(w.track)] = true;
      if (w.location >= -1e-9 * std::max(1.0, std::abs(w.location)))
        reps.push_back(w.track);
    }
  std::sort(reps.begin(), reps.end());

  std::vector<CrossingReport> out;
  for (std::size_t ia = 0; ia < reps.size(); ++ia)
    for (std::size_t ib = ia + 1; ib < reps.size(); ++ib) {
      std::size_t from = 0;
      for (;;) {
        std::size_t i_lo = 0;
        double d_lo = 0.0, d_hi = 0.0, locs[4];
        if (!first_sign_change(table, reps[ia], reps[ib], from, i_lo, d_lo,
                               d_hi, locs))
          break;
        SideState lo{table.ts[i_lo], locs[0], locs[1], d_lo};
        SideState hi{table.ts[i_lo + 1], locs[2], locs[3], d_hi};
        out.push_back(crossing_from_bracket(path, lo, hi, reps[ia], reps[ib],
                                            tol_cross, cfg));
        from = i_lo + 1;
      }
    }
  std::sort(out.begin(), out.end(),
            [](const CrossingReport& a, const CrossingReport& b) {
              return a.t_star < b.t_star;
            });
  return out;
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double width_tol) {
  double f_lo = f(lo);
  double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo < 0.0) == (f_hi < 0.0))
    fail(errc::no_sign_change, "bisect_root needs a sign change");
  while (hi - lo > width_tol) {
    double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace logwell::catastrophe
