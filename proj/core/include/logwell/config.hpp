#pragma once

#include <optional>
#include <string>
#include <vector>

#include "logwell/potential.hpp"

namespace logwell::cli {

enum class PotentialForm { canonical, scaled };

// Scaled-form spike term -lambda2 * ln(omega2*x^2 - h2)^2. Equals the
// canonical term -lambda2 * ln(x^2 - s^2)^2 with s^2 = h2/omega2, up to the
// additive constant -2*lambda2*ln(omega2).
struct ScaledSpike {
  double lambda2 = 1.0;
  double h2 = 1.0;
};

// A potential as the user wrote it: canonical parameters, or the scaled
// parametrization which is converted at load with the constant shift
// recorded.
struct PotentialInput {
  PotentialForm form = PotentialForm::canonical;
  double omega2 = 1.0;
  double g2 = 0.0;
  std::vector<Spike> spikes;              // canonical form only
  std::vector<ScaledSpike> scaled_spikes; // scaled form only

  // Canonical-form parameters equivalent to this input.
  PotentialSpec canonical() const;
  // V_as_written(x) = V_canonical(x) + v_shift().
  double v_shift() const;

  bool operator==(const PotentialInput&) const = default;
};

enum class SpectrumMethod { leading, matrix, rs, numeric };
enum class OutFormat { csv, json };

// The one defaults table. L = 0 means the per-spec default domain.
struct Defaults {
  static constexpr double L = 0.0;
  static constexpr int N = 4000;
  static constexpr int k = 8;
  static constexpr int M = 4;
  static constexpr int B = 64;
  static constexpr int P = 4;
  static constexpr int n_max = 7;
  static constexpr int samples = 101;
  static constexpr double tol_cross = 1e-8;
  static constexpr double delta = 0.02;
};

struct RunConfig {
  PotentialInput potential;
  std::optional<PotentialInput> target;  // scan end point

  double L = Defaults::L;
  int N = Defaults::N;
  int k = Defaults::k;
  int M = Defaults::M;
  int B = Defaults::B;
  int P = Defaults::P;
  int n_max = Defaults::n_max;
  int samples = Defaults::samples;
  double tol_cross = Defaults::tol_cross;
  double delta = Defaults::delta;
  bool confirm = true;

  SpectrumMethod method = SpectrumMethod::leading;
  std::string out;  // empty = stdout
  OutFormat format = OutFormat::csv;

  bool operator==(const RunConfig&) const = default;
};

// Strict parser: unknown keys, wrong types and malformed values are
// ConfigError. Missing keys take the Defaults values.
RunConfig parse_config(const std::string& json_text);

// Serialization emitting every field; parse_config(config_to_json(c)) == c.
std::string config_to_json(const RunConfig& config);

const char* method_name(SpectrumMethod m);
const char* format_name(OutFormat f);

}  // namespace logwell::cli
