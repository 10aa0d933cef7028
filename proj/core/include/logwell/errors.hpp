#pragma once

#include <stdexcept>
#include <string>

namespace logwell {

// Every failure mode the library reports, one enumerator per condition.
enum class errc {
  // potential
  non_positive_omega2,
  negative_g2,
  duplicate_spike_position,
  non_positive_spike_field,
  singular_argument,
  unsupported_order,
  m_too_small,
  // wells
  wrong_topology,
  complex_roots,
  no_minimum_found,
  bracketing_failed,
  // largen
  basis_too_small,
  degenerate_well,
  series_too_short,
  degenerate_unperturbed_level,
  // numeric
  domain_too_small,
  clearance_impossible,
  convergence_failure,
  // catastrophe
  no_sign_change,
  lost_well,
  topology_change,
  // cli / generic
  config_error,
  io_error,
  invalid_argument,
};

// Stable PascalCase name, used in CLI error objects and messages.
const char* errc_name(errc c);

// True for errors caused by bad user input / configuration (CLI exit code 2),
// false for numerical failures (exit code 3).
bool is_config_error(errc c);

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what_arg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what_arg),
        code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) {
  throw error(code, msg);
}

}  // namespace logwell
