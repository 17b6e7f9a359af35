#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sdmt/wishart.hpp"

namespace sdmt {

struct SystemConfig {
  int m = 1;       // transmit antennas
  int n_c = 1;     // communication receive antennas
  int n_s = 1;     // sensing receive antennas
  double t = 1.0;  // blocklength (may be infinite)
};

/// Flat key-value scenario: one `key = value` per line, `#` comments.
/// Recognized keys: m, nc, ns, t, rank, r, snr_grid, r_values, n_samples,
/// seed, workers.  Unknown keys are rejected with the offending line number.
struct Scenario {
  SystemConfig system;
  std::optional<int> rank;
  std::optional<CovarianceSpec> covariance;
  std::vector<double> snr_grid;  // linear
  std::vector<double> r_values;
  std::optional<std::int64_t> n_samples;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
};

Scenario parse_scenario_file(const std::string& path);
Scenario parse_scenario_text(const std::string& text,
                             const std::string& origin = "<scenario>");

/// SNR token: plain linear value ("1000", "1e3") or decibels with a "dB"
/// suffix ("30dB"); always stored linear.
double parse_snr(const std::string& token);

/// Covariance literal: "identity" (needs the dimension), "diag:[a,b,...]",
/// or "matrix:[a, b; c, d]" with complex entries like "0.3+0.1i".
CovarianceSpec parse_covariance(const std::string& literal, int dim_hint);

/// Comma-separated list of real numbers (SNR entries may carry a dB suffix).
std::vector<double> parse_number_list(const std::string& text, bool snr);

}  // namespace sdmt
