#pragma once

#include <cstdint>
#include <vector>

#include "sdmt/dmt.hpp"
#include "sdmt/wishart.hpp"

namespace sdmt {

/// Outage frequencies across an SNR grid plus the fitted high-SNR slope.
struct OutageEstimate {
  std::vector<double> snr_grid;       // ascending, linear
  std::vector<double> p_hat;          // outage frequency per grid point
  std::vector<double> ci_half_width;  // 95% binomial half-widths
  std::vector<std::int64_t> hits;
  std::int64_t n_samples = 0;
  std::vector<bool> admitted;  // grid points with enough hits for the fit
  double fitted_slope = 0.0;   // d ln p / d ln snr over admitted points
  double slope_stderr = 0.0;   // NaN when fewer than 3 admitted points
};

/// Multiplier of ln(snr) in the asymptotic mutual information:
/// sum_i (2t + 1 - 2i) (0.5 - alpha_i)^+.  Exponents with alpha_i >= 0.5
/// contribute nothing (they are not dominant dimensions).
double asymptotic_mi_coefficient(const AlphaSample& alpha, double t);

/// Plain Monte Carlo outage estimate, Haar codewords implied.  Sampling is
/// fanned out over `workers` threads in fixed static chunks with per-chunk
/// counter RNG streams, so the result depends only on the seed (not on the
/// worker count or scheduling).  Grid points need >= 50 outage hits to enter
/// the slope fit; if r > 0 and no point qualifies, a RareEventError asks for
/// more samples or a smaller diversity target.  r == 0 never produces outage
/// and returns all-zero frequencies with no fit.
OutageEstimate estimate_outage(const CovarianceSpec& cov, Eigen::Index n_c,
                               double t, double r,
                               std::vector<double> snr_grid,
                               std::int64_t n_samples, std::uint64_t seed,
                               int workers = 0);

struct MiApprox {
  double value = 0.0;          // nats
  bool bounded_regime = false; // no dominant dimension: value pinned to 0
};

/// Volume-based asymptotic approximation of the mutual information for one
/// channel draw: log Vol of the receive manifold at this SNR minus
/// m(2t - m)/2 ln(pi e) over the dominant dimensions.  Asymptotic only; at
/// moderate SNR the O(1) terms are visible.
MiApprox finite_snr_mi_approx(const CovarianceSpec& cov,
                              const ComplexMatrix& h_c, double snr, double t);

}  // namespace sdmt
