#pragma once

#include <span>

#include "sdmt/dmt.hpp"
#include "sdmt/linalg.hpp"
#include "sdmt/wishart.hpp"

namespace sdmt {

enum class SensingKind { kChannelEstimation, kAngleModel };

struct SensingModel {
  int n_s = 1;         // sensing receive antennas
  double eta_s = 0.0;  // sensing SNR, linear
  double t = 1.0;      // blocklength
  int m = 1;           // transmit antennas
  SensingKind kind = SensingKind::kChannelEstimation;
};

/// Miller-Chang Bayesian CRB for estimating the full sensing channel with a
/// standard complex Gaussian prior on vec(H_s):
///   e = tr(J^{-1}),  J = I + (eta_s T / M) (conj(R) kron I_{N_s}),
/// which closes to N_s sum_i 1 / (1 + eta_s T lambda_i / M).  The conjugate
/// on R comes from vectorizing Y = sqrt(eta_s/M) H_s X + Z by columns; it
/// leaves the eigenvalues, and hence e, unchanged.
double bcrb_channel_estimation(const CovarianceSpec& cov,
                               const SensingModel& model);

/// Multi-target sensing channel sum_n beta_n a(theta_n) v(theta_n)^H with
/// uniform linear arrays at half-wavelength spacing on both ends.  Only the
/// rank structure matters downstream, so the array geometry choice is inert.
ComplexMatrix build_angle_channel(const SensingModel& model,
                                  std::span<const double> thetas,
                                  std::span<const std::complex<double>> betas);

/// Tradeoff bound for N_t point targets: the covariance rank is capped by
/// min(M, N_t), so the constrained curve at that rank bounds the reachable
/// tradeoff from above.
DmtCurve rank_bound_curve(int n_t, int m, int n_c, double t);

}  // namespace sdmt
