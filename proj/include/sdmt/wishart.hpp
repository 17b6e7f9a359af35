#pragma once

#include <span>
#include <vector>

#include "sdmt/linalg.hpp"
#include "sdmt/rng.hpp"

namespace sdmt {

/// Hermitian PSD transmit covariance R (M x M) with trace normalized to M,
/// cached eigendecomposition, and numerical rank.
class CovarianceSpec {
 public:
  static CovarianceSpec identity(Eigen::Index m);
  static CovarianceSpec diagonal(std::vector<double> entries);
  static CovarianceSpec from_matrix(const ComplexMatrix& r);

  Eigen::Index dim() const { return matrix_.rows(); }
  Eigen::Index rank() const { return rank_; }
  const ComplexMatrix& matrix() const { return matrix_; }
  /// All M eigenvalues, descending (zeros included).
  const RealVector& eigenvalues() const { return eigenvalues_; }
  /// The rank leading (strictly positive) eigenvalues.
  std::span<const double> positive_eigenvalues() const {
    return {eigenvalues_.data(), static_cast<std::size_t>(rank_)};
  }

 private:
  CovarianceSpec(ComplexMatrix matrix, RealVector eigenvalues,
                 Eigen::Index rank);

  ComplexMatrix matrix_;
  RealVector eigenvalues_;
  Eigen::Index rank_;
};

/// Sorted log-singular exponents of H R H^H at a given SNR: the eigenvalues
/// a_i map to alpha_i = -ln(a_i) / (2 ln snr), ascending.
struct AlphaSample {
  std::vector<double> alpha;  // ascending
  double snr = 0.0;           // linear
  Eigen::Index rank = 0;
};

/// Reusable sampler for the exponents of H R H^H with H Ginibre (N_c x M).
/// Works in the reduced rank x rank Wishart form, so only the first rank
/// columns of H are ever drawn.  Copy one instance per worker; sampling is
/// deterministic given the PhiloxRng state.
class AlphaSampler {
 public:
  AlphaSampler(const CovarianceSpec& cov, Eigen::Index n_c, double snr);

  Eigen::Index rank() const { return static_cast<Eigen::Index>(sqrt_lambda_.size()); }
  double snr() const { return snr_; }

  /// Fills alpha_out (size rank) with ascending exponents.
  void sample(PhiloxRng& rng, std::span<double> alpha_out);
  AlphaSample sample(PhiloxRng& rng);

 private:
  std::vector<double> sqrt_lambda_;
  Eigen::Index n_c_;
  double snr_;
  double half_inv_log_snr_;
  ComplexMatrix h_;     // n_c x rank workspace
  ComplexMatrix gram_;  // rank x rank workspace
};

AlphaSample sample_alpha(const CovarianceSpec& cov, Eigen::Index n_c,
                         double snr, PhiloxRng& rng);

/// Natural-log joint density of the ascending exponents, including the
/// change-of-variables Jacobian from the Wishart eigenvalue law and the
/// normalizing constant assembled from it.  Requires distinct covariance
/// eigenvalues; callers with repeated eigenvalues should perturb them
/// (relative 1e-6) before building the CovarianceSpec.
double alpha_log_pdf(const AlphaSample& alpha, const CovarianceSpec& cov,
                     Eigen::Index n_c);

/// High-SNR exponent of the density: -2 sum_i (N_c + rank + 1 - 2i) alpha_i
/// when alpha_1 >= 0, -infinity when alpha_1 < 0.
double asymptotic_exponent(std::span<const double> alpha_ascending,
                           Eigen::Index cov_rank, Eigen::Index n_c);

}  // namespace sdmt
