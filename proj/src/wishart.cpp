#include "sdmt/wishart.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sdmt/errors.hpp"

namespace sdmt {

namespace {

constexpr double kTraceTolerance = 1e-8;
constexpr double kRankTolerance = 1e-9;  // relative to the largest eigenvalue
constexpr double kDistinctTolerance = 1e-9;

double log_factorial(Eigen::Index n) { return std::lgamma(n + 1.0); }

// log |det| of the kernel matrix { exp(-a_j / lambda_i) } for descending a and
// lambda.  Raw evaluation collapses once the a_j get small (all columns tend
// to the ones vector), so the last row is first subtracted from the others and
// the common column factors exp(-a_j / lambda_r) pulled out; the remaining
// entries are expm1 terms of size O(a_j), which LU handles without
// cancellation until far past snr ~ 1e3.
double log_det_exp_kernel(std::span<const double> a,
                          std::span<const double> lambda) {
  const Eigen::Index r = static_cast<Eigen::Index>(a.size());
  if (r == 1) return -a[0] / lambda[0];
  double log_det = 0.0;
  for (Eigen::Index j = 0; j < r; ++j) log_det += -a[j] / lambda[r - 1];
  Eigen::MatrixXd reduced(r, r);
  for (Eigen::Index j = 0; j < r; ++j) {
    for (Eigen::Index i = 0; i + 1 < r; ++i) {
      const double gap = 1.0 / lambda[r - 1] - 1.0 / lambda[i];
      reduced(i, j) = std::expm1(a[j] * gap);
    }
    reduced(r - 1, j) = 1.0;
  }
  // Row scaling keeps the pivots in range when the expm1 rows are tiny.
  for (Eigen::Index i = 0; i + 1 < r; ++i) {
    const double scale = reduced.row(i).cwiseAbs().maxCoeff();
    if (scale <= 0.0 || !std::isfinite(scale)) {
      return -std::numeric_limits<double>::infinity();
    }
    reduced.row(i) /= scale;
    log_det += std::log(scale);
  }
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(reduced);
  const auto& lu_matrix = lu.matrixLU();
  double log_abs = 0.0;
  for (Eigen::Index i = 0; i < r; ++i) {
    const double pivot = std::abs(lu_matrix(i, i));
    if (pivot <= 0.0) return -std::numeric_limits<double>::infinity();
    log_abs += std::log(pivot);
  }
  return log_det + log_abs;
}

}  // namespace

CovarianceSpec::CovarianceSpec(ComplexMatrix matrix, RealVector eigenvalues,
                               Eigen::Index rank)
    : matrix_(std::move(matrix)),
      eigenvalues_(std::move(eigenvalues)),
      rank_(rank) {}

CovarianceSpec CovarianceSpec::identity(Eigen::Index m) {
  if (m < 1) throw std::invalid_argument("CovarianceSpec: dimension >= 1");
  return CovarianceSpec(ComplexMatrix::Identity(m, m), RealVector::Ones(m), m);
}

CovarianceSpec CovarianceSpec::diagonal(std::vector<double> entries) {
  const Eigen::Index m = static_cast<Eigen::Index>(entries.size());
  if (m < 1) throw std::invalid_argument("CovarianceSpec: dimension >= 1");
  ComplexMatrix r = ComplexMatrix::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) r(i, i) = entries[i];
  return from_matrix(r);
}

CovarianceSpec CovarianceSpec::from_matrix(const ComplexMatrix& r) {
  const Eigen::Index m = r.rows();
  if (m < 1 || r.cols() != m) {
    throw std::invalid_argument("CovarianceSpec: matrix must be square");
  }
  const HermitianEig eig = hermitian_eig(r);
  const double trace = eig.eigenvalues.sum();
  if (std::abs(trace - static_cast<double>(m)) >
      kTraceTolerance * std::max<double>(1.0, m)) {
    throw std::invalid_argument(
        "CovarianceSpec: trace must equal the dimension M");
  }
  const double lambda_max = std::max(eig.eigenvalues(0), 0.0);
  const double tol = kRankTolerance * std::max(lambda_max, 1.0);
  RealVector clipped = eig.eigenvalues;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (clipped(i) < -tol) {
      throw std::invalid_argument(
          "CovarianceSpec: matrix is not positive semidefinite");
    }
    if (clipped(i) > tol) {
      ++rank;
    } else {
      clipped(i) = 0.0;
    }
  }
  if (rank == 0) {
    throw std::invalid_argument("CovarianceSpec: matrix is zero");
  }
  return CovarianceSpec(r, std::move(clipped), rank);
}

AlphaSampler::AlphaSampler(const CovarianceSpec& cov, Eigen::Index n_c,
                           double snr)
    : n_c_(n_c), snr_(snr) {
  if (cov.rank() > n_c) {
    throw RegimeError(
        "AlphaSampler: rank(R) > N_c is outside the supported regime");
  }
  if (!(snr > 1.0)) {
    throw std::invalid_argument("AlphaSampler: snr must exceed 1");
  }
  for (double lambda : cov.positive_eigenvalues()) {
    sqrt_lambda_.push_back(std::sqrt(lambda));
  }
  half_inv_log_snr_ = -0.5 / std::log(snr_);
  const Eigen::Index r = rank();
  h_.resize(n_c_, r);
  gram_.resize(r, r);
}

void AlphaSampler::sample(PhiloxRng& rng, std::span<double> alpha_out) {
  const Eigen::Index r = rank();
  if (static_cast<Eigen::Index>(alpha_out.size()) != r) {
    throw std::invalid_argument("AlphaSampler: output size != rank");
  }
  if (r == 1) {
    // a = lambda * sum |h_i|^2; |h|^2 of a CN(0,1) entry is Exp(1).
    double sum = 0.0;
    for (Eigen::Index i = 0; i < n_c_; ++i) {
      sum += std::norm(rng.complex_gaussian());
    }
    const double a = sqrt_lambda_[0] * sqrt_lambda_[0] * sum;
    alpha_out[0] = half_inv_log_snr_ * std::log(a);
    return;
  }
  for (Eigen::Index i = 0; i < n_c_; ++i) {
    for (Eigen::Index j = 0; j < r; ++j) {
      h_(i, j) = rng.complex_gaussian();
    }
  }
  // Reduced form Lambda^{1/2} H^H H Lambda^{1/2}: same nonzero spectrum as
  // H R H^H but only rank x rank.
  gram_.noalias() = h_.adjoint() * h_;
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < r; ++j) {
      gram_(i, j) *= sqrt_lambda_[i] * sqrt_lambda_[j];
    }
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(gram_,
                                                      Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw DecompositionError("AlphaSampler: eigensolver did not converge");
  }
  // Ascending eigenvalues map to descending alpha; reverse while converting.
  for (Eigen::Index i = 0; i < r; ++i) {
    const double a = std::max(solver.eigenvalues()(r - 1 - i),
                              std::numeric_limits<double>::min());
    alpha_out[i] = half_inv_log_snr_ * std::log(a);
  }
}

AlphaSample AlphaSampler::sample(PhiloxRng& rng) {
  AlphaSample out;
  out.alpha.resize(rank());
  out.snr = snr_;
  out.rank = rank();
  sample(rng, out.alpha);
  return out;
}

AlphaSample sample_alpha(const CovarianceSpec& cov, Eigen::Index n_c,
                         double snr, PhiloxRng& rng) {
  AlphaSampler sampler(cov, n_c, snr);
  return sampler.sample(rng);
}

double alpha_log_pdf(const AlphaSample& alpha, const CovarianceSpec& cov,
                     Eigen::Index n_c) {
  const Eigen::Index r = cov.rank();
  if (alpha.rank != r ||
      static_cast<Eigen::Index>(alpha.alpha.size()) != r) {
    throw std::invalid_argument("alpha_log_pdf: rank mismatch");
  }
  if (r > n_c) {
    throw RegimeError(
        "alpha_log_pdf: rank(R) > N_c is outside the supported regime");
  }
  const auto lambda = cov.positive_eigenvalues();
  for (Eigen::Index i = 0; i + 1 < r; ++i) {
    if (lambda[i] - lambda[i + 1] <
        kDistinctTolerance * std::max(lambda[i], 1.0)) {
      throw std::invalid_argument(
          "alpha_log_pdf: repeated covariance eigenvalues; perturb them "
          "(relative 1e-6) and retry");
    }
    if (!(alpha.alpha[i] < alpha.alpha[i + 1])) {
      throw std::invalid_argument(
          "alpha_log_pdf: alpha must be strictly ascending");
    }
  }
  const double log_snr = std::log(alpha.snr);
  std::vector<double> a(r);  // descending, a_j = snr^{-2 alpha_j}
  for (Eigen::Index j = 0; j < r; ++j) {
    a[j] = std::exp(-2.0 * alpha.alpha[j] * log_snr);
    if (std::isinf(a[j])) {
      // Overflowed eigenvalue: the exp(-a/lambda) factor drives the density
      // to zero far faster than any double can represent.
      return -std::numeric_limits<double>::infinity();
    }
  }

  // Wishart eigenvalue law of the reduced matrix, in the a variables:
  //   det({e^{-a_j / l_i}}) / det(L)^{N_c}
  //     * prod_l a_l^{N_c - r} / (N_c - l)!
  //     * prod_{k<l} (a_k - a_l) l_k l_l / (l_k - l_l)
  // then the a -> alpha change of variables contributes 2 ln(snr) a_j per
  // coordinate, merging with the power of a_l below.
  double lp = static_cast<double>(r) * std::log(2.0 * log_snr);
  lp += log_det_exp_kernel(a, {lambda.data(), static_cast<std::size_t>(r)});
  for (Eigen::Index i = 0; i < r; ++i) {
    lp -= static_cast<double>(n_c) * std::log(lambda[i]);
    lp -= log_factorial(n_c - i - 1);
    lp += -2.0 * alpha.alpha[i] * static_cast<double>(n_c - r + 1) * log_snr;
  }
  for (Eigen::Index k = 0; k < r; ++k) {
    for (Eigen::Index l = k + 1; l < r; ++l) {
      lp += std::log(a[k] - a[l]);
      lp += std::log(lambda[k]) + std::log(lambda[l]) -
            std::log(lambda[k] - lambda[l]);
    }
  }
  return lp;
}

double asymptotic_exponent(std::span<const double> alpha_ascending,
                           Eigen::Index cov_rank, Eigen::Index n_c) {
  const Eigen::Index r = static_cast<Eigen::Index>(alpha_ascending.size());
  if (r != cov_rank) {
    throw std::invalid_argument("asymptotic_exponent: rank mismatch");
  }
  if (r == 0) return 0.0;
  if (alpha_ascending[0] < 0.0) {
    return -std::numeric_limits<double>::infinity();
  }
  double sum = 0.0;
  for (Eigen::Index i = 0; i < r; ++i) {
    sum += static_cast<double>(n_c + r - 1 - 2 * i) * alpha_ascending[i];
  }
  return -2.0 * sum;
}

}  // namespace sdmt
