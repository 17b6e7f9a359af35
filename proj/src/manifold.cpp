#include "sdmt/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sdmt/errors.hpp"

namespace sdmt {

namespace {

constexpr double kRankTolerance = 1e-9;  // relative to the largest eigenvalue

double log_factorial(Eigen::Index n) { return std::lgamma(n + 1.0); }

}  // namespace

GeneralizedStiefel::GeneralizedStiefel(Eigen::Index k, Eigen::Index n,
                                       std::vector<double> sigma,
                                       ComplexMatrix shape,
                                       ComplexMatrix basis)
    : k_(k),
      n_(n),
      sigma_(std::move(sigma)),
      shape_(std::move(shape)),
      basis_(std::move(basis)) {}

GeneralizedStiefel GeneralizedStiefel::from_shape(const ComplexMatrix& a,
                                                  Eigen::Index n) {
  const Eigen::Index k = a.rows();
  if (k < 1 || a.cols() != k) {
    throw std::invalid_argument("GeneralizedStiefel: shape must be square");
  }
  const HermitianEig eig = hermitian_eig(a);  // validates Hermitian-ness
  const double lambda_max = std::max(eig.eigenvalues(0), 0.0);
  const double tol = kRankTolerance * std::max(lambda_max, 1.0);
  std::vector<double> sigma;
  for (Eigen::Index i = 0; i < k; ++i) {
    const double lambda = eig.eigenvalues(i);
    if (lambda < -tol) {
      throw std::invalid_argument(
          "GeneralizedStiefel: shape matrix is not positive semidefinite");
    }
    if (lambda > tol) sigma.push_back(std::sqrt(lambda));
  }
  if (sigma.empty()) {
    throw std::invalid_argument("GeneralizedStiefel: shape matrix is zero");
  }
  if (n < static_cast<Eigen::Index>(sigma.size())) {
    throw std::invalid_argument(
        "GeneralizedStiefel: need n >= rank(shape) columns");
  }
  return GeneralizedStiefel(k, n, std::move(sigma), a, eig.eigenvectors);
}

GeneralizedStiefel GeneralizedStiefel::from_sigma(std::vector<double> sigma,
                                                  Eigen::Index n) {
  if (sigma.empty()) {
    throw std::invalid_argument("GeneralizedStiefel: sigma must be nonempty");
  }
  for (double s : sigma) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw std::invalid_argument(
          "GeneralizedStiefel: sigma entries must be positive and finite");
    }
  }
  std::sort(sigma.begin(), sigma.end(), std::greater<>());
  const Eigen::Index k = static_cast<Eigen::Index>(sigma.size());
  if (n < k) {
    throw std::invalid_argument("GeneralizedStiefel: need n >= rank columns");
  }
  ComplexMatrix shape = ComplexMatrix::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) shape(i, i) = sigma[i] * sigma[i];
  return GeneralizedStiefel(k, n, std::move(sigma), std::move(shape),
                            ComplexMatrix::Identity(k, k));
}

GeneralizedStiefel make_snr_manifold(Eigen::Index t, Eigen::Index m_tx,
                                     std::span<const double> alpha,
                                     double snr) {
  if (t < 1 || m_tx < 1) {
    throw std::invalid_argument("make_snr_manifold: t and m_tx must be >= 1");
  }
  if (!(snr > 1.0)) {
    throw std::invalid_argument("make_snr_manifold: snr must exceed 1");
  }
  std::vector<double> sigma;
  const double front = std::sqrt(static_cast<double>(t) / m_tx);
  for (double a : alpha) {
    if (a < 0.5) sigma.push_back(front * std::pow(snr, 0.5 - a));
  }
  if (sigma.empty()) {
    throw std::invalid_argument(
        "make_snr_manifold: no dominant dimension (all alpha >= 0.5)");
  }
  return GeneralizedStiefel::from_sigma(std::move(sigma), t);
}

ComplexMatrix uniform_sample(const GeneralizedStiefel& m, PhiloxRng& rng) {
  const Eigen::Index r = m.rank();
  const ComplexMatrix f = haar_stiefel(r, m.n(), rng);
  ComplexMatrix scaled = f;
  for (Eigen::Index i = 0; i < r; ++i) scaled.row(i) *= m.sigma()[i];
  return m.eigenbasis().leftCols(r) * scaled;
}

double log_volume(const GeneralizedStiefel& m) {
  const auto& sigma = m.sigma();
  const Eigen::Index rank = m.rank();
  const Eigen::Index n = m.n();
  if (rank < 1 || !(m.sigma_min() > 0.0)) {
    throw std::domain_error("log_volume: manifold has a zero scale");
  }
  double lv = -0.5 * static_cast<double>(rank * (rank - 1)) * std::numbers::ln2;
  for (Eigen::Index i = 0; i < rank; ++i) {
    for (Eigen::Index j = i + 1; j < rank; ++j) {
      lv += std::log(sigma[i] * sigma[i] + sigma[j] * sigma[j]);
    }
  }
  const double exponent = static_cast<double>(2 * n - 2 * rank + 1);
  for (Eigen::Index i = 0; i < rank; ++i) lv += exponent * std::log(sigma[i]);
  // Standard complex Stiefel factor: prod_{i=n-m+1}^{n} 2 pi^i / (i-1)!.
  for (Eigen::Index i = n - rank + 1; i <= n; ++i) {
    lv += std::numbers::ln2 + static_cast<double>(i) * std::log(std::numbers::pi) -
          log_factorial(i - 1);
  }
  return lv;
}

GeometryReport geometry_bounds(const GeneralizedStiefel& m) {
  const double s = m.sigma_min();
  GeometryReport report;
  report.max_second_fundamental_form = 1.0 / s;
  report.tube_radius_lower = s;
  report.injectivity_radius_lower = std::numbers::pi * s;
  report.c_bound = std::max({report.max_second_fundamental_form,
                             1.0 / report.tube_radius_lower,
                             1.0 / report.injectivity_radius_lower});
  report.log_volume = log_volume(m);
  return report;
}

double second_fundamental_form(const GeneralizedStiefel& m,
                               const ComplexMatrix& base,
                               const ComplexMatrix& tangent) {
  constexpr double kTol = 1e-8;
  const Eigen::Index k = m.k();
  const Eigen::Index rank = m.rank();
  if (base.rows() != k || base.cols() != m.n() || tangent.rows() != k ||
      tangent.cols() != m.n()) {
    throw std::invalid_argument("second_fundamental_form: dimension mismatch");
  }
  const double shape_scale = std::max(1.0, m.shape().norm());
  if ((base * base.adjoint() - m.shape()).norm() > kTol * shape_scale) {
    throw std::invalid_argument(
        "second_fundamental_form: base point violates X X^H = A");
  }
  const ComplexMatrix mixed = base * tangent.adjoint();
  const double tangent_scale =
      std::max(1.0, base.norm() * tangent.norm());
  if ((mixed + mixed.adjoint()).norm() > kTol * tangent_scale) {
    throw std::invalid_argument(
        "second_fundamental_form: tangency S Delta^H + Delta S^H = 0 violated");
  }
  const double norm2 = tangent.squaredNorm();
  if (std::abs(norm2 - 1.0) > kTol) {
    throw std::invalid_argument(
        "second_fundamental_form: tangent is not unit length, g(D, D) != 1");
  }
  // Rotate into the eigenbasis of A; only the Gram matrix of the tangent
  // enters, so the right (Haar) factor of the base never has to be found.
  const ComplexMatrix gram =
      m.eigenbasis().adjoint() * (tangent * tangent.adjoint()) * m.eigenbasis();
  if (rank < k && gram.bottomRightCorner(k - rank, k - rank).norm() >
                      kTol * std::max(1.0, gram.norm())) {
    throw std::invalid_argument(
        "second_fundamental_form: tangent has mass outside the row space of A");
  }
  const auto& sigma = m.sigma();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < rank; ++i) {
    for (Eigen::Index j = 0; j < rank; ++j) {
      const double denom = sigma[i] * sigma[i] + sigma[j] * sigma[j];
      const double gamma_ij = 2.0 * std::abs(gram(i, j)) / denom;
      acc += sigma[i] * sigma[i] * gamma_ij * gamma_ij;
    }
  }
  return std::sqrt(acc);
}

EntropyApprox entropy_approximation(const GeneralizedStiefel& m, double delta,
                                    double snr) {
  if (!(delta > 0.0) || delta > 1.0) {
    throw std::invalid_argument(
        "entropy_approximation: delta must lie in (0, 1]");
  }
  if (!(snr > 0.0)) {
    throw std::invalid_argument("entropy_approximation: snr must be positive");
  }
  const double rank = static_cast<double>(m.rank());
  EntropyApprox out;
  out.approx = 0.5 * rank * rank * std::log(std::numbers::pi * std::numbers::e) +
               log_volume(m);
  const double c = 1.0 / m.sigma_min();
  const double log_c = std::log(c);  // squared below, so c < 1 is fine
  out.error_bound_shape = (1.0 / delta) *
                          std::pow(1.0 + c * std::sqrt(snr), delta) * c * c *
                          log_c * log_c;
  return out;
}

}  // namespace sdmt
