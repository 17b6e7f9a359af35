#include "sdmt/sensing.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "sdmt/errors.hpp"

namespace sdmt {

namespace {

ComplexVector steering_vector(int antennas, double theta) {
  // Half-wavelength ULA: phase increment pi sin(theta) per element.
  ComplexVector v(antennas);
  const double step = std::numbers::pi * std::sin(theta);
  for (int i = 0; i < antennas; ++i) {
    v(i) = std::polar(1.0, step * i);
  }
  return v;
}

}  // namespace

double bcrb_channel_estimation(const CovarianceSpec& cov,
                               const SensingModel& model) {
  if (model.kind != SensingKind::kChannelEstimation) {
    throw std::invalid_argument(
        "bcrb_channel_estimation: model kind must be channel-estimation");
  }
  if (model.m != cov.dim()) {
    throw std::invalid_argument(
        "bcrb_channel_estimation: covariance dimension != Tx antennas");
  }
  if (model.n_s < 1 || model.eta_s < 0.0 || !(model.t >= 1.0)) {
    throw std::invalid_argument("bcrb_channel_estimation: invalid model");
  }
  const double gain = model.eta_s * model.t / model.m;
  double e = 0.0;
  for (Eigen::Index i = 0; i < cov.dim(); ++i) {
    e += 1.0 / (1.0 + gain * cov.eigenvalues()(i));
  }
  return model.n_s * e;
}

ComplexMatrix build_angle_channel(const SensingModel& model,
                                  std::span<const double> thetas,
                                  std::span<const std::complex<double>> betas) {
  if (model.kind != SensingKind::kAngleModel) {
    throw std::invalid_argument(
        "build_angle_channel: model kind must be angle-model");
  }
  if (thetas.size() != betas.size() || thetas.empty()) {
    throw std::invalid_argument(
        "build_angle_channel: need matching, nonempty angle and RCS lists");
  }
  ComplexMatrix h = ComplexMatrix::Zero(model.n_s, model.m);
  for (std::size_t n = 0; n < thetas.size(); ++n) {
    const ComplexVector a = steering_vector(model.n_s, thetas[n]);
    const ComplexVector v = steering_vector(model.m, thetas[n]);
    h.noalias() += betas[n] * a * v.adjoint();
  }
  return h;
}

DmtCurve rank_bound_curve(int n_t, int m, int n_c, double t) {
  if (n_t < 1) {
    throw std::invalid_argument("rank_bound_curve: need at least one target");
  }
  if (n_t > n_c) {
    throw RegimeError("rank_bound_curve: requires N_t <= N_c");
  }
  return constrained_dmt(std::min(m, n_t), n_c, t);
}

}  // namespace sdmt
