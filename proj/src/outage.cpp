#include "sdmt/outage.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "sdmt/errors.hpp"
#include "sdmt/manifold.hpp"

namespace sdmt {

namespace {

constexpr std::int64_t kChunkSize = 1 << 14;
constexpr std::int64_t kMinHitsForFit = 50;

struct Chunk {
  std::size_t grid_index;
  std::int64_t first;
  std::int64_t count;
};

}  // namespace

double asymptotic_mi_coefficient(const AlphaSample& alpha, double t) {
  double coefficient = 0.0;
  for (Eigen::Index i = 1; i <= alpha.rank; ++i) {
    const double short_fall = 0.5 - alpha.alpha[i - 1];
    if (short_fall > 0.0) {
      coefficient += (2.0 * t + 1.0 - 2.0 * i) * short_fall;
    }
  }
  return coefficient;
}

OutageEstimate estimate_outage(const CovarianceSpec& cov, Eigen::Index n_c,
                               double t, double r,
                               std::vector<double> snr_grid,
                               std::int64_t n_samples, std::uint64_t seed,
                               int workers) {
  if (snr_grid.empty()) {
    throw std::invalid_argument("estimate_outage: empty SNR grid");
  }
  if (!std::is_sorted(snr_grid.begin(), snr_grid.end())) {
    throw std::invalid_argument("estimate_outage: SNR grid must ascend");
  }
  if (n_samples < 1000) {
    throw std::invalid_argument("estimate_outage: need n_samples >= 1000");
  }
  if (r < 0.0) {
    throw std::invalid_argument("estimate_outage: negative multiplexing gain");
  }
  if (!(t >= n_c) || !std::isfinite(t)) {
    throw RegimeError(
        "estimate_outage: requires a finite blocklength T >= N_c");
  }
  const OutageRegionSpec region{t, static_cast<int>(cov.rank()), r};

  std::vector<Chunk> chunks;
  for (std::size_t g = 0; g < snr_grid.size(); ++g) {
    for (std::int64_t first = 0; first < n_samples; first += kChunkSize) {
      chunks.push_back({g, first, std::min(kChunkSize, n_samples - first)});
    }
  }
  std::vector<std::int64_t> chunk_hits(chunks.size(), 0);

  if (workers <= 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
  }
  std::atomic<std::size_t> next_chunk{0};
  auto run_worker = [&] {
    AlphaSample sample;
    sample.snr = 0.0;
    sample.rank = cov.rank();
    sample.alpha.resize(cov.rank());
    for (;;) {
      const std::size_t c = next_chunk.fetch_add(1);
      if (c >= chunks.size()) return;
      const Chunk& chunk = chunks[c];
      AlphaSampler sampler(cov, n_c, snr_grid[chunk.grid_index]);
      sample.snr = snr_grid[chunk.grid_index];
      // Stream id = (grid point, chunk) so the draw for sample i never
      // depends on how chunks land on threads.
      const std::uint64_t stream =
          (static_cast<std::uint64_t>(chunk.grid_index) << 40) |
          static_cast<std::uint64_t>(chunk.first / kChunkSize);
      PhiloxRng rng(seed, stream);
      std::int64_t hits = 0;
      for (std::int64_t i = 0; i < chunk.count; ++i) {
        sampler.sample(rng, sample.alpha);
        if (outage_indicator(sample, region)) ++hits;
      }
      chunk_hits[c] = hits;
    }
  };
  if (workers == 1) {
    run_worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run_worker);
    for (auto& th : pool) th.join();
  }

  OutageEstimate est;
  est.snr_grid = std::move(snr_grid);
  est.n_samples = n_samples;
  est.hits.assign(est.snr_grid.size(), 0);
  for (std::size_t c = 0; c < chunks.size(); ++c) {
    est.hits[chunks[c].grid_index] += chunk_hits[c];
  }
  const double n = static_cast<double>(n_samples);
  for (std::int64_t h : est.hits) {
    const double p = static_cast<double>(h) / n;
    est.p_hat.push_back(p);
    est.ci_half_width.push_back(1.96 * std::sqrt(p * (1.0 - p) / n));
    est.admitted.push_back(h >= kMinHitsForFit);
  }

  const auto nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t g = 0; g < est.snr_grid.size(); ++g) {
    if (est.admitted[g]) {
      xs.push_back(std::log(est.snr_grid[g]));
      ys.push_back(std::log(est.p_hat[g]));
    }
  }
  if (r == 0.0) {
    // The outage condition is strict, so r = 0 yields no outage by
    // construction; there is no slope to fit.
    est.fitted_slope = nan;
    est.slope_stderr = nan;
    return est;
  }
  if (xs.size() < 2) {
    throw RareEventError(
        "estimate_outage: insufficient rare-event resolution (fewer than two "
        "grid points reached 50 outage hits); increase n_samples or lower "
        "the diversity target");
  }
  const double n_fit = static_cast<double>(xs.size());
  double x_mean = 0.0, y_mean = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    x_mean += xs[i];
    y_mean += ys[i];
  }
  x_mean /= n_fit;
  y_mean /= n_fit;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - x_mean) * (xs[i] - x_mean);
    sxy += (xs[i] - x_mean) * (ys[i] - y_mean);
  }
  est.fitted_slope = sxy / sxx;
  if (xs.size() > 2) {
    const double intercept = y_mean - est.fitted_slope * x_mean;
    double rss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double resid = ys[i] - intercept - est.fitted_slope * xs[i];
      rss += resid * resid;
    }
    est.slope_stderr = std::sqrt(rss / (n_fit - 2.0) / sxx);
  } else {
    est.slope_stderr = nan;
  }
  return est;
}

MiApprox finite_snr_mi_approx(const CovarianceSpec& cov,
                              const ComplexMatrix& h_c, double snr, double t) {
  if (h_c.cols() != cov.dim()) {
    throw std::invalid_argument("finite_snr_mi_approx: channel/cov mismatch");
  }
  const Eigen::Index n_c = h_c.rows();
  if (cov.rank() > n_c) {
    throw RegimeError(
        "finite_snr_mi_approx: rank(R) > N_c is outside the supported regime");
  }
  if (!(t >= n_c) || !std::isfinite(t)) {
    throw RegimeError(
        "finite_snr_mi_approx: requires a finite blocklength T >= N_c");
  }
  if (!(snr > 1.0)) {
    throw std::invalid_argument("finite_snr_mi_approx: snr must exceed 1");
  }
  const ComplexMatrix b = h_c * cov.matrix() * h_c.adjoint();
  const HermitianEig eig = hermitian_eig(b);
  const double log_snr = std::log(snr);
  std::vector<double> alpha;
  for (Eigen::Index i = 0; i < cov.rank(); ++i) {
    const double a =
        std::max(eig.eigenvalues(i), std::numeric_limits<double>::min());
    alpha.push_back(-0.5 * std::log(a) / log_snr);
  }
  std::sort(alpha.begin(), alpha.end());
  const Eigen::Index m =
      std::count_if(alpha.begin(), alpha.end(), [](double a) { return a < 0.5; });
  if (m == 0) return {0.0, true};
  const GeneralizedStiefel manifold = make_snr_manifold(
      static_cast<Eigen::Index>(t), cov.dim(), alpha, snr);
  const double md = static_cast<double>(m);
  const double value =
      log_volume(manifold) -
      0.5 * md * (2.0 * t - md) * std::log(std::numbers::pi * std::numbers::e);
  return {value, false};
}

}  // namespace sdmt
