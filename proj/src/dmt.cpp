#include "sdmt/dmt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sdmt/errors.hpp"
#include "sdmt/simplex.hpp"

namespace sdmt {

DmtCurve::DmtCurve(std::vector<DmtPoint> breakpoints, int n_c, int rank_or_m,
                   double blocklength)
    : points_(std::move(breakpoints)),
      n_c_(n_c),
      rank_or_m_(rank_or_m),
      blocklength_(blocklength) {
  if (points_.empty()) {
    throw std::invalid_argument("DmtCurve: no breakpoints");
  }
  for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
    if (!(points_[i].r < points_[i + 1].r) ||
        !(points_[i].d > points_[i + 1].d)) {
      throw std::invalid_argument(
          "DmtCurve: breakpoints must have strictly increasing r and "
          "strictly decreasing d");
    }
  }
  if (points_.back().d != 0.0) {
    throw std::invalid_argument("DmtCurve: curve must end at d = 0");
  }
}

double DmtCurve::evaluate(double r) const {
  if (r < 0.0) {
    throw std::invalid_argument("DmtCurve: negative multiplexing gain");
  }
  if (r >= points_.back().r) return 0.0;
  if (r <= points_.front().r) return points_.front().d;
  auto hi = std::upper_bound(
      points_.begin(), points_.end(), r,
      [](double value, const DmtPoint& p) { return value < p.r; });
  auto lo = hi - 1;
  const double w = (r - lo->r) / (hi->r - lo->r);
  return lo->d + w * (hi->d - lo->d);
}

DmtCurve unconstrained_dmt(int m, int n_c) {
  if (m < 1 || n_c < 1) {
    throw std::invalid_argument("unconstrained_dmt: antenna counts >= 1");
  }
  std::vector<DmtPoint> points;
  const int k_max = std::min(m, n_c);
  for (int k = 0; k <= k_max; ++k) {
    points.push_back({static_cast<double>(k),
                      static_cast<double>((m - k) * (n_c - k))});
  }
  return DmtCurve(std::move(points), n_c, m, kInfiniteBlocklength);
}

DmtCurve constrained_dmt(int rank, int n_c, double t) {
  if (rank < 1 || n_c < 1) {
    throw std::invalid_argument("constrained_dmt: rank and n_c must be >= 1");
  }
  if (rank > n_c) {
    throw RegimeError("constrained_dmt: requires rank <= N_c");
  }
  const bool infinite = std::isinf(t);
  if (!infinite && !(t >= n_c)) {
    throw RegimeError("constrained_dmt: requires blocklength T >= N_c");
  }
  std::vector<DmtPoint> points;
  for (int k = 0; k <= rank; ++k) {
    const double r =
        infinite ? static_cast<double>(k) : k * (1.0 - k / (2.0 * t));
    points.push_back({r, static_cast<double>((n_c - k) * (rank - k))});
  }
  return DmtCurve(std::move(points), n_c, rank, t);
}

bool outage_indicator(const AlphaSample& alpha, const OutageRegionSpec& spec) {
  if (alpha.rank != spec.rank) {
    throw std::invalid_argument("outage_indicator: rank mismatch");
  }
  double coefficient = 0.0;
  for (int i = 1; i <= spec.rank; ++i) {
    const double short_fall = 0.5 - alpha.alpha[i - 1];
    if (short_fall > 0.0) {
      coefficient += (2.0 * spec.t + 1.0 - 2.0 * i) * short_fall;
    }
  }
  return coefficient < spec.t * spec.r;
}

namespace {

// Variables x = [alpha_1..alpha_m, s_1..s_m].  The epigraph variables obey
// s_i >= 0.5 - alpha_i and s_i >= 0; since the weights (2t+1-2i) are positive
// and the budget row is the only place s appears, any optimum can lower s_i
// to exactly (0.5 - alpha_i)^+, so the relaxation is exact.
struct ExponentProgram {
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  int m;

  ExponentProgram(const OutageRegionSpec& spec) : m(spec.rank) {
    const int n = 2 * m;
    auto row = [n]() { return std::vector<double>(n, 0.0); };
    // Ordering chain alpha_i - alpha_{i+1} <= 0.
    for (int i = 0; i + 1 < m; ++i) {
      auto r = row();
      r[i] = 1.0;
      r[i + 1] = -1.0;
      a.push_back(std::move(r));
      b.push_back(0.0);
    }
    // Cap alpha_m <= 0.5: values above 0.5 never help, and the cap keeps the
    // polytope bounded.
    {
      auto r = row();
      r[m - 1] = 1.0;
      a.push_back(std::move(r));
      b.push_back(0.5);
    }
    // -alpha_i - s_i <= -0.5  (i.e. s_i >= 0.5 - alpha_i).
    for (int i = 0; i < m; ++i) {
      auto r = row();
      r[i] = -1.0;
      r[m + i] = -1.0;
      a.push_back(std::move(r));
      b.push_back(-0.5);
    }
    // Budget sum_i (2t + 1 - 2i) s_i <= t r.
    {
      auto r = row();
      for (int i = 1; i <= m; ++i) r[m + i - 1] = 2.0 * spec.t + 1.0 - 2.0 * i;
      a.push_back(std::move(r));
      b.push_back(spec.t * spec.r);
    }
  }
};

std::vector<double> objective_vector(const OutageRegionSpec& spec, int n_c) {
  std::vector<double> c(2 * spec.rank, 0.0);
  for (int i = 1; i <= spec.rank; ++i) {
    c[i - 1] = 2.0 * (n_c + spec.rank + 1 - 2 * i);
  }
  return c;
}

}  // namespace

ExponentSolution exponent_lp(const OutageRegionSpec& spec, int n_c) {
  if (spec.rank < 1 || n_c < spec.rank) {
    throw RegimeError("exponent_lp: requires 1 <= rank <= N_c");
  }
  if (!(spec.t >= spec.rank) || !std::isfinite(spec.t)) {
    throw RegimeError("exponent_lp: requires a finite blocklength t >= rank");
  }
  if (spec.r < 0.0) {
    throw std::invalid_argument("exponent_lp: negative multiplexing gain");
  }
  const double r_max = spec.rank * (1.0 - spec.rank / (2.0 * spec.t));
  if (spec.r >= r_max - 1e-12) {
    // Past the multiplexing endpoint the outage region covers everything.
    return {0.0, std::vector<double>(spec.rank, 0.5)};
  }

  ExponentProgram program(spec);
  const std::vector<double> cost = objective_vector(spec, n_c);
  LpResult base = solve_lp(program.a, program.b, cost);
  if (base.status != LpResult::Status::kOptimal) {
    throw std::runtime_error("exponent_lp: solver failed on the base program");
  }

  // Among optima, pin down the lexicographically smallest alpha.  Coordinates
  // already minimized are substituted as constants (s_i at its floor, budget
  // and frozen objective reduced accordingly) rather than re-capped with
  // inequality rows, so stage-to-stage error stays additive.
  constexpr double kFreezeTol = 1e-9;
  const int m = spec.rank;
  std::vector<double> alpha(m, 0.0);
  double remaining_budget = spec.t * spec.r;
  double remaining_objective = base.objective;
  double floor_alpha = 0.0;
  for (int j = 0; j < m; ++j) {
    const int vars = m - j;  // alpha_{j..m-1} then s_{j..m-1}
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    auto row = [vars]() { return std::vector<double>(2 * vars, 0.0); };
    for (int i = 0; i + 1 < vars; ++i) {
      auto r = row();
      r[i] = 1.0;
      r[i + 1] = -1.0;
      a.push_back(std::move(r));
      b.push_back(0.0);
    }
    {
      auto r = row();
      r[vars - 1] = 1.0;
      a.push_back(std::move(r));
      b.push_back(0.5);
    }
    {
      auto r = row();  // alpha_j >= floor from the previous coordinate
      r[0] = -1.0;
      a.push_back(std::move(r));
      b.push_back(-floor_alpha + kFreezeTol);
    }
    for (int i = 0; i < vars; ++i) {
      auto r = row();
      r[i] = -1.0;
      r[vars + i] = -1.0;
      a.push_back(std::move(r));
      b.push_back(-0.5);
    }
    {
      auto r = row();
      for (int i = 0; i < vars; ++i) {
        r[vars + i] = 2.0 * spec.t + 1.0 - 2.0 * (j + i + 1);
      }
      a.push_back(std::move(r));
      b.push_back(std::max(remaining_budget, 0.0));
    }
    {
      auto r = row();  // keep the tail objective at its frozen share
      for (int i = 0; i < vars; ++i) {
        r[i] = 2.0 * (n_c + m + 1 - 2 * (j + i + 1));
      }
      a.push_back(std::move(r));
      b.push_back(remaining_objective + kFreezeTol);
    }
    std::vector<double> direction(2 * vars, 0.0);
    direction[0] = 1.0;
    const LpResult step = solve_lp(a, b, direction);
    if (step.status != LpResult::Status::kOptimal) {
      throw std::runtime_error("exponent_lp: tie-break refinement failed");
    }
    const double v = std::min(0.5, std::max(floor_alpha, step.x[0]));
    alpha[j] = v;
    remaining_budget -=
        (2.0 * spec.t + 1.0 - 2.0 * (j + 1)) * std::max(0.5 - v, 0.0);
    remaining_objective -= 2.0 * (n_c + m + 1 - 2 * (j + 1)) * v;
    floor_alpha = v;
  }
  return {base.objective, std::move(alpha)};
}

}  // namespace sdmt
