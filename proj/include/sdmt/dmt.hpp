#pragma once

#include <limits>
#include <vector>

#include "sdmt/wishart.hpp"

namespace sdmt {

inline constexpr double kInfiniteBlocklength =
    std::numeric_limits<double>::infinity();

struct DmtPoint {
  double r;  // multiplexing gain
  double d;  // diversity gain
};

/// Piecewise-linear diversity-multiplexing curve given by its breakpoints:
/// r strictly increasing, d strictly decreasing to 0, linear in between,
/// and identically 0 past the last breakpoint.
class DmtCurve {
 public:
  DmtCurve(std::vector<DmtPoint> breakpoints, int n_c, int rank_or_m,
           double blocklength);

  double evaluate(double r) const;
  const std::vector<DmtPoint>& breakpoints() const { return points_; }
  double max_multiplexing() const { return points_.back().r; }

  int n_c() const { return n_c_; }
  int rank_or_m() const { return rank_or_m_; }
  double blocklength() const { return blocklength_; }  // may be infinite

 private:
  std::vector<DmtPoint> points_;
  int n_c_;
  int rank_or_m_;
  double blocklength_;
};

/// Rayleigh MIMO tradeoff: breakpoints (k, (m - k)(n_c - k)),
/// k = 0..min(m, n_c).
DmtCurve unconstrained_dmt(int m, int n_c);

/// Sensing-constrained outage tradeoff: breakpoints
/// (k (1 - k / 2t), (n_c - k)(rank - k)), k = 0..rank.  Pass
/// kInfiniteBlocklength for the t -> infinity limit, which coincides with
/// unconstrained_dmt(rank, n_c).
DmtCurve constrained_dmt(int rank, int n_c, double t);

struct OutageRegionSpec {
  double t = 0.0;  // blocklength
  int rank = 0;
  double r = 0.0;  // target multiplexing gain
};

/// True iff alpha lies in the outage region:
///   sum_i (2t + 1 - 2i) (0.5 - alpha_i)^+ < t r   (strict).
bool outage_indicator(const AlphaSample& alpha, const OutageRegionSpec& spec);

struct ExponentSolution {
  double d = 0.0;
  std::vector<double> alpha;  // a minimizer, ascending in [0, 0.5]
};

/// Outage exponent as a linear program:
///   min 2 sum_i (n_c + rank + 1 - 2i) alpha_i
///   s.t. sum_i (2t + 1 - 2i) (0.5 - alpha_i)^+ <= t r,
///        0 <= alpha_1 <= ... <= alpha_rank,
/// solved numerically (independent of the closed form above).  Among optima
/// the lexicographically smallest alpha is returned.
ExponentSolution exponent_lp(const OutageRegionSpec& spec, int n_c);

}  // namespace sdmt
