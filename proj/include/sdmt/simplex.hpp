#pragma once

#include <vector>

namespace sdmt {

/// Dense linear program  min c^T x  s.t.  A x <= b,  x >= 0.
/// Rows of `a` may have negative right-hand sides; a two-phase tableau
/// simplex with Bland's rule handles them (and cannot cycle).  Intended for
/// the small exponent programs here (tens of variables), not general use.
struct LpResult {
  enum class Status { kOptimal, kInfeasible, kUnbounded };
  Status status = Status::kInfeasible;
  double objective = 0.0;
  std::vector<double> x;
};

LpResult solve_lp(const std::vector<std::vector<double>>& a,
                  const std::vector<double>& b, const std::vector<double>& c);

}  // namespace sdmt
