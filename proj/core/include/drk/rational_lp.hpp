#pragma once

#include <optional>
#include <vector>

#include "drk/hermite.hpp"
#include "drk/int_matrix.hpp"

namespace drk {

using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;  // row-major, rows of equal length

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  RationalVector x;    // optimal point when status == Optimal
  Rational objective;  // c^T x at that point
};

/// maximize c^T x subject to a x = b, x >= 0, over the rationals.
///
/// Two-phase dense tableau simplex with Bland's rule: entering variable is
/// the lowest-index improving column, ties in the ratio test go to the
/// lowest-index basic variable. Exact arithmetic; no tolerances.
LpResult maximize(const RationalMatrix& a, const RationalVector& b, const RationalVector& c);

struct ConeWitness {
  RationalVector vector;        // v >= 0, v != 0, components sum to 1
  RationalVector coefficients;  // basis * coefficients == vector
};

/// A nonzero nonnegative vector in span_Q(lattice), if one exists.
///
/// Solves: maximize sum(x) s.t. x = basis * t, x >= 0, sum(x) <= 1, t free.
/// The optimum is 0 exactly when the span meets the nonnegative orthant only
/// at the origin.
std::optional<ConeWitness> subspace_meets_positive_cone(const HermiteLattice& lattice);

}  // namespace drk
