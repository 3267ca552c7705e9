#pragma once

#include <optional>
#include <vector>

#include "drk/int_matrix.hpp"

namespace drk {

/// Smith normal form `left * source * right == diagonal`.
///
/// `left` and `right` are unimodular; `left_inverse` is tracked alongside
/// `left` so that cokernel generators can be read off without inverting.
/// The diagonal is nonnegative with d1 | d2 | ... | d_rank followed by zeros.
struct SmithForm {
  IntMatrix source;
  IntMatrix left;
  IntMatrix left_inverse;
  IntMatrix right;
  IntMatrix diagonal;
  std::vector<Integer> invariant_factors;  // nonzero diagonal entries, in order
  std::size_t rank = 0;
};

SmithForm smith_normal_form(const IntMatrix& a);

/// Basis of {x in Z^cols : a x = 0}, returned as the columns of a matrix in
/// canonical Hermite form. The integer kernel is saturated, so these columns
/// generate every integer solution, not just a finite-index sublattice.
IntMatrix kernel_basis(const IntMatrix& a);

/// Some integer x with a x = b, or nullopt if none exists.
std::optional<IntVector> solve_integer_system(const IntMatrix& a, std::span<const Integer> b);

/// Solves a X = B column by column; nullopt if any column has no integer solution.
std::optional<IntMatrix> solve_integer_system(const IntMatrix& a, const IntMatrix& b);

}  // namespace drk
