#pragma once

#include <optional>
#include <vector>

#include "drk/int_matrix.hpp"

namespace drk {

/// A subgroup of Z^n stored by its canonical column Hermite basis.
///
/// Convention: the basis columns b_0..b_{r-1} have strictly increasing pivot
/// rows p_0 < p_1 < ...; column j vanishes above p_j and has a positive
/// entry at p_j; in every pivot row p_j the entries of the earlier columns
/// b_0..b_{j-1} lie in [0, b_j[p_j]). The form is unique, so two lattices
/// are equal iff their basis matrices are identical.
class HermiteLattice {
 public:
  HermiteLattice() = default;
  // The zero lattice of Z^ambient_dim.
  explicit HermiteLattice(std::size_t ambient_dim);

  std::size_t ambient_dim() const noexcept { return basis_.rows(); }
  std::size_t rank() const noexcept { return basis_.cols(); }
  const IntMatrix& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivot_rows() const noexcept { return pivots_; }

  bool is_zero() const noexcept { return rank() == 0; }
  bool is_full() const;

  friend bool operator==(const HermiteLattice& a, const HermiteLattice& b) { return a.basis_ == b.basis_; }

 private:
  friend HermiteLattice lattice_of_columns(const IntMatrix& a);
  IntMatrix basis_;
  std::vector<std::size_t> pivots_;
};

/// Canonical Hermite basis of the column span of `a`.
HermiteLattice lattice_of_columns(const IntMatrix& a);

/// The lattice generated by both `a` and `b` (same ambient dimension).
HermiteLattice lattice_sum(const HermiteLattice& a, const HermiteLattice& b);

/// Coefficients c with basis * c == v, or nullopt if v is not in the lattice.
std::optional<IntVector> lattice_contains(const HermiteLattice& lattice, std::span<const Integer> v);

/// True iff every column of `a` lies in the lattice.
bool lattice_contains_columns(const HermiteLattice& lattice, const IntMatrix& a);

}  // namespace drk
