#pragma once

#include <string>
#include <vector>

#include "drk/abelian.hpp"
#include "drk/models.hpp"

namespace drk {

/// Outcome of one machine check, kept so reports can show what was verified.
struct Check {
  std::string name;
  bool passed = false;
};

/// K_0 of a rank-2 system through the split exact sequence
///
///   0 -> coker(1-m1 | 1-m2) --j--> K_0 --tau--> ker(1-m1 ; 1-m2) -> 0.
///
/// K_0 is presented as coker_part (+) ker_part with j the inclusion of the
/// first summand and tau the projection onto the second. Only j, tau and the
/// (trivial) extension class are canonical; the splitting is a choice that
/// exists because ker_part is free.
struct K0Data {
  Rank2MatrixSystem system;
  FgAbGroup coker_part;  // Z^n / im(1-m1 | 1-m2), on point indicators
  IntMatrix ker_basis;   // n x k Hermite basis of the stacked kernel
  FgAbGroup ker_part;    // Z^k, free, coordinates against ker_basis
  FgAbGroup k0;          // coker_part (+) ker_part
  GroupHom j;
  GroupHom tau;
  std::vector<Check> checks;  // all passed, or construction throws

  bool verified() const;
};

/// Builds K0Data and machine-checks: j and tau well defined, j injective,
/// tau surjective, tau o j = 0, exactness at K_0, (1-m1)(1-m2) =
/// (1-m2)(1-m1), and that K_0 has type (free rank of coker + rank of ker,
/// torsion of coker). Throws InternalConsistencyError if any check fails.
K0Data k0_of_system(const Rank2MatrixSystem& system);

struct BlockReductionResult {
  // coker of 1-m2 acting on coker(1-m1), computed on its own
  FgAbGroup iterated_cokernel;
  FgAbGroup block_cokernel;
  // ker(1-m2) restricted to ker(1-m1), as a lattice in Z^n
  HermiteLattice iterated_kernel;
  HermiteLattice stacked_kernel;
  std::vector<Check> checks;
  bool holds() const;
};

/// Verifies both halves of the block-matrix reduction for this system:
/// the induced map on coker(1-m1) has cokernel isomorphic to the block
/// cokernel via p + im(1-m1) |-> p + im(block), and the iterated kernel is
/// the stacked kernel as a sublattice of Z^n.
BlockReductionResult blockmatrix_reduction(const Rank2MatrixSystem& system);
bool blockmatrix_reduction_check(const Rank2MatrixSystem& system);

/// Morphism of exact sequences induced by an invariant subset W:
///
///   0 -> coker_W -> K_0(W)  -> ker_W -> 0
///          |v_left   |v_mid     |v_right
///   0 -> coker   -> K_0     -> ker   -> 0
///
/// v_left and v_right are induced by the coordinate inclusion Z^W -> Z^n;
/// v_mid = diag(v_left, v_right) on the chosen splittings. The zero
/// off-diagonal block is one valid choice: the diagram only pins the middle
/// map up to a homomorphism ker_W -> coker.
struct SesMorphism {
  Subset subset;
  K0Data top;     // restricted system
  K0Data bottom;  // full system
  GroupHom v_left;
  GroupHom v_mid;
  GroupHom v_right;
  std::vector<Check> checks;
  bool v_left_injective = false;  // informational; not implied by the diagram

  bool verified() const;
};

/// Throws InputError if W is not invariant for the system, and
/// InternalConsistencyError if a diagram check fails.
SesMorphism ideal_morphism(const Rank2MatrixSystem& system, const Subset& w);

/// A cyclic summand of coker_part, written on point indicators.
struct CokerGenerator {
  IntVector combination;  // coefficient of each indicator 1_x
  Integer order;          // 0 for an infinite cyclic summand
};

struct K0Report {
  std::string k0_type;
  std::string coker_type;
  std::string ker_type;
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;
  std::vector<CokerGenerator> coker_generators;
  // Class of each indicator 1_x in the coordinates of coker_generators
  // (entries reduced mod the order of each finite summand).
  std::vector<IntVector> indicator_classes;
  std::vector<IntVector> ker_basis;
  std::vector<Check> checks;
};

K0Report report_k0(const K0Data& data);

}  // namespace drk
