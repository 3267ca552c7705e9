#pragma once

#include <optional>
#include <string>
#include <vector>

#include "drk/hermite.hpp"
#include "drk/int_matrix.hpp"
#include "drk/smith.hpp"

namespace drk {

/// Finitely generated abelian group Z^ambient / colspan(relations).
///
/// A group is a presentation, not an isomorphism class: generators are the
/// standard basis of Z^ambient (point or vertex indicators in this library)
/// and homomorphisms are written against them.
class FgAbGroup {
 public:
  FgAbGroup() : FgAbGroup(IntMatrix(0, 0)) {}
  explicit FgAbGroup(IntMatrix relations);

  static FgAbGroup free(std::size_t rank);

  std::size_t ambient_rank() const noexcept { return relations_.rows(); }
  const IntMatrix& relations() const noexcept { return relations_; }
  const HermiteLattice& relation_lattice() const noexcept { return lattice_; }
  const SmithForm& smith() const noexcept { return smith_; }

  std::size_t free_rank() const noexcept { return free_rank_; }
  // Invariant factors d1 | d2 | ... with every d >= 2.
  const std::vector<Integer>& torsion() const noexcept { return torsion_; }

  bool is_trivial() const noexcept { return free_rank_ == 0 && torsion_.empty(); }
  bool is_free() const noexcept { return torsion_.empty(); }
  // Group order when finite.
  std::optional<Integer> order() const;

  // Same abstract isomorphism type.
  bool isomorphic_to(const FgAbGroup& other) const;
  // Same generators and same relation subgroup.
  bool same_presentation(const FgAbGroup& other) const;

  // "0", "Z", "Z/2", "Z^3 + Z/2 + Z/4" (ASCII) or with unicode symbols.
  std::string describe(bool unicode = false) const;

 private:
  IntMatrix relations_;
  HermiteLattice lattice_;
  SmithForm smith_;
  std::size_t free_rank_ = 0;
  std::vector<Integer> torsion_;
};

/// Z^rows / colspan(a).
FgAbGroup cokernel_group(const IntMatrix& a);

/// True iff `lift` sends every relator of `domain` into the relation lattice
/// of `codomain`. Throws InputError on shape mismatch.
bool is_well_defined(const FgAbGroup& domain, const FgAbGroup& codomain, const IntMatrix& lift);

/// Homomorphism given by an integer lift between ambient free groups.
/// Construction rejects lifts that do not respect relations.
class GroupHom {
 public:
  GroupHom(FgAbGroup domain, FgAbGroup codomain, IntMatrix lift);

  static GroupHom identity(const FgAbGroup& g);
  static GroupHom zero(const FgAbGroup& domain, const FgAbGroup& codomain);

  const FgAbGroup& domain() const noexcept { return domain_; }
  const FgAbGroup& codomain() const noexcept { return codomain_; }
  const IntMatrix& lift() const noexcept { return lift_; }

 private:
  FgAbGroup domain_;
  FgAbGroup codomain_;
  IntMatrix lift_;
};

/// The canonical projection Z^rows -> cokernel_group(a), together with it.
struct Cokernel {
  FgAbGroup group;
  GroupHom projection;
};
Cokernel cokernel(const IntMatrix& a);

bool is_well_defined(const GroupHom& f);

/// g o f. Requires codomain(f) and domain(g) to be the same presentation.
GroupHom compose(const GroupHom& g, const GroupHom& f);

struct Subgroup {
  FgAbGroup group;     // presented on its own generators
  GroupHom inclusion;  // into the ambient group
};

/// ker f, presented on a basis of its preimage lattice in the domain ambient.
Subgroup kernel_subgroup(const GroupHom& f);

/// Lattice in the domain ambient of all x with f(x) = 0; contains the
/// domain relations.
HermiteLattice kernel_lattice(const GroupHom& f);

/// im(f) + codomain relations, as a lattice in the codomain ambient.
HermiteLattice image_subgroup(const GroupHom& f);

/// Quotient of the codomain by the image.
FgAbGroup cokernel_group(const GroupHom& f);

bool equal_as_maps(const GroupHom& f, const GroupHom& g);
bool is_zero_map(const GroupHom& f);

/// Exactness of A --f--> B --g--> C at B.
bool is_exact_at(const GroupHom& f, const GroupHom& g);

bool is_injective(const GroupHom& f);
bool is_surjective(const GroupHom& f);

}  // namespace drk
