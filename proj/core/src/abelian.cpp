#include "drk/abelian.hpp"

#include "drk/errors.hpp"

namespace drk {

FgAbGroup::FgAbGroup(IntMatrix relations)
    : relations_(std::move(relations)),
      lattice_(lattice_of_columns(relations_)),
      smith_(smith_normal_form(relations_)) {
  free_rank_ = ambient_rank() - smith_.rank;
  for (const auto& d : smith_.invariant_factors)
    if (d != 1) torsion_.push_back(d);
}

FgAbGroup FgAbGroup::free(std::size_t rank) { return FgAbGroup(IntMatrix(rank, 0)); }

std::optional<Integer> FgAbGroup::order() const {
  if (free_rank_ != 0) return std::nullopt;
  Integer n = 1;
  for (const auto& d : torsion_) n *= d;
  return n;
}

bool FgAbGroup::isomorphic_to(const FgAbGroup& other) const {
  return free_rank_ == other.free_rank_ && torsion_ == other.torsion_;
}

bool FgAbGroup::same_presentation(const FgAbGroup& other) const {
  return ambient_rank() == other.ambient_rank() && lattice_ == other.lattice_;
}

std::string FgAbGroup::describe(bool unicode) const {
  if (is_trivial()) return "0";
  const std::string z = unicode ? "ℤ" : "Z";
  std::string s;
  auto append = [&](const std::string& part) {
    if (!s.empty()) s += unicode ? " ⊕ " : " + ";
    s += part;
  };
  if (free_rank_ == 1) append(z);
  if (free_rank_ > 1) append(z + "^" + std::to_string(free_rank_));
  for (const auto& d : torsion_) append(z + "/" + d.get_str());
  return s;
}

FgAbGroup cokernel_group(const IntMatrix& a) { return FgAbGroup(a); }

bool is_well_defined(const FgAbGroup& domain, const FgAbGroup& codomain, const IntMatrix& lift) {
  if (lift.rows() != codomain.ambient_rank() || lift.cols() != domain.ambient_rank())
    throw InputError("homomorphism lift is " + std::to_string(lift.rows()) + "x" + std::to_string(lift.cols()) +
                     ", expected " + std::to_string(codomain.ambient_rank()) + "x" +
                     std::to_string(domain.ambient_rank()));
  return lattice_contains_columns(codomain.relation_lattice(), lift * domain.relations());
}

GroupHom::GroupHom(FgAbGroup domain, FgAbGroup codomain, IntMatrix lift)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), lift_(std::move(lift)) {
  if (!is_well_defined(domain_, codomain_, lift_))
    throw InputError("homomorphism lift does not respect the domain relations");
}

GroupHom GroupHom::identity(const FgAbGroup& g) { return GroupHom(g, g, IntMatrix::identity(g.ambient_rank())); }

GroupHom GroupHom::zero(const FgAbGroup& domain, const FgAbGroup& codomain) {
  return GroupHom(domain, codomain, IntMatrix(codomain.ambient_rank(), domain.ambient_rank()));
}

Cokernel cokernel(const IntMatrix& a) {
  FgAbGroup g(a);
  GroupHom p(FgAbGroup::free(a.rows()), g, IntMatrix::identity(a.rows()));
  return {std::move(g), std::move(p)};
}

bool is_well_defined(const GroupHom& f) { return is_well_defined(f.domain(), f.codomain(), f.lift()); }

namespace {
void require_composable(const FgAbGroup& mid_out, const FgAbGroup& mid_in, const char* op) {
  if (!mid_out.same_presentation(mid_in))
    throw InputError(std::string(op) + ": intermediate groups are different presentations");
}
void require_parallel(const GroupHom& f, const GroupHom& g, const char* op) {
  if (!f.domain().same_presentation(g.domain()) || !f.codomain().same_presentation(g.codomain()))
    throw InputError(std::string(op) + ": maps have different domain or codomain presentations");
}
}  // namespace

GroupHom compose(const GroupHom& g, const GroupHom& f) {
  require_composable(f.codomain(), g.domain(), "compose");
  return GroupHom(f.domain(), g.codomain(), g.lift() * f.lift());
}

HermiteLattice kernel_lattice(const GroupHom& f) {
  // x in ker iff lift x = R y for some y: project ker [lift | R] onto x.
  const std::size_t a = f.domain().ambient_rank();
  const IntMatrix combined = hcat(f.lift(), f.codomain().relations());
  const IntMatrix k = kernel_basis(combined);
  return lattice_of_columns(k.leading_rows(a));
}

Subgroup kernel_subgroup(const GroupHom& f) {
  const HermiteLattice pre = kernel_lattice(f);
  const IntMatrix& basis = pre.basis();
  // Domain relations lie in the preimage lattice; rewrite them on its basis.
  auto rel = solve_integer_system(basis, f.domain().relations());
  if (!rel) throw InternalConsistencyError("kernel_subgroup: domain relations escape the kernel lattice");
  FgAbGroup k(std::move(*rel));
  GroupHom inc(k, f.domain(), basis);
  return {std::move(k), std::move(inc)};
}

HermiteLattice image_subgroup(const GroupHom& f) {
  return lattice_of_columns(hcat(f.lift(), f.codomain().relations()));
}

FgAbGroup cokernel_group(const GroupHom& f) { return FgAbGroup(image_subgroup(f).basis()); }

bool equal_as_maps(const GroupHom& f, const GroupHom& g) {
  require_parallel(f, g, "equal_as_maps");
  return lattice_contains_columns(f.codomain().relation_lattice(), f.lift() - g.lift());
}

bool is_zero_map(const GroupHom& f) {
  return lattice_contains_columns(f.codomain().relation_lattice(), f.lift());
}

bool is_exact_at(const GroupHom& f, const GroupHom& g) {
  require_composable(f.codomain(), g.domain(), "is_exact_at");
  return image_subgroup(f) == kernel_lattice(g);
}

bool is_injective(const GroupHom& f) { return kernel_lattice(f) == f.domain().relation_lattice(); }

bool is_surjective(const GroupHom& f) { return image_subgroup(f).is_full(); }

}  // namespace drk
