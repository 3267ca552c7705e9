#include "drk/ktheory.hpp"

#include <algorithm>

#include "drk/errors.hpp"

namespace drk {
namespace {

bool all_passed(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

void require_all(const std::vector<Check>& checks, const std::string& where) {
  for (const auto& c : checks)
    if (!c.passed) throw InternalConsistencyError(where + ": check failed: " + c.name);
}

// Coordinate inclusion Z^W -> Z^n.
IntMatrix inclusion_matrix(const Subset& w) {
  const auto idx = w.members();
  IntMatrix e(w.universe_size(), idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) e(idx[k], k) = 1;
  return e;
}

}  // namespace

bool K0Data::verified() const { return all_passed(checks); }
bool BlockReductionResult::holds() const { return all_passed(checks); }
bool SesMorphism::verified() const { return all_passed(checks); }

K0Data k0_of_system(const Rank2MatrixSystem& system) {
  const std::size_t n = system.size();
  const IntMatrix id = IntMatrix::identity(n);
  const IntMatrix d1 = id - system.m1();
  const IntMatrix d2 = id - system.m2();

  FgAbGroup coker_part(system.block_matrix());
  IntMatrix ker_basis = kernel_basis(system.stacked_matrix());
  const std::size_t k = ker_basis.cols();
  FgAbGroup ker_part = FgAbGroup::free(k);
  FgAbGroup k0(vcat(coker_part.relations(), IntMatrix(k, coker_part.relations().cols())));

  IntMatrix j_lift = vcat(id, IntMatrix(k, n));
  IntMatrix tau_lift = hcat(IntMatrix(k, n), IntMatrix::identity(k));

  std::vector<Check> checks;
  checks.push_back({"1-m1 and 1-m2 commute", d1 * d2 == d2 * d1});
  checks.push_back({"j well defined", is_well_defined(coker_part, k0, j_lift)});
  checks.push_back({"tau well defined", is_well_defined(k0, ker_part, tau_lift)});
  require_all(checks, "k0_of_system");

  GroupHom j(coker_part, k0, std::move(j_lift));
  GroupHom tau(k0, ker_part, std::move(tau_lift));
  checks.push_back({"j injective", is_injective(j)});
  checks.push_back({"tau surjective", is_surjective(tau)});
  checks.push_back({"tau o j = 0", is_zero_map(compose(tau, j))});
  checks.push_back({"exact at K0", is_exact_at(j, tau)});
  checks.push_back({"kernel basis spans ker(1-m1 ; 1-m2)", (system.stacked_matrix() * ker_basis).is_zero()});
  {
    const bool split_type = k0.free_rank() == coker_part.free_rank() + k && k0.torsion() == coker_part.torsion();
    checks.push_back({"K0 type = coker type + ker rank (split)", split_type});
  }
  require_all(checks, "k0_of_system");

  return K0Data{system,        std::move(coker_part), std::move(ker_basis), std::move(ker_part),
                std::move(k0), std::move(j),          std::move(tau),       std::move(checks)};
}

BlockReductionResult blockmatrix_reduction(const Rank2MatrixSystem& system) {
  const std::size_t n = system.size();
  const IntMatrix id = IntMatrix::identity(n);
  const IntMatrix d1 = id - system.m1();
  const IntMatrix d2 = id - system.m2();
  std::vector<Check> checks;

  // (i) 1-m2 descends to coker(1-m1); take the cokernel of the induced map.
  const FgAbGroup coker1(d1);
  const bool descends = is_well_defined(coker1, coker1, d2);
  checks.push_back({"1-m2 descends to coker(1-m1)", descends});
  FgAbGroup iterated = FgAbGroup::free(0);
  FgAbGroup block(system.block_matrix());
  if (descends) {
    const GroupHom induced(coker1, coker1, d2);
    iterated = cokernel_group(induced);
    checks.push_back({"iterated cokernel invariants = block cokernel invariants", iterated.isomorphic_to(block)});
    // p + im(1-m1) + im(induced) |-> p + im(1-m1 | 1-m2)
    const bool map_ok = is_well_defined(iterated, block, id);
    checks.push_back({"comparison map well defined", map_ok});
    if (map_ok) {
      const GroupHom cmp(iterated, block, id);
      checks.push_back({"comparison map injective", is_injective(cmp)});
      checks.push_back({"comparison map surjective", is_surjective(cmp)});
    }
  }

  // (ii) 1-m2 restricted to ker(1-m1), in coordinates of a kernel basis.
  const IntMatrix k1 = kernel_basis(d1);
  HermiteLattice iterated_kernel(n);
  const auto restricted = solve_integer_system(k1, d2 * k1);
  checks.push_back({"1-m2 preserves ker(1-m1)", restricted.has_value()});
  if (restricted) iterated_kernel = lattice_of_columns(k1 * kernel_basis(*restricted));
  const HermiteLattice stacked = lattice_of_columns(kernel_basis(system.stacked_matrix()));
  checks.push_back({"iterated kernel = stacked kernel", iterated_kernel == stacked});

  return {std::move(iterated), std::move(block), std::move(iterated_kernel), stacked, std::move(checks)};
}

bool blockmatrix_reduction_check(const Rank2MatrixSystem& system) { return blockmatrix_reduction(system).holds(); }

SesMorphism ideal_morphism(const Rank2MatrixSystem& system, const Subset& w) {
  if (auto c = check_invariant(system, w); !c)
    throw InputError("ideal_morphism: subset is not invariant: " + c.violation->describe(system.labels()));

  K0Data top = k0_of_system(restrict(system, w));
  K0Data bottom = k0_of_system(system);
  const IntMatrix incl = inclusion_matrix(w);
  std::vector<Check> checks;

  // v_left: p + im_W |-> incl(p) + im
  checks.push_back({"v_left well defined", is_well_defined(top.coker_part, bottom.coker_part, incl)});
  // v_right: coordinates of incl(ker_W basis) against the ker basis
  const auto right_lift = solve_integer_system(bottom.ker_basis, incl * top.ker_basis);
  checks.push_back({"inclusion maps ker_W into ker", right_lift.has_value()});
  require_all(checks, "ideal_morphism");

  GroupHom v_left(top.coker_part, bottom.coker_part, incl);
  GroupHom v_right(top.ker_part, bottom.ker_part, *right_lift);
  const IntMatrix mid_lift = block_diagonal(incl, *right_lift);
  checks.push_back({"v_mid well defined", is_well_defined(top.k0, bottom.k0, mid_lift)});
  require_all(checks, "ideal_morphism");
  GroupHom v_mid(top.k0, bottom.k0, mid_lift);

  checks.push_back({"left square commutes", equal_as_maps(compose(v_mid, top.j), compose(bottom.j, v_left))});
  checks.push_back({"right square commutes", equal_as_maps(compose(bottom.tau, v_mid), compose(v_right, top.tau))});
  checks.push_back({"top row exact", top.verified() && is_exact_at(top.j, top.tau)});
  checks.push_back({"bottom row exact", bottom.verified() && is_exact_at(bottom.j, bottom.tau)});
  checks.push_back({"v_right injective", is_injective(v_right)});
  require_all(checks, "ideal_morphism");

  const bool left_inj = is_injective(v_left);
  return SesMorphism{w,
                     std::move(top),
                     std::move(bottom),
                     std::move(v_left),
                     std::move(v_mid),
                     std::move(v_right),
                     std::move(checks),
                     left_inj};
}

K0Report report_k0(const K0Data& data) {
  K0Report r;
  r.k0_type = data.k0.describe();
  r.coker_type = data.coker_part.describe();
  r.ker_type = data.ker_part.describe();
  r.free_rank = data.k0.free_rank();
  r.torsion = data.k0.torsion();

  // coker = Z^n / im(A); with U A V = D, y = U x identifies it with
  // (+)_i Z/d_i (d_i = 0 past the rank). Summand i is generated by column i
  // of U^-1; the class of 1_x has coordinates U[:, x].
  const SmithForm& s = data.coker_part.smith();
  const std::size_t n = data.coker_part.ambient_rank();
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n; ++i) {
    const Integer d = i < s.rank ? s.invariant_factors[i] : Integer(0);
    if (d == 1) continue;
    kept.push_back(i);
    r.coker_generators.push_back({s.left_inverse.column(i), d});
  }
  for (std::size_t x = 0; x < n; ++x) {
    IntVector cls;
    for (std::size_t k = 0; k < kept.size(); ++k) {
      Integer c = s.left(kept[k], x);
      const Integer& d = r.coker_generators[k].order;
      if (sgn(d) != 0) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
      cls.push_back(c);
    }
    r.indicator_classes.push_back(std::move(cls));
  }
  for (std::size_t j = 0; j < data.ker_basis.cols(); ++j) r.ker_basis.push_back(data.ker_basis.column(j));
  r.checks = data.checks;
  return r;
}

}  // namespace drk
