#include <doctest.h>

#include "../support/generators.hpp"
#include "../support/oracles.hpp"
#include "drk/errors.hpp"
#include "drk/models.hpp"

using namespace drk;

namespace {

FiniteMapModel swap_model() { return FiniteMapModel({"x0", "x1"}, {1, 0}, {0, 1}); }
FiniteMapModel identity_model() { return FiniteMapModel({"a", "b"}, {0, 1}, {0, 1}); }
FiniteMapModel cycle3() { return FiniteMapModel({}, {1, 2, 0}, {1, 2, 0}); }

}  // namespace

TEST_SUITE("models") {
  TEST_CASE("validation") {
    CHECK_THROWS_AS(FiniteMapModel({}, {0, 0}, {0, 1}), ValidationError);
    CHECK_THROWS_AS(FiniteMapModel({}, {0, 2}, {0, 1}), ValidationError);
    CHECK_THROWS_AS(FiniteMapModel({}, {1, 2, 0}, {0, 2, 1}), ValidationError);
    CHECK_THROWS_AS(FiniteMapModel({"a", "a"}, {0, 1}, {0, 1}), ValidationError);
    CHECK_THROWS_AS(TwoGraphModel({}, IntMatrix{{1, 0}, {0, 0}}, IntMatrix::identity(2)), ValidationError);
    CHECK_THROWS_AS(TwoGraphModel({}, IntMatrix{{-1}}, IntMatrix{{1}}), ValidationError);
    CHECK_THROWS_AS(TwoGraphModel({}, IntMatrix{{1, 1}, {0, 1}}, IntMatrix{{1, 0}, {1, 1}}), ValidationError);
    CHECK_THROWS_AS(Rank2MatrixSystem(IntMatrix{{0, 1}, {1, 0}}, IntMatrix{{1, 0}, {0, 2}}), ValidationError);
    try {
      FiniteMapModel({}, {1, 0}, {0, 0});
      FAIL("expected a validation error");
    } catch (const ValidationError& e) {
      CHECK(e.field() == "t2");
    }
    CHECK(swap_model().bijective());
  }

  TEST_CASE("induced matrices") {
    CHECK(induced_matrix(swap_model(), 1) == IntMatrix{{0, 1}, {1, 0}});
    CHECK(induced_matrix(FiniteMapModel({}, {0, 1, 2}, {0, 1, 2}), 1) == IntMatrix::identity(3));
    CHECK(induced_matrix(cycle3(), 1) == IntMatrix{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}});
    const auto s = matrix_system(swap_model());
    CHECK(s.m1() == IntMatrix{{0, 1}, {1, 0}});
    CHECK(s.m2() == IntMatrix::identity(2));
    CHECK(s.origin() == SystemOrigin::FiniteMap);
  }

  TEST_CASE("two-graph matrices are transposed") {
    const auto one = matrix_system(TwoGraphModel({}, IntMatrix{{3}}, IntMatrix{{5}}));
    CHECK(one.m1() == IntMatrix{{3}});
    CHECK(one.m2() == IntMatrix{{5}});
    const IntMatrix a{{1, 1}, {1, 1}};
    CHECK(matrix_system(TwoGraphModel({}, a, a)).m1() == a);
    const IntMatrix u{{1, 1}, {0, 1}};
    CHECK(matrix_system(TwoGraphModel({}, u, u)).m1() == u.transpose());
  }

  TEST_CASE("invariance") {
    const auto v = check_invariant(swap_model(), Subset::of(2, {0}));
    REQUIRE_FALSE(v);
    CHECK(v.violation->point == 0);
    CHECK(v.violation->image == 1);
    CHECK(check_invariant(swap_model(), Subset::empty(2)));
    CHECK(check_invariant(swap_model(), Subset::all(2)));
    CHECK(check_invariant(identity_model(), Subset::of(2, {0})));
    CHECK_FALSE(check_invariant(matrix_system(swap_model()), Subset::of(2, {0})));
  }

  TEST_CASE("enumeration") {
    CHECK(enumerate_invariant_subsets(cycle3()).size() == 2);
    CHECK(enumerate_invariant_subsets(identity_model()).size() == 4);
    const FiniteMapModel two_swaps({}, {1, 0, 3, 2}, {0, 1, 2, 3});
    CHECK(enumerate_invariant_subsets(two_swaps).size() == 4);
    CHECK_THROWS_AS(enumerate_invariant_subsets(two_swaps, 3), EnumerationCapExceeded);
  }

  TEST_CASE("restriction") {
    const auto s = matrix_system(identity_model());
    const auto r = restrict(s, Subset::of(2, {0}));
    CHECK(r.m1() == IntMatrix{{1}});
    CHECK(r.m2() == IntMatrix{{1}});
    const auto tg = matrix_system(TwoGraphModel({}, IntMatrix{{2, 0}, {0, 3}}, IntMatrix{{2, 0}, {0, 3}}));
    CHECK(restrict(tg, Subset::of(2, {0})).m1() == IntMatrix{{2}});
    CHECK(corestrict_complement(tg, Subset::of(2, {0})).m1() == IntMatrix{{3}});
    CHECK(restrict(s, Subset::all(2)).m1() == s.m1());
    CHECK_THROWS_AS(restrict(matrix_system(swap_model()), Subset::of(2, {0})), InputError);
  }

  TEST_CASE("properties on random finite map models") {
    gen::Rng rng(31);
    for (int trial = 0; trial < 60; ++trial) {
      const FiniteMapModel m = gen::random_finite_map_model(rng, 7);
      const auto s = matrix_system(m);
      CHECK(s.m1() * s.m2() == s.m2() * s.m1());
      // transpose of a permutation matrix is the matrix of the inverse map
      std::vector<std::size_t> inv(m.size());
      for (std::size_t x = 0; x < m.size(); ++x) inv[m.t1()[x]] = x;
      std::vector<std::size_t> inv2(m.size());
      for (std::size_t x = 0; x < m.size(); ++x) inv2[m.t2()[x]] = x;
      CHECK(induced_matrix(FiniteMapModel(m.labels(), inv, inv2), 1) == s.m1().transpose());

      const auto subsets = enumerate_invariant_subsets(m);
      CHECK(subsets.size() == (std::size_t{1} << oracle::orbit_count(m)));
      CHECK(orbits(m).size() == oracle::orbit_count(m));
      for (const auto& w : subsets) {
        CHECK(check_invariant(m, w.subset.complement()));
        CHECK(check_invariant(s, w.subset));
        if (w.subset.is_empty()) continue;
        CHECK(restrict(s, w.subset).m1() == matrix_system(restrict(m, w.subset)).m1());
        CHECK(restrict(s, w.subset).m2() == matrix_system(restrict(m, w.subset)).m2());
      }
      const auto back = as_finite_map_model(s);
      REQUIRE(back);
      CHECK(back->t1() == m.t1());
    }
  }
}
