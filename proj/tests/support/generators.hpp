#pragma once

// Random model generators shared by the unit and acceptance tests.

#include <cstddef>
#include <random>

#include "drk/models.hpp"

namespace drk::gen {

using Rng = std::mt19937_64;

long uniform(Rng& rng, long lo, long hi);

IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long lo, long hi);

/// A unimodular n x n matrix: a product of random elementary operations.
IntMatrix random_unimodular(Rng& rng, std::size_t n);

/// m1 = p(A), m2 = q(A) for a random A and small polynomials p, q, retried
/// until every entry lies in [-bound, bound].
Rank2MatrixSystem random_commuting_system(Rng& rng, std::size_t n, long bound = 3);

/// Disjoint union of translation actions on Z/a x Z/b, randomly relabelled.
FiniteMapModel random_finite_map_model(Rng& rng, std::size_t max_points);

/// Vertex matrices p(B), q(B) for a nonnegative block-triangular B and
/// polynomials with nonnegative coefficients and constant term >= 1.
TwoGraphModel random_block_two_graph(Rng& rng, std::size_t max_vertices);

}  // namespace drk::gen
