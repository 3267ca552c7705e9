#pragma once

#include <optional>
#include <string>
#include <vector>

#include "drk/hermite.hpp"
#include "drk/models.hpp"
#include "drk/rational_lp.hpp"

namespace drk {

// -- condition (M) ----------------------------------------------------------

/// (1-m1) f + (1-m2) g = v with v >= 0, v != 0.
struct MatrixConditionWitness {
  IntVector v;
  IntVector f;
  IntVector g;
};

enum class ConditionMethod { SpanLp, BruteForce };
std::string to_string(ConditionMethod m);

/// Condition (M): the image of (1-m1 | 1-m2) meets N^n only in 0.
///
/// For the span-LP route `holds` is exact. For brute force, `holds` only
/// says no witness exists within `coefficient_bound`.
struct MatrixConditionResult {
  bool holds = true;
  std::optional<MatrixConditionWitness> witness;  // present iff !holds
  ConditionMethod method = ConditionMethod::SpanLp;
  std::optional<long> coefficient_bound;          // brute force only
  std::optional<ConeWitness> rational_witness;    // span-LP only
};

/// Re-verifies a witness by direct matrix arithmetic.
bool verify_witness(const Rank2MatrixSystem& system, const MatrixConditionWitness& w);

/// Decides (M) exactly: a subgroup of Z^n contains a nonzero nonnegative
/// vector iff its rational span does (scale by a common denominator), so
/// the question reduces to one exact LP. An integer witness is recovered by
/// clearing denominators and solving for (f, g) over Z.
MatrixConditionResult condition_m(const Rank2MatrixSystem& system);

struct BruteForceOptions {
  long coefficient_bound = 3;
  unsigned threads = 1;
  std::size_t state_cap = 8'000'000;  // distinct partial sums per layer
};

/// Exhaustive search over integer (f, g) with entries in [-bound, bound].
///
/// Enumerates the set of partial sums column by column, deduplicated and
/// pruned when no completion can land in the box [0, cap]^n, for cap = 1, 2,
/// 4, ... up to the largest reachable entry. The witness is the
/// lexicographically smallest nonzero v in the first box that contains one,
/// with the smallest coefficients found by walking back through the layers,
/// so the output does not depend on `threads`. Throws EnumerationCapExceeded when a layer exceeds
/// `state_cap` or the coordinates do not fit the packed encoding.
MatrixConditionResult condition_m_bruteforce(const Rank2MatrixSystem& system, const BruteForceOptions& options = {});

// -- coboundary subgroup ----------------------------------------------------

/// The singleton bisection Z({x}, k, 0, {T^k x}) and its vector
/// 1_{s(E)} - 1_{r(E)} = 1_{T^k x} - 1_x.
struct BisectionGenerator {
  std::size_t point = 0;
  std::size_t k1 = 0, k2 = 0;
  std::size_t image = 0;
  IntVector vector;
  std::string descriptor(const std::vector<std::string>& labels) const;
};

struct CoboundaryLattice {
  HermiteLattice lattice;
  std::vector<BisectionGenerator> generator_log;  // first k reaching each distinct (x, T^k x), x != T^k x
  std::size_t exponent_bound = 0;
  Integer stabilization_bound;  // lcm of orbit lengths
  bool possibly_incomplete = false;
};

inline constexpr std::size_t kDefaultMaxExponentBound = 64;

/// H_G for the groupoid of a finite bijective model, from the generators
/// 1_{T^k x} - 1_x with 0 <= k1, k2 <= k_bound.
///
/// Every compact open bisection of the discrete groupoid is a finite
/// disjoint union of singleton arrows (x, k, T^k x), and 1_{s(E)} - 1_{r(E)}
/// is additive over the union, so singletons generate H_G. Arrows with
/// negative degree give the negatives of these generators, and T^k only
/// depends on k modulo the orbit lengths, so k_bound = lcm of orbit lengths
/// already yields the whole subgroup.
///
/// Default k_bound is that lcm, capped at `max_bound`; a bound below the lcm
/// sets `possibly_incomplete`.
CoboundaryLattice coboundary_lattice(const FiniteMapModel& model, std::optional<std::size_t> k_bound = std::nullopt,
                                     std::size_t max_bound = kDefaultMaxExponentBound);

struct CoboundaryComparison {
  CoboundaryLattice coboundary;
  HermiteLattice matrix_image;  // lattice of (1-m1 | 1-m2)
  bool equal = false;
};

CoboundaryComparison compare_coboundary_with_matrix_image(const FiniteMapModel& model,
                                                          std::optional<std::size_t> k_bound = std::nullopt);

/// H_G equals the image lattice of (1-m1 | 1-m2); hence (C) iff (M).
bool check_prop_C_equals_M(const FiniteMapModel& model, std::optional<std::size_t> k_bound = std::nullopt);

// -- stable finiteness verdicts ---------------------------------------------

enum class Conclusion { StablyFinite, Inconclusive, NotApplicable };
enum class Status { Proven, Failed, Assumed, Obligation };
enum class Assumption { Auto, Assume, Deny };

std::string to_string(Conclusion c);
std::string to_string(Status s);
std::string to_string(Assumption a);

/// How to treat the hypotheses that cannot (or may not) be decided here.
struct AssumptionMap {
  Assumption positivity = Assumption::Auto;   // condition (P) for the ideal
  Assumption ideal_sf = Assumption::Auto;     // C*(G|_H) stably finite
  Assumption quotient_sf = Assumption::Auto;  // C*(G|_{complement}) stably finite
};

struct CheckedCondition {
  std::string condition;
  Status status = Status::Obligation;
  std::string detail;
};

struct Verdict {
  Conclusion conclusion = Conclusion::Inconclusive;
  std::string route;  // "minimal", "extension" or "none"
  std::vector<CheckedCondition> checked;
  std::vector<std::string> narrative;
  // (M) for the system and for the invariant restriction, when evaluated;
  // kept for the restriction-consistency property.
  bool m_global = false;
  std::optional<bool> m_ideal;
};

/// Stable-finiteness verdict for C*(G_T) relative to an invariant subset W.
///
/// W nontrivial: extension route. Requires (M) for the system, (P) for W,
/// and stable finiteness of the ideal and quotient pieces. Pieces of finite
/// map origin that are minimal are decided from (M) on the piece (where (M)
/// is equivalent to the coboundary condition, which characterises stable
/// finiteness for minimal groupoids); anything else is an Obligation unless
/// assumed. (P) is never decided: it needs the positive cone of K_0 of the
/// ideal, which integer data does not determine.
///
/// W empty or everything: minimal route, decided only for finite map models.
///
/// Throws InputError if W is not invariant.
Verdict sf_verdict(const Rank2MatrixSystem& system, const Subset& w, const AssumptionMap& assumptions = {});

}  // namespace drk
