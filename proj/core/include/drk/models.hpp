#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "drk/int_matrix.hpp"

namespace drk {

/// A finite space with two commuting surjective self-maps.
///
/// On a finite set surjective means bijective, so every valid model is a
/// pair of commuting permutations (a Z^2-action); `bijective()` is always
/// true and is kept as an explicit flag for reporting.
class FiniteMapModel {
 public:
  // Throws ValidationError naming the offending point when t1, t2 are not
  // total, not surjective or do not commute.
  FiniteMapModel(std::vector<std::string> labels, std::vector<std::size_t> t1, std::vector<std::size_t> t2);

  std::size_t size() const noexcept { return t1_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<std::size_t>& map(int which) const;
  const std::vector<std::size_t>& t1() const noexcept { return t1_; }
  const std::vector<std::size_t>& t2() const noexcept { return t2_; }
  constexpr bool bijective() const noexcept { return true; }

  // T^k x = T1^k1 T2^k2 x for k1, k2 >= 0.
  std::size_t apply_power(std::size_t x, std::size_t k1, std::size_t k2) const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::size_t> t1_, t2_;
};

/// Vertex data of a row-finite 2-graph with no sources: two commuting
/// nonnegative vertex matrices with no zero rows.
class TwoGraphModel {
 public:
  TwoGraphModel(std::vector<std::string> labels, IntMatrix a1, IntMatrix a2);

  std::size_t size() const noexcept { return a1_.rows(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const IntMatrix& a1() const noexcept { return a1_; }
  const IntMatrix& a2() const noexcept { return a2_; }

 private:
  std::vector<std::string> labels_;
  IntMatrix a1_, a2_;
};

enum class SystemOrigin { FiniteMap, TwoGraph, Raw };

std::string to_string(SystemOrigin o);

/// Commuting pair (m1, m2) acting on the function lattice Z^n; column x of
/// m_i is the image of the indicator of point x.
class Rank2MatrixSystem {
 public:
  // Throws ValidationError if the matrices are not square, not the same size
  // or do not commute.
  Rank2MatrixSystem(IntMatrix m1, IntMatrix m2, SystemOrigin origin = SystemOrigin::Raw,
                    std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return m1_.rows(); }
  const IntMatrix& m1() const noexcept { return m1_; }
  const IntMatrix& m2() const noexcept { return m2_; }
  const IntMatrix& m(int which) const;
  SystemOrigin origin() const noexcept { return origin_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  // (1 - m1 | 1 - m2), n x 2n
  IntMatrix block_matrix() const;
  // (1 - m1 ; 1 - m2), 2n x n
  IntMatrix stacked_matrix() const;

 private:
  IntMatrix m1_, m2_;
  SystemOrigin origin_;
  std::vector<std::string> labels_;
};

/// Subset of the points or vertices of a model, by membership flag.
class Subset {
 public:
  Subset() = default;
  explicit Subset(std::vector<bool> flags) : flags_(std::move(flags)) {}
  static Subset empty(std::size_t n) { return Subset(std::vector<bool>(n, false)); }
  static Subset all(std::size_t n) { return Subset(std::vector<bool>(n, true)); }
  static Subset of(std::size_t n, const std::vector<std::size_t>& members);

  std::size_t universe_size() const noexcept { return flags_.size(); }
  bool contains(std::size_t x) const { return flags_.at(x); }
  const std::vector<bool>& flags() const noexcept { return flags_; }
  std::vector<std::size_t> members() const;
  std::size_t count() const;
  bool is_empty() const { return count() == 0; }
  bool is_full() const { return count() == flags_.size(); }
  bool is_trivial() const { return is_empty() || is_full(); }
  Subset complement() const;

  friend bool operator==(const Subset&, const Subset&) = default;

 private:
  std::vector<bool> flags_;
};

/// What broke invariance.
struct InvarianceViolation {
  enum class Kind {
    ImageLeaves,     // x in W, T_i(x) not in W
    PreimageEnters,  // x not in W, T_i(x) in W
    MatrixCoupling,  // m_i[y, x] != 0 with x in W, y not in W
  };
  Kind kind;
  int map;            // 1 or 2
  std::size_t point;  // x
  std::size_t image;  // T_i(x), or the row y for MatrixCoupling

  std::string describe(const std::vector<std::string>& labels) const;
};

struct InvarianceCheck {
  std::optional<InvarianceViolation> violation;
  bool invariant() const noexcept { return !violation.has_value(); }
  explicit operator bool() const noexcept { return invariant(); }
};

/// A subset that passed the applicable invariance check.
struct InvariantSubset {
  Subset subset;
  bool verified = false;
};

IntMatrix induced_matrix(const FiniteMapModel& model, int which);

Rank2MatrixSystem matrix_system(const FiniteMapModel& model);
/// m_i = a_i^T (K_0 maps of a 2-graph are the transposed vertex matrices).
Rank2MatrixSystem matrix_system(const TwoGraphModel& model);

/// Closed under images and preimages of both maps.
InvarianceCheck check_invariant(const FiniteMapModel& model, const Subset& w);
/// Both m_i map the coordinate sublattice Z^W into itself.
InvarianceCheck check_invariant(const Rank2MatrixSystem& system, const Subset& w);
InvarianceCheck check_invariant(const TwoGraphModel& model, const Subset& w);

inline constexpr std::size_t kDefaultEnumerationCap = 20;

/// All invariant subsets, ordered by their membership bitmask (bit x is
/// point x). Throws EnumerationCapExceeded when size() > cap.
std::vector<InvariantSubset> enumerate_invariant_subsets(const FiniteMapModel& model,
                                                         std::size_t cap = kDefaultEnumerationCap);
std::vector<InvariantSubset> enumerate_invariant_subsets(const Rank2MatrixSystem& system,
                                                         std::size_t cap = kDefaultEnumerationCap);

/// Principal submatrices on W and on its complement. Both throw InputError
/// carrying the violation when W is not invariant.
Rank2MatrixSystem restrict(const Rank2MatrixSystem& system, const Subset& w);
Rank2MatrixSystem corestrict_complement(const Rank2MatrixSystem& system, const Subset& w);

/// The restricted dynamics T_i|_W of an invariant W.
FiniteMapModel restrict(const FiniteMapModel& model, const Subset& w);

/// Orbits of the Z^2-action, each sorted, ordered by smallest member.
std::vector<std::vector<std::size_t>> orbits(const FiniteMapModel& model);
bool is_minimal(const FiniteMapModel& model);
Integer lcm_of_orbit_lengths(const FiniteMapModel& model);

/// Reads the permutations back out of a system of FiniteMap origin.
std::optional<FiniteMapModel> as_finite_map_model(const Rank2MatrixSystem& system);

}  // namespace drk
