#include "drk/models.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "drk/errors.hpp"

namespace drk {
namespace {

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> l(n);
  for (std::size_t i = 0; i < n; ++i) l[i] = "x" + std::to_string(i);
  return l;
}

std::vector<std::string> checked_labels(std::vector<std::string> labels, std::size_t n) {
  if (labels.empty()) return default_labels(n);
  if (labels.size() != n)
    throw ValidationError("labels", "expected " + std::to_string(n) + " labels, got " + std::to_string(labels.size()));
  auto sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  if (auto it = std::adjacent_find(sorted.begin(), sorted.end()); it != sorted.end())
    throw ValidationError("labels", "duplicate label '" + *it + "'");
  return labels;
}

std::string point_name(const std::vector<std::string>& labels, std::size_t x) {
  return x < labels.size() ? labels[x] : std::to_string(x);
}

// Smallest-index SCC decomposition of a digraph on <= 64 nodes given by
// successor bitmasks; returns component id per node.
std::vector<std::size_t> strongly_connected(const std::vector<std::uint64_t>& succ) {
  const std::size_t n = succ.size();
  // Reachability closure; n is tiny.
  std::vector<std::uint64_t> reach(n);
  for (std::size_t x = 0; x < n; ++x) reach[x] = succ[x] | (std::uint64_t{1} << x);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t x = 0; x < n; ++x) {
      std::uint64_t r = reach[x];
      for (std::size_t y = 0; y < n; ++y)
        if (r >> y & 1U) r |= reach[y];
      if (r != reach[x]) {
        reach[x] = r;
        changed = true;
      }
    }
  }
  std::vector<std::size_t> comp(n, n);
  std::size_t next = 0;
  for (std::size_t x = 0; x < n; ++x) {
    if (comp[x] != n) continue;
    for (std::size_t y = x; y < n; ++y)
      if ((reach[x] >> y & 1U) && (reach[y] >> x & 1U)) comp[y] = next;
    ++next;
  }
  return comp;
}

// Every subset closed under `succ`, as point bitmasks in increasing order.
std::vector<std::uint64_t> closed_subsets(const std::vector<std::uint64_t>& succ) {
  const std::size_t n = succ.size();
  const auto comp = strongly_connected(succ);
  const std::size_t c = n == 0 ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  std::vector<std::uint64_t> members(c), comp_succ(c);
  for (std::size_t x = 0; x < n; ++x) {
    members[comp[x]] |= std::uint64_t{1} << x;
    comp_succ[comp[x]] |= succ[x];
  }
  if (c > 30)
    throw EnumerationCapExceeded(std::to_string(c) + " independent components give more than 2^30 invariant subsets");
  std::vector<std::uint64_t> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << c); ++mask) {
    std::uint64_t pts = 0;
    for (std::size_t k = 0; k < c; ++k)
      if (mask >> k & 1U) pts |= members[k];
    bool closed = true;
    for (std::size_t k = 0; k < c && closed; ++k)
      if ((mask >> k & 1U) && (comp_succ[k] & ~pts)) closed = false;
    if (closed) out.push_back(pts);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Subset subset_from_mask(std::uint64_t mask, std::size_t n) {
  std::vector<bool> f(n);
  for (std::size_t x = 0; x < n; ++x) f[x] = (mask >> x & 1U) != 0;
  return Subset(std::move(f));
}

void check_universe(const Subset& w, std::size_t n, const char* op) {
  if (w.universe_size() != n)
    throw InputError(std::string(op) + ": subset is over " + std::to_string(w.universe_size()) +
                     " points, model has " + std::to_string(n));
}

void check_cap(std::size_t n, std::size_t cap) {
  if (n > cap || n > 63)
    throw EnumerationCapExceeded("model has " + std::to_string(n) + " points, above the enumeration cap of " +
                                 std::to_string(std::min<std::size_t>(cap, 63)) +
                                 "; pass an explicit invariant subset instead");
}

}  // namespace

// -- FiniteMapModel ---------------------------------------------------------

FiniteMapModel::FiniteMapModel(std::vector<std::string> labels, std::vector<std::size_t> t1,
                               std::vector<std::size_t> t2)
    : t1_(std::move(t1)), t2_(std::move(t2)) {
  const std::size_t n = t1_.size();
  if (t2_.size() != n)
    throw ValidationError("t2", "has " + std::to_string(t2_.size()) + " entries, t1 has " + std::to_string(n));
  labels_ = checked_labels(std::move(labels), n);
  for (int which = 1; which <= 2; ++which) {
    const auto& t = map(which);
    const std::string name = "t" + std::to_string(which);
    std::vector<bool> hit(n);
    for (std::size_t x = 0; x < n; ++x) {
      if (t[x] >= n)
        throw ValidationError(name + "[" + std::to_string(x) + "]",
                              "image " + std::to_string(t[x]) + " is not a point");
      hit[t[x]] = true;
    }
    for (std::size_t y = 0; y < n; ++y)
      if (!hit[y]) throw ValidationError(name, "not surjective: point '" + labels_[y] + "' has no preimage");
  }
  for (std::size_t x = 0; x < n; ++x)
    if (t1_[t2_[x]] != t2_[t1_[x]])
      throw ValidationError("t1,t2", "maps do not commute at point '" + labels_[x] + "': t1(t2(x)) = '" +
                                         labels_[t1_[t2_[x]]] + "', t2(t1(x)) = '" + labels_[t2_[t1_[x]]] + "'");
}

const std::vector<std::size_t>& FiniteMapModel::map(int which) const {
  if (which == 1) return t1_;
  if (which == 2) return t2_;
  throw InputError("map index must be 1 or 2");
}

std::size_t FiniteMapModel::apply_power(std::size_t x, std::size_t k1, std::size_t k2) const {
  for (std::size_t i = 0; i < k1; ++i) x = t1_[x];
  for (std::size_t i = 0; i < k2; ++i) x = t2_[x];
  return x;
}

// -- TwoGraphModel ----------------------------------------------------------

TwoGraphModel::TwoGraphModel(std::vector<std::string> labels, IntMatrix a1, IntMatrix a2)
    : a1_(std::move(a1)), a2_(std::move(a2)) {
  const std::size_t n = a1_.rows();
  if (!a1_.is_square()) throw ValidationError("a1", "not square");
  if (!a2_.is_square() || a2_.rows() != n) throw ValidationError("a2", "not square of the same size as a1");
  labels_ = checked_labels(std::move(labels), n);
  for (int which = 1; which <= 2; ++which) {
    const IntMatrix& a = which == 1 ? a1_ : a2_;
    const std::string name = "a" + std::to_string(which);
    for (std::size_t i = 0; i < n; ++i) {
      bool nonzero = false;
      for (std::size_t j = 0; j < n; ++j) {
        if (sgn(a(i, j)) < 0)
          throw ValidationError(name + "[" + std::to_string(i) + "][" + std::to_string(j) + "]",
                                "negative entry " + a(i, j).get_str());
        nonzero = nonzero || sgn(a(i, j)) != 0;
      }
      if (!nonzero)
        throw ValidationError(name + "[" + std::to_string(i) + "]",
                              "zero row: vertex '" + labels_[i] + "' is a source");
    }
  }
  const IntMatrix d = a1_ * a2_ - a2_ * a1_;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (sgn(d(i, j)) != 0)
        throw ValidationError("a1,a2", "matrices do not commute: (a1 a2 - a2 a1)[" + std::to_string(i) + "][" +
                                           std::to_string(j) + "] = " + d(i, j).get_str());
}

// -- Rank2MatrixSystem ------------------------------------------------------

std::string to_string(SystemOrigin o) {
  switch (o) {
    case SystemOrigin::FiniteMap: return "finite_map";
    case SystemOrigin::TwoGraph: return "two_graph";
    case SystemOrigin::Raw: return "raw_matrices";
  }
  return "raw_matrices";
}

Rank2MatrixSystem::Rank2MatrixSystem(IntMatrix m1, IntMatrix m2, SystemOrigin origin,
                                     std::vector<std::string> labels)
    : m1_(std::move(m1)), m2_(std::move(m2)), origin_(origin) {
  if (!m1_.is_square()) throw ValidationError("m1", "not square");
  if (!m2_.is_square() || m2_.rows() != m1_.rows()) throw ValidationError("m2", "not square of the same size as m1");
  labels_ = checked_labels(std::move(labels), m1_.rows());
  const IntMatrix d = m1_ * m2_ - m2_ * m1_;
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (sgn(d(i, j)) != 0)
        throw ValidationError("m1,m2", "matrices do not commute: (m1 m2 - m2 m1)[" + std::to_string(i) + "][" +
                                           std::to_string(j) + "] = " + d(i, j).get_str());
}

const IntMatrix& Rank2MatrixSystem::m(int which) const {
  if (which == 1) return m1_;
  if (which == 2) return m2_;
  throw InputError("matrix index must be 1 or 2");
}

IntMatrix Rank2MatrixSystem::block_matrix() const {
  const IntMatrix id = IntMatrix::identity(size());
  return hcat(id - m1_, id - m2_);
}

IntMatrix Rank2MatrixSystem::stacked_matrix() const {
  const IntMatrix id = IntMatrix::identity(size());
  return vcat(id - m1_, id - m2_);
}

// -- Subset -----------------------------------------------------------------

Subset Subset::of(std::size_t n, const std::vector<std::size_t>& members) {
  std::vector<bool> f(n);
  for (auto x : members) {
    if (x >= n) throw InputError("Subset::of: point " + std::to_string(x) + " out of range");
    f[x] = true;
  }
  return Subset(std::move(f));
}

std::vector<std::size_t> Subset::members() const {
  std::vector<std::size_t> m;
  for (std::size_t x = 0; x < flags_.size(); ++x)
    if (flags_[x]) m.push_back(x);
  return m;
}

std::size_t Subset::count() const { return static_cast<std::size_t>(std::count(flags_.begin(), flags_.end(), true)); }

Subset Subset::complement() const {
  std::vector<bool> f(flags_.size());
  for (std::size_t x = 0; x < f.size(); ++x) f[x] = !flags_[x];
  return Subset(std::move(f));
}

std::string InvarianceViolation::describe(const std::vector<std::string>& labels) const {
  const std::string t = "T" + std::to_string(map);
  switch (kind) {
    case Kind::ImageLeaves:
      return t + "('" + point_name(labels, point) + "') = '" + point_name(labels, image) +
             "' leaves the subset";
    case Kind::PreimageEnters:
      return "'" + point_name(labels, point) + "' is outside the subset but " + t + "('" +
             point_name(labels, point) + "') = '" + point_name(labels, image) + "' is inside";
    case Kind::MatrixCoupling:
      return "m" + std::to_string(map) + "['" + point_name(labels, image) + "', '" + point_name(labels, point) +
             "'] != 0 couples the subset to its complement";
  }
  return {};
}

// -- operations -------------------------------------------------------------

IntMatrix induced_matrix(const FiniteMapModel& model, int which) {
  const auto& t = model.map(which);
  IntMatrix m(model.size(), model.size());
  for (std::size_t x = 0; x < t.size(); ++x) m(t[x], x) += 1;
  return m;
}

Rank2MatrixSystem matrix_system(const FiniteMapModel& model) {
  return Rank2MatrixSystem(induced_matrix(model, 1), induced_matrix(model, 2), SystemOrigin::FiniteMap,
                           model.labels());
}

Rank2MatrixSystem matrix_system(const TwoGraphModel& model) {
  return Rank2MatrixSystem(model.a1().transpose(), model.a2().transpose(), SystemOrigin::TwoGraph, model.labels());
}

InvarianceCheck check_invariant(const FiniteMapModel& model, const Subset& w) {
  check_universe(w, model.size(), "check_invariant");
  using Kind = InvarianceViolation::Kind;
  for (int which = 1; which <= 2; ++which) {
    const auto& t = model.map(which);
    for (std::size_t x = 0; x < t.size(); ++x) {
      if (w.contains(x) && !w.contains(t[x])) return {InvarianceViolation{Kind::ImageLeaves, which, x, t[x]}};
      if (!w.contains(x) && w.contains(t[x])) return {InvarianceViolation{Kind::PreimageEnters, which, x, t[x]}};
    }
  }
  return {};
}

InvarianceCheck check_invariant(const Rank2MatrixSystem& system, const Subset& w) {
  check_universe(w, system.size(), "check_invariant");
  for (int which = 1; which <= 2; ++which) {
    const IntMatrix& m = system.m(which);
    for (std::size_t x = 0; x < m.cols(); ++x) {
      if (!w.contains(x)) continue;
      for (std::size_t y = 0; y < m.rows(); ++y)
        if (!w.contains(y) && sgn(m(y, x)) != 0)
          return {InvarianceViolation{InvarianceViolation::Kind::MatrixCoupling, which, x, y}};
    }
  }
  return {};
}

InvarianceCheck check_invariant(const TwoGraphModel& model, const Subset& w) {
  return check_invariant(matrix_system(model), w);
}

std::vector<InvariantSubset> enumerate_invariant_subsets(const FiniteMapModel& model, std::size_t cap) {
  const std::size_t n = model.size();
  check_cap(n, cap);
  // Invariance under images and preimages of bijections: closed subsets of
  // the symmetric graph x ~ T_i(x), i.e. unions of orbits.
  std::vector<std::uint64_t> succ(n);
  for (int which = 1; which <= 2; ++which) {
    const auto& t = model.map(which);
    for (std::size_t x = 0; x < n; ++x) {
      succ[x] |= std::uint64_t{1} << t[x];
      succ[t[x]] |= std::uint64_t{1} << x;
    }
  }
  std::vector<InvariantSubset> out;
  for (auto mask : closed_subsets(succ)) {
    Subset s = subset_from_mask(mask, n);
    if (!check_invariant(model, s)) throw InternalConsistencyError("enumerated subset fails invariance");
    out.push_back({std::move(s), true});
  }
  return out;
}

std::vector<InvariantSubset> enumerate_invariant_subsets(const Rank2MatrixSystem& system, std::size_t cap) {
  const std::size_t n = system.size();
  check_cap(n, cap);
  std::vector<std::uint64_t> succ(n);
  for (int which = 1; which <= 2; ++which) {
    const IntMatrix& m = system.m(which);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (sgn(m(y, x)) != 0) succ[x] |= std::uint64_t{1} << y;
  }
  std::vector<InvariantSubset> out;
  for (auto mask : closed_subsets(succ)) {
    Subset s = subset_from_mask(mask, n);
    if (!check_invariant(system, s)) throw InternalConsistencyError("enumerated subset fails invariance");
    out.push_back({std::move(s), true});
  }
  return out;
}

namespace {
Rank2MatrixSystem principal(const Rank2MatrixSystem& system, const std::vector<std::size_t>& idx) {
  std::vector<std::string> labels;
  for (auto x : idx) labels.push_back(system.labels()[x]);
  return Rank2MatrixSystem(system.m1().select(idx, idx), system.m2().select(idx, idx), system.origin(),
                           std::move(labels));
}

void require_invariant(const Rank2MatrixSystem& system, const Subset& w, const char* op) {
  if (auto c = check_invariant(system, w); !c)
    throw InputError(std::string(op) + ": subset is not invariant: " + c.violation->describe(system.labels()));
}
}  // namespace

Rank2MatrixSystem restrict(const Rank2MatrixSystem& system, const Subset& w) {
  require_invariant(system, w, "restrict");
  return principal(system, w.members());
}

Rank2MatrixSystem corestrict_complement(const Rank2MatrixSystem& system, const Subset& w) {
  require_invariant(system, w, "corestrict_complement");
  return principal(system, w.complement().members());
}

FiniteMapModel restrict(const FiniteMapModel& model, const Subset& w) {
  if (auto c = check_invariant(model, w); !c)
    throw InputError("restrict: subset is not invariant: " + c.violation->describe(model.labels()));
  const auto idx = w.members();
  std::vector<std::size_t> pos(model.size(), model.size());
  for (std::size_t k = 0; k < idx.size(); ++k) pos[idx[k]] = k;
  std::vector<std::string> labels;
  std::vector<std::size_t> t1, t2;
  for (auto x : idx) {
    labels.push_back(model.labels()[x]);
    t1.push_back(pos[model.t1()[x]]);
    t2.push_back(pos[model.t2()[x]]);
  }
  return FiniteMapModel(std::move(labels), std::move(t1), std::move(t2));
}

std::vector<std::vector<std::size_t>> orbits(const FiniteMapModel& model) {
  const std::size_t n = model.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int which = 1; which <= 2; ++which)
    for (std::size_t x = 0; x < n; ++x) {
      auto a = find(x), b = find(model.map(which)[x]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t x = 0; x < n; ++x) {
    auto r = find(x);
    if (slot[r] == n) {
      slot[r] = out.size();
      out.emplace_back();
    }
    out[slot[r]].push_back(x);
  }
  return out;
}

bool is_minimal(const FiniteMapModel& model) { return orbits(model).size() <= 1; }

Integer lcm_of_orbit_lengths(const FiniteMapModel& model) {
  Integer l = 1;
  for (const auto& o : orbits(model)) mpz_lcm_ui(l.get_mpz_t(), l.get_mpz_t(), o.size());
  return l;
}

std::optional<FiniteMapModel> as_finite_map_model(const Rank2MatrixSystem& system) {
  if (system.origin() != SystemOrigin::FiniteMap) return std::nullopt;
  const std::size_t n = system.size();
  std::vector<std::size_t> t[2];
  for (int which = 1; which <= 2; ++which) {
    const IntMatrix& m = system.m(which);
    auto& out = t[which - 1];
    out.assign(n, n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        if (sgn(m(y, x)) == 0) continue;
        if (m(y, x) != 1 || out[x] != n) return std::nullopt;
        out[x] = y;
      }
    if (std::find(out.begin(), out.end(), n) != out.end()) return std::nullopt;
  }
  try {
    return FiniteMapModel(system.labels(), std::move(t[0]), std::move(t[1]));
  } catch (const ValidationError&) {
    return std::nullopt;
  }
}

}  // namespace drk
