#include "drk/finiteness.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <thread>

#include "drk/errors.hpp"
#include "drk/smith.hpp"

namespace drk {

std::string to_string(ConditionMethod m) { return m == ConditionMethod::SpanLp ? "span-lp" : "brute-force"; }

bool verify_witness(const Rank2MatrixSystem& system, const MatrixConditionWitness& w) {
  const std::size_t n = system.size();
  if (w.v.size() != n || w.f.size() != n || w.g.size() != n) return false;
  if (!is_nonnegative(w.v) || is_zero(w.v)) return false;
  const IntMatrix id = IntMatrix::identity(n);
  const IntVector a = (id - system.m1()).apply(w.f);
  const IntVector b = (id - system.m2()).apply(w.g);
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] + b[i] != w.v[i]) return false;
  return true;
}

MatrixConditionResult condition_m(const Rank2MatrixSystem& system) {
  const std::size_t n = system.size();
  const IntMatrix block = system.block_matrix();
  const HermiteLattice image = lattice_of_columns(block);

  MatrixConditionResult r;
  r.method = ConditionMethod::SpanLp;
  auto cone = subspace_meets_positive_cone(image);
  if (!cone) return r;

  // Clear denominators of the coefficients to land in the lattice itself.
  Integer den = 1;
  for (const auto& c : cone->coefficients) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  IntVector coeff;
  for (const auto& c : cone->coefficients) coeff.push_back(Integer(c * den));
  IntVector v = image.basis().apply(coeff);
  auto x = solve_integer_system(block, v);
  if (!x) throw InternalConsistencyError("condition_m: lattice vector has no preimage under the block matrix");

  MatrixConditionWitness w;
  w.v = std::move(v);
  w.f.assign(x->begin(), x->begin() + static_cast<std::ptrdiff_t>(n));
  w.g.assign(x->begin() + static_cast<std::ptrdiff_t>(n), x->end());
  if (!verify_witness(system, w)) throw InternalConsistencyError("condition_m: recovered witness does not verify");
  r.holds = false;
  r.witness = std::move(w);
  r.rational_witness = std::move(cone);
  return r;
}

// -- brute force ------------------------------------------------------------

namespace {

__extension__ typedef unsigned __int128 Key;

// Order-preserving packing of small integer vectors: coordinate 0 is most
// significant, so Key order is lexicographic order.
struct Packer {
  std::size_t n = 0;
  unsigned width = 0;
  std::int64_t offset = 0;

  Key encode(const std::int64_t* v) const {
    Key k = 0;
    for (std::size_t i = 0; i < n; ++i) k = (k << width) | static_cast<Key>(v[i] + offset);
    return k;
  }
  void decode(Key k, std::int64_t* v) const {
    const Key mask = (Key{1} << width) - 1;
    for (std::size_t i = n; i-- > 0;) {
      v[i] = static_cast<std::int64_t>(k & mask) - offset;
      k >>= width;
    }
  }
};

struct Column {
  std::size_t index;  // position in (f, g)
  std::vector<std::int64_t> entries;
};

void sort_unique(std::vector<Key>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Keeps t only if some completion lands in [0, cap]^n.
std::vector<Key> expand_layer(const std::vector<Key>& layer, const Column& col, const std::vector<std::int64_t>& rem,
                              const Packer& pk, long bound, std::int64_t cap, unsigned threads) {
  const std::size_t n = pk.n;
  auto work = [&](std::size_t lo, std::size_t hi, std::vector<Key>& out) {
    std::vector<std::int64_t> s(n), t(n);
    for (std::size_t idx = lo; idx < hi; ++idx) {
      pk.decode(layer[idx], s.data());
      for (long c = -bound; c <= bound; ++c) {
        bool keep = true;
        for (std::size_t i = 0; i < n && keep; ++i) {
          t[i] = s[i] + c * col.entries[i];
          keep = t[i] + rem[i] >= 0 && t[i] - rem[i] <= cap;
        }
        if (keep) out.push_back(pk.encode(t.data()));
      }
    }
    sort_unique(out);
  };

  const unsigned parts = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(layer.size() / 1024 + 1)));
  std::vector<std::vector<Key>> chunks(parts);
  if (parts == 1) {
    work(0, layer.size(), chunks[0]);
  } else {
    std::vector<std::thread> pool;
    const std::size_t step = (layer.size() + parts - 1) / parts;
    for (unsigned p = 0; p < parts; ++p) {
      const std::size_t lo = std::min(layer.size(), p * step);
      const std::size_t hi = std::min(layer.size(), lo + step);
      pool.emplace_back(work, lo, hi, std::ref(chunks[p]));
    }
    for (auto& th : pool) th.join();
  }
  std::vector<Key> merged;
  for (auto& c : chunks) merged.insert(merged.end(), c.begin(), c.end());
  sort_unique(merged);
  return merged;
}

}  // namespace

MatrixConditionResult condition_m_bruteforce(const Rank2MatrixSystem& system, const BruteForceOptions& options) {
  const std::size_t n = system.size();
  const long bound = options.coefficient_bound;
  if (bound < 0) throw InputError("condition_m_bruteforce: coefficient bound must be nonnegative");
  const IntMatrix block = system.block_matrix();

  MatrixConditionResult r;
  r.method = ConditionMethod::BruteForce;
  r.coefficient_bound = bound;
  if (n == 0) return r;

  std::vector<Column> cols;
  for (std::size_t j = 0; j < block.cols(); ++j) {
    Column c{j, std::vector<std::int64_t>(n)};
    bool nonzero = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!block(i, j).fits_slong_p() || abs(block(i, j)) > Integer(1) << 40)
        throw EnumerationCapExceeded("condition_m_bruteforce: matrix entries too large to enumerate");
      c.entries[i] = block(i, j).get_si();
      nonzero = nonzero || c.entries[i] != 0;
    }
    if (nonzero) cols.push_back(std::move(c));
  }

  // rem[j][i]: largest amount columns after j can still add to coordinate i.
  std::vector<std::vector<std::int64_t>> rem(cols.size(), std::vector<std::int64_t>(n));
  for (std::size_t j = cols.size(); j-- > 0;)
    for (std::size_t i = 0; i < n; ++i)
      rem[j][i] = (j + 1 < cols.size() ? rem[j + 1][i] + bound * std::abs(cols[j + 1].entries[i]) : 0);

  Packer pk;
  pk.n = n;
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t span = 0;
    for (const auto& c : cols) span += bound * std::abs(c.entries[i]);
    pk.offset = std::max(pk.offset, span);
  }
  while ((std::int64_t{1} << pk.width) < 2 * pk.offset + 1) ++pk.width;
  if (pk.width == 0) pk.width = 1;
  if (pk.width * n > 127)
    throw EnumerationCapExceeded("condition_m_bruteforce: search space too wide for the packed encoding");

  // Search boxes [0, cap]^n with cap = 1, 2, 4, ... up to the full range; the
  // witness is the lexicographically smallest one in the first box that has
  // any. Small boxes prune most partial sums, and the last box is exhaustive.
  std::vector<std::vector<Key>> layers;
  std::vector<std::int64_t> v(n);
  std::optional<Key> found;
  const std::vector<std::int64_t> origin(n, 0);
  for (std::int64_t cap = 1;; cap = std::min(2 * cap, pk.offset)) {
    layers.assign(1, {pk.encode(origin.data())});
    for (std::size_t j = 0; j < cols.size(); ++j) {
      layers.push_back(expand_layer(layers.back(), cols[j], rem[j], pk, bound, cap, options.threads));
      if (layers.back().size() > options.state_cap)
        throw EnumerationCapExceeded("condition_m_bruteforce: more than " + std::to_string(options.state_cap) +
                                     " distinct partial sums");
    }
    // Surviving final states lie in the box; skip the zero vector.
    for (Key k : layers.back()) {
      pk.decode(k, v.data());
      if (std::any_of(v.begin(), v.end(), [](std::int64_t x) { return x != 0; })) {
        found = k;
        break;
      }
    }
    if (found || cap >= pk.offset) break;
  }
  if (!found) return r;

  std::vector<long> coeff(block.cols(), 0);
  std::vector<std::int64_t> cur(n), prev(n);
  pk.decode(*found, cur.data());
  for (std::size_t j = cols.size(); j-- > 0;) {
    bool stepped = false;
    for (long c = -bound; c <= bound && !stepped; ++c) {
      for (std::size_t i = 0; i < n; ++i) prev[i] = cur[i] - c * cols[j].entries[i];
      if (std::binary_search(layers[j].begin(), layers[j].end(), pk.encode(prev.data()))) {
        coeff[cols[j].index] = c;
        cur = prev;
        stepped = true;
      }
    }
    if (!stepped) throw InternalConsistencyError("condition_m_bruteforce: witness path lost");
  }

  MatrixConditionWitness w;
  pk.decode(*found, v.data());
  for (std::size_t i = 0; i < n; ++i) {
    w.v.emplace_back(static_cast<long>(v[i]));
    w.f.emplace_back(coeff[i]);
    w.g.emplace_back(coeff[n + i]);
  }
  if (!verify_witness(system, w)) throw InternalConsistencyError("condition_m_bruteforce: witness does not verify");
  r.holds = false;
  r.witness = std::move(w);
  return r;
}

// -- coboundary subgroup ----------------------------------------------------

std::string BisectionGenerator::descriptor(const std::vector<std::string>& labels) const {
  auto name = [&](std::size_t x) { return x < labels.size() ? labels[x] : std::to_string(x); };
  return "Z({" + name(point) + "}, (" + std::to_string(k1) + "," + std::to_string(k2) + "), (0,0), {" + name(image) +
         "})";
}

CoboundaryLattice coboundary_lattice(const FiniteMapModel& model, std::optional<std::size_t> k_bound,
                                     std::size_t max_bound) {
  if (!model.bijective()) throw NotApplicableError("coboundary_lattice: model is not bijective");
  const std::size_t n = model.size();
  CoboundaryLattice out;
  out.stabilization_bound = lcm_of_orbit_lengths(model);
  std::size_t k = 0;
  if (k_bound) {
    k = *k_bound;
  } else {
    k = out.stabilization_bound.fits_ulong_p() ? out.stabilization_bound.get_ui() : max_bound;
    k = std::min(k, max_bound);
  }
  out.exponent_bound = k;
  out.possibly_incomplete = Integer(static_cast<unsigned long>(k)) < out.stabilization_bound;

  std::vector<std::vector<bool>> seen(n, std::vector<bool>(n));
  std::vector<IntVector> columns;
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t row_start = x;  // T1^k1 x
    for (std::size_t k1 = 0; k1 <= k; ++k1) {
      std::size_t y = row_start;
      for (std::size_t k2 = 0; k2 <= k; ++k2) {
        if (y != x && !seen[x][y]) {
          seen[x][y] = true;
          IntVector v(n);
          v[y] += 1;
          v[x] -= 1;
          columns.push_back(v);
          out.generator_log.push_back({x, k1, k2, y, std::move(v)});
        }
        y = model.t2()[y];
      }
      row_start = model.t1()[row_start];
    }
  }
  out.lattice = lattice_of_columns(IntMatrix::from_columns(n, columns));
  return out;
}

CoboundaryComparison compare_coboundary_with_matrix_image(const FiniteMapModel& model,
                                                          std::optional<std::size_t> k_bound) {
  CoboundaryComparison c;
  c.coboundary = coboundary_lattice(model, k_bound);
  c.matrix_image = lattice_of_columns(matrix_system(model).block_matrix());
  c.equal = c.coboundary.lattice == c.matrix_image;
  return c;
}

bool check_prop_C_equals_M(const FiniteMapModel& model, std::optional<std::size_t> k_bound) {
  return compare_coboundary_with_matrix_image(model, k_bound).equal;
}

// -- verdicts ---------------------------------------------------------------

std::string to_string(Conclusion c) {
  switch (c) {
    case Conclusion::StablyFinite: return "StablyFinite";
    case Conclusion::Inconclusive: return "Inconclusive";
    case Conclusion::NotApplicable: return "NotApplicable";
  }
  return "Inconclusive";
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Proven: return "Proven";
    case Status::Failed: return "Failed";
    case Status::Assumed: return "Assumed";
    case Status::Obligation: return "Obligation";
  }
  return "Obligation";
}

std::string to_string(Assumption a) {
  switch (a) {
    case Assumption::Auto: return "auto";
    case Assumption::Assume: return "assume";
    case Assumption::Deny: return "deny";
  }
  return "auto";
}

namespace {

std::string witness_note(const MatrixConditionResult& m) {
  if (m.holds || !m.witness) return "image of (1-m1 | 1-m2) meets the nonnegative cone only in 0";
  return "witness v = " + to_string(m.witness->v) + " from f = " + to_string(m.witness->f) +
         ", g = " + to_string(m.witness->g);
}

bool acceptable(Status s) { return s == Status::Proven || s == Status::Assumed; }

// Stable finiteness of one piece of the extension.
CheckedCondition piece_sf(const std::string& name, const Rank2MatrixSystem& piece, const MatrixConditionResult& m,
                          Assumption a, std::vector<std::string>& narrative) {
  CheckedCondition c{name, Status::Obligation, {}};
  if (a == Assumption::Assume) {
    c.status = Status::Assumed;
    c.detail = "assumed by the caller";
    return c;
  }
  if (a == Assumption::Deny) {
    c.status = Status::Failed;
    c.detail = "denied by the caller";
    return c;
  }
  if (piece.size() == 0) {
    c.status = Status::Proven;
    c.detail = "empty piece: the zero algebra is stably finite";
    return c;
  }
  auto fm = as_finite_map_model(piece);
  if (!fm) {
    c.detail = "not decidable from " + to_string(piece.origin()) + " data; assume it or prove it separately";
    return c;
  }
  if (!is_minimal(*fm)) {
    c.detail = "piece has " + std::to_string(orbits(*fm).size()) +
               " orbits, so it is not minimal; the minimal-groupoid criterion does not apply";
    return c;
  }
  if (m.holds) {
    c.status = Status::Proven;
    c.detail = "minimal (single orbit) and satisfies (M), equivalently (C); minimal ample groupoids with (C) have "
               "stably finite C*-algebras";
  } else {
    c.status = Status::Failed;
    c.detail = "minimal but (M) fails, so (C) fails and the C*-algebra of this minimal piece is not stably finite";
  }
  narrative.push_back(name + ": " + c.detail);
  return c;
}

}  // namespace

Verdict sf_verdict(const Rank2MatrixSystem& system, const Subset& w, const AssumptionMap& assumptions) {
  if (auto c = check_invariant(system, w); !c)
    throw InputError("sf_verdict: subset is not invariant: " + c.violation->describe(system.labels()));

  Verdict v;
  const MatrixConditionResult m_all = condition_m(system);
  v.m_global = m_all.holds;
  v.checked.push_back({"(M) for T", m_all.holds ? Status::Proven : Status::Failed, witness_note(m_all)});
  v.narrative.push_back(std::string("(M) for the whole system ") + (m_all.holds ? "holds" : "fails") + " (" +
                        witness_note(m_all) + ")");

  if (w.is_trivial()) {
    v.route = "minimal";
    v.narrative.push_back(
        "no nontrivial invariant subset given: using the minimal-groupoid criterion, under which stable finiteness "
        "is equivalent to (C), and (C) is equivalent to (M)");
    auto fm = as_finite_map_model(system);
    CheckedCondition minimal{"minimality", Status::Obligation, {}};
    if (fm) {
      const auto orb = orbits(*fm);
      minimal.status = orb.size() <= 1 ? Status::Proven : Status::Failed;
      minimal.detail = std::to_string(orb.size()) + " orbit(s) of the Z^2-action";
    } else {
      minimal.detail = "minimality of the path-space groupoid is not decided from " + to_string(system.origin()) +
                       " data";
    }
    v.checked.push_back(minimal);
    if (minimal.status == Status::Failed) {
      v.conclusion = Conclusion::NotApplicable;
      v.narrative.push_back("the system is not minimal; supply a nontrivial invariant subset to use the extension "
                            "route");
    } else if (minimal.status == Status::Proven && m_all.holds) {
      v.conclusion = Conclusion::StablyFinite;
      v.narrative.push_back("minimal and (M) holds: C*(G_T) is stably finite");
    } else {
      v.conclusion = Conclusion::Inconclusive;
      if (!m_all.holds && minimal.status == Status::Proven)
        v.narrative.push_back("minimal and (M) fails: by the same criterion C*(G_T) is not stably finite");
    }
    return v;
  }

  v.route = "extension";
  const Rank2MatrixSystem ideal = restrict(system, w);
  const Rank2MatrixSystem quotient = corestrict_complement(system, w);
  v.narrative.push_back("extension route: 0 -> C*(G|_H) -> C*(G) -> C*(G|_{complement}) -> 0 with H = " +
                        std::to_string(w.count()) + " of " + std::to_string(w.universe_size()) + " points");

  const MatrixConditionResult m_ideal = condition_m(ideal);
  v.m_ideal = m_ideal.holds;
  if (m_all.holds && !m_ideal.holds)
    throw InternalConsistencyError("sf_verdict: (M) holds for T but fails on an invariant restriction");
  v.checked.push_back({"(M) for T|_H", m_ideal.holds ? Status::Proven : Status::Failed,
                       m_all.holds ? "implied by (M) for T (the restriction's image lattice is a sublattice); "
                                     "re-checked directly"
                                   : witness_note(m_ideal)});

  const MatrixConditionResult m_quot = condition_m(quotient);
  v.checked.push_back(
      {"(M) for T|_{complement}", m_quot.holds ? Status::Proven : Status::Failed, witness_note(m_quot)});

  const CheckedCondition ideal_sf = piece_sf("C*(G|_H) stably finite", ideal, m_ideal, assumptions.ideal_sf, v.narrative);
  const CheckedCondition quotient_sf =
      piece_sf("C*(G|_{complement}) stably finite", quotient, m_quot, assumptions.quotient_sf, v.narrative);
  v.checked.push_back(ideal_sf);
  v.checked.push_back(quotient_sf);

  CheckedCondition p{"(P) for H", Status::Obligation,
                     "kappa_H(C_c(H,Z)) meet K_0(C*(G|_H))_+ = kappa_H(C_c(H,N)); needs the positive cone of "
                     "K_0 of the ideal, which is not computed here"};
  if (assumptions.positivity == Assumption::Assume) {
    p.status = Status::Assumed;
    p.detail = "assumed by the caller";
  } else if (assumptions.positivity == Assumption::Deny) {
    p.status = Status::Failed;
    p.detail = "denied by the caller";
  }
  v.checked.push_back(p);

  // Does W look like the unique nontrivial invariant subset?
  if (system.size() <= kDefaultEnumerationCap) {
    std::size_t nontrivial = 0;
    for (const auto& s : enumerate_invariant_subsets(system))
      if (!s.subset.is_trivial()) ++nontrivial;
    if (nontrivial == 1)
      v.narrative.push_back("H is the only nontrivial matrix-level invariant subset (the unique-ideal case)");
  }

  const bool ok = acceptable(v.checked[0].status) && acceptable(ideal_sf.status) && acceptable(quotient_sf.status) &&
                  acceptable(p.status);
  v.conclusion = ok ? Conclusion::StablyFinite : Conclusion::Inconclusive;
  v.narrative.push_back(
      "the extension theorem concludes stable finiteness from (M) for T, (P) for H and stable finiteness of both "
      "pieces; what it certifies is (S): ker(i_*) meets K_0(C*(G|_H))_+ only in 0, which is not evaluated directly");
  if (ok) {
    std::vector<std::string> assumed;
    for (const auto& c : v.checked)
      if (c.status == Status::Assumed) assumed.push_back(c.condition);
    std::string s = "all hypotheses Proven or Assumed: C*(G_T) is stably finite";
    if (!assumed.empty()) {
      s += " (relying on:";
      for (const auto& a : assumed) s += " " + a + ";";
      s.back() = ')';
    }
    v.narrative.push_back(s);
  } else {
    v.narrative.push_back("some hypothesis is Failed or an open Obligation: no conclusion");
  }

  for (const auto& c : v.checked)
    if (v.conclusion == Conclusion::StablyFinite && !acceptable(c.status) && c.condition != "(M) for T|_{complement}")
      throw InternalConsistencyError("sf_verdict: StablyFinite with hypothesis '" + c.condition + "' " +
                                     to_string(c.status));
  return v;
}

}  // namespace drk
