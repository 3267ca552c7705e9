#include "drk/rational_lp.hpp"

#include "drk/errors.hpp"

namespace drk {
namespace {

struct Tableau {
  RationalMatrix t;  // constraint rows
  RationalVector rhs;
  std::vector<std::size_t> basis;

  std::size_t rows() const { return t.size(); }

  void pivot(std::size_t r, std::size_t c) {
    const Rational p = t[r][c];
    for (auto& x : t[r]) x /= p;
    rhs[r] /= p;
    for (std::size_t i = 0; i < rows(); ++i) {
      if (i == r || sgn(t[i][c]) == 0) continue;
      const Rational f = t[i][c];
      for (std::size_t j = 0; j < t[i].size(); ++j)
        if (sgn(t[r][j]) != 0) t[i][j] -= f * t[r][j];
      rhs[i] -= f * rhs[r];
    }
    basis[r] = c;
  }

  void drop_row(std::size_t r) {
    t.erase(t.begin() + static_cast<std::ptrdiff_t>(r));
    rhs.erase(rhs.begin() + static_cast<std::ptrdiff_t>(r));
    basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(r));
  }
};

// Maximizes cost^T x over the current basic feasible solution using only
// columns [0, usable). Returns false if unbounded.
bool run_simplex(Tableau& tab, const RationalVector& cost, std::size_t usable) {
  for (;;) {
    std::size_t entering = usable;
    for (std::size_t j = 0; j < usable && entering == usable; ++j) {
      Rational reduced = cost[j];
      for (std::size_t i = 0; i < tab.rows(); ++i)
        if (sgn(tab.t[i][j]) != 0) reduced -= cost[tab.basis[i]] * tab.t[i][j];
      if (sgn(reduced) > 0) entering = j;
    }
    if (entering == usable) return true;

    std::size_t leaving = tab.rows();
    Rational best;
    for (std::size_t i = 0; i < tab.rows(); ++i) {
      if (sgn(tab.t[i][entering]) <= 0) continue;
      Rational ratio = tab.rhs[i] / tab.t[i][entering];
      if (leaving == tab.rows() || ratio < best || (ratio == best && tab.basis[i] < tab.basis[leaving])) {
        best = ratio;
        leaving = i;
      }
    }
    if (leaving == tab.rows()) return false;
    tab.pivot(leaving, entering);
  }
}

}  // namespace

LpResult maximize(const RationalMatrix& a, const RationalVector& b, const RationalVector& c) {
  const std::size_t m = a.size();
  const std::size_t n = c.size();
  if (b.size() != m) throw InputError("maximize: rhs length mismatch");
  for (const auto& row : a)
    if (row.size() != n) throw InputError("maximize: constraint row length mismatch");

  // Phase I on [a | I] with artificial basis; rows negated so that b >= 0.
  Tableau tab;
  tab.t.assign(m, RationalVector(n + m));
  tab.rhs = b;
  tab.basis.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = sgn(b[i]) < 0;
    for (std::size_t j = 0; j < n; ++j) tab.t[i][j] = flip ? Rational(-a[i][j]) : a[i][j];
    if (flip) tab.rhs[i] = -b[i];
    tab.t[i][n + i] = 1;
    tab.basis[i] = n + i;
  }
  RationalVector phase1(n + m);
  for (std::size_t i = 0; i < m; ++i) phase1[n + i] = -1;
  run_simplex(tab, phase1, n + m);

  LpResult result;
  for (std::size_t i = 0; i < tab.rows(); ++i)
    if (tab.basis[i] >= n && sgn(tab.rhs[i]) != 0) {
      result.status = LpStatus::Infeasible;
      return result;
    }

  // Drive zero-level artificials out of the basis; drop redundant rows.
  for (std::size_t i = tab.rows(); i-- > 0;) {
    if (tab.basis[i] < n) continue;
    std::size_t col = n;
    for (std::size_t j = 0; j < n && col == n; ++j)
      if (sgn(tab.t[i][j]) != 0) col = j;
    if (col == n)
      tab.drop_row(i);
    else
      tab.pivot(i, col);
  }

  RationalVector phase2(n + m);
  for (std::size_t j = 0; j < n; ++j) phase2[j] = c[j];
  if (!run_simplex(tab, phase2, n)) {
    result.status = LpStatus::Unbounded;
    return result;
  }

  result.status = LpStatus::Optimal;
  result.x.assign(n, Rational(0));
  for (std::size_t i = 0; i < tab.rows(); ++i) result.x[tab.basis[i]] = tab.rhs[i];
  for (std::size_t j = 0; j < n; ++j) result.objective += c[j] * result.x[j];
  return result;
}

std::optional<ConeWitness> subspace_meets_positive_cone(const HermiteLattice& lattice) {
  const std::size_t n = lattice.ambient_dim();
  const std::size_t k = lattice.rank();
  if (k == 0 || n == 0) return std::nullopt;
  const IntMatrix& basis = lattice.basis();

  // Variables: t+ (k), t- (k), x (n), slack s (1).
  const std::size_t vars = 2 * k + n + 1;
  RationalMatrix a(n + 1, RationalVector(vars));
  RationalVector b(n + 1);
  RationalVector c(vars);
  for (std::size_t i = 0; i < n; ++i) {
    // x_i - (basis t+)_i + (basis t-)_i = 0
    for (std::size_t j = 0; j < k; ++j) {
      a[i][j] = Rational(-basis(i, j));
      a[i][k + j] = Rational(basis(i, j));
    }
    a[i][2 * k + i] = 1;
  }
  for (std::size_t i = 0; i < n; ++i) {
    a[n][2 * k + i] = 1;
    c[2 * k + i] = 1;
  }
  a[n][vars - 1] = 1;
  b[n] = 1;

  const LpResult r = maximize(a, b, c);
  if (r.status != LpStatus::Optimal)
    throw InternalConsistencyError("subspace_meets_positive_cone: bounded feasible LP not solved to optimality");
  if (sgn(r.objective) == 0) return std::nullopt;

  ConeWitness w;
  w.vector.assign(r.x.begin() + static_cast<std::ptrdiff_t>(2 * k),
                  r.x.begin() + static_cast<std::ptrdiff_t>(2 * k + n));
  w.coefficients.resize(k);
  for (std::size_t j = 0; j < k; ++j) w.coefficients[j] = r.x[j] - r.x[k + j];
  // Rescale so the witness has unit mass.
  for (auto& x : w.vector) x /= r.objective;
  for (auto& x : w.coefficients) x /= r.objective;
  return w;
}

}  // namespace drk
