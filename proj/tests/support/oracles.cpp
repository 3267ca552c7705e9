#include "oracles.hpp"

#include <algorithm>
#include <numeric>

namespace drk::oracle {

Integer laplace_determinant(const IntMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  if (n == 1) return a(0, 0);
  Integer det = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (sgn(a(0, j)) == 0) continue;
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = a(r, c);
    const Integer term = a(0, j) * laplace_determinant(minor);
    det += (j % 2 == 0) ? term : Integer(-term);
  }
  return det;
}

namespace {

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  subsets(n, k, 0, cur, out);
  return out;
}

long mod(long a, long m) { return ((a % m) + m) % m; }

}  // namespace

std::vector<Integer> invariant_factors_by_minors(const IntMatrix& a) {
  std::vector<Integer> out;
  Integer prev = 1;
  for (std::size_t k = 1; k <= std::min(a.rows(), a.cols()); ++k) {
    Integer g = 0;
    for (const auto& rs : subsets(a.rows(), k))
      for (const auto& cs : subsets(a.cols(), k)) {
        IntMatrix m(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) m(i, j) = a(rs[i], cs[j]);
        const Integer d = laplace_determinant(m);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      }
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

std::optional<std::vector<Rational>> solve_full_column_rank(const IntMatrix& a, const IntVector& b) {
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = a(i, j);
    t[i][n] = b[i];
  }
  std::size_t row = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t j = 0; j < n && row < m; ++j) {
    std::size_t p = row;
    while (p < m && t[p][j] == 0) ++p;
    if (p == m) continue;
    std::swap(t[p], t[row]);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || t[i][j] == 0) continue;
      const Rational f = t[i][j] / t[row][j];
      for (std::size_t c = j; c <= n; ++c) t[i][c] -= f * t[row][c];
    }
    pivots.push_back(j);
    ++row;
  }
  for (std::size_t i = row; i < m; ++i)
    if (t[i][n] != 0) return std::nullopt;
  std::vector<Rational> x(n);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = t[r][n] / t[r][pivots[r]];
  return x;
}

bool in_basis_lattice(const IntMatrix& basis, const IntVector& x) {
  const auto c = solve_full_column_rank(basis, x);
  if (!c) return false;
  return std::all_of(c->begin(), c->end(), [](const Rational& q) { return q.get_den() == 1; });
}

std::vector<IntVector> box(std::size_t dim, long bound) {
  std::vector<IntVector> out;
  IntVector cur(dim, Integer(-bound));
  if (dim == 0) return {IntVector{}};
  while (true) {
    out.push_back(cur);
    std::size_t i = 0;
    while (i < dim && cur[i] == bound) cur[i++] = -bound;
    if (i == dim) break;
    cur[i] += 1;
  }
  return out;
}

FiniteQuotient::FiniteQuotient(const IntMatrix& relations, long modulus) : n_(relations.rows()), modulus_(modulus) {
  // Closure of {0} under adding relators and N e_i, all mod N.
  std::vector<std::vector<long>> gens;
  for (std::size_t j = 0; j < relations.cols(); ++j) {
    std::vector<long> g(n_);
    for (std::size_t i = 0; i < n_; ++i) g[i] = mod(relations(i, j).get_si(), modulus_);
    gens.push_back(g);
  }
  std::vector<std::vector<long>> frontier{std::vector<long>(n_, 0)};
  subgroup_.insert(frontier[0]);
  while (!frontier.empty()) {
    std::vector<std::vector<long>> next;
    for (const auto& s : frontier)
      for (const auto& g : gens) {
        std::vector<long> t(n_);
        for (std::size_t i = 0; i < n_; ++i) t[i] = mod(s[i] + g[i], modulus_);
        if (subgroup_.insert(t).second) next.push_back(t);
      }
    frontier = std::move(next);
  }
  std::set<std::vector<long>> reps;
  std::vector<long> cur(n_, 0);
  while (true) {
    reps.insert(canon(cur));
    std::size_t i = 0;
    while (i < n_ && cur[i] == modulus_ - 1) cur[i++] = 0;
    if (i == n_) break;
    ++cur[i];
  }
  elements_.assign(reps.begin(), reps.end());
}

std::vector<long> FiniteQuotient::canon(const std::vector<long>& x) const {
  std::vector<long> best;
  for (const auto& s : subgroup_) {
    std::vector<long> t(n_);
    for (std::size_t i = 0; i < n_; ++i) t[i] = mod(x[i] + s[i], modulus_);
    if (best.empty() || t < best) best = t;
  }
  if (n_ == 0) return {};
  return best;
}

bool FiniteQuotient::is_zero(const std::vector<long>& x) const {
  std::vector<long> t(n_);
  for (std::size_t i = 0; i < n_; ++i) t[i] = mod(x[i], modulus_);
  return subgroup_.count(t) > 0;
}

std::vector<long> apply_mod(const IntMatrix& lift, const std::vector<long>& x, long modulus) {
  std::vector<long> out(lift.rows(), 0);
  for (std::size_t i = 0; i < lift.rows(); ++i) {
    long s = 0;
    for (std::size_t j = 0; j < lift.cols(); ++j) s += lift(i, j).get_si() * x[j];
    out[i] = mod(s, modulus);
  }
  return out;
}

std::size_t kernel_size(const IntMatrix& lift, const FiniteQuotient& domain, const FiniteQuotient& codomain) {
  std::size_t k = 0;
  for (const auto& x : domain.elements())
    if (codomain.is_zero(apply_mod(lift, x, codomain.modulus()))) ++k;
  return k;
}

std::size_t image_size(const IntMatrix& lift, const FiniteQuotient& domain, const FiniteQuotient& codomain) {
  std::set<std::vector<long>> img;
  for (const auto& x : domain.elements()) img.insert(codomain.canon(apply_mod(lift, x, codomain.modulus())));
  return img.size();
}

bool exact_at(const IntMatrix& f, const IntMatrix& g, const FiniteQuotient& a, const FiniteQuotient& b,
              const FiniteQuotient& c) {
  std::set<std::vector<long>> img, ker;
  for (const auto& x : a.elements()) img.insert(b.canon(apply_mod(f, x, b.modulus())));
  for (const auto& y : b.elements())
    if (c.is_zero(apply_mod(g, y, c.modulus()))) ker.insert(y);
  return img == ker;
}

std::optional<IntVector> cone_point(const IntMatrix& basis, long bound) {
  for (const auto& c : box(basis.cols(), bound)) {
    IntVector v(basis.rows());
    for (std::size_t i = 0; i < basis.rows(); ++i)
      for (std::size_t j = 0; j < basis.cols(); ++j) v[i] += basis(i, j) * c[j];
    const bool nonneg = std::all_of(v.begin(), v.end(), [](const Integer& z) { return sgn(z) >= 0; });
    const bool nonzero = std::any_of(v.begin(), v.end(), [](const Integer& z) { return sgn(z) != 0; });
    if (nonneg && nonzero) return v;
  }
  return std::nullopt;
}

std::vector<IntVector> coboundary_generators(const FiniteMapModel& model, std::size_t k_bound) {
  const std::size_t n = model.size();
  std::vector<IntVector> out;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t k1 = 0; k1 <= k_bound; ++k1)
      for (std::size_t k2 = 0; k2 <= k_bound; ++k2) {
        std::size_t y = x;
        for (std::size_t i = 0; i < k1; ++i) y = model.t1()[y];
        for (std::size_t i = 0; i < k2; ++i) y = model.t2()[y];
        IntVector v(n);
        v[y] += 1;
        v[x] -= 1;
        out.push_back(v);
      }
  return out;
}

std::size_t orbit_count(const FiniteMapModel& model) {
  const std::size_t n = model.size();
  std::vector<int> seen(n, 0);
  std::size_t count = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++count;
    std::vector<std::size_t> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      const std::size_t x = stack.back();
      stack.pop_back();
      for (std::size_t y : {model.t1()[x], model.t2()[x]})
        if (!seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
    }
  }
  return count;
}

}  // namespace drk::oracle
