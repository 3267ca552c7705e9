#include "drk/hermite.hpp"

#include "drk/errors.hpp"

namespace drk {

HermiteLattice::HermiteLattice(std::size_t ambient_dim) : basis_(ambient_dim, 0) {}

bool HermiteLattice::is_full() const {
  if (rank() != ambient_dim()) return false;
  for (std::size_t j = 0; j < rank(); ++j)
    if (basis_(pivots_[j], j) != 1) return false;
  return true;
}

HermiteLattice lattice_of_columns(const IntMatrix& a) {
  IntMatrix h = a;
  const std::size_t m = h.rows();
  const std::size_t n = h.cols();
  std::vector<std::size_t> pivots;

  std::size_t r = 0;
  for (std::size_t i = 0; i < m && r < n; ++i) {
    // Fold the gcd of row i (over columns r..n-1) into column r with
    // determinant-one 2x2 column transforms.
    for (std::size_t j = r + 1; j < n; ++j) {
      if (sgn(h(i, j)) == 0) continue;
      Integer g, p, q;
      mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(), h(i, r).get_mpz_t(), h(i, j).get_mpz_t());
      const Integer x = h(i, r) / g;
      const Integer y = h(i, j) / g;
      for (std::size_t k = 0; k < m; ++k) {
        const Integer cr = h(k, r);
        const Integer cj = h(k, j);
        h(k, r) = p * cr + q * cj;
        h(k, j) = x * cj - y * cr;
      }
    }
    if (sgn(h(i, r)) == 0) continue;
    if (sgn(h(i, r)) < 0) h.negate_column(r);
    for (std::size_t k = 0; k < r; ++k) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, k).get_mpz_t(), h(i, r).get_mpz_t());
      h.add_column_multiple(k, r, -q);
    }
    pivots.push_back(i);
    ++r;
  }

  HermiteLattice l;
  l.basis_ = h.leading_columns(r);
  l.pivots_ = std::move(pivots);
  return l;
}

HermiteLattice lattice_sum(const HermiteLattice& a, const HermiteLattice& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw InputError("lattice_sum: ambient dimension mismatch");
  return lattice_of_columns(hcat(a.basis(), b.basis()));
}

std::optional<IntVector> lattice_contains(const HermiteLattice& lattice, std::span<const Integer> v) {
  if (v.size() != lattice.ambient_dim())
    throw InputError("lattice_contains: vector has dimension " + std::to_string(v.size()) +
                     ", lattice lives in Z^" + std::to_string(lattice.ambient_dim()));
  const IntMatrix& b = lattice.basis();
  const auto& piv = lattice.pivot_rows();
  IntVector residual(v.begin(), v.end());
  IntVector coeff(lattice.rank());
  std::size_t next = 0;
  for (std::size_t i = 0; i < residual.size(); ++i) {
    if (next < piv.size() && piv[next] == i) {
      if (!mpz_divisible_p(residual[i].get_mpz_t(), b(i, next).get_mpz_t())) return std::nullopt;
      mpz_divexact(coeff[next].get_mpz_t(), residual[i].get_mpz_t(), b(i, next).get_mpz_t());
      for (std::size_t k = i; k < residual.size(); ++k) residual[k] -= coeff[next] * b(k, next);
      ++next;
    } else if (sgn(residual[i]) != 0) {
      return std::nullopt;
    }
  }
  return coeff;
}

bool lattice_contains_columns(const HermiteLattice& lattice, const IntMatrix& a) {
  if (a.rows() != lattice.ambient_dim()) throw InputError("lattice_contains_columns: dimension mismatch");
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (!lattice_contains(lattice, a.column(j))) return false;
  return true;
}

}  // namespace drk
