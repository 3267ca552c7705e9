#include "drk/smith.hpp"

#include "drk/errors.hpp"
#include "drk/hermite.hpp"

namespace drk {
namespace {

int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

// Mutable working state; every operation on `d` is mirrored on the transforms.
struct SmithState {
  IntMatrix d, u, u_inv, v;

  void swap_rows(std::size_t a, std::size_t b) {
    d.swap_rows(a, b);
    u.swap_rows(a, b);
    u_inv.swap_columns(a, b);
  }
  void swap_columns(std::size_t a, std::size_t b) {
    d.swap_columns(a, b);
    v.swap_columns(a, b);
  }
  // row dst += q * row src
  void add_row(std::size_t dst, std::size_t src, const Integer& q) {
    d.add_row_multiple(dst, src, q);
    u.add_row_multiple(dst, src, q);
    u_inv.add_column_multiple(src, dst, -q);
  }
  // col dst += q * col src
  void add_column(std::size_t dst, std::size_t src, const Integer& q) {
    d.add_column_multiple(dst, src, q);
    v.add_column_multiple(dst, src, q);
  }
};

// Position of the smallest nonzero |entry| in the trailing block, if any.
bool find_min_pivot(const IntMatrix& d, std::size_t t, std::size_t& pr, std::size_t& pc) {
  bool found = false;
  Integer best;
  for (std::size_t i = t; i < d.rows(); ++i)
    for (std::size_t j = t; j < d.cols(); ++j) {
      const Integer& x = d(i, j);
      if (sgn(x) == 0) continue;
      if (!found || cmpabs(x, best) < 0) {
        best = x;
        pr = i;
        pc = j;
        found = true;
      }
    }
  return found;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SmithState s{a, IntMatrix::identity(m), IntMatrix::identity(m), IntMatrix::identity(n)};

  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    std::size_t pr = 0, pc = 0;
    if (!find_min_pivot(s.d, t, pr, pc)) break;
    s.swap_rows(t, pr);
    s.swap_columns(t, pc);

    for (;;) {
      // Reduce column t and row t modulo the pivot, then move the smallest
      // remainder into the pivot slot. |pivot| strictly decreases each round.
      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (sgn(s.d(i, t)) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), s.d(i, t).get_mpz_t(), s.d(t, t).get_mpz_t());
        s.add_row(i, t, -q);
        if (sgn(s.d(i, t)) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (sgn(s.d(t, j)) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), s.d(t, j).get_mpz_t(), s.d(t, t).get_mpz_t());
        s.add_column(j, t, -q);
        if (sgn(s.d(t, j)) != 0) dirty = true;
      }
      if (dirty) {
        std::size_t best_i = t, best_j = t;
        for (std::size_t i = t + 1; i < m; ++i)
          if (sgn(s.d(i, t)) != 0 && cmpabs(s.d(i, t), s.d(best_i, best_j)) < 0) {
            best_i = i;
            best_j = t;
          }
        for (std::size_t j = t + 1; j < n; ++j)
          if (sgn(s.d(t, j)) != 0 && cmpabs(s.d(t, j), s.d(best_i, best_j)) < 0) {
            best_i = t;
            best_j = j;
          }
        s.swap_rows(t, best_i);
        s.swap_columns(t, best_j);
        continue;
      }
      // Row and column clear; enforce divisibility of the trailing block.
      std::size_t bad_row = m;
      for (std::size_t i = t + 1; i < m && bad_row == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(s.d(i, j).get_mpz_t(), s.d(t, t).get_mpz_t())) {
            bad_row = i;
            break;
          }
      if (bad_row == m) break;
      s.add_row(t, bad_row, 1);
    }
    if (sgn(s.d(t, t)) < 0) {
      s.d.negate_column(t);
      s.v.negate_column(t);
    }
  }

  SmithForm f;
  f.source = a;
  f.rank = t;
  for (std::size_t i = 0; i < t; ++i) f.invariant_factors.push_back(s.d(i, i));
  f.left = std::move(s.u);
  f.left_inverse = std::move(s.u_inv);
  f.right = std::move(s.v);
  f.diagonal = std::move(s.d);
  return f;
}

IntMatrix kernel_basis(const IntMatrix& a) {
  const SmithForm f = smith_normal_form(a);
  // a = left^-1 D right^-1, so x in ker(a) iff right^-1 x is supported on
  // the zero-diagonal coordinates: the trailing columns of `right`.
  return lattice_of_columns(f.right.trailing_columns(f.rank)).basis();
}

std::optional<IntVector> solve_integer_system(const IntMatrix& a, std::span<const Integer> b) {
  if (b.size() != a.rows()) throw InputError("solve_integer_system: right-hand side has wrong length");
  const SmithForm f = smith_normal_form(a);
  const IntVector y = f.left.apply(b);
  IntVector z(a.cols());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i < f.rank) {
      if (!mpz_divisible_p(y[i].get_mpz_t(), f.invariant_factors[i].get_mpz_t())) return std::nullopt;
      mpz_divexact(z[i].get_mpz_t(), y[i].get_mpz_t(), f.invariant_factors[i].get_mpz_t());
    } else if (sgn(y[i]) != 0) {
      return std::nullopt;
    }
  }
  return f.right.apply(z);
}

std::optional<IntMatrix> solve_integer_system(const IntMatrix& a, const IntMatrix& b) {
  if (b.rows() != a.rows()) throw InputError("solve_integer_system: row count mismatch");
  IntMatrix x(a.cols(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    auto col = solve_integer_system(a, b.column(j));
    if (!col) return std::nullopt;
    for (std::size_t i = 0; i < a.cols(); ++i) x(i, j) = (*col)[i];
  }
  return x;
}

}  // namespace drk
