#pragma once

// Nonzero ideals of a monogenic order as integer lattices in canonical
// Hermite Normal Form: upper triangular, column-style (column j is the pivot
// column for row j), positive diagonal, off-diagonal entries in row i reduced
// into [0, diag_i). Equality, hashing and family ordering all work on this
// canonical form. Construction arithmetic runs in big integers and the final
// basis is range-checked into 64 bits.

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bfree/bigint.hpp"
#include "bfree/errors.hpp"
#include "bfree/order.hpp"

namespace bfree {

namespace detail {

// Column-style HNF of the lattice spanned by `cols` (dimension d each).
// Throws unless the span has full rank d. Optionally tracks, for each output
// pivot column, its expression as an integer combination of the input columns
// (combo[j][k] = coefficient of input column k in output column j).
inline std::vector<std::vector<Int>> hnf_columns(int d, std::vector<std::vector<Int>> cols,
                                                 std::vector<std::vector<Int>>* combo_out = nullptr) {
  size_t n = cols.size();
  std::vector<std::vector<Int>> combo;
  if (combo_out) {
    combo.assign(n, std::vector<Int>(n, Int(0)));
    for (size_t k = 0; k < n; ++k) combo[k][k] = 1;
  }
  auto col_axpy = [&](size_t dst, size_t src, const Int& q) {  // col_dst -= q * col_src
    for (int i = 0; i < d; ++i) cols[dst][static_cast<size_t>(i)] -= q * cols[src][static_cast<size_t>(i)];
    if (combo_out)
      for (size_t k = 0; k < n; ++k) combo[dst][k] -= q * combo[src][k];
  };
  std::vector<size_t> pivot(static_cast<size_t>(d));
  std::vector<bool> used(n, false);
  for (int i = d - 1; i >= 0; --i) {
    // Euclid over the row-i entries of unused columns until one survives
    while (true) {
      size_t best = n;
      for (size_t j = 0; j < n; ++j) {
        if (used[j] || cols[j][static_cast<size_t>(i)] == 0) continue;
        if (best == n ||
            mpz_cmpabs(cols[j][static_cast<size_t>(i)].get_mpz_t(), cols[best][static_cast<size_t>(i)].get_mpz_t()) < 0)
          best = j;
      }
      require(best != n, errc::invalid_argument, "generators do not span a full-rank lattice");
      bool lone = true;
      for (size_t j = 0; j < n; ++j) {
        if (j == best || used[j] || cols[j][static_cast<size_t>(i)] == 0) continue;
        lone = false;
        // |entry_j| >= |entry_best| > 0, so the truncated quotient is nonzero
        Int q = cols[j][static_cast<size_t>(i)] / cols[best][static_cast<size_t>(i)];
        col_axpy(j, best, q);
      }
      if (lone) {
        if (cols[best][static_cast<size_t>(i)] < 0) {
          for (int r = 0; r < d; ++r) cols[best][static_cast<size_t>(r)] = -cols[best][static_cast<size_t>(r)];
          if (combo_out)
            for (size_t k = 0; k < n; ++k) combo[best][k] = -combo[best][k];
        }
        pivot[static_cast<size_t>(i)] = best;
        used[best] = true;
        break;
      }
    }
  }
  // reduce off-diagonal entries: for j > i, entry (i, pivot_j) into [0, diag_i)
  for (int i = d - 1; i >= 0; --i) {
    const Int& g = cols[pivot[static_cast<size_t>(i)]][static_cast<size_t>(i)];
    for (int j = i + 1; j < d; ++j) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), cols[pivot[static_cast<size_t>(j)]][static_cast<size_t>(i)].get_mpz_t(), g.get_mpz_t());
      if (q != 0) col_axpy(pivot[static_cast<size_t>(j)], pivot[static_cast<size_t>(i)], q);
    }
  }
  std::vector<std::vector<Int>> basis(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j) basis[static_cast<size_t>(j)] = cols[pivot[static_cast<size_t>(j)]];
  if (combo_out) {
    combo_out->assign(static_cast<size_t>(d), {});
    for (int j = 0; j < d; ++j) (*combo_out)[static_cast<size_t>(j)] = combo[pivot[static_cast<size_t>(j)]];
  }
  return basis;
}

inline std::vector<Int> mul_vec_mpz(const FieldOrder& ord, const std::vector<Int>& a, const std::vector<Int>& b) {
  int d = ord.degree();
  std::vector<Int> conv(static_cast<size_t>(2 * d - 1), Int(0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) conv[static_cast<size_t>(i + j)] += a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
  std::vector<Int> out(static_cast<size_t>(d), Int(0));
  for (int k = 0; k < 2 * d - 1; ++k) {
    const auto& red = ord.theta_power(k);
    for (int t = 0; t < d; ++t) out[static_cast<size_t>(t)] += conv[static_cast<size_t>(k)] * zi(red[static_cast<size_t>(t)]);
  }
  return out;
}

}  // namespace detail

class IdealLattice {
 public:
  // Lattice spanned by the given coordinate columns; must be closed under
  // multiplication by theta (verified) and of full rank.
  static IdealLattice from_columns(const OrderHandle& order, std::vector<std::vector<Int>> cols) {
    int d = order->degree();
    auto basis = detail::hnf_columns(d, std::move(cols));
    IdealLattice b(order, basis);
    b.verify_theta_closure();
    return b;
  }

  // Ideal generated by ring elements: the span of g * theta^i over all
  // generators g and i < d.
  static IdealLattice from_generators(const OrderHandle& order, const std::vector<RingElement>& gens) {
    int d = order->degree();
    std::vector<std::vector<Int>> cols;
    for (const auto& g : gens) {
      require_same_order(order, g.order());
      std::vector<Int> v(static_cast<size_t>(d));
      for (int i = 0; i < d; ++i) v[static_cast<size_t>(i)] = zi(g.coord(i));
      for (int k = 0; k < d; ++k) {
        cols.push_back(v);
        if (k + 1 < d) v = detail::mul_vec_mpz(*order, v, theta_vec(*order));
      }
    }
    return from_columns(order, std::move(cols));
  }

  static IdealLattice principal(const RingElement& a) {
    require(!a.is_zero(), errc::zero_element, "principal ideal of zero");
    return from_generators(a.order(), {a});
  }

  const OrderHandle& order() const { return order_; }
  int dim() const { return order_->degree(); }
  const Int& norm() const { return norm_; }
  i64 norm_i64() const { return to_i64(norm_, "ideal norm"); }
  bool is_unit_ideal() const { return norm_ == 1; }

  i64 entry(int i, int j) const { return basis_[static_cast<size_t>(i) * static_cast<size_t>(dim()) + static_cast<size_t>(j)]; }
  i64 diag(int i) const { return entry(i, i); }
  const std::vector<i64>& raw_basis() const { return basis_; }

  // a's coordinate vector lies in the integer column span (back-substitution).
  bool contains_coords(const std::vector<i64>& coords) const {
    int d = dim();
    std::vector<i128> v(coords.begin(), coords.end());
    for (int i = d - 1; i >= 0; --i) {
      i128 g = diag(i);
      if (v[static_cast<size_t>(i)] % g != 0) return false;
      i128 q = v[static_cast<size_t>(i)] / g;
      if (q != 0)
        for (int r = 0; r <= i; ++r) v[static_cast<size_t>(r)] -= q * entry(r, i);
    }
    return true;
  }

  bool contains(const RingElement& a) const {
    require_same_order(order_, a.order());
    return contains_coords(a.coords());
  }

  // canonical representative with i-th coordinate in [0, diag_i)
  std::vector<i64> residue_coords(const std::vector<i64>& coords) const {
    int d = dim();
    std::vector<i128> v(coords.begin(), coords.end());
    for (int i = d - 1; i >= 0; --i) {
      i128 g = diag(i);
      i128 q = v[static_cast<size_t>(i)] / g;
      if (v[static_cast<size_t>(i)] % g < 0) q -= 1;  // floor
      if (q != 0)
        for (int r = 0; r <= i; ++r) v[static_cast<size_t>(r)] -= q * entry(r, i);
    }
    std::vector<i64> out(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) out[static_cast<size_t>(i)] = narrow_i64(v[static_cast<size_t>(i)], "residue coordinate");
    return out;
  }

  RingElement residue_rep(const RingElement& a) const {
    require_same_order(order_, a.order());
    return {order_, residue_coords(a.coords())};
  }

  // residue index in [0, N): mixed radix over the diagonal, coordinate 0 least
  // significant. Input must already be canonical.
  u64 residue_index(const std::vector<i64>& canonical) const {
    u64 idx = 0;
    for (int i = dim() - 1; i >= 0; --i) idx = idx * static_cast<u64>(diag(i)) + static_cast<u64>(canonical[static_cast<size_t>(i)]);
    return idx;
  }

  std::vector<i64> residue_at(u64 index) const {
    std::vector<i64> c(static_cast<size_t>(dim()));
    for (int i = 0; i < dim(); ++i) {
      u64 g = static_cast<u64>(diag(i));
      c[static_cast<size_t>(i)] = static_cast<i64>(index % g);
      index /= g;
    }
    return c;
  }

  // All N(b) canonical representatives, in residue_index order.
  std::vector<RingElement> residues(u64 cap = u64(1) << 20) const {
    require(norm_ <= zi(static_cast<i64>(cap)), errc::size_overflow, "residue enumeration above cap");
    u64 n = static_cast<u64>(norm_.get_ui());
    std::vector<RingElement> out;
    out.reserve(n);
    for (u64 k = 0; k < n; ++k) out.emplace_back(order_, residue_at(k));
    return out;
  }

  friend bool operator==(const IdealLattice& a, const IdealLattice& b) {
    return a.order_->same_as(*b.order_) && a.basis_ == b.basis_;
  }

  // family ordering: ascending norm, ties by lexicographic basis comparison
  static bool canonical_less(const IdealLattice& a, const IdealLattice& b) {
    if (a.norm_ != b.norm_) return a.norm_ < b.norm_;
    return a.basis_ < b.basis_;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < dim(); ++i) {
      if (i) os << "; ";
      for (int j = 0; j < dim(); ++j) {
        if (j) os << ",";
        os << entry(i, j);
      }
    }
    os << "] (norm " << norm_.get_str() << ")";
    return os.str();
  }

  std::vector<Int> column_mpz(int j) const {
    std::vector<Int> c(static_cast<size_t>(dim()));
    for (int i = 0; i < dim(); ++i) c[static_cast<size_t>(i)] = zi(entry(i, j));
    return c;
  }

 private:
  IdealLattice(OrderHandle order, const std::vector<std::vector<Int>>& basis_cols) : order_(std::move(order)) {
    int d = order_->degree();
    basis_.assign(static_cast<size_t>(d) * static_cast<size_t>(d), 0);
    norm_ = 1;
    for (int j = 0; j < d; ++j) {
      for (int i = 0; i < d; ++i)
        basis_[static_cast<size_t>(i) * static_cast<size_t>(d) + static_cast<size_t>(j)] =
            to_i64(basis_cols[static_cast<size_t>(j)][static_cast<size_t>(i)], "HNF basis entry");
      norm_ *= basis_cols[static_cast<size_t>(j)][static_cast<size_t>(j)];
    }
  }

  static std::vector<Int> theta_vec(const FieldOrder& ord) {
    std::vector<Int> v(static_cast<size_t>(ord.degree()), Int(0));
    if (ord.degree() >= 2)
      v[1] = 1;
    else
      v[0] = zi(-ord.poly()[0]);
    return v;
  }

  void verify_theta_closure() const {
    for (int j = 0; j < dim(); ++j) {
      std::vector<Int> tc = detail::mul_vec_mpz(*order_, column_mpz(j), theta_vec(*order_));
      std::vector<i64> coords(static_cast<size_t>(dim()));
      for (int i = 0; i < dim(); ++i) coords[static_cast<size_t>(i)] = to_i64(tc[static_cast<size_t>(i)], "closure check");
      require(contains_coords(coords), errc::invalid_argument, "lattice is not an ideal (not closed under theta)");
    }
  }

  OrderHandle order_;
  std::vector<i64> basis_;  // row-major d*d
  Int norm_;
};

inline IdealLattice ideal_sum(const IdealLattice& a, const IdealLattice& b) {
  require_same_order(a.order(), b.order());
  std::vector<std::vector<Int>> cols;
  for (int j = 0; j < a.dim(); ++j) cols.push_back(a.column_mpz(j));
  for (int j = 0; j < b.dim(); ++j) cols.push_back(b.column_mpz(j));
  return IdealLattice::from_columns(a.order(), std::move(cols));
}

inline IdealLattice ideal_product(const IdealLattice& a, const IdealLattice& b) {
  require_same_order(a.order(), b.order());
  std::vector<std::vector<Int>> cols;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j)
      cols.push_back(detail::mul_vec_mpz(*a.order(), a.column_mpz(i), b.column_mpz(j)));
  return IdealLattice::from_columns(a.order(), std::move(cols));
}

inline IdealLattice ideal_pow(const IdealLattice& a, int k) {
  require(k >= 1, errc::invalid_argument, "ideal power requires k >= 1");
  IdealLattice r = a;
  for (int i = 1; i < k; ++i) r = ideal_product(r, a);
  return r;
}

inline bool is_coprime(const IdealLattice& a, const IdealLattice& b) {
  require_same_order(a.order(), b.order());
  Int g;
  mpz_gcd(g.get_mpz_t(), a.norm().get_mpz_t(), b.norm().get_mpz_t());
  if (g == 1) return true;  // coprime norms force coprime ideals
  return ideal_sum(a, b).is_unit_ideal();
}

// Simultaneous congruences x = r_l (mod b_l) for pairwise coprime ideals,
// canonicalized modulo the product ideal.
inline RingElement crt(const std::vector<RingElement>& rs, const std::vector<IdealLattice>& ideals) {
  require(!rs.empty() && rs.size() == ideals.size(), errc::invalid_argument, "crt needs equal-length nonempty lists");
  for (size_t i = 0; i < ideals.size(); ++i)
    for (size_t j = i + 1; j < ideals.size(); ++j)
      require(is_coprime(ideals[i], ideals[j]), errc::not_coprime, "crt moduli must be pairwise coprime");
  const OrderHandle& ord = rs[0].order();
  int d = ord->degree();
  std::vector<Int> x(static_cast<size_t>(d), Int(0));
  for (int i = 0; i < d; ++i) x[static_cast<size_t>(i)] = zi(rs[0].coord(i));
  IdealLattice mod = ideals[0];
  for (size_t l = 1; l < ideals.size(); ++l) {
    require_same_order(ord, rs[l].order());
    // 1 = u + v with u in mod, v in b: solve over the concatenated bases
    std::vector<std::vector<Int>> cols;
    for (int j = 0; j < d; ++j) cols.push_back(mod.column_mpz(j));
    for (int j = 0; j < d; ++j) cols.push_back(ideals[l].column_mpz(j));
    std::vector<std::vector<Int>> combo;
    auto h = detail::hnf_columns(d, cols, &combo);
    for (int i = 0; i < d; ++i)
      require(h[static_cast<size_t>(i)][static_cast<size_t>(i)] == 1, errc::not_coprime, "crt: sum is not the unit ideal");
    // back-substitute e0 through the upper-triangular h (unit diagonal)
    std::vector<Int> y(static_cast<size_t>(d), Int(0));
    std::vector<Int> v(static_cast<size_t>(d), Int(0));
    v[0] = 1;
    for (int i = d - 1; i >= 0; --i) {
      y[static_cast<size_t>(i)] = v[static_cast<size_t>(i)];
      for (int r = 0; r <= i; ++r) v[static_cast<size_t>(r)] -= y[static_cast<size_t>(i)] * h[static_cast<size_t>(i)][static_cast<size_t>(r)];
    }
    // u = sum over the first-d input columns of their contribution
    std::vector<Int> u(static_cast<size_t>(d), Int(0));
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        const Int& coef = combo[static_cast<size_t>(j)][static_cast<size_t>(k)];
        if (coef != 0)
          for (int i = 0; i < d; ++i)
            u[static_cast<size_t>(i)] += y[static_cast<size_t>(j)] * coef * mod.column_mpz(k)[static_cast<size_t>(i)];
      }
    // x' = x + u*(r - x)
    std::vector<Int> rmx(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) rmx[static_cast<size_t>(i)] = zi(rs[l].coord(i)) - x[static_cast<size_t>(i)];
    std::vector<Int> delta = detail::mul_vec_mpz(*ord, u, rmx);
    for (int i = 0; i < d; ++i) x[static_cast<size_t>(i)] += delta[static_cast<size_t>(i)];
    mod = ideal_product(mod, ideals[l]);
    // canonicalize coordinates to keep growth bounded
    std::vector<i64> xi(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) xi[static_cast<size_t>(i)] = to_i64(x[static_cast<size_t>(i)], "crt intermediate");
    xi = mod.residue_coords(xi);
    for (int i = 0; i < d; ++i) x[static_cast<size_t>(i)] = zi(xi[static_cast<size_t>(i)]);
  }
  std::vector<i64> out(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) out[static_cast<size_t>(i)] = to_i64(x[static_cast<size_t>(i)], "crt result");
  return {ord, out};
}

}  // namespace bfree
