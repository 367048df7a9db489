#pragma once

// Integer boxes in coordinate space: products of per-axis intervals
// [lo_t, hi_t]. The Folner boxes H_n are the symmetric case [-n, n]^d under
// the fixed coordinate identification of the order with Z^d (the power-basis
// coordinate map). Point enumeration order is fixed: coordinate 0 varies
// fastest.

#include <functional>
#include <vector>

#include "bfree/bigint.hpp"
#include "bfree/errors.hpp"
#include "bfree/ideal.hpp"
#include "bfree/order.hpp"

namespace bfree {

class Box {
 public:
  static constexpr u64 kDefaultPointBudget = 100000000;  // 1e8

  Box(std::vector<i64> lo, std::vector<i64> hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    require(!lo_.empty() && lo_.size() == hi_.size(), errc::invalid_argument, "box bounds mismatch");
    for (size_t t = 0; t < lo_.size(); ++t)
      require(lo_[t] <= hi_[t], errc::invalid_argument, "box has empty axis");
  }

  // H_n = [-n, n]^d
  static Box folner(int dim, i64 n) {
    require(dim >= 1 && n >= 0, errc::invalid_argument, "folner box needs dim >= 1, n >= 0");
    return Box(std::vector<i64>(static_cast<size_t>(dim), -n), std::vector<i64>(static_cast<size_t>(dim), n));
  }

  // [0, len_t - 1] per axis
  static Box from_lengths(const std::vector<i64>& lengths) {
    std::vector<i64> lo(lengths.size(), 0), hi(lengths.size());
    for (size_t t = 0; t < lengths.size(); ++t) {
      require(lengths[t] >= 1, errc::invalid_argument, "box length must be >= 1");
      hi[t] = lengths[t] - 1;
    }
    return Box(std::move(lo), std::move(hi));
  }

  int dim() const { return static_cast<int>(lo_.size()); }
  i64 lo(int t) const { return lo_[static_cast<size_t>(t)]; }
  i64 hi(int t) const { return hi_[static_cast<size_t>(t)]; }
  i64 length(int t) const { return hi_[static_cast<size_t>(t)] - lo_[static_cast<size_t>(t)] + 1; }
  const std::vector<i64>& los() const { return lo_; }
  const std::vector<i64>& his() const { return hi_; }

  Int point_count_exact() const {
    Int n(1);
    for (int t = 0; t < dim(); ++t) n *= zi(length(t));
    return n;
  }

  u64 point_count(u64 budget = kDefaultPointBudget) const {
    Int n = point_count_exact();
    require(n <= zi(static_cast<i64>(budget)), errc::size_overflow,
            "box point count exceeds the budget of " + std::to_string(budget));
    return n.get_ui();
  }

  bool contains(const std::vector<i64>& x) const {
    for (int t = 0; t < dim(); ++t)
      if (x[static_cast<size_t>(t)] < lo(t) || x[static_cast<size_t>(t)] > hi(t)) return false;
    return true;
  }

  // coordinate 0 fastest
  u64 index_of(const std::vector<i64>& x) const {
    u64 idx = 0;
    for (int t = dim() - 1; t >= 0; --t)
      idx = idx * static_cast<u64>(length(t)) + static_cast<u64>(x[static_cast<size_t>(t)] - lo(t));
    return idx;
  }

  std::vector<i64> point_at(u64 idx) const {
    std::vector<i64> x(static_cast<size_t>(dim()));
    for (int t = 0; t < dim(); ++t) {
      u64 len = static_cast<u64>(length(t));
      x[static_cast<size_t>(t)] = lo(t) + static_cast<i64>(idx % len);
      idx /= len;
    }
    return x;
  }

  u64 stride(int t) const {
    u64 s = 1;
    for (int u = 0; u < t; ++u) s *= static_cast<u64>(length(u));
    return s;
  }

  // Enumerate all points in index order.
  template <class F>
  void for_each_point(F&& fn, u64 budget = kDefaultPointBudget) const {
    u64 n = point_count(budget);
    std::vector<i64> x = lo_;
    for (u64 i = 0; i < n; ++i) {
      fn(x, i);
      for (int t = 0; t < dim(); ++t) {
        if (++x[static_cast<size_t>(t)] <= hi(t)) break;
        x[static_cast<size_t>(t)] = lo(t);
      }
    }
  }

  // Intersection with a translate of itself, one axis at a time.
  Rat overlap_fraction(const std::vector<i64>& shift) const {
    Rat f(1);
    for (int t = 0; t < dim(); ++t) {
      i64 len = length(t);
      i64 s = shift[static_cast<size_t>(t)];
      i64 ov = len - (s < 0 ? -s : s);
      if (ov <= 0) return Rat(0);
      f *= rat(ov, len);
    }
    return f;
  }

  friend bool operator==(const Box& a, const Box& b) { return a.lo_ == b.lo_ && a.hi_ == b.hi_; }

 private:
  std::vector<i64> lo_, hi_;
};

// The m^d translate centers iota(n*u_1, ..., n*u_d) with u_t = 2 j_t - m - 1,
// j_t in 1..m; the translates of H_n centered there cover H_{nm} (with
// boundary overlap).
inline std::vector<std::vector<i64>> tile_translates(int dim, i64 n, i64 m) {
  require(dim >= 1 && n >= 1 && m >= 1, errc::invalid_argument, "tile_translates needs n, m >= 1");
  std::vector<std::vector<i64>> out;
  std::vector<i64> j(static_cast<size_t>(dim), 1);
  while (true) {
    std::vector<i64> c(static_cast<size_t>(dim));
    for (int t = 0; t < dim; ++t) c[static_cast<size_t>(t)] = n * (2 * j[static_cast<size_t>(t)] - m - 1);
    out.push_back(std::move(c));
    int t = 0;
    for (; t < dim; ++t) {
      if (++j[static_cast<size_t>(t)] <= m) break;
      j[static_cast<size_t>(t)] = 1;
    }
    if (t == dim) break;
  }
  return out;
}

// Identification j between an abstract rank-d lattice of labels and the
// order's coordinates: a unimodular matrix (default identity). The image of
// b*Lambda is an ideal of norm b^d.
class LatticeBridge {
 public:
  explicit LatticeBridge(const OrderHandle& order) : order_(order) {
    int d = order->degree();
    mat_.assign(static_cast<size_t>(d) * static_cast<size_t>(d), 0);
    for (int i = 0; i < d; ++i) mat_[static_cast<size_t>(i) * static_cast<size_t>(d) + static_cast<size_t>(i)] = 1;
  }

  LatticeBridge(const OrderHandle& order, std::vector<i64> unimodular) : order_(order), mat_(std::move(unimodular)) {
    int d = order->degree();
    require(mat_.size() == static_cast<size_t>(d) * static_cast<size_t>(d), errc::invalid_argument,
            "bridge matrix must be d x d");
    std::vector<std::vector<Int>> m(static_cast<size_t>(d), std::vector<Int>(static_cast<size_t>(d)));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        m[static_cast<size_t>(i)][static_cast<size_t>(j)] = zi(mat_[static_cast<size_t>(i) * static_cast<size_t>(d) + static_cast<size_t>(j)]);
    Int det = bareiss_det(std::move(m));
    require(det == 1 || det == -1, errc::invalid_argument, "bridge matrix must be unimodular");
  }

  // j maps a label vector to order coordinates
  RingElement map(const std::vector<i64>& label) const {
    int d = order_->degree();
    std::vector<i64> c(static_cast<size_t>(d), 0);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        c[static_cast<size_t>(i)] = checked_add(
            c[static_cast<size_t>(i)],
            checked_mul(mat_[static_cast<size_t>(i) * static_cast<size_t>(d) + static_cast<size_t>(j)],
                        label[static_cast<size_t>(j)]));
    return {order_, std::move(c)};
  }

  // image of b*Lambda: the ideal generated by the images of b*e_j
  IdealLattice bridge_ideal(i64 b) const {
    require(b >= 2, errc::invalid_argument, "bridge_ideal needs b >= 2");
    int d = order_->degree();
    std::vector<RingElement> gens;
    for (int j = 0; j < d; ++j) {
      std::vector<i64> e(static_cast<size_t>(d), 0);
      e[static_cast<size_t>(j)] = b;
      gens.push_back(map(e));
    }
    return IdealLattice::from_generators(order_, gens);
  }

 private:
  OrderHandle order_;
  std::vector<i64> mat_;
};

}  // namespace bfree
