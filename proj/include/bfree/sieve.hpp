#pragma once

// Sieving the B-free indicator on a box: for each family ideal, walk the
// intersection of a residue-class coset with the box along the triangular
// lattice basis and clear the covered bits. Worst case O(points * L); the
// walk costs O(hits) per ideal plus small per-axis overhead. Parallel runs
// partition the box into slabs along the slowest axis and clear bits with
// atomic word operations, so results are bit-identical for every thread
// count and partition granularity.

#include <atomic>
#include <sstream>
#include <thread>
#include <vector>

#include "bfree/bfamily.hpp"
#include "bfree/box.hpp"
#include "bfree/hash.hpp"
#include "bfree/window.hpp"

namespace bfree {

// Canonical stamp of a sieve window's generating configuration.
inline std::string window_stamp_hex(const BFamily& family, size_t L, const Box& box) {
  std::ostringstream os;
  os << "order:";
  for (i64 c : family.order()->poly()) os << c << ",";
  os << ";family:";
  for (size_t l = 0; l < family.size(); ++l) {
    for (i64 e : family.ideal(l).raw_basis()) os << e << ",";
    os << "|";
  }
  os << ";L:" << L << ";box:";
  for (int t = 0; t < box.dim(); ++t) os << box.lo(t) << ".." << box.hi(t) << ",";
  return sha256_hex(os.str());
}

namespace detail {

inline i128 floor_div_i128(i128 a, i128 b) {
  i128 q = a / b, r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}
inline i128 ceil_div_i128(i128 a, i128 b) { return -floor_div_i128(-a, b); }

// Enumerate indices of box points congruent to r modulo the ideal lattice.
// r may be any coordinate vector (canonical residue in typical use).
template <class F>
inline void walk_coset(const IdealLattice& b, const Box& box, const std::vector<i64>& r, F&& emit) {
  int d = box.dim();
  std::vector<u64> stride(static_cast<size_t>(d));
  for (int t = 0; t < d; ++t) stride[static_cast<size_t>(t)] = box.stride(t);
  std::vector<i128> partial(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) partial[static_cast<size_t>(i)] = r[static_cast<size_t>(i)];
  // scratch for saved partial prefixes, one frame per level
  std::vector<i128> saved(static_cast<size_t>(d) * static_cast<size_t>(d));

  auto rec = [&](auto&& self, int j, u64 idx_base) -> void {
    const i128 c = partial[static_cast<size_t>(j)];
    const i64 g = b.diag(j);
    const i128 ylo = ceil_div_i128(i128(box.lo(j)) - c, g);
    const i128 yhi = floor_div_i128(i128(box.hi(j)) - c, g);
    if (ylo > yhi) return;
    if (j == 0) {
      u64 idx = idx_base + static_cast<u64>(c + i128(g) * ylo - box.lo(0));
      const u64 step = static_cast<u64>(g);
      for (i128 y = ylo; y <= yhi; ++y, idx += step) emit(idx);
      return;
    }
    i128* save = &saved[static_cast<size_t>(j) * static_cast<size_t>(box.dim())];
    for (int i = 0; i < j; ++i) save[i] = partial[static_cast<size_t>(i)];
    for (i128 y = ylo; y <= yhi; ++y) {
      const i128 xj = c + i128(g) * y;
      for (int i = 0; i < j; ++i) partial[static_cast<size_t>(i)] = save[i] + i128(b.entry(i, j)) * y;
      self(self, j - 1, idx_base + static_cast<u64>(xj - box.lo(j)) * stride[static_cast<size_t>(j)]);
    }
    for (int i = 0; i < j; ++i) partial[static_cast<size_t>(i)] = save[i];
  };
  rec(rec, d - 1, 0);
}

// Restrict a box to a slab [alo, ahi] of its slowest axis.
inline Box slab(const Box& box, i64 alo, i64 ahi) {
  std::vector<i64> lo = box.los(), hi = box.his();
  lo.back() = alo;
  hi.back() = ahi;
  return Box(std::move(lo), std::move(hi));
}

}  // namespace detail

// Indicator of B_L-freeness on the box: bit(a) = 1 iff a lies in none of the
// first L family ideals.
inline Window sieve_window(const BFamily& family, const Box& box, size_t L, int threads = 1,
                           u64 budget = Box::kDefaultPointBudget) {
  require(L <= family.size(), errc::invalid_argument, "truncation exceeds family size");
  require(box.dim() == family.order()->degree(), errc::invalid_argument, "box dimension mismatch");
  u64 n = box.point_count(budget);
  std::vector<std::atomic<u64>> words((n + 63) / 64);
  for (auto& w : words) w.store(~u64(0), std::memory_order_relaxed);

  std::vector<i64> zero(static_cast<size_t>(box.dim()), 0);
  auto run_slab = [&](const Box& sub, u64 index_offset) {
    for (size_t l = 0; l < L; ++l) {
      detail::walk_coset(family.ideal(l), sub, zero, [&](u64 idx) {
        u64 gi = idx + index_offset;
        words[gi >> 6].fetch_and(~(u64(1) << (gi & 63)), std::memory_order_relaxed);
      });
    }
  };

  int axis = box.dim() - 1;
  i64 axis_len = box.length(axis);
  int nthreads = threads > 1 ? static_cast<int>(std::min<i64>(threads, axis_len)) : 1;
  if (nthreads <= 1) {
    run_slab(box, 0);
  } else {
    std::vector<std::thread> pool;
    u64 inner = box.stride(axis);
    for (int t = 0; t < nthreads; ++t) {
      i64 alo = box.lo(axis) + axis_len * t / nthreads;
      i64 ahi = box.lo(axis) + axis_len * (t + 1) / nthreads - 1;
      if (alo > ahi) continue;
      Box sub = detail::slab(box, alo, ahi);
      u64 offset = static_cast<u64>(alo - box.lo(axis)) * inner;
      pool.emplace_back(run_slab, sub, offset);
    }
    for (auto& th : pool) th.join();
  }

  std::vector<u64> plain(words.size());
  for (size_t i = 0; i < words.size(); ++i) plain[i] = words[i].load(std::memory_order_relaxed);
  Window w(box, std::move(plain), n);
  w.set_stamp({window_stamp_hex(family, L, box), static_cast<u64>(L)});
  return w;
}

// Slow reference: membership test per point, for cross-checking the walker.
inline bool bfree_at(const BFamily& family, size_t L, const RingElement& a) {
  for (size_t l = 0; l < L; ++l)
    if (family.ideal(l).contains(a)) return false;
  return true;
}

}  // namespace bfree
