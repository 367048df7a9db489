#pragma once

// Admissibility and exact pattern counting. gamma_L^{>=s}(box) is the number
// of subsets W of the box with D(b_l|W) <= N(b_l) - s_l for every l <= L.
//
// Two engines, cross-checked in the tests:
//  * inclusion-exclusion over per-level avoided-class sets with weight
//    (-1)^{|S_l|-s_l} C(|S_l|-1, s_l-1) ("at least s_l classes avoided"),
//    evaluated over the joint residue histogram of the box. The level with
//    the largest term count is never enumerated: its inner sum collapses
//    exactly through the elementary-symmetric expansion of
//    prod_c (2^{h_c} + x), cutting 2^N terms to O(N^2) big-integer work.
//  * Gray-code brute force over all subsets, for boxes of at most 22 points.
//
// Levels whose constraint already holds for the full box contribute nothing
// and are dropped exactly; the largest surviving index is reported as the
// stabilization truncation (the count is unchanged for any L at or beyond
// it, within the evaluated prefix).

#include <algorithm>
#include <string>
#include <vector>

#include "bfree/bfamily.hpp"
#include "bfree/box.hpp"
#include "bfree/measure.hpp"

namespace bfree {

inline std::vector<i64> svector_ones(size_t L) { return std::vector<i64>(L, 1); }

// true iff D(b_l|A) <= N(b_l) - s_l for all l < L
inline bool is_admissible(const std::vector<RingElement>& a_set, const BFamily& family, size_t L,
                          const std::vector<i64>& s) {
  require(L <= family.size() && s.size() >= L, errc::invalid_argument, "s-vector shorter than truncation");
  for (size_t l = 0; l < L; ++l) {
    const IdealLattice& b = family.ideal(l);
    require(s[l] >= 1 && zi(s[l]) <= b.norm(), errc::invalid_argument, "s-vector entry out of range");
    if (zi(static_cast<i64>(d_count(b, a_set))) > b.norm() - zi(s[l])) return false;
  }
  return true;
}

inline bool is_admissible(const std::vector<RingElement>& a_set, const BFamily& family, size_t L) {
  return is_admissible(a_set, family, L, svector_ones(L));
}

struct AdmissibleCount {
  Int count;
  std::string method;      // "inclusion-exclusion" | "brute-force"
  size_t stabilization_L;  // count is identical for any truncation >= this, within the prefix
};

namespace detail {

struct CountLevel {
  u64 classes;                     // N(b_l)
  i64 s;                           // threshold s_l
  std::vector<u32> point_residue;  // residue index per surviving box point
  Int term_count;                  // sum_{j >= s} C(N, j)
};

inline Int ie_weight(u64 j, i64 s) {
  Int w = binomial(static_cast<unsigned long>(j - 1), static_cast<unsigned long>(s - 1));
  return ((static_cast<i64>(j) - s) % 2) ? -w : w;
}

// sum over subsets S of the classes with |S| >= s of
// (-1)^{|S|-s} C(|S|-1, s-1) * 2^{R - sum_{c in S} h_c},
// read off the coefficients of prod_c (2^{h_c} + x).
inline Int collapse_sum(const std::vector<u32>& hist, i64 s) {
  std::vector<Int> coeff{Int(1)};
  for (u32 h : hist) {
    Int t = pow2(h);
    coeff.emplace_back(0);
    for (size_t j = coeff.size() - 1; j >= 1; --j) coeff[j] = coeff[j] * t + coeff[j - 1];
    coeff[0] *= t;
  }
  Int total(0);
  for (size_t j = static_cast<size_t>(s); j < coeff.size(); ++j)
    total += ie_weight(static_cast<u64>(j), s) * coeff[j];
  return total;
}

}  // namespace detail

// Exact count by inclusion-exclusion. The budget caps the number of
// enumerated terms: the product over the non-collapsed levels of
// sum_{j>=s_l} C(N_l, j). Throws BudgetExceeded above the cap.
inline AdmissibleCount count_admissible_ie(const Box& box, const BFamily& family, size_t L,
                                           const std::vector<i64>& s,
                                           const Int& term_budget = Int(1) << 24) {
  require(L <= family.size() && s.size() >= L, errc::invalid_argument, "s-vector shorter than truncation");
  require(box.dim() == family.order()->degree(), errc::invalid_argument, "box dimension mismatch");
  const u64 points = box.point_count(u64(1) << 22);

  std::vector<detail::CountLevel> levels;
  size_t stab = 0;
  for (size_t l = 0; l < L; ++l) {
    const IdealLattice& b = family.ideal(l);
    require(s[l] >= 1 && zi(s[l]) <= b.norm(), errc::invalid_argument, "s-vector entry out of range");
    if (b.norm() - zi(s[l]) >= zi(static_cast<i64>(points))) continue;  // D <= points: vacuous
    // residues per point
    detail::CountLevel lev;
    lev.classes = static_cast<u64>(b.norm().get_ui());
    lev.s = s[l];
    lev.point_residue.resize(points);
    std::vector<bool> seen(lev.classes, false);
    u64 distinct = 0;
    box.for_each_point([&](const std::vector<i64>& x, u64 idx) {
      u64 r = b.residue_index(b.residue_coords(x));
      lev.point_residue[idx] = static_cast<u32>(r);
      if (!seen[r]) {
        seen[r] = true;
        ++distinct;
      }
    });
    if (distinct <= lev.classes - static_cast<u64>(s[l])) continue;  // vacuous on this box
    Int tc(0);
    for (u64 j = static_cast<u64>(s[l]); j <= lev.classes; ++j)
      tc += binomial(static_cast<unsigned long>(lev.classes), static_cast<unsigned long>(j));
    lev.term_count = tc;
    levels.push_back(std::move(lev));
    stab = l + 1;
  }

  if (levels.empty()) return {pow2(points), "inclusion-exclusion", 0};

  // collapse the level with the largest term count
  size_t collapse = 0;
  for (size_t i = 1; i < levels.size(); ++i)
    if (levels[i].term_count > levels[collapse].term_count) collapse = i;
  std::vector<size_t> masks;  // indices into `levels`, excluding the collapsed one
  Int enumerated(1);          // prod of 2^{N_l} over enumerated levels
  u64 cells = levels[collapse].classes;
  for (size_t i = 0; i < levels.size(); ++i) {
    if (i == collapse) continue;
    require(levels[i].classes <= 63, errc::budget_exceeded,
            "a non-collapsed level has too many residue classes to enumerate");
    enumerated *= pow2(levels[i].classes);
    require(cells <= (u64(1) << 27) / levels[i].classes, errc::budget_exceeded,
            "joint residue histogram too large");
    cells *= levels[i].classes;
    masks.push_back(i);
  }
  require(enumerated <= term_budget, errc::budget_exceeded,
          "inclusion-exclusion term count " + enumerated.get_str() + " exceeds the budget");

  // joint histogram: collapse residue fastest, mask levels in `masks` order
  std::vector<u32> hist(cells, 0);
  for (u64 i = 0; i < points; ++i) {
    u64 cell = 0;
    for (size_t k = masks.size(); k-- > 0;) cell = cell * levels[masks[k]].classes + levels[masks[k]].point_residue[i];
    cell = cell * levels[collapse].classes + levels[collapse].point_residue[i];
    ++hist[cell];
  }

  Int total(0);
  // recurse over mask levels, slowest dimension first
  auto rec = [&](auto&& self, size_t k, const std::vector<u32>& h, const Int& weight) -> void {
    if (k == 0) {
      total += weight * detail::collapse_sum(h, levels[collapse].s);
      return;
    }
    const detail::CountLevel& lev = levels[masks[k - 1]];
    const u64 n = lev.classes;
    const size_t block = h.size() / n;
    std::vector<u32> child(block);
    const u64 full = (n == 64) ? ~u64(0) : (u64(1) << n) - 1;
    for (u64 mask = 1; mask <= full; ++mask) {
      int pc = __builtin_popcountll(mask);
      if (pc < lev.s) continue;
      std::fill(child.begin(), child.end(), 0);
      for (u64 c = 0; c < n; ++c) {
        if (mask & (u64(1) << c)) continue;  // class c avoided: drop its points
        const u32* src = h.data() + c * block;
        for (size_t t = 0; t < block; ++t) child[t] += src[t];
      }
      self(self, k - 1, child, weight * detail::ie_weight(static_cast<u64>(pc), lev.s));
    }
  };
  rec(rec, masks.size(), hist, Int(1));
  return {total, "inclusion-exclusion", stab};
}

// Independent oracle: enumerate all subsets of the box in Gray-code order,
// maintaining per-level distinct-residue counts incrementally.
inline AdmissibleCount count_admissible_brute(const Box& box, const BFamily& family, size_t L,
                                              const std::vector<i64>& s) {
  require(L <= family.size() && s.size() >= L, errc::invalid_argument, "s-vector shorter than truncation");
  const u64 points = box.point_count(22);
  std::vector<std::vector<u32>> resid(L);
  std::vector<std::vector<u32>> occupancy(L);
  std::vector<u64> distinct(L, 0), limit(L);
  for (size_t l = 0; l < L; ++l) {
    const IdealLattice& b = family.ideal(l);
    require(s[l] >= 1 && zi(s[l]) <= b.norm(), errc::invalid_argument, "s-vector entry out of range");
    require(b.norm() <= zi(i64(1) << 22), errc::size_overflow, "brute force with a huge-norm ideal");
    u64 n = static_cast<u64>(b.norm().get_ui());
    resid[l].resize(points);
    occupancy[l].assign(n, 0);
    box.for_each_point([&](const std::vector<i64>& x, u64 idx) {
      resid[l][idx] = static_cast<u32>(b.residue_index(b.residue_coords(x)));
    });
    limit[l] = n - static_cast<u64>(s[l]);  // admissible iff distinct <= limit
  }
  u64 violated = 0;
  u64 good = 1;  // the empty subset
  std::vector<bool> in(points, false);
  const u64 total_masks = u64(1) << points;
  for (u64 i = 1; i < total_masks; ++i) {
    u64 p = static_cast<u64>(__builtin_ctzll(i));
    bool adding = !in[p];
    in[p] = adding;
    for (size_t l = 0; l < L; ++l) {
      u32 r = resid[l][p];
      if (adding) {
        if (occupancy[l][r]++ == 0) {
          if (++distinct[l] == limit[l] + 1) ++violated;
        }
      } else {
        if (--occupancy[l][r] == 0) {
          if (distinct[l]-- == limit[l] + 1) --violated;
        }
      }
    }
    if (violated == 0) ++good;
  }
  return {zi(static_cast<i64>(good)), "brute-force", L};
}

struct EntropyEstimate {
  AdmissibleCount count;
  Rat lo, hi;  // rational bracket of (1/points) log2(count)
};

inline EntropyEstimate entropy_estimate(const Box& box, const BFamily& family, size_t L,
                                        const std::vector<i64>& s,
                                        const Int& term_budget = Int(1) << 24) {
  AdmissibleCount c = count_admissible_ie(box, family, L, s, term_budget);
  auto [lo, hi] = log2_bracket(c.count, 48);
  Rat pts{Int(1), box.point_count_exact()};
  pts.canonicalize();
  return {std::move(c), lo * pts, hi * pts};
}

// Truncated product prod_{l<L}(1 - s_l/N(b_l)) with tail interval: the
// entropy of Y_{>=s}, base-2 normalized per lattice point.
inline IntervalValue entropy_formula(const BFamily& family, size_t L, const std::vector<i64>& s) {
  return density_svector(family, L, s);
}

}  // namespace bfree
