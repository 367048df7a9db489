#pragma once

// Exact cylinder values of the Mirsky measure for a truncated family, with
// rigorous interval tails, and empirical frequencies over window interiors.
// All exact quantities are rationals; decimal rendering happens only in the
// report layer.

#include <set>
#include <vector>

#include "bfree/bfamily.hpp"
#include "bfree/bigint.hpp"
#include "bfree/window.hpp"

namespace bfree {

// D(b|A): number of distinct residues of A modulo b.
inline u64 d_count(const IdealLattice& b, const std::vector<RingElement>& elems) {
  std::set<std::vector<i64>> seen;
  for (const auto& a : elems) seen.insert(b.residue_coords(a.coords()));
  return seen.size();
}

// A finite pattern: coordinates required 1 on `ones` (the set A) and 0 on
// `zeros` (the set B); disjoint.
class Pattern {
 public:
  Pattern(std::vector<RingElement> ones, std::vector<RingElement> zeros)
      : ones_(std::move(ones)), zeros_(std::move(zeros)) {
    std::set<std::vector<i64>> a;
    for (const auto& e : ones_) a.insert(e.coords());
    for (const auto& e : zeros_)
      require(!a.count(e.coords()), errc::not_disjoint, "pattern ones and zeros overlap");
  }

  const std::vector<RingElement>& ones() const { return ones_; }
  const std::vector<RingElement>& zeros() const { return zeros_; }
  size_t support_size() const { return ones_.size() + zeros_.size(); }

 private:
  std::vector<RingElement> ones_, zeros_;
};

struct IntervalValue {
  Rat value;      // truncated exact value
  Rat halfwidth;  // the infinite-family value lies within value +- halfwidth
};

// Truncated product prod_{l<L} (1 - D(b_l|A)/N(b_l)): the measure of the
// all-ones cylinder over A for the L-truncated family.
inline Rat ones_cylinder_truncated(const std::vector<RingElement>& a_set, const BFamily& family, size_t L) {
  Rat v(1);
  for (size_t l = 0; l < L; ++l) {
    const IdealLattice& b = family.ideal(l);
    Rat frac{zi(static_cast<i64>(d_count(b, a_set))), b.norm()};
    frac.canonicalize();
    v *= (Rat(1) - frac);
  }
  return v;
}

// Exact cylinder measure of C_{A,B} for the L-truncated family, by signed
// expansion over the supersets A <= D <= A u B, plus the truncation tail
// |A u B| * (sum_{l>=L stored} 1/N + analytic tail).
inline IntervalValue mirsky_cylinder(const Pattern& pattern, const BFamily& family, size_t L) {
  require(L <= family.size(), errc::invalid_argument, "truncation exceeds family size");
  size_t nb = pattern.zeros().size();
  require(nb <= 24, errc::budget_exceeded, "cylinder expansion over more than 2^24 supersets");
  Rat v(0);
  std::vector<RingElement> d_set = pattern.ones();
  for (u64 mask = 0; mask < (u64(1) << nb); ++mask) {
    d_set.erase(d_set.begin() + static_cast<std::ptrdiff_t>(pattern.ones().size()), d_set.end());
    int bits = 0;
    for (size_t i = 0; i < nb; ++i)
      if (mask & (u64(1) << i)) {
        d_set.push_back(pattern.zeros()[i]);
        ++bits;
      }
    Rat term = ones_cylinder_truncated(d_set, family, L);
    if (bits % 2)
      v -= term;
    else
      v += term;
  }
  Rat tail = family.beyond(L) * rat(static_cast<i64>(pattern.support_size()));
  return {v, tail};
}

// B_L-free density: the A = {0} cylinder.
inline IntervalValue density(const BFamily& family, size_t L) {
  std::vector<RingElement> origin{RingElement::zero(family.order())};
  return {ones_cylinder_truncated(origin, family, L), family.beyond(L)};
}

// Generalized density prod_{l<L} (1 - s_l/N(b_l)) for an s-vector; used both
// for the Z_L frequency and as the entropy product.
inline IntervalValue density_svector(const BFamily& family, size_t L, const std::vector<i64>& s) {
  require(L <= family.size() && s.size() >= L, errc::invalid_argument, "s-vector shorter than truncation");
  Rat v(1);
  for (size_t l = 0; l < L; ++l) {
    require(s[l] >= 1 && zi(s[l]) <= family.ideal(l).norm(), errc::invalid_argument,
            "s-vector entry out of range");
    Rat frac{zi(s[l]), family.ideal(l).norm()};
    frac.canonicalize();
    v *= (Rat(1) - frac);
  }
  return {v, family.beyond(L)};
}

// Interior positions a with a + u inside the box for every pattern offset u.
// Returns the interior as a box; throws EmptyInterior when no position fits.
inline Box pattern_interior(const Box& box, const Pattern& pattern) {
  int d = box.dim();
  std::vector<i64> lo = box.los(), hi = box.his();
  auto apply = [&](const RingElement& e) {
    for (int t = 0; t < d; ++t) {
      i64 u = e.coord(t);
      lo[static_cast<size_t>(t)] = std::max(lo[static_cast<size_t>(t)], box.lo(t) - u);
      hi[static_cast<size_t>(t)] = std::min(hi[static_cast<size_t>(t)], box.hi(t) - u);
    }
  };
  for (const auto& e : pattern.ones()) apply(e);
  for (const auto& e : pattern.zeros()) apply(e);
  for (int t = 0; t < d; ++t)
    require(lo[static_cast<size_t>(t)] <= hi[static_cast<size_t>(t)], errc::empty_interior,
            "pattern does not fit inside the window");
  return Box(std::move(lo), std::move(hi));
}

// Fraction of interior positions whose translated window matches the pattern
// exactly (boundary positions excluded from numerator and denominator).
inline Rat empirical_frequency(const Window& w, const Pattern& pattern) {
  const Box& box = w.box();
  Box interior = pattern_interior(box, pattern);
  std::vector<i64> one_off(pattern.ones().size(), 0), zero_off(pattern.zeros().size(), 0);
  // linear index offsets are translation-invariant inside the box
  std::vector<i64> base = interior.los();
  u64 base_idx = box.index_of(base);
  size_t k = 0;
  for (const auto& e : pattern.ones()) {
    std::vector<i64> p = base;
    for (int t = 0; t < box.dim(); ++t) p[static_cast<size_t>(t)] += e.coord(t);
    one_off[k++] = static_cast<i64>(box.index_of(p)) - static_cast<i64>(base_idx);
  }
  k = 0;
  for (const auto& e : pattern.zeros()) {
    std::vector<i64> p = base;
    for (int t = 0; t < box.dim(); ++t) p[static_cast<size_t>(t)] += e.coord(t);
    zero_off[k++] = static_cast<i64>(box.index_of(p)) - static_cast<i64>(base_idx);
  }
  u64 total = 0, matches = 0;
  interior.for_each_point([&](const std::vector<i64>& a, u64) {
    u64 ai = box.index_of(a);
    ++total;
    for (i64 off : one_off)
      if (!w.bit(static_cast<u64>(static_cast<i64>(ai) + off))) return;
    for (i64 off : zero_off)
      if (w.bit(static_cast<u64>(static_cast<i64>(ai) + off))) return;
    ++matches;
  });
  return rat(static_cast<i64>(matches), static_cast<i64>(total));
}

}  // namespace bfree
