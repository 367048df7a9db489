#pragma once

// The coding maps between the residue torus and windows: phi evaluates the
// coded configuration of a group point on a box; theta reports, per level,
// the residue classes whose entire coset is unoccupied in the window. Fiber
// reports are set-valued: a residue class with no coset representative
// inside the box is "untested", never a member by default. joining_fiber is
// theta with the fixed residue negation applied (the two orientations of the
// same coset scan; one documented normalization).

#include <map>
#include <random>
#include <vector>

#include "bfree/bfamily.hpp"
#include "bfree/box.hpp"
#include "bfree/sieve.hpp"
#include "bfree/window.hpp"

namespace bfree {

// A point of the truncated residue torus: canonical residues modulo the
// first L family ideals.
class GroupPoint {
 public:
  static GroupPoint zero(const BFamily& family, size_t L) {
    std::vector<RingElement> rs;
    for (size_t l = 0; l < L; ++l) rs.push_back(RingElement::zero(family.order()));
    return GroupPoint(std::move(rs));
  }

  static GroupPoint canonical(const BFamily& family, size_t L, std::vector<RingElement> raw) {
    require(raw.size() == L, errc::invalid_argument, "group point length must equal truncation");
    for (size_t l = 0; l < L; ++l) raw[l] = family.ideal(l).residue_rep(raw[l]);
    return GroupPoint(std::move(raw));
  }

  static GroupPoint random(const BFamily& family, size_t L, std::mt19937_64& rng) {
    std::vector<RingElement> rs;
    for (size_t l = 0; l < L; ++l) {
      const IdealLattice& b = family.ideal(l);
      u64 n = static_cast<u64>(b.norm().get_ui());
      rs.emplace_back(family.order(), b.residue_at(rng() % n));
    }
    return GroupPoint(std::move(rs));
  }

  // T_a: add a to every coordinate, reduced
  GroupPoint rotated(const BFamily& family, const RingElement& a) const {
    std::vector<RingElement> rs;
    for (size_t l = 0; l < residues_.size(); ++l)
      rs.push_back(family.ideal(l).residue_rep(elem_add(residues_[l], a)));
    return GroupPoint(std::move(rs));
  }

  size_t length() const { return residues_.size(); }
  const RingElement& residue(size_t l) const { return residues_[l]; }
  const std::vector<RingElement>& residues() const { return residues_; }

  friend bool operator==(const GroupPoint& a, const GroupPoint& b) { return a.residues_ == b.residues_; }

 private:
  explicit GroupPoint(std::vector<RingElement> rs) : residues_(std::move(rs)) {}
  std::vector<RingElement> residues_;
};

// phi(g) restricted to the box: bit(a) = 1 iff g_l + a lies outside b_l for
// every l < L, i.e. a avoids every coset -g_l + b_l.
inline Window phi_window(const GroupPoint& g, const Box& box, const BFamily& family, size_t L,
                         u64 budget = Box::kDefaultPointBudget) {
  require(g.length() == L && L <= family.size(), errc::invalid_argument, "group point length mismatch");
  Window w(box, true, budget);
  for (size_t l = 0; l < L; ++l) {
    std::vector<i64> r = family.ideal(l).residue_coords(elem_neg(g.residue(l)).coords());
    detail::walk_coset(family.ideal(l), box, r, [&](u64 idx) { w.clear_bit(idx); });
  }
  return w;
}

struct FiberLevel {
  std::vector<u64> members;   // residue indexes in the fiber
  std::vector<u64> untested;  // residue indexes with no coset point in the box
  bool complete = false;      // every residue class had a representative
};

struct FiberReport {
  std::vector<FiberLevel> levels;

  bool all_singletons() const {
    for (const auto& lv : levels)
      if (lv.members.size() != 1) return false;
    return true;
  }
};

namespace detail {

// per level: bitsets of residues hit by the box and by the support
inline void scan_residues(const Window& w, const IdealLattice& b, std::vector<bool>& box_hit,
                          std::vector<bool>& supp_hit) {
  u64 n = static_cast<u64>(b.norm().get_ui());
  box_hit.assign(n, false);
  supp_hit.assign(n, false);
  w.box().for_each_point([&](const std::vector<i64>& x, u64 idx) {
    u64 r = b.residue_index(b.residue_coords(x));
    box_hit[r] = true;
    if (w.bit(idx)) supp_hit[r] = true;
  });
}

inline u64 negated_index(const IdealLattice& b, u64 idx) {
  std::vector<i64> c = b.residue_at(idx);
  for (auto& v : c) v = -v;
  return b.residue_index(b.residue_coords(c));
}

}  // namespace detail

// For each l < L: the residues g with no support point in the coset
// b_l - g; a residue is untested when that coset misses the box entirely.
inline FiberReport theta_window(const Window& w, const BFamily& family, size_t L,
                                u64 residue_cap = u64(1) << 24) {
  require(L <= family.size(), errc::invalid_argument, "truncation exceeds family size");
  FiberReport report;
  std::vector<bool> box_hit, supp_hit;
  for (size_t l = 0; l < L; ++l) {
    const IdealLattice& b = family.ideal(l);
    require(b.norm() <= zi(static_cast<i64>(residue_cap)), errc::size_overflow,
            "fiber scan above the residue cap");
    detail::scan_residues(w, b, box_hit, supp_hit);
    u64 n = static_cast<u64>(b.norm().get_ui());
    FiberLevel lv;
    for (u64 g = 0; g < n; ++g) {
      u64 neg = detail::negated_index(b, g);  // a in b_l - g  <=>  a = -g (mod b_l)
      if (!box_hit[neg])
        lv.untested.push_back(g);
      else if (!supp_hit[neg])
        lv.members.push_back(g);
    }
    lv.complete = lv.untested.empty();
    report.levels.push_back(std::move(lv));
  }
  return report;
}

// Same scan reported in the joining orientation: residues negated.
inline FiberReport joining_fiber(const Window& w, const BFamily& family, size_t L,
                                 u64 residue_cap = u64(1) << 24) {
  FiberReport theta = theta_window(w, family, L, residue_cap);
  FiberReport out;
  for (size_t l = 0; l < theta.levels.size(); ++l) {
    const IdealLattice& b = family.ideal(l);
    FiberLevel lv;
    lv.complete = theta.levels[l].complete;
    for (u64 g : theta.levels[l].members) lv.members.push_back(detail::negated_index(b, g));
    for (u64 g : theta.levels[l].untested) lv.untested.push_back(detail::negated_index(b, g));
    std::sort(lv.members.begin(), lv.members.end());
    std::sort(lv.untested.begin(), lv.untested.end());
    out.levels.push_back(std::move(lv));
  }
  return out;
}

// w <= phi(theta(w)) pointwise on the box. Requires theta to be
// single-valued on the window data; otherwise Inconclusive.
inline bool check_phi_theta(const Window& w, const BFamily& family, size_t L) {
  FiberReport th = theta_window(w, family, L);
  require(th.all_singletons(), errc::inconclusive,
          "theta is not single-valued on this window");
  std::vector<RingElement> rs;
  for (size_t l = 0; l < L; ++l)
    rs.emplace_back(family.order(), family.ideal(l).residue_at(th.levels[l].members[0]));
  GroupPoint g = GroupPoint::canonical(family, L, std::move(rs));
  Window phi = phi_window(g, w.box(), family, L);
  for (size_t word = 0; word < w.words().size(); ++word)
    if (w.words()[word] & ~phi.words()[word]) return false;
  return true;
}

struct ZeroScan {
  std::vector<std::vector<i64>> positions;  // anchor coordinates, in point order
  std::vector<i64> max_axis_gap;            // per axis; -1 if no line has two occurrences
  u64 interior_count = 0;
};

// All interior anchors a whose translated shape (a rectangle of the given
// lengths) lies entirely on zeros. Gap statistics: along each axis, the
// maximum difference between consecutive occurrences on any grid line.
inline ZeroScan zero_window_scan(const Window& w, const std::vector<i64>& shape_lengths) {
  const Box& box = w.box();
  int d = box.dim();
  require(static_cast<int>(shape_lengths.size()) == d, errc::invalid_argument, "shape dimension mismatch");
  std::vector<i64> ilo = box.los(), ihi = box.his();
  for (int t = 0; t < d; ++t) {
    require(shape_lengths[static_cast<size_t>(t)] >= 1, errc::invalid_argument, "shape length must be >= 1");
    ihi[static_cast<size_t>(t)] -= shape_lengths[static_cast<size_t>(t)] - 1;
    require(ilo[static_cast<size_t>(t)] <= ihi[static_cast<size_t>(t)], errc::empty_interior,
            "shape does not fit inside the window");
  }
  Box interior(ilo, ihi);
  Box shape = Box::from_lengths(shape_lengths);
  // linear index offsets of the shape cells
  std::vector<u64> offsets;
  shape.for_each_point([&](const std::vector<i64>& u, u64) {
    std::vector<i64> p = box.los();
    for (int t = 0; t < d; ++t) p[static_cast<size_t>(t)] += u[static_cast<size_t>(t)];
    offsets.push_back(box.index_of(p));
  });
  ZeroScan out;
  out.max_axis_gap.assign(static_cast<size_t>(d), -1);
  interior.for_each_point([&](const std::vector<i64>& a, u64) {
    ++out.interior_count;
    u64 base = w.box().index_of(a);
    for (u64 off : offsets)
      if (w.bit(base + off)) return;
    out.positions.push_back(a);
  });
  // per-axis gap statistics over grid lines
  for (int t = 0; t < d; ++t) {
    std::map<std::vector<i64>, i64> last;
    for (const auto& p : out.positions) {
      std::vector<i64> key;
      key.reserve(static_cast<size_t>(d) - 1);
      for (int u = 0; u < d; ++u)
        if (u != t) key.push_back(p[static_cast<size_t>(u)]);
      auto it = last.find(key);
      if (it != last.end()) {
        i64 gap = p[static_cast<size_t>(t)] - it->second;
        if (gap > out.max_axis_gap[static_cast<size_t>(t)]) out.max_axis_gap[static_cast<size_t>(t)] = gap;
        it->second = p[static_cast<size_t>(t)];
      } else {
        last.emplace(std::move(key), p[static_cast<size_t>(t)]);
      }
    }
  }
  return out;
}

}  // namespace bfree
