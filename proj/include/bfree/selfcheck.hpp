#pragma once

// Seeded invariant battery behind the `selfcheck` CLI verb. One line per
// suite; returns false if anything failed.

#include <functional>
#include <ostream>
#include <random>
#include <set>
#include <vector>

#include "bfree/dynamics.hpp"
#include "bfree/entropy.hpp"
#include "bfree/factor.hpp"
#include "bfree/measure.hpp"
#include "bfree/sieve.hpp"

namespace bfree {

namespace detail {

inline RingElement random_element(const OrderHandle& o, std::mt19937_64& rng, i64 span) {
  std::vector<i64> c(static_cast<size_t>(o->degree()));
  for (auto& v : c) v = static_cast<i64>(rng() % static_cast<u64>(2 * span + 1)) - span;
  return {o, std::move(c)};
}

inline RingElement random_nonzero(const OrderHandle& o, std::mt19937_64& rng, i64 span) {
  while (true) {
    RingElement e = random_element(o, rng, span);
    if (!e.is_zero()) return e;
  }
}

}  // namespace detail

inline bool run_selfcheck(std::ostream& os, u64 seed) {
  std::mt19937_64 rng(seed);
  auto z = FieldOrder::make({0, 1});
  auto gi = FieldOrder::make({1, 0, 1});
  auto cubic = FieldOrder::make({-2, 0, 0, 1});  // x^3 - 2
  std::vector<OrderHandle> orders{z, gi, cubic};
  bool all_ok = true;

  auto suite = [&](const char* name, const std::function<bool()>& fn) {
    bool ok = false;
    std::string note;
    try {
      ok = fn();
    } catch (const std::exception& e) {
      note = std::string(" (") + e.what() + ")";
    }
    os << (ok ? "[ok]   " : "[FAIL] ") << name << note << "\n";
    all_ok = all_ok && ok;
  };

  suite("hnf canonical form is idempotent", [&] {
    for (int it = 0; it < 200; ++it) {
      const OrderHandle& o = orders[it % orders.size()];
      IdealLattice b = IdealLattice::principal(detail::random_nonzero(o, rng, 9));
      std::vector<std::vector<Int>> cols;
      for (int j = 0; j < o->degree(); ++j) cols.push_back(b.column_mpz(j));
      if (!(IdealLattice::from_columns(o, cols) == b)) return false;
    }
    return true;
  });

  suite("ideal norm is multiplicative", [&] {
    for (int it = 0; it < 200; ++it) {
      const OrderHandle& o = orders[it % orders.size()];
      IdealLattice a = IdealLattice::principal(detail::random_nonzero(o, rng, 6));
      IdealLattice b = IdealLattice::principal(detail::random_nonzero(o, rng, 6));
      if (ideal_product(a, b).norm() != a.norm() * b.norm()) return false;
    }
    return true;
  });

  suite("membership iff zero residue", [&] {
    for (int it = 0; it < 500; ++it) {
      const OrderHandle& o = orders[it % orders.size()];
      IdealLattice b = IdealLattice::principal(detail::random_nonzero(o, rng, 5));
      RingElement a = detail::random_element(o, rng, 40);
      bool zero = b.residue_rep(a) == RingElement::zero(o);
      if (b.contains(a) != zero) return false;
    }
    return true;
  });

  suite("residues enumerate N(b) distinct fixed points", [&] {
    for (int it = 0; it < 40; ++it) {
      const OrderHandle& o = orders[it % 2];  // keep norms small
      IdealLattice b = IdealLattice::principal(detail::random_nonzero(o, rng, 3));
      if (b.norm() > 200) continue;
      auto rs = b.residues();
      std::set<std::vector<i64>> seen;
      for (const auto& r : rs) {
        if (!(b.residue_rep(r) == r)) return false;
        seen.insert(r.coords());
      }
      if (zi(static_cast<i64>(seen.size())) != b.norm()) return false;
    }
    return true;
  });

  suite("crt solves every congruence it is given", [&] {
    for (int it = 0; it < 100; ++it) {
      const OrderHandle& o = orders[it % orders.size()];
      IdealLattice a = IdealLattice::principal(detail::random_nonzero(o, rng, 4));
      IdealLattice b = IdealLattice::principal(detail::random_nonzero(o, rng, 4));
      if (!is_coprime(a, b)) continue;
      RingElement ra = detail::random_element(o, rng, 20), rb = detail::random_element(o, rng, 20);
      RingElement x = crt({ra, rb}, {a, b});
      if (!(a.residue_rep(x) == a.residue_rep(ra))) return false;
      if (!(b.residue_rep(x) == b.residue_rep(rb))) return false;
    }
    return true;
  });

  suite("rational prime factorization recombines to (p)", [&] {
    for (const OrderHandle& o : orders) {
      for (i64 p : primes_up_to(30)) {
        std::vector<PrimeFactor> fs;
        try {
          fs = factor_rational_prime(o, p);
        } catch (const Error& e) {
          if (e.code() == errc::unsafe_prime) continue;
          throw;
        }
        int dsum = 0;
        IdealLattice prod = IdealLattice::principal(RingElement::integer(o, 1));
        for (auto& pf : fs) {
          dsum += pf.ramification * pf.residue_degree;
          for (int i = 0; i < pf.ramification; ++i) prod = ideal_product(prod, pf.ideal);
        }
        if (dsum != o->degree()) return false;
        if (!(prod == IdealLattice::principal(RingElement::integer(o, p)))) return false;
      }
    }
    return true;
  });

  suite("degree-1 ideals behave like integer gcd arithmetic", [&] {
    for (int it = 0; it < 1000; ++it) {
      i64 a = static_cast<i64>(rng() % 2000) - 1000, b = static_cast<i64>(rng() % 2000) - 1000;
      if (a == 0 || b == 0) continue;
      IdealLattice ia = IdealLattice::principal(RingElement::integer(z, a));
      IdealLattice ib = IdealLattice::principal(RingElement::integer(z, b));
      i64 g = std::gcd(a, b);
      if (ideal_sum(ia, ib).diag(0) != g) return false;
      if (ideal_product(ia, ib).norm() != zi(a) * zi(b) * (a * b < 0 ? -1 : 1)) return false;
      i64 c = static_cast<i64>(rng() % 400) - 200;
      if (ia.contains(RingElement::integer(z, c)) != (c % a == 0)) return false;
    }
    return true;
  });

  suite("sieve agrees with per-point membership", [&] {
    auto fam = BFamily::explicit_family(z, {{{4}}, {{9}}, {{25}}});
    Box box = Box::folner(1, 2000);
    Window w = sieve_window(fam, box, 3);
    for (int it = 0; it < 1000; ++it) {
      i64 x = static_cast<i64>(rng() % 4001) - 2000;
      if (w.bit(box.index_of({x})) != bfree_at(fam, 3, RingElement::integer(z, x))) return false;
    }
    auto famg = BFamily::prime_power(gi, 2, 100, true);
    Box boxg = Box::folner(2, 30);
    Window wg = sieve_window(famg, boxg, famg.size());
    for (int it = 0; it < 1000; ++it) {
      i64 x = static_cast<i64>(rng() % 61) - 30, y = static_cast<i64>(rng() % 61) - 30;
      if (wg.bit(boxg.index_of({x, y})) != bfree_at(famg, famg.size(), RingElement(gi, {x, y}))) return false;
    }
    return true;
  });

  suite("cylinder measures of a full shape sum to one", [&] {
    auto fam = BFamily::explicit_family(z, {{{4}}, {{9}}});
    std::vector<RingElement> shape{RingElement::integer(z, 0), RingElement::integer(z, 1),
                                   RingElement::integer(z, 2)};
    Rat total(0);
    for (u64 mask = 0; mask < 8; ++mask) {
      std::vector<RingElement> ones, zeros;
      for (size_t i = 0; i < 3; ++i) (mask & (u64(1) << i) ? ones : zeros).push_back(shape[i]);
      total += mirsky_cylinder(Pattern(ones, zeros), fam, 2).value;
    }
    return total == 1;
  });

  suite("counting engines agree on small boxes", [&] {
    auto fam = BFamily::explicit_family(z, {{{4}}, {{9}}});
    for (i64 len : {6, 10, 15}) {
      Box box({0}, {len - 1});
      if (count_admissible_ie(box, fam, 2, svector_ones(2)).count !=
          count_admissible_brute(box, fam, 2, svector_ones(2)).count)
        return false;
    }
    return true;
  });

  suite("coding maps: equivariance and recovery", [&] {
    auto fam = BFamily::explicit_family(z, {{{4}}, {{9}}});
    for (int it = 0; it < 100; ++it) {
      GroupPoint g = GroupPoint::random(fam, 2, rng);
      i64 a = static_cast<i64>(rng() % 5) - 2;
      Window w1 = phi_window(g.rotated(fam, RingElement::integer(z, a)), Box::folner(1, 6), fam, 2);
      Window w2 = phi_window(g, Box::folner(1, 8), fam, 2);
      for (i64 x = -6; x <= 6; ++x)
        if (w1.bit(Box::folner(1, 6).index_of({x})) != w2.bit(Box::folner(1, 8).index_of({x + a})))
          return false;
      Window big = phi_window(g, Box::folner(1, 50), fam, 2);
      FiberReport r = theta_window(big, fam, 2);
      if (!r.all_singletons()) return false;
      for (size_t l = 0; l < 2; ++l)
        if (!(fam.ideal(l).residue_at(r.levels[l].members[0]) == g.residue(l).coords())) return false;
    }
    return true;
  });

  suite("family construction is input-order independent", [&] {
    auto f1 = BFamily::explicit_family(z, {{{4}}, {{9}}, {{25}}});
    auto f2 = BFamily::explicit_family(z, {{{25}}, {{4}}, {{9}}});
    for (size_t l = 0; l < 3; ++l)
      if (!(f1.ideal(l) == f2.ideal(l))) return false;
    return density(f1, 3).value == density(f2, 3).value;
  });

  return all_ok;
}

}  // namespace bfree
