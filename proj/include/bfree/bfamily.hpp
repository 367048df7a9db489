#pragma once

// An ordered family {b_l} of pairwise coprime proper ideals, stored as a
// finite prefix in canonical order (ascending norm, lexicographic basis
// tie-break) together with the exact partial sum of 1/N(b_l) and, for
// prime-power families, a rigorous analytic bound on the omitted tail.
// Truncation indices L throughout the library refer to this order.

#include <map>
#include <string>
#include <vector>

#include "bfree/bigint.hpp"
#include "bfree/errors.hpp"
#include "bfree/factor.hpp"
#include "bfree/ideal.hpp"

namespace bfree {

// Rational upper bound on zeta(k), k >= 2: partial sum plus integral tail.
inline Rat zeta_upper_bound(int k) {
  require(k >= 2, errc::invalid_argument, "zeta bound needs k >= 2");
  Rat s(0);
  const i64 cut = 32;
  for (i64 n = 1; n <= cut; ++n) {
    Int nk;
    mpz_ui_pow_ui(nk.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    Rat term{Int(1), nk};
    term.canonicalize();
    s += term;
  }
  Int ck1;  // cut^{k-1}
  mpz_ui_pow_ui(ck1.get_mpz_t(), static_cast<unsigned long>(cut), static_cast<unsigned long>(k - 1));
  Rat tail{Int(1), ck1 * (k - 1)};
  tail.canonicalize();
  return s + tail;
}

class BFamily {
 public:
  // Explicit family: each ideal given by a list of generator coordinate
  // vectors. Verifies pairwise coprimality, properness, no duplicates.
  static BFamily explicit_family(const OrderHandle& order,
                                 const std::vector<std::vector<std::vector<i64>>>& generator_lists) {
    require(!generator_lists.empty(), errc::empty_family, "explicit family has no ideals");
    std::vector<IdealLattice> ideals;
    for (const auto& gens : generator_lists) {
      std::vector<RingElement> elems;
      for (const auto& coords : gens) elems.emplace_back(order, coords);
      ideals.push_back(IdealLattice::from_generators(order, elems));
    }
    return BFamily(order, std::move(ideals), Rat(0), "explicit");
  }

  static BFamily from_ideals(const OrderHandle& order, std::vector<IdealLattice> ideals,
                             Rat tail_bound = Rat(0), std::string provenance = "explicit") {
    require(!ideals.empty(), errc::empty_family, "family has no ideals");
    return BFamily(order, std::move(ideals), std::move(tail_bound), std::move(provenance));
  }

  // All p^k with N(p^k) <= norm_bound, p running over the prime ideals above
  // the rational primes, k >= 2.
  static BFamily prime_power(const OrderHandle& order, int k, i64 norm_bound, bool assert_maximal = false) {
    require(k >= 2, errc::invalid_argument, "prime-power family needs exponent k >= 2");
    require(norm_bound >= 2, errc::empty_family, "norm bound too small");
    int d = order->degree();
    // N(p^k) = q^{fk} <= M forces q <= M^{1/k}
    i64 qmax = 1;
    while (true) {
      i64 next = qmax + 1;
      i128 pw = 1;
      bool over = false;
      for (int i = 0; i < k; ++i) {
        pw *= next;
        if (pw > norm_bound) { over = true; break; }
      }
      if (over) break;
      qmax = next;
    }
    std::vector<IdealLattice> ideals;
    for (i64 q : primes_up_to(qmax)) {
      for (auto& pf : factor_rational_prime(order, q, assert_maximal)) {
        Int nk;
        mpz_pow_ui(nk.get_mpz_t(), pf.ideal.norm().get_mpz_t(), static_cast<unsigned long>(k));
        if (nk <= zi(norm_bound)) ideals.push_back(ideal_pow(pf.ideal, k));
      }
    }
    require(!ideals.empty(), errc::empty_family, "no prime powers under the norm bound");
    // analytic tail: every omitted prime has N(p) > B := floor(M^{1/k}) = qmax;
    // sum_{N(p)>B} N(p)^{-k} <= sum_{n>B} tau_d(n) n^{-k}
    //                        <= d * zeta(k)^{d-1} * t^{1-k}/(k-1),  t = floor(B^{1/d})
    const i64 B = qmax;
    i64 t = 1;
    while (true) {
      i64 next = t + 1;
      i128 pw = 1;
      bool over = false;
      for (int i = 0; i < d; ++i) {
        pw *= next;
        if (pw > B) { over = true; break; }
      }
      if (over) break;
      t = next;
    }
    Int tk1;
    mpz_ui_pow_ui(tk1.get_mpz_t(), static_cast<unsigned long>(t), static_cast<unsigned long>(k - 1));
    Rat tail{zi(d), tk1 * (k - 1)};
    tail.canonicalize();
    Rat zb = zeta_upper_bound(k);
    for (int i = 1; i < d; ++i) tail *= zb;
    return BFamily(order, std::move(ideals),
                   tail, "prime_power k=" + std::to_string(k) + " M=" + std::to_string(norm_bound));
  }

  const OrderHandle& order() const { return order_; }
  size_t size() const { return ideals_.size(); }
  const IdealLattice& ideal(size_t l) const { return ideals_[l]; }
  const std::vector<IdealLattice>& ideals() const { return ideals_; }
  const Rat& partial_sum() const { return partial_sum_; }
  const Rat& tail_bound() const { return tail_bound_; }
  const std::string& provenance() const { return provenance_; }

  // Sum of 1/N over stored ideals beyond index L, plus the analytic tail.
  Rat beyond(size_t L) const {
    require(L <= size(), errc::invalid_argument, "truncation exceeds stored prefix");
    Rat s = tail_bound_;
    for (size_t l = L; l < size(); ++l) {
      Rat term{Int(1), ideals_[l].norm()};
      term.canonicalize();
      s += term;
    }
    return s;
  }

  // Largest prefix whose ideals all have norm <= cutoff.
  size_t prefix_by_norm(i64 cutoff) const {
    size_t L = 0;
    while (L < size() && ideals_[L].norm() <= zi(cutoff)) ++L;
    return L;
  }

 private:
  BFamily(const OrderHandle& order, std::vector<IdealLattice> ideals, Rat tail, std::string prov)
      : order_(order), ideals_(std::move(ideals)), tail_bound_(std::move(tail)), provenance_(std::move(prov)) {
    for (const auto& b : ideals_) {
      require_same_order(order_, b.order());
      require(!b.is_unit_ideal(), errc::invalid_argument, "family ideal must be proper (norm > 1)");
    }
    std::sort(ideals_.begin(), ideals_.end(), IdealLattice::canonical_less);
    for (size_t i = 0; i + 1 < ideals_.size(); ++i)
      require(!(ideals_[i] == ideals_[i + 1]), errc::not_coprime, "duplicate ideal in family");
    for (size_t i = 0; i < ideals_.size(); ++i)
      for (size_t j = i + 1; j < ideals_.size(); ++j)
        require(is_coprime(ideals_[i], ideals_[j]), errc::not_coprime,
                "family ideals at positions " + std::to_string(i) + " and " + std::to_string(j) +
                    " are not coprime");
    partial_sum_ = 0;
    for (const auto& b : ideals_) {
      Rat term{Int(1), b.norm()};
      term.canonicalize();
      partial_sum_ += term;
    }
  }

  OrderHandle order_;
  std::vector<IdealLattice> ideals_;
  Rat partial_sum_;
  Rat tail_bound_;
  std::string provenance_;
};

}  // namespace bfree
