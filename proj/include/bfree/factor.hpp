#pragma once

// Rational prime factorization in a monogenic order (Kummer-Dedekind): the
// factorization of (p) is read off from the factorization of f mod p. Valid
// when p does not divide the index [O_K : Z[theta]]; the safe-mode gate
// rejects p with p^2 | disc(f) unless the caller asserts the order is
// maximal.

#include <vector>

#include "bfree/errors.hpp"
#include "bfree/ideal.hpp"
#include "bfree/order.hpp"
#include "bfree/poly.hpp"

namespace bfree {

inline bool is_prime_i64(i64 n) {
  if (n < 2) return false;
  for (i64 q : {2, 3, 5, 7, 11, 13}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  for (i64 q = 17; q * q <= n; q += 6) {
    if (n % q == 0 || n % (q + 2) == 0) return false;
  }
  return n % 2 && n % 3;
}

inline std::vector<i64> primes_up_to(i64 n) {
  std::vector<i64> out;
  if (n < 2) return out;
  std::vector<bool> comp(static_cast<size_t>(n) + 1, false);
  for (i64 p = 2; p <= n; ++p) {
    if (comp[static_cast<size_t>(p)]) continue;
    out.push_back(p);
    for (i64 m = p * p; m <= n; m += p) comp[static_cast<size_t>(m)] = true;
  }
  return out;
}

struct PrimeFactor {
  IdealLattice ideal;
  int ramification;    // e
  int residue_degree;  // f = deg g_i, so N = p^f
  std::vector<i64> gen_poly;  // g_i as coefficients of a polynomial in theta
};

// Factors (p) into prime ideals (p, g_i(theta)) with multiplicities e_i.
// Sorted by (norm, basis). Sum of e_i * f_i equals the degree.
inline std::vector<PrimeFactor> factor_rational_prime(const OrderHandle& order, i64 p,
                                                      bool assert_maximal = false) {
  require(is_prime_i64(p), errc::not_prime, std::to_string(p) + " is not prime");
  require(p < (i64(1) << 31), errc::size_overflow, "prime too large for residue arithmetic");
  if (!assert_maximal) {
    const Int& disc = order->discriminant();
    Int p2 = zi(p) * zi(p);
    require(disc % p2 != 0, errc::unsafe_prime,
            "p^2 divides disc(f) for p = " + std::to_string(p) +
                "; assert maximality to factor anyway");
  }
  ZPoly f(order->poly().size());
  for (size_t i = 0; i < f.size(); ++i) f[i] = zi(order->poly()[i]);
  auto factors = fp_factor(fp_from_z(f, p), p);
  std::vector<PrimeFactor> out;
  int degree_sum = 0;
  for (auto& [g, e] : factors) {
    RingElement gen = RingElement::zero(order);
    RingElement tp = RingElement::integer(order, 1);
    for (size_t i = 0; i < g.size(); ++i) {
      if (g[i] != 0) {
        std::vector<i64> scaled(tp.coords());
        for (auto& c : scaled) c = checked_mul(c, g[i]);
        gen = elem_add(gen, RingElement(order, scaled));
      }
      if (i + 1 < g.size()) tp = elem_mul(tp, RingElement::theta(order));
    }
    IdealLattice pri = IdealLattice::from_generators(order, {RingElement::integer(order, p), gen});
    int fdeg = fp_deg(g);
    Int expect;
    mpz_ui_pow_ui(expect.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(fdeg));
    require(pri.norm() == expect, errc::invalid_argument, "internal: prime ideal norm mismatch");
    degree_sum += e * fdeg;
    out.push_back({std::move(pri), e, fdeg, g});
  }
  require(degree_sum == order->degree(), errc::invalid_argument, "internal: degree sum mismatch");
  std::sort(out.begin(), out.end(), [](const PrimeFactor& a, const PrimeFactor& b) {
    return IdealLattice::canonical_less(a.ideal, b.ideal);
  });
  return out;
}

}  // namespace bfree
