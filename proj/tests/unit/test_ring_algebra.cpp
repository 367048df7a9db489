#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "bfree/bfamily.hpp"
#include "bfree/factor.hpp"
#include "bfree/ideal.hpp"
#include "bfree/order.hpp"

using namespace bfree;

namespace {

OrderHandle gaussian() { return FieldOrder::make({1, 0, 1}); }
OrderHandle integers() { return FieldOrder::make({0, 1}); }

RingElement ze(const OrderHandle& o, i64 v) { return RingElement::integer(o, v); }

RingElement rand_elem(const OrderHandle& o, std::mt19937_64& rng, i64 span) {
  std::vector<i64> c(static_cast<size_t>(o->degree()));
  for (auto& v : c) v = static_cast<i64>(rng() % static_cast<u64>(2 * span + 1)) - span;
  return {o, std::move(c)};
}

RingElement rand_nonzero(const OrderHandle& o, std::mt19937_64& rng, i64 span) {
  while (true) {
    auto e = rand_elem(o, rng, span);
    if (!e.is_zero()) return e;
  }
}

}  // namespace

TEST_CASE("make_order accepts the standard examples") {
  auto gi = gaussian();
  CHECK(gi->degree() == 2);
  auto z = integers();
  CHECK(z->degree() == 1);
  CHECK_THROWS_MATCHES(FieldOrder::make({0, -1, 1}), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return e.code() == errc::reducible; }));
  CHECK_THROWS_MATCHES(FieldOrder::make({1, 0, 2}), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return e.code() == errc::not_monic; }));
  CHECK_THROWS_MATCHES(FieldOrder::make({1, 0, 0, 0, 0, 0, 0, 1}), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return e.code() == errc::degree_too_large; }));
  // configurable cap
  CHECK_NOTHROW(FieldOrder::make({1, 0, 0, 0, 0, 0, 0, 1}, 7));
  // x^4+1 is irreducible over Q but splits modulo every prime
  CHECK_NOTHROW(FieldOrder::make({1, 0, 0, 0, 1}));
}

TEST_CASE("multiplication table matches the reduction of theta powers") {
  auto o = FieldOrder::make({-2, -1, 0, 1});  // x^3 - x - 2
  int d = o->degree();
  auto theta = RingElement::theta(o);
  RingElement p = RingElement::integer(o, 1);
  for (int k = 0; k <= 2 * (d - 1); ++k) {
    CHECK(p.coords() == o->theta_power(k));
    p = elem_mul(p, theta);
  }
}

TEST_CASE("element arithmetic in Z[i] and Z") {
  auto gi = gaussian();
  auto th = RingElement::theta(gi);
  auto one = ze(gi, 1);
  CHECK(elem_mul(elem_add(one, th), elem_sub(one, th)) == ze(gi, 2));
  CHECK(elem_mul(th, th) == ze(gi, -1));
  auto z = integers();
  CHECK(elem_mul(ze(z, 3), ze(z, 4)) == ze(z, 12));
  // overflow is detected, not wrapped
  auto big = RingElement(gi, {i64(1) << 62, 0});
  CHECK_THROWS_MATCHES(elem_mul(big, ze(gi, 4)), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return e.code() == errc::overflow; }));
}

TEST_CASE("principal ideals: bases, norms, zero rejection") {
  auto gi = gaussian();
  auto two = IdealLattice::principal(ze(gi, 2));
  CHECK(two.norm() == 4);
  CHECK(two.diag(0) == 2);
  CHECK(two.diag(1) == 2);
  CHECK(two.entry(0, 1) == 0);
  auto th = RingElement::theta(gi);
  auto p = IdealLattice::principal(elem_add(ze(gi, 1), th));
  CHECK(p.norm() == 2);
  CHECK_THROWS_MATCHES(IdealLattice::principal(RingElement::zero(gi)), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return e.code() == errc::zero_element; }));
  // |field norm| agrees with the lattice determinant
  std::mt19937_64 rng(11);
  for (int it = 0; it < 100; ++it) {
    auto e = rand_nonzero(gi, rng, 8);
    Int fn = elem_field_norm(e);
    if (fn < 0) fn = -fn;
    CHECK(IdealLattice::principal(e).norm() == fn);
  }
}

TEST_CASE("ideal sums and coprimality") {
  auto z = integers();
  auto i2 = IdealLattice::principal(ze(z, 2));
  auto i3 = IdealLattice::principal(ze(z, 3));
  auto i4 = IdealLattice::principal(ze(z, 4));
  auto i6 = IdealLattice::principal(ze(z, 6));
  CHECK(ideal_sum(i2, i3).is_unit_ideal());
  CHECK(is_coprime(i2, i3));
  CHECK(ideal_sum(i4, i6) == i2);
  CHECK_FALSE(is_coprime(i4, i6));
  // (1+theta) + (1-theta) in Z[i] is (1+theta) itself: 1-i = -i(1+i)
  auto gi = gaussian();
  auto th = RingElement::theta(gi);
  auto a = IdealLattice::principal(elem_add(ze(gi, 1), th));
  auto b = IdealLattice::principal(elem_sub(ze(gi, 1), th));
  CHECK(ideal_sum(a, b) == a);
  CHECK_FALSE(is_coprime(a, b));
}

TEST_CASE("ideal products and norm multiplicativity") {
  auto z = integers();
  CHECK(ideal_product(IdealLattice::principal(ze(z, 2)), IdealLattice::principal(ze(z, 3))) ==
        IdealLattice::principal(ze(z, 6)));
  auto gi = gaussian();
  auto th = RingElement::theta(gi);
  auto p = IdealLattice::principal(elem_add(ze(gi, 1), th));
  auto sq = ideal_product(p, p);
  CHECK(sq == IdealLattice::principal(ze(gi, 2)));  // (1+i)^2 = 2i, i a unit
  CHECK(sq.norm() == 4);
  std::mt19937_64 rng(5);
  auto cubic = FieldOrder::make({-2, 0, 0, 1});
  for (const auto& o : {z, gi, cubic}) {
    for (int it = 0; it < 60; ++it) {
      auto a = IdealLattice::principal(rand_nonzero(o, rng, 6));
      auto b = IdealLattice::principal(rand_nonzero(o, rng, 6));
      CHECK(ideal_product(a, b).norm() == a.norm() * b.norm());
    }
  }
}

TEST_CASE("membership by back-substitution") {
  auto z = integers();
  CHECK(IdealLattice::principal(ze(z, 2)).contains(ze(z, 6)));
  auto gi = gaussian();
  auto two = IdealLattice::principal(ze(gi, 2));
  auto th = RingElement::theta(gi);
  CHECK_FALSE(two.contains(elem_add(ze(gi, 1), th)));
  CHECK(IdealLattice::principal(elem_add(ze(gi, 1), th)).contains(ze(gi, 2)));
  // membership iff zero residue
  std::mt19937_64 rng(17);
  for (int it = 0; it < 300; ++it) {
    auto b = IdealLattice::principal(rand_nonzero(gi, rng, 5));
    auto e = rand_elem(gi, rng, 30);
    CHECK(b.contains(e) == (b.residue_rep(e) == RingElement::zero(gi)));
  }
}

TEST_CASE("canonical residues") {
  auto z = integers();
  auto i2 = IdealLattice::principal(ze(z, 2));
  CHECK(i2.residue_rep(ze(z, 5)) == ze(z, 1));
  auto gi = gaussian();
  auto two = IdealLattice::principal(ze(gi, 2));
  CHECK(two.residue_rep(RingElement::theta(gi)).coords() == std::vector<i64>{0, 1});
  auto rs = two.residues();
  REQUIRE(rs.size() == 4);
  std::set<std::vector<i64>> seen;
  for (const auto& r : rs) {
    CHECK(two.residue_rep(r) == r);
    seen.insert(r.coords());
  }
  CHECK(seen == std::set<std::vector<i64>>{{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  // enumeration cap
  auto big = IdealLattice::principal(ze(gi, 3000));
  CHECK_THROWS_MATCHES(big.residues(1000), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return e.code() == errc::size_overflow; }));
}

TEST_CASE("crt examples with an exhaustive oracle") {
  auto z = integers();
  auto i2 = IdealLattice::principal(ze(z, 2));
  auto i3 = IdealLattice::principal(ze(z, 3));
  // independent oracle: scan residues 0..5 for the solution
  i64 expected = -1;
  for (i64 x = 0; x < 6; ++x)
    if (x % 2 == 1 && x % 3 == 0) expected = x;
  REQUIRE(expected == 3);
  CHECK(crt({ze(z, 1), ze(z, 0)}, {i2, i3}) == ze(z, expected));
  CHECK(crt({ze(z, 0), ze(z, 0)}, {i2, i3}) == ze(z, 0));
  auto i4 = IdealLattice::principal(ze(z, 4));
  auto i6 = IdealLattice::principal(ze(z, 6));
  CHECK_THROWS_MATCHES(crt({ze(z, 0), ze(z, 0)}, {i4, i6}), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return e.code() == errc::not_coprime; }));
}

TEST_CASE("crt satisfies every congruence on random coprime inputs") {
  std::mt19937_64 rng(23);
  auto gi = gaussian();
  auto z = integers();
  int done = 0;
  while (done < 150) {
    const OrderHandle& o = (done % 2) ? gi : z;
    auto a = IdealLattice::principal(rand_nonzero(o, rng, 5));
    auto b = IdealLattice::principal(rand_nonzero(o, rng, 5));
    if (!is_coprime(a, b)) continue;
    auto ra = rand_elem(o, rng, 25), rb = rand_elem(o, rng, 25);
    auto x = crt({ra, rb}, {a, b});
    CHECK(a.residue_rep(x) == a.residue_rep(ra));
    CHECK(b.residue_rep(x) == b.residue_rep(rb));
    ++done;
  }
  // a coprime triple
  auto i5 = IdealLattice::principal(ze(z, 5));
  auto i7 = IdealLattice::principal(ze(z, 7));
  auto i9 = IdealLattice::principal(ze(z, 9));
  auto x = crt({ze(z, 2), ze(z, 3), ze(z, 4)}, {i5, i7, i9});
  CHECK(i5.residue_rep(x) == ze(z, 2));
  CHECK(i7.residue_rep(x) == ze(z, 3));
  CHECK(i9.residue_rep(x) == ze(z, 4));
}

TEST_CASE("rational prime factorization in Z[i]") {
  auto gi = gaussian();
  auto f5 = factor_rational_prime(gi, 5);
  REQUIRE(f5.size() == 2);
  CHECK(f5[0].ideal.norm() == 5);
  CHECK(f5[1].ideal.norm() == 5);
  CHECK((f5[0].ramification == 1 && f5[0].residue_degree == 1));
  auto f3 = factor_rational_prime(gi, 3);
  REQUIRE(f3.size() == 1);
  CHECK(f3[0].ideal.norm() == 9);
  CHECK(f3[0].residue_degree == 2);
  CHECK_THROWS_MATCHES(factor_rational_prime(gi, 2), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return e.code() == errc::unsafe_prime; }));
  auto f2 = factor_rational_prime(gi, 2, true);
  REQUIRE(f2.size() == 1);
  CHECK(f2[0].ramification == 2);
  CHECK(f2[0].ideal.norm() == 2);
  CHECK_THROWS_MATCHES(factor_rational_prime(gi, 10), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return e.code() == errc::not_prime; }));
}

TEST_CASE("factorization recombines to (p) with degree sum d") {
  auto orders = {integers(), gaussian(), FieldOrder::make({-2, 0, 0, 1}), FieldOrder::make({1, 1, 1})};
  for (const auto& o : orders) {
    for (i64 p : primes_up_to(50)) {
      std::vector<PrimeFactor> fs;
      try {
        fs = factor_rational_prime(o, p);
      } catch (const Error& e) {
        REQUIRE(e.code() == errc::unsafe_prime);
        fs = factor_rational_prime(o, p, true);  // these test orders are maximal
      }
      int dsum = 0;
      auto prod = IdealLattice::principal(RingElement::integer(o, 1));
      for (const auto& pf : fs) {
        dsum += pf.ramification * pf.residue_degree;
        for (int i = 0; i < pf.ramification; ++i) prod = ideal_product(prod, pf.ideal);
      }
      CHECK(dsum == o->degree());
      CHECK(prod == IdealLattice::principal(RingElement::integer(o, p)));
    }
  }
}

TEST_CASE("prime-power family construction") {
  auto gi = gaussian();
  auto fam = BFamily::prime_power(gi, 2, 100, true);
  REQUIRE(fam.size() == 4);
  CHECK(fam.ideal(0).norm() == 4);
  CHECK(fam.ideal(1).norm() == 25);
  CHECK(fam.ideal(2).norm() == 25);
  CHECK(fam.ideal(3).norm() == 81);
  CHECK_THROWS_MATCHES(BFamily::prime_power(gi, 1, 100, true), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return e.code() == errc::invalid_argument; }));
}

TEST_CASE("explicit families: partial sums, coprimality, canonical order") {
  auto z = integers();
  auto fam = BFamily::explicit_family(z, {{{4}}, {{9}}});
  CHECK(fam.size() == 2);
  CHECK(fam.partial_sum() == rat(13, 36));
  CHECK_THROWS_MATCHES(BFamily::explicit_family(z, {{{4}}, {{6}}}), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return e.code() == errc::not_coprime; }));
  CHECK_THROWS_MATCHES(BFamily::explicit_family(z, {}), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return e.code() == errc::empty_family; }));
  CHECK_THROWS_MATCHES(BFamily::explicit_family(z, {{{4}}, {{4}}}), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return e.code() == errc::not_coprime; }));
  // input order never matters
  auto fa = BFamily::explicit_family(z, {{{9}}, {{25}}, {{4}}});
  auto fb = BFamily::explicit_family(z, {{{4}}, {{9}}, {{25}}});
  for (size_t l = 0; l < 3; ++l) CHECK(fa.ideal(l) == fb.ideal(l));
}

TEST_CASE("hnf canonical form is idempotent") {
  std::mt19937_64 rng(29);
  for (const auto& o : {integers(), gaussian(), FieldOrder::make({-2, 0, 0, 1})}) {
    for (int it = 0; it < 80; ++it) {
      auto b = IdealLattice::principal(rand_nonzero(o, rng, 9));
      std::vector<std::vector<Int>> cols;
      for (int j = 0; j < o->degree(); ++j) cols.push_back(b.column_mpz(j));
      CHECK(IdealLattice::from_columns(o, cols) == b);
    }
  }
}

TEST_CASE("degree one reduces to integer gcd and lcm arithmetic") {
  auto z = integers();
  std::mt19937_64 rng(31);
  for (int it = 0; it < 1000; ++it) {
    i64 a = static_cast<i64>(rng() % 2000) - 1000;
    i64 b = static_cast<i64>(rng() % 2000) - 1000;
    if (a == 0 || b == 0) continue;
    auto ia = IdealLattice::principal(ze(z, a));
    auto ib = IdealLattice::principal(ze(z, b));
    CHECK(ia.diag(0) == (a < 0 ? -a : a));
    CHECK(ideal_sum(ia, ib).diag(0) == std::gcd(a, b));
    CHECK(ideal_product(ia, ib).diag(0) == (a < 0 ? -a : a) * (b < 0 ? -b : b));
    i64 c = static_cast<i64>(rng() % 600) - 300;
    CHECK(ia.contains(ze(z, c)) == (c % a == 0));
    CHECK(ia.residue_rep(ze(z, c)).coord(0) == mod_floor(c, ia.diag(0)));
  }
}
