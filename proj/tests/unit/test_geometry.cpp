#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "bfree/box.hpp"

using namespace bfree;

TEST_CASE("box point counts and enumeration order") {
  Box b1 = Box::folner(1, 2);
  CHECK(b1.point_count() == 5);
  std::vector<i64> pts;
  b1.for_each_point([&](const std::vector<i64>& x, u64 idx) {
    CHECK(b1.index_of(x) == idx);
    pts.push_back(x[0]);
  });
  CHECK(pts == std::vector<i64>{-2, -1, 0, 1, 2});

  Box b2 = Box::folner(2, 1);
  CHECK(b2.point_count() == 9);
  std::vector<std::vector<i64>> pts2;
  b2.for_each_point([&](const std::vector<i64>& x, u64) { pts2.push_back(x); });
  REQUIRE(pts2.size() == 9);
  // coordinate 0 varies fastest
  CHECK(pts2[0] == std::vector<i64>{-1, -1});
  CHECK(pts2[1] == std::vector<i64>{0, -1});
  CHECK(pts2[3] == std::vector<i64>{-1, 0});
  for (u64 i = 0; i < 9; ++i) CHECK(b2.point_at(i) == pts2[i]);
}

TEST_CASE("box size budget is enforced") {
  Box huge = Box::folner(2, 100000);
  CHECK_THROWS_MATCHES(huge.point_count(1000000), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return e.code() == errc::size_overflow; }));
}

TEST_CASE("H_nm over m^d H_n approaches one") {
  // (2nm+1)^d / (m^d (2n+1)^d), decreasing toward 1 as m grows
  const i64 n = 2;
  for (int d : {1, 2}) {
    Rat prev(-1);
    for (i64 m : {1, 10, 100, 1000}) {
      Int md;
      mpz_ui_pow_ui(md.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(d));
      Rat ratio{Box::folner(d, n * m).point_count_exact(), Box::folner(d, n).point_count_exact() * md};
      ratio.canonicalize();
      CHECK(ratio >= 1);
      if (prev >= 1) CHECK(ratio <= prev);
      prev = ratio;
      if (m == 1000) CHECK(ratio - 1 < rat(2, 1000));
    }
  }
}

TEST_CASE("tile translate centers and covering") {
  auto centers = tile_translates(1, 2, 3);
  REQUIRE(centers.size() == 3);
  CHECK(centers[0] == std::vector<i64>{-4});
  CHECK(centers[1] == std::vector<i64>{0});
  CHECK(centers[2] == std::vector<i64>{4});
  // translates of H_2 centered there cover H_6
  std::set<i64> covered;
  for (const auto& c : centers)
    for (i64 x = c[0] - 2; x <= c[0] + 2; ++x) covered.insert(x);
  for (i64 x = -6; x <= 6; ++x) CHECK(covered.count(x) == 1);

  CHECK(tile_translates(1, 5, 1) == std::vector<std::vector<i64>>{{0}});

  // d=2, n=1, m=2: 4 translates cover all 25 points of H_2
  auto c22 = tile_translates(2, 1, 2);
  REQUIRE(c22.size() == 4);
  std::set<std::pair<i64, i64>> cov2;
  for (const auto& c : c22)
    for (i64 x = c[0] - 1; x <= c[0] + 1; ++x)
      for (i64 y = c[1] - 1; y <= c[1] + 1; ++y) cov2.insert({x, y});
  u64 inside = 0;
  for (i64 x = -2; x <= 2; ++x)
    for (i64 y = -2; y <= 2; ++y) {
      CHECK(cov2.count({x, y}) == 1);
      ++inside;
    }
  CHECK(inside == 25);

  // covering holds on a small grid (overlap permitted)
  for (i64 n : {1, 2}) {
    for (i64 m : {2, 3}) {
      auto cs = tile_translates(2, n, m);
      CHECK(cs.size() == static_cast<size_t>(m * m));
      Box big = Box::folner(2, n * m);
      std::set<std::pair<i64, i64>> cov;
      for (const auto& c : cs)
        for (i64 x = c[0] - n; x <= c[0] + n; ++x)
          for (i64 y = c[1] - n; y <= c[1] + n; ++y) cov.insert({x, y});
      big.for_each_point([&](const std::vector<i64>& p, u64) { CHECK(cov.count({p[0], p[1]}) == 1); });
    }
  }
}

TEST_CASE("nestedness of the folner boxes") {
  for (int d : {1, 2}) {
    for (i64 n = 0; n <= 20; ++n) {
      Box inner = Box::folner(d, n);
      Box outer = Box::folner(d, n + 1);
      inner.for_each_point([&](const std::vector<i64>& x, u64) { CHECK(outer.contains(x)); });
      CHECK(inner.point_count() < outer.point_count());
    }
  }
}

TEST_CASE("folner overlap fraction") {
  // cross-check the closed form with enumeration at n = 20
  Box small = Box::folner(2, 20);
  std::vector<i64> shift{1, -1};
  u64 overlap = 0;
  small.for_each_point([&](const std::vector<i64>& x, u64) {
    std::vector<i64> y{x[0] + shift[0], x[1] + shift[1]};
    if (small.contains(y)) ++overlap;
  });
  CHECK(small.overlap_fraction(shift) == rat(static_cast<i64>(overlap), static_cast<i64>(small.point_count())));
  // the Folner requirement at n = 200: ratio >= 0.99 for every a in H_1
  for (int d : {1, 2}) {
    Box big = Box::folner(d, 200);
    Box h1 = Box::folner(d, 1);
    h1.for_each_point([&](const std::vector<i64>& a, u64) {
      CHECK(big.overlap_fraction(a) >= rat(99, 100));
    });
  }
}

TEST_CASE("lattice bridge maps b*Lambda to the ideal (b)") {
  auto gi = FieldOrder::make({1, 0, 1});
  LatticeBridge id(gi);
  auto b2 = id.bridge_ideal(2);
  CHECK(b2 == IdealLattice::principal(RingElement::integer(gi, 2)));
  CHECK(b2.norm() == 4);
  auto z = FieldOrder::make({0, 1});
  LatticeBridge idz(z);
  CHECK(idz.bridge_ideal(3).norm() == 3);
  // N(j(b Lambda)) = b^d
  for (i64 b : {2, 3, 5}) {
    Int expect;
    mpz_ui_pow_ui(expect.get_mpz_t(), static_cast<unsigned long>(b), 2);
    CHECK(id.bridge_ideal(b).norm() == expect);
  }
  // a nontrivial unimodular identification gives the same ideals
  LatticeBridge skew(gi, {1, 1, 0, 1});
  for (i64 b : {2, 3, 5}) CHECK(skew.bridge_ideal(b) == id.bridge_ideal(b));
  CHECK_THROWS_MATCHES(LatticeBridge(gi, {2, 0, 0, 1}), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return e.code() == errc::invalid_argument; }));
  CHECK_THROWS_MATCHES(id.bridge_ideal(1), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return e.code() == errc::invalid_argument; }));
}
