#include <doctest.h>

#include <stdexcept>

#include <random>
#include <vector>

#include "equicount/interval_prob.hpp"

using namespace eqc;

TEST_CASE("rational arithmetic stays in lowest terms") {
  const Rational q(2, 30);
  CHECK(q.num() == 1);
  CHECK(q.den() == 15);
  CHECK(Rational(4, -8) == Rational(-1, 2));
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("from_counts reproduces the counted bounds") {
  const IntervalProb p = IntervalProb::from_counts(2, 10, 30);
  CHECK(p.lo == Rational(2, 30));
  CHECK(p.hi == Rational(12, 30));
  CHECK(!p.out_of_range);

  CHECK(IntervalProb::from_counts(7, 0, 7) == IntervalProb::exact(Rational(1)));
  CHECK(IntervalProb::from_counts(0, 0, 9) == IntervalProb::exact(Rational(0)));
}

TEST_CASE("from_counts rejects impossible counts") {
  CHECK_THROWS_AS(IntervalProb::from_counts(3, 3, 5), std::invalid_argument);
  CHECK_THROWS_AS(IntervalProb::from_counts(1, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(IntervalProb::from_counts(-1, 0, 5), std::invalid_argument);
}

TEST_CASE("interval addition is componentwise and exact") {
  const IntervalProb a = IntervalProb::from_counts(2, 10, 30);
  const IntervalProb b = IntervalProb::from_counts(3, 6, 30);
  const IntervalProb s = add(a, b);
  CHECK(s.lo == Rational(5, 30));
  CHECK(s.hi == Rational(21, 30));
  CHECK(add(a, IntervalProb::from_counts(0, 0, 1)) == a);
}

TEST_CASE("sums past unity are flagged, not clamped") {
  const IntervalProb a = IntervalProb::from_bounds(Rational(1, 9), Rational(2, 9));
  const IntervalProb b = IntervalProb::from_bounds(Rational(1, 9), Rational(2, 1));
  CHECK(b.out_of_range);
  const IntervalProb s = add(a, b);
  CHECK(s.hi == Rational(20, 9));
  CHECK(s.out_of_range);
}

TEST_CASE("interval multiplication") {
  const IntervalProb a = IntervalProb::from_bounds(Rational(1, 2), Rational(1, 2));
  const IntervalProb b = IntervalProb::from_bounds(Rational(1, 3), Rational(2, 3));
  const IntervalProb p = mul(a, b);
  CHECK(p.lo == Rational(1, 6));
  CHECK(p.hi == Rational(1, 3));
  CHECK(mul(b, IntervalProb::exact(Rational(1))) == b);
  CHECK(mul(b, IntervalProb::exact(Rational(0))) == IntervalProb::exact(Rational(0)));
}

TEST_CASE("subset comparison is exact") {
  CHECK(subset(IntervalProb::from_counts(7, 11, 30), IntervalProb::from_counts(5, 16, 30)));
  const IntervalProb a = IntervalProb::from_counts(3, 4, 9);
  CHECK(subset(a, a));
  CHECK(!subset(IntervalProb::from_bounds(Rational(0), Rational(1)),
                IntervalProb::from_bounds(Rational(1, 4), Rational(3, 4))));
}

TEST_CASE("intersect_all finds the common core or reports emptiness") {
  const std::vector<IntervalProb> disjoint{IntervalProb::exact(Rational(1, 3)),
                                           IntervalProb::exact(Rational(1, 2))};
  CHECK(!intersect_all(disjoint).has_value());

  const std::vector<IntervalProb> single{IntervalProb::from_counts(1, 2, 5)};
  CHECK(intersect_all(single) == single[0]);

  const std::vector<IntervalProb> pair{
      IntervalProb::from_bounds(Rational(1, 5), Rational(3, 5)),
      IntervalProb::from_bounds(Rational(2, 5), Rational(4, 5))};
  const auto common = intersect_all(pair);
  REQUIRE(common.has_value());
  CHECK(common->lo == Rational(2, 5));
  CHECK(common->hi == Rational(3, 5));
}

TEST_CASE("contains_real with tolerance") {
  CHECK(contains_real(IntervalProb::from_bounds(Rational(0), Rational(1)), 0.5, 0.0));
  const IntervalProb exact = IntervalProb::exact(Rational(1, 3));
  CHECK(contains_real(exact, 1.0 / 3.0, 1e-12));
  CHECK(contains_real(IntervalProb::from_counts(2, 10, 30), 0.0666, 1e-3));
  CHECK(!contains_real(IntervalProb::from_counts(2, 10, 30), 0.5, 1e-3));
}

TEST_CASE("add and mul are commutative and associative on random rationals") {
  std::mt19937_64 eng(7);
  std::uniform_int_distribution<std::int64_t> num(0, 40);
  std::uniform_int_distribution<std::int64_t> den(41, 120);
  for (int trial = 0; trial < 500; ++trial) {
    const IntervalProb a = IntervalProb::from_bounds(Rational(num(eng), den(eng)), Rational(1, 1));
    const IntervalProb b = IntervalProb::from_bounds(Rational(num(eng), den(eng)), Rational(1, 1));
    const IntervalProb c = IntervalProb::from_bounds(Rational(num(eng), den(eng)), Rational(1, 1));
    CHECK(add(a, b) == add(b, a));
    CHECK(mul(a, b) == mul(b, a));
    CHECK(add(add(a, b), c) == add(a, add(b, c)));
    CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
  }
}

TEST_CASE("degenerate intervals add like plain numbers") {
  const IntervalProb p = IntervalProb::exact(Rational(1, 4));
  const IntervalProb q = IntervalProb::exact(Rational(1, 3));
  const IntervalProb s = add(p, q);
  CHECK(s.degenerate());
  CHECK(s.lo == Rational(7, 12));
}

TEST_CASE("rational overflow is reported, not wrapped") {
  const Rational big(1, 1000000007);
  Rational acc(1, 3);
  CHECK_THROWS_AS(
      [&] {
        for (int i = 0; i < 8; ++i) acc = acc * big;
        return acc;
      }(),
      std::overflow_error);
}
