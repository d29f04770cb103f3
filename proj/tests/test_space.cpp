#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "equicount/gen.hpp"
#include "equicount/space.hpp"

using namespace eqc;

TEST_CASE("interval length of a sub-interval") {
  const ParameterSpace m = ParameterSpace::line(0.0, 1.0, 8);
  const Region r = make_region(m, {make_box(0.25, 0.75)});
  CHECK(lambda_measure(r) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("empty region has measure zero") {
  CHECK(lambda_measure(Region::empty(1)) == 0.0);
  CHECK(lambda_measure(Region::empty(2)) == 0.0);
}

TEST_CASE("two disjoint boxes add their areas") {
  // Hand expansion: 0.1*0.1 + 0.1*0.1 = 0.02.
  const ParameterSpace m = ParameterSpace::plane({0.0, 1.0}, {0.0, 1.0}, 4, 4);
  const Region r = make_region(m, {make_box(0.1, 0.2, 0.1, 0.2), make_box(0.6, 0.7, 0.6, 0.7)});
  CHECK(lambda_measure(r) == doctest::Approx(0.02).epsilon(1e-12));
}

TEST_CASE("abutting intervals merge under union and have empty intersection") {
  const ParameterSpace m = ParameterSpace::line(0.0, 1.0, 4);
  const Region a = make_region(m, {make_box(0.0, 0.5)});
  const Region b = make_region(m, {make_box(0.5, 1.0)});
  const Region u = region_union(a, b);
  REQUIRE(u.boxes().size() == 1);
  CHECK(u.boxes()[0].axes[0] == Interval{0.0, 1.0});
  CHECK(region_intersect(a, b).is_empty());
}

TEST_CASE("self-difference is empty") {
  const ParameterSpace m = ParameterSpace::line(0.0, 1.0, 4);
  const Region a = make_region(m, {make_box(0.1, 0.9)});
  CHECK(region_difference(a, a).is_empty());
}

TEST_CASE("interval overlap measure") {
  const ParameterSpace m = ParameterSpace::line(0.0, 1.0, 4);
  const Region a = make_region(m, {make_box(0.0, 0.6)});
  const Region b = make_region(m, {make_box(0.4, 1.0)});
  CHECK(lambda_measure(region_intersect(a, b)) == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("region boxes must stay inside the space") {
  const ParameterSpace m = ParameterSpace::line(0.0, 1.0, 4);
  CHECK_THROWS_AS(make_region(m, {make_box(-0.1, 0.5)}), std::invalid_argument);
  CHECK_THROWS_AS(make_region(m, {make_box(0.5, 1.1)}), std::invalid_argument);
}

TEST_CASE("degenerate boxes are dropped during canonicalization") {
  const Region r = Region::canonical(2, {make_box(0.3, 0.3, 0.0, 1.0), make_box(0.1, 0.2, 0.5, 0.5)});
  CHECK(r.is_empty());
}

TEST_CASE("overlapping boxes canonicalize to a disjoint cover") {
  const Region r = Region::canonical(2, {make_box(0.0, 2.0, 0.0, 2.0), make_box(1.0, 3.0, 1.0, 3.0)});
  // area by inclusion-exclusion: 4 + 4 - 1 = 7
  CHECK(lambda_measure(r) == doctest::Approx(7.0).epsilon(1e-15));
  for (std::size_t i = 0; i < r.boxes().size(); ++i) {
    for (std::size_t j = i + 1; j < r.boxes().size(); ++j) {
      double ov = 1.0;
      for (int a = 0; a < 2; ++a) {
        const auto& p = r.boxes()[i].axes[static_cast<std::size_t>(a)];
        const auto& q = r.boxes()[j].axes[static_cast<std::size_t>(a)];
        ov *= std::max(0.0, std::min(p.hi, q.hi) - std::max(p.lo, q.lo));
      }
      CHECK(ov == 0.0);
    }
  }
}

TEST_CASE("parameter space constructor rejects bad input") {
  CHECK_THROWS_AS(ParameterSpace::line(1.0, 1.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(ParameterSpace::line(0.0, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(ParameterSpace({{0.0, 1.0}}, {4, 4}), std::invalid_argument);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(ParameterSpace::line(0.0, inf, 4), std::invalid_argument);
}

TEST_CASE("inclusion-exclusion holds for 1000 random region pairs") {
  gen::Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const ParameterSpace m = gen::random_space(rng, 32, 8);
    const Region a = gen::random_region(rng, m, 3);
    const Region b = gen::random_region(rng, m, 3);
    const double lhs = lambda_measure(region_union(a, b));
    const double rhs = lambda_measure(a) + lambda_measure(b) - lambda_measure(region_intersect(a, b));
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, m.measure()));
  }
}

TEST_CASE("lambda is additive over disjoint regions") {
  gen::Rng rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    const ParameterSpace m = gen::random_space(rng, 32, 8);
    const Region a = gen::random_region(rng, m, 3);
    const Region b = region_difference(gen::random_region(rng, m, 3), a);
    const double lhs = lambda_measure(region_union(a, b));
    const double rhs = lambda_measure(a) + lambda_measure(b);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, m.measure()));
  }
}

TEST_CASE("canonicalization is idempotent") {
  gen::Rng rng(4242);
  for (int trial = 0; trial < 300; ++trial) {
    const ParameterSpace m = gen::random_space(rng, 32, 8);
    std::vector<Box> boxes;
    const int k = rng.uniform_int(1, 5);
    for (int i = 0; i < k; ++i) {
      Box b;
      for (int a = 0; a < m.dimension(); ++a) {
        double u = rng.uniform(m.bound(a).lo, m.bound(a).hi);
        double v = rng.uniform(m.bound(a).lo, m.bound(a).hi);
        if (u > v) std::swap(u, v);
        b.axes[static_cast<std::size_t>(a)] = {u, v};
      }
      boxes.push_back(b);
    }
    const Region once = Region::canonical(m.dimension(), boxes);
    const Region twice = Region::canonical(m.dimension(), once.boxes());
    CHECK(once == twice);
  }
}

TEST_CASE("difference removes exactly the intersection") {
  gen::Rng rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const ParameterSpace m = gen::random_space(rng, 32, 8);
    const Region a = gen::random_region(rng, m, 3);
    const Region b = gen::random_region(rng, m, 3);
    const double lhs = lambda_measure(region_difference(a, b));
    const double rhs = lambda_measure(a) - lambda_measure(region_intersect(a, b));
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, m.measure()));
  }
}

TEST_CASE("point containment respects box boundaries") {
  const Region r = Region::canonical(2, {make_box(0.0, 1.0, 0.0, 1.0)});
  CHECK(r.contains(Point{0.5, 0.5}));
  CHECK(r.contains(Point{0.0, 1.0}));
  CHECK(!r.contains(Point{1.5, 0.5}));
}

namespace {

Box random_box_in(gen::Rng& rng, const ParameterSpace& m) {
  Box b;
  for (int a = 0; a < m.dimension(); ++a) {
    double u = rng.uniform(m.bound(a).lo, m.bound(a).hi);
    double v = rng.uniform(m.bound(a).lo, m.bound(a).hi);
    if (u > v) std::swap(u, v);
    b.axes[static_cast<std::size_t>(a)] = {u, v};
  }
  return b;
}

Box box_intersection(const Box& a, const Box& b, int dim) {
  Box out;
  for (int ax = 0; ax < dim; ++ax) {
    const auto i = static_cast<std::size_t>(ax);
    out.axes[i] = {std::max(a.axes[i].lo, b.axes[i].lo), std::min(a.axes[i].hi, b.axes[i].hi)};
    if (out.axes[i].hi < out.axes[i].lo) out.axes[i] = {0.0, 0.0};
  }
  return out;
}

}  // namespace

TEST_CASE("three-box union measure matches the closed-form inclusion-exclusion oracle") {
  gen::Rng rng(271);
  for (int trial = 0; trial < 500; ++trial) {
    const ParameterSpace m = gen::random_space(rng, 16, 6);
    const int dim = m.dimension();
    const Box a = random_box_in(rng, m);
    const Box b = random_box_in(rng, m);
    const Box c = random_box_in(rng, m);

    const double oracle = a.measure(dim) + b.measure(dim) + c.measure(dim) -
                          box_intersection(a, b, dim).measure(dim) -
                          box_intersection(a, c, dim).measure(dim) -
                          box_intersection(b, c, dim).measure(dim) +
                          box_intersection(box_intersection(a, b, dim), c, dim).measure(dim);
    const Region u = Region::canonical(dim, {a, b, c});
    CHECK(std::abs(lambda_measure(u) - oracle) <= 1e-12 * std::max(1.0, m.measure()));

    // λ(A \ (B ∪ C)) by the same expansion.
    const double diff_oracle = a.measure(dim) - box_intersection(a, b, dim).measure(dim) -
                               box_intersection(a, c, dim).measure(dim) +
                               box_intersection(box_intersection(a, b, dim), c, dim).measure(dim);
    const Region d = region_difference(Region::canonical(dim, {a}), Region::canonical(dim, {b, c}));
    CHECK(std::abs(lambda_measure(d) - diff_oracle) <= 1e-12 * std::max(1.0, m.measure()));
  }
}

TEST_CASE("canonical membership agrees with raw-box membership at random points") {
  gen::Rng rng(272);
  for (int trial = 0; trial < 200; ++trial) {
    const ParameterSpace m = gen::random_space(rng, 16, 6);
    std::vector<Box> raw;
    const int k = rng.uniform_int(1, 4);
    for (int i = 0; i < k; ++i) raw.push_back(random_box_in(rng, m));
    const Region canon = Region::canonical(m.dimension(), raw);
    for (int p = 0; p < 25; ++p) {
      Point q{rng.uniform(m.bound(0).lo, m.bound(0).hi), 0.0};
      if (m.dimension() == 2) q[1] = rng.uniform(m.bound(1).lo, m.bound(1).hi);
      bool in_raw = false;
      for (const Box& b : raw)
        if (b.measure(m.dimension()) > 0.0 && b.contains(m.dimension(), q)) in_raw = true;
      CHECK(canon.contains(q) == in_raw);
    }
  }
}
