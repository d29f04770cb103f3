#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <memory>

#include "equicount/gen.hpp"
#include "equicount/rules.hpp"

using namespace eqc;

namespace {

std::shared_ptr<const WaveField> uniform(const ParameterSpace& space) {
  return std::make_shared<WaveField>(space,
                                     std::vector<Complex>(space.box_count(), Complex{1.0, 0.0}));
}

}  // namespace

TEST_CASE("a cell inside beta with nonzero field is definitely in") {
  const ParameterSpace m = ParameterSpace::line(0.0, 1.0, 8);
  const auto f = uniform(m);
  const Region beta = make_region(m, {make_box(0.0, 0.5)});
  const CellClassification c = classify_cell(*f, Cell{make_box(0.1, 0.4)}, beta);
  CHECK(c.tag == CellTag::definite_in);
  CHECK(c.w_in == doctest::Approx(0.3));
  CHECK(c.w_out <= 1e-15);
}

TEST_CASE("a straddling cell with field on both sides is indefinite") {
  const ParameterSpace m = ParameterSpace::line(0.0, 1.0, 8);
  const auto f = uniform(m);
  const Region beta = make_region(m, {make_box(0.0, 0.5)});
  const CellClassification c = classify_cell(*f, Cell{make_box(0.25, 0.75)}, beta);
  CHECK(c.tag == CellTag::indefinite);
  CHECK(c.w_in == doctest::Approx(0.25));
  CHECK(c.w_out == doctest::Approx(0.25));
}

TEST_CASE("classification is by weight, not geometry") {
  // The cell straddles beta geometrically, but the field vanishes inside
  // beta's part, so the branch is an eigenstate of the complement.
  const ParameterSpace m = ParameterSpace::line(0.0, 1.0, 4);
  const WaveField f(m, {Complex{0, 0}, Complex{1, 0}, Complex{1, 0}, Complex{1, 0}});
  const Region beta = make_region(m, {make_box(0.0, 0.25)});
  const CellClassification c = classify_cell(f, Cell{make_box(0.0, 0.5)}, beta);
  CHECK(c.tag == CellTag::definite_out);
  CHECK(c.w_in <= 1e-15);
}

TEST_CASE("a cell with no weight at all is zero amplitude") {
  const ParameterSpace m = ParameterSpace::line(0.0, 1.0, 4);
  const WaveField f(m, {Complex{0, 0}, Complex{1, 0}, Complex{1, 0}, Complex{1, 0}});
  const CellClassification c =
      classify_cell(f, Cell{make_box(0.0, 0.25)}, make_region(m, {make_box(0.5, 1.0)}));
  CHECK(c.tag == CellTag::zero_amplitude);
}

TEST_CASE("w_in + w_out equals the cell weight") {
  gen::Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const ParameterSpace m = gen::random_space(rng, 64, 16);
    const auto f = gen::random_field(rng, m, 0.2);
    const Region beta = gen::random_region(rng, m, 3);
    Box cell_box;
    for (int a = 0; a < m.dimension(); ++a) {
      double u = rng.uniform(m.bound(a).lo, m.bound(a).hi);
      double v = rng.uniform(m.bound(a).lo, m.bound(a).hi);
      if (u > v) std::swap(u, v);
      if (u == v) v = m.bound(a).hi;
      cell_box.axes[static_cast<std::size_t>(a)] = {u, v};
    }
    const CellClassification c = classify_cell(*f, Cell{cell_box}, beta);
    const double w_cell = f->weight_in_box(cell_box);
    CHECK(std::abs(c.w_in + c.w_out - w_cell) <= 1e-12 * f->total_weight());
  }
}

TEST_CASE("beta = M has probability [1,1] under the equiamplitude rule") {
  const ParameterSpace m = ParameterSpace::line(0.0, 1.0, 8);
  const auto f = uniform(m);
  const Ensemble e = equiamplitude_partition(f, 5);
  const IntervalProb p =
      interval_probability(*f, e, make_region(m, {m.domain_box()}), RuleVariant::gibbs);
  CHECK(p == IntervalProb::exact(Rational(1)));
}

TEST_CASE("variant and partition rule must match") {
  const ParameterSpace m = ParameterSpace::line(0.0, 1.0, 8);
  const auto f = uniform(m);
  const Ensemble amp = equiamplitude_partition(f, 4);
  const Ensemble vol = equivolume_partition(m, 4);
  const Region beta = make_region(m, {make_box(0.0, 0.5)});
  CHECK_THROWS_AS(interval_probability(*f, amp, beta, RuleVariant::boltzmann_original),
                  std::invalid_argument);
  CHECK_THROWS_AS(interval_probability(*f, vol, beta, RuleVariant::gibbs), std::invalid_argument);
  CHECK_THROWS_AS(interval_probability(*f, vol, beta, RuleVariant::graham_outcome),
                  std::invalid_argument);
}

TEST_CASE("zero-amplitude cells drop out of the original equivolume count") {
  // Field lives on [0, 0.5]; of four equal cells only two have weight.
  const ParameterSpace m = ParameterSpace::line(0.0, 1.0, 8);
  std::vector<Complex> samples(8);
  for (int i = 0; i < 4; ++i) samples[static_cast<std::size_t>(i)] = Complex{1.0, 0.0};
  const auto f = std::make_shared<const WaveField>(m, samples);
  const Ensemble e = equivolume_partition(m, 4);
  const Region beta = make_region(m, {make_box(0.0, 0.25)});
  const IntervalProb p = interval_probability(*f, e, beta, RuleVariant::boltzmann_original);
  CHECK(p == IntervalProb::exact(Rational(1, 2)));
}

TEST_CASE("consistency check returns witnesses for a separated family") {
  const ParameterSpace m = ParameterSpace::line(0.0, 1.0, 8);
  std::vector<Complex> samples(8);
  for (int i = 0; i < 4; ++i) samples[static_cast<std::size_t>(i)] = Complex{1.0, 0.0};
  const auto f = std::make_shared<const WaveField>(m, samples);
  const Region beta = make_region(m, {make_box(0.0, 0.25)});

  // Ensemble A: 4 cells, 2 nonzero, beta one of them -> 1/2.
  // Ensemble B: 2 cells, 1 nonzero, beta half of it -> indefinite [0, 1].
  // Ensemble C (shifted cells): beta exactly one nonzero cell of 4 -> 1/2.
  const Ensemble a = equivolume_partition(m, 4);
  const Ensemble b = equivolume_partition(m, 2);
  const std::vector<Ensemble> family{a, b};
  const std::vector<RuleVariant> variants{RuleVariant::boltzmann_original};
  const ConsistencyReport rep = consistency_check(*f, family, beta, variants);
  CHECK(rep.consistent);
  REQUIRE(rep.intersection.has_value());
  CHECK(rep.intersection->lo == Rational(1, 2));

  const std::vector<Ensemble> single{a};
  const ConsistencyReport echo = consistency_check(*f, single, beta, variants);
  CHECK(echo.consistent);
  CHECK(echo.intervals.size() == 1);
  CHECK(echo.intersection == echo.intervals[0]);
}

TEST_CASE("generalized additivity: empty beta-prime gives trivial equality") {
  const ParameterSpace m = ParameterSpace::line(0.0, 1.0, 8);
  const auto f = uniform(m);
  const Ensemble e = equiamplitude_partition(f, 4);
  const Region beta = make_region(m, {make_box(0.1, 0.6)});
  const AdditivityReport rep =
      generalized_additivity_check(*f, e, beta, Region::empty(1), RuleVariant::gibbs);
  CHECK(rep.subset_holds);
  CHECK(rep.exact_additivity);
  CHECK(!rep.shared_superposition);
}

TEST_CASE("generalized additivity rejects overlapping macrostates") {
  const ParameterSpace m = ParameterSpace::line(0.0, 1.0, 8);
  const auto f = uniform(m);
  const Ensemble e = equiamplitude_partition(f, 4);
  CHECK_THROWS_AS(
      generalized_additivity_check(*f, e, make_region(m, {make_box(0.0, 0.6)}),
                                   make_region(m, {make_box(0.4, 1.0)}), RuleVariant::gibbs),
      std::invalid_argument);
}

TEST_CASE("outcome counting ignores the weights") {
  const ParameterSpace m = ParameterSpace::line(0.0, 1.0, 10);
  std::vector<Complex> samples(10);
  for (int i = 0; i < 5; ++i) samples[static_cast<std::size_t>(i)] = Complex{3.0, 0.0};
  for (int i = 5; i < 10; ++i) samples[static_cast<std::size_t>(i)] = Complex{1.0, 0.0};
  const auto f = std::make_shared<const WaveField>(m, samples);
  const std::vector<Region> outcomes{make_region(m, {make_box(0.0, 0.5)}),
                                     make_region(m, {make_box(0.5, 1.0)})};
  CHECK(graham_frequency(*f, outcomes, 0) == Rational(1, 2));
  CHECK(graham_frequency(*f, outcomes, 1) == Rational(1, 2));
}

TEST_CASE("a single nonzero outcome gets frequency one, zero outcomes get zero") {
  const ParameterSpace m = ParameterSpace::line(0.0, 1.0, 10);
  std::vector<Complex> samples(10);
  for (int i = 0; i < 5; ++i) samples[static_cast<std::size_t>(i)] = Complex{1.0, 0.0};
  const auto f = std::make_shared<const WaveField>(m, samples);
  const std::vector<Region> outcomes{make_region(m, {make_box(0.0, 0.5)}),
                                     make_region(m, {make_box(0.5, 1.0)})};
  CHECK(graham_frequency(*f, outcomes, 0) == Rational(1));
  CHECK(graham_frequency(*f, outcomes, 1) == Rational(0));
}

TEST_CASE("outcome counting validates its reference class") {
  const ParameterSpace m = ParameterSpace::line(0.0, 1.0, 10);
  const auto f = uniform(m);
  const std::vector<Region> overlapping{make_region(m, {make_box(0.0, 0.6)}),
                                        make_region(m, {make_box(0.4, 1.0)})};
  CHECK_THROWS_AS(graham_frequency(*f, overlapping, 0), std::invalid_argument);
  const std::vector<Region> gappy{make_region(m, {make_box(0.0, 0.3)}),
                                  make_region(m, {make_box(0.5, 1.0)})};
  CHECK_THROWS_AS(graham_frequency(*f, gappy, 0), std::invalid_argument);
}

TEST_CASE("born containment for beta = M is exact") {
  const ParameterSpace m = ParameterSpace::line(0.0, 1.0, 8);
  const auto f = uniform(m);
  const Ensemble e = equiamplitude_partition(f, 6);
  const BornContainmentReport rep =
      born_containment_check(*f, e, make_region(m, {m.domain_box()}), 1e-9);
  CHECK(rep.pass);
  CHECK(rep.exact_partition);
  CHECK(rep.born == doctest::Approx(1.0));
  CHECK(rep.interval == IntervalProb::exact(Rational(1)));
}

TEST_CASE("born containment requires an equiamplitude ensemble") {
  const ParameterSpace m = ParameterSpace::line(0.0, 1.0, 8);
  const auto f = uniform(m);
  const Ensemble e = equivolume_partition(m, 4);
  CHECK_THROWS_AS(born_containment_check(*f, e, make_region(m, {make_box(0.0, 0.5)}), 1e-9),
                  std::invalid_argument);
}

TEST_CASE("conditional probabilities via re-ensembling the restricted state") {
  const ParameterSpace m = ParameterSpace::line(0.0, 1.0, 8);
  const auto f = uniform(m);
  const Region alpha = make_region(m, {make_box(0.0, 0.5)});

  SUBCASE("beta covering alpha gives [1,1]") {
    const ConditionalReport rep =
        conditional_interval_probability(*f, alpha, make_region(m, {make_box(0.0, 0.75)}), 4);
    CHECK(rep.interval == IntervalProb::exact(Rational(1)));
    CHECK(rep.conditional_born == doctest::Approx(1.0));
  }

  SUBCASE("beta disjoint from alpha gives [0,0]") {
    const ConditionalReport rep =
        conditional_interval_probability(*f, alpha, make_region(m, {make_box(0.75, 1.0)}), 4);
    CHECK(rep.interval == IntervalProb::exact(Rational(0)));
    CHECK(rep.conditional_born == doctest::Approx(0.0));
  }

  SUBCASE("uniform field: conditional of the left half of alpha is exactly 1/2") {
    const ConditionalReport rep =
        conditional_interval_probability(*f, alpha, make_region(m, {make_box(0.0, 0.25)}), 4);
    CHECK(rep.interval == IntervalProb::exact(Rational(1, 2)));
    CHECK(rep.contained);
  }

  SUBCASE("cells cover M and carry equal restricted weight") {
    const std::vector<Cell> cells = equiamplitude_cells_restricted(*f, alpha, 5);
    REQUIRE(cells.size() == 5);
    double covered = 0.0;
    for (const Cell& c : cells) {
      covered += c.box.measure(1);
      const Region cr = Region::canonical(1, {c.box});
      CHECK(f->weight(region_intersect(cr, alpha)) ==
            doctest::Approx(f->weight(alpha) / 5.0).epsilon(1e-12));
    }
    CHECK(covered == doctest::Approx(m.measure()).epsilon(1e-12));
  }
}

TEST_CASE("conditional containment holds on random restricted states") {
  gen::Rng rng(44);
  int informative = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const ParameterSpace m = gen::random_space(rng, 64, 16);
    const auto f = gen::random_field(rng, m, 0.15);
    const Region alpha = gen::random_region(rng, m, 2);
    if (!(f->weight(alpha) > 1e-9 * f->total_weight())) continue;
    const Region beta = gen::random_region(rng, m, 2);
    const int n = rng.uniform_int(1, 24);
    const ConditionalReport rep = conditional_interval_probability(*f, alpha, beta, n);
    CHECK(rep.contained);
    ++informative;
  }
  CHECK(informative > 100);
}

TEST_CASE("per-ensemble Kolmogorov: exact probabilities over a cell-aligned partition sum to one") {
  gen::Rng rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const ParameterSpace m = gen::random_space(rng, 64, 16);
    const auto f = gen::random_field(rng, m);
    const int n = rng.uniform_int(2, 16);
    const Ensemble e = equiamplitude_partition(f, n);

    // Split the cell list into consecutive groups; each group is a
    // macrostate exactly partitioned by the ensemble.
    Rational total(0);
    int k = 0;
    while (k < n) {
      const int take = std::min(n - k, rng.uniform_int(1, 4));
      std::vector<Box> boxes;
      for (int i = k; i < k + take; ++i)
        boxes.push_back(e.cells()[static_cast<std::size_t>(i)].box);
      const Region group = Region::canonical(m.dimension(), std::move(boxes));
      const IntervalProb p = interval_probability(*f, e, group, RuleVariant::gibbs);
      REQUIRE(p.degenerate());
      total = total + p.lo;
      k += take;
    }
    CHECK(total == Rational(1));
  }
}

TEST_CASE("relative frequencies are normalized and inside [0,1] for random ensembles") {
  gen::Rng rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const ParameterSpace m = gen::random_space(rng, 64, 16);
    const auto f = gen::random_field(rng, m, 0.2);
    const Ensemble e = equiamplitude_partition(f, rng.uniform_int(1, 32));
    const Region beta = gen::random_region(rng, m, 3);
    const IntervalProb p = interval_probability(*f, e, beta, RuleVariant::gibbs);
    CHECK(!p.out_of_range);
    CHECK(Rational(0) <= p.lo);
    CHECK(p.hi <= Rational(1));
  }
}
