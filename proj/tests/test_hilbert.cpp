#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <complex>

#include "equicount/gen.hpp"
#include "equicount/hilbert.hpp"
#include "equicount/rules.hpp"

using namespace eqc;
using namespace eqc::hilbert;

TEST_CASE("n = 1 decomposition is the vector itself") {
  const StateVector psi({Complex{0.3, 0.1}, Complex{-0.7, 0.0}, Complex{0.0, 0.5}});
  const EnsembleDecomposition dec = equiamplitude_decompose(psi, 1);
  REQUIRE(dec.size() == 1);
  CHECK((dec.parts[0] - psi).norm() <= 1e-12);
}

TEST_CASE("d=2 decomposition of (1,0) into two parts") {
  // Direct arithmetic oracle: phi_0 = (1/2)(1,1), phi_1 = (1/2)(1,-1);
  // norms squared 1/2 each, sum (1,0), inner product 0.
  const StateVector psi({Complex{1.0, 0.0}, Complex{0.0, 0.0}});
  const EnsembleDecomposition dec = equiamplitude_decompose(psi, 2);
  REQUIRE(dec.size() == 2);
  CHECK(std::abs(dec.parts[0][0] - Complex{0.5, 0.0}) <= 1e-12);
  CHECK(std::abs(dec.parts[0][1] - Complex{0.5, 0.0}) <= 1e-12);
  CHECK(std::abs(dec.parts[1][0] - Complex{0.5, 0.0}) <= 1e-12);
  CHECK(std::abs(dec.parts[1][1] - Complex{-0.5, 0.0}) <= 1e-12);
  CHECK(dec.parts[0].norm_squared() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(inner(dec.parts[0], dec.parts[1])) <= 1e-12);
  CHECK((dec.sum() - psi).norm() <= 1e-12);
}

TEST_CASE("any real 2-vector splits into two orthogonal vectors of equal length") {
  gen::Rng rng(51);
  for (int trial = 0; trial < 50; ++trial) {
    const StateVector psi({Complex{rng.uniform(-2, 2), 0.0}, Complex{rng.uniform(-2, 2), 0.0}});
    if (psi.norm() < 1e-3) continue;
    const EnsembleDecomposition dec = equiamplitude_decompose(psi, 2);
    CHECK(check_decomposition(dec, psi).pass(1e-10));
  }
}

TEST_CASE("decomposition contract holds for every n up to d") {
  gen::Rng rng(52);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t d = static_cast<std::size_t>(rng.uniform_int(2, 24));
    const StateVector psi = gen::random_state(rng, d);
    const Matrix basis = gen::random_unitary(rng, d);
    for (int n = 1; n <= static_cast<int>(d); n += rng.uniform_int(1, 3)) {
      const EnsembleDecomposition dec = equiamplitude_decompose(psi, n, &basis);
      const DecompositionCheck chk = check_decomposition(dec, psi);
      CHECK(chk.pass(1e-10));
    }
  }
}

TEST_CASE("decomposition rejects impossible requests") {
  const StateVector psi({Complex{1.0, 0.0}, Complex{0.0, 0.0}});
  CHECK_THROWS_AS(equiamplitude_decompose(psi, 3), std::invalid_argument);
  CHECK_THROWS_AS(equiamplitude_decompose(psi, 0), std::invalid_argument);
  const StateVector zero({Complex{0.0, 0.0}, Complex{0.0, 0.0}});
  CHECK_THROWS_AS(equiamplitude_decompose(zero, 1), std::invalid_argument);
}

TEST_CASE("projector construction validates hermiticity and idempotence") {
  Matrix not_hermitian(2);
  not_hermitian.at(0, 1) = Complex{0.5, 0.0};
  CHECK_THROWS_AS(Projector{not_hermitian}, std::invalid_argument);

  Matrix not_idempotent(2);
  not_idempotent.at(0, 0) = Complex{0.5, 0.0};
  not_idempotent.at(1, 1) = Complex{0.5, 0.0};
  CHECK_THROWS_AS(Projector{not_idempotent}, std::invalid_argument);

  CHECK_NOTHROW(Projector::identity(3));
  CHECK_NOTHROW(Projector::zero(3));
}

TEST_CASE("classification of eigenstates and superpositions") {
  const Projector id = Projector::identity(2);
  const Projector zero = Projector::zero(2);
  Matrix diag(2);
  diag.at(0, 0) = Complex{1.0, 0.0};
  const Projector first(diag);

  const StateVector phi({Complex{0.6, 0.0}, Complex{0.8, 0.0}});
  CHECK(classify_vector(id, phi) == VectorClass::in);
  CHECK(classify_vector(zero, phi) == VectorClass::out);

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const StateVector cat({Complex{inv_sqrt2, 0.0}, Complex{inv_sqrt2, 0.0}});
  CHECK(classify_vector(first, cat) == VectorClass::indefinite);
  CHECK(classify_vector(first, StateVector({Complex{1, 0}, Complex{0, 0}})) == VectorClass::in);
  CHECK(classify_vector(first, StateVector({Complex{0, 0}, Complex{1, 0}})) == VectorClass::out);
}

TEST_CASE("appendix interval for the identity is [1,1]") {
  gen::Rng rng(53);
  const StateVector psi = gen::random_state(rng, 6);
  const EnsembleDecomposition dec = equiamplitude_decompose(psi, 4);
  CHECK(appendix_interval(Projector::identity(6), dec) == IntervalProb::exact(Rational(1)));
}

TEST_CASE("appendix interval matches a per-part classification oracle") {
  gen::Rng rng(54);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t d = static_cast<std::size_t>(rng.uniform_int(2, 16));
    const StateVector psi = gen::random_state(rng, d);
    const int n = rng.uniform_int(1, static_cast<int>(d));
    const EnsembleDecomposition dec = equiamplitude_decompose(psi, n);
    const Projector p = gen::random_projector(rng, d, static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(d))));

    // Oracle: classify each part by direct matrix application.
    std::int64_t m = 0, r = 0;
    for (const StateVector& phi : dec.parts) {
      const StateVector proj = p.matrix().apply(phi);
      const double in_residual = (proj - phi).norm();
      const double out_residual = proj.norm();
      if (in_residual <= 1e-10 * phi.norm()) ++m;
      else if (out_residual > 1e-10 * phi.norm()) ++r;
    }
    CHECK(appendix_interval(p, dec) == IntervalProb::from_counts(m, r, n));
  }
}

TEST_CASE("appendix theorem for the identity projector") {
  gen::Rng rng(55);
  const StateVector psi = gen::random_state(rng, 8);
  const AppendixReport rep = appendix_theorem_check(Projector::identity(8), psi, 5);
  CHECK(rep.pass);
  CHECK(rep.m == 5);
  CHECK(rep.r == 0);
  CHECK(rep.quotient == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.interval == IntervalProb::exact(Rational(1)));
}

TEST_CASE("r = 0 cases agree exactly: quotient equals m/n") {
  // Basis-aligned construction: psi lives in the span of a column subset,
  // groups never straddle it, so every part is an eigenstate.
  gen::Rng rng(56);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 12;
    const Matrix basis = gen::random_unitary(rng, d);
    // psi uses columns 0..5 with equal weight per column; groups of 2.
    StateVector psi = StateVector::zero(d);
    EnsembleDecomposition dec;
    const int n = 3;
    dec.parts.assign(n, StateVector::zero(d));
    for (std::size_t i = 0; i < 6; ++i) {
      StateVector col = basis.column(i);
      col *= Complex{1.0 / std::sqrt(6.0), 0.0};
      psi += col;
      dec.parts[i / 2] += col;
    }
    // Projector onto columns 0..1: the first group is in, others out.
    std::vector<StateVector> span{basis.column(0), basis.column(1)};
    const Projector p = Projector::onto_span(span);
    const AppendixReport rep = appendix_theorem_check(p, psi, dec);
    CHECK(rep.pass);
    CHECK(rep.m == 1);
    CHECK(rep.r == 0);
    CHECK(std::abs(rep.quotient - 1.0 / 3.0) <= 1e-12);
  }
}

TEST_CASE("containment across bases: intervals from different bases intersect") {
  gen::Rng rng(57);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = static_cast<std::size_t>(rng.uniform_int(4, 24));
    const StateVector psi = gen::random_state(rng, d);
    const Projector p = gen::random_projector(rng, d, static_cast<std::size_t>(rng.uniform_int(1, static_cast<int>(d) - 1)));
    const double quotient = inner(psi, p.apply(psi)).real() / psi.norm_squared();

    std::vector<IntervalProb> intervals;
    for (int basis_trial = 0; basis_trial < 4; ++basis_trial) {
      const Matrix basis = gen::random_unitary(rng, d);
      const int n = rng.uniform_int(1, static_cast<int>(d));
      const EnsembleDecomposition dec = equiamplitude_decompose(psi, n, &basis);
      const IntervalProb iv = appendix_interval(p, dec);
      CHECK(contains_real(iv, quotient, 1e-9));
      intervals.push_back(iv);
    }
    CHECK(intersect_all(intervals).has_value());
  }
}

TEST_CASE("grid ensembles and abstract-basis ensembles may share one family") {
  // The same state seen two ways: a field on an 8-box grid, and its
  // amplitude vector (samples scaled by sqrt of box measure) in C^8, with
  // beta a union of whole grid boxes mapped to a diagonal projector.
  // Intervals of both kinds contain the one Born value, so the mixed
  // family always intersects.
  gen::Rng rng(59);
  const ParameterSpace m = ParameterSpace::line(0.0, 2.0, 8);
  const auto f = gen::random_field(rng, m);
  std::vector<Box> beta_boxes;
  for (int i : {1, 2, 5}) beta_boxes.push_back(make_box(m.edge(0, i), m.edge(0, i + 1)));
  const Region beta = Region::canonical(1, beta_boxes);
  const double born = f->born(beta);

  const Ensemble grid_ensemble = equiamplitude_partition(f, 5);
  const IntervalProb grid_interval =
      interval_probability(*f, grid_ensemble, beta, RuleVariant::gibbs);
  CHECK(contains_real(grid_interval, born, 1e-9));

  std::vector<Complex> amps(8);
  const double box_len = m.edge(0, 1) - m.edge(0, 0);
  for (std::size_t i = 0; i < 8; ++i) amps[i] = f->samples()[i] * std::sqrt(box_len);
  const StateVector psi{std::move(amps)};
  Matrix diag(8);
  for (int i : {1, 2, 5}) diag.at(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = Complex{1.0, 0.0};
  const Projector p_beta{diag};
  CHECK(std::abs(inner(psi, p_beta.apply(psi)).real() / psi.norm_squared() - born) <= 1e-12);

  const Matrix basis = gen::random_unitary(rng, 8);
  const IntervalProb abstract_interval =
      appendix_interval(p_beta, equiamplitude_decompose(psi, 6, &basis));
  CHECK(contains_real(abstract_interval, born, 1e-9));

  const std::vector<IntervalProb> family{grid_interval, abstract_interval};
  CHECK(intersect_all(family).has_value());
}

TEST_CASE("proof-term accounting brackets the expectation") {
  gen::Rng rng(58);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = static_cast<std::size_t>(rng.uniform_int(2, 32));
    const StateVector psi = gen::random_state(rng, d);
    const int n = rng.uniform_int(1, static_cast<int>(d));
    const Projector p = gen::random_projector(rng, d, static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(d))));
    const AppendixReport rep = appendix_theorem_check(p, psi, n);
    CHECK(rep.proof_bounds_hold);
    CHECK(rep.indefinite_term >= -1e-9 * psi.norm_squared());
    CHECK(rep.indefinite_term <= rep.indefinite_bound + 1e-9 * psi.norm_squared());
  }
}
