#include "equicount/rules.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eqc {

namespace {

bool variant_matches_rule(RuleVariant v, PartitionRule rule) {
  switch (v) {
    case RuleVariant::gibbs:
      return rule == PartitionRule::equiamplitude;
    case RuleVariant::boltzmann_original:
    case RuleVariant::boltzmann_support_exclude_borderline:
    case RuleVariant::boltzmann_support_mixed:
      return rule == PartitionRule::equivolume;
    case RuleVariant::graham_outcome:
      return false;  // outcome counting runs over macrostates, not ensembles
  }
  return false;
}

/// λ(cell \ support) == 0 up to a sliver of 1e-12·λ(M).
bool wholly_in_support(const Ensemble& e, int k, const Region& support) {
  const Region cell = e.cell_region(k);
  const double outside = lambda_measure(region_difference(cell, support));
  return outside <= 1e-12 * e.space().measure();
}

}  // namespace

const char* to_string(RuleVariant v) {
  switch (v) {
    case RuleVariant::gibbs:
      return "gibbs";
    case RuleVariant::boltzmann_original:
      return "boltzmann_original";
    case RuleVariant::boltzmann_support_exclude_borderline:
      return "boltzmann_support_exclude_borderline";
    case RuleVariant::boltzmann_support_mixed:
      return "boltzmann_support_mixed";
    case RuleVariant::graham_outcome:
      return "graham_outcome";
  }
  return "?";
}

const char* to_string(CellTag t) {
  switch (t) {
    case CellTag::definite_in:
      return "definite_in";
    case CellTag::definite_out:
      return "definite_out";
    case CellTag::indefinite:
      return "indefinite";
    case CellTag::zero_amplitude:
      return "zero_amplitude";
  }
  return "?";
}

CellClassification classify_cell(const WaveField& f, const Cell& cell, const Region& beta,
                                 double eps_amp) {
  if (eps_amp < 0) throw std::invalid_argument("eps_amp must be nonnegative");
  CellClassification c;
  const double w_cell = f.weight_in_box(cell.box);
  const Region cell_region = Region::canonical(f.space().dimension(), {cell.box});
  c.w_in = f.weight(region_intersect(cell_region, beta));
  c.w_out = std::max(0.0, w_cell - c.w_in);
  const double threshold = eps_amp * f.total_weight();
  if (w_cell <= threshold) {
    c.tag = CellTag::zero_amplitude;
  } else if (c.w_out <= threshold) {
    c.tag = CellTag::definite_in;
  } else if (c.w_in <= threshold) {
    c.tag = CellTag::definite_out;
  } else {
    c.tag = CellTag::indefinite;
  }
  return c;
}

BranchCounts branch_counts(const WaveField& f, const Ensemble& e, const Region& beta, RuleVariant v,
                           double eps_amp) {
  if (!variant_matches_rule(v, e.rule()))
    throw std::invalid_argument("rule variant incompatible with the ensemble's partition rule");
  if (e.field() && *e.field() != f)
    throw std::invalid_argument("ensemble was built for a different field");

  BranchCounts counts;
  const bool support_based = v == RuleVariant::boltzmann_support_exclude_borderline ||
                             v == RuleVariant::boltzmann_support_mixed;
  Region support;
  if (support_based) support = f.support(eps_amp);

  for (int k = 0; k < e.size(); ++k) {
    const CellClassification c = classify_cell(f, e.cells()[static_cast<std::size_t>(k)], beta, eps_amp);
    const bool nonzero = c.tag != CellTag::zero_amplitude;

    bool member_lower = false;
    bool member_upper = false;
    bool count_numerators = false;
    switch (v) {
      case RuleVariant::gibbs:
        // Every cell carries weight W/n by construction.
        member_lower = member_upper = true;
        count_numerators = nonzero;
        break;
      case RuleVariant::boltzmann_original:
        member_lower = member_upper = nonzero;
        count_numerators = nonzero;
        break;
      case RuleVariant::boltzmann_support_exclude_borderline: {
        const bool member = nonzero && wholly_in_support(e, k, support);
        member_lower = member_upper = member;
        count_numerators = member;
        break;
      }
      case RuleVariant::boltzmann_support_mixed: {
        // Lower bound counts borderline cells in the denominator, upper
        // bound drops them; numerators follow the original rule.
        const bool whole = nonzero && wholly_in_support(e, k, support);
        member_lower = nonzero;
        member_upper = whole;
        count_numerators = nonzero;
        break;
      }
      case RuleVariant::graham_outcome:
        break;
    }
    if (member_lower) ++counts.n_lower;
    if (member_upper) ++counts.n_upper;
    if (count_numerators) {
      if (c.tag == CellTag::definite_in) ++counts.m;
      if (c.tag == CellTag::indefinite) ++counts.r;
    }
  }
  return counts;
}

IntervalProb interval_probability(const WaveField& f, const Ensemble& e, const Region& beta,
                                  RuleVariant v, double eps_amp) {
  const BranchCounts c = branch_counts(f, e, beta, v, eps_amp);
  if (c.n_lower < 1 || c.n_upper < 1)
    throw std::domain_error("rule admits no microstates for this ensemble");
  return IntervalProb::from_bounds(Rational(c.m, c.n_lower), Rational(c.m + c.r, c.n_upper));
}

ConsistencyReport consistency_check(const WaveField& f, std::span<const Ensemble> family,
                                    const Region& beta, std::span<const RuleVariant> variants,
                                    double eps_amp) {
  if (family.empty()) throw std::invalid_argument("consistency check needs a nonempty family");
  if (variants.size() != 1 && variants.size() != family.size())
    throw std::invalid_argument("give one variant in total or one per ensemble");

  ConsistencyReport rep;
  rep.intervals.reserve(family.size());
  for (std::size_t i = 0; i < family.size(); ++i) {
    const RuleVariant v = variants.size() == 1 ? variants[0] : variants[i];
    rep.intervals.push_back(interval_probability(f, family[i], beta, v, eps_amp));
  }
  const auto common = intersect_all(rep.intervals);
  rep.consistent = common.has_value();
  rep.intersection = common;
  if (!rep.consistent) {
    int max_lo = 0, min_hi = 0;
    for (int i = 1; i < static_cast<int>(rep.intervals.size()); ++i) {
      const auto ui = static_cast<std::size_t>(i);
      if (rep.intervals[ui].lo > rep.intervals[static_cast<std::size_t>(max_lo)].lo) max_lo = i;
      if (rep.intervals[ui].hi < rep.intervals[static_cast<std::size_t>(min_hi)].hi) min_hi = i;
    }
    rep.witnesses = std::make_pair(min_hi, max_lo);
  }
  return rep;
}

AdditivityReport generalized_additivity_check(const WaveField& f, const Ensemble& e, const Region& beta,
                                              const Region& beta_prime, RuleVariant v, double eps_amp) {
  const double overlap = lambda_measure(region_intersect(beta, beta_prime));
  if (overlap > 1e-12 * e.space().measure())
    throw std::invalid_argument("generalized additivity needs disjoint macrostates");

  AdditivityReport rep;
  rep.mu_beta = interval_probability(f, e, beta, v, eps_amp);
  rep.mu_beta_prime = interval_probability(f, e, beta_prime, v, eps_amp);
  rep.mu_union = interval_probability(f, e, region_union(beta, beta_prime), v, eps_amp);
  rep.sum = add(rep.mu_beta, rep.mu_beta_prime);
  rep.subset_holds = subset(rep.mu_union, rep.sum);
  rep.exact_additivity = rep.mu_union == rep.sum;

  const double threshold = eps_amp * f.total_weight();
  for (const Cell& cell : e.cells()) {
    const Region cr = Region::canonical(f.space().dimension(), {cell.box});
    if (f.weight(region_intersect(cr, beta)) > threshold &&
        f.weight(region_intersect(cr, beta_prime)) > threshold) {
      rep.shared_superposition = true;
      break;
    }
  }
  return rep;
}

Rational graham_frequency(const WaveField& f, std::span<const Region> outcomes, std::size_t query,
                          double eps_amp) {
  if (outcomes.empty()) throw std::invalid_argument("outcome counting needs outcomes");
  if (query >= outcomes.size()) throw std::invalid_argument("queried outcome out of range");
  const double lam_tol = 1e-12 * f.space().measure();
  Region all = Region::empty(f.space().dimension());
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    for (std::size_t j = i + 1; j < outcomes.size(); ++j)
      if (lambda_measure(region_intersect(outcomes[i], outcomes[j])) > lam_tol)
        throw std::invalid_argument("outcomes must be pairwise disjoint");
    all = region_union(all, outcomes[i]);
  }
  const Region domain = Region::canonical(f.space().dimension(), {f.space().domain_box()});
  if (lambda_measure(region_difference(domain, all)) > lam_tol)
    throw std::invalid_argument("outcomes must cover the parameter space");

  const double threshold = eps_amp * f.total_weight();
  std::int64_t nonzero = 0;
  bool query_nonzero = false;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const bool nz = f.weight(outcomes[i]) > threshold;
    if (nz) ++nonzero;
    if (nz && i == query) query_nonzero = true;
  }
  if (!query_nonzero) return Rational(0);
  return Rational(1, nonzero);
}

ConditionalReport conditional_interval_probability(const WaveField& f, const Region& alpha,
                                                   const Region& beta, int n, SplitAxisPolicy policy,
                                                   double eps_amp, int n_max) {
  ConditionalReport rep;
  rep.cells = equiamplitude_cells_restricted(f, alpha, n, policy, n_max);

  const double w_alpha = f.weight(alpha);
  const double threshold = eps_amp * w_alpha;
  std::int64_t m = 0, r = 0;
  for (const Cell& cell : rep.cells) {
    const Region cr = Region::canonical(f.space().dimension(), {cell.box});
    const Region restricted = region_intersect(cr, alpha);
    const double w_cell = f.weight(restricted);
    const double w_in = f.weight(region_intersect(restricted, beta));
    const double w_out = std::max(0.0, w_cell - w_in);
    if (w_out <= threshold) {
      ++m;  // cells carry w_alpha/n > 0 by construction
    } else if (w_in > threshold) {
      ++r;
    }
  }
  rep.interval = IntervalProb::from_counts(m, r, n);
  rep.conditional_born = f.weight(region_intersect(alpha, beta)) / w_alpha;
  rep.contained = contains_real(rep.interval, rep.conditional_born, 1e-9);
  return rep;
}

BornContainmentReport born_containment_check(const WaveField& f, const Ensemble& e, const Region& beta,
                                             double tol_contain, double tol_exact, double eps_amp) {
  if (e.rule() != PartitionRule::equiamplitude)
    throw std::invalid_argument("Born containment applies to equiamplitude ensembles");
  BornContainmentReport rep;
  const BranchCounts c = branch_counts(f, e, beta, RuleVariant::gibbs, eps_amp);
  rep.interval = IntervalProb::from_counts(c.m, c.r, c.n_lower);
  rep.born = f.born(beta);
  rep.contained = contains_real(rep.interval, rep.born, tol_contain);
  rep.margin_lo = rep.born - rep.interval.lo.to_double();
  rep.margin_hi = rep.interval.hi.to_double() - rep.born;
  rep.exact_partition = c.r == 0;
  rep.pass = rep.contained;
  if (rep.exact_partition) {
    rep.exact_agreement_error = std::abs(rep.interval.lo.to_double() - rep.born);
    rep.pass = rep.pass && rep.exact_agreement_error <= tol_exact;
  }
  return rep;
}

}  // namespace eqc
