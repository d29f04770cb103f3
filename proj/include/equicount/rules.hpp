#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "equicount/field.hpp"
#include "equicount/interval_prob.hpp"
#include "equicount/partition.hpp"
#include "equicount/space.hpp"

namespace eqc {

inline constexpr double kDefaultEpsAmp = 1e-12;

/// Where a microstate P_cell|ψ⟩ stands relative to a macrostate β:
/// eigenstate inside, eigenstate outside, superposition of both, or no
/// branch at all. Classification is by weight, not geometry.
enum class CellTag { definite_in, definite_out, indefinite, zero_amplitude };

struct CellClassification {
  CellTag tag = CellTag::zero_amplitude;
  double w_in = 0.0;
  double w_out = 0.0;
};

enum class RuleVariant {
  gibbs,
  boltzmann_original,
  boltzmann_support_exclude_borderline,
  boltzmann_support_mixed,
  graham_outcome,
};

const char* to_string(RuleVariant v);
const char* to_string(CellTag t);

CellClassification classify_cell(const WaveField& f, const Cell& cell, const Region& beta,
                                 double eps_amp = kDefaultEpsAmp);

/// Branch counts behind an interval probability. For the mixed support
/// variant the two bounds use different denominators.
struct BranchCounts {
  std::int64_t m = 0;        // definitely in β
  std::int64_t r = 0;        // indefinite on β
  std::int64_t n_lower = 0;  // denominator of the lower bound
  std::int64_t n_upper = 0;  // denominator of the upper bound
};

BranchCounts branch_counts(const WaveField& f, const Ensemble& e, const Region& beta, RuleVariant v,
                           double eps_amp = kDefaultEpsAmp);

/// μ_E(β) = [m/n, (m+r)/n] under the requested rule variant.
IntervalProb interval_probability(const WaveField& f, const Ensemble& e, const Region& beta,
                                  RuleVariant v, double eps_amp = kDefaultEpsAmp);

struct ConsistencyReport {
  std::vector<IntervalProb> intervals;
  bool consistent = false;
  std::optional<IntervalProb> intersection;
  /// Indices of a separating pair when inconsistent (max-lo vs min-hi).
  std::optional<std::pair<int, int>> witnesses;
};

/// Evaluates μ_E(β) over a family and intersects: consistent iff the
/// common intersection is nonempty.
ConsistencyReport consistency_check(const WaveField& f, std::span<const Ensemble> family,
                                    const Region& beta, std::span<const RuleVariant> variants,
                                    double eps_amp = kDefaultEpsAmp);

struct AdditivityReport {
  IntervalProb mu_beta;
  IntervalProb mu_beta_prime;
  IntervalProb mu_union;
  IntervalProb sum;
  bool subset_holds = false;
  bool exact_additivity = false;
  /// Some microstate carries weight in both β and β′.
  bool shared_superposition = false;
};

/// μ(β ∪ β′) ⊆ μ(β) + μ(β′) for disjoint macrostates, with equality
/// whenever no microstate is a superposition of both.
AdditivityReport generalized_additivity_check(const WaveField& f, const Ensemble& e, const Region& beta,
                                              const Region& beta_prime, RuleVariant v,
                                              double eps_amp = kDefaultEpsAmp);

/// Outcome-counting frequency: every outcome region of nonzero weight
/// counts once, equally, regardless of its weight.
Rational graham_frequency(const WaveField& f, std::span<const Region> outcomes, std::size_t query,
                          double eps_amp = kDefaultEpsAmp);

struct ConditionalReport {
  IntervalProb interval;
  double conditional_born = 0.0;  // weight(α∩β) / weight(α)
  bool contained = false;
  std::vector<Cell> cells;
};

/// μ_{E'}(β) where E' is a fresh equal-weight ensemble for the restricted
/// state P_α|ψ⟩: the re-ensembling route to conditional probabilities.
/// Cells are counted by restricted weight, so the restricted Born quantity
/// lies inside the interval.
ConditionalReport conditional_interval_probability(const WaveField& f, const Region& alpha,
                                                   const Region& beta, int n,
                                                   SplitAxisPolicy policy = SplitAxisPolicy::alternate_x_first,
                                                   double eps_amp = kDefaultEpsAmp,
                                                   int n_max = kDefaultMaxEnsembleSize);

struct BornContainmentReport {
  IntervalProb interval;
  double born = 0.0;
  bool contained = false;
  double margin_lo = 0.0;  // born − lo
  double margin_hi = 0.0;  // hi − born
  bool exact_partition = false;       // r == 0
  double exact_agreement_error = 0.0; // |m/n − born| when exact
  bool pass = false;
};

/// Born quantity for β must lie inside the equiamplitude interval; when β
/// is exactly partitioned the agreement must be an equality.
BornContainmentReport born_containment_check(const WaveField& f, const Ensemble& e, const Region& beta,
                                             double tol_contain, double tol_exact = 1e-12,
                                             double eps_amp = kDefaultEpsAmp);

}  // namespace eqc
