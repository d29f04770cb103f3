#pragma once

#include <memory>
#include <vector>

#include "equicount/field.hpp"
#include "equicount/space.hpp"

namespace eqc {

enum class PartitionRule { equivolume, equiamplitude };

enum class SplitAxis { x = 0, y = 1 };

/// Cell geometry for equal-volume partitions.
struct EquivolumeLayout {
  enum class Kind { slabs, grid, bisect };

  Kind kind = Kind::slabs;
  SplitAxis axis = SplitAxis::x;  // slabs
  int rows = 0;                   // grid: rows * cols must equal n
  int cols = 0;

  static EquivolumeLayout slabs(SplitAxis a = SplitAxis::x) { return {Kind::slabs, a, 0, 0}; }
  static EquivolumeLayout grid(int rows, int cols) { return {Kind::grid, SplitAxis::x, rows, cols}; }
  static EquivolumeLayout bisect() { return {Kind::bisect, SplitAxis::x, 0, 0}; }
};

/// Axis choice for recursive equal-weight bisection in 2D.
enum class SplitAxisPolicy { alternate_x_first, alternate_y_first, longest_extent };

/// A finite partition of M into connected cells under one counting rule.
/// Constructors guarantee the invariants (disjoint cover, equal λ or equal
/// weight); from_cells admits hand-built geometry so validate() has
/// something to flag.
class Ensemble {
 public:
  static Ensemble from_cells(ParameterSpace space, std::vector<Cell> cells, PartitionRule rule,
                             std::shared_ptr<const WaveField> field = nullptr);

  const ParameterSpace& space() const { return space_; }
  const std::vector<Cell>& cells() const { return cells_; }
  PartitionRule rule() const { return rule_; }
  int size() const { return static_cast<int>(cells_.size()); }

  /// Field the ensemble partitions; required for equiamplitude, optional
  /// bookkeeping for equivolume.
  std::shared_ptr<const WaveField> field() const { return field_; }

  Region cell_region(int k) const;

 private:
  Ensemble(ParameterSpace space, std::vector<Cell> cells, PartitionRule rule,
           std::shared_ptr<const WaveField> field);

  ParameterSpace space_;
  std::vector<Cell> cells_;
  PartitionRule rule_;
  std::shared_ptr<const WaveField> field_;
};

inline constexpr int kDefaultMaxEnsembleSize = 4096;

/// n connected cells of λ-measure λ(M)/n each.
Ensemble equivolume_partition(const ParameterSpace& space, int n,
                              EquivolumeLayout layout = EquivolumeLayout::slabs(),
                              int n_max = kDefaultMaxEnsembleSize,
                              std::shared_ptr<const WaveField> field = nullptr);

/// n connected rectangular cells each carrying weight W/n. 1D inverts the
/// cumulative weight at the n−1 quantile levels; 2D recursively bisects by
/// weight, ⌊n/2⌋ against ⌈n/2⌉, alternating axes. Where the cumulative
/// weight is flat at a target level the leftmost coordinate is taken.
Ensemble equiamplitude_partition(std::shared_ptr<const WaveField> field, int n,
                                 SplitAxisPolicy policy = SplitAxisPolicy::alternate_x_first,
                                 int n_max = kDefaultMaxEnsembleSize);

/// Equal-weight cells for the restricted state χ_mask·f: n connected cells
/// covering M, each carrying weight(f, mask)/n. Used to re-ensemble a
/// projected state, e.g. for conditional probabilities.
std::vector<Cell> equiamplitude_cells_restricted(const WaveField& f, const Region& mask, int n,
                                                 SplitAxisPolicy policy = SplitAxisPolicy::alternate_x_first,
                                                 int n_max = kDefaultMaxEnsembleSize);

/// Invariant audit for an ensemble; constructor outputs pass, hand-built
/// geometry gets its defects quantified.
struct ValidationReport {
  int n = 0;
  double max_pairwise_overlap = 0.0;   // λ(α_j ∩ α_k) worst pair
  double coverage_gap = 0.0;           // λ(M \ ∪ α_k)
  double lambda_sum_error = 0.0;       // |Σ λ(α_k) − λ(M)| / λ(M)
  double max_volume_deviation = 0.0;   // max |λ(α_k) − λ(M)/n| / λ(M), equivolume
  double max_weight_deviation = 0.0;   // max |w(α_k) − W/n| / W, equiamplitude with field
  double weight_sum_error = 0.0;       // |Σ w(α_k) − W| / W (Parseval), with field
  bool cells_positive = true;

  bool pass(double volume_tol = 1e-12, double weight_tol = 1e-9, double sum_tol = 1e-12) const;
};

ValidationReport validate(const Ensemble& e);

}  // namespace eqc
