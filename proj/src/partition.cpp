#include "equicount/partition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eqc {

namespace {

void check_n(int n, int n_max) {
  if (n < 1) throw std::invalid_argument("ensemble size must be >= 1");
  if (n > n_max) throw std::invalid_argument("ensemble size exceeds the configured maximum");
}

/// Piecewise-linear cumulative weight along one axis: segment k covers
/// x in [x0[k], x0[k] + len[k]] with constant density slope[k].
struct MarginalCdf {
  std::vector<double> x0;
  std::vector<double> len;
  std::vector<double> slope;
  std::vector<double> cum;  // cum[k] = weight strictly before segment k; cum[size] = total
};

/// Leftmost coordinate where the cumulative weight reaches level.
double invert_cdf(const MarginalCdf& m, double level) {
  const auto it = std::lower_bound(m.cum.begin() + 1, m.cum.end(), level);
  std::size_t k = static_cast<std::size_t>(it - m.cum.begin()) - 1;
  if (k >= m.x0.size()) k = m.x0.size() - 1;
  if (m.cum[k] >= level) return m.x0[k];
  const double x = m.x0[k] + (level - m.cum[k]) / m.slope[k];
  return std::clamp(x, m.x0[k], m.x0[k] + m.len[k]);
}

/// Density per unit length along `axis` of |f|² over the cross-section of
/// `rect` at a coordinate inside [seg_lo, seg_hi] (one grid box wide),
/// optionally masked: only the parts of the cross-section inside mask
/// boxes that span the whole segment contribute.
double cross_density(const WaveField& f, const Box& rect, int axis, int i, double seg_lo,
                     double seg_hi, const Region* mask) {
  const ParameterSpace& s = f.space();
  const int dim = s.dimension();
  const int other = 1 - axis;

  auto spans_segment = [&](const Box& b) {
    const Interval& iv = b.axes[static_cast<std::size_t>(axis)];
    return iv.lo <= seg_lo && iv.hi >= seg_hi;
  };

  if (dim == 1) {
    const double d = std::norm(f.samples()[static_cast<std::size_t>(i)]);
    if (!mask) return d;
    for (const Box& b : mask->boxes())
      if (spans_segment(b)) return d;
    return 0.0;
  }

  const Interval yspan = rect.axes[static_cast<std::size_t>(other)];
  const int j0 = s.box_index(other, yspan.lo);
  const int j1 = s.box_index(other, std::nextafter(yspan.hi, yspan.lo));
  long double density = 0.0L;
  for (int j = j0; j <= j1; ++j) {
    double lo = std::max(yspan.lo, s.edge(other, j));
    double hi = std::min(yspan.hi, s.edge(other, j + 1));
    if (!(hi > lo)) continue;
    const std::size_t flat = axis == 0 ? s.flat_index(i, j) : s.flat_index(j, i);
    const double w = std::norm(f.samples()[flat]);
    if (!mask) {
      density += static_cast<long double>(w) * (hi - lo);
      continue;
    }
    for (const Box& b : mask->boxes()) {
      if (!spans_segment(b)) continue;
      const Interval& my = b.axes[static_cast<std::size_t>(other)];
      const double cl = std::max(lo, my.lo);
      const double ch = std::min(hi, my.hi);
      if (ch > cl) density += static_cast<long double>(w) * (ch - cl);
    }
  }
  return static_cast<double>(density);
}

/// Marginal of |f|² (optionally masked) over `rect` along `axis`. Segment
/// breakpoints are the grid edges plus any mask-box edges, so the density
/// is constant on each segment and the CDF exactly piecewise linear.
MarginalCdf marginal_cdf(const WaveField& f, const Box& rect, int axis, const Region* mask = nullptr) {
  const ParameterSpace& s = f.space();
  const Interval span = rect.axes[static_cast<std::size_t>(axis)];
  const int i0 = s.box_index(axis, span.lo);
  const int i1 = s.box_index(axis, std::nextafter(span.hi, span.lo));

  std::vector<double> cuts;
  cuts.push_back(span.lo);
  for (int i = i0; i <= i1 + 1; ++i) {
    const double e = s.edge(axis, i);
    if (e > span.lo && e < span.hi) cuts.push_back(e);
  }
  if (mask) {
    for (const Box& b : mask->boxes()) {
      for (const double e : {b.axes[static_cast<std::size_t>(axis)].lo,
                             b.axes[static_cast<std::size_t>(axis)].hi})
        if (e > span.lo && e < span.hi) cuts.push_back(e);
    }
  }
  cuts.push_back(span.hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  MarginalCdf m;
  m.cum.push_back(0.0);
  long double acc = 0.0L;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double lo = cuts[k];
    const double hi = cuts[k + 1];
    if (!(hi > lo)) continue;
    // Segments never cross grid or mask edges; the midpoint pins the box.
    const int i = s.box_index(axis, lo + 0.5 * (hi - lo));
    const double density = cross_density(f, rect, axis, i, lo, hi, mask);
    m.x0.push_back(lo);
    m.len.push_back(hi - lo);
    m.slope.push_back(density);
    acc += static_cast<long double>(density) * static_cast<long double>(hi - lo);
    m.cum.push_back(static_cast<double>(acc));
  }
  return m;
}

void bisect_by_weight(const WaveField& f, const Box& rect, int n, int depth, SplitAxisPolicy policy,
                      const Region* mask, std::vector<Cell>& out) {
  if (n == 1) {
    out.push_back(Cell{rect});
    return;
  }
  const int dim = f.space().dimension();
  int axis = 0;
  if (dim == 2) {
    switch (policy) {
      case SplitAxisPolicy::alternate_x_first:
        axis = depth % 2;
        break;
      case SplitAxisPolicy::alternate_y_first:
        axis = 1 - depth % 2;
        break;
      case SplitAxisPolicy::longest_extent:
        axis = rect.axes[1].length() > rect.axes[0].length() ? 1 : 0;
        break;
    }
  }
  const MarginalCdf m = marginal_cdf(f, rect, axis, mask);
  const double total = m.cum.back();
  const int n_left = n / 2;
  if (!(total > 0.0))
    throw std::domain_error("zero-weight slab cannot be split into equal-weight cells");
  const double cut = invert_cdf(m, total * (static_cast<double>(n_left) / static_cast<double>(n)));

  Box left = rect;
  Box right = rect;
  left.axes[static_cast<std::size_t>(axis)].hi = cut;
  right.axes[static_cast<std::size_t>(axis)].lo = cut;
  bisect_by_weight(f, left, n_left, depth + 1, policy, mask, out);
  bisect_by_weight(f, right, n - n_left, depth + 1, policy, mask, out);
}

std::vector<Cell> equal_weight_cells(const WaveField& f, int n, SplitAxisPolicy policy,
                                     const Region* mask) {
  const ParameterSpace& space = f.space();
  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(n));
  if (space.dimension() == 1) {
    const MarginalCdf m = marginal_cdf(f, space.domain_box(), 0, mask);
    const double total = m.cum.back();
    if (!(total > 0.0)) throw std::domain_error("state carries no weight to partition");
    double prev = space.bound(0).lo;
    for (int k = 1; k < n; ++k) {
      const double cut = invert_cdf(m, total * (static_cast<double>(k) / static_cast<double>(n)));
      if (!(cut > prev)) throw std::logic_error("quantile cuts must be strictly increasing");
      cells.push_back(Cell{make_box(prev, cut)});
      prev = cut;
    }
    cells.push_back(Cell{make_box(prev, space.bound(0).hi)});
  } else {
    bisect_by_weight(f, space.domain_box(), n, 0, policy, mask, cells);
  }
  return cells;
}

void bisect_by_volume(const Box& rect, int n, int depth, int dim, std::vector<Cell>& out) {
  if (n == 1) {
    out.push_back(Cell{rect});
    return;
  }
  const int axis = dim == 2 ? depth % 2 : 0;
  const int n_left = n / 2;
  const Interval span = rect.axes[static_cast<std::size_t>(axis)];
  const double cut = span.lo + span.length() * (static_cast<double>(n_left) / static_cast<double>(n));
  Box left = rect;
  Box right = rect;
  left.axes[static_cast<std::size_t>(axis)].hi = cut;
  right.axes[static_cast<std::size_t>(axis)].lo = cut;
  bisect_by_volume(left, n_left, depth + 1, dim, out);
  bisect_by_volume(right, n - n_left, depth + 1, dim, out);
}

}  // namespace

Ensemble::Ensemble(ParameterSpace space, std::vector<Cell> cells, PartitionRule rule,
                   std::shared_ptr<const WaveField> field)
    : space_(std::move(space)), cells_(std::move(cells)), rule_(rule), field_(std::move(field)) {}

Ensemble Ensemble::from_cells(ParameterSpace space, std::vector<Cell> cells, PartitionRule rule,
                              std::shared_ptr<const WaveField> field) {
  if (cells.empty()) throw std::invalid_argument("ensemble needs at least one cell");
  const Box dom = space.domain_box();
  for (const Cell& c : cells) {
    if (!(c.box.measure(space.dimension()) > 0.0))
      throw std::invalid_argument("ensemble cells must have positive measure");
    for (int a = 0; a < space.dimension(); ++a) {
      const auto ax = static_cast<std::size_t>(a);
      if (c.box.axes[ax].lo < dom.axes[ax].lo || c.box.axes[ax].hi > dom.axes[ax].hi)
        throw std::invalid_argument("ensemble cell outside the parameter space");
    }
  }
  if (field && field->space() != space)
    throw std::invalid_argument("ensemble field must live on the ensemble's space");
  if (rule == PartitionRule::equiamplitude && !field)
    throw std::invalid_argument("equiamplitude ensembles require their field");
  return Ensemble(std::move(space), std::move(cells), rule, std::move(field));
}

Region Ensemble::cell_region(int k) const {
  return Region::canonical(space_.dimension(), {cells_[static_cast<std::size_t>(k)].box});
}

Ensemble equivolume_partition(const ParameterSpace& space, int n, EquivolumeLayout layout, int n_max,
                              std::shared_ptr<const WaveField> field) {
  check_n(n, n_max);
  const int dim = space.dimension();
  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(n));

  auto slab_edges = [&](int axis, int count) {
    std::vector<double> e(static_cast<std::size_t>(count) + 1);
    const Interval b = space.bound(axis);
    for (int k = 0; k <= count; ++k)
      e[static_cast<std::size_t>(k)] =
          k == 0 ? b.lo : (k == count ? b.hi : b.lo + b.length() * (static_cast<double>(k) / count));
    return e;
  };

  switch (layout.kind) {
    case EquivolumeLayout::Kind::slabs: {
      const int axis = dim == 2 ? static_cast<int>(layout.axis) : 0;
      const std::vector<double> e = slab_edges(axis, n);
      for (int k = 0; k < n; ++k) {
        Box b = space.domain_box();
        b.axes[static_cast<std::size_t>(axis)] = {e[static_cast<std::size_t>(k)], e[static_cast<std::size_t>(k) + 1]};
        cells.push_back(Cell{b});
      }
      break;
    }
    case EquivolumeLayout::Kind::grid: {
      if (dim != 2) throw std::invalid_argument("grid layout needs a 2D space");
      if (layout.rows < 1 || layout.cols < 1 || layout.rows * layout.cols != n)
        throw std::invalid_argument("grid layout rows*cols must equal n");
      const std::vector<double> ex = slab_edges(0, layout.cols);
      const std::vector<double> ey = slab_edges(1, layout.rows);
      for (int r = 0; r < layout.rows; ++r)
        for (int c = 0; c < layout.cols; ++c)
          cells.push_back(Cell{make_box(ex[static_cast<std::size_t>(c)], ex[static_cast<std::size_t>(c) + 1],
                                        ey[static_cast<std::size_t>(r)], ey[static_cast<std::size_t>(r) + 1])});
      break;
    }
    case EquivolumeLayout::Kind::bisect:
      bisect_by_volume(space.domain_box(), n, 0, dim, cells);
      break;
  }
  return Ensemble::from_cells(space, std::move(cells), PartitionRule::equivolume, std::move(field));
}

Ensemble equiamplitude_partition(std::shared_ptr<const WaveField> field, int n, SplitAxisPolicy policy,
                                 int n_max) {
  if (!field) throw std::invalid_argument("equiamplitude partition needs a field");
  check_n(n, n_max);
  if (!(field->total_weight() > 0.0))
    throw std::domain_error("equiamplitude partition needs positive total weight");
  std::vector<Cell> cells = equal_weight_cells(*field, n, policy, nullptr);
  ParameterSpace space = field->space();
  return Ensemble::from_cells(std::move(space), std::move(cells), PartitionRule::equiamplitude,
                              std::move(field));
}

std::vector<Cell> equiamplitude_cells_restricted(const WaveField& f, const Region& mask, int n,
                                                 SplitAxisPolicy policy, int n_max) {
  check_n(n, n_max);
  if (!mask.is_empty() && mask.dimension() != f.space().dimension())
    throw std::invalid_argument("mask dimension mismatch");
  if (!(f.weight(mask) > 0.0))
    throw std::domain_error("restricted state carries no weight to partition");
  return equal_weight_cells(f, n, policy, &mask);
}

bool ValidationReport::pass(double volume_tol, double weight_tol, double sum_tol) const {
  return cells_positive && max_pairwise_overlap <= sum_tol && coverage_gap <= sum_tol &&
         lambda_sum_error <= sum_tol && max_volume_deviation <= volume_tol &&
         max_weight_deviation <= weight_tol && weight_sum_error <= sum_tol;
}

ValidationReport validate(const Ensemble& e) {
  ValidationReport rep;
  rep.n = e.size();
  const int dim = e.space().dimension();
  const double lambda_m = e.space().measure();

  long double lambda_sum = 0.0L;
  for (const Cell& c : e.cells()) {
    const double v = c.box.measure(dim);
    if (!(v > 0.0)) rep.cells_positive = false;
    lambda_sum += static_cast<long double>(v);
  }
  rep.lambda_sum_error = std::abs(static_cast<double>(lambda_sum) - lambda_m) / lambda_m;

  // Pairwise overlaps: cells are single boxes, so overlap is a direct product.
  for (std::size_t i = 0; i < e.cells().size(); ++i) {
    for (std::size_t j = i + 1; j < e.cells().size(); ++j) {
      double ov = 1.0;
      for (int a = 0; a < dim; ++a) {
        const Interval& p = e.cells()[i].box.axes[static_cast<std::size_t>(a)];
        const Interval& q = e.cells()[j].box.axes[static_cast<std::size_t>(a)];
        ov *= std::max(0.0, std::min(p.hi, q.hi) - std::max(p.lo, q.lo));
      }
      rep.max_pairwise_overlap = std::max(rep.max_pairwise_overlap, ov / lambda_m);
    }
  }

  std::vector<Box> boxes;
  boxes.reserve(e.cells().size());
  for (const Cell& c : e.cells()) boxes.push_back(c.box);
  const Region covered = Region::canonical(dim, std::move(boxes));
  const Region domain = Region::canonical(dim, {e.space().domain_box()});
  rep.coverage_gap = lambda_measure(region_difference(domain, covered)) / lambda_m;

  if (e.rule() == PartitionRule::equivolume) {
    const double target = lambda_m / e.size();
    for (const Cell& c : e.cells())
      rep.max_volume_deviation =
          std::max(rep.max_volume_deviation, std::abs(c.box.measure(dim) - target) / lambda_m);
  }

  if (const auto f = e.field()) {
    const double w_total = f->total_weight();
    const double target = w_total / e.size();
    long double w_sum = 0.0L;
    for (const Cell& c : e.cells()) {
      const double w = f->weight_in_box(c.box);
      w_sum += static_cast<long double>(w);
      if (e.rule() == PartitionRule::equiamplitude)
        rep.max_weight_deviation = std::max(rep.max_weight_deviation, std::abs(w - target) / w_total);
    }
    rep.weight_sum_error = std::abs(static_cast<double>(w_sum) - w_total) / w_total;
  }
  return rep;
}

}  // namespace eqc
