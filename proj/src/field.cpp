#include "equicount/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eqc {

namespace {

/// Per-axis overlap of box interval [lo, hi] with the grid: index range
/// plus the clipped length inside each grid box.
struct AxisOverlap {
  int first = 0;
  std::vector<double> lengths;  // lengths[i - first] for i in [first, first + size)
};

AxisOverlap axis_overlap(const ParameterSpace& s, int axis, Interval iv) {
  AxisOverlap ov;
  const Interval& b = s.bound(axis);
  iv.lo = std::max(iv.lo, b.lo);
  iv.hi = std::min(iv.hi, b.hi);
  if (!(iv.hi > iv.lo)) return ov;
  const int i0 = s.box_index(axis, iv.lo);
  const int i1 = s.box_index(axis, std::nextafter(iv.hi, iv.lo));  // box containing hi's left side
  ov.first = i0;
  ov.lengths.reserve(static_cast<std::size_t>(i1 - i0 + 1));
  for (int i = i0; i <= i1; ++i) {
    const double lo = std::max(iv.lo, s.edge(axis, i));
    const double hi = std::min(iv.hi, s.edge(axis, i + 1));
    ov.lengths.push_back(std::max(0.0, hi - lo));
  }
  return ov;
}

long double box_weight_sum(const ParameterSpace& s, std::span<const Complex> samples, const Box& b) {
  const AxisOverlap ox = axis_overlap(s, 0, b.axes[0]);
  if (ox.lengths.empty()) return 0.0L;
  long double total = 0.0L;
  if (s.dimension() == 1) {
    for (std::size_t k = 0; k < ox.lengths.size(); ++k) {
      const Complex c = samples[static_cast<std::size_t>(ox.first) + k];
      total += static_cast<long double>(std::norm(c)) * ox.lengths[k];
    }
    return total;
  }
  const AxisOverlap oy = axis_overlap(s, 1, b.axes[1]);
  if (oy.lengths.empty()) return 0.0L;
  const int nx = s.resolution(0);
  for (std::size_t ky = 0; ky < oy.lengths.size(); ++ky) {
    const std::size_t row = static_cast<std::size_t>(oy.first + static_cast<int>(ky)) * static_cast<std::size_t>(nx);
    long double row_sum = 0.0L;
    for (std::size_t kx = 0; kx < ox.lengths.size(); ++kx) {
      const Complex c = samples[row + static_cast<std::size_t>(ox.first) + kx];
      row_sum += static_cast<long double>(std::norm(c)) * ox.lengths[kx];
    }
    total += row_sum * oy.lengths[ky];
  }
  return total;
}

}  // namespace

WaveField::WaveField(ParameterSpace space, std::vector<Complex> samples)
    : space_(std::move(space)), samples_(std::move(samples)), total_weight_(0.0) {
  if (samples_.size() != space_.box_count())
    throw std::invalid_argument("sample count must equal the grid box count");
  for (const Complex& c : samples_)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw std::invalid_argument("field samples must be finite");
  total_weight_ = weight_in_box(space_.domain_box());
  if (!(total_weight_ > 0.0) || !std::isfinite(total_weight_))
    throw std::invalid_argument("total weight must be finite and positive");
}

double WaveField::weight_in_box(const Box& b) const {
  return static_cast<double>(box_weight_sum(space_, samples_, b));
}

double WaveField::weight(const Region& r) const {
  if (r.is_empty()) return 0.0;
  if (r.dimension() != space_.dimension()) throw std::invalid_argument("region dimension mismatch");
  long double total = 0.0L;
  for (const Box& b : r.boxes()) total += box_weight_sum(space_, samples_, b);
  return static_cast<double>(total);
}

double WaveField::born(const Region& beta) const {
  if (!(total_weight_ > 0.0)) throw std::domain_error("born quantity undefined for zero-weight state");
  return weight(beta) / total_weight_;
}

Complex WaveField::sample_at(const Point& q) const {
  const int ix = space_.box_index(0, q[0]);
  const int iy = space_.dimension() == 2 ? space_.box_index(1, q[1]) : 0;
  return samples_[space_.flat_index(ix, iy)];
}

Region WaveField::support(double eps_amp) const {
  if (eps_amp < 0) throw std::invalid_argument("eps_amp must be nonnegative");
  const double threshold = eps_amp * total_weight_;
  std::vector<Box> boxes;
  const int nx = space_.resolution(0);
  const int ny = space_.dimension() == 2 ? space_.resolution(1) : 1;
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      Box b;
      b.axes[0] = {space_.edge(0, ix), space_.edge(0, ix + 1)};
      if (space_.dimension() == 2) b.axes[1] = {space_.edge(1, iy), space_.edge(1, iy + 1)};
      const double w = std::norm(samples_[space_.flat_index(ix, iy)]) * b.measure(space_.dimension());
      if (w > threshold) boxes.push_back(b);
    }
  }
  return Region::canonical(space_.dimension(), std::move(boxes));
}

RestrictedField::RestrictedField(std::shared_ptr<const WaveField> base, Region mask)
    : base_(std::move(base)), mask_(std::move(mask)) {
  if (!base_) throw std::invalid_argument("restricted field needs a base field");
  if (!mask_.is_empty() && mask_.dimension() != base_->space().dimension())
    throw std::invalid_argument("mask dimension mismatch");
}

double RestrictedField::weight() const { return base_->weight(mask_); }

Complex RestrictedField::eval(const Point& q) const {
  if (!mask_.contains(q)) return Complex{0.0, 0.0};
  return base_->sample_at(q);
}

RestrictedField restrict_field(const WaveField& f, const Region& r) {
  return RestrictedField(std::make_shared<WaveField>(f), r);
}

RestrictedField restrict_field(std::shared_ptr<const WaveField> f, const Region& r) {
  return RestrictedField(std::move(f), r);
}

Complex inner_product(const RestrictedField& g, const RestrictedField& h) {
  const ParameterSpace& s = g.base_->space();
  if (h.base_->space() != s)
    throw std::invalid_argument("inner product needs fields on the same parameter space");
  const Region common = region_intersect(g.mask_, h.mask_);
  long double re = 0.0L, im = 0.0L;
  std::span<const Complex> gs = g.base_->samples();
  std::span<const Complex> hs = h.base_->samples();
  for (const Box& b : common.boxes()) {
    const AxisOverlap ox = axis_overlap(s, 0, b.axes[0]);
    if (ox.lengths.empty()) continue;
    if (s.dimension() == 1) {
      for (std::size_t k = 0; k < ox.lengths.size(); ++k) {
        const std::size_t i = static_cast<std::size_t>(ox.first) + k;
        const Complex v = std::conj(gs[i]) * hs[i];
        re += static_cast<long double>(v.real()) * ox.lengths[k];
        im += static_cast<long double>(v.imag()) * ox.lengths[k];
      }
      continue;
    }
    const AxisOverlap oy = axis_overlap(s, 1, b.axes[1]);
    const int nx = s.resolution(0);
    for (std::size_t ky = 0; ky < oy.lengths.size(); ++ky) {
      const std::size_t row = static_cast<std::size_t>(oy.first + static_cast<int>(ky)) * static_cast<std::size_t>(nx);
      for (std::size_t kx = 0; kx < ox.lengths.size(); ++kx) {
        const std::size_t i = row + static_cast<std::size_t>(ox.first) + kx;
        const Complex v = std::conj(gs[i]) * hs[i];
        const double area = ox.lengths[kx] * oy.lengths[ky];
        re += static_cast<long double>(v.real()) * area;
        im += static_cast<long double>(v.imag()) * area;
      }
    }
  }
  return Complex{static_cast<double>(re), static_cast<double>(im)};
}

}  // namespace eqc
