#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "equicount/space.hpp"

namespace eqc {

using Complex = std::complex<double>;

class RestrictedField;

/// Quantum state as a piecewise-constant complex field on the grid of a
/// ParameterSpace. Samples are stored x-fastest (flat = iy*nx + ix).
/// No normalization is assumed; only the total weight must be positive.
class WaveField {
 public:
  WaveField(ParameterSpace space, std::vector<Complex> samples);

  const ParameterSpace& space() const { return space_; }
  std::span<const Complex> samples() const { return samples_; }

  /// W = ∫_M |f|² dλ.
  double total_weight() const { return total_weight_; }

  /// ∫_r |f|² dλ, exact under the piecewise-constant model; boxes cut by
  /// region edges contribute fractionally.
  double weight(const Region& r) const;
  double weight_in_box(const Box& b) const;

  /// Born quantity weight(β)/W, in [0, 1].
  double born(const Region& beta) const;

  /// Field value at q (constant on each grid box).
  Complex sample_at(const Point& q) const;

  /// Union of grid boxes whose weight exceeds eps_amp·W.
  Region support(double eps_amp) const;

  bool operator==(const WaveField&) const = default;

 private:
  ParameterSpace space_;
  std::vector<Complex> samples_;
  double total_weight_;
};

/// χ_r·f for a WaveField f: equal to f inside the mask region, zero
/// outside. Grid boxes cut by the mask keep fractional-measure bookkeeping
/// through the mask region itself, so weights and inner products stay exact.
class RestrictedField {
 public:
  RestrictedField(std::shared_ptr<const WaveField> base, Region mask);

  const WaveField& base() const { return *base_; }
  const Region& mask() const { return mask_; }

  /// ⟨g, g⟩ = ∫_mask |f|² dλ.
  double weight() const;

  /// Value at q: f(q) inside the mask, 0 outside.
  Complex eval(const Point& q) const;

  friend Complex inner_product(const RestrictedField& g, const RestrictedField& h);

 private:
  std::shared_ptr<const WaveField> base_;
  Region mask_;
};

/// P_r applied to f: the restricted field χ_r·f.
RestrictedField restrict_field(const WaveField& f, const Region& r);
RestrictedField restrict_field(std::shared_ptr<const WaveField> f, const Region& r);

/// Σ over M of conj(g)·h dλ with exact fractional-box handling.
Complex inner_product(const RestrictedField& g, const RestrictedField& h);

}  // namespace eqc
