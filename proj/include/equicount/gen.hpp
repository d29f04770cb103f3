#pragma once

#include <cstdint>
#include <memory>
#include <random>

#include "equicount/field.hpp"
#include "equicount/hilbert.hpp"
#include "equicount/partition.hpp"
#include "equicount/space.hpp"

namespace eqc {
namespace gen {

/// Deterministic stream for campaign trials. Trial seeds are derived from
/// the master seed so any failing trial replays from its own seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(eng_);
  }
  int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  bool coin(double p = 0.5) { return uniform(0.0, 1.0) < p; }
  double gauss() { return std::normal_distribution<double>(0.0, 1.0)(eng_); }
  Complex complex_gauss() { return Complex{gauss(), gauss()}; }

 private:
  std::mt19937_64 eng_;
  std::uint64_t seed_;
};

/// splitmix64 step; used to derive independent per-trial seeds.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Random bounded space: 1D up to max_boxes_1d grid boxes, 2D up to
/// max_res_2d per axis, random finite bounds.
ParameterSpace random_space(Rng& rng, int max_boxes_1d, int max_res_2d);

/// Random complex field; a fraction of samples may be zeroed to create
/// support structure. Total weight always positive.
std::shared_ptr<const WaveField> random_field(Rng& rng, const ParameterSpace& space,
                                              double zero_fraction = 0.0);

/// Random macrostate: canonical union of up to max_boxes random boxes.
Region random_region(Rng& rng, const ParameterSpace& space, int max_boxes);

/// Union of whole cells drawn from an ensemble (exactly partitioned β).
Region random_cell_union(Rng& rng, const Ensemble& e);

hilbert::StateVector random_state(Rng& rng, std::size_t d);
hilbert::Matrix random_unitary(Rng& rng, std::size_t d);
hilbert::Projector random_projector(Rng& rng, std::size_t d, std::size_t rank);

}  // namespace gen
}  // namespace eqc
