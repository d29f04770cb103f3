#include "equicount/gen.hpp"

#include <algorithm>
#include <cmath>

namespace eqc {
namespace gen {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ParameterSpace random_space(Rng& rng, int max_boxes_1d, int max_res_2d) {
  const double lo = rng.uniform(-3.0, 1.0);
  const double len = rng.uniform(0.5, 5.0);
  if (rng.coin()) {
    const int n = rng.uniform_int(4, max_boxes_1d);
    return ParameterSpace::line(lo, lo + len, n);
  }
  const double lo2 = rng.uniform(-2.0, 2.0);
  const double len2 = rng.uniform(0.5, 4.0);
  const int nx = rng.uniform_int(4, max_res_2d);
  const int ny = rng.uniform_int(4, max_res_2d);
  return ParameterSpace::plane({lo, lo + len}, {lo2, lo2 + len2}, nx, ny);
}

std::shared_ptr<const WaveField> random_field(Rng& rng, const ParameterSpace& space,
                                              double zero_fraction) {
  const std::size_t count = space.box_count();
  std::vector<Complex> samples(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (zero_fraction > 0.0 && rng.coin(zero_fraction)) continue;
    samples[i] = rng.complex_gauss();
  }
  // Keep at least one sample nonzero so the weight is positive.
  bool any = false;
  for (const Complex& c : samples)
    if (c != Complex{0.0, 0.0}) any = true;
  if (!any) samples[count / 2] = Complex{1.0, 0.0};
  return std::make_shared<WaveField>(space, std::move(samples));
}

Region random_region(Rng& rng, const ParameterSpace& space, int max_boxes) {
  const int k = rng.uniform_int(1, max_boxes);
  std::vector<Box> boxes;
  boxes.reserve(static_cast<std::size_t>(k));
  for (int b = 0; b < k; ++b) {
    Box box;
    for (int a = 0; a < space.dimension(); ++a) {
      const Interval bound = space.bound(a);
      double u = rng.uniform(bound.lo, bound.hi);
      double v = rng.uniform(bound.lo, bound.hi);
      if (u > v) std::swap(u, v);
      box.axes[static_cast<std::size_t>(a)] = {u, v};
    }
    boxes.push_back(box);
  }
  return make_region(space, std::move(boxes));
}

Region random_cell_union(Rng& rng, const Ensemble& e) {
  std::vector<Box> boxes;
  for (const Cell& c : e.cells())
    if (rng.coin()) boxes.push_back(c.box);
  if (boxes.empty()) boxes.push_back(e.cells()[static_cast<std::size_t>(rng.uniform_int(0, e.size() - 1))].box);
  return Region::canonical(e.space().dimension(), std::move(boxes));
}

hilbert::StateVector random_state(Rng& rng, std::size_t d) {
  std::vector<Complex> c(d);
  for (Complex& v : c) v = rng.complex_gauss();
  hilbert::StateVector psi{std::move(c)};
  if (!(psi.norm() > 1e-6)) return random_state(rng, d);
  return psi;
}

hilbert::Matrix random_unitary(Rng& rng, std::size_t d) {
  // Gram–Schmidt on a random complex matrix; columns become orthonormal.
  std::vector<hilbert::StateVector> cols;
  cols.reserve(d);
  while (cols.size() < d) {
    hilbert::StateVector v = random_state(rng, d);
    for (const hilbert::StateVector& u : cols) v -= hilbert::inner(u, v) * u;
    const double n = v.norm();
    if (n <= 1e-6) continue;
    v *= Complex{1.0 / n, 0.0};
    for (const hilbert::StateVector& u : cols) v -= hilbert::inner(u, v) * u;
    v *= Complex{1.0 / v.norm(), 0.0};
    cols.push_back(std::move(v));
  }
  hilbert::Matrix m(d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) m.at(i, j) = cols[j][i];
  return m;
}

hilbert::Projector random_projector(Rng& rng, std::size_t d, std::size_t rank) {
  if (rank == 0) return hilbert::Projector::zero(d);
  if (rank >= d) return hilbert::Projector::identity(d);
  const hilbert::Matrix u = random_unitary(rng, d);
  std::vector<hilbert::StateVector> span;
  span.reserve(rank);
  for (std::size_t j = 0; j < rank; ++j) span.push_back(u.column(j));
  return hilbert::Projector::onto_span(span);
}

}  // namespace gen
}  // namespace eqc
