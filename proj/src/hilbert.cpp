#include "equicount/hilbert.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace eqc {
namespace hilbert {

StateVector::StateVector(std::vector<Complex> components) : c_(std::move(components)) {
  if (c_.empty()) throw std::invalid_argument("state vector needs dimension >= 1");
  for (const Complex& v : c_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw std::invalid_argument("state vector components must be finite");
}

StateVector StateVector::zero(std::size_t d) {
  return StateVector(std::vector<Complex>(d, Complex{0.0, 0.0}));
}

double StateVector::norm_squared() const {
  long double s = 0.0L;
  for (const Complex& v : c_) s += static_cast<long double>(std::norm(v));
  return static_cast<double>(s);
}

double StateVector::norm() const { return std::sqrt(norm_squared()); }

StateVector& StateVector::operator+=(const StateVector& o) {
  if (o.dim() != dim()) throw std::invalid_argument("dimension mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

StateVector& StateVector::operator-=(const StateVector& o) {
  if (o.dim() != dim()) throw std::invalid_argument("dimension mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

StateVector& StateVector::operator*=(Complex s) {
  for (Complex& v : c_) v *= s;
  return *this;
}

Complex inner(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  long double re = 0.0L, im = 0.0L;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const Complex v = std::conj(a[i]) * b[i];
    re += v.real();
    im += v.imag();
  }
  return Complex{static_cast<double>(re), static_cast<double>(im)};
}

Matrix Matrix::identity(std::size_t dim) {
  Matrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = Complex{1.0, 0.0};
  return m;
}

StateVector Matrix::apply(const StateVector& v) const {
  if (v.dim() != n) throw std::invalid_argument("dimension mismatch");
  StateVector out = StateVector::zero(n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex s{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) s += at(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

Matrix Matrix::multiply(const Matrix& o) const {
  if (o.n != n) throw std::invalid_argument("dimension mismatch");
  Matrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex v = at(i, k);
      if (v == Complex{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < n; ++j) out.at(i, j) += v * o.at(k, j);
    }
  return out;
}

Matrix Matrix::adjoint() const {
  Matrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.at(i, j) = std::conj(at(j, i));
  return out;
}

StateVector Matrix::column(std::size_t j) const {
  StateVector out = StateVector::zero(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = at(i, j);
  return out;
}

Projector::Projector(Matrix p, double tol) : p_(std::move(p)) {
  if (p_.n == 0) throw std::invalid_argument("projector needs dimension >= 1");
  const Matrix adj = p_.adjoint();
  const Matrix sq = p_.multiply(p_);
  double herm = 0.0, idem = 0.0;
  for (std::size_t i = 0; i < p_.a.size(); ++i) {
    herm = std::max(herm, std::abs(p_.a[i] - adj.a[i]));
    idem = std::max(idem, std::abs(p_.a[i] - sq.a[i]));
  }
  if (herm > tol) throw std::invalid_argument("projector must be Hermitian");
  if (idem > tol) throw std::invalid_argument("projector must be idempotent");
}

Projector Projector::identity(std::size_t d) { return Projector(Matrix::identity(d)); }

Projector Projector::zero(std::size_t d) { return Projector(Matrix(d)); }

Projector Projector::onto_span(const std::vector<StateVector>& orthonormal) {
  if (orthonormal.empty()) throw std::invalid_argument("span projector needs vectors");
  const std::size_t d = orthonormal.front().dim();
  Matrix m(d);
  for (const StateVector& v : orthonormal) {
    if (v.dim() != d) throw std::invalid_argument("dimension mismatch");
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m.at(i, j) += v[i] * std::conj(v[j]);
  }
  return Projector(std::move(m));
}

StateVector EnsembleDecomposition::sum() const {
  if (parts.empty()) throw std::invalid_argument("empty decomposition");
  StateVector s = parts.front();
  for (std::size_t j = 1; j < parts.size(); ++j) s += parts[j];
  return s;
}

DecompositionCheck check_decomposition(const EnsembleDecomposition& dec, const StateVector& psi) {
  DecompositionCheck chk;
  const double psi_norm = psi.norm();
  const double psi_nsq = psi.norm_squared();
  chk.sum_error = (dec.sum() - psi).norm() / psi_norm;
  const double omega = psi_norm / std::sqrt(static_cast<double>(dec.size()));
  for (std::size_t i = 0; i < dec.size(); ++i) {
    chk.max_norm_error = std::max(chk.max_norm_error, std::abs(dec.parts[i].norm() - omega) / omega);
    for (std::size_t j = i + 1; j < dec.size(); ++j)
      chk.max_cross = std::max(chk.max_cross, std::abs(inner(dec.parts[i], dec.parts[j])) / psi_nsq);
  }
  return chk;
}

EnsembleDecomposition equiamplitude_decompose(const StateVector& psi, int n, const Matrix* basis) {
  const std::size_t d = psi.dim();
  if (n < 1) throw std::invalid_argument("decomposition size must be >= 1");
  if (static_cast<std::size_t>(n) > d)
    throw std::invalid_argument("cannot fit n mutually orthogonal nonzero parts in dimension d < n");
  const double psi_norm = psi.norm();
  if (!(psi_norm > 0.0)) throw std::invalid_argument("cannot decompose the zero vector");
  if (basis && basis->n != d) throw std::invalid_argument("basis dimension mismatch");

  // Orthonormal set e_0..e_{n-1} with e_0 = ψ/‖ψ‖, completed by modified
  // Gram–Schmidt over the basis columns in order.
  std::vector<StateVector> e;
  e.reserve(static_cast<std::size_t>(n));
  e.push_back((Complex{1.0 / psi_norm, 0.0}) * psi);
  const Matrix id = Matrix::identity(d);
  const Matrix& b = basis ? *basis : id;
  for (std::size_t col = 0; col < d && e.size() < static_cast<std::size_t>(n); ++col) {
    StateVector v = b.column(col);
    for (const StateVector& u : e) v -= inner(u, v) * u;
    double vn = v.norm();
    if (vn <= 1e-8) continue;  // near-parallel column, skip
    v *= Complex{1.0 / vn, 0.0};
    // Second orthogonalization pass keeps the set orthonormal to machine
    // precision even for nearly dependent columns.
    for (const StateVector& u : e) v -= inner(u, v) * u;
    vn = v.norm();
    v *= Complex{1.0 / vn, 0.0};
    e.push_back(std::move(v));
  }
  if (e.size() < static_cast<std::size_t>(n))
    throw std::invalid_argument("basis does not span enough independent directions");

  // φ_j = (‖ψ‖/n)·Σ_k exp(2πi·jk/n)·e_k; the DFT phases make the parts
  // orthogonal with equal norms and Σ_j φ_j = ψ.
  EnsembleDecomposition dec;
  dec.parts.reserve(static_cast<std::size_t>(n));
  const double scale = psi_norm / static_cast<double>(n);
  for (int j = 0; j < n; ++j) {
    StateVector phi = StateVector::zero(d);
    for (int k = 0; k < n; ++k) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((static_cast<std::int64_t>(j) * k) % n) /
                           static_cast<double>(n);
      const Complex w = std::polar(scale, angle);
      const StateVector& ek = e[static_cast<std::size_t>(k)];
      for (std::size_t i = 0; i < d; ++i) phi[i] += w * ek[i];
    }
    dec.parts.push_back(std::move(phi));
  }
  return dec;
}

const char* to_string(VectorClass c) {
  switch (c) {
    case VectorClass::in:
      return "in";
    case VectorClass::out:
      return "out";
    case VectorClass::indefinite:
      return "indefinite";
  }
  return "?";
}

VectorClass classify_vector(const Projector& p, const StateVector& phi, double tol) {
  const double phi_norm = phi.norm();
  if (!(phi_norm > 0.0)) throw std::invalid_argument("cannot classify the zero vector");
  const StateVector proj = p.apply(phi);
  if ((proj - phi).norm() <= tol * phi_norm) return VectorClass::in;
  if (proj.norm() <= tol * phi_norm) return VectorClass::out;
  return VectorClass::indefinite;
}

IntervalProb appendix_interval(const Projector& p, const EnsembleDecomposition& dec, double tol) {
  std::int64_t m = 0, r = 0;
  for (const StateVector& phi : dec.parts) {
    switch (classify_vector(p, phi, tol)) {
      case VectorClass::in:
        ++m;
        break;
      case VectorClass::indefinite:
        ++r;
        break;
      case VectorClass::out:
        break;
    }
  }
  return IntervalProb::from_counts(m, r, static_cast<std::int64_t>(dec.size()));
}

AppendixReport appendix_theorem_check(const Projector& p, const StateVector& psi,
                                      const EnsembleDecomposition& dec, double tol,
                                      double bound_slack) {
  AppendixReport rep;
  rep.n = static_cast<std::int64_t>(dec.size());
  rep.decomposition = check_decomposition(dec, psi);

  StateVector xi_sum = StateVector::zero(psi.dim());
  for (const StateVector& phi : dec.parts) {
    switch (classify_vector(p, phi, tol)) {
      case VectorClass::in:
        ++rep.m;
        break;
      case VectorClass::indefinite:
        ++rep.r;
        xi_sum += phi;
        break;
      case VectorClass::out:
        break;
    }
  }
  rep.interval = IntervalProb::from_counts(rep.m, rep.r, rep.n);

  const double psi_nsq = psi.norm_squared();
  const double expectation = inner(psi, p.apply(psi)).real();
  rep.quotient = expectation / psi_nsq;
  rep.contained = contains_real(rep.interval, rep.quotient, bound_slack);

  const double omega_sq = psi_nsq / static_cast<double>(rep.n);
  rep.indefinite_term = inner(xi_sum, p.apply(xi_sum)).real();
  rep.indefinite_bound = static_cast<double>(rep.r) * omega_sq;
  const double slack = bound_slack * psi_nsq;
  const bool term_ok = rep.indefinite_term >= -slack && rep.indefinite_term <= rep.indefinite_bound + slack;
  const bool lower_ok = static_cast<double>(rep.m) * omega_sq <= expectation + slack;
  const bool upper_ok = expectation <= static_cast<double>(rep.m + rep.r) * omega_sq + slack;
  rep.proof_bounds_hold = term_ok && lower_ok && upper_ok;

  rep.pass = rep.contained && rep.proof_bounds_hold && rep.decomposition.pass(1e-10);
  return rep;
}

AppendixReport appendix_theorem_check(const Projector& p, const StateVector& psi, int n,
                                      const Matrix* basis, double tol, double bound_slack) {
  return appendix_theorem_check(p, psi, equiamplitude_decompose(psi, n, basis), tol, bound_slack);
}

}  // namespace hilbert
}  // namespace eqc
