#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "equicount/interval_prob.hpp"

namespace eqc {
namespace hilbert {

using Complex = std::complex<double>;

/// Vector in a finite-dimensional complex Hilbert space.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(std::vector<Complex> components);
  static StateVector zero(std::size_t d);

  std::size_t dim() const { return c_.size(); }
  const std::vector<Complex>& components() const { return c_; }
  Complex& operator[](std::size_t i) { return c_[i]; }
  const Complex& operator[](std::size_t i) const { return c_[i]; }

  double norm() const;
  double norm_squared() const;

  StateVector& operator+=(const StateVector& o);
  StateVector& operator-=(const StateVector& o);
  StateVector& operator*=(Complex s);
  friend StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
  friend StateVector operator-(StateVector a, const StateVector& b) { return a -= b; }
  friend StateVector operator*(Complex s, StateVector v) { return v *= s; }

 private:
  std::vector<Complex> c_;
};

/// ⟨a|b⟩, conjugate-linear in the first argument.
Complex inner(const StateVector& a, const StateVector& b);

/// Dense row-major complex matrix; small dimensions only.
struct Matrix {
  std::size_t n = 0;
  std::vector<Complex> a;

  Matrix() = default;
  explicit Matrix(std::size_t dim) : n(dim), a(dim * dim) {}
  static Matrix identity(std::size_t dim);

  Complex& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
  const Complex& at(std::size_t i, std::size_t j) const { return a[i * n + j]; }

  StateVector apply(const StateVector& v) const;
  Matrix multiply(const Matrix& o) const;
  Matrix adjoint() const;

  /// Column j as a vector.
  StateVector column(std::size_t j) const;
};

/// Projection operator: Hermitian and idempotent, both verified at
/// construction to the given tolerance.
class Projector {
 public:
  explicit Projector(Matrix p, double tol = 1e-10);

  static Projector identity(std::size_t d);
  static Projector zero(std::size_t d);
  /// Orthogonal projector onto the span of orthonormal columns.
  static Projector onto_span(const std::vector<StateVector>& orthonormal);

  std::size_t dim() const { return p_.n; }
  const Matrix& matrix() const { return p_; }
  StateVector apply(const StateVector& v) const { return p_.apply(v); }

 private:
  Matrix p_;
};

/// n mutually orthogonal equal-norm vectors summing to the decomposed
/// state: the finite-dimensional equiamplitude ensemble.
struct EnsembleDecomposition {
  std::vector<StateVector> parts;

  std::size_t size() const { return parts.size(); }
  StateVector sum() const;
};

/// Contract audit: Σ parts = psi, pairwise orthogonality, equal norms.
struct DecompositionCheck {
  double sum_error = 0.0;        // ‖Σ parts − ψ‖ / ‖ψ‖
  double max_cross = 0.0;        // max |⟨φ_i|φ_j⟩| / ‖ψ‖², i ≠ j
  double max_norm_error = 0.0;   // max |‖φ_j‖ − ω_n| / ω_n
  bool pass(double tol = 1e-10) const {
    return sum_error <= tol && max_cross <= tol && max_norm_error <= tol;
  }
};

DecompositionCheck check_decomposition(const EnsembleDecomposition& dec, const StateVector& psi);

/// Decompose ψ into n orthogonal parts of norm ‖ψ‖/√n via discrete-Fourier
/// phases over an orthonormal set extending ψ/‖ψ‖. The set is completed
/// deterministically from the supplied unitary basis columns (identity
/// when none is given), skipping near-parallel columns.
EnsembleDecomposition equiamplitude_decompose(const StateVector& psi, int n,
                                              const Matrix* basis = nullptr);

enum class VectorClass { in, out, indefinite };
const char* to_string(VectorClass c);

/// In iff ‖Pφ − φ‖ ≤ tol·‖φ‖; out iff ‖Pφ‖ ≤ tol·‖φ‖; else indefinite.
VectorClass classify_vector(const Projector& p, const StateVector& phi, double tol = 1e-10);

/// μ_E(β) = [m/n, (m+r)/n] from classifying every part of a decomposition.
IntervalProb appendix_interval(const Projector& p, const EnsembleDecomposition& dec,
                               double tol = 1e-10);

struct AppendixReport {
  std::int64_t m = 0;
  std::int64_t r = 0;
  std::int64_t n = 0;
  double quotient = 0.0;  // ⟨ψ|P|ψ⟩ / ⟨ψ|ψ⟩
  IntervalProb interval;
  bool contained = false;
  DecompositionCheck decomposition;
  double indefinite_term = 0.0;      // ⟨Σξ|P|Σξ⟩ over the indefinite parts
  double indefinite_bound = 0.0;     // r·ω_n²
  bool proof_bounds_hold = false;    // m·ω² ≤ ⟨ψ|P|ψ⟩ ≤ (m+r)·ω² and 0 ≤ term ≤ bound
  bool pass = false;
};

/// Full verification: build the decomposition, classify, check that the
/// Rayleigh quotient lies in the interval, and account for the proof's
/// intermediate bound on the indefinite block.
AppendixReport appendix_theorem_check(const Projector& p, const StateVector& psi, int n,
                                      const Matrix* basis = nullptr, double tol = 1e-10,
                                      double bound_slack = 1e-9);

/// Same verification for a caller-supplied decomposition of ψ.
AppendixReport appendix_theorem_check(const Projector& p, const StateVector& psi,
                                      const EnsembleDecomposition& dec, double tol = 1e-10,
                                      double bound_slack = 1e-9);

}  // namespace hilbert
}  // namespace eqc
