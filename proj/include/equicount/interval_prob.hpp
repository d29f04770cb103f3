#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

namespace eqc {

/// Exact rational on int64 with 128-bit intermediates. Always normalized:
/// positive denominator, lowest terms. Throws std::overflow_error if a
/// result cannot be narrowed back to int64.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  Rational(std::int64_t n) : num_(n), den_(1) {}
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const;
  std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator<=(const Rational& a, const Rational& b) { return a < b || a == b; }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

 private:
  std::int64_t num_;
  std::int64_t den_;
};

/// Interval probability [lo, hi] with exact rational bounds. Bounds are
/// never clamped; intervals escaping [0,1] carry the out_of_range flag so
/// pathological rule variants stay representable.
struct IntervalProb {
  Rational lo;
  Rational hi;
  bool out_of_range = false;

  /// [m/n, (m+r)/n] from branch counts; m + r <= n, n >= 1.
  static IntervalProb from_counts(std::int64_t m, std::int64_t r, std::int64_t n);

  /// Arbitrary rational bounds, lo <= hi; flags bounds outside [0,1].
  static IntervalProb from_bounds(Rational lo, Rational hi);

  /// Degenerate exact probability [p, p].
  static IntervalProb exact(Rational p) { return from_bounds(p, p); }

  bool degenerate() const { return lo == hi; }
  Rational width() const { return hi - lo; }

  bool operator==(const IntervalProb&) const = default;
  std::string to_string() const;
};

IntervalProb add(const IntervalProb& a, const IntervalProb& b);
IntervalProb mul(const IntervalProb& a, const IntervalProb& b);

/// a ⊆ b as closed intervals (exact rational comparison).
bool subset(const IntervalProb& a, const IntervalProb& b);

/// [max lo, min hi] over a nonempty family, or nullopt if that is empty.
std::optional<IntervalProb> intersect_all(std::span<const IntervalProb> xs);

/// lo − tol <= x <= hi + tol.
bool contains_real(const IntervalProb& a, double x, double tol);

}  // namespace eqc
