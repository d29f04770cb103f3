#include "equicount/interval_prob.hpp"

#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace eqc {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v) {
  if (v > static_cast<i128>(std::numeric_limits<std::int64_t>::max()) ||
      v < static_cast<i128>(std::numeric_limits<std::int64_t>::min()))
    throw std::overflow_error("rational arithmetic overflow");
  return static_cast<std::int64_t>(v);
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

/// Reduce in 128-bit and narrow; all rational construction funnels here.
std::pair<std::int64_t, std::int64_t> reduced(i128 num, i128 den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return {narrow(num), narrow(den)};
}

Rational normalized(i128 num, i128 den) {
  const auto [n, d] = reduced(num, den);
  return Rational(n, d);
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  const auto [n, d] = reduced(num, den);
  num_ = n;
  den_ = d;
}

double Rational::to_double() const {
  return static_cast<double>(static_cast<long double>(num_) / static_cast<long double>(den_));
}

std::string Rational::to_string() const {
  std::ostringstream os;
  os << num_ << "/" << den_;
  return os.str();
}

Rational operator+(const Rational& a, const Rational& b) {
  return normalized(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                    static_cast<i128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return normalized(static_cast<i128>(a.num_) * b.den_ - static_cast<i128>(b.num_) * a.den_,
                    static_cast<i128>(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return normalized(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::invalid_argument("rational division by zero");
  return normalized(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
}

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<i128>(a.num_) * b.den_ < static_cast<i128>(b.num_) * a.den_;
}

IntervalProb IntervalProb::from_counts(std::int64_t m, std::int64_t r, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("interval probability needs n >= 1");
  if (m < 0 || r < 0 || m + r > n)
    throw std::invalid_argument("interval probability counts need 0 <= m, 0 <= r, m + r <= n");
  return from_bounds(Rational(m, n), Rational(m + r, n));
}

IntervalProb IntervalProb::from_bounds(Rational lo, Rational hi) {
  if (hi < lo) throw std::invalid_argument("interval probability needs lo <= hi");
  IntervalProb p;
  p.lo = lo;
  p.hi = hi;
  p.out_of_range = lo < Rational(0) || Rational(1) < hi;
  return p;
}

std::string IntervalProb::to_string() const {
  std::ostringstream os;
  os << "[" << lo.to_string() << ", " << hi.to_string() << "]";
  if (out_of_range) os << " (out of range)";
  return os.str();
}

IntervalProb add(const IntervalProb& a, const IntervalProb& b) {
  return IntervalProb::from_bounds(a.lo + b.lo, a.hi + b.hi);
}

IntervalProb mul(const IntervalProb& a, const IntervalProb& b) {
  return IntervalProb::from_bounds(a.lo * b.lo, a.hi * b.hi);
}

bool subset(const IntervalProb& a, const IntervalProb& b) {
  return b.lo <= a.lo && a.hi <= b.hi;
}

std::optional<IntervalProb> intersect_all(std::span<const IntervalProb> xs) {
  if (xs.empty()) throw std::invalid_argument("intersect_all needs a nonempty family");
  Rational lo = xs[0].lo;
  Rational hi = xs[0].hi;
  for (const IntervalProb& p : xs.subspan(1)) {
    if (p.lo > lo) lo = p.lo;
    if (p.hi < hi) hi = p.hi;
  }
  if (hi < lo) return std::nullopt;
  return IntervalProb::from_bounds(lo, hi);
}

bool contains_real(const IntervalProb& a, double x, double tol) {
  if (tol < 0) throw std::invalid_argument("containment tolerance must be nonnegative");
  return a.lo.to_double() - tol <= x && x <= a.hi.to_double() + tol;
}

}  // namespace eqc
