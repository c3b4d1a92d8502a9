#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace zlab {

using BigInt = boost::multiprecision::cpp_int;

/// Domain error with a short machine-readable code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(msg), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

namespace detail {

// Floor division, denominator > 0.
inline BigInt floor_div(const BigInt& num, const BigInt& den) {
  BigInt q = num / den;
  if (num % den != 0 && num < 0) --q;
  return q;
}

inline BigInt pow2(std::int64_t k) {
  if (k < 0) throw Error("internal", "pow2 of negative exponent");
  return BigInt(1) << static_cast<unsigned>(k);
}

}  // namespace detail

// An exact binary-scaled rational: value = mantissa * 2^exponent.
// Canonical form keeps the mantissa odd (or 0 with exponent 0), so equality
// of representations coincides with equality of values.
class DyadicRational {
 public:
  DyadicRational() : mantissa_(0), exponent_(0) {}
  DyadicRational(long long v) : mantissa_(v), exponent_(0) { normalize(); }  // NOLINT: implicit
  DyadicRational(BigInt mantissa, std::int64_t exponent)
      : mantissa_(std::move(mantissa)), exponent_(exponent) {
    normalize();
  }

  static DyadicRational zero() { return DyadicRational(); }
  static DyadicRational one() { return DyadicRational(1); }

  // Exact (numerator, denominator) with denominator a power of two.
  static DyadicRational from_fraction(const BigInt& num, const BigInt& den) {
    if (den <= 0) throw Error("dyadic", "denominator must be positive");
    if (den != 1) {
      const unsigned low = boost::multiprecision::lsb(den);
      if ((BigInt(1) << low) != den)
        throw Error("dyadic", "denominator is not a power of two");
      return DyadicRational(num, -static_cast<std::int64_t>(low));
    }
    return DyadicRational(num, 0);
  }

  std::pair<BigInt, BigInt> to_fraction() const {
    if (exponent_ >= 0) return {mantissa_ * detail::pow2(exponent_), BigInt(1)};
    return {mantissa_, detail::pow2(-exponent_)};
  }

  const BigInt& mantissa() const noexcept { return mantissa_; }
  std::int64_t exponent() const noexcept { return exponent_; }
  bool is_zero() const noexcept { return mantissa_ == 0; }
  int sign() const noexcept { return mantissa_ == 0 ? 0 : (mantissa_ < 0 ? -1 : 1); }

  DyadicRational operator-() const {
    DyadicRational r;
    r.mantissa_ = -mantissa_;
    r.exponent_ = mantissa_ == 0 ? 0 : exponent_;
    return r;
  }

  friend DyadicRational operator+(const DyadicRational& a, const DyadicRational& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const std::int64_t e = a.exponent_ < b.exponent_ ? a.exponent_ : b.exponent_;
    BigInt m = (a.mantissa_ << static_cast<unsigned>(a.exponent_ - e)) +
               (b.mantissa_ << static_cast<unsigned>(b.exponent_ - e));
    return DyadicRational(std::move(m), e);
  }

  friend DyadicRational operator-(const DyadicRational& a, const DyadicRational& b) {
    return a + (-b);
  }

  friend DyadicRational operator*(const DyadicRational& a, const DyadicRational& b) {
    return DyadicRational(a.mantissa_ * b.mantissa_, a.exponent_ + b.exponent_);
  }

  // Value * 2^k, exact.
  DyadicRational times_pow2(std::int64_t k) const {
    if (is_zero()) return *this;
    DyadicRational r;
    r.mantissa_ = mantissa_;
    r.exponent_ = exponent_ + k;
    return r;
  }

  // -1 / 0 / +1 as *this compares to other.
  int compare(const DyadicRational& other) const {
    const int sa = sign(), sb = other.sign();
    if (sa != sb) return sa < sb ? -1 : 1;
    if (sa == 0) return 0;
    const std::int64_t e = exponent_ < other.exponent_ ? exponent_ : other.exponent_;
    const BigInt lhs = mantissa_ << static_cast<unsigned>(exponent_ - e);
    const BigInt rhs = other.mantissa_ << static_cast<unsigned>(other.exponent_ - e);
    return lhs == rhs ? 0 : (lhs < rhs ? -1 : 1);
  }

  friend bool operator==(const DyadicRational& a, const DyadicRational& b) {
    return a.mantissa_ == b.mantissa_ && a.exponent_ == b.exponent_;
  }
  friend bool operator!=(const DyadicRational& a, const DyadicRational& b) { return !(a == b); }
  friend bool operator<(const DyadicRational& a, const DyadicRational& b) { return a.compare(b) < 0; }
  friend bool operator<=(const DyadicRational& a, const DyadicRational& b) { return a.compare(b) <= 0; }
  friend bool operator>(const DyadicRational& a, const DyadicRational& b) { return a.compare(b) > 0; }
  friend bool operator>=(const DyadicRational& a, const DyadicRational& b) { return a.compare(b) >= 0; }

  // Largest k with 2^k <= value; requires value > 0.
  std::int64_t floor_log2() const {
    if (sign() <= 0) throw Error("dyadic", "floor_log2 requires a positive value");
    return static_cast<std::int64_t>(boost::multiprecision::msb(mantissa_)) + exponent_;
  }

  // floor(value * 2^g), exact.
  BigInt floor_scaled(std::int64_t g) const {
    const std::int64_t e = exponent_ + g;
    if (e >= 0) return mantissa_ << static_cast<unsigned>(e);
    return detail::floor_div(mantissa_, detail::pow2(-e));
  }

  double to_double() const {
    return static_cast<double>(mantissa_) * std::pow(2.0, static_cast<double>(exponent_));
  }

  // "m" when integral, otherwise "m*2^e"; exact, used for diagnostics.
  std::string to_string() const {
    if (exponent_ == 0) return mantissa_.str();
    return mantissa_.str() + "*2^" + std::to_string(exponent_);
  }

 private:
  void normalize() {
    if (mantissa_ == 0) {
      exponent_ = 0;
      return;
    }
    const unsigned low = boost::multiprecision::lsb(boost::multiprecision::abs(mantissa_));
    if (low > 0) {
      mantissa_ >>= low;
      exponent_ += static_cast<std::int64_t>(low);
    }
  }

  BigInt mantissa_;
  std::int64_t exponent_;
};

enum class IntervalRelation { Disjoint, Equal, FirstInsideSecond, SecondInsideFirst };

// The half-open interval [s*2^t, (s+1)*2^t).
struct DyadicInterval {
  BigInt s;
  std::int64_t t = 0;

  DyadicInterval() = default;
  DyadicInterval(BigInt s_, std::int64_t t_) : s(std::move(s_)), t(t_) {}

  DyadicRational lower() const { return DyadicRational(s, t); }
  DyadicRational upper() const { return DyadicRational(s + 1, t); }
  DyadicRational length() const { return DyadicRational(1, t); }

  bool contains(const DyadicRational& x) const { return x >= lower() && x < upper(); }

  friend bool operator==(const DyadicInterval& a, const DyadicInterval& b) {
    return a.t == b.t && a.s == b.s;
  }
  friend bool operator!=(const DyadicInterval& a, const DyadicInterval& b) { return !(a == b); }

  std::string to_string() const {
    return "[" + lower().to_string() + "," + upper().to_string() + ")";
  }
};

// Two dyadic intervals are equal, nested, or disjoint; never partially overlapping.
inline IntervalRelation interval_relation(const DyadicInterval& i, const DyadicInterval& j) {
  if (i.t == j.t) return i.s == j.s ? IntervalRelation::Equal : IntervalRelation::Disjoint;
  if (i.t < j.t) {
    // i is shorter; it lies inside j iff its cell index truncates to j's.
    const BigInt q = detail::floor_div(i.s, detail::pow2(j.t - i.t));
    return q == j.s ? IntervalRelation::FirstInsideSecond : IntervalRelation::Disjoint;
  }
  const BigInt q = detail::floor_div(j.s, detail::pow2(i.t - j.t));
  return q == i.s ? IntervalRelation::SecondInsideFirst : IntervalRelation::Disjoint;
}

inline bool interval_subset(const DyadicInterval& inner, const DyadicInterval& outer) {
  const IntervalRelation r = interval_relation(inner, outer);
  return r == IntervalRelation::Equal || r == IntervalRelation::FirstInsideSecond;
}

// The resolution-g cell [floor(v*2^g)*2^-g, ...) containing v.
inline DyadicInterval cell_at_resolution(const DyadicRational& v, std::int64_t g) {
  return DyadicInterval(v.floor_scaled(g), -g);
}

}  // namespace zlab
