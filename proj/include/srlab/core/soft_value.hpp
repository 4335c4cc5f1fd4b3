// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <string>

#include "srlab/core/float_format.hpp"

namespace srlab {

using Significand = boost::multiprecision::cpp_int;

namespace detail {

inline unsigned bit_width(const Significand& v) {
  return v.is_zero() ? 0u : static_cast<unsigned>(boost::multiprecision::msb(v)) + 1u;
}

// Round a positive integer to `bits` significant bits, nearest-even, with an
// optional sticky bit standing for a nonzero tail below the integer. Returns
// the rounded integer (at most `bits` wide, or exactly 2^bits after carry) and
// adds the number of dropped positions to `shift`.
inline std::uint64_t round_to_u64(const Significand& v, unsigned bits, bool sticky,
                                  std::int64_t& shift) {
  const unsigned w = bit_width(v);
  if (w <= bits && !sticky) return v.convert_to<std::uint64_t>();
  if (w <= bits) {
    // Only the sticky tail is dropped: it is below half an ulp.
    return v.convert_to<std::uint64_t>();
  }
  const unsigned drop = w - bits;
  std::uint64_t kept = static_cast<Significand>(v >> drop).convert_to<std::uint64_t>();
  const bool half = boost::multiprecision::bit_test(v, drop - 1);
  bool below = sticky;
  if (!below && drop >= 2) {
    below = boost::multiprecision::lsb(v) < drop - 1;
  }
  if (half && (below || (kept & 1u))) ++kept;
  shift += drop;
  return kept;
}

}  // namespace detail

/// An exact binary number: zero, or sign * significand * 2^(exponent - width + 1)
/// with the leading significand bit set.
///
/// Values are kept canonical: trailing zero bits are stripped from the
/// significand, so `width` is the minimal number of bits needed and two
/// SoftValues are equal iff they denote the same real.
class SoftValue {
 public:
  SoftValue() = default;

  static SoftValue zero() { return {}; }

  /// sign * magnitude * 2^lsb_exponent, normalized.
  static SoftValue from_parts(bool negative, Significand magnitude, std::int64_t lsb_exponent) {
    SoftValue v;
    if (magnitude.is_zero()) return v;
    if (magnitude.sign() < 0) {
      magnitude = -magnitude;
      negative = !negative;
    }
    const unsigned tz = static_cast<unsigned>(boost::multiprecision::lsb(magnitude));
    if (tz != 0) {
      magnitude >>= tz;
      lsb_exponent += tz;
    }
    v.width_ = detail::bit_width(magnitude);
    v.negative_ = negative;
    v.exponent_ = lsb_exponent + static_cast<std::int64_t>(v.width_) - 1;
    v.significand_ = std::move(magnitude);
    return v;
  }

  /// Signed integer times a power of two.
  static SoftValue from_signed(const Significand& value, std::int64_t lsb_exponent = 0) {
    return from_parts(value.sign() < 0, boost::multiprecision::abs(value), lsb_exponent);
  }

  static SoftValue from_int(std::int64_t value, std::int64_t lsb_exponent = 0) {
    return from_signed(Significand(value), lsb_exponent);
  }

  /// Exact conversion of a finite double.
  static SoftValue from_double(double value) {
    if (!std::isfinite(value)) throw std::invalid_argument("SoftValue::from_double: non-finite");
    if (value == 0.0) return {};
    int e = 0;
    const double m = std::frexp(std::fabs(value), &e);
    const auto mant = static_cast<std::uint64_t>(std::ldexp(m, 53));
    return from_parts(value < 0, Significand(mant), static_cast<std::int64_t>(e) - 53);
  }

  bool is_zero() const { return width_ == 0; }
  bool is_negative() const { return negative_; }
  /// Exponent of the leading bit. Meaningless for zero.
  std::int64_t exponent() const { return exponent_; }
  unsigned width() const { return width_; }
  const Significand& significand() const { return significand_; }
  std::int64_t lsb_exponent() const { return exponent_ - static_cast<std::int64_t>(width_) + 1; }

  /// -1, 0 or +1.
  int sign() const { return is_zero() ? 0 : (negative_ ? -1 : 1); }

  SoftValue negated() const {
    SoftValue v = *this;
    if (!v.is_zero()) v.negative_ = !v.negative_;
    return v;
  }

  SoftValue abs() const {
    SoftValue v = *this;
    v.negative_ = false;
    return v;
  }

  /// True iff the value is an element of `fmt` (zero always is).
  bool representable_in(const FloatFormat& fmt) const {
    if (is_zero()) return true;
    return width_ <= static_cast<unsigned>(fmt.precision()) && fmt.exponent_in_range(exponent_);
  }

  /// The significand as a signed integer (value = signed_significand * 2^lsb_exponent).
  Significand signed_significand() const { return negative_ ? Significand(-significand_) : significand_; }

  /// Correctly rounded (nearest-even) conversion; no attempt is made to
  /// handle results outside the double exponent range.
  double to_double() const {
    if (is_zero()) return 0.0;
    std::int64_t shift = lsb_exponent();
    const std::uint64_t m = detail::round_to_u64(significand_, 53, false, shift);
    const double mag = std::ldexp(static_cast<double>(m), static_cast<int>(shift));
    return negative_ ? -mag : mag;
  }

  /// e.g. "-1.011b*2^-3"; "0" for zero.
  std::string to_binary_string() const {
    if (is_zero()) return "0";
    std::string bits;
    bits.reserve(width_);
    for (unsigned i = width_; i-- > 0;)
      bits.push_back(boost::multiprecision::bit_test(significand_, i) ? '1' : '0');
    std::string out = negative_ ? "-" : "";
    out += bits.substr(0, 1);
    if (bits.size() > 1) out += "." + bits.substr(1);
    out += "b*2^" + std::to_string(exponent_);
    return out;
  }

  friend bool operator==(const SoftValue& a, const SoftValue& b) {
    return a.width_ == b.width_ && (a.is_zero() || (a.negative_ == b.negative_ && a.exponent_ == b.exponent_ &&
                                                    a.significand_ == b.significand_));
  }

  friend std::strong_ordering operator<=>(const SoftValue& a, const SoftValue& b) {
    if (a.sign() != b.sign()) return a.sign() <=> b.sign();
    if (a.is_zero()) return std::strong_ordering::equal;
    const auto mag = compare_magnitude(a, b);
    return a.negative_ ? 0 <=> mag : mag <=> 0;
  }

  /// Sign of |a| - |b|.
  static int compare_magnitude(const SoftValue& a, const SoftValue& b) {
    if (a.is_zero() || b.is_zero()) return (a.is_zero() ? 0 : 1) - (b.is_zero() ? 0 : 1);
    if (a.exponent_ != b.exponent_) return a.exponent_ < b.exponent_ ? -1 : 1;
    // Same leading exponent: align the significands at the smaller lsb.
    const std::int64_t la = a.lsb_exponent(), lb = b.lsb_exponent();
    if (la == lb) return a.significand_.compare(b.significand_) < 0 ? -1 : (a.significand_ == b.significand_ ? 0 : 1);
    if (la < lb) {
      const Significand bs = b.significand_ << static_cast<unsigned>(lb - la);
      const int c = a.significand_.compare(bs);
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    const Significand as = a.significand_ << static_cast<unsigned>(la - lb);
    const int c = as.compare(b.significand_);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }

 private:
  bool negative_ = false;
  std::int64_t exponent_ = 0;
  unsigned width_ = 0;
  Significand significand_;
};

/// Correctly rounded double approximation of num / den.
inline double ratio_to_double(const SoftValue& num, const SoftValue& den) {
  if (den.is_zero()) throw std::domain_error("ratio_to_double: zero denominator");
  if (num.is_zero()) return 0.0;
  const unsigned wn = num.width(), wd = den.width();
  const unsigned shift = (wd > wn ? wd - wn : 0u) + 66u;
  Significand q, rem;
  boost::multiprecision::divide_qr(Significand(num.significand() << shift), den.significand(), q, rem);
  std::int64_t exp = num.lsb_exponent() - den.lsb_exponent() - static_cast<std::int64_t>(shift);
  const std::uint64_t m = detail::round_to_u64(q, 53, !rem.is_zero(), exp);
  const double mag = std::ldexp(static_cast<double>(m), static_cast<int>(exp));
  return num.is_negative() != den.is_negative() ? -mag : mag;
}

}  // namespace srlab
