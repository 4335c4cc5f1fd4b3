// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "srlab/core/errors.hpp"
#include "srlab/core/soft_value.hpp"

namespace srlab {

/// The two format values bracketing x in the real order, and the exact
/// position of x between them: q(x) = residual_num / 2^residual_den_log2.
struct Neighbors {
  SoftValue floor;
  SoftValue ceil;
  Significand residual_num;
  unsigned residual_den_log2 = 0;

  bool exact() const { return residual_num.is_zero(); }
  double probability_up() const {
    return ratio_to_double(SoftValue::from_parts(false, residual_num, 0),
                           SoftValue::from_parts(false, Significand(1), residual_den_log2));
  }
};

namespace detail {

// |x| cut at `bits` significant bits: |x| = (kept + tail / 2^tail_bits) * 2^ulp_exponent.
struct MagnitudeSplit {
  bool negative = false;
  Significand kept;
  Significand tail;
  unsigned tail_bits = 0;
  std::int64_t ulp_exponent = 0;

  bool exact() const { return tail_bits == 0; }
  SoftValue toward_zero() const { return SoftValue::from_parts(negative, kept, ulp_exponent); }
  SoftValue away_from_zero() const {
    return SoftValue::from_parts(negative, Significand(kept + 1), ulp_exponent);
  }
};

inline MagnitudeSplit split_magnitude(const SoftValue& x, unsigned bits) {
  MagnitudeSplit s;
  s.negative = x.is_negative();
  s.ulp_exponent = x.exponent() - static_cast<std::int64_t>(bits) + 1;
  if (x.width() <= bits) {
    s.kept = x.significand() << (bits - x.width());
    return s;
  }
  s.tail_bits = x.width() - bits;
  s.kept = x.significand() >> s.tail_bits;
  s.tail = x.significand() - (s.kept << s.tail_bits);
  return s;
}

inline void require_normal_input(const SoftValue& x, const FloatFormat& fmt) {
  if (x.is_zero()) return;
  if (fmt.emin() && x.exponent() < *fmt.emin())
    throw RangeError(fmt.name() + ": |x| = " + x.to_binary_string() + " is below the normal range");
  if (fmt.emax() && x.exponent() > *fmt.emax())
    throw RangeError(fmt.name() + ": |x| = " + x.to_binary_string() + " overflows");
}

inline const SoftValue& require_in_range(const SoftValue& y, const FloatFormat& fmt) {
  if (!y.is_zero() && !fmt.exponent_in_range(y.exponent()))
    throw RangeError(fmt.name() + ": rounded value " + y.to_binary_string() + " leaves the normal range");
  return y;
}

}  // namespace detail

/// floor_p(x) and ceil_p(x) in `fmt`, with the exact residual ratio.
///
/// The gap is always the ulp of the binade holding |x|. For x < 0 the
/// residual is measured from the (more negative) floor, so
/// residual_num = 2^d - tail where tail is the magnitude's dropped part.
inline Neighbors neighbors(const SoftValue& x, const FloatFormat& fmt) {
  Neighbors n;
  if (x.is_zero()) return n;
  detail::require_normal_input(x, fmt);
  const auto s = detail::split_magnitude(x, static_cast<unsigned>(fmt.precision()));
  if (s.exact()) {
    n.floor = n.ceil = x;
    return n;
  }
  SoftValue near = s.toward_zero();
  SoftValue far = detail::require_in_range(s.away_from_zero(), fmt);
  n.residual_den_log2 = s.tail_bits;
  if (!s.negative) {
    n.floor = std::move(near);
    n.ceil = std::move(far);
    n.residual_num = s.tail;
  } else {
    n.floor = std::move(far);
    n.ceil = std::move(near);
    n.residual_num = (Significand(1) << s.tail_bits) - s.tail;
  }
  return n;
}

/// Round toward zero to `bits` significant bits (fl_{p+r} when bits = p + r).
inline SoftValue truncate_to(const SoftValue& x, unsigned bits) {
  if (bits == 0) throw std::invalid_argument("truncate_to: bits must be positive");
  if (x.is_zero() || x.width() <= bits) return x;
  return detail::split_magnitude(x, bits).toward_zero();
}

}  // namespace srlab
