// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "srlab/core/soft_value.hpp"

namespace srlab {

/// Mathematically exact a + b. The result is as wide as it needs to be.
inline SoftValue exact_add(const SoftValue& a, const SoftValue& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const std::int64_t la = a.lsb_exponent(), lb = b.lsb_exponent();
  const std::int64_t lsb = std::min(la, lb);
  Significand sa = a.significand() << static_cast<unsigned>(la - lsb);
  Significand sb = b.significand() << static_cast<unsigned>(lb - lsb);
  if (a.is_negative() == b.is_negative()) {
    sa += sb;
    return SoftValue::from_parts(a.is_negative(), std::move(sa), lsb);
  }
  // Opposite signs: subtract the smaller magnitude from the larger.
  const int c = sa.compare(sb);
  if (c == 0) return SoftValue::zero();
  if (c > 0) {
    sa -= sb;
    return SoftValue::from_parts(a.is_negative(), std::move(sa), lsb);
  }
  sb -= sa;
  return SoftValue::from_parts(b.is_negative(), std::move(sb), lsb);
}

inline SoftValue exact_sub(const SoftValue& a, const SoftValue& b) { return exact_add(a, b.negated()); }

/// Mathematically exact a * b; width(a * b) <= width(a) + width(b).
inline SoftValue exact_mul(const SoftValue& a, const SoftValue& b) {
  if (a.is_zero() || b.is_zero()) return SoftValue::zero();
  return SoftValue::from_parts(a.is_negative() != b.is_negative(), a.significand() * b.significand(),
                               a.lsb_exponent() + b.lsb_exponent());
}

}  // namespace srlab
