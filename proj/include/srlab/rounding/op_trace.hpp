// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "srlab/core/exact_ops.hpp"

namespace srlab {

enum class OpKind { add, mul };

/// An exact ratio of two SoftValues.
struct Ratio {
  SoftValue num;
  SoftValue den = SoftValue::from_int(1);

  double to_double() const { return ratio_to_double(num, den); }
};

/// One rounded operation: the exact result x, its p+r-bit truncation
/// (x itself unless the mode was SRLimited) and the rounded value.
///
/// delta = (result - x)/x, beta = (fl_{p+r}(x) - x)/x, alpha = delta - beta,
/// all exact. For x = 0 every error is zero.
struct OpTrace {
  OpKind kind = OpKind::add;
  SoftValue exact;
  SoftValue truncated;
  SoftValue result;

  Ratio delta() const { return relative(result); }
  Ratio beta() const { return relative(truncated); }
  Ratio alpha() const {
    if (exact.is_zero()) return {};
    return {exact_sub(result, truncated), exact};
  }

 private:
  Ratio relative(const SoftValue& y) const {
    if (exact.is_zero()) return {};
    return {exact_sub(y, exact), exact};
  }
};

}  // namespace srlab
