// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "srlab/algorithms/evaluation.hpp"

namespace srlab {

/// Evaluate sum_i coeffs[i] * x^i by Horner's rule.
///
/// Starting from r = a_n, step 2k-1 rounds r * x and step 2k rounds
/// r + a_{n-k}, so a degree-n polynomial costs exactly 2n rounded
/// operations. Random bits are consumed in step order.
template <BitSource B>
Evaluation horner(std::span<const SoftValue> coeffs, const SoftValue& x, const FloatFormat& fmt,
                  const RoundingMode& mode, B& bits, Tracing tracing = Tracing::on) {
  if (coeffs.empty()) throw std::invalid_argument("horner: polynomial needs at least one coefficient");
  detail::require_operands(coeffs, fmt);
  require_operand(x, fmt);
  Evaluation out;
  const std::size_t n = coeffs.size() - 1;
  if (tracing == Tracing::on) out.trace.reserve(2 * n);
  SoftValue r = coeffs[n];
  for (std::size_t k = 1; k <= n; ++k) {
    r = detail::traced_apply(r, x, OpKind::mul, mode, fmt, bits, tracing, out.trace);
    r = detail::traced_apply(r, coeffs[n - k], OpKind::add, mode, fmt, bits, tracing, out.trace);
  }
  out.value = std::move(r);
  return out;
}

/// P(x) in exact arithmetic.
inline SoftValue exact_horner(std::span<const SoftValue> coeffs, const SoftValue& x) {
  if (coeffs.empty()) throw std::invalid_argument("exact_horner: empty polynomial");
  SoftValue r = coeffs.back();
  for (std::size_t i = coeffs.size() - 1; i-- > 0;) r = exact_add(exact_mul(r, x), coeffs[i]);
  return r;
}

/// sum_i |a_i| |x|^i, the numerator of the polynomial condition number.
inline SoftValue exact_horner_abs(std::span<const SoftValue> coeffs, const SoftValue& x) {
  if (coeffs.empty()) throw std::invalid_argument("exact_horner_abs: empty polynomial");
  const SoftValue ax = x.abs();
  SoftValue r = coeffs.back().abs();
  for (std::size_t i = coeffs.size() - 1; i-- > 0;) r = exact_add(exact_mul(r, ax), coeffs[i].abs());
  return r;
}

}  // namespace srlab
