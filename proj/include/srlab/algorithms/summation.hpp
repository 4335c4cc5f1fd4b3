// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <bit>

#include "srlab/algorithms/evaluation.hpp"

namespace srlab {

namespace detail {

template <BitSource B>
SoftValue pairwise_node(std::span<const SoftValue> values, const FloatFormat& fmt, const RoundingMode& mode,
                        B& bits, Tracing tracing, std::vector<OpTrace>& trace) {
  if (values.size() == 1) return values.front();
  const std::size_t m = (values.size() + 1) / 2;
  SoftValue left = pairwise_node(values.first(m), fmt, mode, bits, tracing, trace);
  SoftValue right = pairwise_node(values.subspan(m), fmt, mode, bits, tracing, trace);
  return traced_apply(left, right, OpKind::add, mode, fmt, bits, tracing, trace);
}

}  // namespace detail

/// ceil(log2 n): the depth of the pairwise tree over n leaves.
inline unsigned pairwise_depth(std::size_t n) {
  if (n == 0) throw std::invalid_argument("pairwise_depth: n must be positive");
  return static_cast<unsigned>(std::bit_width(n - 1));
}

/// Balanced-tree summation: split at m = ceil(n/2), sum each half, add.
/// Traces and random bits follow a depth-first, left-to-right order.
template <BitSource B>
Evaluation pairwise_sum(std::span<const SoftValue> values, const FloatFormat& fmt, const RoundingMode& mode,
                        B& bits, Tracing tracing = Tracing::on) {
  if (values.empty()) throw std::invalid_argument("pairwise_sum: need at least one summand");
  detail::require_operands(values, fmt);
  Evaluation out;
  if (tracing == Tracing::on) out.trace.reserve(values.size() - 1);
  out.value = detail::pairwise_node(values, fmt, mode, bits, tracing, out.trace);
  return out;
}

/// Left-to-right summation with n - 1 rounded additions.
template <BitSource B>
Evaluation recursive_sum(std::span<const SoftValue> values, const FloatFormat& fmt, const RoundingMode& mode,
                         B& bits, Tracing tracing = Tracing::on) {
  if (values.empty()) throw std::invalid_argument("recursive_sum: need at least one summand");
  detail::require_operands(values, fmt);
  Evaluation out;
  if (tracing == Tracing::on) out.trace.reserve(values.size() - 1);
  SoftValue s = values.front();
  for (std::size_t i = 1; i < values.size(); ++i)
    s = detail::traced_apply(s, values[i], OpKind::add, mode, fmt, bits, tracing, out.trace);
  out.value = std::move(s);
  return out;
}

inline SoftValue exact_sum(std::span<const SoftValue> values) {
  SoftValue s;
  for (const auto& v : values) s = exact_add(s, v);
  return s;
}

inline SoftValue exact_abs_sum(std::span<const SoftValue> values) {
  SoftValue s;
  for (const auto& v : values) s = exact_add(s, v.abs());
  return s;
}

}  // namespace srlab
