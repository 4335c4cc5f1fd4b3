// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "srlab/rounding/round.hpp"

namespace srlab {

/// Result of a rounded algorithm: the computed value and, when requested,
/// one trace per rounded operation in execution order.
struct Evaluation {
  SoftValue value;
  std::vector<OpTrace> trace;
};

enum class Tracing { off, on };

namespace detail {

template <BitSource B>
SoftValue traced_apply(const SoftValue& a, const SoftValue& b, OpKind kind, const RoundingMode& mode,
                       const FloatFormat& fmt, B& bits, Tracing tracing, std::vector<OpTrace>& trace) {
  if (tracing == Tracing::off) return apply(a, b, kind, mode, fmt, bits);
  OpTrace t;
  SoftValue v = apply(a, b, kind, mode, fmt, bits, &t);
  trace.push_back(std::move(t));
  return v;
}

inline void require_operands(std::span<const SoftValue> values, const FloatFormat& fmt) {
  for (const auto& v : values) require_operand(v, fmt);
}

}  // namespace detail

}  // namespace srlab
