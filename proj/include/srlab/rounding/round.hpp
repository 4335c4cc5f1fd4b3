// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "srlab/core/exact_ops.hpp"
#include "srlab/core/neighbors.hpp"
#include "srlab/rounding/op_trace.hpp"
#include "srlab/rounding/rng_stream.hpp"
#include "srlab/rounding/rounding_mode.hpp"

namespace srlab {

/// A rounded value together with its error record.
struct Rounded {
  SoftValue value;
  OpTrace trace;
};

namespace detail {

// True iff U < threshold, where U is a `width`-bit uniform integer drawn
// lazily MSB-first. Stops at the first differing bit, so on average only
// about two bits are consumed whatever the width.
template <BitSource B>
bool uniform_below(const Significand& threshold, unsigned width, B& bits) {
  for (unsigned i = width; i-- > 0;) {
    const bool u = bits.next_bits(1) != 0;
    const bool t = boost::multiprecision::bit_test(threshold, i);
    if (u != t) return t;
  }
  return false;
}

// Draw an r-bit Z and report Z < k. k may equal 2^r.
template <BitSource B>
bool draw_below(const Significand& k, unsigned r, B& bits) {
  if (r <= 62) {
    const std::uint64_t z = bits.next_bits(r);
    return Significand(z) < k;
  }
  Significand z = 0;
  for (unsigned left = r; left > 0;) {
    const unsigned chunk = left >= 64 ? 64u : left;
    z = (z << chunk) | Significand(bits.next_bits(chunk));
    left -= chunk;
  }
  return z < k;
}

inline bool nearest_even_goes_away(const MagnitudeSplit& s) {
  const unsigned half_bit = s.tail_bits - 1;
  if (!boost::multiprecision::bit_test(s.tail, half_bit)) return false;
  if (boost::multiprecision::lsb(s.tail) < half_bit) return true;  // above the midpoint
  return boost::multiprecision::bit_test(s.kept, 0);                 // tie: to even
}

// The p+r-bit truncation expressed as k / 2^r of the gap above the floor
// (real order), i.e. q_r(x) = k / 2^r.
inline Significand limited_numerator(const MagnitudeSplit& s, unsigned r) {
  Significand top = s.tail_bits > r ? Significand(s.tail >> (s.tail_bits - r))
                                    : Significand(s.tail << (r - s.tail_bits));
  if (!s.negative) return top;
  return (Significand(1) << r) - top;
}

}  // namespace detail

/// Round x into `fmt` under `mode`. Bits are drawn from `bits` only for the
/// stochastic modes and only when x is not already representable. When
/// `trace` is given it receives the exact input, fl_{p+r}(x) and the result.
template <BitSource B>
SoftValue round_to(const SoftValue& x, const FloatFormat& fmt, const RoundingMode& mode, B& bits,
                   OpTrace* trace = nullptr) {
  SoftValue result;
  SoftValue truncated;
  bool truncated_set = false;
  if (x.is_zero()) {
    result = x;
  } else {
    detail::require_normal_input(x, fmt);
    const unsigned p = static_cast<unsigned>(fmt.precision());
    const auto s = detail::split_magnitude(x, p);
    if (s.exact()) {
      result = x;
    } else {
      bool away = false;
      switch (mode.kind()) {
        case RoundingMode::Kind::RN:
          away = detail::nearest_even_goes_away(s);
          break;
        case RoundingMode::Kind::RZ:
          away = false;
          break;
        case RoundingMode::Kind::SRExact: {
          // ceil with probability residual_num / 2^d, residual in real order.
          const Significand num = s.negative ? Significand((Significand(1) << s.tail_bits) - s.tail) : s.tail;
          const bool up = detail::uniform_below(num, s.tail_bits, bits);
          away = up != s.negative;
          break;
        }
        case RoundingMode::Kind::SRLimited: {
          const unsigned r = mode.random_bits();
          const bool up = detail::draw_below(detail::limited_numerator(s, r), r, bits);
          away = up != s.negative;
          if (trace) {
            truncated = truncate_to(x, p + r);
            truncated_set = true;
          }
          break;
        }
      }
      result = away ? s.away_from_zero() : s.toward_zero();
      detail::require_in_range(result, fmt);
    }
  }
  if (trace) {
    trace->exact = x;
    trace->truncated = truncated_set ? std::move(truncated) : x;
    trace->result = result;
  }
  return result;
}

/// Round to nearest, ties to even.
inline SoftValue round_rn(const SoftValue& x, const FloatFormat& fmt) {
  BitString none(0, 0);
  return round_to(x, fmt, RoundingMode::nearest_even(), none);
}

/// Round toward zero.
inline SoftValue round_rz(const SoftValue& x, const FloatFormat& fmt) {
  BitString none(0, 0);
  return round_to(x, fmt, RoundingMode::toward_zero(), none);
}

/// Exact stochastic rounding SR_p: ceil with probability exactly q(x).
template <BitSource B>
Rounded round_sr_exact(const SoftValue& x, const FloatFormat& fmt, B& bits) {
  Rounded out;
  out.value = round_to(x, fmt, RoundingMode::sr_exact(), bits, &out.trace);
  return out;
}

/// Limited-precision stochastic rounding SR_{p,r}: an r-bit uniform Z is
/// compared with k = q_r(x) * 2^r, so P(ceil) = k / 2^r exactly.
template <BitSource B>
Rounded round_sr_limited(const SoftValue& x, const FloatFormat& fmt, unsigned r, B& bits) {
  Rounded out;
  out.value = round_to(x, fmt, RoundingMode::sr_limited(r), bits, &out.trace);
  return out;
}

inline void require_operand(const SoftValue& v, const FloatFormat& fmt) {
  if (!v.representable_in(fmt))
    throw std::invalid_argument("operand " + v.to_binary_string() + " is not an element of " + fmt.name());
}

/// One rounded arithmetic operation: round(a op b).
template <BitSource B>
SoftValue apply(const SoftValue& a, const SoftValue& b, OpKind kind, const RoundingMode& mode,
                const FloatFormat& fmt, B& bits, OpTrace* trace = nullptr) {
  const SoftValue x = kind == OpKind::add ? exact_add(a, b) : exact_mul(a, b);
  if (trace) trace->kind = kind;
  return round_to(x, fmt, mode, bits, trace);
}

/// apply() with operand checks and a full trace.
template <BitSource B>
Rounded op(const SoftValue& a, const SoftValue& b, OpKind kind, const RoundingMode& mode,
           const FloatFormat& fmt, B& bits) {
  require_operand(a, fmt);
  require_operand(b, fmt);
  Rounded out;
  out.value = apply(a, b, kind, mode, fmt, bits, &out.trace);
  return out;
}

}  // namespace srlab
