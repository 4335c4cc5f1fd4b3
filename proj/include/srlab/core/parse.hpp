// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "srlab/core/errors.hpp"
#include "srlab/core/soft_value.hpp"

namespace srlab {

namespace detail {

inline std::int64_t parse_exponent_digits(std::string_view text, std::string_view whole) {
  if (text.empty()) throw std::invalid_argument("malformed literal: " + std::string(whole));
  bool neg = false;
  if (text.front() == '+' || text.front() == '-') {
    neg = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty() || text.size() > 9) throw std::invalid_argument("malformed exponent: " + std::string(whole));
  std::int64_t e = 0;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw std::invalid_argument("malformed exponent: " + std::string(whole));
    e = e * 10 + (c - '0');
  }
  return neg ? -e : e;
}

// Digits of a mantissa with an optional radix point; returns the integer and
// the count of digits after the point.
inline Significand parse_mantissa(std::string_view text, unsigned radix, std::int64_t& frac_digits,
                                  std::string_view whole) {
  Significand m = 0;
  bool seen_point = false, seen_digit = false;
  frac_digits = 0;
  for (char c : text) {
    if (c == '.') {
      if (seen_point) throw std::invalid_argument("malformed literal: " + std::string(whole));
      seen_point = true;
      continue;
    }
    const int d = c - '0';
    if (d < 0 || d >= static_cast<int>(radix)) throw std::invalid_argument("malformed literal: " + std::string(whole));
    m = m * radix + d;
    seen_digit = true;
    if (seen_point) ++frac_digits;
  }
  if (!seen_digit) throw std::invalid_argument("malformed literal: " + std::string(whole));
  return m;
}

}  // namespace detail

/// Parse a real literal without rounding.
///
/// Accepts decimal ("0.9990234375", "-1.5e3") and binary ("0b1.011",
/// "-0b101p-4", where p scales by powers of two) forms. Throws
/// NotRepresentable unless the literal is exactly an element of `fmt`.
inline SoftValue parse_value(std::string_view text, const FloatFormat& fmt) {
  const std::string_view whole = text;
  bool negative = false;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  SoftValue value;
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'b' || text[1] == 'B')) {
    text.remove_prefix(2);
    std::int64_t scale = 0;
    if (const auto p = text.find_first_of("pP"); p != std::string_view::npos) {
      scale = detail::parse_exponent_digits(text.substr(p + 1), whole);
      text = text.substr(0, p);
    }
    std::int64_t frac = 0;
    Significand m = detail::parse_mantissa(text, 2, frac, whole);
    value = SoftValue::from_parts(negative, std::move(m), scale - frac);
  } else {
    std::int64_t scale = 0;
    if (const auto p = text.find_first_of("eE"); p != std::string_view::npos) {
      scale = detail::parse_exponent_digits(text.substr(p + 1), whole);
      text = text.substr(0, p);
    }
    std::int64_t frac = 0;
    Significand m = detail::parse_mantissa(text, 10, frac, whole);
    const std::int64_t dec = scale - frac;  // value = m * 10^dec
    if (dec >= 0) {
      m *= boost::multiprecision::pow(Significand(10), static_cast<unsigned>(dec));
      value = SoftValue::from_parts(negative, std::move(m), 0);
    } else {
      // m / 10^k is dyadic iff 5^k divides m.
      const auto k = static_cast<unsigned>(-dec);
      const Significand five_k = boost::multiprecision::pow(Significand(5), k);
      Significand q, r;
      boost::multiprecision::divide_qr(m, five_k, q, r);
      if (!r.is_zero())
        throw NotRepresentable(std::string(whole) + " has no finite binary expansion");
      value = SoftValue::from_parts(negative, std::move(q), -static_cast<std::int64_t>(k));
    }
  }
  if (!value.representable_in(fmt))
    throw NotRepresentable(std::string(whole) + " is not representable in " + fmt.name());
  return value;
}

}  // namespace srlab
