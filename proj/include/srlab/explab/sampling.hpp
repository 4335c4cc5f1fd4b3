// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "srlab/rounding/round.hpp"

namespace srlab::explab {

enum class Distribution { uniform01, uniform_sym1, uniform_0_1e5, uniform_sym_1e5 };

inline Distribution parse_distribution(std::string_view name) {
  if (name == "uniform01") return Distribution::uniform01;
  if (name == "uniform-sym1") return Distribution::uniform_sym1;
  if (name == "uniform-0-1e5") return Distribution::uniform_0_1e5;
  if (name == "uniform-sym-1e5") return Distribution::uniform_sym_1e5;
  throw std::invalid_argument("unknown distribution '" + std::string(name) + "'");
}

inline std::string distribution_name(Distribution d) {
  switch (d) {
    case Distribution::uniform01: return "uniform01";
    case Distribution::uniform_sym1: return "uniform-sym1";
    case Distribution::uniform_0_1e5: return "uniform-0-1e5";
    case Distribution::uniform_sym_1e5: return "uniform-sym-1e5";
  }
  return {};
}

/// A 64-bit uniform draw mapped exactly onto the distribution's interval,
/// before any rounding: U[0,1) = k 2^-64, U[-1,1) = (2k - 2^64) 2^-64, and
/// the 1e5 variants scale those by 100000.
inline SoftValue exact_draw(Distribution d, std::uint64_t k) {
  const Significand bits(k);
  const Significand two64 = Significand(1) << 64;
  switch (d) {
    case Distribution::uniform01: return SoftValue::from_parts(false, bits, -64);
    case Distribution::uniform_sym1: return SoftValue::from_signed(2 * bits - two64, -64);
    case Distribution::uniform_0_1e5: return SoftValue::from_parts(false, bits * 100000, -64);
    case Distribution::uniform_sym_1e5: return SoftValue::from_signed((2 * bits - two64) * 100000, -64);
  }
  return {};
}

/// One format value: a uniform draw rounded to nearest. Draws whose
/// magnitude falls below the format's normal range are redrawn, since the
/// format has no subnormals.
inline SoftValue sample_value(Distribution d, const FloatFormat& fmt, RngStream& rng) {
  for (;;) {
    const SoftValue x = exact_draw(d, rng.next_u64());
    if (!x.is_zero() && fmt.emin() && x.exponent() < *fmt.emin()) continue;
    return round_rn(x, fmt);
  }
}

inline std::vector<SoftValue> sample_values(Distribution d, const FloatFormat& fmt, std::size_t count,
                                            RngStream& rng) {
  std::vector<SoftValue> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sample_value(d, fmt, rng));
  return out;
}

}  // namespace srlab::explab
