// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>

#include "srlab/rounding/rounding_mode.hpp"

namespace srlab::explab {

enum class StreamPurpose : std::uint64_t { rounding = 0, sampling = 1, verification = 2 };

/// 14-bit code: rn 0, rz 1, sr:exact 2, sr:r 2 + r.
inline std::uint64_t mode_code(const RoundingMode& mode) {
  switch (mode.kind()) {
    case RoundingMode::Kind::RN: return 0;
    case RoundingMode::Kind::RZ: return 1;
    case RoundingMode::Kind::SRExact: return 2;
    case RoundingMode::Kind::SRLimited:
      if (mode.random_bits() > (1u << 14) - 3) throw std::out_of_range("mode_code: r too large");
      return 2 + mode.random_bits();
  }
  return 0;
}

/// Injective stream-id layout:
///   bits 63-62 purpose | bits 61-30 n | bits 29-16 mode code | bits 15-0 rep
inline std::uint64_t stream_id(StreamPurpose purpose, std::uint64_t n, std::uint64_t code, std::uint64_t rep) {
  if (n >= (std::uint64_t{1} << 32)) throw std::out_of_range("stream_id: n must be < 2^32");
  if (code >= (std::uint64_t{1} << 14)) throw std::out_of_range("stream_id: mode code must be < 2^14");
  if (rep >= (std::uint64_t{1} << 16)) throw std::out_of_range("stream_id: rep must be < 2^16");
  return (static_cast<std::uint64_t>(purpose) << 62) | (n << 30) | (code << 16) | rep;
}

inline std::uint64_t rounding_stream(std::uint64_t n, const RoundingMode& mode, std::uint64_t rep) {
  return stream_id(StreamPurpose::rounding, n, mode_code(mode), rep);
}

inline std::uint64_t sampling_stream(std::uint64_t n, std::uint64_t rep = 0) {
  return stream_id(StreamPurpose::sampling, n, 0, rep);
}

}  // namespace srlab::explab
