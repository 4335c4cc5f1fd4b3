// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace srlab {

/// Anything that hands out uniform random bits, most significant first.
template <class T>
concept BitSource = requires(T& t, unsigned k) {
  { t.next_bits(k) } -> std::convertible_to<std::uint64_t>;
};

namespace detail {

inline void mulhilo64(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  hi = static_cast<std::uint64_t>(p >> 64);
  lo = static_cast<std::uint64_t>(p);
}

/// Philox4x64 with 10 rounds (Salmon et al., SC'11), the Random123 reference.
inline std::array<std::uint64_t, 4> philox4x64_10(std::array<std::uint64_t, 4> ctr,
                                                  std::array<std::uint64_t, 2> key) {
  constexpr std::uint64_t kM0 = 0xD2E7470EE14C6C93ULL, kM1 = 0xCA5A826395121157ULL;
  constexpr std::uint64_t kW0 = 0x9E3779B97F4A7C15ULL, kW1 = 0xBB67AE8584CAA73BULL;
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kW0;
      key[1] += kW1;
    }
    std::uint64_t hi0, lo0, hi1, lo1;
    mulhilo64(kM0, ctr[0], hi0, lo0);
    mulhilo64(kM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

}  // namespace detail

/// Deterministic, splittable stream of uniform bits.
///
/// Counter-based: block i of stream (seed, stream_id) is
/// Philox4x64-10(counter = {i, 0, stream_id, 0}, key = {seed, 0}). Distinct
/// stream ids therefore never share a counter value, and the output is a
/// pure function of (seed, stream_id) on every platform.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id) : seed_(seed), stream_id_(stream_id) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64() {
    if (lane_ == 4) {
      block_ = detail::philox4x64_10({counter_++, 0, stream_id_, 0}, {seed_, 0});
      lane_ = 0;
    }
    return block_[lane_++];
  }

  /// k uniform bits (1 <= k <= 64) as the low bits of the result. Bits are
  /// taken from each 64-bit word most significant first.
  std::uint64_t next_bits(unsigned k) {
    if (k == 0 || k > 64) throw std::invalid_argument("RngStream::next_bits: k must be in [1, 64]");
    if (k <= avail_) {
      avail_ -= k;
      return (word_ >> avail_) & mask(k);
    }
    const unsigned need = k - avail_;
    const std::uint64_t high = word_ & mask(avail_);
    word_ = next_u64();
    avail_ = 64 - need;
    const std::uint64_t low = word_ >> avail_;
    return need == 64 ? low : (high << need) | low;
  }

 private:
  static std::uint64_t mask(unsigned k) { return k >= 64 ? ~0ULL : ((1ULL << k) - 1); }

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t counter_ = 0;
  std::array<std::uint64_t, 4> block_{};
  unsigned lane_ = 4;
  std::uint64_t word_ = 0;
  unsigned avail_ = 0;
};

/// A fixed bit pattern replayed MSB-first; used to enumerate every outcome
/// of a rounding decision. Throws once exhausted.
class BitString {
 public:
  BitString(std::uint64_t value, unsigned width) {
    for (unsigned i = width; i-- > 0;) bits_.push_back(((value >> i) & 1u) != 0);
  }
  explicit BitString(std::vector<bool> bits) : bits_(std::move(bits)) {}

  std::uint64_t next_bits(unsigned k) {
    if (pos_ + k > bits_.size()) throw std::out_of_range("BitString exhausted");
    std::uint64_t v = 0;
    for (unsigned i = 0; i < k; ++i) v = (v << 1) | (bits_[pos_++] ? 1u : 0u);
    return v;
  }

  std::size_t consumed() const { return pos_; }

 private:
  std::vector<bool> bits_;
  std::size_t pos_ = 0;
};

}  // namespace srlab
