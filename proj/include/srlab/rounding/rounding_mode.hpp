// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>

namespace srlab {

class RoundingMode {
 public:
  enum class Kind { RN, RZ, SRExact, SRLimited };

  static RoundingMode nearest_even() { return RoundingMode(Kind::RN, 0); }
  static RoundingMode toward_zero() { return RoundingMode(Kind::RZ, 0); }
  static RoundingMode sr_exact() { return RoundingMode(Kind::SRExact, 0); }
  static RoundingMode sr_limited(unsigned random_bits) {
    if (random_bits == 0) throw std::invalid_argument("SRLimited needs r >= 1 random bits");
    return RoundingMode(Kind::SRLimited, random_bits);
  }

  /// "rn", "rz", "sr:exact" or "sr:<r>".
  static RoundingMode parse(std::string_view tag) {
    if (tag == "rn") return nearest_even();
    if (tag == "rz") return toward_zero();
    if (tag == "sr:exact") return sr_exact();
    if (tag.substr(0, 3) == "sr:") {
      unsigned r = 0;
      const auto digits = tag.substr(3);
      const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), r);
      if (ec == std::errc() && ptr == digits.data() + digits.size() && r > 0) return sr_limited(r);
    }
    throw std::invalid_argument("unknown rounding mode '" + std::string(tag) + "'");
  }

  Kind kind() const { return kind_; }
  /// r for SRLimited, 0 otherwise.
  unsigned random_bits() const { return random_bits_; }
  bool stochastic() const { return kind_ == Kind::SRExact || kind_ == Kind::SRLimited; }

  std::string tag() const {
    switch (kind_) {
      case Kind::RN: return "rn";
      case Kind::RZ: return "rz";
      case Kind::SRExact: return "sr:exact";
      case Kind::SRLimited: return "sr:" + std::to_string(random_bits_);
    }
    return {};
  }

  friend bool operator==(const RoundingMode&, const RoundingMode&) = default;

 private:
  RoundingMode(Kind kind, unsigned r) : kind_(kind), random_bits_(r) {}

  Kind kind_;
  unsigned random_bits_;
};

}  // namespace srlab
