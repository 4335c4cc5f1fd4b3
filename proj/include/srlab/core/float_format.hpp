// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace srlab {

/// A binary floating-point format restricted to normal numbers.
///
/// `precision` counts significand bits including the implicit leading one.
/// The exponent of a value is the exponent of its leading bit, so the
/// normal range of a bounded format is [2^emin, (2 - 2^(1-p)) * 2^emax].
/// Either bound may be absent, which models an unbounded exponent.
class FloatFormat {
 public:
  FloatFormat(int precision, std::optional<std::int64_t> emin, std::optional<std::int64_t> emax,
              std::string name = {})
      : precision_(precision), emin_(emin), emax_(emax), name_(std::move(name)) {
    if (precision_ < 2) throw std::invalid_argument("FloatFormat: precision must be >= 2");
    if (emin_ && emax_ && !(*emin_ < *emax_))
      throw std::invalid_argument("FloatFormat: emin must be < emax");
    if (name_.empty()) name_ = "p=" + std::to_string(precision_);
  }

  static FloatFormat unbounded(int precision, std::string name = {}) {
    return FloatFormat(precision, std::nullopt, std::nullopt, std::move(name));
  }

  /// IEEE 754 binary16: p = 11, normal exponents [-14, 15].
  static FloatFormat binary16() { return FloatFormat(11, -14, 15, "binary16"); }
  /// bfloat16: p = 8, normal exponents [-126, 127].
  static FloatFormat bfloat16() { return FloatFormat(8, -126, 127, "bfloat16"); }

  /// Same precision with the exponent bounds dropped.
  FloatFormat with_unbounded_exponent() const {
    return FloatFormat(precision_, std::nullopt, std::nullopt, name_ + "-unbounded");
  }

  int precision() const { return precision_; }
  const std::optional<std::int64_t>& emin() const { return emin_; }
  const std::optional<std::int64_t>& emax() const { return emax_; }
  const std::string& name() const { return name_; }

  bool exponent_in_range(std::int64_t e) const {
    return (!emin_ || e >= *emin_) && (!emax_ || e <= *emax_);
  }

  /// Unit roundoff u_k = 2^(1-k) as a double; exact for every k in use.
  static double unit_roundoff(int bits);
  double unit_roundoff() const { return unit_roundoff(precision_); }

  friend bool operator==(const FloatFormat& a, const FloatFormat& b) {
    return a.precision_ == b.precision_ && a.emin_ == b.emin_ && a.emax_ == b.emax_;
  }

 private:
  int precision_;
  std::optional<std::int64_t> emin_;
  std::optional<std::int64_t> emax_;
  std::string name_;
};

inline double FloatFormat::unit_roundoff(int bits) {
  double u = 1.0;
  for (int i = 1; i < bits; ++i) u *= 0.5;
  return u;
}

}  // namespace srlab
