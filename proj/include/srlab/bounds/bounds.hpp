// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>

#include "srlab/algorithms/horner.hpp"
#include "srlab/algorithms/summation.hpp"
#include "srlab/core/errors.hpp"

namespace srlab::bounds {

/// About 166 significand bits; calculator error stays far below any
/// tolerance we compare bounds against.
using HighPrecision = boost::multiprecision::cpp_bin_float_50;

/// Problem size, precision, random bits (nullopt = exact SR) and failure
/// probability for the probabilistic bounds.
struct BoundParams {
  std::uint64_t n = 1;
  int p = 11;
  std::optional<unsigned> r;
  double lambda = 0.1;

  void validate() const {
    if (n < 1) throw std::invalid_argument("BoundParams: n must be >= 1");
    if (p < 2) throw std::invalid_argument("BoundParams: p must be >= 2");
    if (r && *r < 1) throw std::invalid_argument("BoundParams: r must be >= 1");
    if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("BoundParams: lambda must lie in (0, 1)");
  }
};

/// u_k = 2^(1-k).
inline HighPrecision unit_roundoff(int k) { return ldexp(HighPrecision(1), 1 - k); }

/// u_{p+r}, zero for exact SR.
inline HighPrecision bias_roundoff(int p, std::optional<unsigned> r) {
  return r ? unit_roundoff(p + static_cast<int>(*r)) : HighPrecision(0);
}

/// gamma_m(u) = (1 + u)^m - 1, by binary powering in high precision.
inline HighPrecision gamma_hp(std::uint64_t m, const HighPrecision& u) {
  if (u < 0) throw std::invalid_argument("gamma: u must be nonnegative");
  HighPrecision result = 1, base = HighPrecision(1) + u;
  for (std::uint64_t e = m; e != 0; e >>= 1) {
    if (e & 1u) result *= base;
    if (e > 1) base *= base;
  }
  return result - 1;
}

inline double gamma(std::uint64_t m, double u) { return gamma_hp(m, HighPrecision(u)).convert_to<double>(); }

/// gamma_m(u_p + u_{p+r}) - gamma_m(u_p): the bias contribution of a chain
/// of m SR_{p,r} roundings.
inline HighPrecision bias_term_hp(std::uint64_t m, int p, std::optional<unsigned> r) {
  if (!r || m == 0) return 0;
  const HighPrecision up = unit_roundoff(p);
  return gamma_hp(m, up + bias_roundoff(p, r)) - gamma_hp(m, up);
}

inline double bias_term(std::uint64_t m, int p, std::optional<unsigned> r) {
  return bias_term_hp(m, p, r).convert_to<double>();
}

namespace detail {

inline HighPrecision probabilistic_factor(std::uint64_t chain, int p, double lambda) {
  const HighPrecision up = unit_roundoff(p);
  return sqrt(up * gamma_hp(chain, up)) * sqrt(log(HighPrecision(2) / HighPrecision(lambda)));
}

}  // namespace detail

/// Relative-error factor for Horner under SR_{p,r}, to be multiplied by
/// cond(P): sqrt(u_p g_{4n}(u_p)) sqrt(ln(2/lambda)) + g_{2n}(u_p+u_{p+r}) - g_{2n}(u_p).
inline double horner_bound(const BoundParams& params) {
  params.validate();
  const HighPrecision v = detail::probabilistic_factor(4 * params.n, params.p, params.lambda) +
                          bias_term_hp(2 * params.n, params.p, params.r);
  return v.convert_to<double>();
}

/// The pairwise factor for a tree of depth h:
/// sqrt(u_p g_{2h}(u_p)) sqrt(ln(2/lambda)) + g_h(u_p+u_{p+r}) - g_h(u_p).
inline double pairwise_bound_for_depth(std::uint64_t depth, int p, std::optional<unsigned> r, double lambda) {
  BoundParams{1, p, r, lambda}.validate();
  const HighPrecision v = detail::probabilistic_factor(2 * depth, p, lambda) + bias_term_hp(depth, p, r);
  return v.convert_to<double>();
}

/// Pairwise-summation factor with h = ceil(log2 n), to be multiplied by cond(a).
inline double pairwise_bound(const BoundParams& params) {
  params.validate();
  return pairwise_bound_for_depth(pairwise_depth(params.n), params.p, params.r, params.lambda);
}

/// cond(P) = sum |a_i| |x|^i / |P(x)|, from exact arithmetic.
inline double cond_poly(std::span<const SoftValue> coeffs, const SoftValue& x) {
  const SoftValue value = exact_horner(coeffs, x);
  if (value.is_zero()) throw ZeroDenominator("cond_poly: P(x) = 0");
  return ratio_to_double(exact_horner_abs(coeffs, x), value.abs());
}

/// cond(a) = sum |a_i| / |sum a_i|, from exact arithmetic.
inline double cond_sum(std::span<const SoftValue> values) {
  const SoftValue s = exact_sum(values);
  if (s.is_zero()) throw ZeroDenominator("cond_sum: sum is exactly zero");
  return ratio_to_double(exact_abs_sum(values), s.abs());
}

/// Random bits balancing the two error terms for chains of length k:
/// the smallest r with 4^r >= k, i.e. ceil(log2(k) / 2), and at least 1.
inline unsigned rule_of_thumb_r(std::uint64_t k) {
  if (k < 1) throw std::invalid_argument("rule_of_thumb_r: k must be >= 1");
  unsigned r = 0;
  while (r < 32 && (std::uint64_t{1} << (2 * r)) < k) ++r;
  return r < 1 ? 1u : r;
}

/// Real-valued chain length, e.g. log2(n) for pairwise summation.
inline unsigned rule_of_thumb_r_real(double k) {
  if (!(k >= 1.0)) throw std::invalid_argument("rule_of_thumb_r: k must be >= 1");
  const auto r = static_cast<unsigned>(std::ceil(std::log2(k) / 2.0));
  return r < 1 ? 1u : r;
}

}  // namespace srlab::bounds
