// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "json.hpp"
#include "srlab/explab/experiment.hpp"

namespace srlab::explab {

struct Check {
  std::string name;
  bool passed = false;
  double observed = 0;
  double tolerance = 0;
  std::string detail;
};

struct VerificationReport {
  std::uint64_t seed = 0;
  std::vector<Check> checks;

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return !checks.empty();
  }
};

struct VerificationOptions {
  unsigned cases = 100;             // operands for the unbiasedness and bias-identity checks
  unsigned draws = 100000;          // SR_p draws per unbiasedness case
  unsigned traced_ops = 100000;     // traced SR_{p,r} operations for the alpha checks
  unsigned coverage_trials = 1000;  // trials per bound-coverage check
  unsigned threads = 1;
};

namespace detail {

enum class VerifyStream : std::uint64_t { operands = 1, unbiased = 2, traces = 3, horner = 4, pairwise = 5 };

inline RngStream verify_rng(std::uint64_t seed, VerifyStream which, std::uint64_t sub, std::uint64_t index) {
  return RngStream(seed, stream_id(StreamPurpose::verification, static_cast<std::uint64_t>(which), sub, index));
}

// Exact result of a random binary16 add or mul (unbounded exponent).
inline SoftValue random_exact_result(RngStream& rng, const FloatFormat& fmt, bool require_inexact) {
  for (;;) {
    const SoftValue a = sample_value(Distribution::uniform_sym1, fmt, rng);
    const SoftValue b = sample_value(Distribution::uniform_sym1, fmt, rng);
    const SoftValue x = (rng.next_bits(1) != 0) ? exact_mul(a, b) : exact_add(a, b);
    if (x.is_zero()) continue;
    if (require_inexact && x.width() <= static_cast<unsigned>(fmt.precision())) continue;
    return x;
  }
}

inline bool below_unit(const Ratio& r, int bits) {
  if (r.num.is_zero()) return true;
  return SoftValue::compare_magnitude(r.num, exact_mul(r.den, SoftValue::from_int(1, 1 - bits))) < 0;
}

inline Check check_sr_exact_unbiased(std::uint64_t seed, const VerificationOptions& opt) {
  const FloatFormat fmt = FloatFormat::binary16().with_unbounded_exponent();
  RngStream operands = verify_rng(seed, VerifyStream::operands, 0, 0);
  std::vector<SoftValue> xs;
  for (unsigned c = 0; c < opt.cases; ++c) xs.push_back(random_exact_result(operands, fmt, true));
  std::vector<double> z(xs.size());
  parallel_for(xs.size(), opt.threads, [&](std::size_t c) {
    const Neighbors nb = neighbors(xs[c], fmt);
    RngStream rng = verify_rng(seed, VerifyStream::unbiased, 0, c);
    std::uint64_t ups = 0;
    for (unsigned i = 0; i < opt.draws; ++i)
      if (round_to(xs[c], fmt, RoundingMode::sr_exact(), rng) == nb.ceil) ++ups;
    // |mean - x| / gap = |ups/N - q|, compared in units of (1/2)/sqrt(N).
    const double frac = static_cast<double>(ups) / opt.draws;
    z[c] = std::fabs(frac - nb.probability_up()) / (0.5 / std::sqrt(static_cast<double>(opt.draws)));
  });
  Check chk{"sr_exact_unbiasedness", true, 0, 5.0, ""};
  for (double v : z) chk.observed = std::max(chk.observed, v);
  chk.passed = chk.observed <= chk.tolerance;
  chk.detail = std::to_string(opt.cases) + " cases x " + std::to_string(opt.draws) +
               " draws; observed = max |mean - x| in units of (gap/2)/sqrt(N)";
  return chk;
}

inline Check check_sr_limited_bias_identity(std::uint64_t seed, const VerificationOptions& opt) {
  const FloatFormat fmt = FloatFormat::binary16().with_unbounded_exponent();
  const unsigned p = static_cast<unsigned>(fmt.precision());
  RngStream operands = verify_rng(seed, VerifyStream::operands, 1, 0);
  unsigned matches = 0, total = 0;
  for (unsigned r = 1; r <= 8; ++r) {
    const RoundingMode mode = RoundingMode::sr_limited(r);
    for (unsigned c = 0; c < opt.cases; ++c, ++total) {
      const SoftValue x = random_exact_result(operands, fmt, false);
      SoftValue sum;
      for (std::uint64_t z = 0; z < (std::uint64_t{1} << r); ++z) {
        BitString bits(z, r);
        sum = exact_add(sum, round_to(x, fmt, mode, bits));
      }
      if (sum == exact_mul(truncate_to(x, p + r), SoftValue::from_int(1, r))) ++matches;
    }
  }
  Check chk{"sr_limited_bias_identity", matches == total, static_cast<double>(matches), static_cast<double>(total), ""};
  chk.detail = "exhaustive mean over all 2^r draws equals fl_{p+r}(x); r = 1..8, " + std::to_string(opt.cases) +
               " operands each; observed = exact matches";
  return chk;
}

inline std::vector<Check> check_traces(std::uint64_t seed, const VerificationOptions& opt) {
  const FloatFormat fmt = FloatFormat::binary16().with_unbounded_exponent();
  RngStream rng = verify_rng(seed, VerifyStream::traces, 0, 0);
  double sum = 0, sum_sq = 0;
  unsigned violations = 0;
  for (unsigned i = 0; i < opt.traced_ops; ++i) {
    const unsigned r = 1 + static_cast<unsigned>(rng.next_bits(3));
    const SoftValue a = sample_value(Distribution::uniform_sym1, fmt, rng);
    const SoftValue b = sample_value(Distribution::uniform_sym1, fmt, rng);
    const OpKind kind = rng.next_bits(1) ? OpKind::mul : OpKind::add;
    const Rounded out = op(a, b, kind, RoundingMode::sr_limited(r), fmt, rng);
    const double alpha = out.trace.alpha().to_double();
    sum += alpha;
    sum_sq += alpha * alpha;
    if (!below_unit(out.trace.delta(), fmt.precision()) || !below_unit(out.trace.beta(), fmt.precision() + r))
      ++violations;
  }
  const double n = opt.traced_ops;
  const double mean = sum / n;
  const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1));
  const double se = std::sqrt(var / n);
  Check alpha{"alpha_mean_zero", false, se > 0 ? std::fabs(mean) / se : (mean == 0 ? 0.0 : INFINITY), 5.0, ""};
  alpha.passed = alpha.observed <= alpha.tolerance;
  alpha.detail = std::to_string(opt.traced_ops) + " traced SR_{p,r} ops, r in 1..8; observed = |mean alpha| / SE";
  Check bounds_chk{"trace_bounds", violations == 0, static_cast<double>(violations), 0.0,
                   "count of traces with |delta| >= u_p or |beta| >= u_{p+r}"};
  return {alpha, bounds_chk};
}

inline Check check_horner_coverage(std::uint64_t seed, const VerificationOptions& opt) {
  const FloatFormat fmt = FloatFormat::binary16();
  constexpr std::uint64_t n = 100;
  constexpr unsigned r = 6;
  constexpr double lambda = 0.1;
  const SoftValue x = parse_value("0.9990234375", fmt);
  const double factor = bounds::horner_bound({n, fmt.precision(), r, lambda});
  std::vector<char> violated(opt.coverage_trials, 0);
  parallel_for(opt.coverage_trials, opt.threads, [&](std::size_t t) {
    RngStream sampler = verify_rng(seed, VerifyStream::horner, 0, t);
    const auto coeffs = sample_values(Distribution::uniform01, fmt, n + 1, sampler);
    const SoftValue exact = exact_horner(coeffs, x);
    const double cond = ratio_to_double(exact_horner_abs(coeffs, x), exact.abs());
    RngStream rounding = verify_rng(seed, VerifyStream::horner, 1, t);
    const SoftValue computed = horner(coeffs, x, fmt, RoundingMode::sr_limited(r), rounding, Tracing::off).value;
    const double err = ratio_to_double(exact_sub(computed, exact).abs(), exact.abs());
    violated[t] = err > cond * factor;
  });
  Check chk{"horner_bound_coverage", false, 0, lambda, ""};
  for (char v : violated) chk.observed += v;
  chk.observed /= opt.coverage_trials;
  chk.passed = chk.observed <= chk.tolerance;
  chk.detail = "binary16, n=100, r=6, lambda=0.1, U[0,1] coefficients, x=0.9990234375; observed = violation rate over " +
               std::to_string(opt.coverage_trials) + " trials";
  return chk;
}

inline Check check_pairwise_coverage(std::uint64_t seed, const VerificationOptions& opt) {
  const FloatFormat fmt = FloatFormat::bfloat16();
  constexpr std::uint64_t n = 1u << 16;
  constexpr unsigned r = 3;
  constexpr double lambda = 0.1;
  const double factor = bounds::pairwise_bound({n, fmt.precision(), r, lambda});
  std::vector<char> violated(opt.coverage_trials, 0);
  parallel_for(opt.coverage_trials, opt.threads, [&](std::size_t t) {
    RngStream sampler = verify_rng(seed, VerifyStream::pairwise, 0, t);
    const auto values = sample_values(Distribution::uniform_0_1e5, fmt, n, sampler);
    const SoftValue exact = exact_sum(values);
    const double cond = ratio_to_double(exact_abs_sum(values), exact.abs());
    RngStream rounding = verify_rng(seed, VerifyStream::pairwise, 1, t);
    const SoftValue computed = pairwise_sum(values, fmt, RoundingMode::sr_limited(r), rounding, Tracing::off).value;
    const double err = ratio_to_double(exact_sub(computed, exact).abs(), exact.abs());
    violated[t] = err > cond * factor;
  });
  Check chk{"pairwise_bound_coverage", false, 0, lambda, ""};
  for (char v : violated) chk.observed += v;
  chk.observed /= opt.coverage_trials;
  chk.passed = chk.observed <= chk.tolerance;
  chk.detail = "bfloat16, n=2^16, r=3, lambda=0.1, U[0,1e5] values; observed = violation rate over " +
               std::to_string(opt.coverage_trials) + " trials";
  return chk;
}

}  // namespace detail

/// The statistical battery: SR_p unbiasedness, the exhaustive SR_{p,r}
/// bias identity, mean-zero alpha, trace bounds, and bound coverage for
/// Horner and pairwise summation.
inline VerificationReport run_verification_suite(std::uint64_t seed, const VerificationOptions& opt = {}) {
  VerificationReport report;
  report.seed = seed;
  report.checks.push_back(detail::check_sr_exact_unbiased(seed, opt));
  report.checks.push_back(detail::check_sr_limited_bias_identity(seed, opt));
  for (auto& c : detail::check_traces(seed, opt)) report.checks.push_back(std::move(c));
  report.checks.push_back(detail::check_horner_coverage(seed, opt));
  report.checks.push_back(detail::check_pairwise_coverage(seed, opt));
  return report;
}

inline nlohmann::json to_json(const VerificationReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"observed", c.observed},
                      {"tolerance", c.tolerance},
                      {"detail", c.detail}});
  }
  return {{"schema", "srlab-verify-v1"}, {"seed", report.seed}, {"all_passed", report.all_passed()}, {"checks", checks}};
}

}  // namespace srlab::explab
