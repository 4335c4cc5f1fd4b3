// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// fails. Exact references come from GMP, not from the library.

#include <gmpxx.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "srlab/explab/csv.hpp"
#include "srlab/srlab.hpp"

using namespace srlab;
using namespace srlab::explab;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

int failures = 0;

void criterion(const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget_s) {
    out.passed = false;
    out.detail += "; over time budget";
  }
  if (!out.passed) ++failures;
  std::printf("%s  %-34s %s [%.1fs / %.0fs]\n", out.passed ? "PASS" : "FAIL", name, out.detail.c_str(), secs,
              budget_s);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

// Uniform random value of the format over its whole exponent range.
SoftValue random_format_value(RngStream& rng, const FloatFormat& f) {
  const int p = f.precision();
  const std::int64_t span = *f.emax() - *f.emin() + 1;
  const std::uint64_t sig = (rng.next_bits(static_cast<unsigned>(p - 1))) | (std::uint64_t{1} << (p - 1));
  const std::int64_t e = *f.emin() + static_cast<std::int64_t>(rng.next_u64() % static_cast<std::uint64_t>(span));
  const std::int64_t v = rng.next_bits(1) ? -static_cast<std::int64_t>(sig) : static_cast<std::int64_t>(sig);
  return SoftValue::from_int(v, e - p + 1);
}

// Exponent-clustered variant so that sums also exercise cancellation and
// near-ties; half the pairs use it.
SoftValue nearby_value(RngStream& rng, const FloatFormat& f, const SoftValue& other) {
  const int p = f.precision();
  const std::uint64_t sig = (rng.next_bits(static_cast<unsigned>(p - 1))) | (std::uint64_t{1} << (p - 1));
  std::int64_t e = other.exponent() + static_cast<std::int64_t>(rng.next_bits(3)) - 4;
  e = std::min(std::max(e, *f.emin()), *f.emax());
  const std::int64_t v = rng.next_bits(1) ? -static_cast<std::int64_t>(sig) : static_cast<std::int64_t>(sig);
  return SoftValue::from_int(v, e - p + 1);
}

struct OperandSet {
  FloatFormat format;
  std::vector<std::pair<SoftValue, SoftValue>> pairs;
};

std::vector<OperandSet> operand_sets() {
  std::vector<OperandSet> sets;
  std::uint64_t stream = 0;
  for (const FloatFormat& f : {FloatFormat::binary16(), FloatFormat::bfloat16()}) {
    RngStream rng(2024, stream++);
    OperandSet s{f, {}};
    for (int i = 0; i < 10000; ++i) {
      SoftValue a = random_format_value(rng, f);
      SoftValue b = (i % 2) ? nearby_value(rng, f, a) : random_format_value(rng, f);
      s.pairs.emplace_back(std::move(a), std::move(b));
    }
    sets.push_back(std::move(s));
  }
  return sets;
}

// Expected RN result in a bounded format, or nullopt for a range error.
std::optional<mpq_class> oracle_rn(const mpq_class& x, const FloatFormat& f) {
  if (x == 0) return mpq_class(0);
  const long e = oracle::exponent_of(x);
  if (e < *f.emin() || e > *f.emax()) return std::nullopt;
  const mpq_class y = oracle::round_nearest_even(x, f.precision());
  if (oracle::exponent_of(y) > *f.emax()) return std::nullopt;
  return y;
}

bool rn_matches(const SoftValue& x, const FloatFormat& f) {
  const auto expected = oracle_rn(oracle::to_mpq(x), f);
  try {
    const SoftValue got = round_rn(x, f);
    return expected && oracle::to_mpq(got) == *expected;
  } catch (const RangeError&) {
    return !expected;
  }
}

// Sum of format values as an exact integer multiple of 2^-scale.
mpz_class scaled_sum(const std::vector<SoftValue>& v, long scale, bool absolute) {
  mpz_class total = 0;
  for (const auto& x : v) {
    if (x.is_zero()) continue;
    mpz_class m(x.significand().str());
    m <<= static_cast<mp_bitcnt_t>(x.lsb_exponent() + scale);
    if (x.is_negative() && !absolute) m = -m;
    total += m;
  }
  return total;
}

double rel_err(const mpq_class& computed, const mpq_class& exact) {
  return mpq_class(abs(computed - exact) / abs(exact)).get_d();
}

Outcome exact_ops() {
  std::size_t total = 0, ok = 0;
  for (const auto& s : operand_sets())
    for (const auto& [a, b] : s.pairs) {
      const mpq_class qa = oracle::to_mpq(a), qb = oracle::to_mpq(b);
      ok += oracle::to_mpq(exact_add(a, b)) == qa + qb;
      ok += oracle::to_mpq(exact_mul(a, b)) == qa * qb;
      total += 2;
    }
  return {ok == total, fmt("%.0f/%.0f exact results match (binary16 + bfloat16, add + mul)", double(ok), double(total))};
}

Outcome rn_correctness() {
  std::size_t total = 0, ok = 0, range_errors = 0;
  for (const auto& s : operand_sets())
    for (const auto& [a, b] : s.pairs)
      for (const SoftValue& x : {exact_add(a, b), exact_mul(a, b)}) {
        ok += rn_matches(x, s.format);
        range_errors += !oracle_rn(oracle::to_mpq(x), s.format).has_value();
        ++total;
      }
  // Exhaustive: all sums and products over the p = 3, e in [-4, 4] grid.
  const FloatFormat p3(3, -4, 4, "p3");
  std::vector<SoftValue> grid{SoftValue::zero()};
  for (std::int64_t e = -4; e <= 4; ++e)
    for (int m = 4; m < 8; ++m) {
      grid.push_back(SoftValue::from_int(m, e - 2));
      grid.push_back(SoftValue::from_int(-m, e - 2));
    }
  std::size_t grid_total = 0, grid_ok = 0;
  for (const auto& a : grid)
    for (const auto& b : grid)
      for (const SoftValue& x : {exact_add(a, b), exact_mul(a, b)}) {
        grid_ok += rn_matches(x, p3);
        ++grid_total;
      }
  return {ok == total && grid_ok == grid_total,
          fmt("random %.0f/%.0f (%.0f range errors as expected), p=3 grid %.0f", double(ok), double(total),
              double(range_errors), double(grid_ok)) +
              "/" + std::to_string(grid_total)};
}

Outcome sr_unbiasedness() {
  const FloatFormat f = FloatFormat::binary16().with_unbounded_exponent();
  RngStream operands(7, 0);
  constexpr int kCases = 100, kDraws = 100000;
  double worst = 0;
  for (int c = 0; c < kCases; ++c) {
    SoftValue x;
    do {
      const SoftValue a = sample_value(Distribution::uniform_sym1, f, operands);
      const SoftValue b = sample_value(Distribution::uniform_sym1, f, operands);
      x = operands.next_bits(1) ? exact_mul(a, b) : exact_add(a, b);
    } while (x.is_zero() || x.width() <= 11);
    const mpq_class qx = oracle::to_mpq(x);
    const oracle::Bracket br = oracle::bracket(qx, 11);
    RngStream rng(7, 1000 + static_cast<std::uint64_t>(c));
    std::uint64_t ups = 0;
    for (int i = 0; i < kDraws; ++i) {
      const mpq_class y = oracle::to_mpq(round_sr_exact(x, f, rng).value);
      if (y == br.ceil) {
        ++ups;
      } else if (y != br.floor) {
        return {false, "result is not a neighbour of x"};
      }
    }
    // sample mean - x = gap * (ups/N - q)
    const mpq_class gap = br.ceil - br.floor;
    const mpq_class dev = abs(br.floor + gap * mpq_class(ups, kDraws) - qx);
    worst = std::max(worst, mpq_class(dev / (gap / 2) * std::sqrt(double(kDraws))).get_d());
  }
  return {worst <= 5.0, fmt("100 cases x 1e5 draws; max |mean - x| = %.2f (gap/2)/sqrt(N), tolerance 5", worst)};
}

Outcome sr_bias_identity() {
  const FloatFormat f = FloatFormat::binary16().with_unbounded_exponent();
  RngStream operands(8, 0);
  int matches = 0, total = 0;
  for (unsigned r = 1; r <= 8; ++r)
    for (int c = 0; c < 100; ++c, ++total) {
      const SoftValue a = sample_value(Distribution::uniform_sym1, f, operands);
      const SoftValue b = sample_value(Distribution::uniform_sym1, f, operands);
      const SoftValue x = operands.next_bits(1) ? exact_mul(a, b) : exact_add(a, b);
      mpq_class sum = 0;
      for (std::uint64_t z = 0; z < (std::uint64_t{1} << r); ++z) {
        BitString bits(z, r);
        sum += oracle::to_mpq(round_sr_limited(x, f, r, bits).value);
      }
      matches += sum / mpq_class(1u << r) == oracle::truncate(oracle::to_mpq(x), 11 + static_cast<int>(r));
    }
  return {matches == total, fmt("%.0f/%.0f exhaustive means equal the (p+r)-bit truncation, r = 1..8", matches, total)};
}

Outcome horner_coverage() {
  const FloatFormat f = FloatFormat::binary16();
  const SoftValue x = parse_value("0.9990234375", f);
  const mpq_class qx = oracle::to_mpq(x);
  const double factor = bounds::horner_bound({100, 11, 6u, 0.1});
  int violations = 0;
  constexpr int kTrials = 1000;
  for (int t = 0; t < kTrials; ++t) {
    RngStream sampler(31, static_cast<std::uint64_t>(t)), rng(32, static_cast<std::uint64_t>(t));
    const auto a = sample_values(Distribution::uniform01, f, 101, sampler);
    mpq_class p = 0, pabs = 0;
    for (std::size_t i = a.size(); i-- > 0;) {
      const mpq_class ai = oracle::to_mpq(a[i]);
      p = p * qx + ai;
      pabs = pabs * abs(qx) + abs(ai);
    }
    const mpq_class computed = oracle::to_mpq(horner(a, x, f, RoundingMode::sr_limited(6), rng, Tracing::off).value);
    violations += rel_err(computed, p) > mpq_class(pabs / abs(p)).get_d() * factor;
  }
  const double rate = double(violations) / kTrials;
  return {rate <= 0.10, fmt("binary16 n=100 r=6: violation rate %.3f over 1000 trials, tolerance 0.10", rate)};
}

Outcome pairwise_coverage() {
  const FloatFormat f = FloatFormat::bfloat16();
  constexpr std::size_t n = 1u << 16;
  constexpr long kScale = 160;  // every bfloat16 value is a multiple of 2^-133
  const double factor = bounds::pairwise_bound({n, 8, 3u, 0.1});
  int violations = 0;
  constexpr int kTrials = 1000;
  for (int t = 0; t < kTrials; ++t) {
    RngStream sampler(41, static_cast<std::uint64_t>(t)), rng(42, static_cast<std::uint64_t>(t));
    const auto v = sample_values(Distribution::uniform_0_1e5, f, n, sampler);
    const mpq_class exact(scaled_sum(v, kScale, false), mpz_class(1) << kScale);
    const mpq_class abs_sum(scaled_sum(v, kScale, true), mpz_class(1) << kScale);
    const mpq_class computed = oracle::to_mpq(pairwise_sum(v, f, RoundingMode::sr_limited(3), rng, Tracing::off).value);
    violations += rel_err(computed, exact) > mpq_class(abs_sum / abs(exact)).get_d() * factor;
  }
  const double rate = double(violations) / kTrials;
  return {rate <= 0.10, fmt("bfloat16 n=2^16 r=3: violation rate %.3f over 1000 trials, tolerance 0.10", rate)};
}

// rel_err_of_avg per mode for the n = 4000 binary16 Horner setup, by seed.
std::vector<std::map<std::string, double>> horner_4000_runs() {
  static std::vector<std::map<std::string, double>> cached;
  if (!cached.empty()) return cached;
  for (std::uint64_t seed : {1, 2, 3}) {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::horner;
    cfg.format = FloatFormat::binary16();
    cfg.x = "0.9990234375";
    cfg.distribution = Distribution::uniform01;
    cfg.sizes = {4000};
    cfg.modes = {RoundingMode::nearest_even(), RoundingMode::sr_limited(3), RoundingMode::sr_limited(6),
                 RoundingMode::sr_limited(12)};
    cfg.reps = 30;
    cfg.seed = seed;
    std::map<std::string, double> by_mode;
    for (const auto& row : run_horner_experiment(cfg)) {
      if (row.error) throw std::runtime_error("unexpected range error in " + row.mode);
      by_mode[row.mode] = row.rel_err_of_avg;
      by_mode[row.mode + "/single"] = row.mean_rel_err;
    }
    cached.push_back(by_mode);
  }
  return cached;
}

Outcome horner_stagnation() {
  int votes = 0;
  std::string detail;
  for (const auto& m : horner_4000_runs()) {
    const bool ok = m.at("rn") > m.at("sr:6") && m.at("sr:3") > m.at("sr:6");
    votes += ok;
    detail += fmt(" [rn %.2e sr3 %.2e sr6 %.2e]", m.at("rn"), m.at("sr:3"), m.at("sr:6"));
  }
  return {votes >= 2, fmt("%.0f/3 seeds with rn > sr:6 and sr:3 > sr:6;", votes) + detail};
}

Outcome horner_saturation() {
  int votes = 0;
  std::string detail;
  for (const auto& m : horner_4000_runs()) {
    votes += m.at("sr:6") <= 4 * m.at("sr:12");
    detail += fmt(" [sr6/sr12 %.2f; single-run %.2f]", m.at("sr:6") / m.at("sr:12"),
                  m.at("sr:6/single") / m.at("sr:12/single"));
  }
  return {votes >= 2, fmt("%.0f/3 seeds with sr:6 <= 4 sr:12;", votes) + detail};
}

Outcome pairwise_parity() {
  constexpr std::size_t n = 1000000;
  constexpr long kScale = 160;
  const FloatFormat f = FloatFormat::bfloat16();
  int parity_votes = 0, bits_votes = 0;
  std::string detail;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    RngStream sampler(seed, sampling_stream(n));
    const auto v = sample_values(Distribution::uniform_0_1e5, f, n, sampler);
    const mpq_class exact(scaled_sum(v, kScale, false), mpz_class(1) << kScale);
    auto err = [&](const RoundingMode& mode) {
      RngStream rng(seed, rounding_stream(n, mode, 0));
      return rel_err(oracle::to_mpq(pairwise_sum(v, f, mode, rng, Tracing::off).value), exact);
    };
    const double rn = err(RoundingMode::nearest_even());
    const double sr3 = err(RoundingMode::sr_limited(3));
    const double sr12 = err(RoundingMode::sr_limited(12));
    parity_votes += sr3 <= 10 * rn && rn <= 10 * sr3;
    bits_votes += sr3 <= 2 * sr12;
    detail += fmt(" [rn %.1e sr3 %.1e sr12 %.1e]", rn, sr3, sr12);
  }
  return {parity_votes >= 3 && bits_votes >= 3,
          fmt("seeds 1..5: %.0f/5 within 10x of rn, %.0f/5 with sr:3 <= 2 sr:12;", parity_votes, bits_votes) +
              detail};
}

Outcome bound_asymptotics() {
  auto near = [](double ratio, double target) { return std::fabs(ratio / target - 1) <= 0.05; };
  bool ok = true;
  std::string detail;
  // Exact SR: only the sqrt(n) u_p term, so doubling n scales by sqrt(2).
  for (std::uint64_t n : {10000ull, 100000ull, 1000000ull, 10000000ull}) {
    const double ratio = bounds::horner_bound({2 * n, 53, std::nullopt, 0.1}) / bounds::horner_bound({n, 53, std::nullopt, 0.1});
    ok &= near(ratio, std::sqrt(2.0));
    if (n == 10000) detail += fmt("horner exact n=1e4: %.4f;", ratio);
  }
  // p + r fixed at 54 with r = 1: the n u_{p+r} term dominates, ratio -> 2.
  for (std::uint64_t n : {10000ull, 100000ull, 1000000ull, 10000000ull}) {
    const double ratio = bounds::horner_bound({2 * n, 53, 1u, 0.1}) / bounds::horner_bound({n, 53, 1u, 0.1});
    ok &= near(ratio, 2.0);
    if (n == 10000) detail += fmt(" horner bias n=1e4: %.4f;", ratio);
  }
  // Pairwise: the same two regimes in the tree depth h = log2 n.
  for (std::uint64_t h : {10000ull, 100000ull, 1000000ull}) {
    const double exact = bounds::pairwise_bound_for_depth(2 * h, 53, std::nullopt, 0.1) /
                         bounds::pairwise_bound_for_depth(h, 53, std::nullopt, 0.1);
    const double bias = bounds::pairwise_bound_for_depth(2 * h, 53, 1u, 0.1) /
                        bounds::pairwise_bound_for_depth(h, 53, 1u, 0.1);
    ok &= near(exact, std::sqrt(2.0)) && near(bias, 2.0);
    if (h == 10000) detail += fmt(" pairwise h=1e4: exact %.4f, bias %.4f", exact, bias);
  }
  return {ok, detail + " (p=53, tolerance 5%)"};
}

Outcome determinism() {
  auto horner_cfg = [](unsigned threads) {
    ExperimentConfig c;
    c.kind = ExperimentKind::horner;
    c.sizes = {0, 10, 100, 500};
    c.modes = {RoundingMode::nearest_even(), RoundingMode::toward_zero(), RoundingMode::sr_exact(),
               RoundingMode::sr_limited(3)};
    c.reps = 10;
    c.seed = 77;
    c.threads = threads;
    return c;
  };
  auto sum_cfg = [](ExperimentKind kind, unsigned threads) {
    ExperimentConfig c;
    c.kind = kind;
    c.format = FloatFormat::bfloat16();
    c.distribution = Distribution::uniform_sym_1e5;
    c.sizes = {1, 100, 10000};
    c.modes = {RoundingMode::nearest_even(), RoundingMode::sr_exact(), RoundingMode::sr_limited(6)};
    c.reps = 3;
    c.seed = 78;
    c.threads = threads;
    return c;
  };
  int same = 0, total = 0;
  for (int k = 0; k < 3; ++k) {
    auto make = [&](unsigned threads) {
      return k == 0 ? horner_cfg(threads)
                    : sum_cfg(k == 1 ? ExperimentKind::pairwise : ExperimentKind::recursive, threads);
    };
    const std::string first = to_csv(run_experiment(make(1)));
    same += first == to_csv(run_experiment(make(1)));
    same += first == to_csv(run_experiment(make(4)));
    total += 2;
  }
  return {same == total, fmt("%.0f/%.0f reruns byte-identical (horner, pairwise, recursive; 1 and 4 workers)", same, total)};
}

}  // namespace

int main() {
  criterion("exact-op oracle equivalence", 60, exact_ops);
  criterion("rn correctness", 60, rn_correctness);
  criterion("sr exact unbiasedness", 120, sr_unbiasedness);
  criterion("sr limited bias identity", 60, sr_bias_identity);
  criterion("horner bound coverage", 300, horner_coverage);
  criterion("pairwise bound coverage", 600, pairwise_coverage);
  criterion("horner stagnation ordering", 600, horner_stagnation);
  criterion("horner rule-of-thumb saturation", 600, horner_saturation);
  criterion("pairwise parity with rn", 600, pairwise_parity);
  criterion("bound asymptotics", 1, bound_asymptotics);
  criterion("determinism", 120, determinism);
  std::printf("%s: %d failing\n", failures ? "FAILED" : "ALL PASSED", failures);
  return failures ? 1 : 0;
}
