// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "srlab/algorithms/horner.hpp"
#include "srlab/algorithms/summation.hpp"
#include "srlab/bounds/bounds.hpp"
#include "srlab/core/parse.hpp"
#include "srlab/explab/parallel.hpp"
#include "srlab/explab/sampling.hpp"
#include "srlab/explab/streams.hpp"

namespace srlab::explab {

enum class ExperimentKind { horner, pairwise, recursive };

inline std::string kind_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::horner: return "horner";
    case ExperimentKind::pairwise: return "pairwise";
    case ExperimentKind::recursive: return "recursive";
  }
  return {};
}

/// "binary16", "bfloat16", "p=<int>" (unbounded exponent) or
/// "p=<int>,emin,emax". ':' is accepted in place of ',' and is what the
/// format name uses, so it can sit in a CSV field.
inline FloatFormat parse_format(const std::string& text) {
  if (text == "binary16") return FloatFormat::binary16();
  if (text == "bfloat16") return FloatFormat::bfloat16();
  if (text.rfind("p=", 0) == 0) {
    std::vector<std::string> parts;
    std::size_t start = 2;
    for (std::size_t sep; (sep = text.find_first_of(",:", start)) != std::string::npos; start = sep + 1)
      parts.push_back(text.substr(start, sep - start));
    parts.push_back(text.substr(start));
    try {
      std::size_t used = 0;
      const int p = std::stoi(parts[0], &used);
      if (used != parts[0].size()) throw std::invalid_argument("precision");
      if (parts.size() == 1) return FloatFormat::unbounded(p, "p=" + parts[0]);
      if (parts.size() == 3) {
        const std::int64_t emin = std::stoll(parts[1]), emax = std::stoll(parts[2]);
        return FloatFormat(p, emin, emax, "p=" + parts[0] + ":" + std::to_string(emin) + ":" + std::to_string(emax));
      }
    } catch (const std::logic_error&) {
    }
  }
  throw std::invalid_argument("unknown format '" + text + "'");
}

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::horner;
  FloatFormat format = FloatFormat::binary16();
  /// Evaluation point (horner only), as a literal exact in `format`.
  std::string x = "0.9990234375";
  Distribution distribution = Distribution::uniform01;
  std::vector<std::uint64_t> sizes;
  std::vector<RoundingMode> modes;
  unsigned reps = 30;
  std::uint64_t seed = 0;
  double lambda = 0.1;
  unsigned threads = 1;

  void validate() const {
    if (sizes.empty()) throw std::invalid_argument("config: sizes must be nonempty");
    for (std::size_t i = 1; i < sizes.size(); ++i)
      if (!(sizes[i - 1] < sizes[i])) throw std::invalid_argument("config: sizes must be strictly ascending");
    if (modes.empty()) throw std::invalid_argument("config: modes must be nonempty");
    if (reps < 1 || reps > 65536) throw std::invalid_argument("config: reps must be in [1, 65536]");
    if (!(lambda > 0 && lambda < 1)) throw std::invalid_argument("config: lambda must lie in (0, 1)");
    const bool poly = distribution == Distribution::uniform01 || distribution == Distribution::uniform_sym1;
    if ((kind == ExperimentKind::horner) != poly)
      throw std::invalid_argument("config: distribution " + distribution_name(distribution) +
                                  " does not match experiment kind " + kind_name(kind));
    if (kind != ExperimentKind::horner && sizes.front() < 1)
      throw std::invalid_argument("config: summation sizes must be >= 1");
  }
};

/// One (n, mode) cell of an experiment.
///
/// rel_err_of_avg is |mean(results) - ref| / |ref| over the repetitions;
/// mean_rel_err is the mean of the per-repetition relative errors. `error`
/// is set (and the errors are NaN) when a repetition left the format range.
struct ResultRow {
  std::string kind;
  std::string format;
  std::uint64_t n = 0;
  std::string mode;
  std::uint64_t seed = 0;
  unsigned reps = 0;
  double rel_err_of_avg = 0;
  double mean_rel_err = 0;
  std::optional<double> bound;
  std::optional<double> cond;
  std::optional<std::string> error;
};

namespace detail {

struct Problem {
  std::vector<SoftValue> data;  // coefficients a_0..a_n, or summands
  SoftValue x;                  // horner only
  SoftValue reference;
  std::optional<double> cond;
};

inline Problem make_problem(const ExperimentConfig& cfg, std::uint64_t n) {
  Problem pb;
  RngStream rng(cfg.seed, sampling_stream(n));
  if (cfg.kind == ExperimentKind::horner) {
    pb.x = parse_value(cfg.x, cfg.format);
    pb.data = sample_values(cfg.distribution, cfg.format, n + 1, rng);
    pb.reference = exact_horner(pb.data, pb.x);
    if (!pb.reference.is_zero()) pb.cond = ratio_to_double(exact_horner_abs(pb.data, pb.x), pb.reference.abs());
  } else {
    pb.data = sample_values(cfg.distribution, cfg.format, n, rng);
    pb.reference = exact_sum(pb.data);
    if (!pb.reference.is_zero()) pb.cond = ratio_to_double(exact_abs_sum(pb.data), pb.reference.abs());
  }
  return pb;
}

inline SoftValue run_once(const ExperimentConfig& cfg, const Problem& pb, const RoundingMode& mode, RngStream& rng) {
  switch (cfg.kind) {
    case ExperimentKind::horner: return horner(pb.data, pb.x, cfg.format, mode, rng, Tracing::off).value;
    case ExperimentKind::pairwise: return pairwise_sum(pb.data, cfg.format, mode, rng, Tracing::off).value;
    case ExperimentKind::recursive: return recursive_sum(pb.data, cfg.format, mode, rng, Tracing::off).value;
  }
  return {};
}

inline std::optional<double> bound_for(const ExperimentConfig& cfg, std::uint64_t n, const RoundingMode& mode,
                                       const std::optional<double>& cond) {
  if (!mode.stochastic() || !cond || cfg.kind == ExperimentKind::recursive) return std::nullopt;
  std::optional<unsigned> r;
  if (mode.kind() == RoundingMode::Kind::SRLimited) r = mode.random_bits();
  if (n == 0) return 0.0;  // degree-0 polynomial: no rounding at all
  const bounds::BoundParams params{n, cfg.format.precision(), r, cfg.lambda};
  const double factor = cfg.kind == ExperimentKind::horner ? bounds::horner_bound(params) : bounds::pairwise_bound(params);
  return *cond * factor;
}

}  // namespace detail

/// Run every (n, mode) cell of the configuration.
///
/// Per n, one problem instance is drawn from the sampling stream and shared
/// by all modes and repetitions; its reference value is exact. Deterministic
/// modes run once. Repetition j of mode m at size n uses
/// RngStream(seed, rounding_stream(n, m, j)), so rows are identical for any
/// worker count.
inline std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<ResultRow> rows;
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  for (const std::uint64_t n : cfg.sizes) {
    const detail::Problem pb = detail::make_problem(cfg, n);

    struct Job {
      std::size_t mode;
      unsigned rep;
    };
    std::vector<Job> jobs;
    for (std::size_t m = 0; m < cfg.modes.size(); ++m) {
      const unsigned reps = cfg.modes[m].stochastic() ? cfg.reps : 1u;
      for (unsigned j = 0; j < reps; ++j) jobs.push_back({m, j});
    }
    std::vector<SoftValue> results(jobs.size());
    std::vector<std::string> failures(jobs.size());
    parallel_for(jobs.size(), cfg.threads, [&](std::size_t i) {
      const RoundingMode& mode = cfg.modes[jobs[i].mode];
      RngStream rng(cfg.seed, rounding_stream(n, mode, jobs[i].rep));
      try {
        results[i] = detail::run_once(cfg, pb, mode, rng);
      } catch (const RangeError& e) {
        failures[i] = e.what();
      }
    });

    std::size_t i = 0;
    for (std::size_t m = 0; m < cfg.modes.size(); ++m) {
      const RoundingMode& mode = cfg.modes[m];
      ResultRow row;
      row.kind = kind_name(cfg.kind);
      row.format = cfg.format.name();
      row.n = n;
      row.mode = mode.tag();
      row.seed = cfg.seed;
      row.reps = mode.stochastic() ? cfg.reps : 1u;
      row.cond = pb.cond;
      row.bound = detail::bound_for(cfg, n, mode, pb.cond);
      SoftValue total;
      double rel_sum = 0;
      for (unsigned j = 0; j < row.reps; ++j, ++i) {
        if (!failures[i].empty()) {
          if (!row.error) row.error = failures[i];
          continue;
        }
        total = exact_add(total, results[i]);
        if (!pb.reference.is_zero())
          rel_sum += ratio_to_double(exact_sub(results[i], pb.reference).abs(), pb.reference.abs());
      }
      if (pb.reference.is_zero() && !row.error) row.error = "exact result is zero; relative error undefined";
      if (row.error) {
        row.rel_err_of_avg = row.mean_rel_err = nan;
      } else {
        const SoftValue reps = SoftValue::from_int(row.reps);
        const SoftValue scaled_ref = exact_mul(pb.reference, reps);
        row.rel_err_of_avg = ratio_to_double(exact_sub(total, scaled_ref).abs(), scaled_ref.abs());
        row.mean_rel_err = rel_sum / row.reps;
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

inline std::vector<ResultRow> run_horner_experiment(const ExperimentConfig& cfg) {
  if (cfg.kind != ExperimentKind::horner) throw std::invalid_argument("run_horner_experiment: kind must be horner");
  return run_experiment(cfg);
}

inline std::vector<ResultRow> run_pairwise_experiment(const ExperimentConfig& cfg) {
  if (cfg.kind == ExperimentKind::horner)
    throw std::invalid_argument("run_pairwise_experiment: kind must be pairwise or recursive");
  return run_experiment(cfg);
}

/// `count` sizes log-spaced on [lo, hi], rounded and deduplicated.
inline std::vector<std::uint64_t> geometric_sizes(std::uint64_t lo, std::uint64_t hi, unsigned count) {
  if (lo < 1 || hi < lo || count < 1) throw std::invalid_argument("geometric_sizes: need 1 <= lo <= hi, count >= 1");
  std::vector<std::uint64_t> out;
  for (unsigned i = 0; i < count; ++i) {
    const double t = count == 1 ? 1.0 : static_cast<double>(i) / (count - 1);
    const auto v = static_cast<std::uint64_t>(
        std::llround(std::exp(std::log(static_cast<double>(lo)) * (1 - t) + std::log(static_cast<double>(hi)) * t)));
    const std::uint64_t clamped = std::min(std::max(v, lo), hi);
    if (out.empty() || out.back() < clamped) out.push_back(clamped);
  }
  if (out.back() != hi) out.push_back(hi);
  return out;
}

}  // namespace srlab::explab
