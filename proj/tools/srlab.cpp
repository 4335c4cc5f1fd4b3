// SPDX-License-Identifier: Apache-2.0
//
// srlab: reproduce the Horner / pairwise / recursive summation studies under
// RN, RZ and stochastic rounding, and run the statistical verification battery.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "srlab/explab/csv.hpp"
#include "srlab/explab/verify.hpp"

namespace {

using namespace srlab;
using namespace srlab::explab;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);)
    if (!item.empty()) out.push_back(item);
  return out;
}

// "10,20,40" or "lo:hi:count" (log-spaced).
std::vector<std::uint64_t> parse_sizes(const std::string& text) {
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw std::invalid_argument("--sizes range must be lo:hi:count");
    return geometric_sizes(std::stoull(parts[0]), std::stoull(parts[1]), static_cast<unsigned>(std::stoul(parts[2])));
  }
  std::vector<std::uint64_t> out;
  for (const auto& p : split(text, ',')) out.push_back(std::stoull(p));
  return out;
}

std::vector<RoundingMode> parse_modes(const std::string& text) {
  std::vector<RoundingMode> out;
  for (const auto& m : split(text, ',')) out.push_back(RoundingMode::parse(m));
  return out;
}

struct ExperimentArgs {
  std::string format;
  std::string x;
  std::string dist;
  std::string sizes;
  std::string modes;
  unsigned reps = 0;
  std::uint64_t seed = 1;
  double lambda = 0.1;
  std::string out = "-";
  unsigned threads = 1;
};

void add_common(CLI::App* cmd, ExperimentArgs& a) {
  cmd->add_option("--format", a.format, "binary16 | bfloat16 | p=<int>[,emin,emax]")->capture_default_str();
  cmd->add_option("--sizes", a.sizes, "comma list, or lo:hi:count for a log-spaced grid")->capture_default_str();
  cmd->add_option("--modes", a.modes, "rn,rz,sr:exact,sr:<r>,...")->capture_default_str();
  cmd->add_option("--reps", a.reps, "repetitions per stochastic mode")->capture_default_str();
  cmd->add_option("--seed", a.seed, "64-bit seed")->capture_default_str();
  cmd->add_option("--lambda", a.lambda, "failure probability for the bound column")->capture_default_str();
  cmd->add_option("--out", a.out, "CSV path, '-' for stdout")->capture_default_str();
  cmd->add_option("--threads", a.threads, "worker threads (results do not depend on it)")->capture_default_str();
}

int run(ExperimentKind kind, const ExperimentArgs& a) {
  ExperimentConfig cfg;
  cfg.kind = kind;
  cfg.format = parse_format(a.format);
  cfg.distribution = parse_distribution(a.dist);
  cfg.sizes = parse_sizes(a.sizes);
  cfg.modes = parse_modes(a.modes);
  cfg.reps = a.reps;
  cfg.seed = a.seed;
  cfg.lambda = a.lambda;
  cfg.threads = a.threads;
  if (kind == ExperimentKind::horner) cfg.x = a.x.empty() ? (a.format == "bfloat16" ? "0.98828125" : "0.9990234375") : a.x;
  const auto rows = run_experiment(cfg);
  if (a.out == "-") {
    write_csv(std::cout, rows);
  } else {
    std::ofstream f(a.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + a.out);
    write_csv(f, rows);
  }
  for (const auto& r : rows)
    if (r.error) std::cerr << "warning: n=" << r.n << " mode=" << r.mode << ": " << *r.error << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"srlab: stochastic rounding experiments in emulated low precision"};
  app.require_subcommand(1);

  ExperimentArgs horner_args{"binary16", "", "uniform01", "10:4000:16", "rn,sr:3,sr:6,sr:8,sr:12", 30};
  auto* horner_cmd = app.add_subcommand("horner", "Horner evaluation of a random polynomial");
  add_common(horner_cmd, horner_args);
  horner_cmd->add_option("--x", horner_args.x, "evaluation point, exact in the format (default: largest value below 1 used in the study)");
  horner_cmd->add_option("--coef-dist", horner_args.dist, "uniform01 | uniform-sym1")->capture_default_str();

  ExperimentArgs pairwise_args{"bfloat16", "", "uniform-0-1e5", "10:1000000:16", "rn,sr:3,sr:6,sr:12", 1};
  auto* pairwise_cmd = app.add_subcommand("pairwise", "pairwise (balanced tree) summation");
  add_common(pairwise_cmd, pairwise_args);
  pairwise_cmd->add_option("--value-dist", pairwise_args.dist, "uniform-0-1e5 | uniform-sym-1e5")->capture_default_str();

  ExperimentArgs recursive_args = pairwise_args;
  auto* recursive_cmd = app.add_subcommand("recursive", "left-to-right recursive summation");
  add_common(recursive_cmd, recursive_args);
  recursive_cmd->add_option("--value-dist", recursive_args.dist, "uniform-0-1e5 | uniform-sym-1e5")->capture_default_str();

  std::uint64_t verify_seed = 1;
  std::string report_path = "-";
  VerificationOptions vopt;
  auto* verify_cmd = app.add_subcommand("verify", "statistical verification battery, JSON report");
  verify_cmd->add_option("--seed", verify_seed)->capture_default_str();
  verify_cmd->add_option("--report", report_path, "JSON path, '-' for stdout")->capture_default_str();
  verify_cmd->add_option("--trials", vopt.coverage_trials, "trials per bound-coverage check")->capture_default_str();
  verify_cmd->add_option("--draws", vopt.draws, "SR_p draws per unbiasedness case")->capture_default_str();
  verify_cmd->add_option("--cases", vopt.cases, "operands per exhaustive check")->capture_default_str();
  verify_cmd->add_option("--traced-ops", vopt.traced_ops, "traced operations for the alpha checks")->capture_default_str();
  verify_cmd->add_option("--threads", vopt.threads)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (horner_cmd->parsed()) return run(ExperimentKind::horner, horner_args);
    if (pairwise_cmd->parsed()) return run(ExperimentKind::pairwise, pairwise_args);
    if (recursive_cmd->parsed()) return run(ExperimentKind::recursive, recursive_args);
    if (verify_cmd->parsed()) {
      const auto report = run_verification_suite(verify_seed, vopt);
      const std::string text = to_json(report).dump(2) + "\n";
      if (report_path == "-") {
        std::cout << text;
      } else {
        std::ofstream f(report_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open " + report_path);
        f << text;
      }
      for (const auto& c : report.checks)
        std::cerr << (c.passed ? "PASS " : "FAIL ") << c.name << " observed=" << c.observed
                  << " tolerance=" << c.tolerance << '\n';
      return report.all_passed() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "srlab: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
