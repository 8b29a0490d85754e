#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "tropconv/exec.hpp"
#include "tropconv/io.hpp"
#include "tropconv/rational.hpp"

namespace tropconv {

/// Best-of-`repeats` seconds per call, each repeat looping until at least
/// min_seconds have elapsed.
double time_per_call(const std::function<void()>& fn, int repeats, double min_seconds);

/// Wall-time sweep over n for the three exact kernels whose growth rates the
/// crossover compares:
///   naive-minsum    submask enumeration, 3^n
///   minmax-chunked  full chunk sweep (no early stop), 2^{3n/2} up to logs
///   fast-sumprod    ranked zeta/Möbius, 2^n n^2
struct CrossoverOptions {
  int n_min = 10;
  int n_max = 16;
  std::uint64_t max_value = 1U << 20;
  double inf_frac = 0.1;
  int repeats = 3;
  double min_seconds = 0.05;
  std::uint64_t seed = 1;
  Exec exec = Exec::serial;
  std::vector<std::string> algorithms = {"naive-minsum", "minmax-chunked", "fast-sumprod"};
};

/// Per-step growth each crossover algorithm is expected to show.
double expected_growth(const std::string& algorithm);

std::vector<BenchRecord> run_crossover(const CrossoverOptions& options,
                                       const std::function<void(const BenchRecord&)>& on_record = {});

/// exp of the least-squares slope of log(seconds) against n over the records
/// of one algorithm. Needs at least two distinct n.
double growth_factor(std::span<const BenchRecord> records, const std::string& algorithm);

/// Approximator sweep: time, covering size and observed ratio against the
/// naive oracle. max_ratio holds the largest h̃/h for min-sum algorithms and
/// the smallest for approx-maxsum.
struct ApproxSuiteOptions {
  std::vector<int> ns = {8, 10};
  std::vector<Rational> eps = {Rational(1, 2), Rational(1, 10)};
  std::vector<std::uint64_t> max_values = {1U << 10, 1U << 30};
  std::vector<std::string> algorithms = {"approx-weak", "approx-simple", "approx-strong", "approx-maxsum"};
  double inf_frac = 0.1;
  std::uint64_t seed = 1;
  Exec exec = Exec::parallel;
};

std::vector<BenchRecord> run_approx_suite(const ApproxSuiteOptions& options,
                                          const std::function<void(const BenchRecord&)>& on_record = {});

}  // namespace tropconv
