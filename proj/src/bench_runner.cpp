#include "tropconv/bench_runner.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include "tropconv/approx.hpp"
#include "tropconv/errors.hpp"
#include "tropconv/lattice.hpp"
#include "tropconv/minmax.hpp"
#include "tropconv/semiring.hpp"

namespace tropconv {

double time_per_call(const std::function<void()>& fn, int repeats, double min_seconds) {
  using clock = std::chrono::steady_clock;
  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < std::max(1, repeats); ++r) {
    const auto start = clock::now();
    std::size_t calls = 0;
    double elapsed = 0;
    do {
      fn();
      ++calls;
      elapsed = std::chrono::duration<double>(clock::now() - start).count();
    } while (elapsed < min_seconds);
    best = std::min(best, elapsed / static_cast<double>(calls));
  }
  return best;
}

double expected_growth(const std::string& algorithm) {
  if (algorithm == "naive-minsum") return 3.0;
  if (algorithm == "minmax-chunked") return 2.0 * std::numbers::sqrt2;
  if (algorithm == "fast-sumprod") return 2.0;
  throw UsageError("unknown crossover algorithm '" + algorithm + "'");
}

std::vector<BenchRecord> run_crossover(const CrossoverOptions& options,
                                       const std::function<void(const BenchRecord&)>& on_record) {
  for (const auto& a : options.algorithms) expected_growth(a);
  std::vector<BenchRecord> out;
  const ValueDistribution dist{ValueDistribution::Kind::uniform, options.max_value};
  for (int n = options.n_min; n <= options.n_max; ++n) {
    const IntFunction f = generate_set_function(n, dist, options.inf_frac, options.seed + 2 * n);
    const IntFunction g = generate_set_function(n, dist, options.inf_frac, options.seed + 2 * n + 1);
    for (const auto& algorithm : options.algorithms) {
      std::function<void()> fn;
      RingFunction rf, rg;
      if (algorithm == "naive-minsum") {
        fn = [&] { naive_convolution<MinPlus>(f, g, options.exec); };
      } else if (algorithm == "minmax-chunked") {
        MinMaxOptions mo;
        mo.stop_when_resolved = false;
        mo.exec = options.exec;
        fn = [&f, &g, mo] { minmax_convolution(f, g, mo); };
      } else {
        rf = RingFunction(n);
        rg = RingFunction(n);
        for (std::size_t i = 0; i < rf.size(); ++i) {
          rf[static_cast<Mask>(i)] = f[static_cast<Mask>(i)].is_finite() ? 1 : 0;
          rg[static_cast<Mask>(i)] = g[static_cast<Mask>(i)].is_finite() ? 1 : 0;
        }
        fn = [&] { fast_sumproduct_convolution(rf, rg, options.exec); };
      }
      BenchRecord rec;
      rec.algorithm = algorithm;
      rec.n = n;
      rec.max_value = options.max_value;
      rec.seconds = time_per_call(fn, options.repeats, options.min_seconds);
      if (on_record) on_record(rec);
      out.push_back(std::move(rec));
    }
  }
  return out;
}

double growth_factor(std::span<const BenchRecord> records, const std::string& algorithm) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t count = 0;
  for (const auto& r : records) {
    if (r.algorithm != algorithm || !(r.seconds > 0)) continue;
    const double x = r.n, y = std::log(r.seconds);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  const double denom = static_cast<double>(count) * sxx - sx * sx;
  if (count < 2 || denom <= 0) throw DomainError("growth_factor: need timings at two or more distinct n");
  return std::exp((static_cast<double>(count) * sxy - sx * sy) / denom);
}

namespace {

// largest (min-sum) or smallest (max-sum) finite approx/exact ratio; ∞ when the
// support differs
double observed_ratio(const IntFunction& exact, const RealFunction& approx, bool maximize) {
  double worst = 1.0;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    const ExtInt h = exact[static_cast<Mask>(i)];
    const ApproxFloat a = approx[static_cast<Mask>(i)];
    if (h.is_infinite() != a.is_infinite()) return std::numeric_limits<double>::infinity();
    if (h.is_infinite()) continue;
    if (h.value() == 0) {
      if (!a.is_zero()) return std::numeric_limits<double>::infinity();
      continue;
    }
    const double r = a.to_double() / static_cast<double>(h.value());
    worst = maximize ? std::min(worst, r) : std::max(worst, r);
  }
  return worst;
}

}  // namespace

std::vector<BenchRecord> run_approx_suite(const ApproxSuiteOptions& options,
                                          const std::function<void(const BenchRecord&)>& on_record) {
  std::vector<BenchRecord> out;
  std::uint64_t seed = options.seed;
  for (int n : options.ns) {
    for (std::uint64_t M : options.max_values) {
      const ValueDistribution dist{ValueDistribution::Kind::uniform, M};
      const IntFunction f = generate_set_function(n, dist, options.inf_frac, seed++);
      const IntFunction g = generate_set_function(n, dist, options.inf_frac, seed++);
      const RealFunction rf = to_real(f), rg = to_real(g);
      const IntFunction exact_min = naive_convolution<MinPlus>(f, g, options.exec);
      const IntFunction exact_max = naive_convolution<MaxPlus>(f, g, options.exec);
      for (const Rational& eps : options.eps) {
        for (const auto& algorithm : options.algorithms) {
          ApproxStats stats;
          ApproxOptions ao;
          ao.stats = &stats;
          ao.exec = options.exec;
          RealFunction result;
          bool maximize = false;
          const auto start = std::chrono::steady_clock::now();
          if (algorithm == "approx-weak") result = approx_minsum_weak(rf, rg, eps, ao);
          else if (algorithm == "approx-simple") result = approx_minsum_simple(rf, rg, eps, ao);
          else if (algorithm == "approx-strong") result = approx_minsum_strong(rf, rg, eps, ao);
          else if (algorithm == "approx-maxsum") {
            result = approx_maxsum(rf, rg, eps, ao);
            maximize = true;
          } else {
            throw UsageError("unknown approximation algorithm '" + algorithm + "'");
          }
          BenchRecord rec;
          rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
          rec.algorithm = algorithm;
          rec.n = n;
          rec.max_value = M;
          rec.eps = eps.to_string();
          if (stats.family_size > 0) rec.family_size = stats.family_size;
          rec.max_ratio = observed_ratio(maximize ? exact_max : exact_min, result, maximize);
          if (on_record) on_record(rec);
          out.push_back(std::move(rec));
        }
      }
    }
  }
  return out;
}

}  // namespace tropconv
