#include "tropconv/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <functional>

#include "tropconv/approx.hpp"
#include "tropconv/bench_runner.hpp"
#include "tropconv/equivalence.hpp"
#include "tropconv/errors.hpp"
#include "tropconv/guarantee.hpp"
#include "tropconv/io.hpp"
#include "tropconv/lattice.hpp"
#include "tropconv/minmax.hpp"
#include "tropconv/semiring.hpp"

namespace tropconv {

namespace {

struct ConvolveArgs {
  std::string semiring = "minsum";
  std::string algo = "naive";
  std::string eps = "0.1";
  std::string in_f, in_g, out;
  bool verify = false;
  bool serial = false;
};

const std::map<std::string, std::vector<std::string>>& compatible_algorithms() {
  static const std::map<std::string, std::vector<std::string>> table = {
      {"minsum", {"naive", "bounded", "approx-weak", "approx-simple", "approx-strong"}},
      {"maxsum", {"naive", "bounded", "approx-weak"}},
      {"minmax", {"naive", "minmax-chunked"}},
      {"sumprod", {"naive", "fast"}},
      {"boolean", {"naive", "fast"}},
  };
  return table;
}

std::uint64_t bound_of(const IntFunction& f, const IntFunction& g) {
  std::uint64_t m = 0;
  for (const IntFunction* h : {&f, &g}) {
    if (auto v = max_finite(*h)) m = std::max(m, v->value());
  }
  if (m > static_cast<std::uint64_t>(INT64_MAX)) throw DomainError("values too large for the bounded engine");
  return m;
}

RingFunction to_ring(const IntFunction& f, const char* what) {
  RingFunction r(f.order());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const ExtInt v = f[static_cast<Mask>(i)];
    if (v.is_infinite()) throw DomainError(std::string(what) + ": sum-product inputs cannot contain inf");
    r[static_cast<Mask>(i)] = v.value();
  }
  return r;
}

BoolFunction to_bool(const IntFunction& f, const char* what) {
  BoolFunction b(f.order());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const ExtInt v = f[static_cast<Mask>(i)];
    if (v.is_infinite() || v.value() > 1) throw DomainError(std::string(what) + ": boolean inputs must be 0 or 1");
    b[static_cast<Mask>(i)] = static_cast<std::uint8_t>(v.value());
  }
  return b;
}

template <class V>
IntFunction widen(const SetFunction<V>& f) {
  IntFunction r(f.order());
  for (std::size_t i = 0; i < f.size(); ++i) r[static_cast<Mask>(i)] = ExtInt(f[static_cast<Mask>(i)]);
  return r;
}

int run_convolve(const ConvolveArgs& a, std::ostream& out) {
  const auto& table = compatible_algorithms();
  const auto it = table.find(a.semiring);
  if (it == table.end()) throw UsageError("unknown semiring '" + a.semiring + "'");
  if (std::find(it->second.begin(), it->second.end(), a.algo) == it->second.end()) {
    throw UsageError("algorithm '" + a.algo + "' does not apply to semiring '" + a.semiring + "'");
  }
  const Exec exec = a.serial ? Exec::serial : Exec::parallel;
  const SetFunctionFile ff = read_set_function_file(a.in_f);
  const SetFunctionFile gf = read_set_function_file(a.in_g);
  require_same_order(ff.values, gf.values, "convolve");
  const bool approximate = a.algo.starts_with("approx-");
  const Rational eps = Rational::parse(a.eps);

  RealFunction result;
  if (approximate) {
    ApproxOptions ao;
    ao.exec = exec;
    if (a.semiring == "maxsum") result = approx_maxsum(ff.values, gf.values, eps, ao);
    else if (a.algo == "approx-weak") result = approx_minsum_weak(ff.values, gf.values, eps, ao);
    else if (a.algo == "approx-simple") result = approx_minsum_simple(ff.values, gf.values, eps, ao);
    else result = approx_minsum_strong(ff.values, gf.values, eps, ao);
  } else {
    const IntFunction f = to_int(ff.values), g = to_int(gf.values);
    IntFunction h;
    if (a.semiring == "minsum") {
      h = a.algo == "naive" ? naive_convolution<MinPlus>(f, g, exec)
                            : bounded_minsum_convolution(f, g, static_cast<std::int64_t>(bound_of(f, g)),
                                                         BoundedStrategy::automatic, exec);
    } else if (a.semiring == "maxsum") {
      h = a.algo == "naive" ? naive_convolution<MaxPlus>(f, g, exec)
                            : bounded_maxsum_convolution(f, g, static_cast<std::int64_t>(bound_of(f, g)),
                                                         BoundedStrategy::automatic, exec);
    } else if (a.semiring == "minmax") {
      MinMaxOptions mo;
      mo.exec = exec;
      h = a.algo == "naive" ? naive_convolution<MinMax>(f, g, exec) : minmax_convolution(f, g, mo);
    } else if (a.semiring == "sumprod") {
      const RingFunction rf = to_ring(f, a.in_f.c_str()), rg = to_ring(g, a.in_g.c_str());
      h = widen(a.algo == "naive" ? naive_convolution<SumProduct>(rf, rg, exec)
                                  : fast_sumproduct_convolution(rf, rg, exec));
    } else {
      const BoolFunction bf = to_bool(f, a.in_f.c_str()), bg = to_bool(g, a.in_g.c_str());
      h = widen(a.algo == "naive" ? naive_convolution<BoolOrAnd>(bf, bg, exec)
                                  : boolean_subset_convolution(bf, bg, exec));
    }
    result = to_real(h);
  }

  if (!a.out.empty()) write_set_function_file(a.out, SetFunctionFile{result, {}}, a.semiring == "maxsum");
  else out << write_set_function(SetFunctionFile{result, {}}, a.semiring == "maxsum");

  out << "semiring=" << a.semiring << " algo=" << a.algo << " n=" << result.order();
  if (approximate) out << " eps=" << eps.to_string();
  if (a.verify) {
    const IntFunction f = to_int(ff.values), g = to_int(gf.values);
    bool ok = true;
    if (approximate) {
      const bool maximize = a.semiring == "maxsum";
      const IntFunction exact = maximize ? naive_convolution<MaxPlus>(f, g, exec) : naive_convolution<MinPlus>(f, g, exec);
      const GuaranteeReport rep =
          maximize ? check_maxsum_guarantee(exact, result, eps) : check_minsum_guarantee(exact, result, eps);
      out << " max_ratio=" << std::setprecision(12) << rep.extreme_ratio << " violations="
          << rep.soundness_violations + rep.ratio_violations + rep.support_violations;
      ok = rep.ok();
    } else {
      RealFunction exact;
      if (a.semiring == "minsum") exact = to_real(naive_convolution<MinPlus>(f, g, exec));
      else if (a.semiring == "maxsum") exact = to_real(naive_convolution<MaxPlus>(f, g, exec));
      else if (a.semiring == "minmax") exact = to_real(naive_convolution<MinMax>(f, g, exec));
      else if (a.semiring == "sumprod") exact = to_real(widen(naive_convolution<SumProduct>(to_ring(f, "f"), to_ring(g, "g"), exec)));
      else exact = to_real(widen(naive_convolution<BoolOrAnd>(to_bool(f, "f"), to_bool(g, "g"), exec)));
      std::size_t mismatches = 0;
      for (std::size_t i = 0; i < exact.size(); ++i) mismatches += exact[static_cast<Mask>(i)] != result[static_cast<Mask>(i)];
      out << " mismatches=" << mismatches;
      ok = mismatches == 0;
    }
    out << (ok ? " verified\n" : " VERIFICATION FAILED\n");
    return ok ? kExitOk : kExitVerify;
  }
  out << "\n";
  return kExitOk;
}

void write_or_print(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) out << text;
  else write_text_file(path, text);
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto to_int = [&](std::string_view s) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
      throw UsageError("bad range '" + text + "': expected N or A..B");
    }
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int v = to_int(text);
    return {v, v};
  }
  const int lo = to_int(std::string_view(text).substr(0, dots)), hi = to_int(std::string_view(text).substr(dots + 2));
  if (lo > hi) throw UsageError("bad range '" + text + "': empty");
  return {lo, hi};
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  configure_threads_from_env();
  CLI::App app{"Tropical subset convolutions: exact kernels and approximation schemes", "tropconv"};
  app.require_subcommand(1);
  std::function<int()> action;

  ConvolveArgs conv;
  auto* convolve = app.add_subcommand("convolve", "Convolve two set-function files");
  convolve->add_option("--semiring", conv.semiring, "minsum | maxsum | minmax | sumprod | boolean")->capture_default_str();
  convolve->add_option("--algo", conv.algo,
                       "naive | fast | bounded | minmax-chunked | approx-weak | approx-simple | approx-strong")
      ->capture_default_str();
  convolve->add_option("--eps", conv.eps, "Error bound, decimal or fraction")->capture_default_str();
  convolve->add_option("--in-f", conv.in_f, "First input")->required();
  convolve->add_option("--in-g", conv.in_g, "Second input")->required();
  convolve->add_option("--out", conv.out, "Output file (stdout when omitted)");
  convolve->add_flag("--verify", conv.verify, "Check against the naive oracle; exit 3 on a violation");
  convolve->add_flag("--serial", conv.serial, "Run kernels single-threaded");
  convolve->callback([&] { action = [&] { return run_convolve(conv, out); }; });

  auto* gen = app.add_subcommand("gen", "Generate seeded instances");
  gen->require_subcommand(1);
  int gen_n = 8, gen_k = 3;
  std::string dist = "uniform:1024", gen_out;
  double inf_frac = 0.0, edge_prob = 0.3;
  std::uint64_t seed = 1, cost_max = 100, weight_max = 100;
  auto* gen_setfn = gen->add_subcommand("setfn", "Set function over a lattice of order n");
  gen_setfn->add_option("--n", gen_n)->required();
  gen_setfn->add_option("--dist", dist, "uniform:M | powerlaw:M | bimodal:M")->capture_default_str();
  gen_setfn->add_option("--inf-frac", inf_frac, "Probability of an inf entry")->capture_default_str();
  gen_setfn->add_option("--seed", seed)->capture_default_str();
  gen_setfn->add_option("--out", gen_out);
  gen_setfn->callback([&] {
    action = [&] {
      const ValueDistribution d = ValueDistribution::parse(dist);
      SetFunctionFile file{to_real(generate_set_function(gen_n, d, inf_frac, seed)),
                           {{"generator", d.to_string()}, {"inf_frac", inf_frac}, {"seed", seed}}};
      write_or_print(gen_out, write_set_function(file), out);
      return kExitOk;
    };
  });
  auto* gen_graph = gen->add_subcommand("graph", "Random graph with a cost table");
  gen_graph->add_option("--n", gen_n)->required();
  gen_graph->add_option("--k", gen_k)->capture_default_str();
  gen_graph->add_option("--edge-prob", edge_prob)->capture_default_str();
  gen_graph->add_option("--cost-max", cost_max)->capture_default_str();
  gen_graph->add_option("--seed", seed)->capture_default_str();
  gen_graph->add_option("--out", gen_out);
  gen_graph->callback([&] {
    action = [&] {
      write_or_print(gen_out, write_graph(generate_graph(gen_n, gen_k, edge_prob, cost_max, seed)), out);
      return kExitOk;
    };
  });
  auto* gen_dag = gen->add_subcommand("dag", "Random vertex-colored DAG");
  gen_dag->add_option("--n", gen_n)->required();
  gen_dag->add_option("--k", gen_k)->capture_default_str();
  gen_dag->add_option("--edge-prob", edge_prob)->capture_default_str();
  gen_dag->add_option("--weight-max", weight_max)->capture_default_str();
  gen_dag->add_option("--seed", seed)->capture_default_str();
  gen_dag->add_option("--out", gen_out);
  gen_dag->callback([&] {
    action = [&] {
      write_or_print(gen_out, write_dag(generate_dag(gen_n, gen_k, edge_prob, weight_max, seed)), out);
      return kExitOk;
    };
  });

  std::string graph_path, dag_path, app_eps = "0.1";
  int colors = 0;
  bool exact = false, witness = false;
  auto* coloring = app.add_subcommand("coloring", "Minimum-cost k-coloring");
  coloring->add_option("--graph", graph_path)->required();
  coloring->add_option("-k", colors, "Number of colors")->required();
  coloring->add_flag("--exact", exact, "Exact mode; negative costs allowed");
  coloring->add_option("--eps", app_eps, "Error bound for approximate mode")->capture_default_str();
  coloring->add_flag("--witness", witness, "Print an optimal coloring (exact mode)");
  coloring->callback([&] {
    action = [&] {
      const Graph g = read_graph_file(graph_path);
      if (exact) {
        std::vector<int> w;
        const auto value = kcoloring_cost_exact(g, colors, witness ? &w : nullptr);
        out << "value: " << (value ? std::to_string(*value) : "infeasible") << "\nmode: exact\n";
        if (witness && value) {
          out << "witness:";
          for (int c : w) out << ' ' << c + 1;
          out << "\n";
        }
      } else {
        if (witness) throw UsageError("--witness needs --exact");
        const Rational eps = Rational::parse(app_eps);
        const ApproxFloat value = kcoloring_cost_approx(g, colors, eps);
        out << "value: " << (value.is_infinite() ? "infeasible" : value.to_string()) << "\nmode: approx\neps: "
            << eps.to_string() << "\n";
      }
      return kExitOk;
    };
  });

  auto* subtree = app.add_subcommand("subtree", "Maximum-weight colorful subtree of a colored DAG");
  subtree->add_option("--dag", dag_path)->required();
  subtree->add_flag("--exact", exact, "Exact layer DP");
  subtree->add_option("--eps", app_eps, "Error bound for approximate mode")->capture_default_str();
  subtree->callback([&] {
    action = [&] {
      const ColoredDag d = read_dag_file(dag_path);
      if (exact) {
        out << "value: " << max_colorful_subtree_exact(d) << "\nmode: exact\n";
      } else {
        const Rational eps = Rational::parse(app_eps);
        out << "value: " << max_colorful_subtree(d, eps).to_string() << "\nmode: approx\neps: " << eps.to_string()
            << "\n";
      }
      return kExitOk;
    };
  });

  std::string eq_f, eq_g, eq_eps = "1/2";
  auto* equiv = app.add_subcommand("verify-equivalence",
                                   "Exact min-max convolution through the approximate min-sum solver, checked");
  equiv->add_option("--in-f", eq_f)->required();
  equiv->add_option("--in-g", eq_g)->required();
  equiv->add_option("--eps", eq_eps, "Error bound handed to the min-sum solver")->capture_default_str();
  equiv->callback([&] {
    action = [&] {
      const IntFunction f = to_int(read_set_function_file(eq_f).values);
      const IntFunction g = to_int(read_set_function_file(eq_g).values);
      const Rational eps = Rational::parse(eq_eps);
      const MinSumSolver solver = [](const RealFunction& a, const RealFunction& b, const Rational& e) {
        return approx_minsum_simple(a, b, e);
      };
      EquivalenceTrace trace;
      const IntFunction via = minmax_via_approx_minsum(f, g, eps, solver, &trace);
      const IntFunction direct = minmax_convolution(f, g);
      std::size_t mismatches = 0;
      for (std::size_t i = 0; i < via.size(); ++i) mismatches += via[static_cast<Mask>(i)] != direct[static_cast<Mask>(i)];
      const Claim1Report claim = verify_claim1(trace.f_ranks, trace.g_ranks, eps, trace.h_prime);
      out << "n=" << f.order() << " eps=" << eps.to_string() << " t=2^" << trace.k << " mismatches=" << mismatches
          << " window_failures=" << claim.failures << (mismatches == 0 && claim.ok() ? " verified\n" : " FAILED\n");
      return mismatches == 0 && claim.ok() ? kExitOk : kExitVerify;
    };
  });

  std::string suite = "crossover", n_range = "10..16", bench_out, bench_eps = "0.5,0.1", bench_M = "1024,1073741824";
  int repeats = 3;
  double min_time = 0.05;
  auto* bench = app.add_subcommand("bench", "Timing sweeps, CSV output");
  bench->add_option("--suite", suite, "crossover | approx")->capture_default_str();
  bench->add_option("--n", n_range, "N or A..B")->capture_default_str();
  bench->add_option("--eps", bench_eps, "Comma-separated error bounds (approx suite)")->capture_default_str();
  bench->add_option("--M", bench_M, "Comma-separated value bounds (approx suite)")->capture_default_str();
  bench->add_option("--repeats", repeats, "Best-of repeats per timing (crossover)")->capture_default_str();
  bench->add_option("--min-time", min_time, "Seconds each repeat runs at least (crossover)")->capture_default_str();
  bench->add_option("--seed", seed)->capture_default_str();
  bench->add_option("--out", bench_out, "Append rows to this CSV file");
  bench->callback([&] {
    action = [&] {
      const auto [lo, hi] = parse_range(n_range);
      std::ofstream file;
      if (!bench_out.empty()) {
        const bool fresh = !std::filesystem::exists(bench_out) || std::filesystem::file_size(bench_out) == 0;
        file.open(bench_out, std::ios::app);
        if (!file) throw UsageError("cannot write " + bench_out);
        if (fresh) file << bench_csv_header() << "\n";
      }
      out << bench_csv_header() << "\n";
      const auto emit = [&](const BenchRecord& r) {
        out << to_csv_row(r) << "\n" << std::flush;
        if (file.is_open()) file << to_csv_row(r) << "\n";
      };
      if (suite == "crossover") {
        CrossoverOptions co;
        co.n_min = lo;
        co.n_max = hi;
        co.repeats = repeats;
        co.min_seconds = min_time;
        co.seed = seed;
        const auto records = run_crossover(co, emit);
        if (hi > lo) {
          for (const auto& alg : co.algorithms) {
            out << "# growth " << alg << " " << std::setprecision(3) << growth_factor(records, alg) << " (expected "
                << expected_growth(alg) << ")\n";
          }
        }
      } else if (suite == "approx") {
        ApproxSuiteOptions ao;
        ao.ns.clear();
        for (int n = lo; n <= hi; ++n) ao.ns.push_back(n);
        ao.eps.clear();
        for (const auto& e : split_list(bench_eps)) ao.eps.push_back(Rational::parse(e));
        ao.max_values.clear();
        for (const auto& m : split_list(bench_M)) {
          std::uint64_t v = 0;
          auto [ptr, ec] = std::from_chars(m.data(), m.data() + m.size(), v);
          if (ec != std::errc{} || ptr != m.data() + m.size()) throw UsageError("bad --M entry '" + m + "'");
          ao.max_values.push_back(v);
        }
        ao.seed = seed;
        run_approx_suite(ao, emit);
      } else {
        throw UsageError("unknown suite '" + suite + "'");
      }
      return kExitOk;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    return action ? action() : kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const IntegrityError& e) {
    err << "verification failed: " << e.what() << "\n";
    return kExitVerify;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace tropconv
