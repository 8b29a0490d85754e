#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include <json.hpp>

#include "tropconv/applications.hpp"
#include "tropconv/set_function.hpp"

namespace tropconv {

/// {"n": n, "values": [...2^n entries...], "meta": {...}} in bitmask order.
/// Entries are JSON numbers or strings: "inf", or the exact text form of an
/// ApproxFloat ("0x<mantissa>p<exp>"). With negative_marker the infinity
/// marker is written "-inf" (max-sum semantics); both spellings parse.
struct SetFunctionFile {
  RealFunction values;
  nlohmann::json meta = nlohmann::json::object();
};

SetFunctionFile parse_set_function(std::string_view text);
std::string write_set_function(const SetFunctionFile& file, bool negative_marker = false);
SetFunctionFile read_set_function_file(const std::string& path);
void write_set_function_file(const std::string& path, const SetFunctionFile& file, bool negative_marker = false);

/// {"n", "k", "edges": [[u, v], ...] with 1 ≤ u < v ≤ n, "costs": n rows of k integers}.
Graph parse_graph(std::string_view text);
std::string write_graph(const Graph& g);
Graph read_graph_file(const std::string& path);

/// {"k", "colors": [1-based color per vertex], "edges": [[u, v, w], ...]}, 1-based
/// vertices, w a nonnegative integer. Negative weights and cycles raise DomainError.
ColoredDag parse_dag(std::string_view text);
std::string write_dag(const ColoredDag& d);
ColoredDag read_dag_file(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Value distributions for generated set functions, all supported on [0, M]:
///   uniform   every integer equally likely
///   powerlaw  log-uniform, floor((M+1)^U) − 1 for U uniform in [0, 1)
///   bimodal   half the mass uniform on the bottom 1% of the range, half on the top 1%
struct ValueDistribution {
  enum class Kind { uniform, powerlaw, bimodal };
  Kind kind = Kind::uniform;
  std::uint64_t max = 0;

  /// "uniform:1024" etc. Throws UsageError.
  static ValueDistribution parse(std::string_view text);
  std::string to_string() const;
};

/// Deterministic for a fixed seed on every platform: draws come straight from
/// mt19937_64 without library distributions. Throws UsageError unless
/// inf_frac ∈ [0, 1].
IntFunction generate_set_function(int n, const ValueDistribution& dist, double inf_frac, std::uint64_t seed);

/// Edge probability p ∈ [0, 1], costs uniform in [0, cost_max].
Graph generate_graph(int n, int k, double edge_prob, std::uint64_t cost_max, std::uint64_t seed);

/// Edges only go from lower to higher index, so the result is acyclic.
ColoredDag generate_dag(int n, int k, double edge_prob, std::uint64_t weight_max, std::uint64_t seed);

/// FNV-1a over the text form of every value, for pinning generated fixtures.
std::uint64_t checksum(const RealFunction& f);

/// One benchmark measurement. Missing optional fields are written empty.
struct BenchRecord {
  static constexpr int kSchemaVersion = 1;

  std::string algorithm;
  int n = 0;
  std::uint64_t max_value = 0;
  std::string eps;
  double seconds = 0;
  std::optional<std::size_t> family_size;
  std::optional<double> max_ratio;

  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

std::string bench_csv_header();
std::string to_csv_row(const BenchRecord& r);
/// Throws ParseError on a malformed row or a different schema version.
BenchRecord parse_csv_row(std::string_view row);

}  // namespace tropconv
