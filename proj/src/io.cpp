#include "tropconv/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "tropconv/errors.hpp"

namespace tropconv {

using nlohmann::json;

namespace {

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

const json& field(const json& doc, const char* key, const char* what) {
  if (!doc.is_object() || !doc.contains(key)) throw ParseError(std::string(what) + ": missing field \"" + key + "\"");
  return doc.at(key);
}

std::int64_t as_integer(const json& v, const std::string& where) {
  if (v.is_number_unsigned()) {
    const auto u = v.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(INT64_MAX)) throw ParseError(where + ": integer out of range");
    return static_cast<std::int64_t>(u);
  }
  if (v.is_number_integer()) return v.get<std::int64_t>();
  throw ParseError(where + ": expected an integer");
}

ApproxFloat parse_value(const json& v, const std::string& where) {
  if (v.is_number_unsigned()) return ApproxFloat::from_uint(v.get<std::uint64_t>());
  if (v.is_number_integer()) throw ParseError(where + ": negative value");
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (!(d >= 0.0) || std::isinf(d)) throw ParseError(where + ": values must be finite and nonnegative");
    return ApproxFloat::from_double(d);
  }
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    if (s == "-inf") return ApproxFloat::infinity();
    if (auto x = ApproxFloat::parse(s)) return *x;
    throw ParseError(where + ": cannot parse \"" + s + "\"");
  }
  throw ParseError(where + ": expected a number or \"inf\"");
}

json value_json(const ApproxFloat& x, bool negative_marker) {
  if (x.is_infinite()) return negative_marker ? "-inf" : "inf";
  if (auto u = x.to_uint()) return *u;
  return x.to_string();
}

std::string dump(const json& doc) { return doc.dump() + "\n"; }

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
  if (!out) throw UsageError("write failed for " + path);
}

SetFunctionFile parse_set_function(std::string_view text) {
  const json doc = parse_json(text, "set function");
  const std::int64_t n = as_integer(field(doc, "n", "set function"), "set function: n");
  if (n < 0 || n > kMaxOrder) throw ParseError("set function: n out of range");
  const json& values = field(doc, "values", "set function");
  if (!values.is_array()) throw ParseError("set function: \"values\" must be an array");
  const std::size_t size = lattice_size(static_cast<int>(n));
  if (values.size() != size) {
    throw ParseError("set function: expected " + std::to_string(size) + " values, found " + std::to_string(values.size()));
  }
  SetFunctionFile file{RealFunction(static_cast<int>(n)), json::object()};
  for (std::size_t i = 0; i < size; ++i) {
    file.values[static_cast<Mask>(i)] = parse_value(values[i], "values[" + std::to_string(i) + "]");
  }
  if (doc.contains("meta")) file.meta = doc.at("meta");
  return file;
}

std::string write_set_function(const SetFunctionFile& file, bool negative_marker) {
  json values = json::array();
  for (const ApproxFloat& v : file.values) values.push_back(value_json(v, negative_marker));
  json doc = {{"n", file.values.order()}, {"values", std::move(values)}};
  if (!file.meta.is_null() && !file.meta.empty()) doc["meta"] = file.meta;
  return dump(doc);
}

SetFunctionFile read_set_function_file(const std::string& path) { return parse_set_function(read_text_file(path)); }

void write_set_function_file(const std::string& path, const SetFunctionFile& file, bool negative_marker) {
  write_text_file(path, write_set_function(file, negative_marker));
}

Graph parse_graph(std::string_view text) {
  const json doc = parse_json(text, "graph");
  const std::int64_t n = as_integer(field(doc, "n", "graph"), "graph: n");
  const std::int64_t k = as_integer(field(doc, "k", "graph"), "graph: k");
  if (n < 0 || n > Graph::kMaxVertices) throw ParseError("graph: n must lie in [0, 22]");
  if (k < 1) throw ParseError("graph: k must be at least 1");
  Graph g(static_cast<int>(n), static_cast<int>(k));
  const json& edges = field(doc, "edges", "graph");
  if (!edges.is_array()) throw ParseError("graph: \"edges\" must be an array");
  std::set<std::pair<std::int64_t, std::int64_t>> seen;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string where = "edges[" + std::to_string(i) + "]";
    const json& e = edges[i];
    if (!e.is_array() || e.size() != 2) throw ParseError(where + ": expected [u, v]");
    const std::int64_t u = as_integer(e[0], where), v = as_integer(e[1], where);
    if (!(1 <= u && u < v && v <= n)) throw ParseError(where + ": need 1 <= u < v <= n");
    if (!seen.emplace(u, v).second) throw ParseError(where + ": duplicate edge");
    g.add_edge(static_cast<int>(u - 1), static_cast<int>(v - 1));
  }
  const json& costs = field(doc, "costs", "graph");
  if (!costs.is_array() || costs.size() != static_cast<std::size_t>(n)) {
    throw ParseError("graph: \"costs\" must have one row per vertex");
  }
  for (std::size_t v = 0; v < costs.size(); ++v) {
    const std::string where = "costs[" + std::to_string(v) + "]";
    if (!costs[v].is_array() || costs[v].size() != static_cast<std::size_t>(k)) {
      throw ParseError(where + ": expected " + std::to_string(k) + " entries");
    }
    for (std::size_t c = 0; c < costs[v].size(); ++c) {
      g.set_cost(static_cast<int>(v), static_cast<int>(c),
                 as_integer(costs[v][c], where + "[" + std::to_string(c) + "]"));
    }
  }
  return g;
}

std::string write_graph(const Graph& g) {
  json edges = json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u + 1, v + 1});
  json costs = json::array();
  for (int v = 0; v < g.vertices(); ++v) {
    json row = json::array();
    for (int c = 0; c < g.colors(); ++c) row.push_back(g.cost(v, c));
    costs.push_back(std::move(row));
  }
  return dump({{"n", g.vertices()}, {"k", g.colors()}, {"edges", std::move(edges)}, {"costs", std::move(costs)}});
}

Graph read_graph_file(const std::string& path) { return parse_graph(read_text_file(path)); }

ColoredDag parse_dag(std::string_view text) {
  const json doc = parse_json(text, "dag");
  const std::int64_t k = as_integer(field(doc, "k", "dag"), "dag: k");
  if (k < 1 || k > ColoredDag::kMaxColors) throw ParseError("dag: k must lie in [1, 20]");
  const json& colors = field(doc, "colors", "dag");
  if (!colors.is_array()) throw ParseError("dag: \"colors\" must be an array");
  std::vector<int> col(colors.size());
  for (std::size_t v = 0; v < colors.size(); ++v) {
    const std::string where = "colors[" + std::to_string(v) + "]";
    const std::int64_t c = as_integer(colors[v], where);
    if (c < 1 || c > k) throw ParseError(where + ": color must lie in [1, k]");
    col[v] = static_cast<int>(c - 1);
  }
  const auto n = static_cast<std::int64_t>(col.size());
  ColoredDag d(static_cast<int>(k), std::move(col));
  const json& edges = field(doc, "edges", "dag");
  if (!edges.is_array()) throw ParseError("dag: \"edges\" must be an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string where = "edges[" + std::to_string(i) + "]";
    const json& e = edges[i];
    if (!e.is_array() || e.size() != 3) throw ParseError(where + ": expected [u, v, w]");
    const std::int64_t u = as_integer(e[0], where), v = as_integer(e[1], where), w = as_integer(e[2], where);
    if (u < 1 || v < 1 || u > n || v > n) throw ParseError(where + ": endpoint out of range");
    if (w < 0) throw DomainError(where + ": negative weight");
    d.add_edge(static_cast<int>(u - 1), static_cast<int>(v - 1), static_cast<std::uint64_t>(w));
  }
  return d;
}

std::string write_dag(const ColoredDag& d) {
  json colors = json::array();
  for (int v = 0; v < d.vertices(); ++v) colors.push_back(d.color(v) + 1);
  json edges = json::array();
  for (const auto& e : d.edges()) edges.push_back({e.from + 1, e.to + 1, e.weight});
  return dump({{"k", d.colors()}, {"colors", std::move(colors)}, {"edges", std::move(edges)}});
}

ColoredDag read_dag_file(const std::string& path) { return parse_dag(read_text_file(path)); }

ValueDistribution ValueDistribution::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw UsageError("distribution '" + std::string(text) + "': expected kind:M");
  const std::string_view kind = text.substr(0, colon), max = text.substr(colon + 1);
  ValueDistribution d;
  if (kind == "uniform") d.kind = Kind::uniform;
  else if (kind == "powerlaw") d.kind = Kind::powerlaw;
  else if (kind == "bimodal") d.kind = Kind::bimodal;
  else throw UsageError("distribution '" + std::string(kind) + "': expected uniform, powerlaw or bimodal");
  auto [ptr, ec] = std::from_chars(max.data(), max.data() + max.size(), d.max);
  if (ec != std::errc{} || ptr != max.data() + max.size() || max.empty()) {
    throw UsageError("distribution bound '" + std::string(max) + "' is not a nonnegative integer");
  }
  if (d.max >= ExtInt::kMaxFinite) throw UsageError("distribution bound too large");
  return d;
}

std::string ValueDistribution::to_string() const {
  const char* names[] = {"uniform", "powerlaw", "bimodal"};
  return std::string(names[static_cast<int>(kind)]) + ":" + std::to_string(max);
}

namespace {

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

// uniform in [lo, hi]; the modulo bias is below 2^-32 for the ranges used here
std::uint64_t uniform_in(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t span = hi - lo;
  if (span == UINT64_MAX) return rng();
  return lo + rng() % (span + 1);
}

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw UsageError(std::string(what) + " must lie in [0, 1]");
}

}  // namespace

IntFunction generate_set_function(int n, const ValueDistribution& dist, double inf_frac, std::uint64_t seed) {
  require_probability(inf_frac, "--inf-frac");
  std::mt19937_64 rng(seed);
  IntFunction f(n);
  const std::uint64_t M = dist.max;
  const std::uint64_t band = M / 100;
  for (auto& v : f) {
    if (unit(rng) < inf_frac) {
      v = ExtInt::infinity();
      continue;
    }
    std::uint64_t x = 0;
    switch (dist.kind) {
      case ValueDistribution::Kind::uniform:
        x = uniform_in(rng, 0, M);
        break;
      case ValueDistribution::Kind::powerlaw: {
        const double y = std::floor(std::pow(static_cast<double>(M) + 1.0, unit(rng))) - 1.0;
        x = std::min<std::uint64_t>(M, static_cast<std::uint64_t>(std::max(0.0, y)));
        break;
      }
      case ValueDistribution::Kind::bimodal:
        x = (rng() & 1U) ? uniform_in(rng, M - band, M) : uniform_in(rng, 0, band);
        break;
    }
    v = ExtInt(x);
  }
  return f;
}

Graph generate_graph(int n, int k, double edge_prob, std::uint64_t cost_max, std::uint64_t seed) {
  require_probability(edge_prob, "--edge-prob");
  if (cost_max > static_cast<std::uint64_t>(INT64_MAX)) throw UsageError("--cost-max too large");
  std::mt19937_64 rng(seed);
  Graph g(n, k);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (unit(rng) < edge_prob) g.add_edge(u, v);
    }
  }
  for (int v = 0; v < n; ++v) {
    for (int c = 0; c < k; ++c) g.set_cost(v, c, static_cast<std::int64_t>(uniform_in(rng, 0, cost_max)));
  }
  return g;
}

ColoredDag generate_dag(int n, int k, double edge_prob, std::uint64_t weight_max, std::uint64_t seed) {
  require_probability(edge_prob, "--edge-prob");
  if (n < 0) throw UsageError("--n must be nonnegative");
  std::mt19937_64 rng(seed);
  std::vector<int> colors(n);
  for (int& c : colors) c = static_cast<int>(uniform_in(rng, 0, static_cast<std::uint64_t>(k - 1)));
  ColoredDag d(k, colors);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (unit(rng) < edge_prob) d.add_edge(u, v, uniform_in(rng, 0, weight_max));
    }
  }
  return d;
}

std::uint64_t checksum(const RealFunction& f) {
  std::uint64_t h = 14695981039346656037ULL;
  const auto mix = [&](char c) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  };
  for (const ApproxFloat& v : f) {
    for (char c : v.to_string()) mix(c);
    mix(',');
  }
  return h;
}

std::string bench_csv_header() { return "schema,algorithm,n,M,eps,seconds,family_size,max_ratio"; }

std::string to_csv_row(const BenchRecord& r) {
  std::ostringstream out;
  out << BenchRecord::kSchemaVersion << ',' << r.algorithm << ',' << r.n << ',' << r.max_value << ',' << r.eps << ',';
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, r.seconds);
  out << std::string_view(buf, res.ptr - buf) << ',';
  if (r.family_size) out << *r.family_size;
  out << ',';
  if (r.max_ratio) {
    res = std::to_chars(buf, buf + sizeof buf, *r.max_ratio);
    out << std::string_view(buf, res.ptr - buf);
  }
  return out.str();
}

BenchRecord parse_csv_row(std::string_view row) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = row.find(',', start);
    cells.push_back(row.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (cells.size() != 8) throw ParseError("bench row: expected 8 columns, found " + std::to_string(cells.size()));
  const auto number = [&](std::string_view cell, auto& out, const char* name) {
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
    if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
      throw ParseError(std::string("bench row: bad ") + name + " '" + std::string(cell) + "'");
    }
  };
  int schema = 0;
  number(cells[0], schema, "schema");
  if (schema != BenchRecord::kSchemaVersion) throw ParseError("bench row: unsupported schema " + std::to_string(schema));
  BenchRecord r;
  r.algorithm = std::string(cells[1]);
  number(cells[2], r.n, "n");
  number(cells[3], r.max_value, "M");
  r.eps = std::string(cells[4]);
  number(cells[5], r.seconds, "seconds");
  if (!cells[6].empty()) {
    std::size_t s = 0;
    number(cells[6], s, "family_size");
    r.family_size = s;
  }
  if (!cells[7].empty()) {
    double x = 0;
    number(cells[7], x, "max_ratio");
    r.max_ratio = x;
  }
  return r;
}

}  // namespace tropconv
