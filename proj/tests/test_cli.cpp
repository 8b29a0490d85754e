#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "tropconv/cli.hpp"
#include "tropconv/io.hpp"

using namespace tropconv;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("tropconv_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string fixture(const std::string& name) { return std::string(TROPCONV_FIXTURE_DIR) + "/" + name; }

}  // namespace

TEST_CASE("gen is deterministic and honours inf-frac") {
  TempDir dir;
  const std::vector<std::string> base = {"gen", "setfn", "--n", "6", "--dist", "bimodal:500", "--seed", "3"};
  auto a = base, b = base;
  a.insert(a.end(), {"--out", dir / "a.json"});
  b.insert(b.end(), {"--out", dir / "b.json"});
  REQUIRE(run(a).code == 0);
  REQUIRE(run(b).code == 0);
  CHECK(read_text_file(dir / "a.json") == read_text_file(dir / "b.json"));
  const Run all_inf = run({"gen", "setfn", "--n", "4", "--inf-frac", "1.0"});
  REQUIRE(all_inf.code == 0);
  for (const ApproxFloat& v : parse_set_function(all_inf.out).values) CHECK(v.is_infinite());
  CHECK(run({"gen", "setfn", "--n", "4", "--inf-frac", "1.5"}).code == 1);
  CHECK(run({"gen", "setfn", "--n", "4", "--dist", "zipf:3"}).code == 1);
}

TEST_CASE("convolve with verification") {
  TempDir dir;
  REQUIRE(run({"gen", "setfn", "--n", "10", "--dist", "uniform:100000", "--seed", "1", "--out", dir / "f.json"}).code == 0);
  REQUIRE(run({"gen", "setfn", "--n", "10", "--dist", "uniform:100000", "--inf-frac", "0.1", "--seed", "2", "--out",
               dir / "g.json"}).code == 0);
  const Run strong = run({"convolve", "--semiring", "minsum", "--algo", "approx-strong", "--eps", "0.1", "--in-f",
                          dir / "f.json", "--in-g", dir / "g.json", "--out", dir / "h.json", "--verify"});
  CHECK(strong.code == 0);
  CHECK(strong.out.find("violations=0") != std::string::npos);
  const auto ratio_at = strong.out.find("max_ratio=");
  REQUIRE(ratio_at != std::string::npos);
  CHECK(std::stod(strong.out.substr(ratio_at + 10)) <= 1.1);

  REQUIRE(run({"gen", "setfn", "--n", "12", "--dist", "powerlaw:100000", "--inf-frac", "0.1", "--seed", "5", "--out",
               dir / "f12.json"}).code == 0);
  REQUIRE(run({"gen", "setfn", "--n", "12", "--dist", "uniform:1000", "--seed", "6", "--out", dir / "g12.json"}).code == 0);
  const Run mm = run({"convolve", "--semiring", "minmax", "--algo", "minmax-chunked", "--in-f", dir / "f12.json",
                      "--in-g", dir / "g12.json", "--out", dir / "h12.json", "--verify"});
  CHECK(mm.code == 0);
  CHECK(mm.out.find("mismatches=0") != std::string::npos);

  for (const auto& [sr, algo] : std::vector<std::pair<std::string, std::string>>{
           {"minsum", "bounded"}, {"maxsum", "bounded"}, {"maxsum", "approx-weak"}, {"minsum", "approx-weak"},
           {"minsum", "approx-simple"}}) {
    const Run r = run({"convolve", "--semiring", sr, "--algo", algo, "--eps", "1/2", "--in-f", dir / "f.json",
                       "--in-g", dir / "g.json", "--out", dir / "o.json", "--verify"});
    CHECK_MESSAGE(r.code == 0, sr, " ", algo, " ", r.out, r.err);
  }
}

TEST_CASE("naive convolution with the identity returns g byte for byte") {
  TempDir dir;
  SetFunctionFile id{RealFunction(5, ApproxFloat::infinity()), {}};
  id.values[0] = ApproxFloat::zero();
  write_set_function_file(dir / "id.json", id);
  SetFunctionFile g{to_real(generate_set_function(5, ValueDistribution::parse("uniform:50"), 0.3, 4)), {}};
  write_set_function_file(dir / "g.json", g);
  REQUIRE(run({"convolve", "--algo", "naive", "--in-f", dir / "id.json", "--in-g", dir / "g.json", "--out",
               dir / "h.json"}).code == 0);
  CHECK(read_text_file(dir / "h.json") == read_text_file(dir / "g.json"));
}

TEST_CASE("exit codes") {
  TempDir dir;
  write_text_file(dir / "bad.json", R"({"n": 1, "values": [0, "oops"]})");
  write_text_file(dir / "ok.json", R"({"n": 1, "values": [0, 1]})");
  const Run parse = run({"convolve", "--in-f", dir / "bad.json", "--in-g", dir / "ok.json"});
  CHECK(parse.code == 2);
  CHECK(parse.err.find("values[1]") != std::string::npos);
  CHECK(run({"convolve", "--semiring", "minmax", "--algo", "fast", "--in-f", dir / "ok.json", "--in-g",
             dir / "ok.json"}).code == 1);
  CHECK(run({"convolve", "--semiring", "tropical", "--in-f", dir / "ok.json", "--in-g", dir / "ok.json"}).code == 1);
  CHECK(run({"nonsense"}).code == 1);
  CHECK(run({}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("coloring command") {
  const Run three = run({"coloring", "--graph", fixture("k3.json"), "-k", "3", "--exact"});
  CHECK(three.code == 0);
  CHECK(three.out.starts_with("value: 3\n"));
  const Run two = run({"coloring", "--graph", fixture("k3.json"), "-k", "2", "--exact"});
  CHECK(two.code == 0);
  CHECK(two.out.starts_with("value: infeasible\n"));
  const Run approx = run({"coloring", "--graph", fixture("k3.json"), "-k", "3", "--eps", "0.1"});
  CHECK(approx.out.find("mode: approx") != std::string::npos);
  const Run w = run({"coloring", "--graph", fixture("k3.json"), "-k", "3", "--exact", "--witness"});
  CHECK(w.out.find("witness:") != std::string::npos);
}

TEST_CASE("subtree and equivalence commands") {
  TempDir dir;
  write_text_file(dir / "d.json", R"({"k": 2, "colors": [1, 2], "edges": [[1, 2, 7]]})");
  CHECK(run({"subtree", "--dag", dir / "d.json", "--exact"}).out.starts_with("value: 7\n"));
  const Run approx = run({"subtree", "--dag", dir / "d.json", "--eps", "0.1"});
  CHECK(approx.code == 0);
  write_text_file(dir / "cyc.json", R"({"k": 2, "colors": [1, 2], "edges": [[1, 2, 1], [2, 1, 1]]})");
  CHECK(run({"subtree", "--dag", dir / "cyc.json"}).code == 1);
  REQUIRE(run({"gen", "setfn", "--n", "7", "--dist", "uniform:40", "--seed", "8", "--out", dir / "f.json"}).code == 0);
  const Run eq = run({"verify-equivalence", "--in-f", dir / "f.json", "--in-g", dir / "f.json"});
  CHECK(eq.code == 0);
  CHECK(eq.out.find("verified") != std::string::npos);
}

TEST_CASE("bench emits schema-versioned csv and appends") {
  TempDir dir;
  const std::vector<std::string> args = {"bench", "--suite", "crossover", "--n", "4..6", "--repeats", "1",
                                         "--min-time", "0", "--out", dir / "b.csv"};
  const Run r = run(args);
  REQUIRE(r.code == 0);
  CHECK(r.out.starts_with(bench_csv_header()));
  CHECK(r.out.find("# growth naive-minsum") != std::string::npos);
  REQUIRE(run(args).code == 0);
  std::istringstream csv(read_text_file(dir / "b.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == bench_csv_header());
  int rows = 0;
  while (std::getline(csv, line)) {
    CHECK(parse_csv_row(line).n >= 4);
    ++rows;
  }
  CHECK(rows == 18);
  const Run approx = run({"bench", "--suite", "approx", "--n", "5", "--eps", "0.5", "--M", "1000"});
  CHECK(approx.code == 0);
  CHECK(approx.out.find("approx-strong") != std::string::npos);
  CHECK(run({"bench", "--suite", "nope", "--n", "4"}).code == 1);
  CHECK(run({"bench", "--n", "9..4"}).code == 1);
}
