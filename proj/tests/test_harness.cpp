#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <unistd.h>

#include "pamc/catalog.hpp"
#include "pamc/config_file.hpp"
#include "pamc/record.hpp"
#include "pamc/results.hpp"
#include "pamc/solve.hpp"
#include "test_support.hpp"

using namespace pamc;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("pamc-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

class FakeDownloader final : public Downloader {
 public:
  std::map<std::string, std::string> bodies;
  int calls = 0;

  std::string get(const std::string& url) override {
    ++calls;
    auto it = bodies.find(url);
    if (it == bodies.end()) throw FetchError("404 for " + url);
    return it->second;
  }
};

const std::string kTriangleFile = "3 3\n1 2 1\n2 3 1\n1 3 1\n";

InstanceCatalog test_catalog(const std::string& sha = "") {
  return InstanceCatalog({{"TRI", "https://example.invalid/TRI", 3, 3, sha},
                          {"SQUARE", "https://example.invalid/SQUARE", 4, 4, ""}});
}

std::string read_all(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("config file parsing") {
  std::istringstream in(
      "# tuned for small graphs\n"
      "population_size = 256\n"
      "\n"
      "target_ess_ratio=0.8\n"
      "  resampling = off  \n"
      "seed = 99\n");
  EngineConfig cfg;
  apply_config(cfg, in);
  CHECK(cfg.population_size == 256);
  CHECK(cfg.target_ess_ratio == 0.8);
  CHECK(!cfg.resampling);
  CHECK(cfg.seed == 99);
  CHECK(cfg.sweeps_per_step == EngineConfig{}.sweeps_per_step);

  SUBCASE("round trip through write_config") {
    std::stringstream io;
    write_config(io, cfg);
    EngineConfig back;
    apply_config(back, io);
    for (const auto& key : engine_config_keys()) CHECK(get_config_value(back, key) == get_config_value(cfg, key));
  }
  SUBCASE("errors carry line numbers") {
    std::istringstream unknown("seed = 1\nbogus = 3\n");
    CHECK_THROWS_WITH_AS(apply_config(cfg, unknown), doctest::Contains("line 2"), ConfigError);
    std::istringstream bad_value("population_size = many\n");
    CHECK_THROWS_WITH_AS(apply_config(cfg, bad_value), doctest::Contains("line 1"), ConfigError);
    std::istringstream no_equals("\n\nseed 4\n");
    CHECK_THROWS_WITH_AS(apply_config(cfg, no_equals), doctest::Contains("line 3"), ConfigError);
    std::istringstream negative("population_size = -4\n");
    CHECK_THROWS_AS(apply_config(cfg, negative), ConfigError);
  }
  SUBCASE("every key is settable") {
    CHECK(engine_config_keys().size() == 16);
    EngineConfig c;
    set_config_value(c, "beta_end", "7.5");
    set_config_value(c, "check_energies", "true");
    CHECK(c.beta_end == 7.5);
    CHECK(c.check_energies);
    CHECK_THROWS_AS(set_config_value(c, "nope", "1"), ConfigError);
  }
}

TEST_CASE("catalog parsing") {
  std::istringstream in(
      "# name url nodes edges sha256\n"
      "G1 https://x/G1 800 19176 -\n"
      "\n"
      "G2 https://x/G2 800 19176 abc123\n");
  const auto catalog = InstanceCatalog::parse(in);
  REQUIRE(catalog.entries().size() == 2);
  CHECK(catalog.at("G1").sha256.empty());
  CHECK(catalog.at("G2").sha256 == "abc123");
  CHECK(catalog.find("G3") == nullptr);
  CHECK_THROWS_AS(catalog.at("G3"), UnknownInstanceError);

  std::istringstream bad("G1 https://x/G1 800\n");
  CHECK_THROWS_AS(InstanceCatalog::parse(bad), FetchError);

  const auto& builtin = InstanceCatalog::builtin();
  CHECK(builtin.at("G63").expected_n == 7000);
  CHECK(builtin.at("G63").expected_m == 41459);
}

TEST_CASE("sha256_hex") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("fetch_instance caches downloads") {
  TempDir dir;
  FakeDownloader net;
  net.bodies["https://example.invalid/TRI"] = kTriangleFile;
  const auto catalog = test_catalog();

  const fs::path first = fetch_instance(catalog, "TRI", dir.path(), net);
  CHECK(net.calls == 1);
  CHECK(read_all(first) == kTriangleFile);
  CHECK(load_gset(first) == pamc::testing::triangle());
  CHECK(read_all(dir.path() / "TRI.sha256").starts_with(sha256_hex(kTriangleFile)));

  const fs::path second = fetch_instance(catalog, "TRI", dir.path(), net);
  CHECK(net.calls == 1);
  CHECK(second == first);
  CHECK(read_all(second) == kTriangleFile);
  CHECK(cached_instance(catalog, "TRI", dir.path()) == first);
}

TEST_CASE("fetch_instance failures") {
  TempDir dir;
  FakeDownloader net;
  const auto catalog = test_catalog(sha256_hex(kTriangleFile));

  SUBCASE("unknown instance") {
    CHECK_THROWS_AS(fetch_instance(catalog, "G9999", dir.path(), net), UnknownInstanceError);
    CHECK(net.calls == 0);
  }
  SUBCASE("network failure") {
    CHECK_THROWS_AS(fetch_instance(catalog, "TRI", dir.path(), net), FetchError);
    CHECK(!fs::exists(dir.path() / "TRI"));
  }
  SUBCASE("checksum mismatch is discarded") {
    net.bodies["https://example.invalid/TRI"] = "3 3\n1 2 1\n2 3 1\n1 3 2\n";
    CHECK_THROWS_WITH_AS(fetch_instance(catalog, "TRI", dir.path(), net),
                         doctest::Contains("checksum"), FetchError);
    CHECK(!fs::exists(dir.path() / "TRI"));
    CHECK(!cached_instance(catalog, "TRI", dir.path()));
  }
  SUBCASE("header mismatch is discarded") {
    net.bodies["https://example.invalid/SQUARE"] = kTriangleFile;
    CHECK_THROWS_WITH_AS(fetch_instance(catalog, "SQUARE", dir.path(), net),
                         doctest::Contains("header"), FetchError);
    CHECK(!fs::exists(dir.path() / "SQUARE"));
  }
  SUBCASE("not a G-set file") {
    net.bodies["https://example.invalid/SQUARE"] = "<html>moved</html>";
    CHECK_THROWS_AS(fetch_instance(catalog, "SQUARE", dir.path(), net), FetchError);
  }
  SUBCASE("corrupted cache entry is removed") {
    net.bodies["https://example.invalid/TRI"] = kTriangleFile;
    const auto path = fetch_instance(catalog, "TRI", dir.path(), net);
    std::ofstream(path) << "3 3\n1 2 1\n2 3 1\n1 3 5\n";
    CHECK_THROWS_AS(cached_instance(catalog, "TRI", dir.path()), FetchError);
    CHECK(!fs::exists(path));
    fetch_instance(catalog, "TRI", dir.path(), net);
    CHECK(net.calls == 2);
  }
}

TEST_CASE("import_instance") {
  TempDir dir;
  const fs::path source = dir.path() / "source.txt";
  std::ofstream(source) << kTriangleFile;
  const auto catalog = test_catalog();
  const auto cached = import_instance(catalog, "TRI", source, dir.path() / "cache");
  CHECK(read_all(cached) == kTriangleFile);
  CHECK_THROWS_AS(import_instance(catalog, "SQUARE", source, dir.path() / "cache"), FetchError);
  CHECK_THROWS_AS(import_instance(catalog, "TRI", dir.path() / "missing", dir.path() / "cache"),
                  FetchError);
}

TEST_CASE("solution records") {
  std::istringstream in("# comment\ninstance = TRI\nclaimed_cut = 2\nhex = c\nsource = hand made\n");
  const auto rec = parse_record(in);
  CHECK(rec.instance == "TRI");
  CHECK(rec.claimed_cut == 2);
  CHECK(rec.hex == "c");
  CHECK(rec.source == "hand made");

  std::stringstream io;
  write_record(io, rec);
  const auto back = parse_record(io);
  CHECK(back.hex == rec.hex);
  CHECK(back.claimed_cut == rec.claimed_cut);

  std::istringstream missing("instance = TRI\nhex = c\n");
  CHECK_THROWS_AS(parse_record(missing), std::invalid_argument);
  std::istringstream unknown("instance = TRI\ncut = 2\n");
  CHECK_THROWS_AS(parse_record(unknown), std::invalid_argument);
}

TEST_CASE("verify_record") {
  const Graph tri = pamc::testing::triangle();
  const InstanceCatalog catalog = test_catalog();

  // "c" = 1100 -> spins (+1, +1, -1): edges 2-3 and 1-3 are cut.
  SolutionRecord rec{"TRI", "c", 2, ""};
  auto report = verify_record(rec, tri, catalog);
  CHECK(report.match);
  CHECK(report.computed_cut == 2);
  CHECK(report.nodes == 3);

  rec.claimed_cut = 3;
  report = verify_record(rec, tri, catalog);
  CHECK(!report.match);
  std::ostringstream out;
  print_report(out, report);
  CHECK(out.str().find("MISMATCH") != std::string::npos);

  rec.hex = "cc";
  CHECK_THROWS_AS(verify_record(rec, tri, catalog), HexFormatError);

  SolutionRecord wrong_instance{"SQUARE", "c", 2, ""};
  CHECK_THROWS_AS(verify_record(wrong_instance, tri, catalog), InstanceMismatchError);

  SolutionRecord unknown_instance{"OTHER", "c", 2, ""};
  CHECK(verify_record(unknown_instance, tri, catalog).match);
}

TEST_CASE("the shipped G63 record rejects tampering before any graph is needed") {
  auto rec = published_g63_record();
  const Graph small = pamc::testing::triangle();
  rec.hex.pop_back();
  CHECK(rec.hex.size() == 1749);
  // Either the node count or the hex length is rejected; both are errors.
  CHECK_THROWS(verify_record(rec, small));
}

TEST_CASE("result records round trip") {
  const Graph g = pamc::testing::random_graph(20, 0.3, 7, true);
  EngineConfig cfg;
  cfg.population_size = 32;
  cfg.max_steps = 30;
  cfg.workers = 1;
  cfg.seed = 17;
  const auto run = anneal(g, cfg);
  const auto rec = make_result_record("rand20", g, cfg, run);
  CHECK(rec.best_hex == encode_hex(run.best_config));

  const auto line = to_result_line(rec);
  CHECK(line.find('\n') == std::string::npos);
  const auto back = parse_result_line(line);
  CHECK(back.instance == "rand20");
  CHECK(back.nodes == 20);
  CHECK(back.best_cut == rec.best_cut);
  CHECK(back.best_hex == rec.best_hex);
  CHECK(back.total_sweeps == rec.total_sweeps);
  CHECK(back.steps == rec.steps);
  for (const auto& key : engine_config_keys()) {
    CHECK(get_config_value(back.config, key) == get_config_value(cfg, key));
  }
  // The stored configuration re-verifies against the graph.
  CHECK(cut_value(g, decode_hex(back.best_hex, 20)) == back.best_cut);

  CHECK_THROWS_AS(parse_result_line("{not json"), std::invalid_argument);
  CHECK_THROWS_AS(parse_result_line("{}"), std::invalid_argument);
}

TEST_CASE("results file and trace output") {
  TempDir dir;
  const fs::path results = dir.path() / "results.jsonl";
  CHECK_THROWS_AS(read_results(results), std::runtime_error);
  std::ofstream(dir.path() / "empty.jsonl").flush();
  CHECK_THROWS_AS(read_results(dir.path() / "empty.jsonl"), std::runtime_error);

  const LoadedInstance tri{"TRI", pamc::testing::triangle()};
  EngineConfig cfg;
  cfg.population_size = 8;
  cfg.max_steps = 10;
  cfg.workers = 1;
  std::vector<StepRecord> seen;
  SolveOptions options{results, [&](const StepRecord& s) { seen.push_back(s); }};
  const auto first = run_solve(tri, cfg, options);
  CHECK(first.best_cut == 2);
  CHECK(seen.size() == 10);
  CHECK(format_step(seen.front()).find("beta=") != std::string::npos);

  SUBCASE("one run") {
    const auto records = read_results(results);
    REQUIRE(records.size() == 1);
    std::ostringstream out;
    write_trace(out, records);
    std::istringstream lines(out.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line.starts_with("# instance=TRI"));
    std::getline(lines, line);
    CHECK(line == "step\tbeta\tess_ratio\tbest_cut\tacceptance");
    int rows = 0;
    while (std::getline(lines, line)) {
      CHECK(std::count(line.begin(), line.end(), '\t') == 4);
      ++rows;
    }
    CHECK(rows == 10);
  }
  SUBCASE("two runs are separated by a blank line") {
    cfg.seed = 2;
    run_solve(tri, cfg, {results, {}});
    const auto records = read_results(results);
    REQUIRE(records.size() == 2);
    emit_trace_plot_data(results, dir.path() / "trace.tsv");
    const std::string text = read_all(dir.path() / "trace.tsv");
    CHECK(text.find("\n\n# instance=TRI") != std::string::npos);
  }
  SUBCASE("a malformed line is reported with its line number") {
    std::ofstream(results, std::ios::app) << "garbage\n";
    CHECK_THROWS_WITH_AS(read_results(results), doctest::Contains(":2:"), std::runtime_error);
  }
}

TEST_CASE("resolve_instance") {
  TempDir dir;
  const fs::path file = dir.path() / "tri.txt";
  std::ofstream(file) << kTriangleFile;
  FakeDownloader net;
  net.bodies["https://example.invalid/TRI"] = kTriangleFile;
  const auto catalog = test_catalog();

  const auto direct = resolve_instance(file.string(), catalog, dir.path() / "cache", net);
  CHECK(direct.graph.num_nodes() == 3);
  CHECK(net.calls == 0);

  const auto fetched = resolve_instance("TRI", catalog, dir.path() / "cache", net);
  CHECK(fetched.name == "TRI");
  CHECK(net.calls == 1);
  CHECK_THROWS_AS(resolve_instance("G9999", catalog, dir.path() / "cache", net), UnknownInstanceError);
}
