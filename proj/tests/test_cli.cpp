#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "sr/stable_range.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

std::string binary() {
  const char* bin = std::getenv("STABLE_RANGE_BIN");
  REQUIRE(bin != nullptr);
  return bin;
}

RunResult run(const std::string& args) {
  std::string cmd = binary() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag)
      : path(fs::temp_directory_path() / ("sr_cli_" + tag)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str() const { return path.string(); }
};

}  // namespace

TEST_CASE("table: json row matches the library") {
  TempDir cache("table_json");
  RunResult r = run("table --group sp --n 3 --weight 0,0,0 --format json --cache-dir " +
                    cache.str());
  REQUIRE(r.exit_code == 0);
  json rows = json::parse(r.out);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0]["kind"] == "sp");
  CHECK(rows[0]["n"] == 3);
  CHECK(rows[0]["C_literal"] == 2);
  CHECK(rows[0]["C_prefix"] == 2);
  CHECK(rows[0]["rank_bound"] == 2);
  CHECK(rows[0]["guaranteed_degree"] == 2);

  // round-trip: recompute from the parsed row and compare
  using namespace sr;
  RootDatum d = make_root_datum(Kind::TypeC, rows[0]["n"].get<int>());
  HighestWeight hw{rows[0]["lambda"].get<std::vector<long long>>()};
  CHECK(c_big(d, hw, CMode::Literal) == rows[0]["C_literal"].get<int>());
  CHECK(c_big(d, hw, CMode::Prefix) == rows[0]["C_prefix"].get<int>());
}

TEST_CASE("table: rank range and prefix mode") {
  TempDir cache("table_range");
  RunResult r = run("table --group so --n 4..6 --weight trivial --mode prefix "
                    "--format json --cache-dir " + cache.str());
  REQUIRE(r.exit_code == 0);
  json rows = json::parse(r.out);
  REQUIRE(rows.size() == 3);
  for (int i = 0; i < 3; ++i) {
    int n = 4 + i;
    CHECK(rows[i]["n"] == n);
    CHECK(rows[i]["C_prefix"] == n - 2);
    CHECK(rows[i]["C_literal"].is_null());
  }
}

TEST_CASE("table: so n=3 counterexample is annotated") {
  TempDir cache("table_d3");
  RunResult r = run("table --group so --n 3 --weight 0,2,0 --format json --cache-dir " +
                    cache.str());
  REQUIRE(r.exit_code == 0);
  json rows = json::parse(r.out);
  CHECK(rows[0]["C_prefix"] == 0);
  CHECK(rows[0]["annotation"].get<std::string>().find("outside") != std::string::npos);
  CHECK_FALSE(rows[0]["witness"].is_null());
}

TEST_CASE("table: csv and tex emit one row per cell") {
  TempDir cache("table_fmt");
  RunResult csv = run("table --group sp --n 3..4 --weight phi1 --mode prefix "
                      "--format csv --cache-dir " + cache.str());
  REQUIRE(csv.exit_code == 0);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 3);  // header + 2 rows

  RunResult tex = run("table --group so --n 3 --weight 1*phi2 --mode prefix "
                      "--format tex --cache-dir " + cache.str());
  REQUIRE(tex.exit_code == 0);
  CHECK(tex.out.find("\\begin{tabular}") != std::string::npos);
  CHECK(tex.out.find("\\tfrac{1}{2}") != std::string::npos);
}

TEST_CASE("report: witness and c_small") {
  TempDir cache("report");
  RunResult r = run("report --group so --n 5 --weight phi2 --cache-dir " + cache.str());
  REQUIRE(r.exit_code == 0);
  json rep = json::parse(r.out);
  CHECK(rep["C_literal"] == 3);
  CHECK(rep["witness"]["q"] == 4);

  RunResult rc = run("report --group so --n 4 --weight trivial --with-c-small "
                     "--cache-dir " + cache.str());
  REQUIRE(rc.exit_code == 0);
  json repc = json::parse(rc.out);
  REQUIRE(repc["c_small"].is_number());
  CHECK(repc["c_small"].get<int>() <= repc["C_literal"].get<int>());

  RunResult sp = run("report --group sp --n 4 --weight phi4 --cache-dir " + cache.str());
  json repsp = json::parse(sp.out);
  CHECK(repsp["C_literal"] == 3);
}

TEST_CASE("weyl-count") {
  TempDir cache("weyl");
  RunResult d4 = run("weyl-count --group so --n 4 --palindrome-check --cache-dir " +
                     cache.str());
  REQUIRE(d4.exit_code == 0);
  CHECK(d4.out.find("|W^1| = 4") != std::string::npos);
  CHECK(d4.out.find("total = 192") != std::string::npos);
  CHECK(d4.out.find("palindrome: PASS") != std::string::npos);

  RunResult c3 = run("weyl-count --group sp --n 3 --cache-dir " + cache.str());
  CHECK(c3.out.find("total = 48") != std::string::npos);

  RunResult shallow = run("weyl-count --group sp --n 7 --qmax 2 --cache-dir " +
                          cache.str());
  REQUIRE(shallow.exit_code == 0);
  CHECK(shallow.out.find("(partial)") != std::string::npos);
}

TEST_CASE("exit codes: usage and budget") {
  TempDir cache("errors");
  CHECK(run("table --group so").exit_code == 2);                    // missing --n
  CHECK(run("table --group xx --n 4").exit_code == 2);              // bad group
  CHECK(run("table --group so --n 4 --weight 1,2").exit_code == 2); // wrong length
  CHECK(run("table --group so --n 4 --weight phi9").exit_code == 2);
  CHECK(run("table --group so --n 6..4").exit_code == 2);           // empty range
  CHECK(run("weyl-count --group sp --n 5 --budget 100 --cache-dir " + cache.str())
            .exit_code == 3);
}

TEST_CASE("cache: warm runs match cold runs byte for byte") {
  TempDir warm("warm"), cold("cold");
  std::string args = "table --group so --n 3..4 --weight 'all<=1' --format json";
  RunResult first = run(args + " --cache-dir " + warm.str());
  REQUIRE(first.exit_code == 0);
  CHECK(fs::exists(warm.path / "D3.strat"));
  RunResult second = run(args + " --cache-dir " + warm.str());
  RunResult fresh = run(args + " --cache-dir " + cold.str());
  CHECK(first.out == second.out);
  CHECK(first.out == fresh.out);
}

TEST_CASE("cache: corrupt file is recomputed and overwritten") {
  TempDir cache("corrupt");
  std::string args = "weyl-count --group sp --n 3 --cache-dir " + cache.str();
  RunResult first = run(args);
  REQUIRE(first.exit_code == 0);
  fs::path file = cache.path / "C3.strat";
  REQUIRE(fs::exists(file));
  {
    std::FILE* f = std::fopen(file.string().c_str(), "r+b");
    REQUIRE(f != nullptr);
    std::fseek(f, 20, SEEK_SET);
    std::fputc(0x7f, f);
    std::fclose(f);
  }
  RunResult second = run(args);
  CHECK(second.exit_code == 0);
  CHECK(second.out == first.out);
}

TEST_CASE("STABLE_RANGE_CACHE is honored when no flag is given") {
  TempDir cache("envvar");
  std::string cmd = "STABLE_RANGE_CACHE=" + cache.str() + " " + binary() +
                    " weyl-count --group sp --n 2 >/dev/null 2>&1";
  REQUIRE(std::system(cmd.c_str()) == 0);
  CHECK(fs::exists(cache.path / "C2.strat"));
}

TEST_CASE("verify-paper: deterministic, and the fault hook trips it") {
  TempDir cache("verify");
  std::string base = "verify-paper --max-n 4 --cache-dir " + cache.str();
  RunResult cold = run(base);
  REQUIRE(cold.exit_code == 0);
  CHECK(cold.out.find("[FAIL]") == std::string::npos);
  CHECK(cold.out.find("ALL CLAIMS PASS") != std::string::npos);

  RunResult warm = run(base);
  RunResult parallel = run(base + " --threads 4");
  CHECK(cold.out == warm.out);
  CHECK(cold.out == parallel.out);

  RunResult faulty = run(base + " --inject-fault-tau-n");
  CHECK(faulty.exit_code != 0);
  CHECK(faulty.out.find("[FAIL]") != std::string::npos);
}
