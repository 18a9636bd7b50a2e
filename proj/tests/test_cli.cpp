// Drives the command-line binary end to end: exit codes, report shapes,
// determinism across worker counts, and cache resume.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string g_binary;
fs::path g_dir;

int run(const std::string& args, const std::string& log_name) {
  std::string cmd = g_binary + " " + args + " > " + (g_dir / (log_name + ".out")).string() +
                    " 2> " + (g_dir / (log_name + ".err")).string();
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream out;
  out << in.rdbuf();
  return out.str();
}

// The result content alone: rows plus the verdict summary. Run metadata
// (worker count, cache hit counts, timing) is excluded so runs that differ
// only in execution strategy can be compared.
std::string result_content(const fs::path& p) {
  json j = json::parse(slurp(p));
  for (auto& row : j["rows"]) row["elapsed_ms"] = 0;
  json out{{"rows", j["rows"]},
           {"cells", j["summary"]["cells"]},
           {"failures", j["summary"]["failures"]},
           {"interval_decisions", j["summary"]["interval_decisions"]},
           {"exact_decisions", j["summary"]["exact_decisions"]},
           {"all_certified", j["summary"]["all_certified"]},
           {"main_bound", j["summary"]["main_bound"]}};
  return out.dump(2);
}

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream out(p);
  out << content;
}

}  // namespace

TEST_CASE("verify: k-max 4 verifies three cells") {
  fs::path prefix = g_dir / "verify4";
  REQUIRE(run("verify --k-max 4 --out " + prefix.string(), "verify4") == 0);
  json j = json::parse(slurp(prefix.string() + ".json"));
  CHECK(j["rows"].size() == 3);
  CHECK(j["summary"]["all_certified"] == true);
  for (auto& row : j["rows"]) CHECK(row["verified"] == true);
  // CSV header plus one line per cell.
  std::string csv = slurp(prefix.string() + ".csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}

TEST_CASE("verify: identical runs give byte-identical reports modulo timing") {
  fs::path a = g_dir / "rep_a";
  fs::path b = g_dir / "rep_b";
  REQUIRE(run("verify --k-max 30 --jobs 2 --out " + a.string(), "repa") == 0);
  REQUIRE(run("verify --k-max 30 --jobs 2 --out " + b.string(), "repb") == 0);
  json ja = json::parse(slurp(a.string() + ".json"));
  json jb = json::parse(slurp(b.string() + ".json"));
  ja["config"].erase("cache");
  jb["config"].erase("cache");
  // Everything except the out prefix and timing must match byte for byte.
  for (auto& row : ja["rows"]) row["elapsed_ms"] = 0;
  for (auto& row : jb["rows"]) row["elapsed_ms"] = 0;
  ja["summary"]["elapsed_s"] = 0;
  jb["summary"]["elapsed_s"] = 0;
  CHECK(ja.dump(2) == jb.dump(2));
}

TEST_CASE("verify: results are independent of the worker count") {
  fs::path a = g_dir / "scan_j1";
  fs::path b = g_dir / "scan_j3";
  REQUIRE(run("verify --k-max 36 --jobs 1 --out " + a.string(), "scanj1") == 0);
  REQUIRE(run("verify --k-max 36 --jobs 3 --out " + b.string(), "scanj3") == 0);
  CHECK(result_content(a.string() + ".json") == result_content(b.string() + ".json"));
}

TEST_CASE("verify: cache resume reproduces the cold report") {
  fs::path cache = g_dir / "resume.jsonl";
  fs::path cold = g_dir / "cold";
  fs::path warm = g_dir / "warm";
  fs::remove(cache);
  REQUIRE(run("verify --k-max 24 --cache " + cache.string() + " --out " + cold.string(),
              "cold") == 0);
  REQUIRE(run("verify --k-max 24 --cache " + cache.string() + " --out " + warm.string(),
              "warm") == 0);
  CHECK(result_content(cold.string() + ".json") == result_content(warm.string() + ".json"));
  json j = json::parse(slurp(warm.string() + ".json"));
  CHECK(j["summary"]["cache_hits"].get<size_t>() == j["rows"].size());
}

TEST_CASE("subrank subcommand on the paper's examples") {
  fs::path diag = g_dir / "diag.txt";
  write_file(diag, "3 3 3 3\n1 1 1\n2 2 2\n3 3 3\n");
  REQUIRE(run("subrank --edges " + diag.string(), "q3") == 0);
  std::string out = slurp(g_dir / "q3.out");
  CHECK(out.find("Q = 3") != std::string::npos);

  fs::path spiked = g_dir / "spiked.txt";
  write_file(spiked, "3 3 3 3\n1 1 1\n2 2 2\n3 3 3\n1 2 3\n");
  REQUIRE(run("subrank --edges " + spiked.string(), "q2") == 0);
  CHECK(slurp(g_dir / "q2.out").find("Q = 2") != std::string::npos);

  fs::path m11 = g_dir / "m11.txt";
  write_file(m11, "2 2 2\n1 2\n2 1\n");
  REQUIRE(run("subrank --edges " + m11.string() + " --power 2", "q4") == 0);
  CHECK(slurp(g_dir / "q4.out").find("Q = 4") != std::string::npos);

  // Budget exhaustion is flagged and exits inconclusive.
  CHECK(run("subrank --edges " + spiked.string() + " --budget 1", "qb") == 2);
  CHECK(slurp(g_dir / "qb.out").find("lower bound") != std::string::npos);

  // Parse failure is an error.
  fs::path broken = g_dir / "broken.txt";
  write_file(broken, "3 3 3 3\n1 1\n");
  CHECK(run("subrank --edges " + broken.string(), "qerr") == 3);
}

TEST_CASE("cw3 subcommand") {
  fs::path edges = g_dir / "phi21.txt";
  write_file(edges, "3 2 2 2\n1 1 2\n1 2 1\n2 1 1\n");
  fs::path alpha = g_dir / "phi21_alpha.txt";
  write_file(alpha, "1: 1->1 2->2\n2: 1->1 2->2\n3: 1->-3 2->-2\n");
  REQUIRE(run("cw3 --edges " + edges.string() + " --alpha " + alpha.string(), "cw3") == 0);
  std::string out = slurp(g_dir / "cw3.out");
  CHECK(out.find("0.918") != std::string::npos);
  CHECK(out.find("conjectured value") != std::string::npos);

  // Order mismatch: a 2-graph is rejected by the 3-graph front end.
  fs::path pad = g_dir / "m11b.txt";
  write_file(pad, "2 2 2\n1 2\n2 1\n");
  CHECK(run("cw3 --edges " + pad.string() + " --alpha " + alpha.string(), "cw3bad") == 3);
}

TEST_CASE("suite subcommand emits CSV and exit codes") {
  fs::path prefix = g_dir / "kraw";
  REQUIRE(run("suites --suite kraw --n-max 31 --out " + prefix.string(), "kraw") == 0);
  std::string csv = slurp(prefix.string() + ".csv");
  CHECK(csv.find("suite,instance,verdict") != std::string::npos);
  CHECK(csv.find("fail") == std::string::npos);

  REQUIRE(run("suites --suite props --k-max 60 --out " + (g_dir / "props").string(), "props") ==
          0);
  REQUIRE(run("suites --suite fourier --n-max 9 --samples 5 --seed 7 --out " +
                  (g_dir / "fourier").string(),
              "fourier") == 0);
  // Seeds land in every row.
  std::string fcsv = slurp((g_dir / "fourier").string() + ".csv");
  CHECK(fcsv.find(",7,") != std::string::npos);
  CHECK(run("suites --suite nonsense --out " + (g_dir / "x").string(), "bad-suite") == 3);
}

TEST_CASE("suite reruns with one seed are byte-identical") {
  fs::path a = g_dir / "f_a";
  fs::path b = g_dir / "f_b";
  REQUIRE(run("suites --suite fourier --n-max 7 --samples 8 --seed 42 --out " + a.string(),
              "fa") == 0);
  REQUIRE(run("suites --suite fourier --n-max 7 --samples 8 --seed 42 --out " + b.string(),
              "fb") == 0);
  CHECK(slurp(a.string() + ".csv") == slurp(b.string() + ".csv"));
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <subrank-binary>\n");
    return 1;
  }
  g_binary = argv[1];
  g_dir = fs::temp_directory_path() / "subrank_cli_tests";
  fs::create_directories(g_dir);
  doctest::Context ctx;
  return ctx.run();
}
