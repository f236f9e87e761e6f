#include "freefib/cli.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = freefib::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("gen prints terms one per line") {
  const auto result =
      invoke({"gen", "--n", "4", "--start", "0,1", "--count", "16"});
  CHECK(result.code == 0);
  CHECK(lines_of(result.out) ==
        std::vector<std::string>{"0", "1", "1", "2", "3", "5", "2", "7", "9",
                                 "1", "10", "11", "21", "2", "23", "25"});
}

TEST_CASE("gen csv output carries powers and residues") {
  const auto result = invoke(
      {"gen", "--n", "4", "--start", "0,1", "--count", "8", "--format", "csv"});
  CHECK(result.code == 0);
  const auto lines = lines_of(result.out);
  REQUIRE(lines.size() == 9);
  CHECK(lines[0] == "index,term,power,residue");
  CHECK(lines[7] == "7,2,1,2");  // 3 + 5 = 8 = 4 * 2
  CHECK(lines[8] == "8,7,0,3");
}

TEST_CASE("gen --digits truncates with a marker") {
  const auto result = invoke(
      {"gen", "--n", "7", "--start", "1,1", "--count", "200", "--digits", "8"});
  CHECK(result.code == 0);
  const auto lines = lines_of(result.out);
  const std::string& last = lines.back();
  CHECK(last.find("…(") != std::string::npos);
  CHECK(last.find(" digits)") != std::string::npos);
}

TEST_CASE("cycle reports the quoted 5-free cycle") {
  const auto result =
      invoke({"cycle", "--n", "5", "--start", "0,1", "--budget", "1000"});
  CHECK(result.code == 0);
  const auto lines = lines_of(result.out);
  CHECK(lines[0] == "preperiod: 1");
  CHECK(lines[1] == "period: 6");
  CHECK(lines[2] == "content_gcd: 1");
  CHECK(lines[3] == "cycle: 1,1,2,3,1,4");
  CHECK(lines[4] == "primitive: 1,1,2,3,1,4");
}

TEST_CASE("cycle reports exhaustion") {
  const auto result =
      invoke({"cycle", "--n", "4", "--start", "0,1", "--budget", "500"});
  CHECK(result.code == 0);
  CHECK(lines_of(result.out)[0] == "exhausted: budget=500");
}

TEST_CASE("construct subcommands") {
  auto result = invoke({"construct", "rich", "--n", "3", "--length", "10",
                        "--terminal", "1,1"});
  CHECK(result.code == 0);
  auto lines = lines_of(result.out);
  CHECK(lines[0] == "direction: forward");
  CHECK(lines[1] == "signature: *,*,81,3,3,3,9,3,3,3");
  CHECK(lines[2] == "49");
  CHECK(lines.back() == "1");

  result = invoke(
      {"construct", "predecessor", "--start", "3,1", "--count", "9"});
  CHECK(result.code == 0);
  lines = lines_of(result.out);
  REQUIRE(lines.size() == 10);
  CHECK(lines[1] == "1");
  CHECK(lines[2] == "3");
  CHECK(lines[9] == "1");

  result = invoke({"construct", "prescribe", "--n", "3", "--remainders",
                   "1,1,2,2,1,1", "--powers", "0,1,0,1", "--terminal", "1,1",
                   "--adjust", "3"});
  CHECK(result.code == 0);
  lines = lines_of(result.out);
  CHECK(lines[0] == "direction: forward");
  CHECK(lines[1] == "raw: -8,7,-1,2,1,1");
  CHECK(lines[2] == "adjusted: 19,7,26,11,37,16");
  CHECK(lines[3] == "signature: *,*,1,3,1,3");
}

TEST_CASE("classify lists the non-omni-factors up to 15") {
  const auto result = invoke({"classify", "--max", "15"});
  CHECK(result.code == 0);
  std::vector<std::string> non_omni;
  for (const auto& line : lines_of(result.out)) {
    if (line.find("omni=false") == std::string::npos) continue;
    non_omni.push_back(line.substr(2, line.find(' ') - 2));
  }
  CHECK(non_omni ==
        std::vector<std::string>{"5", "8", "10", "11", "12", "13", "15"});
}

TEST_CASE("orbits summary for n=8") {
  const auto result = invoke({"orbits", "--n", "8"});
  CHECK(result.code == 0);
  const auto lines = lines_of(result.out);
  CHECK(lines[0] == "modulus: 8");
  CHECK(lines[1] == "cycles: 10");
  CHECK(lines[2] == "distinct_lengths: 4");
  CHECK(lines[3] == "lengths: 1 3 6 6 6 6 6 6 12 12");
  CHECK(lines[4] == "with_zero: 40");
  CHECK(lines[5] == "zero_free: 24");
  CHECK(lines[6] == "sum_squares: 514");
}

TEST_CASE("orbits successor table for n=8") {
  const auto result = invoke({"orbits", "--n", "8", "--successors"});
  CHECK(result.code == 0);
  const auto lines = lines_of(result.out);
  REQUIRE(lines.size() == 7);
  CHECK(lines[0] == "1: 3 4 5 6");
  CHECK(lines[1] == "2: 1 5");
  CHECK(lines[5] == "6: 3 7");
  CHECK(lines[6] == "7: 2 3 4 5");
}

TEST_CASE("oeis emits terms and b-files") {
  auto result = invoke({"oeis", "--id", "A224382", "--count", "5"});
  CHECK(result.code == 0);
  CHECK(lines_of(result.out) ==
        std::vector<std::string>{"0", "1", "1", "2", "3"});

  const auto path =
      std::filesystem::temp_directory_path() / "freefib_cli_bfile.txt";
  result = invoke({"oeis", "--id", "A214684", "--count", "3", "--bfile",
                   path.string()});
  CHECK(result.code == 0);
  CHECK(result.out.empty());
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  CHECK(buffer.str() == "0 0\n1 1\n2 1\n");
  std::filesystem::remove(path);

  result = invoke({"oeis", "--list"});
  CHECK(result.code == 0);
  CHECK(lines_of(result.out).size() == 26);
}

TEST_CASE("experiment growth is reproducible and csv round-trips") {
  const std::vector<std::string> args = {
      "experiment", "growth", "--n",     "4,5",  "--trials", "150",
      "--length",   "120",    "--seed",  "42",   "--format", "csv"};
  const auto first = invoke(args);
  const auto second = invoke(args);
  CHECK(first.code == 0);
  CHECK(first.out == second.out);
  const auto lines = lines_of(first.out);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "n,g,std_error,trials,length,tail_skip,seed");
  // Numeric fields parse back to doubles.
  const auto fields = [](const std::string& row) {
    std::vector<std::string> out;
    std::stringstream stream(row);
    std::string field;
    while (std::getline(stream, field, ',')) out.push_back(field);
    return out;
  };
  for (int row = 1; row <= 2; ++row) {
    const auto values = fields(lines[row]);
    REQUIRE(values.size() == 7);
    const double g = std::stod(values[1]);
    CHECK(g > 1.0);
    CHECK(g < 2.0);
    CHECK(values[6] == "42");
  }
}

TEST_CASE("experiment without a seed echoes the chosen seed") {
  const auto result =
      invoke({"experiment", "growth", "--n", "4", "--trials", "60",
              "--length", "80"});
  CHECK(result.code == 0);
  CHECK(lines_of(result.out)[0].rfind("seed: ", 0) == 0);
}

TEST_CASE("experiment models prints the constants") {
  const auto result = invoke(
      {"experiment", "models", "--seed", "7", "--flips", "20000"});
  CHECK(result.code == 0);
  const auto lines = lines_of(result.out);
  CHECK(lines[0].rfind("model3_closed: 0.966", 0) == 0);
  bool saw_overall = false;
  for (const auto& line : lines)
    if (line.rfind("model4_overall: 1.035", 0) == 0) saw_overall = true;
  CHECK(saw_overall);
}

TEST_CASE("domain errors exit 1 with a parsable prefix") {
  auto result = invoke({"gen", "--n", "4", "--start", "0,0", "--count", "10"});
  CHECK(result.code == 1);
  CHECK(result.err.rfind("error: degenerate-input:", 0) == 0);

  result = invoke({"gen", "--n", "1", "--start", "0,1", "--count", "10"});
  CHECK(result.code == 1);
  CHECK(result.err.rfind("error: wrong-domain:", 0) == 0);

  result = invoke({"oeis", "--id", "A999999", "--count", "4"});
  CHECK(result.code == 1);
  CHECK(result.err.rfind("error: unsupported-sequence:", 0) == 0);

  result = invoke({"orbits", "--n", "200", "--cap", "100"});
  CHECK(result.code == 1);
  CHECK(result.err.rfind("error: resource-bound:", 0) == 0);

  result = invoke({"construct", "prescribe", "--n", "3", "--remainders",
                   "1,1,1,1", "--powers", "0,0", "--terminal", "1,1"});
  CHECK(result.code == 1);
  CHECK(result.err.rfind("error: legality:", 0) == 0);
}

TEST_CASE("usage errors exit 2") {
  auto result = invoke({"gen", "--n", "4"});
  CHECK(result.code == 2);
  result = invoke({"nonsense"});
  CHECK(result.code == 2);
  result = invoke({"gen", "--n", "4", "--start", "zebra", "--count", "5"});
  CHECK(result.code == 2);
  result = invoke({});
  CHECK(result.code == 2);
}

TEST_CASE("help exits 0") {
  const auto result = invoke({"--help"});
  CHECK(result.code == 0);
  CHECK(result.out.find("gen") != std::string::npos);
}

TEST_CASE("manifest file supplies defaults, flags override") {
  const auto path =
      std::filesystem::temp_directory_path() / "freefib_manifest.ini";
  {
    // Comma-bearing values need quotes in the config format.
    std::ofstream manifest(path);
    manifest << "[gen]\nn=5\nstart=\"0,1\"\ncount=7\n";
  }
  auto result = invoke({"--manifest", path.string(), "gen"});
  CHECK(result.code == 0);
  CHECK(lines_of(result.out) ==
        std::vector<std::string>{"0", "1", "1", "2", "3", "1", "4"});

  result = invoke({"--manifest", path.string(), "gen", "--count", "4"});
  CHECK(result.code == 0);
  CHECK(lines_of(result.out).size() == 4);
  std::filesystem::remove(path);
}
