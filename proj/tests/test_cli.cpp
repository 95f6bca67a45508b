#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cwlab/cli.hpp"
#include "cwlab/errors.hpp"

using namespace cwlab;
using namespace cwlab::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "cwlab");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  FAIL("missing column " << name);
  return 0;
}

}  // namespace

TEST_CASE("real grids") {
  CHECK(parse_real_grid("0.5") == std::vector<double>{0.5});
  CHECK(parse_real_grid("0.25,0.5,1") == std::vector<double>{0.25, 0.5, 1.0});
  CHECK(parse_real_grid("1:8:x2") == std::vector<double>{1, 2, 4, 8});
  CHECK(parse_real_grid("1:8:2") == std::vector<double>{1, 2, 4, 8});
  const auto additive = parse_real_grid("0.2:3.0:+0.1");
  CHECK(additive.size() == 29);
  CHECK(additive[8] == 1.0);
  CHECK(additive.back() == 3.0);
  for (const char* bad : {"", "a", "1:2", "2:1:+0.1", "1:4:x1", "1:4:+0", "0.1,,2"}) {
    CHECK_THROWS_AS(parse_real_grid(bad), ArgumentError);
  }
}

TEST_CASE("integer grids") {
  CHECK(parse_int_grid("256:16384:2") == std::vector<std::int64_t>{256, 512, 1024, 2048, 4096, 8192, 16384});
  CHECK(parse_int_grid("10,50,200") == std::vector<std::int64_t>{10, 50, 200});
  CHECK(parse_int_grid("10:20:+5") == std::vector<std::int64_t>{10, 15, 20});
  CHECK(parse_int_grid("1:3:1.5") == std::vector<std::int64_t>{1, 2});
  CHECK_THROWS_AS(parse_int_grid("1.5"), ArgumentError);
}

TEST_CASE("limit-check at beta = 0.5 approaches the normal variance") {
  const auto r = invoke({"limit-check", "--beta", "0.5", "--k", "2", "--alpha", "0.5", "--n", "256:16384:2"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 8);
  CHECK(rows[0] == std::vector<std::string>{"n", "beta", "k", "alpha", "exact_moment", "limit_moment", "abs_gap"});
  const double last = std::stod(rows.back()[column(rows[0], "exact_moment")]);
  CHECK(last == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("phase diagram") {
  const auto r = invoke({"phase", "--beta", "0.2:3.0:+0.1"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 30);
  const auto b = column(rows[0], "beta"), m = column(rows[0], "m"), ph = column(rows[0], "phase");
  double previous = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double beta = std::stod(rows[i][b]);
    const double mag = std::stod(rows[i][m]);
    if (beta <= 1.0) {
      CHECK(mag == 0.0);
      CHECK(rows[i][ph] == "subcritical");
    } else {
      CHECK(mag > previous);
      previous = mag;
    }
  }
}

TEST_CASE("odd correlations are zero") {
  const auto r = invoke({"correlations", "--beta", "1", "--ell", "3", "--n", "100"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(std::stod(rows[1][column(rows[0], "exact_correlation")]) == 0.0);
}

TEST_CASE("exit codes") {
  CHECK(invoke({"frobnicate"}).code == 2);
  const auto none = invoke({});
  CHECK(none.code == 2);
  CHECK_FALSE(none.err.empty());
  CHECK(invoke({"correlations", "--beta", "-1"}).code == 2);
  CHECK(invoke({"correlations", "--n", "5", "--ell", "6"}).code == 2);
  CHECK(invoke({"limit-check", "--beta", "0.5", "--alpha", "0.75"}).code == 2);
  CHECK(invoke({"census", "--k", "8", "--n", "10"}).code == 2);
  CHECK(invoke({"sample", "--method", "metropolis"}).code == 2);
  CHECK(invoke({"phase", "--beta", "1", "--out", "/nonexistent/dir/x.csv"}).code == 2);
}

TEST_CASE("runs are byte-identical across thread counts") {
  const std::vector<std::string> base{"sample", "--beta", "0.5,1,2", "--n", "20,40", "--samples", "2000", "--seed",
                                      "99"};
  auto with_threads = [&](const char* t) {
    auto args = base;
    args.push_back("--threads");
    args.push_back(t);
    return invoke(args);
  };
  const auto one = with_threads("1");
  const auto four = with_threads("4");
  REQUIRE(one.code == 0);
  CHECK(one.out == four.out);
  CHECK(parse_csv(one.out).size() == 7);
}

TEST_CASE("json output mirrors the csv fields") {
  const auto r = invoke({"census", "--k", "4", "--n", "3", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["metadata"]["command"] == "census");
  CHECK(doc["metadata"]["version"] == kVersion);
  CHECK(doc["metadata"]["config"].contains("k"));
  REQUIRE(doc["records"].size() == 5);
  const auto& first = doc["records"][0];
  for (const char* key : {"k", "n", "r", "w", "w0", "w_plus", "w0_closed_form", "w_bound", "w_plus_bound"}) {
    CHECK(first.contains(key));
  }
  CHECK(first["w0"] == first["w0_closed_form"]);
}

TEST_CASE("output file") {
  const std::string path = "cwlab_test_out.csv";
  const auto r = invoke({"phase", "--beta", "2", "--out", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "beta,m,phase");
  in.close();
  std::remove(path.c_str());
}

TEST_CASE("every command produces a table") {
  for (std::vector<std::string> args : {std::vector<std::string>{"moments", "--beta", "0.5", "--n", "50", "--k", "4"},
                                        {"laplace-check", "--beta", "2", "--n", "100,1000", "--ell", "2"},
                                        {"sample", "--method", "glauber", "--beta", "0.5", "--n", "30",
                                         "--samples", "500", "--burn-in", "50"}}) {
    const auto r = invoke(args);
    CHECK_MESSAGE(r.code == 0, args[0] << ": " << r.err);
    CHECK(parse_csv(r.out).size() >= 2);
  }
}
