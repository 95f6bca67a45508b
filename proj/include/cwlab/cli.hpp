#ifndef CWLAB_CLI_HPP
#define CWLAB_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace cwlab::cli {

inline constexpr const char* kVersion = "0.1.0";

enum class Command { correlations, moments, limit_check, sample, phase, laplace_check, census };
enum class Format { csv, json };

std::string to_string(Command c);

// Grid syntax: a single value, a comma list, "min:max:xF" / "min:max:F"
// (multiplicative) or "min:max:+d" (additive). Additive points are
// min + i d snapped to 12 decimals so that e.g. 0.2:3.0:+0.1 hits 1.0.
// Throws ArgumentError on malformed or empty grids.
std::vector<double> parse_real_grid(const std::string& spec);
std::vector<std::int64_t> parse_int_grid(const std::string& spec);

struct RunConfig {
  Command command = Command::correlations;
  std::string beta_spec = "0.5";
  std::string n_spec = "100";
  std::vector<double> beta;
  std::vector<std::int64_t> n;
  int ell = 2;
  int k = 2;
  double alpha = 0.5;
  std::int64_t samples = 10000;
  std::int64_t burn_in = 1000;
  std::string method = "exact";  // sample: exact | glauber
  std::uint64_t seed = 0;
  Format format = Format::csv;
  std::string out;  // empty = stdout
  unsigned threads = 0;  // 0 = CWLAB_THREADS or hardware parallelism

  // Expands the grid specs and checks preconditions; ArgumentError if not.
  void finalize();
};

struct BigText {
  std::string digits;
};
using Cell = std::variant<std::monostate, double, std::int64_t, std::string, BigText>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

// Builds the table for a validated config. Throws the library's exception
// types on failure.
Table build_table(const RunConfig& config);

void write_csv(const Table& table, std::ostream& os);
void write_json(const Table& table, const RunConfig& config, std::ostream& os);

// Exit codes: 0 ok, 2 invalid configuration, 3 numeric failure.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv and runs. Usage goes to err on invalid input.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace cwlab::cli

#endif  // CWLAB_CLI_HPP
