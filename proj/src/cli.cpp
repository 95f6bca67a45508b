#include "cwlab/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "cwlab/asymptotics.hpp"
#include "cwlab/combinatorics.hpp"
#include "cwlab/core.hpp"
#include "cwlab/errors.hpp"
#include "cwlab/exact.hpp"
#include "cwlab/sampler.hpp"

namespace cwlab::cli {

namespace {

constexpr std::size_t kMaxGridPoints = 1'000'000;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& raw) {
  const std::string s = trim(raw);
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (s.empty() || ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw ArgumentError("not a number: '" + raw + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

double snap(double x) { return std::round(x * 1e12) / 1e12; }

struct GridPoint {
  double value;
  bool from_range;
};

std::vector<GridPoint> expand_grid(const std::string& spec_raw) {
  const std::string spec = trim(spec_raw);
  if (spec.empty()) throw ArgumentError("empty grid specification");
  std::vector<GridPoint> out;
  if (spec.find(':') != std::string::npos) {
    const auto parts = split(spec, ':');
    if (parts.size() != 3) throw ArgumentError("range grid must be min:max:step, got '" + spec + "'");
    const double lo = parse_number(parts[0]);
    const double hi = parse_number(parts[1]);
    const std::string step = trim(parts[2]);
    if (hi < lo) throw ArgumentError("grid max is below min in '" + spec + "'");
    if (!step.empty() && step.front() == '+') {
      const double d = parse_number(step.substr(1));
      if (!(d > 0.0)) throw ArgumentError("additive grid step must be positive");
      const double count = std::floor((hi - lo) / d + 1e-9) + 1.0;
      if (count > static_cast<double>(kMaxGridPoints)) throw ArgumentError("grid too large");
      for (std::size_t i = 0; i < static_cast<std::size_t>(count); ++i) {
        out.push_back({snap(lo + static_cast<double>(i) * d), true});
      }
    } else {
      const double f = parse_number(!step.empty() && step.front() == 'x' ? step.substr(1) : step);
      if (!(f > 1.0)) throw ArgumentError("multiplicative grid factor must exceed 1");
      if (!(lo > 0.0)) throw ArgumentError("multiplicative grid needs a positive minimum");
      for (double v = lo; v <= hi * (1.0 + 1e-12); v *= f) {
        if (out.size() >= kMaxGridPoints) throw ArgumentError("grid too large");
        out.push_back({v, true});
      }
    }
  } else {
    for (const auto& p : split(spec, ',')) out.push_back({parse_number(p), false});
  }
  if (out.empty()) throw ArgumentError("grid '" + spec + "' is empty");
  return out;
}

// ---- worker pool -------------------------------------------------------

template <typename R>
std::vector<R> parallel_map(std::size_t count, unsigned threads, const std::function<R(std::size_t)>& fn) {
  std::vector<std::optional<R>> results(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        results[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t nthreads = std::max<std::size_t>(1, std::min<std::size_t>(threads, count));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  // First failure by grid index, so errors are reported deterministically.
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<R> out;
  out.reserve(count);
  for (auto& r : results) out.push_back(std::move(*r));
  return out;
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("CWLAB_THREADS")) {
    try {
      const double v = parse_number(env);
      if (v >= 1.0) return static_cast<unsigned>(v);
    } catch (const ArgumentError&) {
      // fall through to hardware parallelism
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// ---- per-command rows ----------------------------------------------------

using Row = std::vector<Cell>;
using Rows = std::vector<Row>;

std::optional<LimitLaw> infer_limit_law(double beta, double alpha) {
  if (alpha == 1.0) {
    if (beta <= 1.0) return LimitLaw::dirac_zero();
    return LimitLaw::two_point_mix(spontaneous_magnetization(beta));
  }
  if (alpha == 0.5 && beta < 1.0) return LimitLaw::centered_normal(1.0 / (1.0 - beta));
  if (alpha == 0.75 && beta == 1.0) return LimitLaw::quartic_tilt();
  return std::nullopt;
}

std::optional<AssemblyMode> infer_mode(double beta, double alpha) {
  if (alpha == 1.0) return AssemblyMode::lln;
  if (alpha == 0.5 && beta < 1.0) return AssemblyMode::clt;
  if (alpha == 0.75 && beta == 1.0) return AssemblyMode::nclt;
  return std::nullopt;
}

struct BetaN {
  double beta;
  std::int64_t n;
};

std::vector<BetaN> product_grid(const RunConfig& c) {
  std::vector<BetaN> pts;
  for (double b : c.beta) {
    for (std::int64_t n : c.n) pts.push_back({b, n});
  }
  return pts;
}

Rows correlation_rows(const RunConfig& c, BetaN p) {
  const ModelParams params(p.beta, p.n);
  Cell hs;
  if (p.beta > 0.0) hs = hs_correlation(params, c.ell);
  const double asym = c.ell % 2 == 0 ? corr_asymptotic(p.beta, c.ell, p.n) : 0.0;
  return {{p.n, p.beta, std::int64_t{c.ell}, exact_correlation(params, c.ell), hs, asym}};
}

Rows moment_rows(const RunConfig& c, BetaN p) {
  const ModelParams params(p.beta, p.n);
  Cell assembled, bound;
  if (const auto mode = infer_mode(p.beta, c.alpha)) {
    const AssembledMoment a = assemble_moment(p.beta, p.n, c.k, c.alpha, *mode);
    assembled = a.value;
    bound = a.w_plus_bound;
  }
  return {{p.n, p.beta, std::int64_t{c.k}, c.alpha, exact_scaled_moment(params, c.k, c.alpha), assembled,
           bound}};
}

Rows limit_check_rows(const RunConfig& c, BetaN p) {
  const auto law = infer_limit_law(p.beta, c.alpha);
  if (!law) throw ArgumentError("no limit law for this (beta, alpha)");
  const double exact = exact_scaled_moment(ModelParams(p.beta, p.n), c.k, c.alpha);
  const double limit = law->moment(c.k);
  return {{p.n, p.beta, std::int64_t{c.k}, c.alpha, exact, limit, std::fabs(exact - limit)}};
}

Rows sample_rows(const RunConfig& c, BetaN p) {
  const ModelParams params(p.beta, p.n);
  MomentEstimate est;
  if (c.method == "glauber") {
    const SampleBatch batch = glauber_chain(params, c.burn_in + c.samples, c.seed, c.burn_in);
    est = c.samples >= 100 ? empirical_moment_batch_means(batch, c.k, c.alpha, 50)
                           : empirical_moment(batch, c.k, c.alpha);
  } else {
    est = empirical_moment(sample_exact(params, c.samples, c.seed), c.k, c.alpha);
  }
  return {{p.n, p.beta, std::int64_t{c.k}, c.alpha, c.method, c.samples, static_cast<std::int64_t>(c.seed),
           est.estimate, est.std_error, exact_scaled_moment(params, c.k, c.alpha)}};
}

Rows phase_rows(double beta) {
  if (beta <= 1.0) return {{beta, 0.0, std::string("subcritical")}};
  return {{beta, spontaneous_magnetization(beta), std::string("supercritical")}};
}

Rows laplace_rows(const RunConfig& c, BetaN p) {
  const ModelParams params(p.beta, p.n);
  const double hs = hs_correlation(params, c.ell);
  const double asym = corr_asymptotic(p.beta, c.ell, p.n);
  return {{p.n, p.beta, std::int64_t{c.ell}, hs, asym, asym / hs, std::fabs(asym / hs - 1.0)}};
}

Rows census_rows(const RunConfig& c, std::int64_t n) {
  const MultiindexCensus census = census_brute(c.k, n);
  Rows rows;
  for (int r = 0; r <= c.k; ++r) {
    const auto i = static_cast<std::size_t>(r);
    rows.push_back({std::int64_t{c.k}, n, std::int64_t{r}, BigText{census.w[i].str()},
                    BigText{census.w0[i].str()}, BigText{census.w_plus[i].str()},
                    BigText{w0_closed_form(c.k, n, r).str()}, w_upper_bound(c.k, n, r),
                    w_plus_upper_bound(c.k, n, r)});
  }
  return rows;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

struct CellText {
  std::string operator()(std::monostate) const { return {}; }
  std::string operator()(double v) const { return format_double(v); }
  std::string operator()(std::int64_t v) const { return std::to_string(v); }
  std::string operator()(const std::string& s) const { return csv_field(s); }
  std::string operator()(const BigText& b) const { return b.digits; }
};

struct CellJson {
  nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
  nlohmann::ordered_json operator()(double v) const {
    if (!std::isfinite(v)) return nullptr;
    return v;
  }
  nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
  nlohmann::ordered_json operator()(const std::string& s) const { return s; }
  nlohmann::ordered_json operator()(const BigText& b) const { return b.digits; }
};

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::correlations:
      return "correlations";
    case Command::moments:
      return "moments";
    case Command::limit_check:
      return "limit-check";
    case Command::sample:
      return "sample";
    case Command::phase:
      return "phase";
    case Command::laplace_check:
      return "laplace-check";
    case Command::census:
      return "census";
  }
  return "?";
}

std::vector<double> parse_real_grid(const std::string& spec) {
  std::vector<double> out;
  for (const auto& p : expand_grid(spec)) out.push_back(p.value);
  return out;
}

std::vector<std::int64_t> parse_int_grid(const std::string& spec) {
  std::vector<std::int64_t> out;
  for (const auto& p : expand_grid(spec)) {
    const double r = std::round(p.value);
    if (!p.from_range && std::fabs(r - p.value) > 1e-9) {
      throw ArgumentError("expected an integer, got '" + format_double(p.value) + "'");
    }
    if (std::fabs(r) > 9.0e15) throw ArgumentError("integer grid value out of range");
    const auto v = static_cast<std::int64_t>(r);
    if (out.empty() || out.back() != v) out.push_back(v);
  }
  return out;
}

void RunConfig::finalize() {
  if (command != Command::census) {
    beta = parse_real_grid(beta_spec);
    for (double b : beta) {
      if (!(b >= 0.0)) throw ArgumentError("beta must be non-negative");
    }
  }
  if (command != Command::phase) {
    n = parse_int_grid(n_spec);
    for (std::int64_t v : n) {
      if (v < 1) throw ArgumentError("n must be at least 1");
    }
  }
  if (ell < 0) throw ArgumentError("ell must be non-negative");
  if (k < 0) throw ArgumentError("k must be non-negative");
  if (!std::isfinite(alpha)) throw ArgumentError("alpha must be finite");

  switch (command) {
    case Command::correlations:
      for (std::int64_t v : n) {
        if (ell > v) throw ArgumentError("ell must not exceed n");
      }
      break;
    case Command::laplace_check:
      if (ell % 2 != 0) throw ArgumentError("laplace-check needs an even ell");
      for (double b : beta) {
        if (!(b > 0.0)) throw ArgumentError("laplace-check needs beta > 0");
      }
      for (std::int64_t v : n) {
        if (ell > v) throw ArgumentError("ell must not exceed n");
      }
      break;
    case Command::limit_check:
      for (double b : beta) {
        if (!infer_mode(b, alpha)) {
          throw ArgumentError("no limit law for beta=" + format_double(b) + ", alpha=" + format_double(alpha) +
                              " (use alpha 1, alpha 0.5 with beta<1, or alpha 0.75 with beta=1)");
        }
      }
      break;
    case Command::sample:
      if (samples < 1) throw ArgumentError("samples must be positive");
      if (burn_in < 0) throw ArgumentError("burn-in must be non-negative");
      if (method != "exact" && method != "glauber") throw ArgumentError("method must be exact or glauber");
      break;
    case Command::census:
      if (k < 1) throw ArgumentError("census needs k >= 1");
      break;
    case Command::moments:
    case Command::phase:
      break;
  }
}

Table build_table(const RunConfig& c) {
  const unsigned threads = resolve_threads(c.threads);
  Table t;
  std::vector<Rows> chunks;
  const auto grid = product_grid(c);
  auto over_grid = [&](auto fn) {
    return parallel_map<Rows>(grid.size(), threads, [&](std::size_t i) { return fn(c, grid[i]); });
  };
  switch (c.command) {
    case Command::correlations:
      t.columns = {"n", "beta", "ell", "exact_correlation", "hs_correlation", "asymptotic_correlation"};
      chunks = over_grid(correlation_rows);
      break;
    case Command::moments:
      t.columns = {"n", "beta", "k", "alpha", "exact_moment", "assembled_moment", "w_plus_bound"};
      chunks = over_grid(moment_rows);
      break;
    case Command::limit_check:
      t.columns = {"n", "beta", "k", "alpha", "exact_moment", "limit_moment", "abs_gap"};
      chunks = over_grid(limit_check_rows);
      break;
    case Command::sample:
      t.columns = {"n", "beta", "k", "alpha", "method", "samples", "seed", "estimate", "std_error", "exact_moment"};
      chunks = over_grid(sample_rows);
      break;
    case Command::laplace_check:
      t.columns = {"n", "beta", "ell", "hs_correlation", "asymptotic_correlation", "ratio", "rel_error"};
      chunks = over_grid(laplace_rows);
      break;
    case Command::phase:
      t.columns = {"beta", "m", "phase"};
      chunks = parallel_map<Rows>(c.beta.size(), threads, [&](std::size_t i) { return phase_rows(c.beta[i]); });
      break;
    case Command::census:
      t.columns = {"k", "n", "r", "w", "w0", "w_plus", "w0_closed_form", "w_bound", "w_plus_bound"};
      chunks = parallel_map<Rows>(c.n.size(), threads, [&](std::size_t i) { return census_rows(c, c.n[i]); });
      break;
  }
  for (auto& chunk : chunks) {
    for (auto& row : chunk) t.rows.push_back(std::move(row));
  }
  return t;
}

void write_csv(const Table& table, std::ostream& os) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    os << (i ? "," : "") << csv_field(table.columns[i]);
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i ? "," : "") << std::visit(CellText{}, row[i]);
    }
    os << '\n';
  }
}

void write_json(const Table& table, const RunConfig& c, std::ostream& os) {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json config;
  config["beta"] = c.beta_spec;
  config["n"] = c.n_spec;
  config["ell"] = c.ell;
  config["k"] = c.k;
  config["alpha"] = c.alpha;
  config["samples"] = c.samples;
  config["burn_in"] = c.burn_in;
  config["method"] = c.method;
  config["seed"] = c.seed;
  doc["metadata"] = {{"command", to_string(c.command)}, {"version", kVersion}, {"config", config}};
  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json rec;
    for (std::size_t i = 0; i < row.size(); ++i) rec[table.columns[i]] = std::visit(CellJson{}, row[i]);
    records.push_back(std::move(rec));
  }
  doc["records"] = std::move(records);
  os << doc.dump(2) << '\n';
}

int run(const RunConfig& config_in, std::ostream& out, std::ostream& err) {
  RunConfig config = config_in;
  Table table;
  try {
    config.finalize();
    table = build_table(config);
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const RefusalError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << '\n';
    return 3;
  }

  std::ofstream file;
  std::ostream* os = &out;
  if (!config.out.empty()) {
    file.open(config.out, std::ios::binary);
    if (!file) {
      err << "error: cannot open output file '" << config.out << "'\n";
      return 2;
    }
    os = &file;
  }
  if (config.format == Format::json) {
    write_json(table, config, *os);
  } else {
    write_csv(table, *os);
  }
  return 0;
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Curie-Weiss model: exact finite-N laws, asymptotics and limit theorems", "cwlab"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", kVersion);

  RunConfig cfg;
  std::string format = "csv";

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out, "output file (default stdout)");
    sub->add_option("--threads", cfg.threads, "worker threads (default CWLAB_THREADS or all cores)");
  };
  auto beta_opt = [&](CLI::App* sub) { sub->add_option("--beta", cfg.beta_spec, "inverse temperature grid"); };
  auto n_opt = [&](CLI::App* sub) { sub->add_option("--n", cfg.n_spec, "number-of-spins grid"); };

  struct Sub {
    Command command;
    CLI::App* app;
  };
  std::vector<Sub> subs;
  auto add = [&](Command c, const std::string& help) {
    CLI::App* sub = app.add_subcommand(to_string(c), help);
    common(sub);
    subs.push_back({c, sub});
    return sub;
  };

  auto* corr = add(Command::correlations, "E[X_1...X_ell]: exact, integral representation, asymptotic");
  beta_opt(corr);
  n_opt(corr);
  corr->add_option("--ell", cfg.ell, "number of spins in the product");

  auto* mom = add(Command::moments, "exact and assembled E[(S_N/N^alpha)^k]");
  beta_opt(mom);
  n_opt(mom);
  mom->add_option("--k", cfg.k, "moment order");
  mom->add_option("--alpha", cfg.alpha, "scaling exponent");

  auto* lim = add(Command::limit_check, "exact moments against the limit law");
  beta_opt(lim);
  n_opt(lim);
  lim->add_option("--k", cfg.k, "moment order");
  lim->add_option("--alpha", cfg.alpha, "scaling exponent (1, 0.5 or 0.75)");

  auto* smp = add(Command::sample, "Monte Carlo moment estimates");
  beta_opt(smp);
  n_opt(smp);
  smp->add_option("--k", cfg.k, "moment order");
  smp->add_option("--alpha", cfg.alpha, "scaling exponent");
  smp->add_option("--samples", cfg.samples, "draws (exact) or recorded sweeps (glauber)");
  smp->add_option("--seed", cfg.seed, "RNG seed");
  smp->add_option("--method", cfg.method, "exact or glauber");
  smp->add_option("--burn-in", cfg.burn_in, "glauber sweeps discarded before recording");

  auto* ph = add(Command::phase, "spontaneous magnetization m(beta)");
  beta_opt(ph);

  auto* lap = add(Command::laplace_check, "integral representation against Laplace asymptotics");
  beta_opt(lap);
  n_opt(lap);
  lap->add_option("--ell", cfg.ell, "number of spins in the product (even)");

  auto* cen = add(Command::census, "multiindex census by enumeration");
  cen->add_option("--k", cfg.k, "tuple length");
  n_opt(cen);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  for (const auto& s : subs) {
    if (s.app->parsed()) cfg.command = s.command;
  }
  cfg.format = format == "json" ? Format::json : Format::csv;
  return run(cfg, out, err);
}

}  // namespace cwlab::cli
