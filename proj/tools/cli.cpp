#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "orbitns/diagnostics.hpp"
#include "orbitns/dynamics.hpp"
#include "orbitns/error.hpp"
#include "orbitns/format.hpp"
#include "orbitns/incidence.hpp"
#include "orbitns/lattice.hpp"
#include "orbitns/parallel.hpp"
#include "orbitns/spectral.hpp"
#include "orbitns/state_io.hpp"

namespace orbitns::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Raised for bad command-line input detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string out;
  std::string format = "csv";
  int workers = 0;
};

struct StateSource {
  std::string path;
  int n = 0;
  std::uint64_t seed = 0;
  double norm = 1.0;
  double norm_s = 2.0;
};

std::string quoted(const Mode& k) { return "\"" + to_label(k) + "\""; }

json label_json(const Mode& k) { return json::array({k[0], k[1], k[2]}); }

void add_common(CLI::App* cmd, Common& c, bool with_format = true) {
  cmd->add_option("--out", c.out, "Write results to this file instead of stdout");
  if (with_format)
    cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--workers", c.workers, "Worker threads (0 = machine parallelism)")
      ->check(CLI::NonNegativeNumber);
}

void add_state_source(CLI::App* cmd, StateSource& s) {
  cmd->add_option("--state", s.path, "State file (JSON)");
  cmd->add_option("--n", s.n, "Truncation for a generated random state");
  cmd->add_option("--seed", s.seed, "Seed for a generated random state");
  cmd->add_option("--norm", s.norm, "H^s norm of a generated random state");
  cmd->add_option("--norm-s", s.norm_s, "Sobolev exponent used to normalize a generated state");
}

TruncatedState load_state(const StateSource& s) {
  if (!s.path.empty()) {
    if (s.n != 0) throw UsageError("give either --state or --n, not both");
    return read_state(s.path);
  }
  if (s.n < 1 || s.n > 16) throw UsageError("a random state needs --n in [1, 16] (or --state FILE)");
  if (!(s.norm > 0.0)) throw UsageError("--norm must be > 0");
  return random_state(s.n, s.norm_s, s.norm, s.seed);
}

void emit(const Common& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
  } else {
    write_text_atomic(c.out, text);
  }
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    T v{};
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
      throw UsageError(std::string("malformed ") + what + " list: '" + text + "'");
    values.push_back(v);
  }
  if (values.empty()) throw UsageError(std::string("empty ") + what + " list");
  return values;
}

Mode parse_label(const std::string& text) {
  const auto v = parse_list<int>(text, "orbit label");
  if (v.size() != 3) throw UsageError("orbit label must have three components: '" + text + "'");
  return {v[0], v[1], v[2]};
}

// ---- diagnostics -------------------------------------------------------

std::string run_diagnostics(int n_max, const Common& c) {
  if (n_max < 1 || n_max > 16) throw UsageError("--n-max must be in [1, 16]");
  const auto rows = diagnostics_table(n_max);
  if (c.format == "json") {
    json doc = json::array();
    for (const auto& r : rows)
      doc.push_back({{"N", r.n}, {"modes", r.modes}, {"orbits", r.orbits}, {"shells", r.shells},
                     {"max_triads", r.max_triads}, {"total_triads", r.total_triads}});
    return doc.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "N,modes,orbits,shells,max_triads,total_triads\n";
  for (const auto& r : rows)
    os << r.n << ',' << r.modes << ',' << r.orbits << ',' << r.shells << ',' << r.max_triads
       << ',' << r.total_triads << '\n';
  return os.str();
}

// ---- incidence ---------------------------------------------------------

std::string run_incidence(int n, const std::string& alpha_label, const Common& c) {
  if (n < 1 || n > 32) throw UsageError("--n must be in [1, 32]");
  const OrbitTable orbits(n);
  std::optional<std::size_t> only;
  if (!alpha_label.empty()) {
    only = orbits.find(parse_label(alpha_label));
    if (!only) {
      std::string valid;
      for (const auto& o : orbits.orbits()) valid += " " + to_label(o.canonical);
      throw UsageError("unknown orbit '" + alpha_label + "' at N=" + std::to_string(n) +
                       "; valid canonicals:" + valid);
    }
  }
  const auto rows = incidence_matrix(orbits, resolve_workers(c.workers));
  std::size_t best = 0;
  for (std::size_t a = 0; a < rows.size(); ++a)
    if (rows[a].row_sqrt_sum > rows[best].row_sqrt_sum) best = a;

  auto selected = [&](std::size_t a) { return !only || *only == a; };
  if (c.format == "json") {
    json entries = json::array();
    for (std::size_t a = 0; a < rows.size(); ++a) {
      if (!selected(a)) continue;
      for (std::size_t b = 0; b < rows.size(); ++b)
        entries.push_back({{"alpha", label_json(orbits[a].canonical)},
                           {"beta", label_json(orbits[b].canonical)},
                           {"gamma", rows[a].gamma[b]}});
    }
    json doc = {{"N", n},
                {"entries", std::move(entries)},
                {"max_row_sqrt_sum", rows[best].row_sqrt_sum},
                {"argmax_alpha", label_json(orbits[best].canonical)}};
    return doc.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "N,alpha,beta,gamma\n";
  for (std::size_t a = 0; a < rows.size(); ++a) {
    if (!selected(a)) continue;
    for (std::size_t b = 0; b < rows.size(); ++b)
      os << n << ',' << quoted(orbits[a].canonical) << ',' << quoted(orbits[b].canonical) << ','
         << rows[a].gamma[b] << '\n';
  }
  os << "\nN,max_row_sqrt_sum,argmax_alpha\n"
     << n << ',' << format_double(rows[best].row_sqrt_sum) << ','
     << quoted(orbits[best].canonical) << '\n';
  return os.str();
}

// ---- transfer ----------------------------------------------------------

std::string matrix_csv(const std::vector<Mode>& labels, const SquareMatrix& m) {
  std::ostringstream os;
  os << "alpha";
  for (const auto& l : labels) os << ',' << quoted(l);
  os << '\n';
  for (std::size_t i = 0; i < labels.size(); ++i) {
    os << quoted(labels[i]);
    for (std::size_t j = 0; j < labels.size(); ++j) os << ',' << format_double(m(i, j));
    os << '\n';
  }
  return os.str();
}

std::string run_transfer(const StateSource& src, std::optional<double> s,
                         const std::string& matrix_dir, const Common& c) {
  if (s && !(*s > 1.5 && *s < 3.0))
    throw UsageError("--s must satisfy 3/2 < s < 3 for the row-sum report");
  const TruncatedState u = load_state(src);
  const int workers = resolve_workers(c.workers);
  const OrbitTable orbits(u.truncation());
  const TransferMatrix m = transfer_matrix(u, orbits, workers);
  const Decomposition d = decompose(m.entries);

  if (!matrix_dir.empty()) {
    fs::create_directories(matrix_dir);
    write_text_atomic(fs::path(matrix_dir) / "M.csv", matrix_csv(m.labels, m.entries));
    write_text_atomic(fs::path(matrix_dir) / "A.csv", matrix_csv(m.labels, d.antisymmetric));
    write_text_atomic(fs::path(matrix_dir) / "V.csv", matrix_csv(m.labels, d.symmetric));
  }

  std::vector<RowSumEntry> report;
  if (s) {
    report = row_sum_check(m, u, orbits, *s, workers);
  } else {
    for (std::size_t a = 0; a < orbits.size(); ++a) {
      RowSumEntry e;
      e.orbit = a;
      for (std::size_t b = 0; b < orbits.size(); ++b) e.rowsum += std::abs(m.entries(a, b));
      report.push_back(e);
    }
  }

  if (c.format == "json") {
    json rows = json::array();
    for (const auto& e : report) {
      json row = {{"alpha", label_json(m.labels[e.orbit])}, {"rowsum", e.rowsum}};
      if (s) {
        row["bound_shape"] = e.bound_shape;
        row["ratio"] = e.ratio;
        row["intermediate_bound"] = e.intermediate_bound;
      }
      rows.push_back(std::move(row));
    }
    json doc = {{"N", u.truncation()}, {"rows", std::move(rows)}};
    if (s) doc["s"] = *s;
    return doc.dump(2) + "\n";
  }
  std::ostringstream os;
  os << (s ? "alpha,rowsum,bound_shape,ratio,intermediate_bound\n" : "alpha,rowsum\n");
  for (const auto& e : report) {
    os << quoted(m.labels[e.orbit]) << ',' << format_double(e.rowsum);
    if (s)
      os << ',' << format_double(e.bound_shape) << ',' << format_double(e.ratio) << ','
         << format_double(e.intermediate_bound);
    os << '\n';
  }
  return os.str();
}

// ---- simulate ----------------------------------------------------------

struct SimulateOptions {
  double nu = 0.0;
  std::optional<double> dt;
  long steps = 0;
  long every = 1;
  double tol = kIdentityTol;
};

std::string run_simulate(const StateSource& src, const SimulateOptions& opt, const Common& c,
                         bool& identity_failed) {
  if (opt.steps < 1) throw UsageError("--steps must be >= 1");
  if (opt.every < 1) throw UsageError("--every must be >= 1");
  if (!(opt.nu >= 0.0)) throw UsageError("--nu must be >= 0");
  if (opt.dt && !(*opt.dt > 0.0)) throw UsageError("--dt must be > 0");
  const TruncatedState u0 = load_state(src);
  SimulationConfig config;
  config.nu = opt.nu;
  config.dt = opt.dt ? *opt.dt : default_time_step(u0, opt.nu);
  config.steps = opt.steps;
  config.diagnostics_every = opt.every;
  config.workers = resolve_workers(c.workers);
  const auto records = simulate(u0, config);

  identity_failed = false;
  for (const auto& r : records) identity_failed = identity_failed || !r.check.holds(opt.tol);

  if (c.format == "json") {
    json doc = json::array();
    for (const auto& r : records)
      for (const auto& o : r.check.orbits)
        doc.push_back({{"step", r.step}, {"time", r.time}, {"orbit", label_json(o.canonical)},
                       {"Z_alpha", o.enstrophy}, {"D_alpha", o.dissipation},
                       {"dZdt_direct", o.dzdt_direct}, {"dZdt_matrix", o.dzdt_from_matrix},
                       {"residual", o.residual}});
    return doc.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "step,time,orbit_canonical,Z_alpha,D_alpha,dZdt_direct,dZdt_matrix,residual\n";
  for (const auto& r : records)
    for (const auto& o : r.check.orbits)
      os << r.step << ',' << format_double(r.time) << ',' << quoted(o.canonical) << ','
         << format_double(o.enstrophy) << ',' << format_double(o.dissipation) << ','
         << format_double(o.dzdt_direct) << ',' << format_double(o.dzdt_from_matrix) << ','
         << format_double(o.residual) << '\n';
  return os.str();
}

// ---- bounds ------------------------------------------------------------

struct BoundsOptions {
  int n_max = 8;
  int rowsum_n_max = 4;
  int incidence_n_max = 12;
  std::string s_list = "1.6,2.0,2.5,2.9";
  std::string seeds = "1,2,3";
  double norm = 1.0;
};

std::string run_bounds(const BoundsOptions& opt, const Common& c) {
  const auto s_values = parse_list<double>(opt.s_list, "s");
  const auto seeds = parse_list<std::uint64_t>(opt.seeds, "seed");
  for (double s : s_values)
    if (!(s > 1.5 && s < 3.0)) throw UsageError("every s must satisfy 3/2 < s < 3");
  if (opt.n_max < 1 || opt.n_max > 24) throw UsageError("--n-max must be in [1, 24]");
  if (opt.rowsum_n_max < 1 || opt.rowsum_n_max > 12)
    throw UsageError("--rowsum-n-max must be in [1, 12]");
  if (opt.incidence_n_max < 5 || opt.incidence_n_max > 24)
    throw UsageError("--incidence-n-max must be in [5, 24]");
  const int workers = resolve_workers(c.workers);

  struct Row {
    std::string metric;
    std::optional<double> s;
    std::optional<int> n;
    std::optional<std::uint64_t> seed;
    double value;
  };
  std::vector<Row> rows;

  for (double s : s_values) {
    for (int n = 1; n <= opt.n_max; ++n) {
      const OrbitTable orbits(n);
      const auto sigma = sigma_by_orbit(orbits, s, workers);
      double lo = INFINITY, hi = 0.0;
      for (std::size_t a = 0; a < orbits.size(); ++a) {
        const double k = std::sqrt(static_cast<double>(orbits[a].norm2()));
        const double ratio = sigma[a] / (1.0 + std::pow(k, 4.0 - 2.0 * s));
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
      }
      rows.push_back({"sigma_ratio_min", s, n, {}, lo});
      rows.push_back({"sigma_ratio_max", s, n, {}, hi});
    }
    for (int n = 1; n <= opt.rowsum_n_max; ++n) {
      const OrbitTable orbits(n);
      for (auto seed : seeds) {
        const auto u = random_state(n, s, opt.norm, seed);
        const auto report = row_sum_check(u, orbits, s, workers);
        double ratio = 0.0, slack = INFINITY;
        for (const auto& e : report) {
          ratio = std::max(ratio, e.ratio);
          if (e.intermediate_bound > 0.0)
            slack = std::min(slack, (e.intermediate_bound - e.rowsum) / e.intermediate_bound);
        }
        rows.push_back({"rowsum_ratio_max", s, n, seed, ratio});
        rows.push_back({"intermediate_slack_min", s, n, seed, slack});
      }
    }
  }
  const auto scan = max_incidence_scan(opt.incidence_n_max, workers);
  for (const auto& pt : scan) rows.push_back({"incidence_max_row_sqrt_sum", {}, pt.n, {}, pt.max_row_sqrt_sum});
  rows.push_back({"incidence_loglog_slope", {}, {}, {}, loglog_slope(scan, 4)});

  if (c.format == "json") {
    json doc = json::array();
    for (const auto& r : rows) {
      json row = {{"metric", r.metric}, {"value", r.value}};
      row["s"] = r.s ? json(*r.s) : json(nullptr);
      row["N"] = r.n ? json(*r.n) : json(nullptr);
      row["seed"] = r.seed ? json(*r.seed) : json(nullptr);
      doc.push_back(std::move(row));
    }
    return doc.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "metric,s,N,seed,value\n";
  for (const auto& r : rows) {
    os << r.metric << ',' << (r.s ? format_double(*r.s) : "") << ','
       << (r.n ? std::to_string(*r.n) : "") << ',' << (r.seed ? std::to_string(*r.seed) : "")
       << ',' << format_double(r.value) << '\n';
  }
  return os.str();
}

// ---- state -------------------------------------------------------------

std::string run_state(const StateSource& src) { return state_to_json(load_state(src)); }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"orbitns: orbit-reduced cubic Fourier-Galerkin truncation of 3D Navier-Stokes"};
  app.set_config("--config", "", "TOML/INI configuration file; flags override its values");
  app.require_subcommand(1);

  Common common;

  int diag_n_max = 8;
  auto* diag = app.add_subcommand("diagnostics", "Exact finite-N combinatorial table");
  diag->add_option("--n-max", diag_n_max, "Largest truncation N (1..16)");
  add_common(diag, common);

  int inc_n = 0;
  std::string inc_alpha;
  auto* inc = app.add_subcommand("incidence", "Orbit-triad incidence counts Gamma");
  inc->add_option("--n", inc_n, "Truncation N")->required();
  inc->add_option("--alpha", inc_alpha, "Restrict to one target orbit, e.g. 2,1,0");
  add_common(inc, common);

  StateSource tr_src;
  std::optional<double> tr_s;
  std::string tr_dir;
  auto* tr = app.add_subcommand("transfer", "Transfer matrix M = A + V and row-sum report");
  add_state_source(tr, tr_src);
  tr->add_option("--s", tr_s, "Sobolev exponent for the row-sum report (3/2 < s < 3)");
  tr->add_option("--matrix-dir", tr_dir, "Directory receiving M.csv, A.csv and V.csv");
  add_common(tr, common);

  StateSource sim_src;
  SimulateOptions sim_opt;
  auto* sim = app.add_subcommand("simulate", "RK4 integration with per-record identity checks");
  add_state_source(sim, sim_src);
  sim->add_option("--nu", sim_opt.nu, "Viscosity");
  sim->add_option("--dt", sim_opt.dt, "Time step (default: stability heuristic)");
  sim->add_option("--steps", sim_opt.steps, "Number of RK4 steps")->required();
  sim->add_option("--every", sim_opt.every, "Diagnostics cadence in steps");
  sim->add_option("--tol", sim_opt.tol, "Relative tolerance for the enstrophy identity");
  add_common(sim, common);

  BoundsOptions bnd_opt;
  std::uint64_t bnd_single_seed = 0;
  auto* bnd = app.add_subcommand("bounds", "Sigma, row-sum and incidence-growth sweeps");
  bnd->add_option("--n-max", bnd_opt.n_max, "Largest N for the sigma sweep");
  bnd->add_option("--rowsum-n-max", bnd_opt.rowsum_n_max, "Largest N for row-sum sweeps");
  bnd->add_option("--incidence-n-max", bnd_opt.incidence_n_max, "Largest N for the incidence scan");
  bnd->add_option("--s-list", bnd_opt.s_list, "Comma-separated Sobolev exponents");
  bnd->add_option("--seeds", bnd_opt.seeds, "Comma-separated seeds for random states");
  bnd->add_option("--seed", bnd_single_seed, "Alias for a single-seed --seeds list");
  bnd->add_option("--norm", bnd_opt.norm, "H^s norm of generated states");
  add_common(bnd, common);

  StateSource st_src;
  auto* st = app.add_subcommand("state", "Write a seeded random divergence-free state as JSON");
  add_state_source(st, st_src);
  add_common(st, common, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    bool identity_failed = false;
    std::string text;
    if (*diag) {
      text = run_diagnostics(diag_n_max, common);
    } else if (*inc) {
      text = run_incidence(inc_n, inc_alpha, common);
    } else if (*tr) {
      text = run_transfer(tr_src, tr_s, tr_dir, common);
    } else if (*sim) {
      text = run_simulate(sim_src, sim_opt, common, identity_failed);
    } else if (*bnd) {
      if (bnd->count("--seed")) bnd_opt.seeds = std::to_string(bnd_single_seed);
      text = run_bounds(bnd_opt, common);
    } else if (*st) {
      text = run_state(st_src);
    }
    emit(common, text, out);
    if (identity_failed) {
      err << "enstrophy identity residual exceeded tolerance\n";
      return kIdentityFailure;
    }
    return kOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidParameter& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const DivergenceError& e) {
    err << "diverged: " << e.what() << '\n';
    return kDiverged;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
}

}  // namespace orbitns::cli
