#include "spider_cli/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "spider/catalog.hpp"
#include "spider/mc.hpp"
#include "spider/oracle.hpp"
#include "spider/rng.hpp"
#include "spider/serialize.hpp"
#include "spider/verify.hpp"

namespace spider::cli {

namespace {

using nlohmann::json;

struct Globals {
  std::string seed;
  std::string threads;
  std::string format;
  std::string out_path;
  std::string config_path;
};

// Raw flag values for every subcommand. Empty string means "not given".
struct Flags {
  std::string model;
  std::string p;
  std::string n;
  std::string n_range;
  std::string replicates;
  std::string indices;
  std::string index;
  std::string k;
  std::string epsilon;
  std::string r;
  std::string level;
  std::string inject_fault;
  bool oracle = false;
  bool ks = false;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) {
      parts.push_back(item);
    }
  }
  return parts;
}

std::uint64_t parse_count(const std::string& text, const std::string& field) {
  try {
    std::size_t used = 0;
    if (!text.empty() && text.front() == '-') {
      throw std::invalid_argument("negative");
    }
    const auto value = std::stoull(text, &used);
    if (used != text.size()) {
      throw std::invalid_argument("trailing");
    }
    return value;
  } catch (const std::exception&) {
    throw ConfigError(field, "expected a non-negative integer, got '" + text + "'");
  }
}

double parse_real(const std::string& text, const std::string& field) {
  try {
    return to_double(parse_rational(text));
  } catch (const std::exception&) {
    throw ConfigError(field, "expected a number, got '" + text + "'");
  }
}

// Flag value, else config-file value, else nothing.
class Resolver {
 public:
  explicit Resolver(json file) : file_(std::move(file)) {}

  std::optional<std::string> text(const std::string& flag, const char* key) const {
    if (!flag.empty()) {
      return flag;
    }
    if (file_.contains(key)) {
      const json& v = file_.at(key);
      if (v.is_string()) {
        return v.get<std::string>();
      }
      if (v.is_array()) {
        std::string joined;
        for (const auto& item : v) {
          if (!joined.empty()) {
            joined += ',';
          }
          joined += item.is_string() ? item.get<std::string>() : item.dump();
        }
        return joined;
      }
      return v.dump();
    }
    return std::nullopt;
  }

  bool boolean(bool flag, const char* key) const {
    if (flag) {
      return true;
    }
    if (file_.contains(key)) {
      if (!file_.at(key).is_boolean()) {
        throw ConfigError(key, "expected true or false");
      }
      return file_.at(key).get<bool>();
    }
    return false;
  }

  void reject_unknown(std::initializer_list<const char*> allowed) const {
    for (const auto& [key, value] : file_.items()) {
      bool known = false;
      for (const char* a : allowed) {
        known = known || key == a;
      }
      if (!known) {
        throw ConfigError(key, "unknown configuration field");
      }
    }
  }

 private:
  json file_;
};

GrowthModel resolve_model(const Resolver& cfg, const Flags& flags) {
  const auto model = cfg.text(flags.model, "model");
  const auto p = flags.p.empty() ? std::nullopt : std::optional<std::string>(flags.p);
  if (model && p) {
    throw ConfigError("model", "give either --model or --p, not both");
  }
  try {
    if (model) {
      return GrowthModel::parse(*model);
    }
    if (p) {
      return GrowthModel::uniform(parse_real(*p, "p"));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(model ? "model" : "p", e.what());
  }
  throw ConfigError("model", "missing; pass --model uniform:<p>|preferential");
}

std::uint64_t resolve_seed(const Resolver& cfg, const Globals& g) {
  if (auto s = cfg.text(g.seed, "master_seed")) {
    return parse_count(*s, "master_seed");
  }
  return entropy_seed();
}

unsigned resolve_threads(const Resolver& cfg, const Globals& g) {
  if (auto t = cfg.text(g.threads, "threads")) {
    return static_cast<unsigned>(parse_count(*t, "threads"));
  }
  return 0;
}

std::vector<std::uint64_t> resolve_grid(const Resolver& cfg, const Flags& flags) {
  const auto text = cfg.text(flags.n, "n_grid");
  if (!text) {
    return {};
  }
  std::vector<std::uint64_t> grid;
  for (const auto& part : split(*text, ',')) {
    grid.push_back(parse_count(part, "n"));
  }
  return grid;
}

IndexSpec parse_index(const std::string& name, const char* field) {
  try {
    return IndexSpec::parse(name);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(field, e.what());
  }
}

std::vector<IndexSpec> default_indices() {
  std::vector<IndexSpec> out;
  for (const auto& e : MomentCatalog::standard().entries()) {
    out.push_back(e.index);
  }
  return out;
}

std::string format_or(const Globals& g, const char* fallback) {
  const std::string f = g.format.empty() ? fallback : g.format;
  if (f != "json" && f != "csv") {
    throw ConfigError("format", "expected json or csv, got '" + f + "'");
  }
  return f;
}

void echo_config(std::ostream& err, const std::string& command, const json& resolved) {
  err << "resolved config (" << command << "): " << resolved.dump() << '\n';
}

json rows_to_json(const std::vector<TableRow>& rows) {
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"index", r.index},
                   {"n", r.n},
                   {"p", r.p},
                   {"mean", opt(r.mean)},
                   {"var", opt(r.var)},
                   {"ks", opt(r.ks)},
                   {"exceedance", opt(r.exceedance)},
                   {"r_mean_error", opt(r.r_mean_error)},
                   {"limit", opt(r.limit)}});
  }
  return out;
}

int cmd_simulate(const Resolver& cfg, const Globals& g, const Flags& flags, std::ostream& out,
                 std::ostream& err) {
  cfg.reject_unknown(
      {"model", "n", "replicates", "master_seed", "indices", "clt_shift", "ks", "threads"});
  SimConfig config;
  config.model = resolve_model(cfg, flags);
  const auto n = cfg.text(flags.n, "n");
  if (!n) {
    throw ConfigError("n", "missing; pass --n <horizon>");
  }
  config.n = parse_count(*n, "n");
  if (auto r = cfg.text(flags.replicates, "replicates")) {
    config.replicates = parse_count(*r, "replicates");
  } else {
    config.replicates = 1000;
  }
  if (auto list = cfg.text(flags.indices, "indices")) {
    for (const auto& name : split(*list, ',')) {
      config.indices.push_back(parse_index(name, "indices"));
    }
  } else {
    config.indices = default_indices();
  }
  if (auto k = cfg.text(flags.k, "clt_shift")) {
    config.clt_shift = parse_real(*k, "clt_shift");
  }
  config.ks = cfg.boolean(flags.ks, "ks");
  config.master_seed = resolve_seed(cfg, g);
  config.threads = resolve_threads(cfg, g);
  config.validate();
  const std::string format = format_or(g, "json");
  echo_config(err, "simulate", config_to_json(config));

  const SampleSummary summary = run_experiment(config);
  if (format == "json") {
    out << summary_to_json(summary, config).dump(2) << '\n';
  } else {
    std::vector<TableRow> rows;
    for (const auto& s : summary.indices) {
      TableRow row{s.index.name(), config.n, config.model.p(), s.mean, s.variance, s.ks};
      rows.push_back(row);
    }
    write_table(out, rows);
  }
  return kOk;
}

int cmd_exact(const Resolver& cfg, const Globals& g, const Flags& flags, std::ostream& out,
              std::ostream& err) {
  cfg.reject_unknown({"index", "n_range", "p", "oracle"});
  const auto index_name = cfg.text(flags.index, "index");
  if (!index_name) {
    throw ConfigError("index", "missing; pass --index <name>");
  }
  const IndexSpec index = parse_index(*index_name, "index");
  const MomentCatalogEntry entry = MomentCatalog::standard().entry(index);

  const auto p_text = cfg.text(flags.p, "p");
  if (!p_text) {
    throw ConfigError("p", "missing; pass --p <probability>");
  }
  Rational p;
  try {
    p = parse_rational(*p_text);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("p", e.what());
  }
  if (!(p > 0 && p < 1)) {
    throw ConfigError("p", "must satisfy 0 < p < 1");
  }

  std::uint64_t n_lo = 0;
  std::uint64_t n_hi = 0;
  const std::string range_flag = !flags.n_range.empty() ? flags.n_range : flags.n;
  const auto range = cfg.text(range_flag, "n_range");
  if (!range) {
    throw ConfigError("n", "missing; pass --n <n> or --n-range <lo>:<hi>");
  }
  {
    std::string text = *range;
    std::replace(text.begin(), text.end(), ',', ':');
    const auto parts = split(text, ':');
    if (parts.empty() || parts.size() > 2) {
      throw ConfigError("n_range", "expected <n> or <lo>:<hi>");
    }
    n_lo = parse_count(parts.front(), "n_range");
    n_hi = parse_count(parts.back(), "n_range");
    if (n_lo == 0 || n_hi < n_lo) {
      throw ConfigError("n_range", "need 1 <= lo <= hi");
    }
  }
  const bool with_oracle = cfg.boolean(flags.oracle, "oracle");
  const std::string format = format_or(g, "csv");
  echo_config(err, "exact",
              json{{"index", index.name()},
                   {"n_range", {n_lo, n_hi}},
                   {"p", to_string(p)},
                   {"oracle", with_oracle}});

  json rows = json::array();
  std::ostringstream csv;
  csv << "index,n,p,mean,var,mean_exact,var_exact,oracle_mean,oracle_var,match\n";
  for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
    const Rational mean = entry.mean_at(n, p);
    const Rational var = entry.variance_at(n, p);
    json row{{"index", index.name()},
             {"n", n},
             {"p", to_string(p)},
             {"mean", to_double(mean)},
             {"var", to_double(var)},
             {"mean_exact", to_string(mean)},
             {"var_exact", to_string(var)},
             {"oracle_mean", nullptr},
             {"oracle_var", nullptr},
             {"match", nullptr}};
    csv << index.name() << ',' << n << ',' << to_string(p) << ',' << format_double(to_double(mean))
        << ',' << format_double(to_double(var)) << ',' << to_string(mean) << ','
        << to_string(var);
    if (with_oracle) {
      const Rational om = oracle_mean(index, n, p);
      const Rational ov = oracle_variance(index, n, p);
      const std::string match = entry.exact ? (om == mean && ov == var ? "true" : "false") : "n/a";
      row["oracle_mean"] = to_string(om);
      row["oracle_var"] = to_string(ov);
      row["match"] = match;
      csv << ',' << to_string(om) << ',' << to_string(ov) << ',' << match << '\n';
    } else {
      csv << ",,,\n";
    }
    rows.push_back(std::move(row));
  }
  if (format == "json") {
    out << json{{"catalog", catalog_entry_to_json(entry)}, {"rows", rows}}.dump(2) << '\n';
  } else {
    out << csv.str();
  }
  return kOk;
}

// Shifts the constant term of one catalog mean by 1/1000.
MomentCatalog corrupted_catalog(const std::string& index_name) {
  MomentCatalog catalog = MomentCatalog::standard();
  MomentCatalogEntry entry = catalog.entry(parse_index(index_name, "inject_fault"));
  entry.mean.numerator += Bivariate(Rational(1) / Rational(1000));
  catalog.put(std::move(entry));
  return catalog;
}

int cmd_verify(const Resolver& cfg, const Globals& g, const Flags& flags, std::ostream& out,
               std::ostream& err) {
  cfg.reject_unknown({"level", "master_seed", "inject_fault"});
  const std::string level_text = cfg.text(flags.level, "level").value_or("quick");
  VerifyLevel level;
  if (level_text == "quick") {
    level = VerifyLevel::Quick;
  } else if (level_text == "full") {
    level = VerifyLevel::Full;
  } else {
    throw ConfigError("level", "expected quick or full, got '" + level_text + "'");
  }
  const std::uint64_t seed =
      cfg.text(g.seed, "master_seed") ? resolve_seed(cfg, g) : std::uint64_t{20240601};
  const auto fault = cfg.text(flags.inject_fault, "inject_fault");
  const MomentCatalog catalog = fault ? corrupted_catalog(*fault) : MomentCatalog::standard();
  const std::string format = format_or(g, "csv");

  json resolved{{"level", level_text}, {"master_seed", seed}};
  if (fault) {
    resolved["inject_fault"] = *fault;
  }
  echo_config(err, "verify", resolved);

  const VerificationReport report = run_verification(level, catalog, seed);
  if (format == "json") {
    json suites = json::array();
    for (const auto& s : report.suites) {
      suites.push_back({{"suite", s.name},
                        {"checks", s.checks},
                        {"passed", s.passed()},
                        {"failures", s.failures}});
    }
    out << json{{"passed", report.passed()}, {"suites", suites}}.dump(2) << '\n';
  } else {
    out << "suite,checks,failures,status\n";
    for (const auto& s : report.suites) {
      out << s.name << ',' << s.checks << ',' << s.failures.size() << ','
          << (s.passed() ? "PASS" : "FAIL") << '\n';
    }
  }
  for (const auto& s : report.suites) {
    for (const auto& f : s.failures) {
      err << "FAIL [" << s.name << "] " << f << '\n';
    }
  }
  return report.passed() ? kOk : kVerificationFailure;
}

int cmd_clt(const Resolver& cfg, const Globals& g, const Flags& flags, std::ostream& out,
            std::ostream& err) {
  cfg.reject_unknown(
      {"model", "n_grid", "replicates", "master_seed", "index", "clt_shift", "threads"});
  const auto index_name = cfg.text(flags.index, "index");
  if (!index_name) {
    throw ConfigError("index", "missing; pass --index <name>");
  }
  const IndexSpec index = parse_index(*index_name, "index");
  const MomentCatalogEntry entry = MomentCatalog::standard().entry(index);
  if (!entry.clt) {
    throw UnknownCatalogEntry("index '" + index.name() + "' has no CLT normalizer");
  }
  const GrowthModel model = resolve_model(cfg, flags);
  const auto grid = resolve_grid(cfg, flags);
  if (grid.empty()) {
    throw ConfigError("n", "missing; pass --n <n>[,<n>...]");
  }
  SimConfig base;
  base.model = model;
  base.indices = {index};
  base.ks = true;
  base.replicates = 10'000;
  if (auto r = cfg.text(flags.replicates, "replicates")) {
    base.replicates = parse_count(*r, "replicates");
  }
  if (auto k = cfg.text(flags.k, "clt_shift")) {
    base.clt_shift = parse_real(*k, "clt_shift");
  }
  base.master_seed = resolve_seed(cfg, g);
  base.threads = resolve_threads(cfg, g);
  const std::string format = format_or(g, "csv");
  for (auto n : grid) {
    base.n = n;
    base.validate();
  }
  echo_config(err, "clt",
              json{{"model", model.name()},
                   {"n_grid", grid},
                   {"replicates", base.replicates},
                   {"master_seed", base.master_seed},
                   {"index", index.name()},
                   {"clt_shift", base.clt_shift},
                   {"threads", base.threads}});

  std::vector<TableRow> rows;
  for (auto n : grid) {
    SimConfig config = base;
    config.n = n;
    const SampleSummary summary = run_experiment(config);
    const IndexSummary& s = summary.at(index);
    rows.push_back(TableRow{index.name(), n, model.p(), s.mean, s.variance, s.ks});
  }
  if (format == "json") {
    out << rows_to_json(rows).dump(2) << '\n';
  } else {
    write_table(out, rows);
  }
  return kOk;
}

int cmd_converge(const Resolver& cfg, const Globals& g, const Flags& flags, std::ostream& out,
                 std::ostream& err) {
  cfg.reject_unknown(
      {"model", "n_grid", "replicates", "master_seed", "index", "epsilon", "r", "threads"});
  const auto index_name = cfg.text(flags.index, "index");
  if (!index_name) {
    throw ConfigError("index", "missing; pass --index <name>");
  }
  ProbeConfig probe;
  probe.index = parse_index(*index_name, "index");
  if (!MomentCatalog::standard().entry(probe.index).limit) {
    throw UnknownCatalogEntry("index '" + probe.index.name() + "' has no limit constant");
  }
  probe.model = resolve_model(cfg, flags);
  probe.n_grid = resolve_grid(cfg, flags);
  if (probe.n_grid.empty()) {
    probe.n_grid = {100, 1000, 10000};
  }
  probe.replicates = 10'000;
  if (auto r = cfg.text(flags.replicates, "replicates")) {
    probe.replicates = parse_count(*r, "replicates");
  }
  if (auto e = cfg.text(flags.epsilon, "epsilon")) {
    probe.epsilon = parse_real(*e, "epsilon");
  }
  if (auto r = cfg.text(flags.r, "r")) {
    probe.r = parse_real(*r, "r");
  }
  probe.master_seed = resolve_seed(cfg, g);
  probe.threads = resolve_threads(cfg, g);
  probe.validate();
  const std::string format = format_or(g, "csv");
  echo_config(err, "converge",
              json{{"model", probe.model.name()},
                   {"n_grid", probe.n_grid},
                   {"replicates", probe.replicates},
                   {"master_seed", probe.master_seed},
                   {"index", probe.index.name()},
                   {"epsilon", probe.epsilon},
                   {"r", probe.r},
                   {"threads", probe.threads}});

  std::vector<TableRow> rows;
  for (const auto& row : convergence_probe(probe)) {
    rows.push_back(TableRow{probe.index.name(), row.n, probe.model.p(), row.mean, row.variance,
                            std::nullopt, row.exceedance, row.r_mean_error, row.limit});
  }
  if (format == "json") {
    out << rows_to_json(rows).dump(2) << '\n';
  } else {
    write_table(out, rows);
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random spider tree simulator and exact-moment laboratory", "spider"};
  app.require_subcommand(1);

  Globals g;
  Flags f;
  app.add_option("--seed", g.seed, "Master seed (drawn from system entropy when omitted)");
  app.add_option("--threads", g.threads, "Worker threads (0 = hardware concurrency)");
  app.add_option("--format", g.format, "Output format: json|csv");
  app.add_option("--out", g.out_path, "Write output to PATH instead of stdout");
  app.add_option("--config", g.config_path, "JSON config; flags override its values");

  auto* simulate = app.add_subcommand("simulate", "Grow replicate trees and summarize indices");
  simulate->add_option("--model", f.model, "uniform:<p> or preferential");
  simulate->add_option("--p", f.p, "Shorthand for --model uniform:<p>");
  simulate->add_option("--n", f.n, "Horizon n");
  simulate->add_option("--replicates", f.replicates, "Number of replicates (default 1000)");
  simulate->add_option("--indices", f.indices, "Comma-separated index names (default: all)");
  simulate->add_option("--k", f.k, "CLT shift k");
  simulate->add_flag("--ks", f.ks, "Report KS distance of standardized samples");

  auto* exact = app.add_subcommand("exact", "Closed-form mean and variance table");
  exact->add_option("--index", f.index, "Index name");
  exact->add_option("--n", f.n, "Single horizon n");
  exact->add_option("--n-range", f.n_range, "Horizon range lo:hi");
  exact->add_option("--p", f.p, "Probability, decimal or ratio");
  exact->add_flag("--oracle", f.oracle, "Add binomial-summation oracle columns");

  auto* verify = app.add_subcommand("verify", "Run the exact verification suites");
  verify->add_option("--level", f.level, "quick|full");
  verify->add_option("--inject-fault", f.inject_fault,
                     "Corrupt the named catalog mean before verifying (testing aid)");

  auto* clt = app.add_subcommand("clt", "KS distance of standardized samples by n");
  clt->add_option("--index", f.index, "Index name");
  clt->add_option("--model", f.model, "uniform:<p> or preferential");
  clt->add_option("--p", f.p, "Shorthand for --model uniform:<p>");
  clt->add_option("--n,--n-grid", f.n, "Comma-separated horizons");
  clt->add_option("--replicates", f.replicates, "Replicates per horizon (default 10000)");
  clt->add_option("--k", f.k, "CLT shift k");

  auto* converge = app.add_subcommand("converge", "Exceedance and r-mean error by n");
  converge->add_option("--index", f.index, "Index name");
  converge->add_option("--model", f.model, "uniform:<p> or preferential");
  converge->add_option("--p", f.p, "Shorthand for --model uniform:<p>");
  converge->add_option("--n,--n-grid", f.n, "Comma-separated horizons (default 100,1000,10000)");
  converge->add_option("--replicates", f.replicates, "Replicates (default 10000)");
  converge->add_option("--epsilon", f.epsilon, "Exceedance threshold (default 0.05)");
  converge->add_option("--r", f.r, "Order of the r-mean error (default 2)");

  for (auto* sub : {simulate, exact, verify, clt, converge}) {
    sub->fallthrough();
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  try {
    json file = json::object();
    if (!g.config_path.empty()) {
      std::ifstream in(g.config_path);
      if (!in) {
        throw ConfigError("config", "cannot open '" + g.config_path + "'");
      }
      try {
        file = json::parse(in);
      } catch (const json::parse_error& e) {
        throw ConfigError("config", e.what());
      }
      if (!file.is_object()) {
        throw ConfigError("config", "expected a JSON object");
      }
    }
    const Resolver cfg(std::move(file));

    std::ofstream file_out;
    std::ostream* sink = &out;
    if (!g.out_path.empty()) {
      file_out.open(g.out_path);
      if (!file_out) {
        throw ConfigError("out", "cannot open '" + g.out_path + "' for writing");
      }
      sink = &file_out;
    }

    if (simulate->parsed()) return cmd_simulate(cfg, g, f, *sink, err);
    if (exact->parsed()) return cmd_exact(cfg, g, f, *sink, err);
    if (verify->parsed()) return cmd_verify(cfg, g, f, *sink, err);
    if (clt->parsed()) return cmd_clt(cfg, g, f, *sink, err);
    if (converge->parsed()) return cmd_converge(cfg, g, f, *sink, err);
    err << "error: no subcommand\n";
    return kUsageError;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const UnknownCatalogEntry& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "runtime failure: " << e.what() << '\n';
    return kRuntimeFailure;
  }
}

}  // namespace spider::cli
