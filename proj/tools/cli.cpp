#include "cli.hpp"

#include "abnet/analysis.hpp"
#include "abnet/closed_form.hpp"
#include "abnet/error.hpp"
#include "abnet/io.hpp"
#include "abnet/ode.hpp"
#include "abnet/sim.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>

namespace abnet::cli {

namespace {

// Errors raised while reading the config carry a JSON pointer so the
// message can name the line it came from.
class ConfigError : public InputError {
 public:
  ConfigError(std::string pointer, const std::string& what)
      : InputError(what), pointer_(std::move(pointer)) {}
  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

struct ConfigSource {
  std::string name;
  std::string text;         // text the pointers are searched in
  int line_offset = 0;      // lines preceding `text` in the file
  std::string base_pointer; // where the config document sits inside `text`

  int line_of(const std::string& pointer) const {
    const std::string full = base_pointer + pointer;
    std::size_t pos = 0;
    std::size_t found = std::string::npos;
    std::stringstream segments(full);
    std::string seg;
    while (std::getline(segments, seg, '/')) {
      if (seg.empty() || std::all_of(seg.begin(), seg.end(), ::isdigit)) continue;
      const std::string quoted = "\"" + seg + "\"";
      std::size_t at = text.find(quoted, pos);
      while (at != std::string::npos) {
        std::size_t after = at + quoted.size();
        while (after < text.size() && std::isspace(static_cast<unsigned char>(text[after]))) ++after;
        if (after < text.size() && text[after] == ':') break;
        at = text.find(quoted, at + 1);
      }
      if (at == std::string::npos) break;
      found = at;
      pos = at + quoted.size();
    }
    if (found == std::string::npos) return 0;
    return line_offset + 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(found), '\n'));
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Accepts a config document, or a CSV/JSON output of an earlier run whose
// embedded config is then used.
Json load_config(const std::string& path, ConfigSource& source) {
  source.name = path;
  const std::string text = read_file(path);
  if (text.rfind("# abnet", 0) == 0) {
    std::istringstream lines(text);
    std::string line;
    int number = 0;
    while (std::getline(lines, line)) {
      ++number;
      if (line.rfind("# config: ", 0) == 0) {
        source.text = line;
        source.line_offset = number - 1;
        try {
          return Json::parse(line.substr(10));
        } catch (const Json::parse_error& e) {
          throw InputError(path + ":" + std::to_string(number) + ": embedded config is not valid JSON: " + e.what());
        }
      }
      if (line.empty() || line[0] != '#') break;
    }
    throw InputError(path + ": output header has no '# config:' line");
  }
  source.text = text;
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  if (!doc.is_object()) throw InputError(path + ": config must be a JSON object");
  if (doc.contains("abnet_version") && doc.contains("config")) {
    source.base_pointer = "/config";
    return doc.at("config");
  }
  return doc;
}

// Reads one config block, filling defaults and recording every value used.
class Block {
 public:
  Block(const Json& root, const std::string& name, bool required) : pointer_("/" + name) {
    if (!root.contains(name)) {
      if (required) throw ConfigError("", "missing required block \"" + name + "\"");
      doc_ = Json::object();
      return;
    }
    doc_ = root.at(name);
    if (!doc_.is_object()) throw ConfigError(pointer_, "expected an object");
  }

  double real(const std::string& key, std::optional<double> fallback) {
    const Json* v = lookup(key, fallback.has_value());
    double x = fallback.value_or(0.0);
    if (v) {
      if (!v->is_number()) fail(key, "expected a number");
      x = v->get<double>();
      if (!std::isfinite(x)) fail(key, "must be finite");
    }
    resolved_[key] = x;
    return x;
  }

  long integer(const std::string& key, std::optional<long> fallback) {
    const Json* v = lookup(key, fallback.has_value());
    long x = fallback.value_or(0);
    if (v) {
      if (!v->is_number_integer()) fail(key, "expected an integer");
      x = v->get<long>();
    }
    resolved_[key] = x;
    return x;
  }

  std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback) {
    const Json* v = lookup(key, true);
    std::uint64_t x = fallback;
    if (v) {
      if (!v->is_number_unsigned()) fail(key, "expected a non-negative integer");
      x = v->get<std::uint64_t>();
    }
    resolved_[key] = x;
    return x;
  }

  bool flag(const std::string& key, bool fallback) {
    const Json* v = lookup(key, true);
    bool x = fallback;
    if (v) {
      if (!v->is_boolean()) fail(key, "expected true or false");
      x = v->get<bool>();
    }
    resolved_[key] = x;
    return x;
  }

  std::string text(const std::string& key, std::optional<std::string> fallback) {
    const Json* v = lookup(key, fallback.has_value());
    std::string x = fallback.value_or("");
    if (v) {
      if (!v->is_string()) fail(key, "expected a string");
      x = v->get<std::string>();
    }
    resolved_[key] = x;
    return x;
  }

  // Non-empty, sorted, finite, non-negative times.
  std::vector<double> times(const std::string& key) {
    const Json* v = lookup(key, false);
    if (!v->is_array()) fail(key, "expected an array of times");
    if (v->empty()) fail(key, "must not be empty");
    std::vector<double> out;
    for (std::size_t i = 0; i < v->size(); ++i) {
      const Json& item = v->at(i);
      if (!item.is_number()) fail(key + "/" + std::to_string(i), "expected a number");
      const double t = item.get<double>();
      if (!(t >= 0.0) || !std::isfinite(t)) fail(key + "/" + std::to_string(i), "times must be finite and >= 0");
      if (!out.empty() && t < out.back()) fail(key + "/" + std::to_string(i), "times must be sorted");
      out.push_back(t);
    }
    resolved_[key] = out;
    return out;
  }

  bool has(const std::string& key) const { return doc_.contains(key); }

  // Overrides a value after reading (command-line flags).
  void set(const std::string& key, const Json& value) { resolved_[key] = value; }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    throw ConfigError(pointer_ + "/" + key, what);
  }

  // Unknown keys are reported rather than ignored.
  void finish() const {
    for (const auto& [key, value] : doc_.items()) {
      if (!resolved_.contains(key)) throw ConfigError(pointer_ + "/" + key, "unknown key");
    }
  }

  const Json& resolved() const { return resolved_; }

 private:
  const Json* lookup(const std::string& key, bool optional) const {
    if (doc_.contains(key) && !doc_.at(key).is_null()) return &doc_.at(key);
    if (!optional) fail(key, "missing required field");
    return nullptr;
  }

  std::string pointer_;
  Json doc_;
  Json resolved_ = Json::object();
};

struct Options {
  std::string command;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> format;
  unsigned threads = 0;
};

// What a command produced, in every supported format.
struct Output {
  Json result;
  std::string csv;
  std::string text;  // compare only
  int exit_code = kExitOk;
  std::string summary;
};

ModelParams read_params(const Json& root) {
  if (!root.contains("params")) throw ConfigError("", "missing required block \"params\"");
  try {
    return params_from_json(root.at("params"), "/params");
  } catch (const InputError& e) {
    const std::string msg = e.what();
    const auto colon = msg.find(": ");
    if (msg.rfind("/params", 0) == 0 && colon != std::string::npos) {
      throw ConfigError(msg.substr(0, colon), msg.substr(colon + 2));
    }
    throw ConfigError("/params", msg);
  }
}

int check_k_max(Block& block, const ModelParams& params, long fallback) {
  const long k_max = block.integer("k_max", fallback);
  if (k_max < params.m()) block.fail("k_max", "must be >= m = " + std::to_string(params.m()));
  if (k_max > 1'000'000) block.fail("k_max", "must be <= 1000000");
  return static_cast<int>(k_max);
}

std::string trajectory_csv(const DegreeTrajectory& traj, const ModelParams& params) {
  std::ostringstream os;
  write_trajectory_csv(os, traj, params);
  return os.str();
}

Output cmd_solve(const ModelParams& params, Block& block) {
  const int k_max = check_k_max(block, params, 50);
  const auto times = block.times("t");
  block.finish();

  const auto sol = build_constants(params, k_max);
  Output o;
  std::ostringstream csv;
  csv << "k,t,N_k,p_k,asymptotic_pk\n";
  Json rows = Json::array();
  for (double t : times) {
    const double total = n_of_t(params, t);
    for (int k = params.m(); k <= k_max; ++k) {
      const double n = nk_series(sol, k, t);
      const double limit = asymptotic_pk(params.m(), k).to_double();
      csv << k << ',' << format_double(t) << ',' << format_double(n) << ',' << format_double(n / total) << ','
          << format_double(limit) << '\n';
      rows.push_back({{"k", k}, {"t", t}, {"N_k", n}, {"p_k", n / total}, {"asymptotic_pk", limit}});
    }
  }
  Json constants = Json::array();
  for (int i = params.m(); i <= k_max; ++i) {
    Json c = to_json(sol.scaled_constant(i));
    c["i"] = i;
    constants.push_back(c);
  }
  o.csv = csv.str();
  o.result["rows"] = rows;
  o.result["scaled_constants"] = constants;
  o.summary = "solve: " + std::to_string(rows.size()) + " rows";
  return o;
}

OdeConfig read_ode(Block& block, const ModelParams& params, const std::string& prefix, long k_max_default) {
  OdeConfig cfg;
  const long k_max = block.integer(prefix + "k_max", k_max_default);
  if (k_max < params.max_initial_degree()) {
    block.fail(prefix + "k_max", "must be >= the largest initial degree " + std::to_string(params.max_initial_degree()));
  }
  cfg.k_max = static_cast<int>(k_max);
  cfg.rel_tol = block.real("rel_tol", 1e-10);
  if (!(cfg.rel_tol > 0.0)) block.fail("rel_tol", "must be > 0");
  cfg.abs_tol = block.real("abs_tol", 1e-18);
  if (!(cfg.abs_tol > 0.0)) block.fail("abs_tol", "must be > 0");
  cfg.max_steps = block.integer("max_steps", 50'000'000);
  if (cfg.max_steps < 1) block.fail("max_steps", "must be >= 1");
  return cfg;
}

Output cmd_oracle(const ModelParams& params, Block& block) {
  OdeConfig cfg = read_ode(block, params, "", 400);
  cfg.t_snapshots = block.times("t");
  block.finish();

  OdeStats stats;
  const auto traj = integrate(params, cfg, &stats);
  Output o;
  o.csv = trajectory_csv(traj, params);
  o.result["trajectory"] = to_json(traj);
  o.result["stats"] = {{"accepted_steps", stats.accepted_steps},
                       {"rejected_steps", stats.rejected_steps},
                       {"rhs_evaluations", stats.rhs_evaluations},
                       {"smallest_step", stats.smallest_step},
                       {"largest_step", stats.largest_step}};
  o.summary = "oracle: " + std::to_string(stats.accepted_steps) + " steps, leaked " +
              format_double(traj.leaked.empty() ? 0.0 : traj.leaked.back());
  for (const auto& w : traj.warnings) o.summary += "\nwarning: " + w;
  return o;
}

struct SimSettings {
  std::size_t replicas = 1;
  std::uint64_t seed = 1;
  SimOptions options;
};

SimSettings read_sim(Block& block, const Options& opts, long replicas_default) {
  SimSettings s;
  const long replicas = block.integer("replicas", replicas_default);
  if (replicas < 1) block.fail("replicas", "must be >= 1");
  s.replicas = static_cast<std::size_t>(replicas);
  s.seed = block.unsigned_integer("seed", 1);
  if (opts.seed) {
    s.seed = *opts.seed;
    block.set("seed", s.seed);
  }
  const std::string sampling = block.text("sampling", std::string("distinct"));
  try {
    s.options.sampling = sampling_mode_from_string(sampling);
  } catch (const InputError& e) {
    block.fail("sampling", e.what());
  }
  s.options.check_every_event = block.flag("check_every_event", false);
  return s;
}

Output cmd_simulate(const ModelParams& params, Block& block, const Options& opts) {
  const auto snapshots = block.times("snapshots");
  const double t_end = block.real("t_end", snapshots.back());
  if (t_end < snapshots.back()) block.fail("t_end", "must be >= the last snapshot");
  const SimSettings s = read_sim(block, opts, 1);
  block.finish();

  const auto ens = ensemble(params, t_end, snapshots, s.replicas, s.seed, s.options, opts.threads);
  Output o;
  std::ostringstream csv;
  write_ensemble_csv(csv, ens);
  o.csv = csv.str();
  o.result["ensemble"] = to_json(ens);
  const auto fit = poisson_goodness_of_fit(ens.final_arrivals, params.lambda() * t_end);
  o.result["arrivals_fit"] = {{"statistic", fit.statistic},
                              {"degrees_of_freedom", fit.degrees_of_freedom},
                              {"p_value", fit.p_value},
                              {"bins", fit.bins}};
  std::ostringstream summary;
  summary << "simulate: " << s.replicas << " replicas, mean total " << format_double(ens.total_mean.back());
  o.summary = summary.str();
  return o;
}

bool is_two_node_seed(const ModelParams& p) {
  return p.lambda() == 1.0 && p.m() == 1 && p.d0() == 2.0 && p.initial_counts() == std::map<int, double>{{1, 2.0}};
}

Output cmd_compare(const ModelParams& params, Block& block, const Options& opts) {
  static const std::set<std::string> kSources{"closed_form", "ode", "hypergeometric", "krapivsky_redner",
                                              "simulation"};
  const std::string a = block.text("a", std::nullopt);
  const std::string b = block.text("b", std::nullopt);
  for (const auto& [key, name] : {std::pair{"a", a}, std::pair{"b", b}}) {
    if (!kSources.contains(name)) {
      block.fail(key, "unknown source '" + name + "' (expected closed_form|ode|hypergeometric|krapivsky_redner|simulation)");
    }
  }
  if (a == "simulation" && b == "simulation") block.fail("b", "at most one source may be simulation");
  const double tol = block.real("tol", 1e-6);
  if (!(tol >= 0.0)) block.fail("tol", "must be >= 0");
  const int k_max = check_k_max(block, params, 40);
  const auto times = block.times("t");
  const bool hyper = a == "hypergeometric" || b == "hypergeometric";
  const bool report_only = block.flag("report_only", hyper);

  const bool needs_ode = a == "ode" || b == "ode";
  const bool needs_sim = a == "simulation" || b == "simulation";
  OdeConfig ode_cfg;
  if (needs_ode) ode_cfg = read_ode(block, params, "ode_", 400);
  SimSettings sim;
  double min_reference = 1.0;
  if (needs_sim) {
    sim = read_sim(block, opts, 10000);
    min_reference = block.real("min_reference", 1.0);
  }
  if ((a == "krapivsky_redner" || b == "krapivsky_redner") && !is_two_node_seed(params)) {
    throw ConfigError("/params", "the krapivsky_redner source needs lambda = 1, m = 1, d0 = 2, initial_counts {1: 2}");
  }
  block.finish();

  auto build = [&](const std::string& name) -> DegreeTrajectory {
    if (name == "closed_form") return closed_form_trajectory(build_constants(params, k_max), times, k_max);
    if (name == "hypergeometric") {
      try {
        return hypergeometric_trajectory(params, times, k_max);
      } catch (const InputError& e) {
        throw ConfigError("/params", e.what());
      }
    }
    if (name == "krapivsky_redner") return krapivsky_redner_trajectory(times, k_max);
    OdeConfig cfg = ode_cfg;
    cfg.k_max = std::max(cfg.k_max, k_max);
    cfg.t_snapshots = times;
    return integrate(params, cfg);
  };

  ComparisonReport report;
  if (needs_sim) {
    const auto ens = ensemble(params, times.back(), times, sim.replicas, sim.seed, sim.options, opts.threads);
    report = compare_ensemble(ens, build(a == "simulation" ? b : a), tol, min_reference);
  } else {
    report = compare(build(a), build(b), tol);
  }
  if (report_only) {
    report.report_only = true;
    report.notes.push_back("report-only comparison: differences are documented, not asserted");
  }

  Output o;
  std::ostringstream csv;
  write_comparison_csv(csv, report);
  o.csv = csv.str();
  o.text = render_text(report, std::numeric_limits<std::size_t>::max());
  o.result["report"] = to_json(report);
  o.exit_code = report.report_only || report.pass ? kExitOk : kExitTolerance;
  std::ostringstream summary;
  summary << "compare " << report.source_a << " vs " << report.source_b << ": "
          << (report.report_only ? "REPORTED" : (report.pass ? "PASS" : "FAIL"))
          << " max_rel=" << report.max_rel << " tol=" << tol;
  o.summary = summary.str();
  return o;
}

Output cmd_identity(Block& block) {
  const long m = block.integer("m", 1);
  if (m < 1 || m > 1000) block.fail("m", "must be an integer in [1, 1000]");
  const double lambda = block.real("lambda", 1.0);
  if (!(lambda > 0.0)) block.fail("lambda", "must be > 0");
  const double t = block.real("t", std::nullopt);
  if (!(t > 0.0)) block.fail("t", "must be > 0");
  const long j_max = block.integer("j_max", 50);
  if (j_max < 1 || j_max > 100000) block.fail("j_max", "must be an integer in [1, 100000]");
  const double tol = block.real("tol", 1e-6);
  if (!(tol > 0.0)) block.fail("tol", "must be > 0");
  block.finish();

  const auto probe = identity_probe(static_cast<int>(m), lambda, t, static_cast<int>(j_max), tol);
  Output o;
  std::ostringstream csv;
  write_identity_csv(csv, probe);
  o.csv = csv.str();
  o.result["probe"] = to_json(probe);
  o.summary = "identity: lhs=" + format_double(probe.lhs) + " last partial sum=" + format_double(probe.limit_estimate) +
              (probe.converged ? " (converged to lhs)" : " (did not converge to lhs)");
  return o;
}

unsigned resolve_threads(const CLI::App& sub, unsigned flag_value) {
  unsigned threads = sub.count("--threads") ? flag_value : 0;
  if (const char* env = std::getenv("ABNET_THREADS"); env && *env) {
    const std::string s(env);
    if (!std::all_of(s.begin(), s.end(), ::isdigit) || s.size() > 6) {
      throw InputError("ABNET_THREADS must be a non-negative integer (got '" + s + "')");
    }
    threads = static_cast<unsigned>(std::stoul(s));
  }
  return threads;
}

void write_output(const Options& opts, const std::string& format, const std::string& path, const Json& config,
                  const Output& o, std::ostream& out) {
  std::ostringstream doc;
  if (format == "json") {
    Json j;
    j["abnet_version"] = version();
    j["command"] = opts.command;
    j["config"] = config;
    j["result"] = o.result;
    doc << j.dump(2) << '\n';
  } else {
    doc << "# abnet " << version() << '\n' << "# config: " << config.dump() << '\n';
    doc << (format == "text" ? o.text : o.csv);
  }
  if (path.empty() || path == "-") {
    out << doc.str();
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw InputError("cannot open output file '" + path + "'");
  file << doc.str();
  if (!file.flush()) throw InputError("failed writing output file '" + path + "'");
}

int execute(const Options& opts, std::ostream& out, std::ostream& err) {
  ConfigSource source;
  Json root;
  try {
    root = load_config(opts.config_path, source);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  auto located = [&](const ConfigError& e) {
    std::ostringstream os;
    const int line = source.line_of(e.pointer());
    os << source.name;
    if (line > 0) os << ':' << line;
    os << ": " << (e.pointer().empty() ? std::string("/") : e.pointer()) << ": " << e.what();
    return os.str();
  };

  try {
    if (!root.is_object()) throw ConfigError("", "config must be a JSON object");
    if (root.contains("command")) {
      if (!root.at("command").is_string() || root.at("command").get<std::string>() != opts.command) {
        throw ConfigError("/command", "config is for command " + root.at("command").dump() + ", not \"" +
                                          opts.command + "\"");
      }
    }
    for (const auto& [key, value] : root.items()) {
      static const std::set<std::string> kKnown{"command", "params", "solve",    "oracle", "simulate",
                                                "compare", "identity", "output"};
      if (!kKnown.contains(key)) throw ConfigError("/" + key, "unknown top-level key");
    }

    Block output(root, "output", false);
    std::string format = output.text("format", std::string("csv"));
    std::string path = output.has("path") ? output.text("path", std::nullopt) : std::string();
    if (opts.format) format = *opts.format;
    if (opts.out) path = *opts.out;
    if (format != "csv" && format != "json" && format != "text") {
      throw ConfigError(opts.format ? "" : "/output/format", "format must be csv, json or text (got '" + format + "')");
    }
    if (format == "text" && opts.command != "compare") {
      throw ConfigError(opts.format ? "" : "/output/format", "text format is only available for compare");
    }
    output.finish();
    if (opts.seed && opts.command != "simulate" && opts.command != "compare") {
      throw InputError("--seed only applies to simulate and compare");
    }

    Json config;
    config["command"] = opts.command;
    Block block(root, opts.command, opts.command != "identity");
    Output result;
    if (opts.command == "identity") {
      result = cmd_identity(block);
    } else {
      const ModelParams params = read_params(root);
      config["params"] = to_json(params);
      if (opts.command == "solve") result = cmd_solve(params, block);
      if (opts.command == "oracle") result = cmd_oracle(params, block);
      if (opts.command == "simulate") result = cmd_simulate(params, block, opts);
      if (opts.command == "compare") result = cmd_compare(params, block, opts);
      for (const auto& w : params.consistency().warnings) err << "warning: " << w << '\n';
    }
    config[opts.command] = block.resolved();
    config["output"] = {{"format", format}};

    write_output(opts, format, path, config, result, out);
    err << result.summary << '\n';
    return result.exit_code;
  } catch (const ConfigError& e) {
    err << "error: " << located(e) << '\n';
    return kExitInput;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const SimulationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const IntegrationError& e) {
    err << "error: " << e.what() << " (last good time " << format_double(e.last_good_time()) << ")\n";
    return kExitTolerance;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Degree-distribution dynamics of growing preferential-attachment networks", "abnet"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);

  Options opts;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string format;
  unsigned threads = 0;

  const std::vector<std::pair<std::string, std::string>> commands{
      {"solve", "evaluate the explicit solution on a (k, t) grid"},
      {"oracle", "integrate the truncated rate equations"},
      {"simulate", "run seeded stochastic replicas"},
      {"compare", "compare two sources and apply a tolerance"},
      {"identity", "probe the hypergeometric series identity"}};
  std::vector<CLI::App*> subs;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("-c,--config", opts.config_path, "JSON config, or an earlier output file")->required();
    sub->add_option("--seed", seed, "override the base seed");
    sub->add_option("-o,--out", out_path, "output path ('-' for stdout)");
    sub->add_option("--format", format, "csv, json or text");
    sub->add_option("--threads", threads, "worker threads (0 = all cores; ABNET_THREADS takes precedence)");
    subs.push_back(sub);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << version() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << '\n' << "run 'abnet --help' for usage\n";
    return kExitInput;
  }

  for (CLI::App* sub : subs) {
    if (!sub->parsed()) continue;
    opts.command = sub->get_name();
    if (sub->count("--seed")) opts.seed = seed;
    if (sub->count("--out")) opts.out = out_path;
    if (sub->count("--format")) opts.format = format;
    try {
      opts.threads = resolve_threads(*sub, threads);
    } catch (const InputError& e) {
      err << "error: " << e.what() << '\n';
      return kExitInput;
    }
  }
  return execute(opts, out, err);
}

}  // namespace abnet::cli
