// qcantor: command-line driver for coherence checks, test evaluation, the
// classical<->quantum bridge, compression experiments and entropy reports.
//
// Exit codes: 0 = success / property holds, 1 = property violated or verdict
// negative, 2 = usage or configuration error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qcantor/scenarios.hpp"

namespace {

using namespace qcantor;

struct Options {
  std::string config_path;
  std::string out_path;
  std::string format = "json";
  int depth = -1;
  std::vector<std::string> deltas;
  double epsilon = -1;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

int max_qubits_cap() {
  if (const char* env = std::getenv("QCANTOR_MAX_QUBITS")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      throw ParseError("QCANTOR_MAX_QUBITS is not an integer");
    }
  }
  return kDefaultMaxQubits;
}

Json load_config(const Options& opt) {
  Json cfg = Json::object();
  if (!opt.config_path.empty()) {
    std::ifstream in(opt.config_path);
    if (!in) throw ParseError("cannot open config file: " + opt.config_path);
    try {
      in >> cfg;
    } catch (const Json::exception& e) {
      throw ParseError(std::string("config is not valid JSON: ") + e.what());
    }
  }
  if (opt.depth >= 0) cfg["depth"] = opt.depth;
  if (!opt.deltas.empty()) cfg["deltas"] = opt.deltas;
  if (opt.epsilon >= 0) cfg["epsilon"] = opt.epsilon;
  if (opt.seed_set) cfg["seed"] = opt.seed;
  cfg["format"] = opt.format;
  return cfg;
}

int config_depth(const Json& cfg, int fallback) {
  const int depth = cfg.value("depth", fallback);
  const int cap = max_qubits_cap();
  if (depth > cap)
    throw ParseError("depth cap exceeded: " + std::to_string(depth) + " > " + std::to_string(cap));
  if (depth < 0) throw ParseError("a nonnegative depth is required");
  return depth;
}

std::vector<Rational> config_deltas(const Json& cfg) {
  std::vector<Rational> deltas;
  if (cfg.contains("deltas"))
    for (const auto& d : cfg.at("deltas"))
      deltas.push_back(d.is_string() ? parse_rational(d.get<std::string>()) : parse_rational(d.dump()));
  else if (cfg.contains("delta"))
    deltas.push_back(cfg.at("delta").is_string() ? parse_rational(cfg.at("delta").get<std::string>())
                                                 : parse_rational(cfg.at("delta").dump()));
  return deltas;
}

void emit(const Options& opt, const std::string& text) {
  if (opt.out_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(opt.out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot open output file: " + opt.out_path);
  out << text << "\n";
}

Json envelope(const std::string& command, Json cfg, Json result) {
  cfg.erase("format"); // presentation-only; keeps reports byte-comparable
  return Json{{"command", command},
              {"config", std::move(cfg)},
              {"version", kVersion},
              {"tolerances", Json{{"tol_eig", kTolEig}, {"tol_entry", kTolEntry}}},
              {"result", std::move(result)}};
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_prologue(const Json& report) {
  std::ostringstream out;
  out << "# command," << report.at("command").get<std::string>() << "\n";
  out << "# version," << report.at("version").get<std::string>() << "\n";
  out << "# tolerances," << csv_escape(report.at("tolerances").dump()) << "\n";
  out << "# config," << csv_escape(report.at("config").dump()) << "\n";
  return out.str();
}

std::string number_to_csv(const Json& v) { return v.dump(); }

// ---- subcommand implementations ---------------------------------------------

int cmd_coherence(const Options& opt, const Json& cfg) {
  const CoherentState state = state_from_json(cfg.at("state"));
  const int depth = config_depth(cfg, state.max_depth());
  const CoherenceReport report = check_coherence(state, depth);
  const bool ok = report.all_within(kTolEig);
  Json result = coherence_report_to_json(report);
  result["ok"] = ok;
  const Json rep = envelope("coherence", cfg, std::move(result));
  if (opt.format == "csv") {
    std::ostringstream out;
    out << csv_prologue(rep) << "n,deviation,exact_zero\n";
    for (const auto& l : report.levels)
      out << l.n << "," << number_to_csv(Json(l.deviation)) << "," << (l.exact_zero ? 1 : 0) << "\n";
    emit(opt, out.str());
  } else {
    emit(opt, rep.dump(2));
  }
  return ok ? 0 : 1;
}

int cmd_test_eval(const Options& opt, const Json& cfg) {
  const CoherentState state = state_from_json(cfg.at("state"));
  const Json& test_spec = cfg.at("test");
  const std::string kind = test_spec.value("kind", "qml");
  const int depth = config_depth(cfg, state.max_depth());
  std::vector<Rational> deltas = config_deltas(cfg);
  if (deltas.empty()) deltas.push_back(rational(1, 2));

  std::vector<double> values;
  std::vector<double> masses;
  bool solovay = false;
  if (kind == "solovay") {
    solovay = true;
    const SolovayTest test = solovay_test_from_json(test_spec);
    values = evaluate_test(state, test, depth);
    for (const auto& g : test.levels) masses.push_back(sigma1_mass(g, depth));
  } else {
    const QMLTest test = qml_test_from_json(test_spec);
    values = evaluate_test(state, test, depth);
    for (int r = 0; r < test.max_levels(); ++r) masses.push_back(sigma1_mass(test.level_set(r), depth));
  }

  Json levels = Json::array();
  for (std::size_t r = 0; r < values.size(); ++r)
    levels.push_back(Json{{"r", r}, {"value", values[r]}, {"mass", masses[r]}});
  Json verdicts = Json::array();
  bool any_fails = false;
  for (const auto& delta : deltas) {
    const Verdict v = solovay ? solovay_verdict(values, to_double(delta), cfg.value("solovay_threshold", 1))
                              : ml_verdict(values, to_double(delta));
    any_fails = any_fails || v.fails;
    verdicts.push_back(verdict_to_json(v));
  }
  Json result{{"depth", depth}, {"levels", std::move(levels)}, {"verdicts", std::move(verdicts)}};
  const Json rep = envelope("test-eval", cfg, std::move(result));
  if (opt.format == "csv") {
    std::ostringstream out;
    out << csv_prologue(rep) << "row,r,value,mass,delta,fails,witness\n";
    for (std::size_t r = 0; r < values.size(); ++r)
      out << "level," << r << "," << number_to_csv(Json(values[r])) << "," << number_to_csv(Json(masses[r]))
          << ",,,\n";
    for (const auto& v : rep.at("result").at("verdicts"))
      out << "verdict,,,," << number_to_csv(v.at("delta")) << ","
          << (v.at("fails_at_order_delta_up_to_depth").get<bool>() ? 1 : 0) << ","
          << (v.contains("passes_witnessed_at_level") ? v.at("passes_witnessed_at_level").dump() : "")
          << "\n";
    emit(opt, out.str());
  } else {
    emit(opt, rep.dump(2));
  }
  return any_fails ? 1 : 0;
}

int cmd_bridge(const Options& opt, const Json& cfg) {
  const QMLTest test = qml_test_from_json(cfg.at("test"));
  std::vector<Rational> deltas = config_deltas(cfg);
  if (deltas.size() != 1) throw ParseError("bridge requires exactly one delta");
  const int depth = config_depth(cfg, -1);

  std::optional<ClassicalSequence> z;
  std::optional<CoherentState> state;
  if (cfg.contains("state")) {
    state = state_from_json(cfg.at("state"));
    if (cfg.at("state").at("kind") == "bits")
      z = ClassicalSequence::from_pattern(cfg.at("state").at("params").at("pattern").get<std::string>(),
                                          state->max_depth());
  }

  Json result;
  int exit_code = 0;
  try {
    const ClassicalMLTest derived = derive_classical_test(test, deltas.front(), depth);
    result = classical_test_to_json(derived);
    if (state) {
      const Verdict v = ml_verdict(evaluate_test(*state, test, depth), to_double(deltas.front()));
      result["state_fails_test"] = v.fails;
      if (z) {
        Json coverage = Json::array();
        bool all_covered = true;
        for (const auto& level : derived.levels) {
          const bool covered = level_covers(level, *z);
          all_covered = all_covered && covered;
          coverage.push_back(Json{{"r", level.r}, {"covered", covered}});
        }
        result["coverage"] = std::move(coverage);
        if (v.fails) {
          result["coverage_obligation_met"] = all_covered;
          if (!all_covered) exit_code = 1;
        } else {
          result["note"] = "state passes the test at this order; no coverage obligation";
        }
      }
    }
  } catch (const MassBoundError& e) {
    result = Json{{"error", "mass bound violated"}, {"detail", e.what()}};
    exit_code = 1;
  }
  const Json rep = envelope("bridge", cfg, std::move(result));
  if (opt.format == "csv") {
    std::ostringstream out;
    out << csv_prologue(rep) << "r,measure,measure_bound\n";
    if (rep.at("result").contains("levels"))
      for (const auto& level : rep.at("result").at("levels"))
        out << level.at("r").get<int>() << "," << level.at("measure").get<std::string>() << ","
            << level.at("measure_bound").get<std::string>() << "\n";
    emit(opt, out.str());
  } else {
    emit(opt, rep.dump(2));
  }
  return exit_code;
}

std::function<int(int)> f_from_json(const Json& spec) {
  const std::string name = spec.value("name", "two_log");
  if (name == "two_log")
    return [](int n) {
      int bits = 0;
      while ((1 << bits) < n + 2) ++bits;
      return 2 * bits;
    };
  if (name == "table") {
    std::map<int, int> table;
    if (spec.contains("values"))
      for (const auto& [key, value] : spec.at("values").items()) table[std::stoi(key)] = value.get<int>();
    const int offset = spec.value("offset", 0);
    return [table, offset](int n) {
      auto it = table.find(n);
      return it == table.end() ? n + offset : it->second;
    };
  }
  throw ParseError("unknown f spec: " + name);
}

int cmd_compress(const Options& opt, const Json& cfg) {
  const std::string mode = cfg.value("mode", "qc");
  Json result;
  int exit_code = 0;
  if (mode == "qc") {
    const int depth = config_depth(cfg, -1);
    const UnitaryMachine machine =
        cfg.contains("machine") ? machine_from_json(cfg.at("machine")) : UnitaryMachine::identity(depth);
    DensityMatrix target = cfg.contains("target") ? DensityMatrix(matrix_from_json(cfg.at("target")))
                                                  : state_from_json(cfg.at("state")).level(depth);
    const double eps = cfg.at("epsilon").get<double>();
    const StateDictionary dict = dictionary_from_json(cfg.value("dictionary", Json::object()));
    const CompressionRecord record = qc_complexity(machine, target, eps, dict);
    result = Json{{"mode", "qc"}, {"record", compression_record_to_json(record)}};
  } else if (mode == "part2") {
    const StrongSolovayTest test = strong_solovay_test_from_json(cfg.at("test"));
    const CoherentState state = state_from_json(cfg.at("state"));
    const double eps = cfg.at("epsilon").get<double>();
    const SolovayMachine plan = solovay_to_machine(test);
    Json records = Json::array();
    if (cfg.contains("r")) {
      records.push_back(
          compression_record_to_json(compress_via_test(state, test, plan, cfg.at("r").get<int>(), eps)));
    } else {
      for (int r = 0; r < static_cast<int>(test.items.size()); ++r)
        records.push_back(compression_record_to_json(compress_via_test(state, test, plan, r, eps)));
    }
    Json fvals = Json::object();
    for (int n : plan.grid) fvals[std::to_string(n)] = plan.f(n);
    result = Json{{"mode", "part2"}, {"records", std::move(records)}, {"f", std::move(fvals)}};
  } else if (mode == "part1") {
    const int depth = config_depth(cfg, -1);
    const UnitaryMachine machine = cfg.contains("machine") ? machine_from_json(cfg.at("machine"))
                                                           : UnitaryMachine::identity(std::max(depth, 14));
    const StateDictionary dict = dictionary_from_json(cfg.value("dictionary", Json::object()));
    const auto f = f_from_json(cfg.value("f", Json::object()));
    const int max_r = cfg.value("max_r", 4);
    Json rows = Json::array();
    bool bounds_ok = true;
    for (int r = 0; r <= max_r; ++r) {
      const Rational mass = part1_mass(machine, f, dict, r, depth);
      const bool ok = mass <= pow2(-r);
      bounds_ok = bounds_ok && ok;
      rows.push_back(Json{{"r", r},
                          {"t", depth},
                          {"mass", rational_to_string(mass)},
                          {"bound", rational_to_string(pow2(-r))},
                          {"ok", ok}});
    }
    result = Json{{"mode", "part1"},
                  {"f_mass_sum", rational_to_string(part1_f_mass_sum(f, depth))},
                  {"levels", std::move(rows)},
                  {"bounds_ok", bounds_ok}};
    if (!bounds_ok) exit_code = 1;
  } else {
    throw ParseError("unknown compress mode: " + mode);
  }
  const Json rep = envelope("compress", cfg, std::move(result));
  if (opt.format == "csv") {
    std::ostringstream out;
    out << csv_prologue(rep) << "n,k,achieved_distance\n";
    const Json& res = rep.at("result");
    if (res.contains("record")) {
      const Json& r = res.at("record");
      out << r.at("n").get<int>() << "," << r.at("k").get<int>() << ","
          << number_to_csv(r.at("achieved_distance")) << "\n";
    } else if (res.contains("records")) {
      for (const auto& r : res.at("records"))
        out << r.at("n").get<int>() << "," << r.at("k").get<int>() << ","
            << number_to_csv(r.at("achieved_distance")) << "\n";
    }
    emit(opt, out.str());
  } else {
    emit(opt, rep.dump(2));
  }
  return exit_code;
}

int cmd_entropy(const Options& opt, const Json& cfg) {
  const CoherentState psi = state_from_json(cfg.at("state"));
  const int depth = config_depth(cfg, psi.max_depth());
  EntropyReport report;
  if (cfg.contains("state2")) {
    const CoherentState rho = state_from_json(cfg.at("state2"));
    report = cross_entropy_profile(rho, psi, depth);
  } else {
    report = entropy_rate(psi, depth);
  }
  const Json rep = envelope("entropy", cfg, entropy_report_to_json(report));
  if (opt.format == "csv") {
    std::ostringstream out;
    out << csv_prologue(rep) << "n,H_n,rate_n,cross_entropy_n\n";
    for (const auto& row : report.rows) {
      out << row.n << "," << number_to_csv(Json(row.h)) << "," << number_to_csv(Json(row.rate)) << ",";
      if (row.cross) out << number_to_csv(Json(*row.cross));
      out << "\n";
    }
    emit(opt, out.str());
  } else {
    emit(opt, rep.dump(2));
  }
  return 0;
}

int cmd_demo(const Options& opt, const Json& cfg) {
  const std::uint64_t seed = cfg.value("seed", std::uint64_t{20260810});
  const auto results = run_scenario_suite(seed);
  Json cfg_echo = cfg;
  cfg_echo["seed"] = seed;
  const Json rep = envelope("demo", std::move(cfg_echo), scenario_suite_to_json(results));
  if (opt.format == "csv") {
    std::ostringstream out;
    out << csv_prologue(rep) << "id,name,pass\n";
    for (const auto& r : results) out << r.id << "," << csv_escape(r.name) << "," << (r.pass ? 1 : 0) << "\n";
    emit(opt, out.str());
  } else {
    emit(opt, rep.dump(2));
  }
  for (const auto& r : results)
    if (!r.pass) return 1;
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum Martin-Löf randomness workbench"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--config", opt.config_path, "JSON config file")->expected(1);
  app.add_option("--depth", opt.depth, "number of qubits / prefix length");
  app.add_option("--delta", opt.deltas, "test order delta (rational like 1/2, repeatable)");
  app.add_option("--epsilon", opt.epsilon, "accuracy parameter in (0,1)");
  app.add_option("--seed", opt.seed, "RNG seed for fixture generation")->each([&](const std::string&) {
    opt.seed_set = true;
  });
  app.add_option("--format", opt.format, "report format: json|csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", opt.out_path, "report output path (default stdout)");

  auto* coherence = app.add_subcommand("coherence", "check the coherence condition of a state");
  auto* test_eval = app.add_subcommand("test-eval", "evaluate a randomness test against a state");
  auto* bridge = app.add_subcommand("bridge", "extract a classical ML test from a quantum test");
  auto* compress = app.add_subcommand("compress", "quantum Kolmogorov complexity experiments");
  auto* entropy = app.add_subcommand("entropy", "von Neumann entropy statistics");
  auto* demo = app.add_subcommand("demo", "run the full acceptance scenario suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const Json cfg = load_config(opt);
    if (coherence->parsed()) return cmd_coherence(opt, cfg);
    if (test_eval->parsed()) return cmd_test_eval(opt, cfg);
    if (bridge->parsed()) return cmd_bridge(opt, cfg);
    if (compress->parsed()) return cmd_compress(opt, cfg);
    if (entropy->parsed()) return cmd_entropy(opt, cfg);
    if (demo->parsed()) return cmd_demo(opt, cfg);
    std::cerr << "no subcommand given\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidArgumentError& e) {
    std::cerr << "argument error: " << e.what() << "\n";
    return 2;
  } catch (const DepthExceededError& e) {
    std::cerr << "depth error: " << e.what() << "\n";
    return 2;
  } catch (const DimensionMismatchError& e) {
    std::cerr << "dimension error: " << e.what() << "\n";
    return 2;
  } catch (const BackendMismatchError& e) {
    std::cerr << "backend error: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
}
