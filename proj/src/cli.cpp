#include "mfg/cli.hpp"

#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "mfg/equilibrium.hpp"
#include "mfg/essentiality.hpp"
#include "mfg/fixtures.hpp"
#include "mfg/mdp.hpp"
#include "mfg/model_io.hpp"
#include "mfg/reports.hpp"
#include "mfg/rng.hpp"

namespace mfg::cli {

namespace {

struct Output {
  std::string path;            // --out: JSON written here when nonempty
  std::string format = "table";
};

// Writes the JSON report to --out (always, when given) and to stdout when
// --format json; the caller prints the table otherwise.
void emit_json(const Json& doc, const Output& output, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (!output.path.empty()) {
    std::ofstream file(output.path, std::ios::binary);
    if (!file) {
      throw Error(ErrorKind::io, "cannot write report: " + output.path);
    }
    file << text;
  }
  if (output.format == "json") out << text;
}

bool table_mode(const Output& output) { return output.format != "json"; }

// Model arguments accept a file path or a bundled fixture name (ref-1a,
// ref-dom, ref-ind, ref-knife, ref-2x2).
GameModel resolve_model(const std::string& arg) {
  if (auto fx = fixtures::by_name(arg)) return *fx;
  return load_model_file(arg).model;
}

std::string fmt_vector(const std::vector<double>& v) {
  std::ostringstream os;
  os << std::setprecision(6) << "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) os << ", ";
    os << v[i];
  }
  os << ")";
  return os.str();
}

std::string fmt_support(const std::vector<std::vector<int>>& support) {
  std::ostringstream os;
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (i > 0) os << "/";
    if (support[i].size() > 1) os << "{";
    for (std::size_t k = 0; k < support[i].size(); ++k) {
      if (k > 0) os << ",";
      os << support[i][k] + 1;
    }
    if (support[i].size() > 1) os << "}";
  }
  return os.str();
}

void print_equilibria(const EquilibriumSet& set, std::ostream& out) {
  out << "equilibria: " << set.items.size() << " (stationary seeds "
      << set.search.stationary_resolution << ", supports examined "
      << set.search.supports_examined << ")\n";
  for (std::size_t k = 0; k < set.items.size(); ++k) {
    const Equilibrium& eq = set.items[k];
    out << "  [" << k << "] "
        << (eq.kind == EquilibriumKind::deterministic ? "deterministic"
                                                      : "mixed        ")
        << "  m = " << fmt_vector(eq.m.probs())
        << "  support = " << fmt_support(eq.support)
        << "  residual = " << eq.stationary_residual_norm
        << "  margin = " << eq.optimality_margin << "\n";
  }
  if (set.continuum_warning) out << "  continuum warning\n";
  for (const auto& w : set.warnings) out << "  warning: " << w << "\n";
}

int map_error(const Error& e, std::ostream& err) {
  err << "error: " << e.what() << "\n";
  switch (e.kind()) {
    case ErrorKind::schema:
    case ErrorKind::io:
    case ErrorKind::invalid_argument:
      return kExitInput;
    case ErrorKind::cap_exceeded:
      return kExitCap;
    default:
      return kExitNotMet;
  }
}

struct CommonFlags {
  int grid = 0;
  double tol = 0.0;
  std::size_t cap = kStrategyCap;
  std::vector<double> deltas{1e-1, 1e-2, 1e-3};
  int samples = 25;
  std::uint64_t seed = 12345;
  Output output;
};

void add_output_flags(CLI::App* sub, Output& output) {
  sub->add_option("--out", output.path, "Write the JSON report to this file");
  sub->add_option("--format", output.format, "Report format on stdout")
      ->check(CLI::IsMember({"json", "table"}));
}

EquilibriumSearchOptions search_options(const CommonFlags& flags) {
  EquilibriumSearchOptions opts;
  if (flags.grid > 0) opts.stationary_resolution = flags.grid;
  if (flags.tol > 0.0) opts.stationary_tol = flags.tol;
  opts.strategy_cap = flags.cap;
  return opts;
}

int cmd_validate(const std::string& path, const CommonFlags& flags,
                 std::ostream& out) {
  const GameModel model = resolve_model(path);
  const int grid =
      flags.grid > 0 ? flags.grid : default_grid_resolution(model.state_count());
  const ValidationReport report = validate(model, grid);
  emit_json(report_json(report), flags.output, out);
  if (table_mode(flags.output)) {
    out << "validation: " << (report.passed ? "PASS" : "FAIL") << " (grid "
        << report.grid_resolution << ", " << report.grid_points
        << " points)\n";
    out << "  worst rate violation: " << report.worst_violation << "\n";
    for (const auto& f : report.failures) out << "  failure: " << f << "\n";
  }
  return report.passed ? kExitOk : kExitNotMet;
}

int cmd_equilibria(const std::string& path, const CommonFlags& flags,
                   bool no_mixed, int support_budget, std::ostream& out) {
  const GameModel model = resolve_model(path);
  EquilibriumSearchOptions opts = search_options(flags);
  opts.include_mixed = !no_mixed;
  opts.support_budget = support_budget;
  const EquilibriumSet set = find_all_equilibria(model, opts);
  emit_json(report_json(set), flags.output, out);
  if (table_mode(flags.output)) print_equilibria(set, out);
  return set.items.empty() ? kExitEmpty : kExitOk;
}

int cmd_essential(const std::string& path, const CommonFlags& flags,
                  double epsilon, bool with_probe, std::ostream& out) {
  const GameModel model = resolve_model(path);
  EssentialityOptions eopts;
  eopts.search = search_options(flags);
  if (flags.grid > 0) eopts.grid_resolution = flags.grid;
  eopts.epsilon = epsilon;

  const EquilibriumSet set = find_all_equilibria(model, eopts.search);
  if (set.items.empty()) {
    emit_json(Json{{"equilibria", Json::array()}}, flags.output, out);
    if (table_mode(flags.output)) print_equilibria(set, out);
    return kExitEmpty;
  }
  const UniqueCriterionReport unique = check_unique_criterion(model, set);

  bool all_certified = true;
  Json items = Json::array();
  std::ostringstream table;
  for (std::size_t k = 0; k < set.items.size(); ++k) {
    EssentialityReport report{set.items[k], unique,
                              check_characterization(model, set.items[k], eopts),
                              std::nullopt, std::nullopt};
    if (report.characterization.verdict == Verdict::certified) {
      report.certified_radius = report.characterization.certified_radius;
    }
    if (with_probe) {
      const std::uint64_t probe_seed =
          Rng::stream(flags.seed, k, 0xE55).next_u64();
      report.probe = probe(model, set.items[k], flags.deltas, flags.samples,
                           probe_seed, eopts.search);
    }
    const bool certified =
        unique.verdict == Verdict::certified ||
        report.characterization.verdict == Verdict::certified;
    all_certified = all_certified && certified;
    items.push_back(report_json(report));

    table << "  [" << k << "] unique=" << to_string(unique.verdict)
          << " characterization="
          << to_string(report.characterization.verdict);
    if (report.certified_radius) {
      table << " radius=" << *report.certified_radius;
    }
    table << (certified ? "  => certified" : "  => not certified") << "\n";
    if (report.probe) {
      for (const auto& dp : report.probe->per_delta) {
        table << "        delta " << dp.delta << ": max "
              << dp.max_displacement << ", mean " << dp.mean_displacement
              << ", failures " << dp.failures << "\n";
      }
    }
  }
  Json doc;
  doc["all_certified"] = all_certified;
  doc["unique_criterion"] = report_json(unique);
  doc["equilibria"] = std::move(items);
  emit_json(doc, flags.output, out);
  if (table_mode(flags.output)) {
    out << "essentiality: "
        << (all_certified ? "all certified" : "not all certified") << " ("
        << set.items.size() << " equilibria)\n";
    out << table.str();
  }
  return all_certified ? kExitOk : kExitNotMet;
}

int cmd_probe(const std::string& path, const CommonFlags& flags, int index,
              std::ostream& out) {
  const GameModel model = resolve_model(path);
  const EquilibriumSearchOptions opts = search_options(flags);
  const EquilibriumSet set = find_all_equilibria(model, opts);
  if (set.items.empty()) return kExitEmpty;
  if (index < 0 || static_cast<std::size_t>(index) >= set.items.size()) {
    throw Error(ErrorKind::invalid_argument,
                "probe: --index out of range (the set has " +
                    std::to_string(set.items.size()) + " items)");
  }
  const Equilibrium& eq = set.items[static_cast<std::size_t>(index)];
  const ProbeProfile profile =
      probe(model, eq, flags.deltas, flags.samples, flags.seed, opts);
  Json doc;
  doc["index"] = index;
  doc["equilibrium"] = report_json(eq);
  doc["profile"] = report_json(profile);
  emit_json(doc, flags.output, out);
  if (table_mode(flags.output)) {
    out << "probe of equilibrium " << index
        << " m = " << fmt_vector(eq.m.probs()) << " (seed " << flags.seed
        << ")\n";
    out << "  delta        samples  max           mean          failures\n";
    for (const auto& dp : profile.per_delta) {
      out << "  " << std::left << std::setw(12) << dp.delta << " "
          << std::setw(8) << dp.samples << " " << std::setw(13)
          << dp.max_displacement << " " << std::setw(13)
          << dp.mean_displacement << " " << dp.failures << "\n"
          << std::right;
    }
  }
  return kExitOk;
}

int cmd_ensemble(const std::string& spec_path, const CommonFlags& flags,
                 int count, double epsilon,
                 const std::vector<std::string>& inject, std::ostream& out) {
  const FamilySpec spec = load_family_spec_file(spec_path);
  EnsembleOptions opts;
  opts.deltas = flags.deltas;
  opts.samples_per_delta = flags.samples;
  opts.epsilon_threshold = epsilon;
  opts.search = search_options(flags);
  for (const auto& name : inject) opts.injected.push_back(resolve_model(name));
  const EnsembleReport report =
      ensemble_genericity_study(spec, count, flags.seed, opts);
  emit_json(report_json(report), flags.output, out);
  if (table_mode(flags.output)) {
    out << "ensemble: " << report.count << " games, fraction corroborated "
        << report.fraction_corroborated << "\n";
    for (std::size_t g = 0; g < report.games.size(); ++g) {
      const auto& r = report.games[g];
      out << "  game " << g << ": equilibria " << r.equilibria
          << (r.continuum ? " (continuum)" : "") << ", max displacement "
          << r.max_displacement << ", failures " << r.failures << " => "
          << (r.corroborated ? "corroborated" : "flagged") << "\n";
    }
    for (std::size_t g = 0; g < report.injected.size(); ++g) {
      const auto& r = report.injected[g];
      out << "  injected " << g << ": equilibria " << r.equilibria
          << ", max displacement " << r.max_displacement << " => "
          << (r.corroborated ? "corroborated" : "flagged") << "\n";
    }
  }
  return kExitOk;
}

int cmd_distance(const std::string& path_a, const std::string& path_b,
                 const CommonFlags& flags, std::ostream& out) {
  const GameModel a = resolve_model(path_a);
  const GameModel b = resolve_model(path_b);
  const int grid =
      flags.grid > 0 ? flags.grid : default_grid_resolution(a.state_count());
  const double d = game_distance(a, b, grid);
  Json doc;
  doc["distance"] = d;
  doc["grid_resolution"] = grid;
  emit_json(doc, flags.output, out);
  if (table_mode(flags.output)) {
    out << "distance: " << std::setprecision(17) << d << " (grid " << grid
        << ")\n";
  }
  return kExitOk;
}

int cmd_mc_check(const std::string& path, const CommonFlags& flags,
                 const std::vector<int>& actions_arg,
                 const std::vector<double>& m_arg,
                 const std::vector<double>& x0_arg, double horizon,
                 std::ostream& out) {
  const GameModel model = resolve_model(path);
  const int S = model.state_count();

  DeterministicStrategy d;
  if (actions_arg.empty()) {
    d.actions.assign(static_cast<std::size_t>(S), 0);
  } else {
    if (static_cast<int>(actions_arg.size()) != S) {
      throw Error(ErrorKind::invalid_argument,
                  "--actions needs one action per state");
    }
    for (int a : actions_arg) {
      if (a < 1 || a > model.action_count()) {
        throw Error(ErrorKind::invalid_argument,
                    "--actions entries must be in 1.." +
                        std::to_string(model.action_count()));
      }
      d.actions.push_back(a - 1);
    }
  }
  const Distribution m =
      m_arg.empty() ? Distribution::uniform(S) : Distribution(m_arg);
  const Distribution x0 =
      x0_arg.empty() ? Distribution::uniform(S) : Distribution(x0_arg);
  const StationaryStrategy pi =
      StationaryStrategy::from_deterministic(d, model.action_count());

  const ValueVector v = value_of_deterministic(model, d, m);
  const double t = horizon > 0.0 ? horizon : default_horizon(model, pi, m);
  const MonteCarloEstimate est =
      monte_carlo_value(model, pi, m, x0, t, flags.samples, flags.seed);

  bool passed = true;
  Json per_state = Json::array();
  for (int i = 0; i < S; ++i) {
    const double diff = std::abs(est.values[i] - v[i]);
    const double bound = 3.0 * est.std_errors[i] + est.truncation_bias_bound;
    const bool ok = diff <= bound;
    passed = passed && ok;
    Json row;
    row["state"] = i + 1;
    row["linear"] = v[i];
    row["mc"] = est.values[i];
    row["std_error"] = est.std_errors[i];
    row["pass"] = ok;
    per_state.push_back(std::move(row));
  }
  Json doc;
  doc["passed"] = passed;
  doc["per_state"] = std::move(per_state);
  doc["estimate"] = report_json(est);
  emit_json(doc, flags.output, out);
  if (table_mode(flags.output)) {
    out << "mc-check: " << (passed ? "PASS" : "FAIL") << " (" << flags.samples
        << " paths, horizon " << t << ", bias bound "
        << est.truncation_bias_bound << ")\n";
    for (int i = 0; i < S; ++i) {
      out << "  state " << i + 1 << ": linear " << v[i] << ", mc "
          << est.values[i] << " +- " << est.std_errors[i] << "\n";
    }
  }
  return passed ? kExitOk : kExitNotMet;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.push_back("mfg");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(argv_storage.size());
  for (const auto& s : argv_storage) argv.push_back(s.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{
      "Stationary equilibria of finite mean field games and their "
      "robustness certificates"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string model_path;
  std::string model_path_b;
  bool no_mixed = false;
  int support_budget = 4;
  double epsilon = 0.05;
  bool with_probe = false;
  int index = 0;
  int count = 20;
  std::vector<std::string> inject;
  std::vector<int> actions_arg;
  std::vector<double> m_arg;
  std::vector<double> x0_arg;
  double horizon = 0.0;

  auto add_common = [&](CLI::App* sub, bool seeded) {
    sub->add_option("--grid", flags.grid, "Simplex grid resolution (0: auto)");
    sub->add_option("--tol", flags.tol, "Stationarity tolerance (0: auto)");
    sub->add_option("--cap", flags.cap, "Strategy enumeration cap");
    if (seeded) sub->add_option("--seed", flags.seed, "Random seed");
    add_output_flags(sub, flags.output);
  };
  auto add_model_arg = [&](CLI::App* sub) {
    sub->add_option("model", model_path, "Model file or fixture name")
        ->required();
  };

  CLI::App* validate_cmd =
      app.add_subcommand("validate", "Check generator and discount validity");
  add_model_arg(validate_cmd);
  add_common(validate_cmd, false);

  CLI::App* equilibria_cmd = app.add_subcommand(
      "equilibria", "Find stationary equilibria (deterministic and mixed)");
  add_model_arg(equilibria_cmd);
  add_common(equilibria_cmd, false);
  equilibria_cmd->add_flag("--no-mixed", no_mixed,
                           "Skip the mixed support enumeration");
  equilibria_cmd->add_option("--support-budget", support_budget,
                             "Max sum of (support size - 1) per state");

  CLI::App* essential_cmd = app.add_subcommand(
      "essential", "Certify equilibria as essential where possible");
  add_model_arg(essential_cmd);
  add_common(essential_cmd, true);
  essential_cmd->add_option("--epsilon", epsilon,
                            "Ball radius for the persistence analysis");
  essential_cmd->add_flag("--probe", with_probe,
                          "Attach a perturbation probe per equilibrium");
  essential_cmd->add_option("--deltas", flags.deltas,
                            "Probe radii, strictly decreasing")
      ->delimiter(',');
  essential_cmd->add_option("--samples", flags.samples,
                            "Probe samples per delta");

  CLI::App* probe_cmd = app.add_subcommand(
      "probe", "Sample perturbed games and measure equilibrium displacement");
  add_model_arg(probe_cmd);
  add_common(probe_cmd, true);
  probe_cmd->add_option("--index", index, "Equilibrium index to probe");
  probe_cmd->add_option("--deltas", flags.deltas,
                        "Perturbation radii, strictly decreasing")
      ->delimiter(',');
  probe_cmd->add_option("--samples", flags.samples, "Samples per delta");

  CLI::App* ensemble_cmd = app.add_subcommand(
      "ensemble", "Probe every equilibrium of sampled random games");
  ensemble_cmd
      ->add_option("family", model_path, "Family specification file")
      ->required();
  add_common(ensemble_cmd, true);
  ensemble_cmd->add_option("--count", count, "Number of games to sample");
  ensemble_cmd->add_option("--samples", flags.samples,
                           "Probe samples per delta");
  ensemble_cmd->add_option("--deltas", flags.deltas,
                           "Probe radii, strictly decreasing")
      ->delimiter(',');
  ensemble_cmd->add_option("--epsilon", epsilon,
                           "Displacement threshold for corroboration");
  ensemble_cmd->add_option("--inject", inject,
                           "Extra model files or fixtures run alongside");

  CLI::App* distance_cmd = app.add_subcommand(
      "distance", "Sup-norm game distance between two models");
  distance_cmd->add_option("model_a", model_path, "First model")->required();
  distance_cmd->add_option("model_b", model_path_b, "Second model")
      ->required();
  add_common(distance_cmd, false);

  CLI::App* mc_cmd = app.add_subcommand(
      "mc-check", "Cross-validate the linear value solve by simulation");
  add_model_arg(mc_cmd);
  add_common(mc_cmd, true);
  mc_cmd->add_option("--actions", actions_arg,
                     "Deterministic strategy, one 1-based action per state")
      ->delimiter(',');
  mc_cmd->add_option("--m", m_arg, "Population distribution (default uniform)")
      ->delimiter(',');
  mc_cmd->add_option("--x0", x0_arg, "Start distribution (default uniform)")
      ->delimiter(',');
  mc_cmd->add_option("--horizon", horizon, "Simulation horizon (0: auto)");
  mc_cmd->add_option("--samples", flags.samples, "Simulated paths")
      ->default_val(20000);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (app.got_subcommand(validate_cmd)) {
      return cmd_validate(model_path, flags, out);
    }
    if (app.got_subcommand(equilibria_cmd)) {
      return cmd_equilibria(model_path, flags, no_mixed, support_budget, out);
    }
    if (app.got_subcommand(essential_cmd)) {
      return cmd_essential(model_path, flags, epsilon, with_probe, out);
    }
    if (app.got_subcommand(probe_cmd)) {
      return cmd_probe(model_path, flags, index, out);
    }
    if (app.got_subcommand(ensemble_cmd)) {
      return cmd_ensemble(model_path, flags, count, epsilon, inject, out);
    }
    if (app.got_subcommand(distance_cmd)) {
      return cmd_distance(model_path, model_path_b, flags, out);
    }
    if (app.got_subcommand(mc_cmd)) {
      return cmd_mc_check(model_path, flags, actions_arg, m_arg, x0_arg,
                          horizon, out);
    }
  } catch (const Error& e) {
    return map_error(e, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNotMet;
  }
  return kExitInput;
}

}  // namespace mfg::cli
