#include "mfg/reports.hpp"

namespace mfg {

namespace {

Json number_array(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(x);
  return out;
}

Json number_array(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Json one_based(const std::vector<int>& v) {
  Json out = Json::array();
  for (int x : v) out.push_back(x + 1);
  return out;
}

}  // namespace

Json report_json(const Distribution& m) { return number_array(m.probs()); }

Json report_json(const StationaryStrategy& pi) {
  Json rows = Json::array();
  for (int i = 0; i < pi.states(); ++i) {
    Json row = Json::array();
    for (int a = 0; a < pi.actions(); ++a) row.push_back(pi.weight(i, a));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json report_json(const ValidationReport& report) {
  Json out;
  out["passed"] = report.passed;
  out["beta_ok"] = report.beta_ok;
  out["grid_resolution"] = report.grid_resolution;
  out["grid_points"] = report.grid_points;
  out["worst_violation"] = report.worst_violation;
  if (report.worst_location) {
    const RateViolation& v = *report.worst_location;
    Json loc;
    loc["from"] = v.i + 1;
    loc["to"] = v.j + 1;
    loc["action"] = v.a + 1;
    loc["m"] = number_array(v.m);
    loc["value"] = v.value;
    out["worst_location"] = std::move(loc);
  } else {
    out["worst_location"] = nullptr;
  }
  out["failures"] = report.failures;
  return out;
}

Json report_json(const SearchMetadata& meta) {
  Json out;
  out["stationary_resolution"] = meta.stationary_resolution;
  out["mixed_seed_resolution"] = meta.mixed_seed_resolution;
  out["strategy_cap"] = meta.strategy_cap;
  out["support_budget"] = meta.support_budget;
  out["strategies_examined"] = meta.strategies_examined;
  out["supports_examined"] = meta.supports_examined;
  return out;
}

Json report_json(const Equilibrium& eq) {
  Json out;
  out["kind"] =
      eq.kind == EquilibriumKind::deterministic ? "deterministic" : "mixed";
  out["m"] = report_json(eq.m);
  out["pi"] = report_json(eq.pi);
  Json support = Json::array();
  for (const auto& s : eq.support) support.push_back(one_based(s));
  out["support"] = std::move(support);
  out["stationary_residual_norm"] = eq.stationary_residual_norm;
  out["optimality_margin"] = eq.optimality_margin;
  return out;
}

Json report_json(const EquilibriumSet& set) {
  Json out;
  out["count"] = set.items.size();
  Json items = Json::array();
  for (const auto& eq : set.items) items.push_back(report_json(eq));
  out["items"] = std::move(items);
  out["dedup_radius"] = set.dedup_radius;
  out["continuum_warning"] = set.continuum_warning;
  out["warnings"] = set.warnings;
  out["search"] = report_json(set.search);
  return out;
}

Json report_json(const VerifyReport& report) {
  Json out;
  out["passed"] = report.passed;
  out["optimal"] = report.optimal;
  out["stationary_residual_norm"] = report.stationary_residual_norm;
  out["per_state_margins"] = number_array(report.per_state_margins);
  out["tol"] = report.tol;
  return out;
}

Json report_json(const PerturbationConstants& constants) {
  Json out;
  out["L1"] = constants.L1;
  out["L2"] = constants.L2;
  out["L3"] = constants.L3;
  out["L4"] = constants.L4;
  out["sup_resolvent"] = constants.sup_resolvent;
  out["reward_shift"] = constants.reward_shift;
  out["grid_resolution"] = constants.grid_resolution;
  return out;
}

Json report_json(const PersistenceRadius& radius) {
  Json out;
  out["gamma"] = radius.gamma;
  out["delta"] = radius.delta;
  out["epsilon"] = radius.epsilon;
  out["retries"] = radius.retries;
  out["constants"] = report_json(radius.constants);
  return out;
}

Json report_json(const StationaryCertificate& cert) {
  Json out;
  out["verdict"] = to_string(cert.verdict);
  out["unique_point_criterion"] = cert.unique_point_criterion;
  out["jacobian_criterion"] = cert.jacobian_criterion;
  out["smallest_singular_value"] = cert.smallest_singular_value;
  out["points_found"] = cert.points_found;
  out["continuum"] = cert.continuum;
  if (cert.delta_stationary) {
    out["delta_stationary"] = *cert.delta_stationary;
  } else {
    out["delta_stationary"] = nullptr;
  }
  out["detail"] = cert.detail;
  return out;
}

Json report_json(const CharacterizationReport& report) {
  Json out;
  out["verdict"] = to_string(report.verdict);
  out["strategy_uniqueness"] = to_string(report.strategy_uniqueness);
  out["stationary_point"] = to_string(report.stationary_point);
  out["persistence"] =
      report.persistence ? report_json(*report.persistence) : Json(nullptr);
  out["stationary"] =
      report.stationary ? report_json(*report.stationary) : Json(nullptr);
  out["certified_radius"] = report.certified_radius
                                ? Json(*report.certified_radius)
                                : Json(nullptr);
  out["detail"] = report.detail;
  return out;
}

Json report_json(const UniqueCriterionReport& report) {
  Json out;
  out["verdict"] = to_string(report.verdict);
  out["equilibria_found"] = report.equilibria_found;
  out["continuum_warning"] = report.continuum_warning;
  out["search"] = report_json(report.search);
  return out;
}

Json report_json(const EssentialityReport& report) {
  Json out;
  out["equilibrium"] = report_json(report.equilibrium);
  out["unique_criterion"] = report_json(report.unique);
  out["characterization"] = report_json(report.characterization);
  out["certified_radius"] = report.certified_radius
                                ? Json(*report.certified_radius)
                                : Json(nullptr);
  out["probe"] = report.probe ? report_json(*report.probe) : Json(nullptr);
  return out;
}

Json report_json(const DeltaProbe& probe) {
  Json out;
  out["delta"] = probe.delta;
  out["samples"] = probe.samples;
  out["max_displacement"] = probe.max_displacement;
  out["mean_displacement"] = probe.mean_displacement;
  out["failures"] = probe.failures;
  return out;
}

Json report_json(const ProbeProfile& profile) {
  Json out;
  out["seed"] = profile.seed;
  Json per = Json::array();
  for (const auto& p : profile.per_delta) per.push_back(report_json(p));
  out["per_delta"] = std::move(per);
  return out;
}

Json report_json(const EnsembleGameResult& result) {
  Json out;
  out["game_seed"] = result.game_seed;
  out["equilibria"] = result.equilibria;
  out["continuum"] = result.continuum;
  out["failures"] = result.failures;
  out["max_displacement"] = result.max_displacement;
  out["corroborated"] = result.corroborated;
  return out;
}

Json report_json(const EnsembleReport& report) {
  Json out;
  out["count"] = report.count;
  out["seed"] = report.seed;
  out["epsilon_threshold"] = report.epsilon_threshold;
  out["deltas"] = number_array(report.deltas);
  out["samples_per_delta"] = report.samples_per_delta;
  out["fraction_corroborated"] = report.fraction_corroborated;
  Json games = Json::array();
  for (const auto& g : report.games) games.push_back(report_json(g));
  out["games"] = std::move(games);
  Json injected = Json::array();
  for (const auto& g : report.injected) injected.push_back(report_json(g));
  out["injected"] = std::move(injected);
  out["injected_flagged"] = report.injected_flagged;
  return out;
}

Json report_json(const MonteCarloEstimate& estimate) {
  Json out;
  out["values"] = number_array(estimate.values);
  out["std_errors"] = number_array(estimate.std_errors);
  out["aggregate"] = estimate.aggregate;
  out["aggregate_se"] = estimate.aggregate_se;
  out["truncation_bias_bound"] = estimate.truncation_bias_bound;
  out["horizon"] = estimate.horizon;
  out["paths"] = estimate.paths;
  out["seed"] = estimate.seed;
  return out;
}

}  // namespace mfg
