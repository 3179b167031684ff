#include "mfg/essentiality.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "mfg/parallel.hpp"
#include "mfg/rng.hpp"
#include "mfg/simplex.hpp"

namespace mfg {

namespace {

double inf_norm(const Eigen::MatrixXd& mat) {
  return mat.cwiseAbs().rowwise().sum().maxCoeff();
}

GameModel shift_rewards(const GameModel& model, double shift) {
  const int S = model.state_count();
  const int A = model.action_count();
  std::vector<PolynomialField> rates;
  rates.reserve(static_cast<std::size_t>(S) * S * A);
  for (int i = 0; i < S; ++i) {
    for (int j = 0; j < S; ++j) {
      for (int a = 0; a < A; ++a) rates.push_back(model.rate_poly(i, j, a));
    }
  }
  std::vector<PolynomialField> rewards;
  rewards.reserve(static_cast<std::size_t>(S) * A);
  for (int i = 0; i < S; ++i) {
    for (int a = 0; a < A; ++a) {
      PolynomialField p = model.reward_poly(i, a);
      p.shift_constant(shift);
      rewards.push_back(std::move(p));
    }
  }
  return GameModel(S, A, model.discount(), std::move(rates),
                   std::move(rewards));
}

// |Qtilde(m)^{-1}| for the invariant-distribution system of Q^d(m):
// transpose with the last balance equation replaced by normalization.
double invariant_inverse_norm(const GameModel& model,
                              const DeterministicStrategy& d,
                              std::span<const double> m) {
  const int S = model.state_count();
  Eigen::MatrixXd q(S, S);
  for (int i = 0; i < S; ++i) {
    for (int j = 0; j < S; ++j) {
      q(i, j) = model.rate_poly(i, j, d[i]).eval(m);
    }
  }
  Eigen::MatrixXd qt = q.transpose();
  qt.row(S - 1).setOnes();
  const Eigen::MatrixXd inv = qt.inverse();
  if (!inv.allFinite()) {
    throw Error(ErrorKind::singular,
                "invariant-distribution matrix is singular");
  }
  return inf_norm(inv);
}

int effective_grid(const EssentialityOptions& opts, int states) {
  return opts.grid_resolution > 0 ? opts.grid_resolution
                                  : default_grid_resolution(states);
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::certified:
      return "certified";
    case Verdict::not_certified:
      return "not-certified";
    case Verdict::inapplicable:
      return "inapplicable";
  }
  return "unknown";
}

PerturbationConstants perturbation_constants(const GameModel& model,
                                             int grid_resolution) {
  if (grid_resolution < 1) {
    throw Error(ErrorKind::invalid_argument,
                "perturbation_constants: grid_resolution < 1");
  }
  const int S = model.state_count();
  const int A = model.action_count();
  const double beta = model.discount();
  const auto grid = simplex_grid(S, grid_resolution);

  double inf_reward = std::numeric_limits<double>::infinity();
  for (const auto& m : grid) {
    for (int i = 0; i < S; ++i) {
      for (int a = 0; a < A; ++a) {
        inf_reward = std::min(inf_reward, model.reward_poly(i, a).eval(m));
      }
    }
  }
  const double shift = inf_reward > 0.0 ? 0.0 : -inf_reward + 1.0;
  const GameModel work = shift == 0.0 ? model : shift_rewards(model, shift);

  const auto strategies = enumerate_strategies(S, A, kStrategyCap);
  double inf_m_norm = std::numeric_limits<double>::infinity();
  double sup_m_norm = 0.0;
  double sup_inv_norm = 0.0;
  double inf_r_norm = std::numeric_limits<double>::infinity();
  double sup_v_norm = 0.0;

  for (const auto& m : grid) {
    const Distribution dist(m);
    for (const DeterministicStrategy& d : strategies) {
      const Eigen::MatrixXd lhs =
          beta * Eigen::MatrixXd::Identity(S, S) - generator_for(work, d, dist);
      const Eigen::MatrixXd inv = lhs.inverse();
      const Eigen::VectorXd r = reward_for(work, d, dist);
      const Eigen::VectorXd v = value_of_deterministic(work, d, dist);
      if (!inv.allFinite()) {
        throw Error(ErrorKind::singular,
                    "perturbation_constants: singular value system");
      }
      inf_m_norm = std::min(inf_m_norm, inf_norm(lhs));
      sup_m_norm = std::max(sup_m_norm, inf_norm(lhs));
      sup_inv_norm = std::max(sup_inv_norm, inf_norm(inv));
      inf_r_norm = std::min(inf_r_norm, r.cwiseAbs().maxCoeff());
      sup_v_norm = std::max(sup_v_norm, v.cwiseAbs().maxCoeff());
    }
  }

  PerturbationConstants c;
  c.L1 = 0.99 * inf_m_norm;
  c.sup_resolvent = 1.01 * sup_inv_norm;
  c.L2 = 1.01 * sup_m_norm * c.sup_resolvent;
  c.L3 = 0.99 * inf_r_norm;
  c.L4 = 1.01 * sup_v_norm;
  c.reward_shift = shift;
  c.grid_resolution = grid_resolution;
  if (!(c.L1 > 0.0) || !(c.L3 > 0.0) || !(c.L4 > 0.0) ||
      !std::isfinite(c.L2)) {
    throw Error(ErrorKind::singular,
                "perturbation_constants: degenerate constants");
  }
  return c;
}

double certified_delta(const GameModel& model, double gamma,
                       const PerturbationConstants& c) {
  if (!(gamma > 0.0)) {
    throw Error(ErrorKind::invalid_argument, "certified_delta: gamma <= 0");
  }
  const double S = static_cast<double>(model.state_count());
  const double branch_resolvent = 1.0 / (2.0 * S * c.sup_resolvent);
  const double branch_gamma =
      gamma * c.L1 * c.L3 / (2.0 * c.L2 * c.L4 * (S * c.L3 + c.L1));
  return 0.99 * std::min(branch_resolvent, branch_gamma);
}

PersistenceRadius strategy_persistence_radius(const GameModel& model,
                                              const Distribution& m,
                                              const DeterministicStrategy& d,
                                              double epsilon,
                                              const EssentialityOptions& opts) {
  if (!(epsilon > 0.0)) {
    throw Error(ErrorKind::invalid_argument,
                "strategy_persistence_radius: epsilon <= 0");
  }
  const auto optimal =
      optimal_deterministic_set(model, m, opts.search.optimality_tol,
                                opts.search.strategy_cap);
  if (optimal.size() != 1 || !(optimal.front() == d)) {
    std::ostringstream os;
    os << "strategy_persistence_radius: the strategy is not the unique "
          "optimum at m ("
       << optimal.size() << " optimal strategies found)";
    throw Error(ErrorKind::invalid_argument, os.str());
  }

  PersistenceRadius out;
  out.constants = perturbation_constants(
      model, effective_grid(opts, model.state_count()));

  double eps = epsilon;
  for (int attempt = 0; attempt <= 5; ++attempt) {
    const auto ball =
        simplex_ball_grid(m.probs(), eps, opts.ball_points_per_axis);
    double gamma = std::numeric_limits<double>::infinity();
    bool unique_everywhere = true;
    for (const auto& point : ball) {
      const double gap =
          value_gap(model, Distribution(point), d, opts.search.strategy_cap);
      if (!(gap > 0.0)) {
        unique_everywhere = false;
        break;
      }
      gamma = std::min(gamma, gap);
    }
    if (unique_everywhere) {
      out.gamma = gamma;
      out.delta = certified_delta(model, gamma / 3.0, out.constants);
      out.epsilon = eps;
      out.retries = attempt;
      return out;
    }
    eps *= 0.5;
  }
  throw Error(ErrorKind::no_convergence,
              "strategy_persistence_radius: uniqueness of the optimal "
              "strategy failed on every retried ball");
}

StationaryCertificate essential_stationary_check(
    const GameModel& model, const DeterministicStrategy& d,
    const Distribution& m, const EssentialityOptions& opts) {
  const int S = model.state_count();
  const StationaryStrategy pi =
      StationaryStrategy::from_deterministic(d, model.action_count());
  const double residual =
      stationary_residual(model, pi, m).cwiseAbs().maxCoeff();
  if (residual > 1e-8) {
    std::ostringstream os;
    os << "essential_stationary_check: m is not stationary under the "
          "strategy (residual "
       << residual << ")";
    throw Error(ErrorKind::not_stationary, os.str());
  }

  StationaryCertificate cert;
  std::ostringstream detail;

  // Criterion 1: irreducibility across the whole simplex plus a globally
  // unique stationary point.
  bool grid_irreducible = true;
  for (const auto& point : simplex_grid(S, effective_grid(opts, S))) {
    Eigen::MatrixXd q(S, S);
    for (int i = 0; i < S; ++i) {
      for (int j = 0; j < S; ++j) {
        q(i, j) = model.rate_poly(i, j, d[i]).eval(point);
      }
    }
    if (!is_irreducible(q)) {
      grid_irreducible = false;
      break;
    }
  }
  const int stat_res = opts.search.stationary_resolution > 0
                           ? opts.search.stationary_resolution
                           : default_stationary_resolution(S);
  const StationaryPointSet sp =
      stationary_points(model, pi, stat_res, opts.search.stationary_tol);
  cert.points_found = sp.points.size();
  cert.continuum = sp.continuum_warning;
  cert.unique_point_criterion =
      grid_irreducible && sp.points.size() == 1 && !sp.continuum_warning;
  if (cert.unique_point_criterion) {
    detail << "globally unique stationary point of an everywhere-irreducible "
              "generator";
  } else {
    detail << (grid_irreducible
                   ? "generator irreducible on the grid"
                   : "generator reducible somewhere on the grid")
           << ", " << sp.points.size() << " stationary point(s)"
           << (sp.continuum_warning ? " (continuum)" : "");
  }

  // Criterion 2: nondegenerate Jacobian of m - x(m) at the point.
  try {
    const JacobianCertificate jac = fixed_point_jacobian(model, pi, m);
    cert.smallest_singular_value = jac.smallest_singular_value;
    cert.jacobian_criterion = jac.certified();
    if (cert.jacobian_criterion) {
      // Quantitative persistence radius: over an epsilon ball, bound the
      // invariant-distribution sensitivity |x' - x| <= 2 n1^2 S delta
      // (Neumann series, valid for delta < 1/(2 S n1)) and require the
      // displacement to stay below the Jacobian's certified margin.
      try {
        double sigma_ball = jac.smallest_singular_value;
        double n1 = 0.0;
        for (const auto& point :
             simplex_ball_grid(m.probs(), opts.epsilon,
                               opts.ball_points_per_axis)) {
          const Distribution dp(point);
          const JacobianCertificate local = fixed_point_jacobian(model, pi, dp);
          sigma_ball = std::min(sigma_ball, local.smallest_singular_value);
          n1 = std::max(n1, invariant_inverse_norm(model, d, point));
        }
        n1 *= 1.01;
        if (sigma_ball > 1e-6 && n1 > 0.0) {
          const double sd = static_cast<double>(S);
          const double neumann_cap = 1.0 / (2.0 * sd * n1);
          const double displacement_cap =
              sigma_ball * opts.epsilon / (2.0 * n1 * n1 * sd * std::sqrt(sd));
          cert.delta_stationary =
              0.99 * std::min(neumann_cap, displacement_cap);
        }
      } catch (const Error&) {
        // Ball analysis failed (reducibility near the boundary); the
        // qualitative certificate at m still stands.
      }
      detail << "; fixed-point Jacobian nondegenerate (sigma_min = "
             << cert.smallest_singular_value << ")";
    } else {
      detail << "; fixed-point Jacobian degenerate (sigma_min = "
             << cert.smallest_singular_value << ")";
    }
  } catch (const Error& e) {
    detail << "; Jacobian criterion unavailable: " << e.what();
  }

  cert.verdict = cert.unique_point_criterion || cert.jacobian_criterion
                     ? Verdict::certified
                     : Verdict::not_certified;
  cert.detail = detail.str();
  return cert;
}

CharacterizationReport check_characterization(const GameModel& model,
                                              const Equilibrium& eq,
                                              const EssentialityOptions& opts) {
  CharacterizationReport report;
  if (eq.kind == EquilibriumKind::mixed) {
    report.verdict = Verdict::inapplicable;
    report.strategy_uniqueness = Verdict::inapplicable;
    report.stationary_point = Verdict::inapplicable;
    report.detail =
        "mixed-strategy equilibrium: the characterization applies only to "
        "deterministic equilibrium strategies";
    return report;
  }

  DeterministicStrategy d;
  for (const auto& sup : eq.support) d.actions.push_back(sup.front());

  std::ostringstream detail;
  try {
    report.persistence =
        strategy_persistence_radius(model, eq.m, d, opts.epsilon, opts);
    report.strategy_uniqueness = Verdict::certified;
  } catch (const Error& e) {
    report.strategy_uniqueness = Verdict::not_certified;
    detail << "strategy uniqueness: " << e.what();
  }

  try {
    report.stationary = essential_stationary_check(model, d, eq.m, opts);
    report.stationary_point = report.stationary->verdict;
    if (report.stationary_point != Verdict::certified) {
      if (detail.tellp() > 0) detail << "; ";
      detail << "stationary point: " << report.stationary->detail;
    }
  } catch (const Error& e) {
    report.stationary_point = Verdict::not_certified;
    if (detail.tellp() > 0) detail << "; ";
    detail << "stationary point: " << e.what();
  }

  if (report.strategy_uniqueness == Verdict::certified &&
      report.stationary_point == Verdict::certified) {
    report.verdict = Verdict::certified;
    const double d1 = report.persistence->delta;
    const double d2 = report.stationary->delta_stationary.value_or(d1);
    report.certified_radius = std::min(d1, d2);
    detail << "unique optimal strategy on an " << report.persistence->epsilon
           << "-ball and a certified stationary point";
  } else {
    report.verdict = Verdict::not_certified;
  }
  report.detail = detail.str();
  return report;
}

UniqueCriterionReport check_unique_criterion(const GameModel&,
                                             const EquilibriumSet& eqset) {
  UniqueCriterionReport report;
  report.equilibria_found = eqset.items.size();
  report.continuum_warning = eqset.continuum_warning;
  report.search = eqset.search;
  if (eqset.continuum_warning) {
    report.verdict = Verdict::inapplicable;
  } else if (eqset.items.size() == 1) {
    report.verdict = Verdict::certified;
  } else {
    report.verdict = Verdict::not_certified;
  }
  return report;
}

GameModel sample_perturbed_game(const GameModel& model, double delta,
                                std::uint64_t seed) {
  if (delta < 0.0) {
    throw Error(ErrorKind::invalid_argument,
                "sample_perturbed_game: delta < 0");
  }
  const int S = model.state_count();
  const int A = model.action_count();
  std::vector<PolynomialField> rates;
  rates.reserve(static_cast<std::size_t>(S) * S * A);
  std::vector<PolynomialField> rewards;
  rewards.reserve(static_cast<std::size_t>(S) * A);
  for (int i = 0; i < S; ++i) {
    for (int j = 0; j < S; ++j) {
      for (int a = 0; a < A; ++a) rates.push_back(model.rate_poly(i, j, a));
    }
  }
  for (int i = 0; i < S; ++i) {
    for (int a = 0; a < A; ++a) rewards.push_back(model.reward_poly(i, a));
  }
  if (delta > 0.0) {
    Rng rng(seed);
    const auto grid = simplex_grid(S, default_grid_resolution(S));
    // Off-diagonal rate budget delta/(2(S-1)): the diagonal absorbs the
    // whole row, so the rate family stays within delta/2 entrywise.
    const double rate_bound = delta / (2.0 * (S - 1));
    for (int i = 0; i < S; ++i) {
      for (int j = 0; j < S; ++j) {
        if (i == j) continue;
        for (int a = 0; a < A; ++a) {
          PolynomialField& p =
              rates[(static_cast<std::size_t>(i) * S + j) * A + a];
          double u = rng.uniform(-rate_bound, rate_bound);
          if (u < 0.0) {
            double grid_min = std::numeric_limits<double>::infinity();
            for (const auto& m : grid) grid_min = std::min(grid_min, p.eval(m));
            u = std::max(u, -std::max(grid_min, 0.0));
          }
          if (u != 0.0) p.shift_constant(u);
        }
      }
    }
    for (int i = 0; i < S; ++i) {
      for (int a = 0; a < A; ++a) {
        const double u = rng.uniform(-delta / 2.0, delta / 2.0);
        if (u != 0.0) {
          rewards[static_cast<std::size_t>(i) * A + a].shift_constant(u);
        }
      }
    }
  }
  return GameModel(S, A, model.discount(), std::move(rates),
                   std::move(rewards));
}

ProbeProfile probe(const GameModel& model, const Equilibrium& eq,
                   const std::vector<double>& deltas, int samples_per_delta,
                   std::uint64_t seed, const EquilibriumSearchOptions& search) {
  if (deltas.empty()) {
    throw Error(ErrorKind::invalid_argument, "probe: no deltas given");
  }
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    if (!(deltas[k] > 0.0) || (k > 0 && deltas[k] >= deltas[k - 1])) {
      throw Error(ErrorKind::invalid_argument,
                  "probe: deltas must be strictly decreasing and positive");
    }
  }
  if (samples_per_delta < 0) {
    throw Error(ErrorKind::invalid_argument, "probe: negative sample count");
  }

  ProbeProfile profile;
  profile.seed = seed;
  const std::size_t n =
      deltas.size() * static_cast<std::size_t>(samples_per_delta);
  // One slot per (delta, sample); nullopt marks a failed search.
  std::vector<std::optional<double>> displacement(n);
  parallel_for(n, [&](std::size_t idx) {
    const std::size_t di = idx / static_cast<std::size_t>(samples_per_delta);
    const std::uint64_t k = idx % static_cast<std::size_t>(samples_per_delta);
    const std::uint64_t pseed = Rng::stream(seed, di, k).next_u64();
    try {
      const GameModel perturbed =
          sample_perturbed_game(model, deltas[di], pseed);
      const EquilibriumSet set = find_all_equilibria(perturbed, search);
      if (set.items.empty()) return;
      displacement[idx] = set_distance(eq.m, eq.pi, set);
    } catch (const Error&) {
      // counted as a failure below
    }
  });

  for (std::size_t di = 0; di < deltas.size(); ++di) {
    DeltaProbe dp;
    dp.delta = deltas[di];
    dp.samples = samples_per_delta;
    double sum = 0.0;
    int successes = 0;
    for (int k = 0; k < samples_per_delta; ++k) {
      const auto& slot =
          displacement[di * static_cast<std::size_t>(samples_per_delta) +
                       static_cast<std::size_t>(k)];
      if (!slot) {
        ++dp.failures;
        continue;
      }
      dp.max_displacement = std::max(dp.max_displacement, *slot);
      sum += *slot;
      ++successes;
    }
    dp.mean_displacement = successes > 0 ? sum / successes : 0.0;
    profile.per_delta.push_back(dp);
  }
  return profile;
}

FamilySpec load_family_spec(const std::string& bytes) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(bytes);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::schema,
                std::string("family spec parse error: ") + e.what());
  }
  if (!doc.is_object()) {
    throw Error(ErrorKind::schema, "family spec: top level must be an object");
  }
  FamilySpec spec;
  auto read_range = [&](const char* field, double& lo, double& hi) {
    if (!doc.contains(field)) return;
    const auto& v = doc.at(field);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() ||
        !v[1].is_number()) {
      throw Error(ErrorKind::schema,
                  std::string("family spec: \"") + field +
                      "\" must be [lo, hi]");
    }
    lo = v[0].get<double>();
    hi = v[1].get<double>();
  };
  try {
    if (doc.contains("states")) spec.states = doc.at("states").get<int>();
    if (doc.contains("actions")) spec.actions = doc.at("actions").get<int>();
    if (doc.contains("beta")) spec.beta = doc.at("beta").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::schema,
                std::string("family spec: ") + e.what());
  }
  read_range("rate_range", spec.rate_lo, spec.rate_hi);
  read_range("reward_range", spec.reward_lo, spec.reward_hi);
  read_range("slope_range", spec.slope_lo, spec.slope_hi);
  if (spec.states < 2 || spec.states > 6 || spec.actions < 1 ||
      spec.actions > 6 || !(spec.beta > 0.0 && spec.beta < 1.0) ||
      spec.rate_lo < 0.0 || spec.rate_hi < spec.rate_lo ||
      spec.reward_hi < spec.reward_lo || spec.slope_hi < spec.slope_lo) {
    throw Error(ErrorKind::schema, "family spec: values out of bounds");
  }
  return spec;
}

FamilySpec load_family_spec_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::io, "cannot open family spec: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_family_spec(buf.str());
}

GameModel sample_family_game(const FamilySpec& spec, std::uint64_t seed) {
  const int S = spec.states;
  const int A = spec.actions;
  Rng rng(seed);
  std::vector<PolynomialField> rates(
      static_cast<std::size_t>(S) * S * A, PolynomialField::zero(S));
  for (int i = 0; i < S; ++i) {
    for (int j = 0; j < S; ++j) {
      if (i == j) continue;
      for (int a = 0; a < A; ++a) {
        rates[(static_cast<std::size_t>(i) * S + j) * A + a] =
            PolynomialField::constant(S, rng.uniform(spec.rate_lo, spec.rate_hi));
      }
    }
  }
  std::vector<PolynomialField> rewards;
  rewards.reserve(static_cast<std::size_t>(S) * A);
  for (int i = 0; i < S; ++i) {
    for (int a = 0; a < A; ++a) {
      std::vector<PolyTerm> terms;
      terms.push_back(
          {std::vector<int>(static_cast<std::size_t>(S), 0),
           rng.uniform(spec.reward_lo, spec.reward_hi)});
      for (int k = 0; k < S; ++k) {
        std::vector<int> exp(static_cast<std::size_t>(S), 0);
        exp[static_cast<std::size_t>(k)] = 1;
        terms.push_back({std::move(exp),
                         rng.uniform(spec.slope_lo, spec.slope_hi)});
      }
      rewards.emplace_back(S, std::move(terms));
    }
  }
  return GameModel(S, A, spec.beta, std::move(rates), std::move(rewards));
}

namespace {

EnsembleGameResult evaluate_ensemble_game(const GameModel& game,
                                          std::uint64_t game_seed,
                                          const EnsembleOptions& opts) {
  EnsembleGameResult result;
  result.game_seed = game_seed;
  try {
    const EquilibriumSet set = find_all_equilibria(game, opts.search);
    result.equilibria = set.items.size();
    result.continuum = set.continuum_warning;
    if (set.items.empty()) return result;
    bool all_within = true;
    for (std::size_t k = 0; k < set.items.size(); ++k) {
      const std::uint64_t probe_seed =
          Rng::stream(game_seed, k, 0xA11CE).next_u64();
      const ProbeProfile profile =
          probe(game, set.items[k], opts.deltas, opts.samples_per_delta,
                probe_seed, opts.search);
      if (profile.per_delta.empty()) continue;
      const DeltaProbe& smallest = profile.per_delta.back();
      result.failures += smallest.failures;
      result.max_displacement =
          std::max(result.max_displacement, smallest.max_displacement);
      all_within = all_within && smallest.failures == 0 &&
                   smallest.max_displacement <= opts.epsilon_threshold;
    }
    result.corroborated = all_within;
  } catch (const Error&) {
    result.corroborated = false;
  }
  return result;
}

}  // namespace

EnsembleReport ensemble_genericity_study(const FamilySpec& spec, int count,
                                         std::uint64_t seed,
                                         const EnsembleOptions& opts) {
  if (count < 0) {
    throw Error(ErrorKind::invalid_argument,
                "ensemble_genericity_study: count < 0");
  }
  EnsembleReport report;
  report.count = count;
  report.seed = seed;
  report.epsilon_threshold = opts.epsilon_threshold;
  report.deltas = opts.deltas;
  report.samples_per_delta = opts.samples_per_delta;

  int corroborated = 0;
  for (int g = 0; g < count; ++g) {
    const std::uint64_t game_seed =
        Rng::stream(seed, static_cast<std::uint64_t>(g), 0x6A3E).next_u64();
    const GameModel game = sample_family_game(spec, game_seed);
    report.games.push_back(evaluate_ensemble_game(game, game_seed, opts));
    if (report.games.back().corroborated) ++corroborated;
  }
  report.fraction_corroborated =
      count > 0 ? static_cast<double>(corroborated) / count : 0.0;

  for (std::size_t k = 0; k < opts.injected.size(); ++k) {
    const std::uint64_t inj_seed =
        Rng::stream(seed, k, 0x1BAD).next_u64();
    report.injected.push_back(
        evaluate_ensemble_game(opts.injected[k], inj_seed, opts));
    if (!report.injected.back().corroborated) ++report.injected_flagged;
  }
  return report;
}

}  // namespace mfg
