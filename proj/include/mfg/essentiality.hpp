#ifndef MFG_ESSENTIALITY_HPP
#define MFG_ESSENTIALITY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mfg/equilibrium.hpp"
#include "mfg/model.hpp"

namespace mfg {

// Certificates are one-sided: sampling can never prove non-essentiality.
enum class Verdict { certified, not_certified, inapplicable };
const char* to_string(Verdict v);

struct EssentialityOptions {
  int grid_resolution = 0;  // 0: default_grid_resolution(S)
  double epsilon = 0.05;    // initial ball radius for persistence analysis
  int ball_points_per_axis = 7;
  EquilibriumSearchOptions search;
};

// Extremal quantities of the value-solve family over all deterministic
// strategies and a simplex grid, in the max-abs-row-sum matrix norm:
//   L1 = inf |beta I - Q^d(m)|          L2 = sup|beta I - Q^d| * sup|inverse|
//   L3 = inf |r^d(m)|                   L4 = sup |V^d(m)|
// computed after shifting rewards to be strictly positive when needed.
// Infima carry a 0.99 margin, suprema 1.01 (grid extrema can miss the true
// ones; the margins keep downstream certificates conservative).
struct PerturbationConstants {
  double L1 = 0.0;
  double L2 = 0.0;
  double L3 = 0.0;
  double L4 = 0.0;
  double sup_resolvent = 0.0;  // 1.01 * sup |(beta I - Q^d(m))^{-1}|
  double reward_shift = 0.0;   // additive shift applied before L3/L4
  int grid_resolution = 0;
};

PerturbationConstants perturbation_constants(const GameModel& model,
                                             int grid_resolution);

// Largest certified perturbation radius for which every strategy value
// V^d(m) moves by at most gamma:
//   0.99 * min{ 1/(2 S sup_resolvent), gamma L1 L3 / (2 L2 L4 (S L3 + L1)) }.
double certified_delta(const GameModel& model, double gamma,
                       const PerturbationConstants& constants);

struct PersistenceRadius {
  double gamma = 0.0;    // infimum over the ball of the strategy value gap
  double delta = 0.0;    // certified_delta at gamma/3
  double epsilon = 0.0;  // ball radius actually certified
  int retries = 0;       // shrink-and-retry rounds used
  PerturbationConstants constants;
};

// Requires d to be the unique optimal strategy at m. Finds a ball radius
// (shrinking up to 5 times from `epsilon`) on which uniqueness holds, takes
// gamma as the ball infimum of the value gap, and certifies that within
// delta = certified_delta(gamma/3) the perturbed games keep d uniquely
// optimal on the ball (each value moves < gamma/3, so pointwise gaps stay
// above gamma/3 > 0).
PersistenceRadius strategy_persistence_radius(const GameModel& model,
                                              const Distribution& m,
                                              const DeterministicStrategy& d,
                                              double epsilon,
                                              const EssentialityOptions& opts = {});

struct StationaryCertificate {
  Verdict verdict = Verdict::not_certified;
  bool unique_point_criterion = false;  // grid-irreducible + single point
  bool jacobian_criterion = false;      // nondegenerate isolated fixed point
  double smallest_singular_value = 0.0;
  std::size_t points_found = 0;
  bool continuum = false;
  // Quantitative radius from the invariant-distribution sensitivity bound;
  // set when the Jacobian criterion fires.
  std::optional<double> delta_stationary;
  std::string detail;
};

// Certifies that m persists as a stationary point of Q^d under small
// generator perturbations: either Q^d is irreducible on the whole grid with
// a unique stationary point, or the fixed-point Jacobian of the
// invariant-distribution map is nondegenerate at m.
StationaryCertificate essential_stationary_check(
    const GameModel& model, const DeterministicStrategy& d,
    const Distribution& m, const EssentialityOptions& opts = {});

struct CharacterizationReport {
  Verdict verdict = Verdict::inapplicable;
  Verdict strategy_uniqueness = Verdict::not_certified;
  Verdict stationary_point = Verdict::not_certified;
  std::optional<PersistenceRadius> persistence;
  std::optional<StationaryCertificate> stationary;
  std::optional<double> certified_radius;  // min of the two sub-radii
  std::string detail;
};

// Sufficient condition for essentiality of a deterministic equilibrium:
// unique optimal strategy on a ball around m plus a certified stationary
// point. Mixed equilibria are out of scope (inapplicable).
CharacterizationReport check_characterization(const GameModel& model,
                                              const Equilibrium& eq,
                                              const EssentialityOptions& opts = {});

struct UniqueCriterionReport {
  Verdict verdict = Verdict::not_certified;
  std::size_t equilibria_found = 0;
  bool continuum_warning = false;
  // Uniqueness is relative to the search's coverage.
  SearchMetadata search;
};

// Uniqueness criterion: a game with exactly one equilibrium found (and no
// continuum) has that equilibrium certified essential.
UniqueCriterionReport check_unique_criterion(const GameModel& model,
                                             const EquilibriumSet& eqset);

// Random game within distance `delta`: every reward constant moves by
// uniform(-delta/2, delta/2), every off-diagonal rate constant by uniform
// noise bounded by delta/(2(S-1)) and clipped below by the rate's grid
// minimum (so validity is preserved); diagonals follow by row-sum closure.
GameModel sample_perturbed_game(const GameModel& model, double delta,
                                std::uint64_t seed);

struct DeltaProbe {
  double delta = 0.0;
  int samples = 0;
  double max_displacement = 0.0;
  double mean_displacement = 0.0;
  int failures = 0;  // perturbed searches with no equilibrium found
};

struct ProbeProfile {
  std::vector<DeltaProbe> per_delta;  // deltas strictly decreasing
  std::uint64_t seed = 0;
};

// Samples perturbed games per delta, re-solves them, and measures how far
// (m, pi) sits from the perturbed equilibrium set. Displacements tending to
// zero with delta corroborate essentiality (evidence, not proof).
ProbeProfile probe(const GameModel& model, const Equilibrium& eq,
                   const std::vector<double>& deltas, int samples_per_delta,
                   std::uint64_t seed,
                   const EquilibriumSearchOptions& search = {});

struct EssentialityReport {
  Equilibrium equilibrium;
  UniqueCriterionReport unique;
  CharacterizationReport characterization;
  std::optional<double> certified_radius;
  std::optional<ProbeProfile> probe;
};

// Random affine game family: constant off-diagonal rates and rewards affine
// in m, coefficients uniform in the stated ranges.
struct FamilySpec {
  int states = 2;
  int actions = 2;
  double beta = 0.5;
  double rate_lo = 0.2;
  double rate_hi = 2.0;
  double reward_lo = 0.0;
  double reward_hi = 2.0;
  double slope_lo = -1.0;
  double slope_hi = 0.0;
};

FamilySpec load_family_spec(const std::string& bytes);
FamilySpec load_family_spec_file(const std::string& path);
GameModel sample_family_game(const FamilySpec& spec, std::uint64_t seed);

struct EnsembleGameResult {
  std::uint64_t game_seed = 0;
  std::size_t equilibria = 0;
  bool continuum = false;
  int failures = 0;
  double max_displacement = 0.0;  // at the smallest probed delta
  bool corroborated = false;
};

struct EnsembleReport {
  int count = 0;
  std::uint64_t seed = 0;
  double epsilon_threshold = 0.0;
  std::vector<double> deltas;
  int samples_per_delta = 0;
  std::vector<EnsembleGameResult> games;
  double fraction_corroborated = 0.0;
  std::vector<EnsembleGameResult> injected;  // user-supplied fixtures
  int injected_flagged = 0;
};

struct EnsembleOptions {
  std::vector<double> deltas{0.1, 0.01, 0.001};
  int samples_per_delta = 10;
  double epsilon_threshold = 0.05;
  EquilibriumSearchOptions search;
  std::vector<GameModel> injected;
};

// Draws `count` games from the family, probes every equilibrium of each,
// and reports the fraction whose equilibria all stay within the epsilon
// threshold at the smallest delta. Injected fixtures run the same pipeline
// so knife-edge counterexamples are visibly flagged.
EnsembleReport ensemble_genericity_study(const FamilySpec& spec, int count,
                                         std::uint64_t seed,
                                         const EnsembleOptions& opts = {});

}  // namespace mfg

#endif  // MFG_ESSENTIALITY_HPP
