#ifndef MFG_FIXTURES_HPP
#define MFG_FIXTURES_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mfg/model.hpp"

namespace mfg::fixtures {

// Bundled reference games. Each is small enough to solve by hand; the
// shipped fixtures/*.json files are exact serializations of these builders.

// 2 states, 1 action. Constant rates 1 (state 1 -> 2) and 2 (2 -> 1),
// rewards (1, 0): unique stationary point m = (2/3, 1/3), trivially the
// unique equilibrium.
GameModel ref_1a();

// 2 states, 2 actions with identical rates (1 and 2 as above) and constant
// rewards 2 for action 1, 1 for action 2: action 1 strictly dominates
// everywhere, so the unique equilibrium is ((2/3, 1/3), action 1).
GameModel ref_dom();

// As ref_dom but with identical rewards (1, 0) for both actions: every
// strategy is optimal everywhere, giving a continuum of equilibria over the
// single stationary point.
GameModel ref_ind();

// 2 states, 2 actions with identical rates; action 1 pays 1 and action 2
// pays 1.5 m_1. The stationary point of every strategy is m = (2/3, 1/3),
// exactly where the rewards tie: a knife-edge game whose equilibria vanish
// under arbitrarily small reward perturbations.
GameModel ref_knife();

// 2 states, 2 actions, action-dependent affine rates and congestion rewards
// decreasing in the own-state mass. The stationary point of the
// all-action-1 strategy solves 0.2 m_1^2 - 1.6 m_1 + 0.8 = 0, i.e.
// m_1 = 4 - 2 sqrt(3).
GameModel ref_2x2();

// All fixtures keyed by their canonical names ("ref-1a", ...).
const std::vector<std::pair<std::string, GameModel>>& all();

std::optional<GameModel> by_name(const std::string& name);

}  // namespace mfg::fixtures

#endif  // MFG_FIXTURES_HPP
