#ifndef MFG_MODEL_IO_HPP
#define MFG_MODEL_IO_HPP

#include <string>
#include <vector>

#include "mfg/model.hpp"

namespace mfg {

struct LoadedModel {
  GameModel model;
  // Soft generator-invariant findings (validate is authoritative).
  std::vector<std::string> warnings;
};

// Parses a model document:
//   { "states": S, "actions": A, "beta": b,
//     "rates":   [ {"from": i, "to": j, "action": a, "poly": [...]}, ... ],
//     "rewards": [ {"state": i, "action": a, "poly": [...]}, ... ] }
// with "poly" a list of {"exp": [e_1..e_S], "coef": c}. Indices are 1-based.
// Omitted off-diagonal rate entries default to the zero polynomial; diagonal
// rate entries are rejected (they are derived from the row sum). Malformed
// documents raise Error(schema) with line/field diagnostics.
LoadedModel load_model(const std::string& bytes);

// Inverse of load_model up to canonical term order; numbers keep full double
// precision, so load(save(x)) reproduces every coefficient exactly.
std::string save_model(const GameModel& model);

LoadedModel load_model_file(const std::string& path);
void save_model_file(const GameModel& model, const std::string& path);

}  // namespace mfg

#endif  // MFG_MODEL_IO_HPP
