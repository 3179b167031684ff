#ifndef MFG_REPORTS_HPP
#define MFG_REPORTS_HPP

#include <json.hpp>

#include "mfg/equilibrium.hpp"
#include "mfg/essentiality.hpp"
#include "mfg/mdp.hpp"
#include "mfg/model.hpp"

namespace mfg {

// JSON renderings of the report types, with fixed key order so equal
// reports serialize to identical bytes. State and action indices are
// 1-based, matching the model document convention.
using Json = nlohmann::ordered_json;

Json report_json(const Distribution& m);
Json report_json(const StationaryStrategy& pi);
Json report_json(const ValidationReport& report);
Json report_json(const SearchMetadata& meta);
Json report_json(const Equilibrium& eq);
Json report_json(const EquilibriumSet& set);
Json report_json(const VerifyReport& report);
Json report_json(const PerturbationConstants& constants);
Json report_json(const PersistenceRadius& radius);
Json report_json(const StationaryCertificate& cert);
Json report_json(const CharacterizationReport& report);
Json report_json(const UniqueCriterionReport& report);
Json report_json(const EssentialityReport& report);
Json report_json(const DeltaProbe& probe);
Json report_json(const ProbeProfile& profile);
Json report_json(const EnsembleGameResult& result);
Json report_json(const EnsembleReport& report);
Json report_json(const MonteCarloEstimate& estimate);

}  // namespace mfg

#endif  // MFG_REPORTS_HPP
