#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "consep/bounds.hpp"
#include "consep/embeddings.hpp"
#include "consep/lattice.hpp"
#include "consep/moebius.hpp"
#include "consep/reports.hpp"
#include "consep/witnesses.hpp"

namespace consep {

inline constexpr const char* kToolName = "consep";
inline constexpr const char* kToolVersion = "0.1.0";

// Every value carries both an exact hex form (round-trippable) and a rounded
// double form (readable); double bounds keep the enclosure direction.
nlohmann::json iv_json(const Interval& v);
nlohmann::json report_json(const InequalityReport& rep);
nlohmann::json chain_json(const ChainReport& rep);
nlohmann::json embeddings_json(const EmbeddingSet& e);
nlohmann::json witness_json(const WitnessRecord& rec);
nlohmann::json adapted_json(const AdaptedMatrixReport& rep);
nlohmann::json fit_json(const ExponentFit& fit);
nlohmann::json estimate_json(const KappaEstimate& est);
nlohmann::json logmag_json(const LogMag& v);
nlohmann::json effective_json(const EffectiveExponents& e);
nlohmann::json refined_json(const RefinedBoundReport& rep);
nlohmann::json reduction_json(const ReductionOutcome& out);
nlohmann::json gap_json(const GapQuantities& q);

// Run manifest.  The timestamp field is always null so reruns of the same
// command are byte-identical.
nlohmann::json manifest_json(const std::string& command,
                             const nlohmann::json& params);

// CSV projections for plotting.
std::string witness_csv(const std::vector<WitnessRecord>& recs);
std::string ladder_csv(const std::vector<AdaptedMatrixReport>& reps);

}  // namespace consep
