#ifndef IQF_JSON_IO_HPP
#define IQF_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "iqf/dist.hpp"
#include "iqf/experiments.hpp"
#include "iqf/limits.hpp"
#include "iqf/skorokhod.hpp"

namespace iqf {

using json = nlohmann::json;

json to_json(const ConvexPWL& f);
ConvexPWL convex_pwl_from_json(const json& j);

json to_json(const MonotonePWL& m);
MonotonePWL monotone_pwl_from_json(const json& j);

json to_json(const AtomicDistribution& d);
AtomicDistribution distribution_from_json(const json& j);

/// Experiment input: either {"mu": <distribution>} or
/// {"p": [...], "p_prime": [...]}.
BinaryExperiment experiment_from_json(const json& j);

json to_json(const ConcavePWL& b);
ConcavePWL concave_pwl_from_json(const json& j);

json to_json(const CanonicalExperiment& c);
json to_json(const EmbeddingPlan& plan);
json to_json(const McReport& rep);
json to_json(const FamilyDiagnostics& diag);

/// CSV ingestion for empirical laws: one value per line, optional second
/// weight column; blank lines and '#' comments are skipped.
AtomicDistribution distribution_from_csv(const std::string& text);

/// (abscissa, ordinate) vertex pairs of a PWL transform, for plotting.
std::string vertices_to_csv(const ConvexPWL& f);

}  // namespace iqf

#endif  // IQF_JSON_IO_HPP
