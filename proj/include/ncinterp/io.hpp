#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "ncinterp/criteria.hpp"
#include "ncinterp/ncpoly.hpp"
#include "ncinterp/realization.hpp"
#include "ncinterp/tuples.hpp"
#include "ncinterp/words.hpp"

namespace ncinterp {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

/// Nested rows of [re, im] pairs. Parsing also accepts plain numbers as real
/// entries and a bare number as a 1×1 matrix.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

/// {"n_vars": N, "words": ["", "1", "1.2", ...]}
Json word_set_to_json(const AdmissibleSet& lambda);
AdmissibleSet word_set_from_json(const Json& j);

Json ncpoly_to_json(const NcPoly& p);
NcPoly ncpoly_from_json(const Json& j);

Json tuple_to_json(const MatrixTuple& t);
MatrixTuple tuple_from_json(const Json& j);

using Instance = std::variant<CaratheodoryInstance, CFInstance>;

/// {"problem": "caratheodory" | "cf", "n_vars", "lambda": [...], "coeffs": {...},
///  "dims": {"y": d_Y, "u": d_U}}
Json instance_to_json(const Instance& inst);
Instance instance_from_json(const Json& j);

/// {"verdict", "violation", "witness", "trials", "seed", "budget", "schema_version"}
/// plus "problem", "tol" and "witness_trial". Timing is left out so repeated
/// runs produce identical files.
Json report_to_json(const FeasibilityReport& r, const std::string& problem);

/// Generated instance with its realization (G, V).
Json certificate_to_json(const GeneratedInstance& g);

/// Reads and parses a JSON file; InvalidInput on I/O or syntax errors.
Json read_json_file(const std::string& path);
/// Writes `j` with two-space indentation and a trailing newline.
void write_json_file(const std::string& path, const Json& j);

}  // namespace ncinterp
