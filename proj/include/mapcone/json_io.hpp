#pragma once

#include "mapcone/hakye.hpp"
#include "mapcone/localequiv.hpp"
#include "mapcone/positivity.hpp"
#include "mapcone/types.hpp"
#include "mapcone/verify.hpp"

#include <json.hpp>

#include <string>

namespace mapcone {

using nlohmann::json;

// Matrices: {"rows": N, "cols": N, "re": [[...]], "im": [[...]]}, row-major
// IEEE-754 doubles. Vectors: {"size": N, "re": [...], "im": [...]}.

json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const json& j);
Matrix3c matrix3_from_json(const json& j);
Matrix9c matrix9_from_json(const json& j);

json vector_to_json(const Eigen::VectorXcd& v);
Eigen::VectorXcd vector_from_json(const json& j);

json family_to_json(const SingularFamily& f);
json record_to_json(const ObstructionRecord& r);
json verdict_to_json(const EquivalenceVerdict& v);
json positivity_verdict_to_json(const PositivityVerdict& v);
json separable_spec_to_json(const SeparableSpec& s);
json check_results_to_json(const std::vector<CheckResult>& checks);

json load_json_file(const std::string& path);

/// FNV-1a 64-bit digest of the file bytes, as a 16-char hex string.
std::string file_digest(const std::string& path);

/// Write through a temp file in the same directory, then rename.
void write_json_atomic(const json& j, const std::string& path);

}  // namespace mapcone
