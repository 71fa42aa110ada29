#pragma once

#include <string>

#include <json.hpp>

#include "povm/coarseness.hpp"
#include "povm/infomeasures.hpp"

namespace povm::io {

using Json = nlohmann::json;

// Complex entries are [re, im] pairs; plain numbers are read as real entries.
// Matrices are arrays of rows.

Json to_json(const CMatrix& m);
Json to_json(const RMatrix& m);
Json to_json(const RVector& v);
CMatrix complex_matrix_from_json(const Json& j);
RMatrix real_matrix_from_json(const Json& j);
RVector real_vector_from_json(const Json& j);

/// {"dim": d, "elements": [matrix…], "kraus": [[matrix…]…]} (kraus optional).
Json to_json(const Measurement& c);
Measurement measurement_from_json(const Json& j, const Tolerances& tol = default_tolerances());

/// {"dim": d, "rho": matrix}
Json to_json(const DensityMatrix& rho);
DensityMatrix state_from_json(const Json& j, const Tolerances& tol = default_tolerances());

/// {"dim": d, "basis": [vector…]}
Json to_json(const Subspace& g);
Subspace subspace_from_json(const Json& j, const Tolerances& tol = default_tolerances());

/// {"probs": […], "volumes": […]}
Json to_json(const WeightedDistribution& w);
WeightedDistribution distribution_from_json(const Json& j);

/// {"matrix": [[…]]}
Json to_json(const JointDistribution& p);
JointDistribution joint_from_json(const Json& j);

Json to_json(const EntropyReport& r);
Json to_json(const CoarsenessCertificate& c);
Json to_json(const ComposedMeasurement& c);
Json to_json(const OutcomeSet& s);

/// Reads and parses a JSON file; failures raise ParseError.
Json read_file(const std::string& path);
void write_file(const std::string& path, const Json& j);

/// Compact text with lossless (shortest round-trip) doubles.
std::string dump(const Json& j, int indent = -1);

}  // namespace povm::io
