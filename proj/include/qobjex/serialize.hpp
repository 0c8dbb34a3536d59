#ifndef QOBJEX_SERIALIZE_HPP
#define QOBJEX_SERIALIZE_HPP

// JSON and CSV encodings of states, specs, curves and reports.
//
// State files: {"kind": "pure" | "density", "dims": [2, ...],
//               "re": [...], "im": [...]}
// with amplitudes in basis-index order, or matrix entries row-major.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "qobjex/densesim.hpp"
#include "qobjex/encodings.hpp"
#include "qobjex/objectivity.hpp"
#include "qobjex/oracle.hpp"

namespace qobjex {

using Json = nlohmann::ordered_json;

/// Shortest "%.*g" rendering (at least 15 digits) that reads back exactly.
std::string format_real(double x);

Json to_json(const PureState& psi);
Json to_json(const DensityMatrix& rho);
/// Throws InputError on malformed input; validates the state invariants.
AnyState state_from_json(const Json& j);
/// Pure states are converted to their projector.
DensityMatrix density_from_json(const Json& j);

AnyState read_state_file(const std::filesystem::path& path);
/// Throws Error if the file cannot be written.
void write_text_file(const std::filesystem::path& path, const std::string& text);

Json to_json(const EncodingSpec& spec);
EncodingSpec spec_from_json(const Json& j);
Json to_json(const FractionMask& mask);
Json to_json(const MICurve& curve);
Json to_json(const ObjectivityReport& report);
Json to_json(const SbsVerdict& verdict);
Json to_json(const OracleReport& report);

/// Header m,f,qmi_over_S,acc_over_S; one row per point.
std::string to_csv(const MICurve& curve);

}  // namespace qobjex

#endif  // QOBJEX_SERIALIZE_HPP
