#pragma once

// JSON encodings.
//
//   matrix       {"rows": n, "cols": m, "re": [[...]], "im": [[...]]}
//   map          {"d_in": n, "d_out": m, "kraus_plus": [matrix...], "kraus_minus": [matrix...],
//                 "pre_transpose": false}   or   {"named": "choi", "params": [3, 1]}
//   certificate  {"verdict": "...", "k": k, "test": "...", "evidence": {...},
//                 "tolerances": {...}, "seed": n, "wall_ms": t}

#include <string>

#include <json.hpp>

#include "posmap/catalog.hpp"
#include "posmap/certify.hpp"
#include "posmap/jordan.hpp"
#include "posmap/matrix.hpp"
#include "posmap/superop.hpp"

namespace posmap {

using Json = nlohmann::ordered_json;

Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);

/// Maps without Kraus data are written through kraus_from_choi, so only
/// Hermiticity-preserving maps can be serialised.
Json map_to_json(const SuperOp& t);
Json named_map_to_json(const NamedMapSpec& spec);
SuperOp map_from_json(const Json& j);

Json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

Json hou_report_to_json(const HouReport& r, bool include_samples = false);
Json stormer_report_to_json(const StormerReport& r);
Json reversibility_report_to_json(const ReversibilityReport& r);

Json read_json_file(const std::string& path);

} // namespace posmap
