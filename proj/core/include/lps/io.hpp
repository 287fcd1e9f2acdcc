#pragma once

// JSON encodings.
//
//   Matrix       { "dim": N, "re": [N*N row-major], "im": [N*N row-major] }
//   TodaState    { "N": N, "x": [...], "p": [...], "alpha": [...], "lambda": [...] }
//   ReductionOp  { "kind": "measurement" | "lower_triangularize", "dim": N,
//                  "projectors": [Matrix, ...] }
//                { "kind": "group_average", "dim": N, "unitaries": [Matrix, ...] }
//
// Doubles are written in shortest round-trip form, so decode(encode(m)) == m
// bit for bit. Decoders throw FormatError on schema violations, including
// unknown keys and non-finite numbers.

#include <nlohmann/json.hpp>

#include "lps/operator_core.hpp"
#include "lps/reduction.hpp"
#include "lps/toda.hpp"

namespace lps::io {

using Json = nlohmann::json;

Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json to_json(const toda::TodaState& s);
toda::TodaState toda_state_from_json(const Json& j);

Json to_json(const ReductionOp& r);
ReductionOp reduction_from_json(const Json& j);

}  // namespace lps::io
