#pragma once

// JSON (de)serialisation of the domain objects and the file formats consumed
// by the CLI.  Exact scalars travel as "p/q" strings; floats as JSON numbers.

// vendored single-header nlohmann/json
#include <json.hpp>

#include "qcantor/bridge.hpp"
#include "qcantor/compression.hpp"
#include "qcantor/entropy.hpp"
#include "qcantor/fixtures.hpp"

namespace qcantor {

using Json = nlohmann::json;

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

Json vector_to_json(const ComplexVector& v);
ComplexVector vector_from_json(const Json& j);

// {"kind": "bits"|"measure"|"iid"|"epr"|"matrix_sequence", "params": {...},
//  "max_depth": n}
CoherentState state_from_json(const Json& j);

// {"kind": "qml"|"classical", ...} with explicit projection matrices, named
// fixtures, or classical clopen levels.
QMLTest qml_test_from_json(const Json& j);
SolovayTest solovay_test_from_json(const Json& j);
StrongSolovayTest strong_solovay_test_from_json(const Json& j);

// {"name": "identity"|"bit_reversal"} or {"circuits": [{"n":..,"matrix":..}],
//  "default": "identity"}; both with "max_depth".
UnitaryMachine machine_from_json(const Json& j);

// {"basis_max_len": l, "extra": [vector...]}; defaults to basis strings of
// length <= 8.
StateDictionary dictionary_from_json(const Json& j);

Json coherence_report_to_json(const CoherenceReport& report);
Json verdict_to_json(const Verdict& v);
Json classical_test_to_json(const ClassicalMLTest& test);
Json compression_record_to_json(const CompressionRecord& record);
Json entropy_report_to_json(const EntropyReport& report);

} // namespace qcantor
