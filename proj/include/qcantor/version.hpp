#pragma once

namespace qcantor {

inline constexpr const char* kVersion = "0.1.0";

// Spectral / wellformedness tolerance: positivity, idempotence, rank and
// unitarity checks on the float backend.
inline constexpr double kTolEig = 1e-9;

// Entrywise equality tolerance for float matrices.
inline constexpr double kTolEntry = 1e-12;

// Default cap on the number of qubits a CLI experiment may touch.  Can be
// overridden with the QCANTOR_MAX_QUBITS environment variable.
inline constexpr int kDefaultMaxQubits = 12;

} // namespace qcantor
