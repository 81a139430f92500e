#pragma once

// Base-2 entropy statistics: von Neumann entropy, the finite entropy-rate
// profile, and the cross-entropy statistic -(1/n) Tr(rho|n log2 psi|n).

#include <optional>

#include "qcantor/states.hpp"

namespace qcantor {

// H(S) = -sum lambda_i log2 lambda_i; value in [0, n].
double von_neumann_entropy(const DensityMatrix& s);

struct EntropyReport {
  struct Row {
    int n = 0;
    double h = 0;    // H(psi|n)
    double rate = 0; // H(psi|n) / n
    std::optional<double> cross;
  };
  std::vector<Row> rows;
  std::string kind;
};

// rate_n = H(psi|n)/n for n = 1..n_max; no limit is claimed.
EntropyReport entropy_rate(const CoherentState& psi, int n_max);

// -(1/n) Tr(rho|n log2(psi|n)), via psi's eigendecomposition.  Eigenvalues of
// psi below kTolEig are excluded from the log; if rho puts weight above
// kTolEig on the excluded space the statistic is undefined at this depth.
double cross_entropy_statistic(const CoherentState& rho, const CoherentState& psi, int n);

// Rows n = 1..n_max with the cross-entropy column filled in.
EntropyReport cross_entropy_profile(const CoherentState& rho, const CoherentState& psi, int n_max);

} // namespace qcantor
