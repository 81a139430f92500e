#pragma once

// Classical<->quantum correspondence: extracting a classical ML test from a
// quantum test that a bit sequence fails, with exact measure bookkeeping.

#include "qcantor/clopen.hpp"
#include "qcantor/randomness.hpp"

namespace qcantor {

// S^k_{p,delta}: the k-bit strings eta with Tr(|eta><eta| p) >= delta.
struct StringSelection {
  int k = 0;
  std::vector<std::string> strings; // sorted
  Rational delta;
  // Float backend only: strings whose diagonal entry lies within kTolEig of
  // delta, where the inclusive tie-break is not numerically meaningful.
  std::vector<std::string> borderline;

  ClopenSet clopen() const { return ClopenSet(k, strings); }
  Rational measure() const { return clopen().measure(); }
};

// Exact enumeration over all 2^k basis strings; the threshold is inclusive.
StringSelection select_strings(const SpecialProjection& p, const Rational& delta);

// Verifies S^{k+1}_{embed(p),delta} = { eta a : eta in S^k_{p,delta} } by
// direct enumeration of all 2^{k+1} strings.
bool check_lifting(const SpecialProjection& p, const Rational& delta);

// |strings| * 2^{-k}, exactly.
Rational clopen_measure(int k, const std::vector<std::string>& strings);

struct ClassicalMLTest {
  struct Level {
    int r = 0;
    std::vector<ClopenSet> stages; // S^k for k = 0..depth, an increasing union
    Rational measure;              // exact uniform measure of the union
    Rational measure_bound;        // 2^{-r} / delta
  };
  std::vector<Level> levels;
  Rational delta;
  int depth = 0;
};

// Level r collects the clopen sets [[S^k_{p^r_k, delta}]] for k <= depth and
// verifies lambda(level) <= 2^{-r}/delta exactly; a violation signals a
// malformed input test.
ClassicalMLTest derive_classical_test(const QMLTest& test, const Rational& delta, int depth);

// Does some stage of the level contain the corresponding prefix of z?
bool level_covers(const ClassicalMLTest::Level& level, const ClassicalSequence& z);

} // namespace qcantor
