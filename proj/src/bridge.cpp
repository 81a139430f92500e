#include "qcantor/bridge.hpp"

namespace qcantor {

namespace {

void check_delta_rational(const Rational& delta) {
  if (!(delta > 0 && delta < 1)) throw InvalidArgumentError("delta must lie in (0,1)");
}

} // namespace

StringSelection select_strings(const SpecialProjection& p, const Rational& delta) {
  check_delta_rational(delta);
  const int k = p.n_qubits();
  StringSelection sel;
  sel.k = k;
  sel.delta = delta;
  const Eigen::Index d = p.matrix().dim();
  if (p.is_exact()) {
    const ExactMatrix& m = p.matrix().exact();
    for (Eigen::Index idx = 0; idx < d; ++idx) {
      const GaussianRational& diag = m(idx, idx);
      if (diag.im != 0) throw InvalidStateError("projection has a non-real diagonal entry");
      if (diag.re >= delta) sel.strings.push_back(index_to_string(idx, k));
    }
  } else {
    const FloatMatrix& m = p.matrix().floating();
    const double dd = to_double(delta);
    for (Eigen::Index idx = 0; idx < d; ++idx) {
      const double v = m(idx, idx).real();
      if (v >= dd) sel.strings.push_back(index_to_string(idx, k));
      if (std::abs(v - dd) <= kTolEig) sel.borderline.push_back(index_to_string(idx, k));
    }
  }
  std::sort(sel.strings.begin(), sel.strings.end());
  std::sort(sel.borderline.begin(), sel.borderline.end());
  return sel;
}

bool check_lifting(const SpecialProjection& p, const Rational& delta) {
  const StringSelection base = select_strings(p, delta);
  const StringSelection lifted = select_strings(SpecialProjection::trusted(embed(p.matrix())), delta);
  std::vector<std::string> expected;
  expected.reserve(base.strings.size() * 2);
  for (const auto& eta : base.strings) {
    expected.push_back(eta + "0");
    expected.push_back(eta + "1");
  }
  std::sort(expected.begin(), expected.end());
  return expected == lifted.strings;
}

Rational clopen_measure(int k, const std::vector<std::string>& strings) {
  for (const auto& s : strings)
    if (static_cast<int>(s.size()) != k)
      throw InvalidArgumentError("clopen_measure: string '" + s + "' does not have length " +
                                 std::to_string(k));
  return ClopenSet(k, strings).measure();
}

ClassicalMLTest derive_classical_test(const QMLTest& test, const Rational& delta, int depth) {
  check_delta_rational(delta);
  ClassicalMLTest out;
  out.delta = delta;
  out.depth = depth;
  for (int r = 0; r < test.max_levels(); ++r) {
    const QuantumSigma1Set& g = test.level_set(r);
    if (depth > g.max_depth())
      throw DepthExceededError("derive_classical_test: test level " + std::to_string(r) +
                               " has no projection at depth " + std::to_string(depth));
    ClassicalMLTest::Level level;
    level.r = r;
    for (int k = 0; k <= depth; ++k) level.stages.push_back(select_strings(g.level(k), delta).clopen());
    const ClassicalSigma1Level as_level{level.stages};
    level.measure = as_level.measure_at(depth);
    level.measure_bound = pow2(-r) / delta;
    if (level.measure > level.measure_bound)
      throw MassBoundError("derive_classical_test: level " + std::to_string(r) + " has measure " +
                           rational_to_string(level.measure) + " > bound " +
                           rational_to_string(level.measure_bound) +
                           " (input test violates its mass bound)");
    out.levels.push_back(std::move(level));
  }
  return out;
}

bool level_covers(const ClassicalMLTest::Level& level, const ClassicalSequence& z) {
  for (const auto& stage : level.stages)
    if (stage.contains(z.prefix(stage.k()))) return true;
  return false;
}

} // namespace qcantor
