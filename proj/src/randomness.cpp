#include "qcantor/randomness.hpp"
#include <bit>

namespace qcantor {

QuantumSigma1Set QuantumSigma1Set::from_projections(std::vector<SpecialProjection> projections) {
  if (projections.empty()) throw InvalidArgumentError("quantum Sigma1 set: no projections given");
  for (std::size_t i = 0; i < projections.size(); ++i)
    if (projections[i].n_qubits() != static_cast<int>(i))
      throw DimensionMismatchError("quantum Sigma1 set: projection " + std::to_string(i) +
                                   " does not live in M_" + std::to_string(i));
  auto shared = std::make_shared<std::vector<SpecialProjection>>(std::move(projections));
  return QuantumSigma1Set([shared](int i) { return (*shared)[static_cast<std::size_t>(i)]; },
                          static_cast<int>(shared->size()) - 1);
}

QuantumSigma1Set QuantumSigma1Set::from_clopen(ClassicalSigma1Level level, int max_depth,
                                               std::optional<Rational> mass_bound) {
  auto shared = std::make_shared<ClassicalSigma1Level>(std::move(level));
  return QuantumSigma1Set(
      [shared, mass_bound](int i) {
        const ClopenSet covered = shared->covered_at(i);
        if (mass_bound && covered.measure() > *mass_bound)
          throw MassBoundError("clopen level measure " + rational_to_string(covered.measure()) +
                               " exceeds bound " + rational_to_string(*mass_bound) + " at depth " +
                               std::to_string(i));
        return SpecialProjection::diagonal(i, covered.strings());
      },
      max_depth);
}

const SpecialProjection& QuantumSigma1Set::level(int i) const {
  if (i < 0 || i > impl_->max_depth)
    throw DepthExceededError("Sigma1 level " + std::to_string(i) + " exceeds max_depth " +
                             std::to_string(impl_->max_depth));
  std::lock_guard<std::mutex> lock(impl_->mu);
  auto it = impl_->memo.find(i);
  if (it == impl_->memo.end()) {
    SpecialProjection p = impl_->gen(i);
    if (p.n_qubits() != i) throw InvalidStateError("Sigma1 generator returned a projection of the wrong size");
    it = impl_->memo.emplace(i, std::move(p)).first;
  }
  return it->second;
}

double sigma1_mass(const QuantumSigma1Set& g, int depth) { return tracial_value(g.level(depth)); }

Rational sigma1_mass_exact(const QuantumSigma1Set& g, int depth) {
  return tracial_value_exact(g.level(depth));
}

QuantumSigma1Set sigma1_join(const QuantumSigma1Set& g, const QuantumSigma1Set& h) {
  QuantumSigma1Set lhs = g, rhs = h;
  return QuantumSigma1Set([lhs, rhs](int i) { return projection_join(lhs.level(i), rhs.level(i)); },
                          std::min(g.max_depth(), h.max_depth()));
}

MonotonicityReport check_monotone(const QuantumSigma1Set& g, int depth) {
  MonotonicityReport report;
  for (int i = 0; i < depth; ++i) {
    ComplexMatrix lifted = embed(g.level(i).matrix());
    ComplexMatrix next = g.level(i + 1).matrix();
    if (next.backend() != lifted.backend()) {
      lifted = lifted.as_float();
      next = next.as_float();
    }
    report.levels.push_back({i, max_abs_difference(next * lifted, lifted)});
  }
  return report;
}

QMLTest QMLTest::from_sets(std::vector<QuantumSigma1Set> sets) {
  if (sets.empty()) throw InvalidArgumentError("qML test: no levels given");
  auto shared = std::make_shared<std::vector<QuantumSigma1Set>>(std::move(sets));
  return QMLTest([shared](int r) { return (*shared)[static_cast<std::size_t>(r)]; },
                 static_cast<int>(shared->size()));
}

const QuantumSigma1Set& QMLTest::level_set(int r) const {
  if (r < 0 || r >= impl_->max_levels)
    throw DepthExceededError("qML test level " + std::to_string(r) + " out of range");
  std::lock_guard<std::mutex> lock(impl_->mu);
  auto it = impl_->memo.find(r);
  if (it == impl_->memo.end()) it = impl_->memo.emplace(r, impl_->gen(r)).first;
  return it->second;
}

StrongSolovayTest StrongSolovayTest::make(std::vector<Item> items, Rational declared_mass_bound) {
  Rational total = 0;
  for (std::size_t r = 0; r < items.size(); ++r) {
    if (r > 0 && items[r].n_r <= items[r - 1].n_r)
      throw InvalidStateError("strong Solovay test: n_r must be strictly increasing");
    if (items[r].projection.n_qubits() != items[r].n_r)
      throw DimensionMismatchError("strong Solovay test: projection size disagrees with n_r");
    // rank/2^n is exact for both backends; rank() already validated the trace.
    total += Rational(static_cast<long long>(items[r].projection.rank())) * pow2(-items[r].n_r);
  }
  if (total > declared_mass_bound)
    throw MassBoundError("strong Solovay test: total mass " + rational_to_string(total) +
                         " exceeds the declared bound");
  return StrongSolovayTest{std::move(items), std::move(declared_mass_bound)};
}

std::vector<MassViolation> verify_qml_mass(const QMLTest& test, int depth) {
  std::vector<MassViolation> violations;
  for (int r = 0; r < test.max_levels(); ++r) {
    const QuantumSigma1Set& g = test.level_set(r);
    const Rational bound = pow2(-r);
    for (int i = 0; i <= std::min(depth, g.max_depth()); ++i) {
      const SpecialProjection& p = g.level(i);
      if (p.is_exact()) {
        const Rational mass = tracial_value_exact(p);
        if (mass > bound) violations.push_back({r, i, to_double(mass), to_double(bound)});
      } else {
        const double mass = tracial_value(p);
        if (mass > to_double(bound) + kTolEig) violations.push_back({r, i, mass, to_double(bound)});
      }
    }
  }
  return violations;
}

bool verify_solovay_mass(const SolovayTest& test, int depth) {
  double total = 0;
  for (const auto& g : test.levels) total += sigma1_mass(g, std::min(depth, g.max_depth()));
  return total <= to_double(test.declared_mass_bound) + kTolEig;
}

std::vector<double> evaluate_test(const CoherentState& rho, const QMLTest& test, int depth) {
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(test.max_levels()));
  for (int r = 0; r < test.max_levels(); ++r) values.push_back(evaluate(rho, test.level_set(r).level(depth)));
  return values;
}

std::vector<double> evaluate_test(const CoherentState& rho, const SolovayTest& test, int depth) {
  std::vector<double> values;
  values.reserve(test.levels.size());
  for (const auto& g : test.levels) values.push_back(evaluate(rho, g.level(depth)));
  return values;
}

namespace {

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgumentError("delta must lie in (0,1)");
}

} // namespace

Verdict ml_verdict(const std::vector<double>& values, double delta) {
  check_delta(delta);
  if (values.empty()) throw InvalidArgumentError("verdict: empty value list");
  Verdict v;
  v.delta = delta;
  v.fails = true;
  for (std::size_t r = 0; r < values.size(); ++r) {
    if (values[r] > delta) {
      ++v.exceed_count;
    } else if (v.fails) {
      v.fails = false;
      v.witness = static_cast<int>(r);
    }
  }
  return v;
}

Verdict solovay_verdict(const std::vector<double>& values, double delta, int threshold) {
  check_delta(delta);
  if (values.empty()) throw InvalidArgumentError("verdict: empty value list");
  if (threshold < 1) throw InvalidArgumentError("verdict: Solovay threshold must be >= 1");
  Verdict v;
  v.delta = delta;
  for (double x : values)
    if (x > delta) ++v.exceed_count;
  v.fails = v.exceed_count >= threshold;
  return v;
}

SpecialProjection universal_combine(std::span<const QMLTest> tests, int n, int k) {
  if (k < n + 1) throw InvalidArgumentError("universal_combine: requires k >= n+1");
  std::vector<SpecialProjection> terms;
  for (std::size_t e = 0; e < tests.size(); ++e) {
    const int level = static_cast<int>(e) + n + 1;
    if (level > k) break;
    if (level >= tests[e].max_levels())
      throw DepthExceededError("universal_combine: test " + std::to_string(e) +
                               " does not provide level " + std::to_string(level));
    const QuantumSigma1Set& g = tests[e].level_set(level);
    if (k > g.max_depth())
      throw DepthExceededError("universal_combine: test " + std::to_string(e) +
                               " has no projection at depth " + std::to_string(k));
    terms.push_back(g.level(k));
  }
  if (terms.empty()) return SpecialProjection::zero(k);
  return projection_join_all(terms);
}

QMLTest classical_to_quantum(std::function<ClassicalSigma1Level(int)> levels, int max_levels,
                             int max_depth) {
  return QMLTest(
      [levels, max_depth](int r) {
        ClassicalSigma1Level level = levels(r);
        if (!level.stages_increasing())
          throw InvalidStateError("classical test level " + std::to_string(r) +
                                  " is not an increasing union of clopen sets");
        return QuantumSigma1Set::from_clopen(std::move(level), max_depth, pow2(-r));
      },
      max_levels);
}

SpecialProjection lln_projection(int n, int i) {
  if (i < 0 || i >= n) throw InvalidArgumentError("lln_projection: qubit index out of range");
  const Eigen::Index d = Eigen::Index(1) << n;
  ExactMatrix m = ExactMatrix::Zero(d, d);
  for (Eigen::Index idx = 0; idx < d; ++idx)
    if (bit_of_index(idx, i)) m(idx, idx) = GaussianRational(1);
  return SpecialProjection::trusted(ComplexMatrix::from_exact(std::move(m)));
}

// sum_i rho(S_{n,i}) touches only the diagonal: each S_{n,i} is diagonal, so
// the double sum collapses to sum_idx popcount(idx) * rho_{idx,idx}.
double lln_statistic(const CoherentState& rho, int n) {
  if (n < 1) throw InvalidArgumentError("lln_statistic: n must be >= 1");
  const ComplexMatrix& level = rho.level(n).matrix();
  if (level.is_exact()) return to_double(lln_statistic_exact(rho, n));
  double sum = 0;
  for (Eigen::Index idx = 0; idx < level.dim(); ++idx)
    sum += static_cast<double>(std::popcount(static_cast<std::uint64_t>(idx))) *
           level.floating()(idx, idx).real();
  return sum / n;
}

Rational lln_statistic_exact(const CoherentState& rho, int n) {
  if (n < 1) throw InvalidArgumentError("lln_statistic: n must be >= 1");
  const ExactMatrix& level = rho.level(n).matrix().exact();
  Rational sum = 0;
  for (Eigen::Index idx = 0; idx < level.rows(); ++idx) {
    if (level(idx, idx).is_zero()) continue;
    sum += Rational(std::popcount(static_cast<std::uint64_t>(idx))) * level(idx, idx).re;
  }
  return sum / n;
}

} // namespace qcantor
