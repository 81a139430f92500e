#include "qcantor/scenarios.hpp"

#include <chrono>
#include <cmath>

#include "qcantor/entropy.hpp"

namespace qcantor {

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
  Json items = Json::array();
  bool pass = true;

  void expect(const std::string& what, bool ok) {
    pass = pass && ok;
    items.push_back(Json{{"check", what}, {"ok", ok}});
  }
  void expect_near(const std::string& what, double value, double target, double tol) {
    const bool ok = std::abs(value - target) <= tol;
    pass = pass && ok;
    items.push_back(Json{{"check", what}, {"ok", ok}, {"value", value}, {"target", target}});
  }
  void expect_le(const std::string& what, double value, double bound) {
    const bool ok = value <= bound;
    pass = pass && ok;
    items.push_back(Json{{"check", what}, {"ok", ok}, {"value", value}, {"bound", bound}});
  }
};

int f_two_log(int n) {
  int bits = 0;
  while ((1 << bits) < n + 2) ++bits; // ceil(log2(n+2))
  return 2 * bits;
}

// f(3) = 3, f(n) = n + 5 elsewhere: satisfies the 1/4 budget and makes the
// n = 3 stage of the incompressibility test nonempty.
int f_pinpoint(int n) { return n == 3 ? 3 : n + 5; }

// ---- scenario 1: coherence of every constructor ----------------------------

ScenarioResult coherence_suite(std::mt19937_64& rng) {
  Check c;
  const int depth = 8;
  std::vector<std::pair<std::string, CoherentState>> states;
  states.emplace_back("bits_0", from_bits(ClassicalSequence::zeros(depth)));
  states.emplace_back("bits_10", from_bits(ClassicalSequence::from_pattern("10", depth)));
  states.emplace_back("measure_uniform", from_measure(MeasureState::uniform(), depth));
  states.emplace_back("measure_bernoulli_1_3", from_measure(MeasureState::bernoulli(rational(1, 3)), depth));
  ExactMatrix sigma = ExactMatrix::Zero(2, 2);
  sigma(0, 0) = GaussianRational(rational(1, 3));
  sigma(1, 1) = GaussianRational(rational(2, 3));
  states.emplace_back("iid_exact", iid_state(DensityMatrix(ComplexMatrix::from_exact(sigma)), depth));
  FloatMatrix sigf(2, 2);
  sigf << 0.3, std::complex<double>(0.1, 0.05), std::complex<double>(0.1, -0.05), 0.7;
  states.emplace_back("iid_float", iid_state(DensityMatrix(ComplexMatrix::from_float(sigf)), depth));
  states.emplace_back("epr", epr_chain(depth));
  for (const auto& [name, state] : states) {
    const CoherenceReport rep = check_coherence(state, depth);
    if (state.backend() == Backend::exact) {
      bool all_exact = true;
      for (const auto& level : rep.levels) all_exact = all_exact && level.exact_zero;
      c.expect(name + " coherent (deviation identically 0)", all_exact);
    } else {
      c.expect_le(name + " coherence deviation", rep.max_deviation(), 1e-9);
    }
  }
  for (int i = 0; i < 20; ++i) {
    const CoherentState state = fixtures::random_matrix_sequence_state(rng, depth);
    const CoherenceReport rep = check_coherence(state, depth);
    bool all_exact = true;
    for (const auto& level : rep.levels) all_exact = all_exact && level.exact_zero;
    c.expect("random_matrix_sequence_" + std::to_string(i) + " coherent", all_exact);
  }
  return {1, "coherence suite to depth 8", c.pass, 0, Json{{"checks", c.items}}};
}

// ---- scenario 2: partial trace oracles --------------------------------------

ScenarioResult partial_trace_oracles() {
  Check c;
  const ComplexMatrix ten = DensityMatrix::pure_basis("10").matrix();
  const ComplexMatrix one = DensityMatrix::pure_basis("1").matrix();
  c.expect("T_1(|10><10|) = |1><1| exactly", exactly_equal(partial_trace(ten).exact(), one.exact()));
  const ComplexMatrix beta = epr_pair().matrix();
  const ComplexMatrix mixed = DensityMatrix::maximally_mixed(1).matrix();
  c.expect("T_1(beta) = I/2 exactly", exactly_equal(partial_trace(beta).exact(), mixed.exact()));
  return {2, "partial-trace oracles", c.pass, 0, Json{{"checks", c.items}}};
}

// ---- scenario 3: measure bounds ---------------------------------------------

ScenarioResult measure_bounds(std::mt19937_64& rng) {
  Check c;
  const int max_r = 6, max_k = 8;
  const std::vector<std::pair<std::string, QMLTest>> tests = {
      {"classical_prefix", fixtures::classical_prefix_test(max_r + 1, max_k)},
      {"rotated_basis", fixtures::rotated_basis_test(max_r + 1, max_k)},
      {"rotated_basis_345", fixtures::rotated_basis_test(max_r + 1, max_k, 4, 3, 5)},
  };
  for (const auto& [name, test] : tests) {
    bool ok = true;
    for (int r = 0; r <= max_r; ++r)
      for (int k = 0; k <= max_k; ++k)
        ok = ok && sigma1_mass_exact(test.level_set(r), k) <= pow2(-r);
    c.expect(name + ": tau(p^r_k) <= 2^-r exactly for r <= 6, k <= 8", ok);
  }
  bool subadditive = true;
  for (int i = 0; i < 50; ++i) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const auto p = fixtures::random_rational_projection(rng, n, 1 + static_cast<int>(rng() % 3));
    const auto q = fixtures::random_rational_projection(rng, n, 1 + static_cast<int>(rng() % 3));
    subadditive = subadditive && tracial_value_exact(projection_join(p, q)) <=
                                     tracial_value_exact(p) + tracial_value_exact(q);
  }
  c.expect("join subadditivity: 50 exact pairs, exact comparison", subadditive);
  subadditive = true;
  for (int i = 0; i < 50; ++i) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const auto p = fixtures::random_float_projection(rng, n, 1 + static_cast<int>(rng() % 3));
    const auto q = fixtures::random_float_projection(rng, n, 1 + static_cast<int>(rng() % 3));
    subadditive = subadditive &&
                  tracial_value(projection_join(p, q)) <= tracial_value(p) + tracial_value(q) + 1e-9;
  }
  c.expect("join subadditivity: 50 float pairs, tolerance 1e-9", subadditive);
  return {3, "measure bounds", c.pass, 0, Json{{"checks", c.items}}};
}

// ---- scenario 4: universal combiner ------------------------------------------

ScenarioResult universal_combiner() {
  Check c;
  const int max_k = 8;
  const std::vector<QMLTest> tests = {
      fixtures::classical_prefix_test(12, max_k),
      fixtures::rotated_basis_test(12, max_k),
      fixtures::rotated_basis_test(12, max_k, 4, 3, 5),
  };
  ExactMatrix sigma = ExactMatrix::Zero(2, 2);
  sigma(0, 0) = GaussianRational(rational(2, 3));
  sigma(1, 1) = GaussianRational(rational(1, 3));
  const std::vector<CoherentState> states = {
      tracial_state(max_k),
      from_bits(ClassicalSequence::zeros(max_k)),
      from_bits(ClassicalSequence::from_pattern("10", max_k)),
      iid_state(DensityMatrix(ComplexMatrix::from_exact(sigma)), max_k),
      epr_chain(max_k),
  };
  bool mass_ok = true, domination_ok = true;
  for (int n = 0; n <= 3; ++n) {
    for (int k = n + 1; k <= max_k; ++k) {
      const SpecialProjection q = universal_combine(tests, n, k);
      mass_ok = mass_ok && tracial_value(q) <= std::pow(2.0, -n) + 1e-9;
      for (const auto& rho : states) {
        const double lhs = evaluate(rho, q);
        for (std::size_t e = 0; e < tests.size(); ++e) {
          const int level = static_cast<int>(e) + n + 1;
          if (level > k) continue;
          const double rhs = evaluate(rho, tests[e].level_set(level).level(k));
          domination_ok = domination_ok && lhs >= rhs - 1e-9;
        }
      }
    }
  }
  c.expect("tau(q^n_k) <= 2^-n for n <= 3, k <= 8 (tol 1e-9)", mass_ok);
  c.expect("domination over 3 tests x 5 states (tol 1e-9)", domination_ok);
  return {4, "universal combiner", c.pass, 0, Json{{"checks", c.items}}};
}

// ---- scenario 5: Theorem 3.7 at desk scale -----------------------------------

ScenarioResult classical_quantum_bridge() {
  Check c;
  const int depth = 8;
  // (a) classical -> quantum: 0^infty fails the lifted prefix test at 0.99
  const QMLTest prefix = fixtures::classical_prefix_test(7, depth);
  const CoherentState z = from_bits(ClassicalSequence::zeros(depth));
  const Verdict v = ml_verdict(evaluate_test(z, prefix, depth), 0.99);
  c.expect("0^infty fails classical_to_quantum(prefix test) at delta=0.99 up to depth 8", v.fails);
  // (b) quantum -> classical on the rotated-basis fixture at delta = 1/2
  const QMLTest rotated = fixtures::rotated_basis_test(6, depth);
  const ClassicalMLTest derived = derive_classical_test(rotated, rational(1, 2), depth);
  const ClassicalSequence zeros = ClassicalSequence::zeros(depth);
  bool measures_ok = true, covers_ok = true;
  for (const auto& level : derived.levels) {
    if (level.r > 5) continue;
    measures_ok = measures_ok && level.measure <= pow2(-level.r + 1);
    covers_ok = covers_ok && level_covers(level, zeros);
  }
  c.expect("derived levels r <= 5 have exact measure <= 2^{-r+1}", measures_ok);
  c.expect("derived levels r <= 5 cover the fixture's bit sequence", covers_ok);
  return {5, "Theorem 3.7 desk-scale round trip", c.pass, 0, Json{{"checks", c.items}}};
}

// ---- scenario 6: Claims 3.1 / 3.2 by brute force --------------------------------

ScenarioResult selection_claims(std::mt19937_64& rng) {
  Check c;
  std::vector<SpecialProjection> projections;
  // diagonal prefix projections
  for (int k = 1; k <= 5; ++k)
    projections.push_back(
        SpecialProjection::diagonal(k, {std::string(static_cast<std::size_t>(k), '0')}));
  // rotated-basis fixture levels
  const QMLTest rotated = fixtures::rotated_basis_test(4, 5);
  for (int r = 1; r <= 3; ++r)
    for (int k = r; k <= 5; ++k) projections.push_back(rotated.level_set(r).level(k));
  // |+><+| has rational entries even though the vector does not
  ExactMatrix plus(2, 2);
  const GaussianRational half(rational(1, 2));
  plus << half, half, half, half;
  projections.push_back(SpecialProjection(ComplexMatrix::from_exact(plus)));
  // part 2 fixture projections and random spans
  for (const auto& item : fixtures::part2_fixture_test().items) projections.push_back(item.projection);
  for (int i = 0; i < 6; ++i)
    projections.push_back(fixtures::random_rational_projection(rng, 1 + static_cast<int>(rng() % 5),
                                                               1 + static_cast<int>(rng() % 3)));
  const std::vector<Rational> deltas = {rational(1, 4), rational(1, 3), rational(1, 2), rational(3, 4)};
  bool claim31 = true, claim32 = true;
  int count = 0;
  for (const auto& p : projections) {
    if (p.n_qubits() > 5) continue;
    for (const auto& delta : deltas) {
      const StringSelection s = select_strings(p, delta);
      claim31 = claim31 && s.measure() <= tracial_value_exact(p) / delta;
      claim32 = claim32 && check_lifting(p, delta);
      ++count;
    }
  }
  c.expect("Claim 3.1 exact: lambda(S) <= tau(p)/delta over " + std::to_string(count) + " cases", claim31);
  c.expect("Claim 3.2: lifting equality by enumeration over all strings", claim32);
  return {6, "string selection claims", c.pass, 0, Json{{"checks", c.items}}};
}

// ---- scenario 7: projection bound Prop 4.6 -------------------------------------

ScenarioResult projection_distance_bound(std::mt19937_64& rng) {
  Check c;
  int kept = 0;
  bool prop_ok = true, fidelity_ok = true;
  while (kept < 200) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const DensityMatrix s = fixtures::random_float_density(rng, n);
    const SpecialProjection p =
        fixtures::random_float_projection(rng, n, 1 + static_cast<int>(rng() % ((1 << n) - 1)));
    const double alpha = trace_product(s.matrix(), p.matrix()).real();
    if (alpha <= 0.01) continue;
    ++kept;
    const DensityMatrix projected = state_project(s, p);
    const double d = trace_distance(projected, s);
    prop_ok = prop_ok && d <= std::sqrt(1.0 - alpha) + 1e-8;
    const double fid = fidelity(projected, s);
    fidelity_ok = fidelity_ok && d <= std::sqrt(std::max(0.0, 1.0 - fid * fid)) + 1e-8;
  }
  c.expect("D(Proj s p, s) <= sqrt(1-alpha) + 1e-8 over 200 seeded pairs", prop_ok);
  c.expect("D <= sqrt(1-F^2) + 1e-8 over the same pairs", fidelity_ok);
  return {7, "projection distance bound", c.pass, 0, Json{{"checks", c.items}}};
}

// ---- scenario 8: Part 2 end to end ----------------------------------------------

ScenarioResult part2_end_to_end() {
  Check c;
  const StrongSolovayTest test = fixtures::part2_fixture_test();
  const CoherentState rho = fixtures::part2_fixture_state(6);
  const SolovayMachine plan = solovay_to_machine(test);
  const double eps = 0.2;
  for (int r = 0; r < 3; ++r) {
    const auto& item = test.items[static_cast<std::size_t>(r)];
    const Rational tau = tracial_value_exact(item.projection);
    const int f = plan.f(item.n_r);
    c.expect("sandwich 2^-f >= tau(p_" + std::to_string(r) + ") > 2^-f-1 exactly",
             pow2(-f) >= tau && tau > pow2(-f - 1));
    const CompressionRecord rec = compress_via_test(rho, test, plan, r, eps);
    c.expect("k = g(n_r) = n_r - f(n_r) < n_r at r = " + std::to_string(r),
             rec.k == item.n_r - f && rec.k < item.n_r);
    c.expect_le("achieved distance at r = " + std::to_string(r), rec.achieved_distance,
                std::sqrt(0.1) + 1e-8);
  }
  return {8, "Part 2 compression end-to-end", c.pass, 0, Json{{"checks", c.items}}};
}

// ---- scenario 9: Part 1 mass bounds ----------------------------------------------

ScenarioResult part1_mass_bounds() {
  Check c;
  const UnitaryMachine machine = UnitaryMachine::identity(14);
  const StateDictionary dict = StateDictionary::basis_strings(8);
  Rational sum = 0;
  for (int n = 1; n <= 8; ++n) sum += pow2(-f_two_log(n));
  c.expect("sum of 2^-f over n = 1..8 is " + rational_to_string(sum) + " <= 1/4 exactly",
           sum <= rational(1, 4));
  bool mass_ok = true, monotone_ok = true;
  for (int r = 0; r <= 4; ++r) {
    Rational prev = 0;
    for (int t : {4, 8, 12}) {
      const Rational mass = part1_mass(machine, f_two_log, dict, r, t);
      mass_ok = mass_ok && mass <= pow2(-r);
      monotone_ok = monotone_ok && mass >= prev;
      prev = mass;
    }
  }
  c.expect("tau(p_{r,t}) <= 2^-r exactly for r <= 4, t up to 12", mass_ok);
  c.expect("tau(p_{r,t}) monotone in t", monotone_ok);
  // Contrapositive on a pinpointed f: |000> is reachable from the empty input,
  // so the n = 3 stage evaluates to 1 on 0^infty.
  Rational pin_sum = 0;
  for (int n = 1; n <= 8; ++n) pin_sum += pow2(-f_pinpoint(n));
  c.expect("pinpoint f keeps the 1/4 budget (" + rational_to_string(pin_sum) + ")",
           pin_sum <= rational(1, 4));
  bool pin_monotone = true;
  Rational prev = 0;
  for (int t = 2; t <= 14; t += 2) {
    const Rational mass = part1_mass(machine, f_pinpoint, dict, 0, t);
    pin_monotone = pin_monotone && mass >= prev;
    prev = mass;
  }
  c.expect("pinpoint masses monotone in t and eventually positive", pin_monotone && prev > 0);
  const SpecialProjection stage = part1_stage(machine, f_pinpoint, dict, 0, 14, 3);
  const CoherentState zeros = from_bits(ClassicalSequence::zeros(6));
  c.expect("reachable basis state evaluates to 1 on its stage",
           evaluate_exact(zeros, stage) == Rational(1));
  return {9, "Part 1 mass bounds", c.pass, 0, Json{{"checks", c.items}}};
}

// ---- scenario 10: law of large numbers --------------------------------------------

ScenarioResult lln_statistics() {
  Check c;
  const CoherentState tracial = tracial_state(10);
  bool tracial_ok = true;
  for (int n = 1; n <= 10; ++n) tracial_ok = tracial_ok && lln_statistic_exact(tracial, n) == rational(1, 2);
  c.expect("tracial state: statistic exactly 1/2 for n <= 10", tracial_ok);
  ExactMatrix sigma = ExactMatrix::Zero(2, 2);
  sigma(0, 0) = GaussianRational(rational(2, 3));
  sigma(1, 1) = GaussianRational(rational(1, 3));
  const CoherentState biased = iid_state(DensityMatrix(ComplexMatrix::from_exact(sigma)), 8);
  bool biased_ok = true;
  for (int n = 1; n <= 8; ++n) biased_ok = biased_ok && lln_statistic_exact(biased, n) == rational(1, 3);
  c.expect("iid(diag(2/3,1/3)): statistic exactly 1/3 for n <= 8", biased_ok);
  const ClassicalSequence pattern = ClassicalSequence::from_pattern("110", 10);
  const CoherentState bits = from_bits(pattern);
  bool bits_ok = true;
  for (int n = 1; n <= 10; ++n) {
    long long ones = 0;
    for (int i = 0; i < n; ++i) ones += pattern.bit(i);
    bits_ok = bits_ok && lln_statistic_exact(bits, n) == rational(ones, n);
  }
  c.expect("from_bits: statistic equals the running bit average exactly", bits_ok);
  return {10, "law of large numbers statistic", c.pass, 0, Json{{"checks", c.items}}};
}

// ---- scenario 11: entropy ------------------------------------------------------------

ScenarioResult entropy_statistics() {
  Check c;
  bool h_ok = true;
  for (int n = 1; n <= 6; ++n)
    h_ok = h_ok && std::abs(von_neumann_entropy(DensityMatrix::maximally_mixed(n)) - n) <= 1e-9;
  c.expect("H(2^-n I) = n within 1e-9 for n <= 6", h_ok);
  const CoherentState tracial = tracial_state(6);
  const CoherentState rho = epr_chain(6);
  bool cross_one = true;
  for (int n = 1; n <= 6; ++n) cross_one = cross_one && cross_entropy_statistic(rho, tracial, n) == 1.0;
  c.expect("cross-entropy against the tracial state is exactly 1", cross_one);
  ExactMatrix sigma = ExactMatrix::Zero(2, 2);
  sigma(0, 0) = GaussianRational(rational(3, 4));
  sigma(1, 1) = GaussianRational(rational(1, 4));
  const CoherentState iid = iid_state(DensityMatrix(ComplexMatrix::from_exact(sigma)), 6);
  const double h34 = -(0.75 * std::log2(0.75) + 0.25 * std::log2(0.25));
  bool self_ok = true;
  for (int n = 1; n <= 6; ++n)
    self_ok = self_ok && std::abs(cross_entropy_statistic(iid, iid, n) - h34) <= 1e-9;
  c.expect("iid(3/4) self-statistic equals the binary entropy within 1e-9", self_ok);
  return {11, "entropy statistics", c.pass, 0, Json{{"checks", c.items}}};
}

ScenarioResult timed(ScenarioResult (*fn)()) {
  const auto start = Clock::now();
  ScenarioResult r = fn();
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

ScenarioResult timed_rng(ScenarioResult (*fn)(std::mt19937_64&), std::mt19937_64& rng) {
  const auto start = Clock::now();
  ScenarioResult r = fn(rng);
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

} // namespace

std::vector<ScenarioResult> run_scenario_suite(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<ScenarioResult> results;
  results.push_back(timed_rng(coherence_suite, rng));
  results.push_back(timed(partial_trace_oracles));
  results.push_back(timed_rng(measure_bounds, rng));
  results.push_back(timed(universal_combiner));
  results.push_back(timed(classical_quantum_bridge));
  results.push_back(timed_rng(selection_claims, rng));
  results.push_back(timed_rng(projection_distance_bound, rng));
  results.push_back(timed(part2_end_to_end));
  results.push_back(timed(part1_mass_bounds));
  results.push_back(timed(lln_statistics));
  results.push_back(timed(entropy_statistics));
  return results;
}

Json scenario_suite_to_json(const std::vector<ScenarioResult>& results) {
  Json criteria = Json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.pass;
    criteria.push_back(Json{{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"details", r.details}});
  }
  return Json{{"criteria", std::move(criteria)}, {"all_pass", all}};
}

} // namespace qcantor
