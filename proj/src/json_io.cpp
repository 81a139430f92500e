#include "qcantor/json_io.hpp"

namespace qcantor {

namespace {

Rational exact_entry_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw ParseError("exact entries must be rational strings or integers, got: " + j.dump());
}

double float_entry_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return to_double(parse_rational(j.get<std::string>()));
  throw ParseError("float entries must be numbers, got: " + j.dump());
}

Json entry_to_json(const GaussianRational& z) {
  return Json{{"re", rational_to_string(z.re)}, {"im", rational_to_string(z.im)}};
}

Json entry_to_json(const std::complex<double>& z) {
  return Json{{"re", z.real()}, {"im", z.imag()}};
}

bool backend_is_exact(const Json& j) {
  const std::string b = j.at("backend").get<std::string>();
  if (b == "exact") return true;
  if (b == "float") return false;
  throw ParseError("backend must be \"exact\" or \"float\", got: " + b);
}

} // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json entries = Json::array();
  const Eigen::Index d = m.dim();
  for (Eigen::Index i = 0; i < d; ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < d; ++j) {
      if (m.is_exact())
        row.push_back(entry_to_json(m.exact()(i, j)));
      else
        row.push_back(entry_to_json(m.floating()(i, j)));
    }
    entries.push_back(std::move(row));
  }
  return Json{{"n_qubits", m.n_qubits()},
              {"backend", backend_name(m.backend())},
              {"entries", std::move(entries)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  const int n = j.at("n_qubits").get<int>();
  if (n < 0) throw ParseError("n_qubits must be >= 0");
  const Eigen::Index d = Eigen::Index(1) << n;
  const Json& entries = j.at("entries");
  if (!entries.is_array() || static_cast<Eigen::Index>(entries.size()) != d)
    throw ParseError("matrix entries must be a " + std::to_string(d) + "-row array");
  const bool exact = backend_is_exact(j);
  ExactMatrix em;
  FloatMatrix fm;
  if (exact)
    em = ExactMatrix::Zero(d, d);
  else
    fm = FloatMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const Json& row = entries[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d)
      throw ParseError("matrix row " + std::to_string(i) + " has the wrong length");
    for (Eigen::Index c = 0; c < d; ++c) {
      const Json& cell = row[static_cast<std::size_t>(c)];
      if (exact)
        em(i, c) = GaussianRational(exact_entry_from_json(cell.at("re")),
                                    exact_entry_from_json(cell.at("im")));
      else
        fm(i, c) = std::complex<double>(float_entry_from_json(cell.at("re")),
                                        float_entry_from_json(cell.at("im")));
    }
  }
  return exact ? ComplexMatrix::from_exact(std::move(em)) : ComplexMatrix::from_float(std::move(fm));
}

Json vector_to_json(const ComplexVector& v) {
  Json entries = Json::array();
  for (Eigen::Index i = 0; i < v.dim(); ++i) {
    if (v.is_exact())
      entries.push_back(entry_to_json(v.exact()(i)));
    else
      entries.push_back(entry_to_json(v.floating()(i)));
  }
  return Json{{"n_qubits", v.n_qubits()},
              {"backend", backend_name(v.backend())},
              {"entries", std::move(entries)}};
}

ComplexVector vector_from_json(const Json& j) {
  const int n = j.at("n_qubits").get<int>();
  const Eigen::Index d = Eigen::Index(1) << n;
  const Json& entries = j.at("entries");
  if (!entries.is_array() || static_cast<Eigen::Index>(entries.size()) != d)
    throw ParseError("vector entries must have length " + std::to_string(d));
  if (backend_is_exact(j)) {
    ExactVector v(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      const Json& cell = entries[static_cast<std::size_t>(i)];
      v(i) = GaussianRational(exact_entry_from_json(cell.at("re")), exact_entry_from_json(cell.at("im")));
    }
    return ComplexVector::from_exact(std::move(v));
  }
  FloatVector v(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const Json& cell = entries[static_cast<std::size_t>(i)];
    v(i) = std::complex<double>(float_entry_from_json(cell.at("re")), float_entry_from_json(cell.at("im")));
  }
  return ComplexVector::from_float(std::move(v));
}

CoherentState state_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const int max_depth = j.at("max_depth").get<int>();
  const Json params = j.value("params", Json::object());
  if (kind == "bits")
    return from_bits(ClassicalSequence::from_pattern(params.at("pattern").get<std::string>(), max_depth));
  if (kind == "measure") {
    const std::string type = params.at("type").get<std::string>();
    if (type == "uniform") return from_measure(MeasureState::uniform(), max_depth);
    if (type == "bernoulli")
      return from_measure(MeasureState::bernoulli(parse_rational(params.at("p").get<std::string>())),
                          max_depth);
    if (type == "dirac")
      return from_measure(MeasureState::dirac(ClassicalSequence::from_pattern(
                              params.at("pattern").get<std::string>(), max_depth)),
                          max_depth);
    throw ParseError("unknown measure type: " + type);
  }
  if (kind == "iid") return iid_state(DensityMatrix(matrix_from_json(params.at("matrix"))), max_depth);
  if (kind == "epr") return epr_chain(max_depth);
  if (kind == "tracial") return tracial_state(max_depth);
  if (kind == "matrix_sequence") {
    std::vector<DensityMatrix> levels;
    for (const auto& m : params.at("matrices")) levels.emplace_back(matrix_from_json(m));
    return from_matrix_sequence(std::move(levels));
  }
  throw ParseError("unknown state kind: " + kind);
}

namespace {

ClassicalSigma1Level classical_level_from_json(const Json& j) {
  ClassicalSigma1Level level;
  for (const auto& stage : j.at("stages"))
    level.stages.emplace_back(stage.at("k").get<int>(),
                              stage.at("strings").get<std::vector<std::string>>());
  return level;
}

QMLTest fixture_test(const std::string& name, int max_levels, int max_depth) {
  if (name == "classical_prefix") return fixtures::classical_prefix_test(max_levels, max_depth);
  if (name == "rotated_basis") return fixtures::rotated_basis_test(max_levels, max_depth);
  if (name == "rotated_basis_345") return fixtures::rotated_basis_test(max_levels, max_depth, 4, 3, 5);
  if (name == "zero") return fixtures::zero_test(max_levels, max_depth);
  throw ParseError("unknown test fixture: " + name);
}

std::vector<QuantumSigma1Set> sigma1_sets_from_json(const Json& levels) {
  std::vector<QuantumSigma1Set> sets;
  for (const auto& level : levels) {
    std::vector<SpecialProjection> ps;
    for (const auto& m : level) ps.emplace_back(matrix_from_json(m));
    sets.push_back(QuantumSigma1Set::from_projections(std::move(ps)));
  }
  return sets;
}

} // namespace

QMLTest qml_test_from_json(const Json& j) {
  const std::string kind = j.value("kind", "qml");
  if (j.contains("fixture"))
    return fixture_test(j.at("fixture").get<std::string>(), j.at("max_levels").get<int>(),
                        j.at("max_depth").get<int>());
  if (kind == "classical") {
    std::vector<ClassicalSigma1Level> levels;
    for (const auto& level : j.at("levels")) levels.push_back(classical_level_from_json(level));
    const int max_depth = j.at("max_depth").get<int>();
    auto shared = std::make_shared<std::vector<ClassicalSigma1Level>>(std::move(levels));
    return classical_to_quantum([shared](int r) { return (*shared)[static_cast<std::size_t>(r)]; },
                                static_cast<int>(shared->size()), max_depth);
  }
  if (kind == "qml") {
    if (!j.contains("levels") || j.at("levels").empty())
      throw ParseError("qml test requires a nonempty levels array");
    return QMLTest::from_sets(sigma1_sets_from_json(j.at("levels")));
  }
  throw ParseError("unknown test kind: " + kind);
}

SolovayTest solovay_test_from_json(const Json& j) {
  SolovayTest test;
  test.levels = sigma1_sets_from_json(j.at("levels"));
  test.declared_mass_bound = parse_rational(j.at("mass_bound").get<std::string>());
  if (test.levels.empty()) throw ParseError("solovay test requires a nonempty levels array");
  return test;
}

StrongSolovayTest strong_solovay_test_from_json(const Json& j) {
  if (j.contains("fixture")) {
    if (j.at("fixture").get<std::string>() == "part2") return fixtures::part2_fixture_test();
    throw ParseError("unknown strong Solovay fixture: " + j.at("fixture").get<std::string>());
  }
  std::vector<StrongSolovayTest::Item> items;
  for (const auto& item : j.at("items"))
    items.push_back({item.at("n").get<int>(), SpecialProjection(matrix_from_json(item.at("matrix")))});
  return StrongSolovayTest::make(std::move(items),
                                 parse_rational(j.at("mass_bound").get<std::string>()));
}

UnitaryMachine machine_from_json(const Json& j) {
  const int max_depth = j.at("max_depth").get<int>();
  if (j.contains("name")) {
    const std::string name = j.at("name").get<std::string>();
    if (name == "identity") return UnitaryMachine::identity(max_depth);
    if (name == "bit_reversal") return UnitaryMachine::bit_reversal(max_depth);
    throw ParseError("unknown machine name: " + name);
  }
  std::map<int, ComplexMatrix> circuits;
  for (const auto& c : j.at("circuits")) circuits.emplace(c.at("n").get<int>(), matrix_from_json(c.at("matrix")));
  if (j.value("default", "identity") != "identity")
    throw ParseError("only \"identity\" is supported as the default circuit");
  return UnitaryMachine::from_circuits(std::move(circuits), max_depth);
}

StateDictionary dictionary_from_json(const Json& j) {
  StateDictionary dict = StateDictionary::basis_strings(j.value("basis_max_len", 8));
  if (j.contains("extra"))
    for (const auto& v : j.at("extra")) dict.append(vector_from_json(v));
  return dict;
}

Json coherence_report_to_json(const CoherenceReport& report) {
  Json levels = Json::array();
  for (const auto& l : report.levels)
    levels.push_back(Json{{"n", l.n}, {"deviation", l.deviation}, {"exact_zero", l.exact_zero}});
  return Json{{"levels", std::move(levels)}, {"max_deviation", report.max_deviation()}};
}

Json verdict_to_json(const Verdict& v) {
  Json j{{"delta", v.delta},
         {"fails_at_order_delta_up_to_depth", v.fails},
         {"levels_exceeding_delta", v.exceed_count}};
  if (v.witness) j["passes_witnessed_at_level"] = *v.witness;
  return j;
}

Json classical_test_to_json(const ClassicalMLTest& test) {
  Json levels = Json::array();
  for (const auto& level : test.levels) {
    Json stages = Json::array();
    for (const auto& stage : level.stages)
      stages.push_back(Json{{"k", stage.k()}, {"strings", stage.strings()}});
    levels.push_back(Json{{"r", level.r},
                          {"stages", std::move(stages)},
                          {"measure", rational_to_string(level.measure)},
                          {"measure_bound", rational_to_string(level.measure_bound)}});
  }
  return Json{{"delta", rational_to_string(test.delta)}, {"depth", test.depth}, {"levels", std::move(levels)}};
}

Json compression_record_to_json(const CompressionRecord& record) {
  return Json{{"n", record.n},
              {"k", record.k},
              {"achieved_distance", record.achieved_distance},
              {"witness", matrix_to_json(record.witness.matrix())}};
}

Json entropy_report_to_json(const EntropyReport& report) {
  Json rows = Json::array();
  for (const auto& row : report.rows) {
    Json r{{"n", row.n}, {"H_n", row.h}, {"rate_n", row.rate}};
    if (row.cross) r["cross_entropy_n"] = *row.cross;
    rows.push_back(std::move(r));
  }
  return Json{{"kind", report.kind}, {"rows", std::move(rows)}};
}

} // namespace qcantor
