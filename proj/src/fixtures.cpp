#include "qcantor/fixtures.hpp"

namespace qcantor::fixtures {

namespace {

// Small deterministic integers straight from the engine; avoids
// distribution objects whose output is implementation-defined.
long long draw(std::mt19937_64& rng, long long lo, long long hi) {
  return lo + static_cast<long long>(rng() % static_cast<unsigned long long>(hi - lo + 1));
}

double draw_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) / static_cast<double>(1ull << 53) * 2.0 - 1.0;
}

} // namespace

ExactVector random_gaussian_integer_vector(std::mt19937_64& rng, Eigen::Index dim) {
  ExactVector v(dim);
  bool nonzero = false;
  for (Eigen::Index i = 0; i < dim; ++i) {
    v(i) = GaussianRational(Rational(draw(rng, -2, 2)), Rational(draw(rng, -2, 2)));
    nonzero = nonzero || !v(i).is_zero();
  }
  if (!nonzero) v(0) = GaussianRational(1);
  return v;
}

SpecialProjection random_rational_projection(std::mt19937_64& rng, int n_qubits, int rank_hint) {
  std::vector<ComplexVector> vs;
  for (int i = 0; i < rank_hint; ++i)
    vs.push_back(ComplexVector::from_exact(random_gaussian_integer_vector(rng, Eigen::Index(1) << n_qubits)));
  return SpecialProjection::onto_span(n_qubits, vs);
}

SpecialProjection random_float_projection(std::mt19937_64& rng, int n_qubits, int rank_hint) {
  const Eigen::Index d = Eigen::Index(1) << n_qubits;
  std::vector<ComplexVector> vs;
  for (int i = 0; i < rank_hint; ++i) {
    FloatVector v(d);
    for (Eigen::Index j = 0; j < d; ++j) v(j) = std::complex<double>(draw_unit(rng), draw_unit(rng));
    vs.push_back(ComplexVector::from_float(std::move(v)));
  }
  return SpecialProjection::onto_span(n_qubits, vs);
}

DensityMatrix random_rational_density(std::mt19937_64& rng, int n_qubits, int mixture_terms) {
  const Eigen::Index d = Eigen::Index(1) << n_qubits;
  std::vector<ExactVector> vs;
  std::vector<Rational> weights;
  Rational total = 0;
  for (int i = 0; i < mixture_terms; ++i) {
    vs.push_back(random_gaussian_integer_vector(rng, d));
    weights.push_back(Rational(draw(rng, 1, 5)));
    total += weights.back();
  }
  ExactMatrix m = ExactMatrix::Zero(d, d);
  for (int t = 0; t < mixture_terms; ++t) {
    const ExactVector& v = vs[static_cast<std::size_t>(t)];
    Rational n2 = 0;
    for (Eigen::Index i = 0; i < d; ++i) n2 += abs2(v(i));
    const GaussianRational scale(weights[static_cast<std::size_t>(t)] / (total * n2));
    for (Eigen::Index j = 0; j < d; ++j) {
      if (v(j).is_zero()) continue;
      const GaussianRational col = conj(v(j)) * scale;
      for (Eigen::Index i = 0; i < d; ++i)
        if (!v(i).is_zero()) m(i, j) += v(i) * col;
    }
  }
  return DensityMatrix::trusted(ComplexMatrix::from_exact(std::move(m)));
}

DensityMatrix random_float_density(std::mt19937_64& rng, int n_qubits) {
  const Eigen::Index d = Eigen::Index(1) << n_qubits;
  FloatMatrix g(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) g(i, j) = std::complex<double>(draw_unit(rng), draw_unit(rng));
  FloatMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix::trusted(ComplexMatrix::from_float(std::move(rho)));
}

CoherentState random_matrix_sequence_state(std::mt19937_64& rng, int depth) {
  std::vector<DensityMatrix> levels(static_cast<std::size_t>(depth) + 1,
                                    DensityMatrix::maximally_mixed(0));
  levels[static_cast<std::size_t>(depth)] = random_rational_density(rng, depth);
  for (int n = depth; n > 0; --n)
    levels[static_cast<std::size_t>(n - 1)] =
        DensityMatrix::trusted(partial_trace(levels[static_cast<std::size_t>(n)].matrix()));
  return from_matrix_sequence(std::move(levels), "random_matrix_sequence");
}

ClassicalSigma1Level prefix_level(int r) {
  return ClassicalSigma1Level{{ClopenSet(r, {std::string(static_cast<std::size_t>(r), '0')})}};
}

QMLTest classical_prefix_test(int max_levels, int max_depth) {
  return classical_to_quantum([](int r) { return prefix_level(r); }, max_levels, max_depth);
}

QMLTest rotated_basis_test(int max_levels, int max_depth, long long a, long long b, long long c) {
  if (a * a + b * b != c * c) throw InvalidArgumentError("rotated_basis_test: (a,b,c) must be Pythagorean");
  return QMLTest(
      [a, b, c, max_depth](int r) {
        return QuantumSigma1Set(
            [a, b, c, r](int k) {
              if (r == 0) return SpecialProjection::identity(k);
              if (k < r) return SpecialProjection::zero(k);
              ExactVector u(2);
              u(0) = GaussianRational(rational(a, c));
              u(1) = GaussianRational(rational(b, c));
              ExactVector w = ExactVector::Zero(Eigen::Index(1) << r);
              // |0^{r-1}> (x) u: support on indices 0 and 2^{r-1}.
              w(0) = u(0);
              w(Eigen::Index(1) << (r - 1)) = u(1);
              const ComplexMatrix rank1 = ComplexVector::from_exact(std::move(w)).outer();
              return SpecialProjection::trusted(embed_to(rank1, k));
            },
            max_depth);
      },
      max_levels);
}

QMLTest zero_test(int max_levels, int max_depth) {
  return QMLTest([max_depth](int) { return QuantumSigma1Set::zero(max_depth); }, max_levels);
}

StrongSolovayTest part2_fixture_test() {
  std::vector<StrongSolovayTest::Item> items;
  for (int r = 0; r < 3; ++r) {
    const int n = r + 2;
    ExactVector w = ExactVector::Zero(Eigen::Index(1) << n);
    w(0) = GaussianRational(rational(24, 25));
    w(1) = GaussianRational(rational(7, 25));
    items.push_back({n, SpecialProjection::onto_span(n, {ComplexVector::from_exact(std::move(w)),
                                                         ComplexVector::basis(n, 2)})});
  }
  return StrongSolovayTest::make(std::move(items), rational(7, 8));
}

CoherentState part2_fixture_state(int max_depth) {
  return from_bits(ClassicalSequence::zeros(max_depth));
}

} // namespace qcantor::fixtures
