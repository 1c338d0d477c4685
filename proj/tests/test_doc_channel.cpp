#include <gtest/gtest.h>

#include "docergo/doc_channel.hpp"
#include "docergo/json_io.hpp"
#include "oracles.hpp"

using namespace docergo;

namespace {

ComplexMatrix transient_a() {
  ComplexMatrix a(3, 3);
  a << 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0, 0, 0;
  return a;
}

TripleABC transient(double x) {
  ComplexMatrix b(3, 3);
  b << 0.5, x, 0, x, 0.5, 0, 0, 0, 0;
  return {transient_a(), b, b};
}

TripleABC positive_core(double off) {
  ComplexMatrix a = ComplexMatrix::Constant(3, 3, 0.4);
  a.diagonal().setConstant(0.2);
  ComplexMatrix b = ComplexMatrix::Constant(3, 3, off);
  b.diagonal().setConstant(0.2);
  return {a, b, b};
}

TripleABC half_block(double sign) {
  ComplexMatrix a = ComplexMatrix::Constant(2, 2, 0.5);
  ComplexMatrix b(2, 2);
  b << 0.5, 0.5 * sign, 0.5 * sign, 0.5;
  return {a, b, b};
}

TripleABC identity_triple(int d) {
  return {ComplexMatrix::Identity(d, d), ComplexMatrix::Ones(d, d), ComplexMatrix::Identity(d, d)};
}

TripleABC depolarizing_triple(int d) {
  const ComplexMatrix id = ComplexMatrix::Identity(d, d) / static_cast<double>(d);
  return {ComplexMatrix::Constant(d, d, 1.0 / d), id, id};
}

// Choi matrix sum_kl Phi(E_kl) (x) E_kl assembled from the map itself.
ComplexMatrix choi_oracle(const TripleABC& t) {
  const int d = t.dim();
  ComplexMatrix j = ComplexMatrix::Zero(d * d, d * d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) j += oracle::kron(docergo::apply(t, oracle::unit(d, k, l)), oracle::unit(d, k, l));
  return j;
}

bool choi_says_channel(const TripleABC& t) {
  const int d = t.dim();
  const ComplexMatrix j = choi_oracle(t);
  if (max_abs(j - j.adjoint()) > 1e-10) return false;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(j);
  if (es.eigenvalues().minCoeff() < -1e-10) return false;
  // trace over the output factor gives the identity
  ComplexMatrix tr = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) tr += j.block(i * d, i * d, d, d);
  return max_abs(tr - ComplexMatrix::Identity(d, d)) <= 1e-10;
}

std::vector<Complex> oracle_spectrum(const TripleABC& t) {
  const int d = t.dim();
  auto phi = [&](const ComplexMatrix& x) -> ComplexMatrix { return docergo::apply(t, x); };
  Eigen::ComplexEigenSolver<ComplexMatrix> es(oracle::map_matrix(phi, d), false);
  return {es.eigenvalues().data(), es.eigenvalues().data() + d * d};
}

// Certified triple on a prescribed classical core.
TripleABC cptp_on(const ComplexMatrix& a, Rng& rng) {
  const int d = static_cast<int>(a.rows());
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const ComplexMatrix r = random_correlation(d, d, rng);
  ComplexMatrix b(d, d), c = diag_part(a);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) b(i, j) = std::sqrt(a(i, i).real() * a(j, j).real()) * r(i, j);
  b.diagonal() = a.diagonal();
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      c(i, j) = u(rng) * std::sqrt(a(i, j).real() * a(j, i).real()) * random_phase(rng);
      c(j, i) = std::conj(c(i, j));
    }
  return {a, b, c};
}

}  // namespace

TEST(Triple, RejectsMismatchedDiagonals) {
  ComplexMatrix b = transient_a();
  b(0, 0) = 0.4;
  EXPECT_THROW(TripleABC(transient_a(), b, transient_a()), InvalidMatrix);
  EXPECT_THROW(TripleABC(transient_a(), ComplexMatrix::Zero(2, 2), transient_a()), DimensionError);
}

TEST(Apply, IdentityAndDepolarizingTriples) {
  Rng rng(41);
  for (int d = 2; d <= 4; ++d) {
    const ComplexMatrix x = random_gaussian(d, d, rng);
    EXPECT_LT(max_abs(docergo::apply(identity_triple(d), x) - x), 1e-15);
    const ComplexMatrix dep = x.trace() * ComplexMatrix::Identity(d, d) / static_cast<double>(d);
    EXPECT_LT(max_abs(docergo::apply(depolarizing_triple(d), x) - dep), 1e-15);
  }
}

TEST(Apply, HandEvaluatedMatrixUnit) {
  ComplexMatrix want = ComplexMatrix::Zero(3, 3);
  want(0, 1) = want(1, 0) = 0.5;
  EXPECT_LT(max_abs(docergo::apply(transient(0.5), oracle::unit(3, 0, 1)) - want), 1e-15);
  EXPECT_THROW(docergo::apply(transient(0.5), ComplexMatrix::Zero(2, 2)), DimensionError);
}

TEST(Apply, TracePreservingForCertifiedTriples) {
  Rng rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const auto t = random_cptp_triple(2 + trial % 4, rng);
    const ComplexMatrix x = random_gaussian(t.dim(), t.dim(), rng);
    EXPECT_LT(std::abs(docergo::apply(t, x).trace() - x.trace()), 1e-10);
  }
}

TEST(Choi, MatchesMapOnMatrixUnits) {
  Rng rng(43);
  for (int d = 2; d <= 4; ++d) {
    const auto t = random_triple(d, rng);
    EXPECT_LT(max_abs(ldoi_matrix(t).matrix() - choi_oracle(t)), 1e-15);
    auto phi = [&](const ComplexMatrix& x) -> ComplexMatrix { return docergo::apply(t, x); };
    EXPECT_LT(max_abs(matrix_rep(t).matrix() - oracle::map_matrix(phi, d)), 1e-15);
    EXPECT_LT(max_abs(realign(ldoi_matrix(t)).matrix() - matrix_rep(t).matrix()), 1e-15);
  }
}

TEST(Choi, IdentityChannel) {
  const auto j = choi(DocChannel(identity_triple(3)));
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) EXPECT_EQ(j(i, i, k, k), Complex(1.0));
  EXPECT_NEAR(j.matrix().cwiseAbs().sum(), 9.0, 1e-15);
}

TEST(Choi, AllHalvesAssembly) {
  const auto j = choi(DocChannel(TripleABC(ComplexMatrix::Constant(2, 2, 0.5), ComplexMatrix::Constant(2, 2, 0.5),
                                           ComplexMatrix::Constant(2, 2, 0.5))));
  EXPECT_EQ(j(0, 1, 0, 1), Complex(0.5));
  EXPECT_EQ(j(0, 0, 1, 1), Complex(0.5));
  EXPECT_EQ(j(0, 1, 1, 0), Complex(0.5));
  EXPECT_EQ(j(0, 0, 0, 1), Complex(0.0));
}

TEST(ExtractTriple, RoundTripAndResidual) {
  Rng rng(44);
  const auto t = random_triple(4, rng);
  const auto x = ldoi_matrix(t);
  const auto back = extract_triple(x);
  EXPECT_EQ(max_abs(back.A() - t.A()) + max_abs(back.B() - t.B()) + max_abs(back.C() - t.C()), 0.0);
  EXPECT_EQ(ldoi_residual(x), 0.0);
  auto y = x;
  y(0, 1, 2, 3) = 0.25;
  EXPECT_EQ(ldoi_residual(y), 0.25);
}

TEST(Cptp, ExamplesAndFailedConditions) {
  EXPECT_TRUE(is_cptp(positive_core(0.1)).ok);
  EXPECT_TRUE(is_cptp(transient(0.5)).ok);

  ComplexMatrix a = ComplexMatrix::Identity(2, 2), c = ComplexMatrix::Identity(2, 2);
  c(0, 1) = c(1, 0) = 1.0;
  const auto pair = is_cptp({a, ComplexMatrix::Identity(2, 2), c});
  EXPECT_FALSE(pair.ok);
  EXPECT_EQ(pair.failed, "A_ij A_ji >= |C_ij|^2");

  ComplexMatrix bad_a = transient_a();
  bad_a(2, 0) = 0.1;
  EXPECT_EQ(is_cptp({bad_a, transient(0.5).B(), transient(0.5).C()}).failed, "A column stochastic");

  ComplexMatrix b = transient(0.5).B();
  b(0, 1) = b(1, 0) = 0.6;
  EXPECT_EQ(is_cptp({transient_a(), b, transient(0.5).C()}).failed, "B positive semi-definite");

  ComplexMatrix nh = transient(0.3).C();
  nh(0, 1) = Complex(0.0, 0.2);
  EXPECT_EQ(is_cptp({transient_a(), transient(0.3).B(), nh}).failed, "C Hermitian");
}

TEST(Cptp, AgreesWithChoiPositivity) {
  Rng rng(45);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int accepted = 0, rejected = 0;
  for (int trial = 0; trial < 300; ++trial) {
    auto t = random_cptp_triple(2 + trial % 4, rng, trial % 2 ? 0.5 : 1.0);
    const int d = t.dim();
    ComplexMatrix a = t.A(), b = t.B(), c = t.C();
    switch (trial % 5) {
      case 1:  // push one pair past the boundary
        c(0, 1) *= 1.0 + u(rng);
        c(0, 1) += 0.05;
        c(1, 0) = std::conj(c(0, 1));
        break;
      case 2:  // break positivity of B
        b(0, 1) += 0.5 + u(rng);
        b(1, 0) = std::conj(b(0, 1));
        break;
      case 3:  // break trace preservation
        a(d - 1, 0) += 0.01;
        break;
      case 4:  // saturate the pair condition
        c(0, 1) = std::sqrt(a(0, 1).real() * a(1, 0).real()) * random_phase(rng);
        c(1, 0) = std::conj(c(0, 1));
        break;
      default:
        break;
    }
    const TripleABC s(a, b, c);
    const bool mine = is_cptp(s).ok;
    EXPECT_EQ(mine, choi_says_channel(s)) << "trial " << trial;
    (mine ? accepted : rejected)++;
  }
  EXPECT_GT(accepted, 50);
  EXPECT_GT(rejected, 50);
}

TEST(LambdaPm, Examples) {
  for (double x : {0.5, 0.3, -0.5, -0.2}) {
    const auto [p, m] = lambda_pm(transient(x).B(), transient(x).C(), 0, 1);
    EXPECT_NEAR(std::abs(p - (x + std::abs(x))), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(m - (x - std::abs(x))), 0.0, 1e-15);
  }
  const auto [p3, m3] = lambda_pm(half_block(-1).B(), half_block(-1).C(), 0, 1);
  EXPECT_NEAR(std::abs(p3), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m3 + 1.0), 0.0, 1e-15);

  ComplexMatrix b = ComplexMatrix::Constant(2, 2, 0.3), c = ComplexMatrix::Zero(2, 2);
  const auto [pb, mb] = lambda_pm(b, c, 0, 1);
  EXPECT_EQ(pb, Complex(0.3));
  EXPECT_EQ(mb, Complex(0.3));
}

TEST(LambdaPm, PreconditionsAndGershgorinBound) {
  ComplexMatrix b = ComplexMatrix::Identity(2, 2);
  b(0, 1) = 0.5;
  EXPECT_THROW(lambda_pm(b, ComplexMatrix::Identity(2, 2), 0, 1), PreconditionError);
  EXPECT_THROW(lambda_pm(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2), 1, 0), PreconditionError);
  Rng rng(46);
  for (int trial = 0; trial < 100; ++trial) {
    const auto t = random_cptp_triple(4, rng);
    for (const auto& lp : all_lambda_pm(t)) {
      const double bound = std::abs(t.B()(lp.i, lp.j)) + std::abs(t.C()(lp.i, lp.j)) + 1e-14;
      EXPECT_LE(std::abs(lp.plus), bound);
      EXPECT_LE(std::abs(lp.minus), bound);
      const auto [p, m] = block_eigenvalues(t.B()(lp.i, lp.j), t.C()(lp.i, lp.j), t.C()(lp.j, lp.i), t.B()(lp.j, lp.i));
      EXPECT_LT(oracle::multiset_distance({lp.plus, lp.minus}, {p, m}), 1e-12);
    }
  }
}

TEST(Spectrum, Examples) {
  const auto id = spectrum(identity_triple(3));
  EXPECT_EQ(id.eigenvalues.size(), 9u);
  EXPECT_EQ(id.unit_multiplicity, 9);
  const auto half = spectrum(half_block(1));
  EXPECT_LT(oracle::multiset_distance(half.eigenvalues, {1.0, 0.0, 1.0, 0.0}), 1e-15);
}

TEST(Spectrum, BlockFormulaMatchesBruteForce) {
  Rng rng(47);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + trial % 5;
    const auto t = trial % 2 ? random_triple(d, rng) : random_cptp_triple(d, rng);
    EXPECT_LT(oracle::multiset_distance(spectrum(t).eigenvalues, oracle_spectrum(t)), 1e-10) << "trial " << trial;
  }
}

TEST(Eigenmatrices, IdentityChannelHasMatrixUnits) {
  const auto set = eigenmatrices(identity_triple(3));
  EXPECT_EQ(set.pairs.size(), 9u);
  EXPECT_FALSE(set.defective);
  for (const auto& p : set.pairs) EXPECT_LT(std::abs(p.value - 1.0), 1e-15);
}

TEST(Eigenmatrices, PeripheralPairOfNegativeExample) {
  const auto t = transient(-0.5);
  const auto set = eigenmatrices(t);
  bool found = false;
  for (const auto& p : set.pairs) {
    if (std::abs(p.value + 1.0) > 1e-12) continue;
    // symmetric combination of E_12 and E_21
    EXPECT_LT(std::abs(p.matrix(0, 1) - p.matrix(1, 0)), 1e-12);
    EXPECT_GT(std::abs(p.matrix(0, 1)), 0.5);
    found = true;
  }
  EXPECT_TRUE(found);
}

TEST(Eigenmatrices, StationaryStateOfErgodicChannel) {
  const DocChannel ch(transient(0.3));
  const auto report = classify(ch);
  ASSERT_TRUE(report.stationary_state);
  int hits = 0;
  for (const auto& p : eigenmatrices(ch).pairs) {
    if (std::abs(p.value - 1.0) > 1e-9) continue;
    const ComplexMatrix m = p.matrix / p.matrix.trace();
    EXPECT_LT(max_abs(m - *report.stationary_state), 1e-10);
    ++hits;
  }
  EXPECT_EQ(hits, 1);
}

TEST(Eigenmatrices, ResidualsAndDefectiveBlocks) {
  Rng rng(48);
  for (int trial = 0; trial < 50; ++trial) {
    const auto t = random_triple(2 + trial % 4, rng);
    const auto set = eigenmatrices(t);
    for (const auto& p : set.pairs)
      EXPECT_LE(max_abs(docergo::apply(t, p.matrix) - p.value * p.matrix), 1e-8 * max_abs(p.matrix));
  }
  ComplexMatrix b = ComplexMatrix::Constant(2, 2, 0.5), c = ComplexMatrix::Constant(2, 2, 0.5);
  c(0, 1) = 1.0;
  c(1, 0) = 0.0;
  const auto jordan = eigenmatrices(TripleABC(ComplexMatrix::Identity(2, 2) * 0.5, b, c));
  EXPECT_TRUE(jordan.defective);
  int block_pairs = 0;
  for (const auto& p : jordan.pairs) block_pairs += std::abs(p.matrix(0, 1)) + std::abs(p.matrix(1, 0)) > 0.0;
  EXPECT_EQ(block_pairs, 1);
}

TEST(Classify, TransientExampleFamily) {
  const auto mixing = classify(DocChannel(transient(0.3)));
  EXPECT_TRUE(mixing.ergodic);
  EXPECT_TRUE(mixing.mixing);
  const auto edge = classify(DocChannel(transient(-0.5)));
  EXPECT_TRUE(edge.ergodic);
  EXPECT_FALSE(edge.mixing);
  EXPECT_EQ(edge.nondecaying_mode_count(), 1);
  const auto broken = classify(DocChannel(transient(0.5)));
  EXPECT_FALSE(broken.ergodic);
  EXPECT_FALSE(broken.stationary_state);
  EXPECT_EQ(broken.constant_mode_count, 2);
  EXPECT_EQ(broken.route, "lambda_pm");
}

TEST(Classify, TwoDimensionalExceptions) {
  const auto not_ergodic = classify(DocChannel(half_block(1)));
  EXPECT_FALSE(not_ergodic.ergodic);
  EXPECT_FALSE(not_ergodic.irreducible);
  EXPECT_TRUE(classify_stochastic(StochasticMatrix(half_block(1).A())).primitive);

  const auto minus = classify(DocChannel(half_block(-1)));
  EXPECT_TRUE(minus.ergodic);
  EXPECT_TRUE(minus.irreducible);
  EXPECT_FALSE(minus.primitive);
  EXPECT_FALSE(minus.mixing);
  EXPECT_EQ(minus.peripheral_count, 2);
}

TEST(Classify, PositiveCoreWithVariousCouplings) {
  for (double off : {0.1, -0.1, 0.05, 0.0}) {
    const auto r = classify(DocChannel(positive_core(off)));
    EXPECT_TRUE(r.primitive);
    EXPECT_TRUE(r.mixing);
    ASSERT_TRUE(r.stationary_state);
    EXPECT_LT(max_abs(*r.stationary_state - ComplexMatrix::Identity(3, 3) / 3.0), 1e-10);
  }
}

TEST(Classify, RequiresCertificate) {
  ComplexMatrix b = transient(0.5).B();
  b(0, 1) = b(1, 0) = 0.9;
  const DocChannel ch(TripleABC(transient_a(), b, b));
  EXPECT_FALSE(ch.is_channel());
  EXPECT_THROW(classify(ch), PreconditionError);
}

TEST(Classify, AgreesWithSpectralDefinitions) {
  Rng rng(49);
  for (int trial = 0; trial < 200; ++trial) {
    const auto t = random_cptp_triple(2 + trial % 4, rng, trial % 3 ? 0.4 : 1.0);
    const DocChannel ch(t);
    const auto r = classify(ch);
    const auto spec = make_spectrum(oracle_spectrum(t), Tolerances{});
    EXPECT_EQ(r.ergodic, spec.unit_multiplicity == 1) << "trial " << trial;
    EXPECT_EQ(r.mixing, spec.unit_multiplicity == 1 && spec.peripheral.size() == 1) << "trial " << trial;
    EXPECT_EQ(r.stationary_state.has_value(), r.ergodic);
    if (r.stationary_state) {
      const auto& s = *r.stationary_state;
      EXPECT_LT(max_abs(docergo::apply(t, s) - s), 1e-9);
      EXPECT_NEAR(s.trace().real(), 1.0, 1e-12);
      EXPECT_LT(max_abs(off_diag_part(s)), 1e-15);
    }
    if (t.dim() >= 3) {
      const auto core = classify_stochastic(StochasticMatrix(t.A()));
      EXPECT_EQ(r.irreducible, core.irreducible);
      EXPECT_EQ(r.primitive, core.primitive);
    }
  }
}

TEST(Classify, PeripheryOfIrreducibleChannelIsThatOfItsCore) {
  Rng rng(50);
  for (int d = 3; d <= 5; ++d) {
    ComplexMatrix p = ComplexMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i) p((i + 1) % d, i) = 1.0;
    for (double w : {1.0, 0.5}) {
      const ComplexMatrix a = w * p + (1 - w) * p * p;
      const DocChannel ch(cptp_on(a, rng));
      ASSERT_TRUE(ch.is_channel());
      const auto r = classify(ch);
      ASSERT_TRUE(r.irreducible);
      const auto core = eigenvalues(a);
      EXPECT_EQ(r.peripheral_count, static_cast<int>(core.peripheral.size()));
      EXPECT_LT(oracle::multiset_distance(spectrum(ch).peripheral, core.peripheral), 1e-9);
    }
  }
}

TEST(ClassifyMap, FallbackForGeneralMaps) {
  const auto r = classify_map(identity_triple(2));
  EXPECT_EQ(r.route, "block_spectrum");
  EXPECT_FALSE(r.ergodic);
  const auto dep = classify_map(depolarizing_triple(3));
  EXPECT_TRUE(dep.ergodic);
  EXPECT_TRUE(dep.mixing);
  ASSERT_TRUE(dep.stationary_state);
  EXPECT_LT(max_abs(*dep.stationary_state - ComplexMatrix::Identity(3, 3) / 3.0), 1e-12);
  EXPECT_FALSE(dep.irreducible);
}

TEST(Flavors, EmbeddingsMatchTheirDefinitions) {
  Rng rng(51);
  const auto base = random_cptp_triple(3, rng);
  const ComplexMatrix x = random_gaussian(3, 3, rng);
  const auto duc = DocChannel::duc(base.A(), base.C());
  const ComplexMatrix want_duc =
      ComplexMatrix((base.A() * x.diagonal()).asDiagonal()) + off_diag_part(base.C()).cwiseProduct(x.transpose());
  EXPECT_LT(max_abs(docergo::apply(duc, x) - want_duc), 1e-15);
  const auto cduc = DocChannel::cduc(base.A(), base.B());
  const ComplexMatrix want_cduc =
      ComplexMatrix((base.A() * x.diagonal()).asDiagonal()) + off_diag_part(base.B()).cwiseProduct(x);
  EXPECT_LT(max_abs(docergo::apply(cduc, x) - want_cduc), 1e-15);
  EXPECT_TRUE(duc.is_channel());
  EXPECT_TRUE(cduc.is_channel());
  EXPECT_THROW(DocChannel(base, Flavor::DUC), InvalidMatrix);
}

TEST(Covariance, HoldsForEveryFlavorAndDetectsViolations) {
  Rng rng(52);
  const auto t = random_cptp_triple(4, rng);
  EXPECT_TRUE(check_covariance(DocChannel(t), 100, 1));
  EXPECT_TRUE(check_covariance(DocChannel::duc(t.A(), t.C()), 100, 2));
  EXPECT_TRUE(check_covariance(DocChannel::cduc(t.A(), t.B()), 100, 3));
  // an off-pattern term X_01 E_22 breaks diagonal orthogonal covariance
  auto broken = [&t](const ComplexMatrix& x) -> ComplexMatrix {
    ComplexMatrix y = docergo::apply(t, x);
    y(2, 2) += x(0, 1);
    return y;
  };
  EXPECT_GT(covariance_residual(broken, 4, Flavor::DOC, 20, 4), 1e-3);
  // a plain DOC channel is generally not diagonal unitary covariant
  EXPECT_GT(covariance_residual([&t](const ComplexMatrix& x) { return docergo::apply(t, x); }, 4, Flavor::DUC, 20, 5), 1e-3);
  EXPECT_THROW(check_covariance(DocChannel(t), 0), PreconditionError);
}

TEST(CesaroChannel, IdentityIsFixed) {
  const DocChannel id(identity_triple(3));
  for (int n : {1, 4}) EXPECT_LT(max_abs(cesaro_channel(id, n).matrix() - ComplexMatrix::Identity(9, 9)), 1e-15);
  EXPECT_THROW(cesaro_channel(id, 0), PreconditionError);
}

TEST(CesaroChannel, TelescopingIdentity) {
  // M C_n - C_n = (M^n - 1) / n holds exactly for every n
  Rng rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    const DocChannel ch(random_cptp_triple(2 + trial % 3, rng));
    const ComplexMatrix m = matrix_rep(ch).matrix();
    const int n = 1 + trial * 37;
    const ComplexMatrix cn = cesaro_channel(ch, n).matrix();
    const ComplexMatrix id = ComplexMatrix::Identity(m.rows(), m.cols());
    EXPECT_LT(max_abs(m * cn - cn - (matrix_power(m, n) - id) / static_cast<double>(n)), 1e-12);
  }
}

TEST(CesaroChannel, LimitIsTheReplacementMap) {
  const DocChannel ch(positive_core(0.1));
  const ComplexMatrix m = matrix_rep(ch).matrix();
  const ComplexMatrix p = replacement_map(ComplexMatrix::Identity(3, 3) / 3.0).matrix();
  EXPECT_LT(max_abs(m * p - p), 1e-15);
  EXPECT_LT(max_abs(p * m - p), 1e-15);
  // fundamental matrix form of the mean at finite n
  const ComplexMatrix id = ComplexMatrix::Identity(9, 9);
  const ComplexMatrix z = (id - m + p).inverse();
  for (int n : {10, 200}) {
    const ComplexMatrix exact = p + ((id - matrix_power(m - p, n)) * z - p) / static_cast<double>(n);
    EXPECT_LT(max_abs(cesaro_channel(ch, n).matrix() - exact), 1e-12);
  }
}

TEST(TripleJson, RoundTrip) {
  Rng rng(54);
  const auto t = random_triple(3, rng);
  const auto back = io::triple_from_json(io::to_json(t));
  EXPECT_EQ(max_abs(back.A() - t.A()) + max_abs(back.B() - t.B()) + max_abs(back.C() - t.C()), 0.0);
}
