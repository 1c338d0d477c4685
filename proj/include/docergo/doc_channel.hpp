#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "docergo/linalg.hpp"
#include "docergo/random.hpp"
#include "docergo/stochastic.hpp"

namespace docergo {

/// (A, B, C) with a shared diagonal.
class TripleABC {
 public:
  static constexpr double diag_tol = 1e-12;

  TripleABC(ComplexMatrix a, ComplexMatrix b, ComplexMatrix c)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    require_square(a_, "A");
    require_same_shape(a_, b_);
    require_same_shape(a_, c_);
    require_finite(a_, "A");
    require_finite(b_, "B");
    require_finite(c_, "C");
    for (Eigen::Index i = 0; i < a_.rows(); ++i) {
      if (std::abs(a_(i, i) - b_(i, i)) > diag_tol || std::abs(a_(i, i) - c_(i, i)) > diag_tol) {
        throw InvalidMatrix("diag A, diag B, diag C differ at index " + std::to_string(i + 1));
      }
    }
  }

  int dim() const { return static_cast<int>(a_.rows()); }
  const ComplexMatrix& A() const { return a_; }
  const ComplexMatrix& B() const { return b_; }
  const ComplexMatrix& C() const { return c_; }

  /// (B, A, C): the triple of the realigned LDOI matrix.
  TripleABC swapped() const { return {b_, a_, c_}; }

 private:
  ComplexMatrix a_, b_, c_;
};

/// sum A_ij |ij><ij| + sum_{i != j} B_ij |ii><jj| + sum_{i != j} C_ij |ij><ji|.
inline BipartiteMatrix ldoi_matrix(const TripleABC& t) {
  const int d = t.dim();
  BipartiteMatrix x(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      x(i, j, i, j) = t.A()(i, j);
      if (i == j) continue;
      x(i, i, j, j) = t.B()(i, j);
      x(i, j, j, i) = t.C()(i, j);
    }
  return x;
}

/// Reads (A, B, C) off the LDOI entries of a bipartite matrix. Entries outside
/// the LDOI pattern are ignored; see `ldoi_residual`.
inline TripleABC extract_triple(const BipartiteMatrix& x) {
  const int d = x.local_dim();
  ComplexMatrix a(d, d), b(d, d), c(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      a(i, j) = x(i, j, i, j);
      b(i, j) = i == j ? a(i, j) : x(i, i, j, j);
      c(i, j) = i == j ? a(i, j) : x(i, j, j, i);
    }
  return {a, b, c};
}

/// Max distance between `x` and the LDOI matrix assembled from its own pattern.
inline double ldoi_residual(const BipartiteMatrix& x) {
  return max_abs(x.matrix() - ldoi_matrix(extract_triple(x)).matrix());
}

enum class Flavor { DOC, DUC, CDUC };

inline const char* to_string(Flavor f) {
  switch (f) {
    case Flavor::DUC: return "DUC";
    case Flavor::CDUC: return "CDUC";
    default: return "DOC";
  }
}

struct CptpDiagnostics {
  bool ok = false;
  std::string failed;  // first violated condition, empty when ok
  std::string detail;
  double b_min_eigenvalue = 0.0;
  double c_hermiticity_residual = 0.0;
  double pair_slack = 0.0;  // min over i<j of A_ij A_ji - |C_ij|^2
};

inline constexpr double psd_tol = 1e-10;
inline constexpr double hermitian_tol = 1e-10;
inline constexpr double pair_tol = 1e-12;

inline CptpDiagnostics is_cptp(const TripleABC& t) {
  CptpDiagnostics out;
  const int d = t.dim();
  out.b_min_eigenvalue = hermitian_min_eigenvalue(t.B());
  out.c_hermiticity_residual = hermiticity_residual(t.C());
  out.pair_slack = d > 1 ? std::numeric_limits<double>::infinity() : 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      out.pair_slack = std::min(out.pair_slack, (t.A()(i, j) * t.A()(j, i)).real() - std::norm(t.C()(i, j)));

  try {
    StochasticMatrix check(t.A());
  } catch (const NotStochastic& e) {
    out.failed = "A column stochastic";
    out.detail = e.what();
    return out;
  }
  if (hermiticity_residual(t.B()) > hermitian_tol || out.b_min_eigenvalue < -psd_tol) {
    out.failed = "B positive semi-definite";
    out.detail = "min eigenvalue " + std::to_string(out.b_min_eigenvalue);
    return out;
  }
  if (out.c_hermiticity_residual > hermitian_tol) {
    out.failed = "C Hermitian";
    out.detail = "residual " + std::to_string(out.c_hermiticity_residual);
    return out;
  }
  if (out.pair_slack < -pair_tol) {
    out.failed = "A_ij A_ji >= |C_ij|^2";
    out.detail = "slack " + std::to_string(out.pair_slack);
    return out;
  }
  out.ok = true;
  return out;
}

/// A DOC map together with its CPTP certificate.
class DocChannel {
 public:
  explicit DocChannel(TripleABC t, Flavor flavor = Flavor::DOC)
      : triple_(std::move(t)), flavor_(flavor), cert_(is_cptp(triple_)) {
    if (flavor_ == Flavor::DUC && max_abs(off_diag_part(triple_.B())) > 0.0)
      throw InvalidMatrix("DUC flavor requires B = diag B");
    if (flavor_ == Flavor::CDUC && max_abs(off_diag_part(triple_.C())) > 0.0)
      throw InvalidMatrix("CDUC flavor requires C = diag C");
  }

  /// X -> diag(A diag X) + C~ (.) X^T, embedded as (A, diag C, C).
  static DocChannel duc(const ComplexMatrix& a, const ComplexMatrix& c) {
    return DocChannel({a, diag_part(c), c}, Flavor::DUC);
  }

  /// X -> diag(A diag X) + B~ (.) X, embedded as (A, B, diag B).
  static DocChannel cduc(const ComplexMatrix& a, const ComplexMatrix& b) {
    return DocChannel({a, b, diag_part(b)}, Flavor::CDUC);
  }

  const TripleABC& triple() const { return triple_; }
  Flavor flavor() const { return flavor_; }
  int dim() const { return triple_.dim(); }
  const CptpDiagnostics& certificate() const { return cert_; }
  bool is_channel() const { return cert_.ok; }

 private:
  TripleABC triple_;
  Flavor flavor_;
  CptpDiagnostics cert_;
};

inline ComplexMatrix apply(const TripleABC& t, const ComplexMatrix& x) {
  require_square(x);
  if (x.rows() != t.dim()) throw DimensionError("operand dimension differs from channel dimension");
  ComplexMatrix out = (t.A() * x.diagonal()).asDiagonal();
  out += off_diag_part(t.B()).cwiseProduct(x) + off_diag_part(t.C()).cwiseProduct(x.transpose());
  return out;
}

inline ComplexMatrix apply(const DocChannel& ch, const ComplexMatrix& x) { return docergo::apply(ch.triple(), x); }

inline BipartiteMatrix choi(const DocChannel& ch) { return ldoi_matrix(ch.triple()); }

/// Matrix of the map in the row-major vec basis: X_(B,A,C).
inline BipartiteMatrix matrix_rep(const TripleABC& t) { return ldoi_matrix(t.swapped()); }
inline BipartiteMatrix matrix_rep(const DocChannel& ch) { return matrix_rep(ch.triple()); }

// ---------------------------------------------------------------------------
// Spectra

struct LambdaPair {
  int i = 0, j = 0;
  Complex plus, minus;
};

/// Spectrum of [[B_ij, C_ij], [C_ji, B_ji]] for Hermitian B, C:
/// (B_ij + B_ji +- sqrt((B_ij - B_ji)^2 + 4|C_ij|^2)) / 2.
inline std::pair<Complex, Complex> lambda_pm(const ComplexMatrix& b, const ComplexMatrix& c, int i, int j) {
  require_square(b, "B");
  require_same_shape(b, c);
  if (i < 0 || j >= b.rows() || i >= j) throw PreconditionError("lambda_pm requires 0 <= i < j < d");
  if (hermiticity_residual(b) > hermitian_tol || hermiticity_residual(c) > hermitian_tol)
    throw PreconditionError("lambda_pm requires Hermitian B and C");
  const Complex bij = b(i, j), bji = b(j, i);
  const Complex root = std::sqrt((bij - bji) * (bij - bji) + 4.0 * std::norm(c(i, j)));
  return {0.5 * (bij + bji + root), 0.5 * (bij + bji - root)};
}

inline std::vector<LambdaPair> all_lambda_pm(const TripleABC& t) {
  std::vector<LambdaPair> out;
  for (int i = 0; i < t.dim(); ++i)
    for (int j = i + 1; j < t.dim(); ++j) {
      const auto [p, m] = lambda_pm(t.B(), t.C(), i, j);
      out.push_back({i, j, p, m});
    }
  return out;
}

/// Eigenvalues of [[a, b], [c, e]].
inline std::pair<Complex, Complex> block_eigenvalues(Complex a, Complex b, Complex c, Complex e) {
  const Complex mean = 0.5 * (a + e);
  const Complex half = 0.5 * (a - e);
  const Complex root = std::sqrt(half * half + b * c);
  return {mean + root, mean - root};
}

inline std::vector<Complex> block_spectrum_values(const TripleABC& t) {
  std::vector<Complex> values = eigenvalues_by_classes(t.A());
  for (int i = 0; i < t.dim(); ++i)
    for (int j = i + 1; j < t.dim(); ++j) {
      const auto [p, m] = block_eigenvalues(t.B()(i, j), t.C()(i, j), t.C()(j, i), t.B()(j, i));
      values.push_back(p);
      values.push_back(m);
    }
  return values;
}

/// spec A together with the spectra of the 2x2 blocks [[B_ij, C_ij], [C_ji, B_ji]].
inline SpectrumResult spectrum(const TripleABC& t, const Tolerances& tol = {}) {
  return make_spectrum(block_spectrum_values(t), tol);
}

inline SpectrumResult spectrum(const DocChannel& ch, const Tolerances& tol = {}) {
  return spectrum(ch.triple(), tol);
}

struct Eigenmatrix {
  Complex value;
  ComplexMatrix matrix;
};

struct EigenmatrixSet {
  std::vector<Eigenmatrix> pairs;
  bool defective = false;
};

inline constexpr double eigenmatrix_tol = 1e-8;

inline EigenmatrixSet eigenmatrices(const TripleABC& t) {
  const int d = t.dim();
  EigenmatrixSet out;

  auto push = [&](Complex value, ComplexMatrix m) {
    const double scale = max_abs(m);
    if (scale == 0.0) return;
    m /= scale;
    if (max_abs(docergo::apply(t, m) - value * m) > eigenmatrix_tol) {
      out.defective = true;
      return;
    }
    out.pairs.push_back({value, std::move(m)});
  };

  // diagonal part: eigenvectors of A, keeping a linearly independent subset
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(t.A(), true);
  if (solver.info() != Eigen::Success) throw InvalidMatrix("eigenvalue iteration did not converge");
  ComplexMatrix kept(d, 0);
  for (int k = 0; k < d; ++k) {
    ComplexMatrix trial(d, kept.cols() + 1);
    trial << kept, solver.eigenvectors().col(k);
    Eigen::JacobiSVD<ComplexMatrix> svd(trial);
    if (svd.singularValues().minCoeff() < eigenmatrix_tol) {
      out.defective = true;
      continue;
    }
    kept = trial;
    push(solver.eigenvalues()(k), solver.eigenvectors().col(k).asDiagonal());
  }

  // off-diagonal blocks
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const Complex a = t.B()(i, j), b = t.C()(i, j), c = t.C()(j, i), e = t.B()(j, i);
      const auto [lp, lm] = block_eigenvalues(a, b, c, e);
      auto unit = [&](Complex v1, Complex v2) {
        ComplexMatrix m = ComplexMatrix::Zero(d, d);
        m(i, j) = v1;
        m(j, i) = v2;
        return m;
      };
      auto vector_for = [&](Complex lambda) {
        if (std::abs(b) >= std::abs(c) && std::abs(b) > 0.0) return unit(b, lambda - a);
        if (std::abs(c) > 0.0) return unit(lambda - e, c);
        return std::abs(lambda - a) <= std::abs(lambda - e) ? unit(1.0, 0.0) : unit(0.0, 1.0);
      };
      const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(e), 1.0});
      if (std::abs(lp - lm) > 1e-12 * scale) {
        push(lp, vector_for(lp));
        push(lm, vector_for(lm));
      } else if (std::abs(b) <= 1e-12 * scale && std::abs(c) <= 1e-12 * scale) {
        push(lp, unit(1.0, 0.0));
        push(lm, unit(0.0, 1.0));
      } else {
        push(lp, vector_for(lp));
        out.defective = true;
      }
    }
  return out;
}

inline EigenmatrixSet eigenmatrices(const DocChannel& ch) { return eigenmatrices(ch.triple()); }

// ---------------------------------------------------------------------------
// Classification

struct ChannelReport {
  bool ergodic = false;
  bool mixing = false;
  bool irreducible = false;
  bool primitive = false;
  std::optional<ComplexMatrix> stationary_state;  // diag(pi)
  int peripheral_count = 0;
  int constant_mode_count = 0;
  std::vector<LambdaPair> lambda_pm;
  std::vector<Complex> eigenvalues;
  std::string route;

  /// Peripheral modes that are not constant.
  int nondecaying_mode_count() const { return peripheral_count - constant_mode_count; }
};

namespace detail {

inline bool near_one(Complex z, const Tolerances& tol) { return std::abs(z - Complex(1.0, 0.0)) <= tol.eig; }
inline bool peripheral(Complex z, const Tolerances& tol) { return std::abs(z) >= 1.0 - tol.peri; }

inline void fill_spectral(ChannelReport& r, const TripleABC& t, const Tolerances& tol) {
  const auto spec = spectrum(t, tol);
  r.eigenvalues = spec.eigenvalues;
  r.peripheral_count = static_cast<int>(spec.peripheral.size());
  r.constant_mode_count = spec.unit_multiplicity;
}

}  // namespace detail

/// Ergodic classification of a certified DOC channel through its classical
/// core A and the pair eigenvalues lambda+-_ij(B, C).
inline ChannelReport classify(const DocChannel& ch, const Tolerances& tol = {}) {
  if (!ch.is_channel())
    throw PreconditionError("classify requires a CPTP channel; failed: " + ch.certificate().failed);
  const auto& t = ch.triple();
  const int d = t.dim();
  const auto core = classify_stochastic(StochasticMatrix(t.A(), tol.zero), tol);

  ChannelReport r;
  r.route = "lambda_pm";
  r.lambda_pm = all_lambda_pm(t);
  bool any_one = false, any_peripheral = false;
  for (const auto& lp : r.lambda_pm) {
    any_one = any_one || detail::near_one(lp.plus, tol) || detail::near_one(lp.minus, tol);
    any_peripheral = any_peripheral || detail::peripheral(lp.plus, tol) || detail::peripheral(lp.minus, tol);
  }
  r.ergodic = core.ergodic && !any_one;
  r.mixing = core.mixing && !any_peripheral;
  if (d == 2) {
    r.irreducible = core.irreducible && !any_one;
    r.primitive = core.primitive && !any_peripheral;
  } else {
    r.irreducible = core.irreducible;
    r.primitive = core.primitive;
  }
  if (r.ergodic) r.stationary_state = ComplexMatrix(core.stationary->cast<Complex>().asDiagonal());
  detail::fill_spectral(r, t, tol);
  return r;
}

/// Spectral classification of an arbitrary DOC map from the block spectra.
/// Positivity-based notions do not apply, so irreducible and primitive are
/// left false. A stationary matrix is reported when 1 is a simple eigenvalue
/// carried by A.
inline ChannelReport classify_map(const TripleABC& t, const Tolerances& tol = {}) {
  ChannelReport r;
  r.route = "block_spectrum";
  detail::fill_spectral(r, t, tol);
  r.ergodic = r.constant_mode_count == 1;
  r.mixing = r.ergodic && r.peripheral_count == 1;
  if (r.ergodic) {
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(t.A(), true);
    for (int k = 0; k < t.dim(); ++k) {
      if (!detail::near_one(solver.eigenvalues()(k), tol)) continue;
      ComplexVector v = solver.eigenvectors().col(k);
      const Complex s = v.sum();
      if (std::abs(s) > tol.zero) r.stationary_state = ComplexMatrix((v / s).asDiagonal());
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Covariance and Cesaro means

/// Max violation of the covariance law of `flavor` over random diagonal
/// orthogonal (DOC) or diagonal unitary (DUC, CDUC) conjugations.
template <class Map>
double covariance_residual(Map&& map, int d, Flavor flavor, int trials, std::uint64_t seed = 0) {
  if (trials < 1) throw PreconditionError("check_covariance: trials must be >= 1");
  Rng rng(seed);
  double worst = 0.0;
  for (int k = 0; k < trials; ++k) {
    const ComplexMatrix x = random_gaussian(d, d, rng);
    ComplexMatrix lhs, rhs;
    if (flavor == Flavor::DOC) {
      const ComplexMatrix o = random_diagonal_orthogonal(d, rng);
      lhs = map(ComplexMatrix(o * x * o));
      rhs = o * map(x) * o;
    } else {
      const ComplexMatrix u = random_diagonal_unitary(d, rng);
      lhs = map(ComplexMatrix(u * x * u.adjoint()));
      rhs = flavor == Flavor::DUC ? ComplexMatrix(u.adjoint() * map(x) * u) : ComplexMatrix(u * map(x) * u.adjoint());
    }
    worst = std::max(worst, max_abs(lhs - rhs));
  }
  return worst;
}

inline bool check_covariance(const DocChannel& ch, int trials, std::uint64_t seed = 0) {
  const auto& t = ch.triple();
  auto map = [&t](const ComplexMatrix& x) { return docergo::apply(t, x); };
  return covariance_residual(map, ch.dim(), ch.flavor(), trials, seed) <= 1e-10;
}

/// (1/n) sum_{k=0}^{n-1} M^k for the matrix representation M.
inline BipartiteMatrix cesaro_channel(const DocChannel& ch, int n) {
  if (n < 1) throw PreconditionError("cesaro_channel: n must be >= 1");
  const auto m = matrix_rep(ch);
  const auto dd = m.dim();
  ComplexMatrix power = ComplexMatrix::Identity(dd, dd);
  ComplexMatrix sum = ComplexMatrix::Zero(dd, dd);
  for (int k = 0; k < n; ++k) {
    sum += power;
    power = m.matrix() * power;
  }
  return {ch.dim(), sum / static_cast<double>(n)};
}

/// Matrix representation of X -> Tr(X) rho.
inline BipartiteMatrix replacement_map(const ComplexMatrix& rho) {
  require_square(rho);
  const auto d = static_cast<int>(rho.rows());
  BipartiteMatrix out(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) out(i, j, k, k) = rho(i, j);
  return out;
}

// ---------------------------------------------------------------------------
// Random triples

/// Random CPTP DOC triple: stochastic A, B = sqrt(D) R sqrt(D) with R a
/// random correlation matrix and D = diag A, and Hermitian C with
/// |C_ij| = s_ij sqrt(A_ij A_ji), s_ij uniform in [0, 1].
inline TripleABC random_cptp_triple(int d, Rng& rng, double density = 1.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> rank_pick(1, d);
  const ComplexMatrix a = random_stochastic(d, rng, density);
  const ComplexMatrix r = random_correlation(d, rank_pick(rng), rng);
  ComplexMatrix b(d, d), c = diag_part(a);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) b(i, j) = std::sqrt(a(i, i).real() * a(j, j).real()) * r(i, j);
  for (int i = 0; i < d; ++i) {
    b(i, i) = a(i, i);
    for (int j = i + 1; j < d; ++j) {
      c(i, j) = u(rng) * std::sqrt(a(i, j).real() * a(j, i).real()) * random_phase(rng);
      c(j, i) = std::conj(c(i, j));
    }
  }
  return {a, b, c};
}

/// Random triple with unconstrained complex entries (a general DOC map).
inline TripleABC random_triple(int d, Rng& rng) {
  const ComplexMatrix a = random_gaussian(d, d, rng);
  ComplexMatrix b = random_gaussian(d, d, rng), c = random_gaussian(d, d, rng);
  b.diagonal() = a.diagonal();
  c.diagonal() = a.diagonal();
  return {a, b, c};
}

}  // namespace docergo
