#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "docergo/errors.hpp"

namespace docergo {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Numerical thresholds shared by every classification routine.
struct Tolerances {
  double eig = 1e-9;    // |lambda - 1| <= eig counts as a unit eigenvalue
  double peri = 1e-9;   // |lambda| >= 1 - peri counts as peripheral
  double zero = 1e-12;  // |a| > zero counts as a nonzero pattern entry
};

inline double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline void require_finite(const ComplexMatrix& m, const char* what = "matrix") {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) {
        throw InvalidMatrix(std::string(what) + " has a non-finite entry");
      }
    }
  }
}

inline void require_square(const ComplexMatrix& m, const char* what = "matrix") {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionError(std::string(what) + " must be square and non-empty");
  }
}

inline void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("dimension mismatch: " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
}

/// Dense d^2 x d^2 matrix addressed by pairs of local indices:
/// `(i, j, k, l)` is the entry <ij|X|kl> with |ij> = |i> (x) |j>.
class BipartiteMatrix {
 public:
  explicit BipartiteMatrix(int local_dim)
      : d_(check_dim(local_dim)), m_(ComplexMatrix::Zero(d_ * d_, d_ * d_)) {}

  BipartiteMatrix(int local_dim, ComplexMatrix m) : d_(check_dim(local_dim)), m_(std::move(m)) {
    if (m_.rows() != d_ * d_ || m_.cols() != d_ * d_) {
      throw DimensionError("bipartite matrix must be " + std::to_string(d_ * d_) + "x" +
                           std::to_string(d_ * d_));
    }
  }

  /// Wraps a square matrix whose dimension is a perfect square.
  static BipartiteMatrix from_matrix(ComplexMatrix m) {
    require_square(m, "bipartite matrix");
    const auto n = static_cast<int>(m.rows());
    const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    if (d * d != n) throw DimensionError("bipartite dimension is not a perfect square");
    return BipartiteMatrix(d, std::move(m));
  }

  static BipartiteMatrix identity(int local_dim) {
    BipartiteMatrix x(local_dim);
    x.m_.setIdentity();
    return x;
  }

  int local_dim() const { return d_; }
  int dim() const { return d_ * d_; }
  const ComplexMatrix& matrix() const { return m_; }
  ComplexMatrix& matrix() { return m_; }

  Complex operator()(int i, int j, int k, int l) const { return m_(i * d_ + j, k * d_ + l); }
  Complex& operator()(int i, int j, int k, int l) { return m_(i * d_ + j, k * d_ + l); }

  BipartiteMatrix adjoint() const { return {d_, m_.adjoint()}; }

  friend BipartiteMatrix operator*(const BipartiteMatrix& a, const BipartiteMatrix& b) {
    if (a.d_ != b.d_) throw DimensionError("local dimension mismatch in product");
    return {a.d_, a.m_ * b.m_};
  }

 private:
  static int check_dim(int d) {
    if (d <= 0) throw DimensionError("local dimension must be positive");
    return d;
  }

  int d_;
  ComplexMatrix m_;
};

// ---------------------------------------------------------------------------
// Spectra

struct SpectrumResult {
  std::vector<Complex> eigenvalues;  // descending |z|, then real, then imag
  std::vector<Complex> peripheral;   // |z| >= 1 - tol.peri
  int unit_multiplicity = 0;         // size of the tolerance cluster at 1
};

/// Deterministic ordering: descending modulus, then real part, then imaginary part.
inline void sort_eigenvalues(std::vector<Complex>& values) {
  std::sort(values.begin(), values.end(), [](const Complex& a, const Complex& b) {
    const double ma = std::abs(a), mb = std::abs(b);
    if (ma != mb) return ma > mb;
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
}

/// Number of values in the union-of-balls cluster (radius `eps`) seeded at 1.
inline int unit_cluster_size(const std::vector<Complex>& values, double eps) {
  std::vector<char> in(values.size(), 0);
  std::vector<std::size_t> frontier;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::abs(values[i] - Complex(1.0, 0.0)) <= eps) {
      in[i] = 1;
      frontier.push_back(i);
    }
  }
  while (!frontier.empty()) {
    const std::size_t k = frontier.back();
    frontier.pop_back();
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!in[i] && std::abs(values[i] - values[k]) <= eps) {
        in[i] = 1;
        frontier.push_back(i);
      }
    }
  }
  return static_cast<int>(std::count(in.begin(), in.end(), 1));
}

/// Packages an already computed list of eigenvalues.
inline SpectrumResult make_spectrum(std::vector<Complex> values, const Tolerances& tol = {}) {
  SpectrumResult out;
  sort_eigenvalues(values);
  for (const auto& z : values) {
    if (std::abs(z) >= 1.0 - tol.peri) out.peripheral.push_back(z);
  }
  out.unit_multiplicity = unit_cluster_size(values, tol.eig);
  out.eigenvalues = std::move(values);
  return out;
}

/// All eigenvalues of a dense square matrix, with algebraic multiplicity.
inline SpectrumResult eigenvalues(const ComplexMatrix& m, const Tolerances& tol = {}) {
  require_square(m);
  require_finite(m);
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw InvalidMatrix("eigenvalue iteration did not converge");
  const auto& ev = solver.eigenvalues();
  return make_spectrum(std::vector<Complex>(ev.data(), ev.data() + ev.size()), tol);
}

/// Smallest eigenvalue of the Hermitian part of `m`.
inline double hermitian_min_eigenvalue(const ComplexMatrix& m) {
  require_square(m);
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

inline double hermiticity_residual(const ComplexMatrix& m) { return max_abs(m - m.adjoint()); }

/// max |U^dagger U - 1|.
inline double unitarity_residual(const ComplexMatrix& u) {
  require_square(u);
  return max_abs(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols()));
}

inline bool is_unitary(const ComplexMatrix& u, double tol = 1e-10) {
  return unitarity_residual(u) <= tol;
}

// ---------------------------------------------------------------------------
// Bipartite reshuffles and products

/// <ij|X^R|kl> = <ik|X|jl>.
inline BipartiteMatrix realign(const BipartiteMatrix& x) {
  const int d = x.local_dim();
  BipartiteMatrix out(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) out(i, j, k, l) = x(i, k, j, l);
  return out;
}

enum class Side { first, second };

/// Partial transpose on one tensor factor.
/// first:  <ij|out|kl> = <kj|X|il>   (transp (x) id)
/// second: <ij|out|kl> = <il|X|kj>   (id (x) transp)
inline BipartiteMatrix partial_transpose(const BipartiteMatrix& x, Side side) {
  const int d = x.local_dim();
  BipartiteMatrix out(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          out(i, j, k, l) = side == Side::first ? x(k, j, i, l) : x(i, l, k, j);
  return out;
}

inline ComplexMatrix schur_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b);
  return a.cwiseProduct(b);
}

inline BipartiteMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_square(a);
  require_square(b);
  if (a.rows() != b.rows()) throw DimensionError("kron factors must share the local dimension");
  const auto d = static_cast<int>(a.rows());
  BipartiteMatrix out(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) out(i, j, k, l) = a(i, k) * b(j, l);
  return out;
}

/// Swap operator F|ij> = |ji>.
inline BipartiteMatrix flip(int d) {
  BipartiteMatrix f(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) f(j, i, i, j) = 1.0;
  return f;
}

/// Diagonal matrix carrying the diagonal of `m`.
inline ComplexMatrix diag_part(const ComplexMatrix& m) {
  return m.diagonal().asDiagonal();
}

/// Z - diag Z.
inline ComplexMatrix off_diag_part(const ComplexMatrix& m) {
  ComplexMatrix out = m;
  out.diagonal().setZero();
  return out;
}

/// Row-major vectorisation: vec(X)[i*d + j] = X(i, j). This is the basis in
/// which the realigned Choi matrix acts as the matrix of a linear map.
inline ComplexVector vec(const ComplexMatrix& x) {
  ComplexVector v(x.size());
  const auto d = x.cols();
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < d; ++j) v(i * d + j) = x(i, j);
  return v;
}

inline ComplexMatrix unvec(const ComplexVector& v, int d) {
  if (v.size() != static_cast<Eigen::Index>(d) * d) throw DimensionError("unvec size mismatch");
  ComplexMatrix x(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) x(i, j) = v(i * d + j);
  return x;
}

/// Applies a linear map given by its matrix representation (row-major basis).
inline ComplexMatrix apply_map(const BipartiteMatrix& rep, const ComplexMatrix& x) {
  require_square(x);
  if (x.rows() != rep.local_dim()) throw DimensionError("map and operand dimensions differ");
  return unvec(rep.matrix() * vec(x), rep.local_dim());
}

}  // namespace docergo
