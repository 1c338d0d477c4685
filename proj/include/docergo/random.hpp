#pragma once

#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "docergo/linalg.hpp"

namespace docergo {

using Rng = std::mt19937_64;

inline ComplexMatrix random_gaussian(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = Complex(n(rng), n(rng));
  return m;
}

inline Complex random_phase(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  return std::polar(1.0, u(rng));
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases
/// of R's diagonal folded back into Q.
inline ComplexMatrix haar_unitary(int d, Rng& rng) {
  const ComplexMatrix g = random_gaussian(d, d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < d; ++k) {
    const Complex rk = r(k, k);
    const double mag = std::abs(rk);
    q.col(k) *= mag > 0.0 ? rk / mag : Complex(1.0, 0.0);
  }
  return q;
}

inline ComplexMatrix random_diagonal_unitary(int d, Rng& rng) {
  ComplexMatrix u = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) u(i, i) = random_phase(rng);
  return u;
}

inline ComplexMatrix random_diagonal_orthogonal(int d, Rng& rng) {
  std::bernoulli_distribution coin(0.5);
  ComplexMatrix o = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) o(i, i) = coin(rng) ? 1.0 : -1.0;
  return o;
}

/// Orthogonal projection onto the span of `rank` Haar-random vectors.
inline ComplexMatrix haar_projection(int d, int rank, Rng& rng) {
  if (rank < 0 || rank > d) throw DimensionError("projection rank out of range");
  const ComplexMatrix v = haar_unitary(d, rng).leftCols(rank);
  return v * v.adjoint();
}

/// Random column-stochastic matrix. Each entry is kept with probability
/// `density` (at least one per column survives); kept entries are
/// exponential weights normalised per column.
inline ComplexMatrix random_stochastic(int d, Rng& rng, double density = 1.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::exponential_distribution<double> w(1.0);
  std::uniform_int_distribution<int> pick(0, d - 1);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i)
      if (u(rng) < density) a(i, j) = w(rng);
    if (a.col(j).sum() == 0.0) a(pick(rng), j) = w(rng);
    a.col(j) /= a.col(j).sum();
  }
  return a.cast<Complex>();
}

/// Random correlation matrix (PSD, unit diagonal) of rank <= `rank`.
inline ComplexMatrix random_correlation(int d, int rank, Rng& rng) {
  const ComplexMatrix g = random_gaussian(d, rank, rng);
  ComplexMatrix c = g * g.adjoint();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) c(i, j) /= std::sqrt(std::abs(g.row(i).squaredNorm() * g.row(j).squaredNorm()));
  for (int i = 0; i < d; ++i) c(i, i) = 1.0;
  return c;
}

}  // namespace docergo
