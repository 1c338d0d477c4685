#pragma once

#include <optional>
#include <string>
#include <vector>

#include "docergo/digraph.hpp"
#include "docergo/linalg.hpp"

namespace docergo {

/// Column-stochastic matrix: real, entrywise >= -tau_zero (such entries are
/// clamped to 0), every column summing to 1 within 1e-10.
class StochasticMatrix {
 public:
  static constexpr double column_sum_tol = 1e-10;

  explicit StochasticMatrix(const ComplexMatrix& a, double tau_zero = Tolerances{}.zero) : inner_(a) {
    require_square(a, "stochastic matrix");
    require_finite(a, "stochastic matrix");
    const auto n = a.rows();
    for (Eigen::Index j = 0; j < n; ++j) {
      double sum = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        Complex& z = inner_(i, j);
        if (std::abs(z.imag()) > tau_zero) throw NotStochastic("entry (" + pos(i, j) + ") is not real");
        if (z.real() < -tau_zero) throw NotStochastic("entry (" + pos(i, j) + ") is negative");
        z = Complex(std::max(z.real(), 0.0), 0.0);
        sum += z.real();
      }
      if (std::abs(sum - 1.0) > column_sum_tol)
        throw NotStochastic("column " + std::to_string(j + 1) + " sums to " + std::to_string(sum));
    }
  }

  const ComplexMatrix& matrix() const { return inner_; }
  int dim() const { return static_cast<int>(inner_.rows()); }

 private:
  static std::string pos(Eigen::Index i, Eigen::Index j) {
    return std::to_string(i + 1) + "," + std::to_string(j + 1);
  }

  ComplexMatrix inner_;
};

struct StochasticReport {
  bool ergodic = false;
  bool mixing = false;
  bool irreducible = false;
  bool primitive = false;
  bool scrambling = false;
  int unit_multiplicity = 0;  // from the digraph: number of closed classes
  int peripheral_count = 0;   // from the spectrum
  int closed_class_count = 0;
  std::optional<Eigen::VectorXd> stationary;
  std::vector<Complex> eigenvalues;
  int spectral_unit_multiplicity = 0;
};

/// Solves (A - 1) pi = 0 with sum(pi) = 1 appended, in the least-squares sense.
inline Eigen::VectorXd stationary_distribution(const StochasticMatrix& a) {
  const int n = a.dim();
  Eigen::MatrixXd sys(n + 1, n);
  sys.topRows(n) = a.matrix().real() - Eigen::MatrixXd::Identity(n, n);
  sys.row(n).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
  rhs(n) = 1.0;
  Eigen::VectorXd pi = sys.colPivHouseholderQr().solve(rhs);
  for (int i = 0; i < n; ++i)
    if (pi(i) < 0.0 && pi(i) > -1e-12) pi(i) = 0.0;
  return pi / pi.sum();
}

/// Any two columns share a row where both are positive.
inline bool is_scrambling(const StochasticMatrix& a, double tau_zero = Tolerances{}.zero) {
  const auto& m = a.matrix();
  const int n = a.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      bool meet = false;
      for (int k = 0; k < n && !meet; ++k) meet = m(k, i).real() > tau_zero && m(k, j).real() > tau_zero;
      if (!meet) return false;
    }
  return true;
}

inline StochasticReport classify_stochastic(const StochasticMatrix& a, const Tolerances& tol = {}) {
  const auto g = digraph_of(a.matrix(), tol.zero);
  const auto dec = communicating_classes(g);

  StochasticReport r;
  r.closed_class_count = dec.closed_count();
  r.unit_multiplicity = r.closed_class_count;
  r.ergodic = r.closed_class_count == 1;
  if (r.ergodic) {
    for (std::size_t c = 0; c < dec.classes.size(); ++c)
      if (dec.closed[c]) r.mixing = dec.periods[c] == 1;
  }
  r.irreducible = is_strongly_connected(g);
  r.primitive = is_aperiodic(g);
  r.scrambling = is_scrambling(a, tol.zero);

  const auto spec = eigenvalues(a.matrix(), tol);
  r.eigenvalues = spec.eigenvalues;
  r.peripheral_count = static_cast<int>(spec.peripheral.size());
  r.spectral_unit_multiplicity = spec.unit_multiplicity;
  if (r.ergodic) r.stationary = stationary_distribution(a);
  return r;
}

/// (1/n) sum_{k=0}^{n-1} A^k.
inline ComplexMatrix cesaro_mean(const StochasticMatrix& a, int n) {
  if (n < 1) throw PreconditionError("cesaro_mean: n must be >= 1");
  const int d = a.dim();
  ComplexMatrix power = ComplexMatrix::Identity(d, d);
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (int k = 0; k < n; ++k) {
    sum += power;
    power = a.matrix() * power;
  }
  return sum / static_cast<double>(n);
}

inline ComplexMatrix matrix_power(const ComplexMatrix& m, long long n) {
  if (n < 0) throw PreconditionError("matrix_power: negative exponent");
  ComplexMatrix result = ComplexMatrix::Identity(m.rows(), m.cols());
  ComplexMatrix base = m;
  while (n > 0) {
    if (n & 1) result = result * base;
    base = base * base;
    n >>= 1;
  }
  return result;
}

/// |pi><e| for a probability vector pi.
inline ComplexMatrix rank_one_limit(const Eigen::VectorXd& pi) {
  const auto n = pi.size();
  return (pi * Eigen::RowVectorXd::Ones(n)).cast<Complex>();
}

/// True iff max |A^n - |pi><e|| <= tol. Requires a mixing matrix.
inline bool power_limit_check(const StochasticMatrix& a, long long n, double tol, const Tolerances& tols = {}) {
  const auto report = classify_stochastic(a, tols);
  if (!report.mixing) throw PreconditionError("power_limit_check: matrix is not mixing");
  return max_abs(matrix_power(a.matrix(), n) - rank_one_limit(*report.stationary)) <= tol;
}

}  // namespace docergo
