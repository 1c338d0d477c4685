#pragma once

#include <cstdint>
#include <optional>

#include "docergo/doc_channel.hpp"
#include "docergo/linalg.hpp"
#include "docergo/random.hpp"

namespace docergo {

inline constexpr double unitary_tol = 1e-10;

struct GateCertificates {
  bool unitary = false;
  bool dual_unitary = false;
  bool perfect = false;
  double unitary_residual = 0.0;    // max |U^dagger U - 1|
  double realigned_residual = 0.0;  // same for U^R
  double transposed_residual = 0.0; // same for (id (x) transp)(U)
};

inline GateCertificates certify(const BipartiteMatrix& u) {
  GateCertificates c;
  c.unitary_residual = unitarity_residual(u.matrix());
  c.realigned_residual = unitarity_residual(realign(u).matrix());
  c.transposed_residual = unitarity_residual(partial_transpose(u, Side::second).matrix());
  c.unitary = c.unitary_residual <= unitary_tol;
  c.dual_unitary = c.unitary && c.realigned_residual <= unitary_tol;
  c.perfect = c.dual_unitary && c.transposed_residual <= unitary_tol;
  return c;
}

struct LdoiGate {
  TripleABC triple;
  BipartiteMatrix matrix;
  GateCertificates certificates;
  std::optional<std::uint64_t> seed;
};

inline LdoiGate assemble(const TripleABC& t, std::optional<std::uint64_t> seed = std::nullopt) {
  auto x = ldoi_matrix(t);
  auto cert = certify(x);
  return {t, std::move(x), cert, seed};
}

/// B unitary, and for i < j a phase w with A_ji = w conj(A_ij),
/// C_ji = -w conj(C_ij), and |A_ij|^2 + |C_ij|^2 = 1.
inline bool is_unitary_ldoi(const TripleABC& t, double tol = unitary_tol) {
  if (!is_unitary(t.B(), tol)) return false;
  const int d = t.dim();
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const Complex aij = t.A()(i, j), aji = t.A()(j, i), cij = t.C()(i, j), cji = t.C()(j, i);
      if (std::abs(std::norm(aij) + std::norm(cij) - 1.0) > tol) return false;
      // the larger of |A_ij|, |C_ij| is at least 1/sqrt(2) and fixes w
      const Complex w = std::abs(aij) >= std::abs(cij) ? aji / std::conj(aij) : -cji / std::conj(cij);
      if (std::abs(std::abs(w) - 1.0) > tol) return false;
      if (std::abs(aji - w * std::conj(aij)) > tol || std::abs(cji + w * std::conj(cij)) > tol) return false;
    }
  return true;
}

/// Both X_(A,B,C) and its realignment X_(B,A,C) unitary, each checked by the
/// structural conditions above.
inline bool is_dual_unitary_ldoi(const TripleABC& t, double tol = unitary_tol) {
  return is_unitary_ldoi(t, tol) && is_unitary_ldoi(t.swapped(), tol);
}

/// U^R and (id (x) transp)(U) both unitary.
inline bool is_perfect(const BipartiteMatrix& u) {
  if (unitarity_residual(u.matrix()) > unitary_tol) throw PreconditionError("is_perfect: gate is not unitary");
  return certify(u).perfect;
}

/// (diag C, diag C, C) for a phase matrix C.
inline TripleABC gen_ldui_dual(const ComplexMatrix& phases) {
  require_square(phases, "phase matrix");
  for (Eigen::Index j = 0; j < phases.cols(); ++j)
    for (Eigen::Index i = 0; i < phases.rows(); ++i)
      if (std::abs(std::abs(phases(i, j)) - 1.0) > 1e-12) throw PreconditionError("gen_ldui_dual: entries must be phases");
  const ComplexMatrix dg = diag_part(phases);
  return {dg, dg, phases};
}

inline ComplexMatrix random_phase_matrix(int d, Rng& rng) {
  ComplexMatrix c(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) c(i, j) = random_phase(rng);
  return c;
}

/// A = B = 2P - 1 and C with |C_ij|^2 = 1 - |A_ij|^2, C_ji = -conj(C_ij),
/// phases of C_ij (i < j) drawn from `seed`.
inline TripleABC gen_projection_dual(const ComplexMatrix& p, std::uint64_t seed) {
  require_square(p, "projection");
  if (max_abs(p * p - p) > 1e-10 || hermiticity_residual(p) > 1e-10)
    throw PreconditionError("gen_projection_dual: P is not an orthogonal projection");
  const auto d = static_cast<int>(p.rows());
  const ComplexMatrix a = 2.0 * p - ComplexMatrix::Identity(d, d);
  ComplexMatrix c = diag_part(a);
  Rng rng(seed);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      c(i, j) = std::sqrt(std::max(0.0, 1.0 - std::norm(a(i, j)))) * random_phase(rng);
      c(j, i) = -std::conj(c(i, j));
    }
  return {a, a, c};
}

/// Random unitary LDOI triple with diagonal B: diag entries are phases, and
/// for i < j a random A_ij in the unit disc, |C_ij| = sqrt(1 - |A_ij|^2),
/// A_ji = w conj(A_ij), C_ji = -w conj(C_ij). Generally not dual unitary.
inline TripleABC random_unitary_ldoi(int d, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ComplexMatrix a = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) a(i, i) = random_phase(rng);
  ComplexMatrix b = a, c = a;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const double r = std::sqrt(u(rng));
      const Complex w = random_phase(rng);
      a(i, j) = r * random_phase(rng);
      a(j, i) = w * std::conj(a(i, j));
      c(i, j) = std::sqrt(1.0 - r * r) * random_phase(rng);
      c(j, i) = -w * std::conj(c(i, j));
    }
  return {a, b, c};
}

/// Cyclic permutation with pi^dagger |i> = |i + 1 mod d>, raised to `shift`.
inline ComplexMatrix cyclic_shift(int d, int shift = 1) {
  ComplexMatrix pi = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) pi(i, ((i + shift) % d + d) % d) = 1.0;
  return pi;
}

/// (pi^shift (x) 1) X_(A,B,C) for a dual unitary triple.
inline BipartiteMatrix shift_gate(const TripleABC& t, int shift = 1) {
  if (!is_dual_unitary_ldoi(t)) throw PreconditionError("shift_gate: triple is not dual unitary");
  const int d = t.dim();
  return kron(cyclic_shift(d, shift), ComplexMatrix::Identity(d, d)) * ldoi_matrix(t);
}

}  // namespace docergo
