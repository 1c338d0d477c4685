#pragma once

#include <optional>
#include <vector>

#include "docergo/doc_channel.hpp"
#include "docergo/ldoi_gates.hpp"
#include "docergo/linalg.hpp"

namespace docergo {

inline constexpr double map_equality_tol = 1e-10;

namespace detail {

inline void require_unitary_gate(const BipartiteMatrix& u, const char* who) {
  if (unitarity_residual(u.matrix()) > unitary_tol)
    throw PreconditionError(std::string(who) + ": gate is not unitary");
}

}  // namespace detail

/// Lambda_+(X) = (1/d) Tr_1[U^dagger (X (x) 1) U], returned as its matrix
/// representation. Built from the Choi matrix (1/d) F (U_G^dagger U_G) F with
/// U_G = (transp (x) id)(U).
inline BipartiteMatrix lambda_plus_contraction(const BipartiteMatrix& u) {
  detail::require_unitary_gate(u, "lambda_plus_contraction");
  const int d = u.local_dim();
  const auto ug = partial_transpose(u, Side::first);
  const auto f = flip(d);
  const BipartiteMatrix j(d, (f.matrix() * (ug.adjoint() * ug).matrix() * f.matrix()) / static_cast<double>(d));
  return realign(j);
}

/// Lambda_-(X) = (1/d) Tr_2[U^dagger (1 (x) X) U], i.e. Lambda_+ of F U F.
inline BipartiteMatrix lambda_minus_contraction(const BipartiteMatrix& u) {
  detail::require_unitary_gate(u, "lambda_minus_contraction");
  const auto f = flip(u.local_dim());
  return lambda_plus_contraction(f * u * f);
}

/// DOC triple of Lambda_+ for a unitary LDOI gate X_(A,B,C).
inline TripleABC lambda_plus_closed_form(const TripleABC& t) {
  if (!is_unitary_ldoi(t)) throw PreconditionError("lambda_plus_closed_form: gate is not unitary");
  const int d = t.dim();
  const auto& a = t.A();
  const auto& b = t.B();
  const auto& c = t.C();
  const ComplexMatrix cbar_ct = c.conjugate() * c.transpose();
  const ComplexMatrix dterm = diag_part(cbar_ct - 2.0 * c.cwiseProduct(c.conjugate()));
  const double inv = 1.0 / d;
  const ComplexMatrix ca =
      inv * (ComplexMatrix(a.transpose()).cwiseProduct(a.adjoint()) +
             ComplexMatrix(b.transpose()).cwiseProduct(b.adjoint()) + dterm);
  const ComplexMatrix cb = inv * cbar_ct;
  const ComplexMatrix cc =
      inv * (a.cwiseProduct(ComplexMatrix(b.adjoint())) + ComplexMatrix(a.adjoint()).cwiseProduct(b) + dterm);
  return {ca, cb, cc};
}

inline BipartiteMatrix identity_map(int d) { return BipartiteMatrix::identity(d); }

/// X -> Tr(X) 1/d.
inline BipartiteMatrix depolarizing_map(int d) {
  return replacement_map(ComplexMatrix::Identity(d, d) / static_cast<double>(d));
}

struct CircuitVerdict {
  bool non_interacting = false;
  bool ergodic = false;
  bool mixing = false;
  bool bernoulli = false;
  int constant_modes = 0;
  int nondecaying_modes = 0;
  ChannelReport channel_report;
  std::optional<TripleABC> lambda_triple;  // present for LDOI gates
  std::vector<Complex> peripheral;
};

/// Circuit behaviour of a dual unitary gate from its Lambda_+ channel:
/// ergodic iff Lambda_+ irreducible, mixing iff primitive. LDOI gates go
/// through the closed-form DOC triple; other gates through the spectrum of
/// the contraction (Lambda_+ is unital, so 1/d is always stationary).
inline CircuitVerdict classify_circuit(const BipartiteMatrix& u, const Tolerances& tol = {}) {
  const auto cert = certify(u);
  if (!cert.dual_unitary) throw PreconditionError("classify_circuit: gate is not dual unitary");
  const int d = u.local_dim();
  const auto m = lambda_plus_contraction(u);

  CircuitVerdict v;
  v.non_interacting = max_abs(m.matrix() - identity_map(d).matrix()) <= map_equality_tol;
  v.bernoulli = max_abs(m.matrix() - depolarizing_map(d).matrix()) <= map_equality_tol;

  if (ldoi_residual(u) <= 1e-12) {
    v.lambda_triple = lambda_plus_closed_form(extract_triple(u));
    v.channel_report = classify(DocChannel(*v.lambda_triple), tol);
  } else {
    const auto spec = eigenvalues(m.matrix(), tol);
    ChannelReport& r = v.channel_report;
    r.route = "spectrum";
    r.eigenvalues = spec.eigenvalues;
    r.peripheral_count = static_cast<int>(spec.peripheral.size());
    r.constant_mode_count = spec.unit_multiplicity;
    r.ergodic = r.irreducible = r.constant_mode_count == 1;
    r.mixing = r.primitive = r.ergodic && r.peripheral_count == 1;
    if (r.ergodic) r.stationary_state = ComplexMatrix::Identity(d, d) / static_cast<double>(d);
  }
  v.ergodic = v.channel_report.irreducible;
  v.mixing = v.channel_report.primitive;
  v.constant_modes = v.channel_report.constant_mode_count;
  v.nondecaying_modes = v.channel_report.nondecaying_mode_count();
  for (const auto& z : v.channel_report.eigenvalues)
    if (std::abs(z) >= 1.0 - tol.peri) v.peripheral.push_back(z);
  return v;
}

/// For the shifted LDUI gate (pi (x) 1) X_(diag C, diag C, C): products of the
/// entries of B' = conj(C) C^T / d along each off-diagonal orbit
/// (i, i + k), k = 1..d-1. The d eigenvalues of each orbit are the d-th roots
/// of its product.
inline std::vector<Complex> cycle_eigenvalue_products(const TripleABC& t) {
  const int d = t.dim();
  const ComplexMatrix cb = lambda_plus_closed_form(t).B();
  std::vector<Complex> out;
  for (int k = 1; k < d; ++k) {
    Complex prod(1.0, 0.0);
    for (int i = 0; i < d; ++i) prod *= cb(i, (i + k) % d);
    out.push_back(prod);
  }
  return out;
}

}  // namespace docergo
