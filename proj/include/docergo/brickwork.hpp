#pragma once

#include <algorithm>
#include <cstdio>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "docergo/linalg.hpp"
#include "docergo/stochastic.hpp"

namespace docergo {

inline constexpr long long max_chain_dim = 4096;

/// Periodic chain of 2L qudits with sites -L+1..L. Site x is stored at
/// position x + L - 1; position 0 is the most significant tensor factor.
struct ChainConfig {
  int d = 2;
  int L = 1;
  BipartiteMatrix gate = BipartiteMatrix::identity(2);
  int t_max = 1;

  int sites() const { return 2 * L; }
  int position(int site) const { return site + L - 1; }
  int site(int position) const { return position - L + 1; }

  /// Wraps an integer into the site range -L+1..L.
  int wrap(int x) const {
    const int n = sites();
    return ((x + L - 1) % n + n) % n - L + 1;
  }

  long long hilbert_dim() const {
    long long n = 1;
    for (int k = 0; k < sites(); ++k) {
      n *= d;
      if (n > max_chain_dim) return n;
    }
    return n;
  }

  void validate() const {
    if (d < 1 || L < 1) throw DimensionError("chain needs d >= 1 and L >= 1");
    if (gate.local_dim() != d) throw DimensionError("gate dimension does not match d");
    if (hilbert_dim() > max_chain_dim)
      throw SizeError("d^(2L) exceeds " + std::to_string(max_chain_dim));
    if (t_max < 1 || t_max > 2 * L - 1) throw SizeError("t_max must lie in 1..2L-1");
  }
};

/// Gate pairs (first factor, second factor) as site labels.
/// Odd layer (U_-): (-L+2, -L+3), ..., (L-2, L-1), (L, -L+1).
/// Even layer (U_+): (-L+1, -L+2), ..., (L-1, L).
inline std::vector<std::pair<int, int>> layer_pairs(const ChainConfig& cfg, bool minus) {
  std::vector<std::pair<int, int>> out;
  const int L = cfg.L;
  if (minus) {
    for (int x = -L + 2; x <= L - 2; x += 2) out.emplace_back(x, x + 1);
    out.emplace_back(L, -L + 1);
  } else {
    for (int x = -L + 1; x <= L - 1; x += 2) out.emplace_back(x, x + 1);
  }
  return out;
}

/// Layer applied at step k (1-based): U_- for odd k, U_+ for even k.
inline bool layer_is_minus(int k) { return k % 2 == 1; }

namespace detail {

inline long long ipow(int base, int exp) {
  long long r = 1;
  for (int k = 0; k < exp; ++k) r *= base;
  return r;
}

/// G acting on positions (p, q) multiplied from the left onto `m`.
inline void apply_gate_left(ComplexMatrix& m, const ComplexMatrix& g, int d, int n, int p, int q) {
  const long long sp = ipow(d, n - 1 - p), sq = ipow(d, n - 1 - q);
  const auto dim = m.rows();
  const int dd = d * d;
  std::vector<Eigen::Index> rows(dd);
  ComplexMatrix block(dd, m.cols());
  for (Eigen::Index base = 0; base < dim; ++base) {
    if ((base / sp) % d != 0 || (base / sq) % d != 0) continue;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) rows[a * d + b] = base + a * sp + b * sq;
    for (int r = 0; r < dd; ++r) block.row(r) = m.row(rows[r]);
    const ComplexMatrix out = g * block;
    for (int r = 0; r < dd; ++r) m.row(rows[r]) = out.row(r);
  }
}

}  // namespace detail

/// Full layer matrix (U_- if `minus`, otherwise U_+) applied to `m` from the left.
inline void apply_layer_left(ComplexMatrix& m, const ChainConfig& cfg, bool minus, bool adjoint = false) {
  const ComplexMatrix g = adjoint ? ComplexMatrix(cfg.gate.matrix().adjoint()) : cfg.gate.matrix();
  for (const auto& [x, y] : layer_pairs(cfg, minus))
    detail::apply_gate_left(m, g, cfg.d, cfg.sites(), cfg.position(x), cfg.position(y));
}

/// U(t) = ... U_+ U_- with U_- applied first.
inline ComplexMatrix build_evolution(const ChainConfig& cfg, int t) {
  cfg.validate();
  if (t < 0 || t > cfg.t_max) throw SizeError("t outside 0..t_max");
  const auto dim = static_cast<Eigen::Index>(cfg.hilbert_dim());
  ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
  for (int k = 1; k <= t; ++k) apply_layer_left(u, cfg, layer_is_minus(k));
  return u;
}

/// U(t)^dagger O U(t), applied layer by layer.
inline ComplexMatrix heisenberg(const ChainConfig& cfg, ComplexMatrix o, int t) {
  // W^dagger O W = (W^dagger (W^dagger O)^dagger)^dagger, newest layer innermost
  for (int k = t; k >= 1; --k) {
    apply_layer_left(o, cfg, layer_is_minus(k), true);
    o.adjointInPlace();
    apply_layer_left(o, cfg, layer_is_minus(k), true);
    o.adjointInPlace();
  }
  return o;
}

/// `op` on site `site`, identity elsewhere.
inline ComplexMatrix local_operator(const ChainConfig& cfg, const ComplexMatrix& op, int site) {
  const auto dim = static_cast<Eigen::Index>(cfg.hilbert_dim());
  const int p = cfg.position(site);
  ComplexMatrix emb = ComplexMatrix::Zero(dim, dim);
  const long long sp = detail::ipow(cfg.d, cfg.sites() - 1 - p);
  for (Eigen::Index r = 0; r < dim; ++r) {
    const int a = static_cast<int>((r / sp) % cfg.d);
    const Eigen::Index base = r - a * sp;
    for (int b = 0; b < cfg.d; ++b) emb(r, base + b * sp) = op(a, b);
  }
  return emb;
}

/// Reduced operator on one position: sum over the other factors.
inline ComplexMatrix partial_trace_to(const ChainConfig& cfg, const ComplexMatrix& o, int position) {
  const long long sp = detail::ipow(cfg.d, cfg.sites() - 1 - position);
  ComplexMatrix out = ComplexMatrix::Zero(cfg.d, cfg.d);
  for (Eigen::Index r = 0; r < o.rows(); ++r) {
    const int a = static_cast<int>((r / sp) % cfg.d);
    const Eigen::Index base = r - a * sp;
    for (int b = 0; b < cfg.d; ++b) out(a, b) += o(r, base + b * sp);
  }
  return out;
}

/// C(x, t) = Tr(U(t)^dagger A_y U(t) B_{y+x}) - Tr(A_y) Tr(B_{y+x}) / d^{2L}
/// for displacements x in -L+1..L and t = 1..t_max, origin y.
struct CorrelationTable {
  int d = 0;
  int L = 0;
  int origin = 0;
  int t_max = 0;
  std::map<std::pair<int, int>, Complex> values;  // (x, t) -> raw value

  Complex at(int x, int t) const { return values.at({x, t}); }

  /// Raw value divided by d^{2L-1}.
  Complex normalized(int x, int t) const { return at(x, t) / static_cast<double>(detail::ipow(d, 2 * L - 1)); }

  /// CSV with columns x,t,re,im ordered by t then x.
  std::string to_csv() const {
    std::string out = "x,t,re,im\n";
    char buf[128];
    for (int t = 1; t <= t_max; ++t)
      for (int x = -L + 1; x <= L; ++x) {
        const Complex z = at(x, t);
        std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g\n", x, t, z.real(), z.imag());
        out += buf;
      }
    return out;
  }
};

inline CorrelationTable correlations(const ChainConfig& cfg, const ComplexMatrix& a, const ComplexMatrix& b,
                                     int origin = 0) {
  cfg.validate();
  if (a.rows() != cfg.d || a.cols() != cfg.d || b.rows() != cfg.d || b.cols() != cfg.d)
    throw DimensionError("observables must be d x d");
  if (cfg.wrap(origin) != origin) throw DimensionError("origin must be a site label");

  CorrelationTable table;
  table.d = cfg.d;
  table.L = cfg.L;
  table.origin = origin;
  table.t_max = cfg.t_max;
  const Complex offset = a.trace() * b.trace() * static_cast<double>(detail::ipow(cfg.d, 2 * cfg.L - 2));
  const ComplexMatrix a0 = local_operator(cfg, a, origin);
  for (int t = 1; t <= cfg.t_max; ++t) {
    const ComplexMatrix at = heisenberg(cfg, a0, t);
    for (int pos = 0; pos < cfg.sites(); ++pos) {
      const ComplexMatrix rho = partial_trace_to(cfg, at, pos);
      const int x = cfg.wrap(cfg.site(pos) - origin);
      table.values[{x, t}] = (rho * b).trace() - offset;
    }
  }
  return table;
}

struct EdgeCheck {
  double max_residual = 0.0;      // |simulated - predicted| over both edges and t
  double max_off_edge = 0.0;      // |C| on the edge the light cone does not reach
  double scale = 0.0;             // d^{2L-1}
};

/// Edge x = +t is reached from origins with y + t even and is governed by
/// Lambda_+^t; edge x = -t from y + t odd, by Lambda_-^t. `plus` and `minus`
/// are the matrix representations of the two channels. Only t <= L is
/// checked: beyond that the light cone wraps onto itself.
inline EdgeCheck edge_check(const ChainConfig& cfg, const ComplexMatrix& a, const ComplexMatrix& b,
                            const BipartiteMatrix& plus, const BipartiteMatrix& minus) {
  cfg.validate();
  EdgeCheck out;
  out.scale = static_cast<double>(detail::ipow(cfg.d, 2 * cfg.L - 1));
  const Complex trace_term = a.trace() * b.trace() / static_cast<double>(cfg.d);
  for (int origin : {0, 1}) {
    const auto table = correlations(cfg, a, b, cfg.wrap(origin));
    for (int t = 1; t <= std::min(cfg.t_max, cfg.L); ++t) {
      const bool plus_edge = (origin + t) % 2 == 0;
      const auto& rep = plus_edge ? plus : minus;
      const int x = cfg.wrap(plus_edge ? t : -t);
      const ComplexMatrix evolved = apply_map(BipartiteMatrix(cfg.d, matrix_power(rep.matrix(), t)), a);
      const Complex predicted = out.scale * ((evolved * b).trace() - trace_term);
      out.max_residual = std::max(out.max_residual, std::abs(table.at(x, t) - predicted));
      const int other = cfg.wrap(plus_edge ? -t : t);
      if (other != x) out.max_off_edge = std::max(out.max_off_edge, std::abs(table.at(other, t)));
    }
  }
  return out;
}

}  // namespace docergo
