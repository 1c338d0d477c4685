#pragma once

#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

#include "docergo/linalg.hpp"

namespace docergo {

/// Directed graph on vertices 0..n-1 with loops allowed and no multi-edges.
/// Stored as a dense adjacency pattern; the graphs handled here come from
/// small dense matrices.
class Digraph {
 public:
  explicit Digraph(int n = 0) : n_(n), adj_(static_cast<std::size_t>(n) * n, 0) {
    if (n < 0) throw DimensionError("vertex count must be non-negative");
  }

  int size() const { return n_; }

  bool has_edge(int from, int to) const { return adj_[index(from, to)] != 0; }
  void add_edge(int from, int to) { adj_[index(from, to)] = 1; }

  /// Edges in lexicographic order.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (has_edge(i, j)) out.emplace_back(i, j);
    return out;
  }

  std::vector<int> successors(int v) const {
    std::vector<int> out;
    for (int j = 0; j < n_; ++j)
      if (has_edge(v, j)) out.push_back(j);
    return out;
  }

  friend bool operator==(const Digraph&, const Digraph&) = default;

 private:
  std::size_t index(int from, int to) const {
    if (from < 0 || from >= n_ || to < 0 || to >= n_) throw DimensionError("edge endpoint out of range");
    return static_cast<std::size_t>(from) * n_ + to;
  }

  int n_;
  std::vector<char> adj_;
};

/// G_A: edge (i, j) iff |A_ji| > tau_zero. The edge i -> j is the transition
/// from state i to state j of the column-stochastic chain.
inline Digraph digraph_of(const ComplexMatrix& a, double tau_zero = Tolerances{}.zero) {
  require_square(a);
  const auto n = static_cast<int>(a.rows());
  Digraph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (std::abs(a(j, i)) > tau_zero) g.add_edge(i, j);
  return g;
}

/// Communicating classes of a digraph, listed in canonical order: a class
/// only leads to classes listed before it, and closed classes come first.
struct ClassDecomposition {
  std::vector<std::vector<int>> classes;  // each sorted ascending
  std::vector<char> closed;
  std::vector<char> accessible;           // every outside vertex leads into it
  std::vector<int> periods;               // 0 for a single vertex without loop
  std::vector<int> class_of;              // vertex -> index into `classes`

  int closed_count() const { return static_cast<int>(std::count(closed.begin(), closed.end(), 1)); }
};

namespace detail {

inline std::vector<std::vector<int>> tarjan_scc(const Digraph& g) {
  const int n = g.size();
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<int> stack;
  std::vector<std::vector<int>> out;
  int counter = 0;

  auto visit = [&](auto&& self, int v) -> void {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = 1;
    for (int w = 0; w < n; ++w) {
      if (!g.has_edge(v, w)) continue;
      if (index[w] < 0) {
        self(self, w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<int> comp;
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = 0;
        comp.push_back(w);
      } while (w != v);
      std::sort(comp.begin(), comp.end());
      out.push_back(std::move(comp));
    }
  };
  for (int v = 0; v < n; ++v)
    if (index[v] < 0) visit(visit, v);
  return out;
}

// gcd of level differences along intra-class edges of a BFS tree.
inline int class_period(const Digraph& g, const std::vector<int>& cls, const std::vector<int>& class_of,
                        int id) {
  if (cls.size() == 1) return g.has_edge(cls[0], cls[0]) ? 1 : 0;
  std::vector<int> level(g.size(), -1);
  std::vector<int> queue{cls[0]};
  level[cls[0]] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int u = queue[head];
    for (int v : g.successors(u)) {
      if (class_of[v] != id || level[v] >= 0) continue;
      level[v] = level[u] + 1;
      queue.push_back(v);
    }
  }
  int p = 0;
  for (int u : cls)
    for (int v : g.successors(u))
      if (class_of[v] == id) p = std::gcd(p, std::abs(level[u] + 1 - level[v]));
  return p;
}

}  // namespace detail

inline ClassDecomposition communicating_classes(const Digraph& g) {
  const int n = g.size();
  auto sccs = detail::tarjan_scc(g);
  const auto k = static_cast<int>(sccs.size());

  std::vector<int> scc_of(n);
  for (int c = 0; c < k; ++c)
    for (int v : sccs[c]) scc_of[v] = c;

  // condensation successors
  std::vector<std::vector<char>> leads(k, std::vector<char>(k, 0));
  std::vector<char> is_closed(k, 1);
  for (const auto& [u, v] : g.edges()) {
    if (scc_of[u] != scc_of[v]) {
      leads[scc_of[u]][scc_of[v]] = 1;
      is_closed[scc_of[u]] = 0;
    }
  }

  // Kahn order on the reversed condensation: place a class once all classes
  // it leads to are placed; closed classes first, then smallest vertex.
  std::vector<int> order;
  std::vector<char> placed(k, 0);
  while (static_cast<int>(order.size()) < k) {
    int best = -1;
    for (int c = 0; c < k; ++c) {
      if (placed[c]) continue;
      bool ready = true;
      for (int e = 0; e < k && ready; ++e)
        if (leads[c][e] && !placed[e]) ready = false;
      if (!ready) continue;
      if (best < 0 || is_closed[c] > is_closed[best] ||
          (is_closed[c] == is_closed[best] && sccs[c][0] < sccs[best][0])) {
        best = c;
      }
    }
    placed[best] = 1;
    order.push_back(best);
  }

  ClassDecomposition out;
  out.class_of.assign(n, -1);
  for (int pos = 0; pos < k; ++pos) {
    out.classes.push_back(sccs[order[pos]]);
    out.closed.push_back(is_closed[order[pos]]);
    for (int v : sccs[order[pos]]) out.class_of[v] = pos;
  }
  for (int c = 0; c < k; ++c) out.periods.push_back(detail::class_period(g, out.classes[c], out.class_of, c));

  // full accessibility via reverse reachability
  for (int c = 0; c < k; ++c) {
    std::vector<char> reach(n, 0);
    std::vector<int> queue = out.classes[c];
    for (int v : queue) reach[v] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int v = queue[head];
      for (int u = 0; u < n; ++u) {
        if (!reach[u] && g.has_edge(u, v)) {
          reach[u] = 1;
          queue.push_back(u);
        }
      }
    }
    out.accessible.push_back(std::all_of(reach.begin(), reach.end(), [](char r) { return r != 0; }));
  }
  return out;
}

/// Single-vertex graphs count as strongly connected only with a loop.
inline bool is_strongly_connected(const Digraph& g) {
  if (g.size() == 0) return false;
  if (g.size() == 1) return g.has_edge(0, 0);
  return communicating_classes(g).classes.size() == 1;
}

inline bool is_aperiodic(const Digraph& g) {
  if (!is_strongly_connected(g)) return false;
  return communicating_classes(g).periods.front() == 1;
}

namespace detail {

using BoolMatrix = std::vector<char>;

inline BoolMatrix adjacency(const Digraph& g) {
  const int n = g.size();
  BoolMatrix m(static_cast<std::size_t>(n) * n, 0);
  for (const auto& [u, v] : g.edges()) m[static_cast<std::size_t>(u) * n + v] = 1;
  return m;
}

inline BoolMatrix bool_product(const BoolMatrix& a, const BoolMatrix& b, int n) {
  BoolMatrix c(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (!a[static_cast<std::size_t>(i) * n + k]) continue;
      for (int j = 0; j < n; ++j)
        if (b[static_cast<std::size_t>(k) * n + j]) c[static_cast<std::size_t>(i) * n + j] = 1;
    }
  return c;
}

}  // namespace detail

inline int default_scrambling_cap(int n) { return (n - 1) * (n - 1) + 1; }

/// Smallest m <= n_max such that any two vertices (including a vertex with
/// itself) reach a common vertex in exactly m steps; 0 if there is none.
inline int scrambling_index(const Digraph& g, int n_max) {
  if (n_max < 1) throw PreconditionError("scrambling_index: n_max must be >= 1");
  const int n = g.size();
  if (n == 0) return 0;
  const auto step = detail::adjacency(g);
  auto reach = step;
  for (int m = 1; m <= n_max; ++m) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = i; j < n && ok; ++j) {
        bool meet = false;
        for (int k = 0; k < n && !meet; ++k)
          meet = reach[static_cast<std::size_t>(i) * n + k] && reach[static_cast<std::size_t>(j) * n + k];
        ok = meet;
      }
    if (ok) return m;
    reach = detail::bool_product(reach, step, n);
  }
  return 0;
}

inline int scrambling_index(const Digraph& g) { return scrambling_index(g, default_scrambling_cap(g.size())); }

/// Permutation p (position -> original vertex) such that the matrix with
/// entries A(p[a], p[b]) is block upper-triangular with the communicating
/// classes as diagonal blocks, closed classes leading.
inline std::vector<int> canonical_permutation(const ComplexMatrix& a, double tau_zero = Tolerances{}.zero) {
  const auto dec = communicating_classes(digraph_of(a, tau_zero));
  std::vector<int> perm;
  for (const auto& cls : dec.classes) perm.insert(perm.end(), cls.begin(), cls.end());
  return perm;
}

inline ComplexMatrix permute(const ComplexMatrix& a, const std::vector<int>& perm) {
  const auto n = static_cast<int>(perm.size());
  ComplexMatrix out(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) out(r, c) = a(perm[r], perm[c]);
  return out;
}

/// Eigenvalues as the union over the diagonal blocks of the canonical form
/// of the exact zero pattern. Exact for classes of one vertex and keeps
/// transient chains from forming Jordan blocks in the dense solver.
inline std::vector<Complex> eigenvalues_by_classes(const ComplexMatrix& a) {
  require_square(a);
  require_finite(a);
  std::vector<Complex> out;
  for (const auto& cls : communicating_classes(digraph_of(a, 0.0)).classes) {
    if (cls.size() == 1) {
      out.push_back(a(cls[0], cls[0]));
      continue;
    }
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(permute(a, cls), false);
    if (solver.info() != Eigen::Success) throw InvalidMatrix("eigenvalue iteration did not converge");
    out.insert(out.end(), solver.eigenvalues().data(), solver.eigenvalues().data() + cls.size());
  }
  return out;
}

}  // namespace docergo
