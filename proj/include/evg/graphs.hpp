#pragma once

#include "errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace evg {

using Edge = std::pair<int, int>;          // always u < v, labels start at 1
using Labeling = std::vector<std::uint8_t>; // one bit per edge, in edge order

class EventGraph {
public:
  EventGraph() = default;

  // Vertices are 1..n. Edges are sorted lexicographically; that order fixes
  // the coordinate order of every weighting tuple.
  EventGraph(int n, std::vector<Edge> edges, bool require_connected = true)
    : n_(n), edges_(std::move(edges))
  {
    if (n < 1) throw ParamError("graph needs at least one vertex");
    for (auto& e : edges_) {
      if (e.first > e.second) std::swap(e.first, e.second);
      if (e.first == e.second) throw ParamError("loops are not allowed");
      if (e.first < 1 || e.second > n) throw ParamError("edge endpoint out of range");
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
      throw ParamError("multi-edges are not allowed");
    index_.assign(static_cast<std::size_t>(n) * n, -1);
    for (std::size_t k = 0; k < edges_.size(); ++k) {
      auto [u, v] = edges_[k];
      index_[(u - 1) * n + (v - 1)] = static_cast<int>(k);
      index_[(v - 1) * n + (u - 1)] = static_cast<int>(k);
    }
    if (require_connected && !connected()) throw ParamError("event graphs must be connected");
  }

  int order() const { return n_; }
  std::size_t size() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t k) const { return edges_[k]; }

  // position of {u,v} in the edge order, -1 if absent
  int edge_index(int u, int v) const
  {
    if (u < 1 || v < 1 || u > n_ || v > n_) return -1;
    return index_[(u - 1) * n_ + (v - 1)];
  }
  bool adjacent(int u, int v) const { return edge_index(u, v) >= 0; }

  std::vector<int> neighbors(int v) const
  {
    std::vector<int> out;
    for (int u = 1; u <= n_; ++u)
      if (adjacent(u, v)) out.push_back(u);
    return out;
  }

  bool connected() const
  {
    std::vector<int> seen(n_ + 1, 0), stack{1};
    seen[1] = 1;
    int count = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u = 1; u <= n_; ++u)
        if (!seen[u] && adjacent(u, v)) {
          seen[u] = 1;
          ++count;
          stack.push_back(u);
        }
    }
    return count == n_;
  }

  bool is_tree() const { return connected() && edges_.size() + 1 == static_cast<std::size_t>(n_); }

  bool operator==(const EventGraph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> index_;
};

// ---------------------------------------------------------------- families

inline EventGraph complete_graph(int n)
{
  if (n < 2) throw ParamError("K_n needs n >= 2");
  std::vector<Edge> e;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) e.emplace_back(i, j);
  return {n, e};
}

inline EventGraph cycle_graph(int n)
{
  if (n < 3) throw ParamError("C_n needs n >= 3");
  std::vector<Edge> e;
  for (int i = 1; i < n; ++i) e.emplace_back(i, i + 1);
  e.emplace_back(1, n);
  return {n, e};
}

inline EventGraph path_graph(int n)
{
  if (n < 1) throw ParamError("P_n needs n >= 1");
  std::vector<Edge> e;
  for (int i = 1; i < n; ++i) e.emplace_back(i, i + 1);
  return {n, e};
}

/// n-vertex wheel: cycle on 1..n-1 plus hub n joined to every rim vertex.
inline EventGraph wheel_graph(int n)
{
  if (n < 4) throw ParamError("W_n needs n >= 4");
  std::vector<Edge> e = cycle_graph(n - 1).edges();
  for (int i = 1; i < n; ++i) e.emplace_back(i, n);
  return {n, e};
}

/// K_{n,m}: parts {1..n} and {n+1..n+m}.
inline EventGraph complete_bipartite(int n, int m)
{
  if (n < 1 || m < 1) throw ParamError("K_{n,m} needs n, m >= 1");
  std::vector<Edge> e;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= m; ++j) e.emplace_back(i, n + j);
  return {n + m, e};
}

/// n triangles sharing the spine {1,2}.
inline EventGraph triangular_book(int n)
{
  if (n < 1) throw ParamError("triangular book needs n >= 1");
  std::vector<Edge> e{{1, 2}};
  for (int k = 0; k < n; ++k) {
    e.emplace_back(1, 3 + k);
    e.emplace_back(2, 3 + k);
  }
  return {n + 2, e};
}

/// Adds handle vertex n+1 adjacent to every vertex of g.
inline EventGraph suspension(const EventGraph& g)
{
  std::vector<Edge> e = g.edges();
  int h = g.order() + 1;
  for (int v = 1; v < h; ++v) e.emplace_back(v, h);
  return {h, e};
}

namespace detail {
inline EventGraph glue(const EventGraph& a, const EventGraph& b, int shared)
{
  // vertices 1..shared of b are identified with the last `shared` vertices of a
  int na = a.order();
  auto relabel = [&](int v) { return v <= shared ? na - shared + v : na + v - shared; };
  std::set<Edge> e(a.edges().begin(), a.edges().end());
  for (auto [u, v] : b.edges()) {
    int x = relabel(u), y = relabel(v);
    e.insert({std::min(x, y), std::max(x, y)});
  }
  return {na + b.order() - shared, std::vector<Edge>(e.begin(), e.end())};
}
} // namespace detail

/// Identifies vertex n_a of a with vertex 1 of b.
inline EventGraph glue_vertex(const EventGraph& a, const EventGraph& b) { return detail::glue(a, b, 1); }

/// Identifies edge {n_a - 1, n_a} of a with edge {1, 2} of b.
inline EventGraph glue_edge(const EventGraph& a, const EventGraph& b)
{
  if (!a.adjacent(a.order() - 1, a.order()) || !b.adjacent(1, 2))
    throw ParamError("glue-edge needs edge {n-1,n} in the first graph and {1,2} in the second");
  return detail::glue(a, b, 2);
}

/// Disjoint union; the result is not connected, so it is exempt from that check.
inline EventGraph disjoint_union(const EventGraph& a, const EventGraph& b)
{
  std::vector<Edge> e = a.edges();
  for (auto [u, v] : b.edges()) e.emplace_back(u + a.order(), v + a.order());
  return {a.order() + b.order(), e, false};
}

inline EventGraph build_family(const std::string& kind, const std::vector<int>& p,
                               const std::vector<EventGraph>& operands = {})
{
  auto need = [&](std::size_t k) {
    if (p.size() != k) throw ParamError(kind + ": expected " + std::to_string(k) + " integer parameter(s)");
  };
  auto need_ops = [&](std::size_t k) {
    if (operands.size() != k) throw ParamError(kind + ": expected " + std::to_string(k) + " graph operand(s)");
  };
  if (kind == "complete") { need(1); return complete_graph(p[0]); }
  if (kind == "cycle") { need(1); return cycle_graph(p[0]); }
  if (kind == "path") { need(1); return path_graph(p[0]); }
  if (kind == "wheel") { need(1); return wheel_graph(p[0]); }
  if (kind == "bipartite") { need(2); return complete_bipartite(p[0], p[1]); }
  if (kind == "book") { need(1); return triangular_book(p[0]); }
  if (kind == "suspension") { need_ops(1); return suspension(operands[0]); }
  if (kind == "glue-vertex") { need_ops(2); return glue_vertex(operands[0], operands[1]); }
  if (kind == "glue-edge") { need_ops(2); return glue_edge(operands[0], operands[1]); }
  if (kind == "disjoint-union") { need_ops(2); return disjoint_union(operands[0], operands[1]); }
  throw ParamError("unknown graph family: " + kind);
}

namespace detail {
struct CodeParser {
  const std::string& s;
  std::size_t i = 0;

  int number()
  {
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i) throw ParamError("graph code: expected a number at '" + s.substr(i) + "'");
    int v = std::stoi(s.substr(i, j - i));
    i = j;
    return v;
  }
  bool eat(const std::string& tok)
  {
    if (s.compare(i, tok.size(), tok) == 0) {
      i += tok.size();
      return true;
    }
    return false;
  }
  std::pair<EventGraph, EventGraph> pair()
  {
    if (!eat("(")) throw ParamError("graph code: expected '('");
    EventGraph a = graph();
    if (!eat(",")) throw ParamError("graph code: expected ','");
    EventGraph b = graph();
    if (!eat(")")) throw ParamError("graph code: expected ')'");
    return {a, b};
  }
  EventGraph graph()
  {
    if (eat("susp")) return suspension(graph());
    if (eat("glueV")) { auto [a, b] = pair(); return glue_vertex(a, b); }
    if (eat("glueE")) { auto [a, b] = pair(); return glue_edge(a, b); }
    if (eat("union")) { auto [a, b] = pair(); return disjoint_union(a, b); }
    if (eat("K")) {
      int n = number();
      // "K3,3" is bipartite unless the comma belongs to an enclosing pair
      if (i + 1 < s.size() && s[i] == ',' && std::isdigit(static_cast<unsigned char>(s[i + 1]))) {
        ++i;
        return complete_bipartite(n, number());
      }
      return complete_graph(n);
    }
    if (eat("C")) return cycle_graph(number());
    if (eat("W")) return wheel_graph(number());
    if (eat("P")) return path_graph(number());
    if (eat("B")) return triangular_book(number());
    throw ParamError("unknown graph code: '" + s.substr(i) + "'");
  }
};
} // namespace detail

/// Parses codes such as "K5", "C7", "W6", "K3,3", "P4", "B3", "suspC5",
/// "glueV(C3,C3)", "glueE(C3,C3)", "union(C3,K2)".
inline EventGraph graph_from_code(const std::string& code)
{
  detail::CodeParser p{code};
  EventGraph g = p.graph();
  if (p.i != code.size()) throw ParamError("trailing characters in graph code: " + code);
  return g;
}

// ------------------------------------------------- deterministic labelings

inline constexpr int default_vertex_cap = 12;

// Calls f(block_of) for every set partition of {0..n-1}, as restricted-growth strings.
inline void for_each_partition(int n, const std::function<void(const std::vector<int>&)>& f)
{
  std::vector<int> a(n, 0), mx(n, 0);
  if (n == 0) { f(a); return; }
  while (true) {
    f(a);
    int i = n - 1;
    while (i > 0 && a[i] == mx[i - 1] + 1) --i;
    if (i == 0) return;
    ++a[i];
    mx[i] = std::max(mx[i - 1], a[i]);
    for (int j = i + 1; j < n; ++j) {
      a[j] = 0;
      mx[j] = mx[i];
    }
  }
}

inline Labeling equality_labeling(const EventGraph& g, const std::vector<int>& block_of)
{
  Labeling l(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    auto [u, v] = g.edge(k);
    l[k] = block_of[u - 1] == block_of[v - 1] ? 1 : 0;
  }
  return l;
}

/// ext(c(G)): equality labelings of all vertex partitions, deduplicated and sorted.
inline std::vector<Labeling> enumerate_extreme_labelings(const EventGraph& g, int cap = default_vertex_cap)
{
  if (g.order() > cap)
    throw SizeError("vertex count " + std::to_string(g.order()) + " exceeds cap " + std::to_string(cap));
  std::set<Labeling> out;
  for_each_partition(g.order(), [&](const std::vector<int>& b) { out.insert(equality_labeling(g, b)); });
  return {out.begin(), out.end()};
}

namespace detail {
struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// component index (0-based, in order of first appearance) of every vertex under the 1-edges
inline std::vector<int> one_classes(const EventGraph& g, const Labeling& alpha)
{
  DisjointSets ds(g.order());
  for (std::size_t k = 0; k < g.size(); ++k)
    if (alpha[k]) ds.unite(g.edge(k).first - 1, g.edge(k).second - 1);
  std::vector<int> id(g.order(), -1), cls(g.order());
  int next = 0;
  for (int v = 0; v < g.order(); ++v) {
    int r = ds.find(v);
    if (id[r] < 0) id[r] = next++;
    cls[v] = id[r];
  }
  return cls;
}
} // namespace detail

/// No 0-edge joins two vertices connected by a path of 1-edges.
inline bool is_extreme(const Labeling& alpha, const EventGraph& g)
{
  if (alpha.size() != g.size()) throw ParamError("labeling length does not match edge count");
  auto cls = detail::one_classes(g, alpha);
  for (std::size_t k = 0; k < g.size(); ++k)
    if (!alpha[k] && cls[g.edge(k).first - 1] == cls[g.edge(k).second - 1]) return false;
  return true;
}

struct QuotientGraph {
  int classes = 0;
  std::vector<int> class_of;             // per vertex (index v-1), 0-based class id
  std::vector<std::pair<int, int>> edges; // class pairs a <= b; a == b is a loop

  bool has_loop() const
  {
    return std::any_of(edges.begin(), edges.end(), [](auto e) { return e.first == e.second; });
  }
};

inline QuotientGraph quotient_graph(const EventGraph& g, const Labeling& alpha)
{
  if (alpha.size() != g.size()) throw ParamError("labeling length does not match edge count");
  QuotientGraph q;
  q.class_of = detail::one_classes(g, alpha);
  q.classes = q.class_of.empty() ? 0 : *std::max_element(q.class_of.begin(), q.class_of.end()) + 1;
  std::set<std::pair<int, int>> e;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (alpha[k]) continue;
    int a = q.class_of[g.edge(k).first - 1], b = q.class_of[g.edge(k).second - 1];
    e.insert({std::min(a, b), std::max(a, b)});
  }
  q.edges.assign(e.begin(), e.end());
  return q;
}

namespace detail {
class Colorer {
public:
  explicit Colorer(std::vector<std::vector<char>> adj) : adj_(std::move(adj)), n_(static_cast<int>(adj_.size()))
  {
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) { return degree(a) > degree(b); });
  }

  int degree(int v) const { return static_cast<int>(std::count(adj_[v].begin(), adj_[v].end(), 1)); }

  // greedy clique along the degree order: a lower bound
  int clique_bound() const
  {
    int best = n_ > 0 ? 1 : 0;
    for (int s = 0; s < n_; ++s) {
      std::vector<int> c{order_[s]};
      for (int t = 0; t < n_; ++t) {
        int v = order_[t];
        if (std::all_of(c.begin(), c.end(), [&](int u) { return u != v && adj_[u][v]; })) c.push_back(v);
      }
      best = std::max(best, static_cast<int>(c.size()));
    }
    return best;
  }

  // greedy coloring along the degree order: an upper bound used only to cap the search
  int greedy_bound() const
  {
    std::vector<int> col(n_, -1);
    int used = 0;
    for (int v : order_) {
      int c = 0;
      while (true) {
        bool ok = true;
        for (int u = 0; u < n_; ++u)
          if (adj_[v][u] && col[u] == c) ok = false;
        if (ok) break;
        ++c;
      }
      col[v] = c;
      used = std::max(used, c + 1);
    }
    return used;
  }

  bool colorable(int k)
  {
    col_.assign(n_, -1);
    return extend(0, k, 0);
  }

private:
  bool extend(int pos, int k, int used)
  {
    if (pos == n_) return true;
    int v = order_[pos];
    // symmetry breaking: a fresh color is only tried once
    for (int c = 0; c < std::min(k, used + 1); ++c) {
      bool ok = true;
      for (int u = 0; u < n_ && ok; ++u)
        if (adj_[v][u] && col_[u] == c) ok = false;
      if (!ok) continue;
      col_[v] = c;
      if (extend(pos + 1, k, std::max(used, c + 1))) return true;
      col_[v] = -1;
    }
    return false;
  }

  std::vector<std::vector<char>> adj_;
  int n_;
  std::vector<int> order_, col_;
};

inline std::optional<int> chromatic_number(const std::vector<std::vector<char>>& adj)
{
  for (std::size_t v = 0; v < adj.size(); ++v)
    if (adj[v][v]) return std::nullopt;
  if (adj.empty()) return 0;
  Colorer c(adj);
  int lo = c.clique_bound(), hi = c.greedy_bound();
  for (int k = lo; k < hi; ++k)
    if (c.colorable(k)) return k;
  return hi;
}
} // namespace detail

/// Exact chromatic number; nullopt when a loop makes the graph uncolorable.
inline std::optional<int> chromatic_number(const QuotientGraph& h)
{
  std::vector<std::vector<char>> adj(h.classes, std::vector<char>(h.classes, 0));
  for (auto [a, b] : h.edges) adj[a][b] = adj[b][a] = 1;
  return detail::chromatic_number(adj);
}

inline std::optional<int> chromatic_number(const EventGraph& g)
{
  std::vector<std::vector<char>> adj(g.order(), std::vector<char>(g.order(), 0));
  for (auto [u, v] : g.edges()) adj[u - 1][v - 1] = adj[v - 1][u - 1] = 1;
  return detail::chromatic_number(adj);
}

/// Extreme labelings whose quotient graph is d-colorable.
inline std::vector<Labeling> d_restricted_extremes(const EventGraph& g, int d, int cap = default_vertex_cap)
{
  if (d < 1) throw ParamError("dimension must be >= 1");
  std::vector<Labeling> out;
  for (auto& a : enumerate_extreme_labelings(g, cap)) {
    auto chi = chromatic_number(quotient_graph(g, a));
    if (chi && *chi <= d) out.push_back(a);
  }
  return out;
}

inline std::uint64_t bell_number(int n)
{
  std::vector<std::uint64_t> row{1};
  for (int i = 0; i < n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (auto x : row) next.push_back(next.back() + x);
    row = next;
  }
  return row.front();
}

} // namespace evg
