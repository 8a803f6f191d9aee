#pragma once

#include "errors.hpp"
#include "graphs.hpp"
#include "polytope.hpp"

#include <string>
#include <tuple>
#include <vector>

namespace evg {

using Term = std::tuple<int, int, long long>; // (u, v, coefficient)

inline LinearInequality inequality_from_terms(const EventGraph& g, const std::string& code,
                                              const std::vector<Term>& terms, Rational bound, std::string label)
{
  LinearInequality q;
  q.coeffs.assign(g.size(), 0);
  for (auto [u, v, c] : terms) {
    int k = g.edge_index(u, v);
    if (k < 0) throw ParamError("term on a non-edge of " + code);
    q.coeffs[k] += c;
  }
  q.bound = bound;
  q.label = std::move(label);
  q.graph = code;
  return q;
}

/// Cycle inequality on C_n with a single negative coefficient on edge `neg`:
/// neg = k < n means edge {k, k+1}; neg = n means the closing edge {1, n}.
inline LinearInequality cycle_inequality(int n, int neg = 1)
{
  if (n < 3) throw ParamError("cn needs n >= 3");
  if (neg < 1 || neg > n) throw ParamError("cn: negated edge must be in 1..n");
  EventGraph g = cycle_graph(n);
  std::vector<Term> t;
  for (int k = 1; k <= n; ++k) {
    int u = k < n ? k : 1, v = k < n ? k + 1 : n;
    t.emplace_back(u, v, k == neg ? -1 : 1);
  }
  return inequality_from_terms(g, "C" + std::to_string(n), t, n - 2, "c" + std::to_string(n));
}

/// m * (edges at vertex 1) - (all other edges) <= m(m+1)/2 on K_n; m = 1 gives h_n.
inline LinearInequality star_inequality(int n, int m = 1)
{
  if (n < 3) throw ParamError("hn needs n >= 3");
  if (m < 1 || m > n - 2) throw ParamError("hnm needs 1 <= m <= n-2");
  EventGraph g = complete_graph(n);
  std::vector<Term> t;
  for (auto [u, v] : g.edges()) t.emplace_back(u, v, u == 1 ? m : -1);
  std::string label = m == 1 ? "h" + std::to_string(n) : "h" + std::to_string(n) + "^(" + std::to_string(m) + ")";
  return inequality_from_terms(g, "K" + std::to_string(n), t, Rational(m * (m + 1), 2), label);
}

/// KCBS form on the wheel W6 (hub 6): spokes minus rim <= 2.
inline LinearInequality kcbs_inequality()
{
  EventGraph g = wheel_graph(6);
  std::vector<Term> t{{1, 2, -1}, {2, 3, -1}, {3, 4, -1}, {4, 5, -1}, {1, 5, -1},
                      {1, 6, 1},  {2, 6, 1},  {3, 6, 1},  {4, 6, 1},  {5, 6, 1}};
  return inequality_from_terms(g, "W6", t, 2, "kcbs");
}

inline LinearInequality kappa_inequality()
{
  EventGraph g = complete_graph(7);
  std::vector<Term> t{{1, 2, -2}, {1, 4, 1},  {1, 6, 1},  {2, 3, -2}, {2, 7, 2}, {3, 4, 2}, {3, 5, -2},
                      {3, 6, -2}, {3, 7, 2},  {4, 5, 1},  {4, 6, 1},  {4, 7, 1}, {5, 7, 1}};
  return inequality_from_terms(g, "K7", t, 6, "kappa");
}

/// Representatives of the nine nontrivial facet classes of c(K5).
inline LinearInequality k5_class(int i)
{
  EventGraph g = complete_graph(5);
  std::vector<Term> t;
  int b = 0;
  std::string label;
  switch (i) {
  case 1: t = {{1, 2, -1}, {1, 5, 1}, {2, 5, 1}}; b = 1; label = "c3"; break;
  case 2: t = {{1, 5, 1}, {2, 5, 1}, {3, 5, 1}, {1, 2, -1}, {1, 3, -1}, {2, 3, -1}}; b = 1; label = "h4"; break;
  case 3:
    t = {{1, 2, 1}, {1, 3, 1}, {1, 4, 1}, {1, 5, 1}, {2, 3, -1}, {2, 4, -1}, {2, 5, -1}, {3, 4, -1}, {3, 5, -1}, {4, 5, -1}};
    b = 1; label = "h5"; break;
  case 4:
    t = {{1, 2, 1}, {1, 4, 1}, {1, 5, 1}, {2, 3, 1}, {3, 4, 1}, {3, 5, 1}, {1, 3, -1}, {2, 4, -1}, {2, 5, -1}, {4, 5, -1}};
    b = 2; label = "I(K5,4)"; break;
  case 5:
    t = {{1, 2, 1}, {1, 5, 1}, {2, 3, 1}, {3, 4, 1}, {4, 5, 1}, {1, 3, -1}, {1, 4, -1}, {2, 4, -1}, {2, 5, -1}, {3, 5, -1}};
    b = 2; label = "I(K5,5)"; break;
  case 6:
    t = {{1, 2, 2}, {2, 3, 2}, {2, 4, 2}, {2, 5, 2}, {1, 3, -1}, {1, 4, -1}, {1, 5, -1}, {3, 4, -1}, {3, 5, -1}, {4, 5, -1}};
    b = 3; label = "h5^(2)"; break;
  case 7:
    t = {{1, 3, 1}, {1, 4, 1}, {2, 4, 2}, {3, 4, 1}, {4, 5, 2}, {1, 2, -2}, {2, 5, -2}, {3, 5, -2}};
    b = 3; label = "I(K5,6)"; break;
  case 8:
    t = {{1, 2, 2}, {1, 4, 2}, {1, 5, 2}, {2, 3, 1}, {3, 5, 1}, {1, 3, -2}, {2, 4, -2}, {2, 5, -1}, {4, 5, -2}};
    b = 3; label = "I(K5,7)"; break;
  case 9:
    t = {{1, 3, 2}, {1, 4, 2}, {2, 3, 2}, {2, 4, 2}, {3, 5, 3}, {4, 5, 3}, {1, 2, -2}, {1, 5, -4}, {2, 5, -4}, {3, 4, -1}};
    b = 5; label = "I(K5,8)"; break;
  default: throw ParamError("k5_class index must be in 1..9");
  }
  return inequality_from_terms(g, "K5", t, b, label);
}

/// The two novel classes of c(K_{3,3}); parts {1,2,3} and {4,5,6}.
inline LinearInequality k33_class(int i)
{
  EventGraph g = complete_bipartite(3, 3);
  if (i == 1)
    return inequality_from_terms(g, "K3,3",
                                 {{1, 4, 1}, {1, 5, 1}, {1, 6, 1}, {2, 4, 1}, {2, 6, -1}, {3, 4, -1}, {3, 5, 1}, {3, 6, -1}},
                                 3, "K33,1");
  if (i == 2)
    return inequality_from_terms(g, "K3,3",
                                 {{1, 4, 3}, {1, 5, 2}, {1, 6, 1}, {2, 4, 2}, {2, 5, -2}, {2, 6, -2}, {3, 4, 1}, {3, 5, -2}, {3, 6, 1}},
                                 6, "K33,2");
  throw ParamError("k33_class index must be 1 or 2");
}

/// Family lookup by tag: cn, hn, hnm, kcbs_w6, kappa_k7, k5_class, k33_class.
inline LinearInequality inequality_family(const std::string& name, int n = 0, int m = 0)
{
  if (name == "cn") return cycle_inequality(n, m == 0 ? 1 : m);
  if (name == "hn") return star_inequality(n, 1);
  if (name == "hnm") return star_inequality(n, m);
  if (name == "kcbs_w6") return kcbs_inequality();
  if (name == "kappa_k7") return kappa_inequality();
  if (name == "k5_class") return k5_class(n);
  if (name == "k33_class") return k33_class(n);
  throw ParamError("unknown inequality family: " + name);
}

/// Parses "hn:4", "hnm:5:2", "cn:4:4", "k5_class:5", "kcbs_w6".
inline LinearInequality inequality_from_spec(const std::string& spec)
{
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    auto c = spec.find(':', start);
    parts.push_back(spec.substr(start, c - start));
    if (c == std::string::npos) break;
    start = c + 1;
  }
  int n = 0, m = 0;
  try {
    if (parts.size() > 1) n = std::stoi(parts[1]);
    if (parts.size() > 2) m = std::stoi(parts[2]);
  } catch (const std::exception&) {
    throw ParamError("bad inequality spec: " + spec);
  }
  if (parts.size() > 3) throw ParamError("bad inequality spec: " + spec);
  return inequality_family(parts[0], n, m);
}

inline EventGraph graph_of(const LinearInequality& q) { return graph_from_code(q.graph); }

} // namespace evg
