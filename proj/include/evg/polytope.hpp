#pragma once

#include "errors.hpp"
#include "graphs.hpp"
#include "rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace evg {

struct LinearInequality {
  std::vector<long long> coeffs; // over the edge order of `graph`
  Rational bound;
  std::string label;
  std::string graph; // graph code, informational

  // scale to integer data with gcd 1; the direction of the inequality is kept
  void normalize()
  {
    Integer den = denominator(bound);
    std::vector<Integer> c;
    for (auto x : coeffs) c.push_back(Integer(x) * den);
    Integer g = numerator(bound) * 1;
    if (g < 0) g = -g;
    for (auto& x : c) g = gcd(g, x);
    if (g == 0) return;
    for (std::size_t k = 0; k < c.size(); ++k) coeffs[k] = static_cast<long long>(c[k] / g);
    bound = Rational(numerator(bound) * 1, 1) / Rational(g);
  }

  bool trivial() const
  {
    return std::count_if(coeffs.begin(), coeffs.end(), [](long long c) { return c != 0; }) <= 1;
  }

  bool same_data(const LinearInequality& o) const { return coeffs == o.coeffs && bound == o.bound; }
};

struct VRep {
  std::vector<RationalVector> vertices;
  int ambient_dim = 0;
};

struct HRep {
  std::vector<LinearInequality> inequalities;
};

inline Rational evaluate(const LinearInequality& q, const RationalVector& r)
{
  if (r.size() != q.coeffs.size()) throw ParamError("dimension mismatch in evaluate");
  Rational s = 0;
  for (std::size_t k = 0; k < r.size(); ++k)
    if (q.coeffs[k]) s += q.coeffs[k] * r[k];
  return s;
}

inline double evaluate(const LinearInequality& q, const std::vector<double>& r)
{
  if (r.size() != q.coeffs.size()) throw ParamError("dimension mismatch in evaluate");
  double s = 0;
  for (std::size_t k = 0; k < r.size(); ++k) s += static_cast<double>(q.coeffs[k]) * r[k];
  return s;
}

inline RationalVector to_rational(const Labeling& a)
{
  RationalVector v;
  for (auto b : a) v.emplace_back(static_cast<int>(b));
  return v;
}

inline VRep vrep_event_polytope(const EventGraph& g, int cap = default_vertex_cap)
{
  VRep v;
  v.ambient_dim = static_cast<int>(g.size());
  for (auto& a : enumerate_extreme_labelings(g, cap)) v.vertices.push_back(to_rational(a));
  return v;
}

// ------------------------------------------------------ double description

namespace detail {

class Bits {
public:
  explicit Bits(std::size_t n = 0) : w_((n + 63) / 64, 0) {}
  void set(std::size_t i) { w_[i / 64] |= std::uint64_t(1) << (i % 64); }
  bool test(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1; }
  Bits operator&(const Bits& o) const
  {
    Bits r = *this;
    for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] &= o.w_[k];
    return r;
  }
  bool subset_of(const Bits& o) const
  {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k] & ~o.w_[k]) return false;
    return true;
  }
  int count() const
  {
    int c = 0;
    for (auto x : w_) c += __builtin_popcountll(x);
    return c;
  }

private:
  std::vector<std::uint64_t> w_;
};

using IntVec = std::vector<Integer>;

inline void make_primitive(IntVec& v)
{
  Integer g = 0;
  for (auto& x : v) g = gcd(g, x);
  if (g > 1)
    for (auto& x : v) x /= g;
}

inline Integer dot(const IntVec& a, const IntVec& b)
{
  Integer s = 0;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] != 0 && b[k] != 0) s += a[k] * b[k];
  return s;
}

} // namespace detail

/// Extreme rays of the pointed cone {x : A x >= 0}; A must have full column rank.
/// Rows are inserted in the given order; adjacency is decided combinatorially.
inline std::vector<std::vector<Integer>> extreme_rays(const std::vector<std::vector<Integer>>& A)
{
  using detail::Bits;
  using detail::IntVec;
  if (A.empty()) throw NumericError("double description: no constraints");
  const std::size_t m = A.size(), D = A[0].size();

  // greedy choice of D independent rows
  std::vector<std::size_t> basis;
  std::vector<RationalVector> echelon;
  for (std::size_t i = 0; i < m && basis.size() < D; ++i) {
    RationalVector row(A[i].begin(), A[i].end());
    auto trial = echelon;
    trial.push_back(row);
    if (rank(trial) == static_cast<int>(trial.size())) {
      echelon = trial;
      basis.push_back(i);
    }
  }
  if (basis.size() < D) throw NumericError("double description: cone is not pointed (rank deficient)");

  // initial rays are the columns of the inverse of the basis block
  std::vector<RationalVector> aug(D, RationalVector(2 * D));
  for (std::size_t i = 0; i < D; ++i) {
    for (std::size_t j = 0; j < D; ++j) aug[i][j] = Rational(A[basis[i]][j]);
    aug[i][D + i] = 1;
  }
  for (std::size_t c = 0; c < D; ++c) {
    std::size_t p = c;
    while (aug[p][c] == 0) ++p;
    std::swap(aug[p], aug[c]);
    Rational piv = aug[c][c];
    for (auto& x : aug[c]) x /= piv;
    for (std::size_t i = 0; i < D; ++i) {
      if (i == c || aug[i][c] == 0) continue;
      Rational f = aug[i][c];
      for (std::size_t k = 0; k < 2 * D; ++k) aug[i][k] -= f * aug[c][k];
    }
  }
  struct Ray {
    IntVec x;
    Bits zero;
  };
  std::vector<Ray> rays;
  for (std::size_t j = 0; j < D; ++j) {
    Integer l = 1;
    for (std::size_t i = 0; i < D; ++i) l = boost::multiprecision::lcm(l, denominator(aug[i][D + j]));
    IntVec x(D);
    for (std::size_t i = 0; i < D; ++i) x[i] = numerator(Rational(aug[i][D + j] * l));
    detail::make_primitive(x);
    Bits z(m);
    for (std::size_t i = 0; i < D; ++i)
      if (i != j) z.set(basis[i]);
    rays.push_back({x, z});
  }

  std::vector<char> in_basis(m, 0);
  for (auto b : basis) in_basis[b] = 1;
  for (std::size_t k = 0; k < m; ++k) {
    if (in_basis[k]) continue;
    std::vector<Integer> s(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      s[r] = detail::dot(A[k], rays[r].x);
      if (s[r] > 0) pos.push_back(r);
      else if (s[r] < 0) neg.push_back(r);
      else rays[r].zero.set(k);
    }
    if (neg.empty()) continue;
    std::vector<Ray> next;
    for (std::size_t r = 0; r < rays.size(); ++r)
      if (s[r] >= 0) next.push_back(rays[r]);
    for (auto p : pos)
      for (auto q : neg) {
        Bits z = rays[p].zero & rays[q].zero;
        if (z.count() < static_cast<int>(D) - 2) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r)
          if (r != p && r != q && z.subset_of(rays[r].zero)) adjacent = false;
        if (!adjacent) continue;
        IntVec x(D);
        for (std::size_t i = 0; i < D; ++i) x[i] = s[p] * rays[q].x[i] - s[q] * rays[p].x[i];
        detail::make_primitive(x);
        z.set(k);
        next.push_back({x, z});
      }
    rays = std::move(next);
  }
  std::vector<std::vector<Integer>> out;
  for (auto& r : rays) out.push_back(r.x);
  return out;
}

namespace detail {
// integer row proportional to (c0, c1, ...) with rational entries
inline IntVec integer_row(const RationalVector& v)
{
  Integer l = 1;
  for (auto& x : v) l = boost::multiprecision::lcm(l, denominator(x));
  IntVec out;
  for (auto& x : v) out.push_back(numerator(Rational(x * l)));
  return out;
}
} // namespace detail

/// Exact minimal H-representation of a full-dimensional polytope given by its vertices.
inline HRep facets(const VRep& v)
{
  if (v.vertices.empty()) throw ParamError("facets: empty vertex set");
  const int dim = v.ambient_dim;
  std::vector<RationalVector> lifted;
  for (auto& x : v.vertices) {
    RationalVector row{Rational(1)};
    for (auto& c : x) row.push_back(c);
    lifted.push_back(row);
  }
  if (rank(lifted) != dim + 1) throw ParamError("facets: polytope is not full-dimensional");

  auto sorted = v.vertices;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::vector<Integer>> A;
  for (auto& x : sorted) {
    RationalVector row{Rational(1)};
    for (auto& c : x) row.push_back(-c);
    A.push_back(detail::integer_row(row));
  }
  HRep h;
  for (auto& ray : extreme_rays(A)) {
    // ray = (b, a) encodes a.r <= b
    LinearInequality q;
    q.bound = Rational(ray[0]);
    for (int k = 0; k < dim; ++k) q.coeffs.push_back(static_cast<long long>(ray[k + 1]));
    q.normalize();
    h.inequalities.push_back(q);
  }
  std::sort(h.inequalities.begin(), h.inequalities.end(), [](auto& a, auto& b) {
    return std::tie(a.coeffs, a.bound) < std::tie(b.coeffs, b.bound);
  });
  return h;
}

/// Vertices of a bounded H-polytope (used for round-trip checks).
inline VRep vertices_from_hrep(const HRep& h, int dim)
{
  std::vector<std::vector<Integer>> A;
  for (auto& q : h.inequalities) {
    RationalVector row{q.bound};
    for (auto c : q.coeffs) row.push_back(Rational(-c));
    A.push_back(detail::integer_row(row));
  }
  std::vector<Integer> t(dim + 1, 0);
  t[0] = 1;
  A.push_back(t);
  VRep v;
  v.ambient_dim = dim;
  for (auto& ray : extreme_rays(A)) {
    if (ray[0] == 0) throw NumericError("H-representation is unbounded");
    RationalVector x;
    for (int k = 0; k < dim; ++k) x.push_back(Rational(ray[k + 1]) / Rational(ray[0]));
    v.vertices.push_back(x);
  }
  std::sort(v.vertices.begin(), v.vertices.end());
  return v;
}

struct InvalidInequality : ParamError {
  RationalVector witness;
  InvalidInequality(const std::string& msg, RationalVector w) : ParamError(msg), witness(std::move(w)) {}
};

/// Facet test: saturating vertices must span an affine space of dimension dim-1.
inline bool is_facet(const LinearInequality& q, const VRep& v)
{
  std::vector<RationalVector> tight;
  for (auto& x : v.vertices) {
    Rational val = evaluate(q, x);
    if (val > q.bound) throw InvalidInequality("inequality is violated by a vertex", x);
    if (val == q.bound) {
      RationalVector row{Rational(1)};
      row.insert(row.end(), x.begin(), x.end());
      tight.push_back(row);
    }
  }
  return rank(tight) == v.ambient_dim;
}

// ------------------------------------------------------------ symmetries

/// All vertex permutations preserving the edge set (brute force, |V| <= 8).
inline std::vector<std::vector<int>> automorphisms(const EventGraph& g, int cap = 8)
{
  if (g.order() > cap) throw SizeError("automorphism search is limited to " + std::to_string(cap) + " vertices");
  std::vector<int> p(g.order());
  std::iota(p.begin(), p.end(), 1);
  std::vector<std::vector<int>> out;
  do {
    bool ok = true;
    for (auto [u, v] : g.edges())
      if (!g.adjacent(p[u - 1], p[v - 1])) {
        ok = false;
        break;
      }
    if (ok) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// edge k goes to position perm_e[k]
inline std::vector<int> edge_permutation(const EventGraph& g, const std::vector<int>& vperm)
{
  std::vector<int> pe(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) pe[k] = g.edge_index(vperm[g.edge(k).first - 1], vperm[g.edge(k).second - 1]);
  return pe;
}

inline std::vector<long long> permute_coeffs(const std::vector<long long>& c, const std::vector<int>& pe)
{
  std::vector<long long> out(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) out[pe[k]] = c[k];
  return out;
}

/// Lexicographically smallest image of the coefficient vector under the edge action.
inline std::vector<long long> canonical_coeffs(const std::vector<long long>& c,
                                               const std::vector<std::vector<int>>& edge_perms)
{
  std::vector<long long> best = c;
  for (auto& pe : edge_perms) best = std::min(best, permute_coeffs(c, pe));
  return best;
}

struct FacetClass {
  LinearInequality representative; // canonical member
  std::vector<std::size_t> members; // indices into the H-representation
  bool trivial = false;
};

inline std::vector<FacetClass> classify_facets(const HRep& h, const EventGraph& g)
{
  std::vector<std::vector<int>> eperms;
  for (auto& p : automorphisms(g)) eperms.push_back(edge_permutation(g, p));
  std::map<std::pair<std::vector<long long>, Rational>, FacetClass> classes;
  for (std::size_t i = 0; i < h.inequalities.size(); ++i) {
    auto& q = h.inequalities[i];
    auto key = std::make_pair(canonical_coeffs(q.coeffs, eperms), q.bound);
    auto& c = classes[key];
    if (c.members.empty()) {
      c.representative = q;
      c.representative.coeffs = key.first;
      c.trivial = q.trivial();
    }
    c.members.push_back(i);
  }
  std::vector<FacetClass> out;
  for (auto& [k, c] : classes) out.push_back(c);
  // nontrivial classes sorted by bound then coefficients, trivial ones last
  std::stable_sort(out.begin(), out.end(), [](auto& a, auto& b) {
    if (a.trivial != b.trivial) return !a.trivial;
    if (a.representative.bound != b.representative.bound) return a.representative.bound < b.representative.bound;
    return a.members.size() < b.members.size();
  });
  return out;
}

// ----------------------------------------------------------- cross-sections

/// Vertices with every fixed coordinate equal to `value`; this is a face of c(G).
inline VRep cross_section(const EventGraph& g, const std::vector<int>& fixed_edges, int value,
                          int cap = default_vertex_cap)
{
  VRep all = vrep_event_polytope(g, cap), out;
  out.ambient_dim = all.ambient_dim;
  for (auto& x : all.vertices) {
    bool keep = true;
    for (int e : fixed_edges) {
      if (e < 0 || e >= static_cast<int>(g.size())) throw ParamError("cross_section: edge index out of range");
      if (x[e] != value) keep = false;
    }
    if (keep) out.vertices.push_back(x);
  }
  return out;
}

/// Characteristic vectors of all stable sets (including the empty set).
inline VRep stab_polytope(const EventGraph& h)
{
  VRep out;
  out.ambient_dim = h.order();
  std::vector<int> chosen(h.order(), 0);
  std::function<void(int)> rec = [&](int v) {
    if (v == h.order()) {
      RationalVector x;
      for (int c : chosen) x.emplace_back(c);
      out.vertices.push_back(x);
      return;
    }
    rec(v + 1);
    bool free = true;
    for (int u = 0; u < v; ++u)
      if (chosen[u] && h.adjacent(u + 1, v + 1)) free = false;
    if (free) {
      chosen[v] = 1;
      rec(v + 1);
      chosen[v] = 0;
    }
  };
  rec(0);
  std::sort(out.vertices.begin(), out.vertices.end());
  return out;
}

inline int independence_number(const EventGraph& h)
{
  int best = 0;
  for (auto& x : stab_polytope(h).vertices) {
    int s = 0;
    for (auto& c : x) s += c != 0;
    best = std::max(best, s);
  }
  return best;
}

/// Zero cross-section of the suspension over E(H), read on the handle edges.
inline VRep exclusivity_section(const EventGraph& h)
{
  EventGraph s = suspension(h);
  std::vector<int> fixed;
  for (auto [u, v] : h.edges()) fixed.push_back(s.edge_index(u, v));
  VRep cs = cross_section(s, fixed, 0);
  VRep out;
  out.ambient_dim = h.order();
  int handle = s.order();
  for (auto& x : cs.vertices) {
    RationalVector y;
    for (int v = 1; v < handle; ++v) y.push_back(x[s.edge_index(v, handle)]);
    out.vertices.push_back(y);
  }
  std::sort(out.vertices.begin(), out.vertices.end());
  return out;
}

inline bool verify_stab_isomorphism(const EventGraph& h)
{
  return exclusivity_section(h).vertices == stab_polytope(h).vertices;
}

// --------------------------------------------------------------- membership

/// Exact phase-one simplex (Bland's rule): is r a convex combination of the points?
inline bool in_convex_hull(const RationalVector& r, const std::vector<RationalVector>& points)
{
  const std::size_t N = points.size(), m = r.size() + 1;
  if (N == 0) return false;
  // rows: coordinates, then sum(lambda) = 1; all right-hand sides are made nonnegative
  std::vector<RationalVector> T(m, RationalVector(N + m + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < N; ++j) T[i][j] = i + 1 < m ? points[j][i] : Rational(1);
    T[i][N + m] = i + 1 < m ? r[i] : Rational(1);
    if (T[i][N + m] < 0) {
      for (std::size_t j = 0; j < N; ++j) T[i][j] = -T[i][j];
      T[i][N + m] = -T[i][N + m];
    }
    T[i][N + i] = 1;
  }
  std::vector<std::size_t> basis(m);
  std::iota(basis.begin(), basis.end(), N);
  RationalVector z(N + m + 1);
  for (std::size_t j = 0; j < N; ++j)
    for (std::size_t i = 0; i < m; ++i) z[j] -= T[i][j];
  for (std::size_t i = 0; i < m; ++i) z[N + m] -= T[i][N + m];

  while (true) {
    std::size_t enter = N;
    for (std::size_t j = 0; j < N; ++j)
      if (z[j] < 0) {
        enter = j;
        break;
      }
    if (enter == N) break;
    std::optional<std::size_t> leave;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (T[i][enter] <= 0) continue;
      Rational ratio = T[i][N + m] / T[i][enter];
      if (!leave || ratio < best || (ratio == best && basis[i] < basis[*leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (!leave) break; // unbounded direction cannot occur in phase one
    std::size_t l = *leave;
    Rational piv = T[l][enter];
    for (auto& x : T[l]) x /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == l || T[i][enter] == 0) continue;
      Rational f = T[i][enter];
      for (std::size_t k = 0; k < N + m + 1; ++k) T[i][k] -= f * T[l][k];
    }
    if (z[enter] != 0) {
      Rational f = z[enter];
      for (std::size_t k = 0; k < N + m + 1; ++k) z[k] -= f * T[l][k];
    }
    basis[l] = enter;
  }
  return z[N + m] == 0;
}

/// r in c(G)? Uses the H-representation when one is supplied, otherwise an exact LP.
inline bool membership(const RationalVector& r, const EventGraph& g, const HRep* cached = nullptr,
                       int cap = default_vertex_cap)
{
  if (r.size() != g.size()) throw ParamError("membership: dimension mismatch");
  if (cached) {
    for (auto& q : cached->inequalities)
      if (evaluate(q, r) > q.bound) return false;
    return true;
  }
  return in_convex_hull(r, vrep_event_polytope(g, cap).vertices);
}

inline RationalVector exact_from_doubles(const std::vector<double>& x)
{
  RationalVector out;
  for (double d : x) out.emplace_back(d);
  return out;
}

} // namespace evg
