#pragma once

#include "errors.hpp"
#include "graphs.hpp"
#include "linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <vector>

namespace evg {

using Word = std::vector<int>;                  // vertex labels, 1-based
using VertexAssignment = std::vector<CMat>;     // state of vertex v at index v-1
using BargmannTuple = std::map<Word, cplx>;     // keyed by canonical word

/// Minimal rotation; cyclic rotations of a word give the same invariant.
inline Word canonical_word(const Word& w)
{
  Word best = w;
  for (std::size_t s = 1; s < w.size(); ++s) {
    Word r(w.begin() + s, w.end());
    r.insert(r.end(), w.begin(), w.begin() + s);
    best = std::min(best, r);
  }
  return best;
}

inline Word reversed(const Word& w) { return {w.rbegin(), w.rend()}; }

inline VertexAssignment assignment_from_states(const std::vector<CVec>& psi)
{
  VertexAssignment rho;
  for (auto& v : psi) rho.push_back(outer(v));
  return rho;
}

inline int assignment_dim(const VertexAssignment& rho)
{
  if (rho.empty()) throw ParamError("empty assignment");
  int d = rho[0].rows();
  for (auto& m : rho)
    if (m.rows() != d || m.cols() != d) throw ParamError("states of different dimensions in one assignment");
  return d;
}

inline double clamp_unit(double x, double slack = 1e-12)
{
  if (x < 0 && x > -slack) return 0;
  if (x > 1 && x < 1 + slack) return 1;
  return x;
}

/// r_ij = Tr(rho_i rho_j) over the edge order of g.
inline std::vector<double> overlaps(const EventGraph& g, const VertexAssignment& rho)
{
  assignment_dim(rho);
  if (static_cast<int>(rho.size()) < g.order()) throw ParamError("assignment does not cover every vertex");
  std::vector<double> r;
  for (auto [u, v] : g.edges()) r.push_back(clamp_unit(std::real(trace_product(rho[u - 1], rho[v - 1]))));
  return r;
}

/// Tr(rho_{w1} rho_{w2} ... rho_{wk}).
inline cplx bargmann(const VertexAssignment& rho, const Word& w)
{
  if (w.empty()) throw ParamError("empty word");
  for (int x : w)
    if (x < 1 || x > static_cast<int>(rho.size())) throw ParamError("word label without an assigned state");
  if (w.size() == 1) return rho[w[0] - 1].trace();
  CMat p = rho[w[0] - 1];
  for (std::size_t k = 1; k + 1 < w.size(); ++k) p = p * rho[w[k] - 1];
  return trace_product(p, rho[w.back() - 1]);
}

inline BargmannTuple bargmann_tuple(const VertexAssignment& rho, const std::vector<Word>& words)
{
  BargmannTuple t;
  for (auto& w : words) t[canonical_word(w)] = bargmann(rho, w);
  return t;
}

// ------------------------------------------------------------ third order

/// 1 - 3|D|^{2/3} + 2 Re D; nonnegative on the set of third-order invariants.
inline double b3_boundary_defect(cplx delta)
{
  return 1.0 - 3.0 * std::cbrt(std::norm(delta)) + 2.0 * std::real(delta);
}

inline bool in_b3(cplx delta, double tol = 1e-12)
{
  return std::abs(delta) <= 1.0 + tol && b3_boundary_defect(delta) >= -tol;
}

/// n qubit states cos(t/2)|0> + sin(t/2) e^{2 pi i k/n}|1>, k = 0..n-1.
inline std::vector<CVec> obg_states(int n, double theta)
{
  if (n < 3) throw ParamError("OBG family needs n >= 3");
  std::vector<CVec> out;
  for (int k = 0; k < n; ++k)
    out.push_back({std::cos(theta / 2), std::sin(theta / 2) * std::polar(1.0, 2 * std::numbers::pi * k / n)});
  return out;
}

inline cplx obg_delta(int n, double theta)
{
  if (n < 3) throw ParamError("OBG family needs n >= 3");
  double s = std::sin(theta / 2);
  return std::pow(1.0 + s * s * (std::polar(1.0, 2 * std::numbers::pi / n) - 1.0), n);
}

inline cplx unit_phase(cplx z) { return std::abs(z) > 0 ? z / std::abs(z) : cplx(1); }

/// Candidate Gram matrix from three overlaps and the invariant D_123.
inline CMat candidate_H(double r12, double r13, double r23, cplx delta123)
{
  CMat h = CMat::identity(3);
  h(0, 1) = std::sqrt(r12);
  h(0, 2) = std::sqrt(r13);
  h(1, 2) = std::sqrt(r23) * unit_phase(delta123);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < i; ++j) h(i, j) = std::conj(h(j, i));
  return h;
}

struct TripletRealization {
  bool realizable = false;
  std::vector<CVec> states; // reconstructed pure states when realizable
};

inline TripletRealization pure_realizable_triplet(double r12, double r13, double r23, cplx delta123,
                                                  double tol = 1e-9)
{
  TripletRealization out;
  if (std::abs(std::abs(delta123) - std::sqrt(r12 * r13 * r23)) > tol) return out;
  CMat h = candidate_H(r12, r13, r23, delta123);
  if (!is_psd(h, tol)) return out;
  out.states = vectors_from_gram(h);
  auto rho = assignment_from_states(out.states);
  std::array<double, 3> want{r12, r13, r23}, got{std::real(bargmann(rho, {1, 2})), std::real(bargmann(rho, {1, 3})),
                                                 std::real(bargmann(rho, {2, 3}))};
  for (int k = 0; k < 3; ++k)
    if (std::abs(want[k] - got[k]) > 1e-8) return out;
  if (std::abs(bargmann(rho, {1, 2, 3}) - delta123) > 1e-8) return out;
  out.realizable = true;
  return out;
}

/// Overlap triples of pure states: 1 - r12 - r13 - r23 + 2 sqrt(r12 r13 r23) >= 0.
inline bool triplet_overlap_realizable(double r12, double r13, double r23, double tol = 1e-12)
{
  return 1.0 - r12 - r13 - r23 + 2.0 * std::sqrt(r12 * r13 * r23) >= -tol;
}

struct OverlapInterval {
  double lower, upper;
};

/// Range of r23 compatible with known r12 and r13.
inline OverlapInterval bound_unknown_overlap(double r12, double r13)
{
  double a = std::sqrt(r12 * r13), b = std::sqrt((1 - r12) * (1 - r13));
  double plus = (a + b) * (a + b), minus = (a - b) * (a - b);
  return {r12 + r13 > 1 ? minus : 0.0, std::min(1.0, plus)};
}

// --------------------------------------------------------------- imaginarity

/// Real-phase candidate for four states. Overlaps in K4 edge order (12,13,14,23,24,34);
/// phases sit on the (2,3), (2,4) and (3,4) entries.
inline CMat candidate_R(const std::array<double, 6>& r, double phi123, double phi124, double phi134)
{
  CMat m = CMat::identity(4);
  m(0, 1) = std::sqrt(r[0]);
  m(0, 2) = std::sqrt(r[1]);
  m(0, 3) = std::sqrt(r[2]);
  m(1, 2) = std::sqrt(r[3]) * std::polar(1.0, phi123);
  m(1, 3) = std::sqrt(r[4]) * std::polar(1.0, phi124);
  m(2, 3) = std::sqrt(r[5]) * std::polar(1.0, phi134);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < i; ++j) m(i, j) = std::conj(m(j, i));
  return m;
}

struct ImaginarityReport {
  bool witnessed = false;
  std::array<std::array<int, 3>, 8> patterns{}; // phases in units of pi
  std::array<double, 8> lambda_min{};
};

/// Pattern order: 000, 100, 010, 001, 110, 011, 101, 111.
inline ImaginarityReport imaginarity_from_overlaps(const std::array<double, 6>& r, double tol = 1e-9)
{
  for (double x : r)
    if (x <= 0) throw ParamError("imaginarity test needs all six overlaps nonzero");
  ImaginarityReport rep;
  rep.patterns = {{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}}};
  rep.witnessed = true;
  for (int k = 0; k < 8; ++k) {
    auto& p = rep.patterns[k];
    const double pi = std::numbers::pi;
    rep.lambda_min[k] = lambda_min(candidate_R(r, p[0] * pi, p[1] * pi, p[2] * pi));
    if (rep.lambda_min[k] >= -tol) rep.witnessed = false;
  }
  return rep;
}

/// (D_w - D_{w*}) / 2i = Im D_w.
inline double imaginary_part_witness(const VertexAssignment& rho, const Word& w)
{
  if (w.size() < 3 || canonical_word(w) == canonical_word(reversed(w)))
    throw ParamError("witness needs a word that differs from its reversal");
  return std::real((bargmann(rho, w) - bargmann(rho, reversed(w))) / cplx(0, 2));
}

/// |D_w - D_{pi(w)}| with pi a permutation of positions.
inline double equality_defect(const VertexAssignment& rho, const Word& w, const std::vector<int>& pi)
{
  if (pi.size() != w.size()) throw ParamError("permutation length differs from word length");
  Word pw(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) pw[k] = w[pi[k]];
  return std::abs(bargmann(rho, w) - bargmann(rho, pw));
}

// -------------------------------------------------------------- frame graphs

inline constexpr double frame_edge_tol = 1e-10;

inline std::vector<Edge> frame_graph_edges(const std::vector<CVec>& psi)
{
  std::vector<Edge> e;
  int n = static_cast<int>(psi.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(inner(psi[i], psi[j])) > frame_edge_tol) e.emplace_back(i + 1, j + 1);
  return e;
}

/// Gauge-fixed Gram matrix: tree entries |<psi_i|psi_j>|, other frame edges carry the
/// phase of the invariant around their fundamental cycle.
inline CMat frame_gram(const std::vector<CVec>& psi, const std::vector<Edge>& tree)
{
  const int n = static_cast<int>(psi.size());
  EventGraph frame(n, frame_graph_edges(psi), false);
  if (!frame.connected()) throw ParamError("frame graph is disconnected");
  EventGraph t(n, tree, false);
  if (static_cast<int>(tree.size()) != n - 1 || !t.connected()) throw ParamError("tree is not spanning");
  for (auto [u, v] : t.edges())
    if (!frame.adjacent(u, v)) throw ParamError("tree edge is not a frame-graph edge");

  auto rho = assignment_from_states(psi);
  // parent pointers of the tree rooted at 1
  std::vector<int> parent(n + 1, 0), depth(n + 1, -1), stack{1};
  depth[1] = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : t.neighbors(v))
      if (depth[u] < 0) {
        depth[u] = depth[v] + 1;
        parent[u] = v;
        stack.push_back(u);
      }
  }
  auto tree_path = [&](int from, int to) { // vertices from -> ... -> to
    std::vector<int> a{from}, b{to};
    while (a.back() != b.back()) {
      if (depth[a.back()] >= depth[b.back()]) a.push_back(parent[a.back()]);
      else b.push_back(parent[b.back()]);
    }
    b.pop_back();
    a.insert(a.end(), b.rbegin(), b.rend());
    return a;
  };

  CMat g = CMat::identity(n);
  for (auto [i, j] : frame.edges()) {
    double mag = std::abs(inner(psi[i - 1], psi[j - 1]));
    cplx val = mag;
    if (!t.adjacent(i, j)) {
      auto path = tree_path(j, i); // j, ..., i
      Word w{i};
      w.insert(w.end(), path.begin(), path.end() - 1);
      val = mag * unit_phase(bargmann(rho, w));
    }
    g(i - 1, j - 1) = val;
    g(j - 1, i - 1) = std::conj(val);
  }
  return g;
}

/// Projective-unitary equivalence of two tuples through their gauge-fixed Gram matrices.
inline bool pu_equivalent(const std::vector<CVec>& a, const std::vector<CVec>& b, const std::vector<Edge>& tree,
                          double tol = 1e-8)
{
  if (frame_graph_edges(a) != frame_graph_edges(b)) return false;
  return max_abs_diff(frame_gram(a, tree), frame_gram(b, tree)) <= tol;
}

// --------------------------------------------------- mixtures and products

struct MixtureConstruction {
  VertexAssignment rho;
  double weight_first, weight_second, weight_flags; // a, b, c with a + b + c = 1
  bool valid = false;                               // every block weight nonnegative
};

/// Direct sum a rho1 + b rho2 + c |i><i| with a = p^{1/m}, b = (1-p)^{1/m}, c = 1 - a - b.
/// Words of length m with two distinct labels then evaluate to p D1 + (1-p) D2.
inline MixtureConstruction direct_sum_mixture(const VertexAssignment& rho1, const VertexAssignment& rho2, double p,
                                              int m)
{
  if (rho1.size() != rho2.size()) throw ParamError("assignments label different vertex sets");
  if (m < 1 || p < 0 || p > 1) throw ParamError("mixture needs m >= 1 and p in [0,1]");
  assignment_dim(rho1);
  assignment_dim(rho2);
  MixtureConstruction out;
  out.weight_first = std::pow(p, 1.0 / m);
  out.weight_second = std::pow(1 - p, 1.0 / m);
  out.weight_flags = 1.0 - out.weight_first - out.weight_second;
  out.valid = out.weight_flags >= -1e-12;
  const int nv = static_cast<int>(rho1.size());
  for (int i = 0; i < nv; ++i) {
    CMat flag(nv);
    flag(i, i) = out.weight_flags;
    out.rho.push_back(direct_sum({rho1[i] * cplx(out.weight_first), rho2[i] * cplx(out.weight_second), flag}));
  }
  return out;
}

/// Tensor-product assignment; every invariant multiplies.
inline VertexAssignment tensor_assignment(const VertexAssignment& rho1, const VertexAssignment& rho2)
{
  if (rho1.size() != rho2.size()) throw ParamError("assignments label different vertex sets");
  VertexAssignment out;
  for (std::size_t i = 0; i < rho1.size(); ++i) out.push_back(kron(rho1[i], rho2[i]));
  return out;
}

} // namespace evg
