#pragma once

#include "errors.hpp"
#include "families.hpp"
#include "graphs.hpp"
#include "linalg.hpp"
#include "polytope.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

namespace evg {

// ---------------------------------------------------------- interrogation

struct InterrogationPoint {
  double r, eta_q, eta_nc;
  double gap() const { return eta_q - eta_nc; }
};

inline InterrogationPoint interrogation_point(double r)
{
  if (r < 0 || r > 1) throw ParamError("overlap must lie in [0,1]");
  double s = 2 * r - 1;
  return {r, r / (1 + r), (1 + s * s) / (2 * (r + 1))};
}

inline std::vector<InterrogationPoint> interrogation_curve(const std::vector<double>& grid)
{
  std::vector<InterrogationPoint> out;
  for (double r : grid) out.push_back(interrogation_point(r));
  return out;
}

/// eta - eta_nc = (-2r^2 + 3r - 1) / (r + 1)
inline double interrogation_gap(double r) { return (-2 * r * r + 3 * r - 1) / (r + 1); }

struct GapMaximum {
  double r_star, gap;
};

inline GapMaximum interrogation_gap_max() { return {std::sqrt(3.0) - 1, 7 - 4 * std::sqrt(3.0)}; }

inline GapMaximum interrogation_gap_max_numeric(double tol = 1e-12)
{
  const double phi = (std::sqrt(5.0) - 1) / 2;
  double a = 0.5, b = 1;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = interrogation_gap(x1), f2 = interrogation_gap(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = interrogation_gap(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = interrogation_gap(x1);
    }
  }
  double r = (a + b) / 2;
  return {r, interrogation_gap(r)};
}

/// (1 - nu) X + nu Tr(X) 1/d
inline CMat depolarize(const CMat& x, double nu)
{
  if (nu < 0 || nu > 1) throw ParamError("noise strength must lie in [0,1]");
  CMat id = CMat::identity(x.rows());
  return x * cplx(1 - nu) + id * (x.trace() * nu / static_cast<double>(x.rows()));
}

struct NoisyEfficiency {
  double eta_q, eta_nc, eps;
  double gap() const { return eta_q - eta_nc; }
};

/// Bomb test with |theta> = cos t|0> + i sin t|1> and its conjugate, all states depolarized by nu.
inline NoisyEfficiency noisy_interrogation(double theta, double nu)
{
  if (theta < 0 || theta > std::numbers::pi) throw ParamError("theta must lie in [0, pi]");
  const cplx i(0, 1);
  CMat p0 = depolarize(outer(ket(2, 0)), nu);
  CMat pt = depolarize(outer({std::cos(theta), i * std::sin(theta)}), nu);
  CMat pc = depolarize(outer({std::cos(theta), -i * std::sin(theta)}), nu);
  double r = std::real(trace_product(p0, pt));
  double eps = 1 - std::real(trace_product(p0, p0));
  double tt = std::real(trace_product(pt, pc));
  return {r / (r + 1), (1 + 3 * eps + tt) / (2 * (r + 1)), eps};
}

struct NoiseThreshold {
  bool advantage = false; // quantum efficiency beats the bound at nu = 0
  double nu = 0;
};

inline NoiseThreshold noise_threshold(double theta, double tol = 1e-6)
{
  NoiseThreshold out;
  if (noisy_interrogation(theta, 0).gap() <= 1e-12) return out;
  double lo = 0, hi = 1;
  if (noisy_interrogation(theta, hi).gap() > 0) {
    out.advantage = true;
    out.nu = 1;
    return out;
  }
  while (hi - lo > tol) {
    double mid = (lo + hi) / 2;
    (noisy_interrogation(theta, mid).gap() > 0 ? lo : hi) = mid;
  }
  out.advantage = true;
  out.nu = (lo + hi) / 2;
  return out;
}

struct ThresholdScan {
  std::vector<double> theta, nu;
  double best_theta = 0, best_nu = 0;
};

inline ThresholdScan noise_threshold_scan(int points = 400, double tol = 1e-6)
{
  if (points < 1) throw ParamError("grid needs at least one point");
  ThresholdScan s;
  for (int k = 0; k < points; ++k) {
    double t = std::numbers::pi * (k + 1) / (points + 1);
    double nu = noise_threshold(t, tol).nu;
    s.theta.push_back(t);
    s.nu.push_back(nu);
    if (nu > s.best_nu) {
      s.best_nu = nu;
      s.best_theta = t;
    }
  }
  return s;
}

// ----------------------------------------------------- robust cycle bounds

struct RobustCycle {
  LinearInequality functional;
  double bound;
};

inline RobustCycle robust_cycle_bound(int n, const std::vector<double>& eps)
{
  if (static_cast<int>(eps.size()) != n) throw ParamError("need one noise parameter per cycle edge");
  double b = n - 2;
  for (double e : eps) {
    if (e < 0) throw ParamError("noise parameters must be nonnegative");
    b += e;
  }
  RobustCycle out{cycle_inequality(n), b};
  out.functional.bound = Rational(b);
  return out;
}

// ---------------------------------------------------- correlator form

struct CorrelatorInequality {
  std::vector<long long> coeffs; // on <x_u x_v>, edge order of the graph
  Rational bound;
  std::string graph, label;
};

inline Rational coefficient_sum(const std::vector<long long>& c)
{
  Rational s = 0;
  for (auto x : c) s += x;
  return s;
}

/// Substitutes r = (<xy> + 1)/2: sum c <xy> <= 2b - sum c.
inline CorrelatorInequality to_correlator(const LinearInequality& q)
{
  return {q.coeffs, 2 * q.bound - coefficient_sum(q.coeffs), q.graph, q.label};
}

inline LinearInequality from_correlator(const CorrelatorInequality& c)
{
  LinearInequality q;
  q.coeffs = c.coeffs;
  q.bound = (c.bound + coefficient_sum(c.coeffs)) / 2;
  q.graph = c.graph;
  q.label = c.label;
  return q;
}

/// Checks the correlator inequality on every +-1 assignment of the vertices.
inline bool correlator_valid(const CorrelatorInequality& c, const EventGraph& g)
{
  const int n = g.order();
  if (n > 20) throw SizeError("too many vertices for brute force");
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    Rational lhs = 0;
    for (int k = 0; k < g.size(); ++k) {
      auto [u, v] = g.edge(k);
      bool same = ((mask >> (u - 1)) & 1) == ((mask >> (v - 1)) & 1);
      lhs += same ? c.coeffs[k] : -c.coeffs[k];
    }
    if (lhs > c.bound) return false;
  }
  return true;
}

} // namespace evg
