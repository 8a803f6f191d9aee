#pragma once

#include "errors.hpp"
#include "families.hpp"
#include "invariants.hpp"
#include "linalg.hpp"
#include "polytope.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <thread>
#include <vector>

namespace evg {

inline std::uint64_t splitmix64(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t restart_seed(std::uint64_t master, int restart)
{
  return splitmix64(master + static_cast<std::uint64_t>(restart));
}

struct SeesawConfig {
  int d = 2;
  int restarts = 20;
  int sweeps = 40;
  double tol = 1e-10;
  std::uint64_t seed = 0;
  int jobs = 1;

  void validate() const
  {
    if (d < 1) throw ParamError("dimension must be >= 1");
    if (restarts < 1) throw ParamError("restarts must be >= 1");
    if (sweeps < 1) throw ParamError("sweeps must be >= 1");
    if (jobs < 1) throw ParamError("jobs must be >= 1");
  }
};

struct OptResult {
  double best = -std::numeric_limits<double>::infinity();
  VertexAssignment states;
  std::vector<double> per_restart;
  bool converged = false; // best restart met tol before the sweep budget
  bool monotone = true;   // no inner step decreased the objective
  int aborted = 0;        // restarts dropped because of NaN
};

namespace detail {

struct RestartOutcome {
  double value = -std::numeric_limits<double>::infinity();
  std::vector<CVec> psi;
  bool converged = false, monotone = true, nan = false;
};

/// Runs body(r) for r in [0, count) on up to `jobs` threads; results are indexed, so the order is fixed.
template <class F>
void parallel_for(int count, int jobs, F body)
{
  jobs = std::max(1, std::min(jobs, count));
  if (jobs == 1) {
    for (int r = 0; r < count; ++r) body(r);
    return;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t)
    pool.emplace_back([&, t] {
      for (int r = t; r < count; r += jobs) body(r);
    });
  for (auto& th : pool) th.join();
}

inline double linear_objective(const EventGraph& g, const std::vector<double>& gamma, const std::vector<CVec>& psi)
{
  double f = 0;
  for (int k = 0; k < g.size(); ++k) {
    auto [u, v] = g.edge(k);
    f += gamma[k] * std::norm(inner(psi[u - 1], psi[v - 1]));
  }
  return f;
}

inline RestartOutcome seesaw_restart(const EventGraph& g, const std::vector<double>& gamma, const SeesawConfig& cfg,
                                     std::uint64_t seed)
{
  RestartOutcome out;
  Rng rng(seed);
  const int n = g.order();
  for (int v = 0; v < n; ++v) out.psi.push_back(random_pure_state(cfg.d, rng));
  double f = linear_objective(g, gamma, out.psi);
  double scale = 1;
  for (double c : gamma) scale += std::abs(c);
  for (int s = 0; s < cfg.sweeps; ++s) {
    double start = f;
    for (int v = 1; v <= n; ++v) {
      CMat m(cfg.d);
      for (int u : g.neighbors(v)) m = m + outer(out.psi[u - 1]) * cplx(gamma[g.edge_index(std::min(u, v), std::max(u, v))]);
      out.psi[v - 1] = top_eigvec(hermitian_part(m)).second;
      double next = linear_objective(g, gamma, out.psi);
      if (std::isnan(next)) {
        out.nan = true;
        return out;
      }
      if (next < f - 1e-12 * scale) out.monotone = false;
      f = next;
    }
    if (f - start < cfg.tol) {
      out.converged = true;
      break;
    }
  }
  out.value = f;
  return out;
}

} // namespace detail

/// Lower bound on the maximum of the inequality's left-hand side over pure states in dimension d.
inline OptResult seesaw_linear(const EventGraph& g, const LinearInequality& q, const SeesawConfig& cfg)
{
  cfg.validate();
  if (static_cast<int>(q.coeffs.size()) != g.size()) throw ParamError("inequality length differs from edge count");
  std::vector<double> gamma(q.coeffs.begin(), q.coeffs.end());
  std::vector<detail::RestartOutcome> runs(cfg.restarts);
  detail::parallel_for(cfg.restarts, cfg.jobs,
                       [&](int r) { runs[r] = detail::seesaw_restart(g, gamma, cfg, restart_seed(cfg.seed, r)); });

  OptResult res;
  int best = -1;
  for (int r = 0; r < cfg.restarts; ++r) {
    res.per_restart.push_back(runs[r].value);
    res.monotone = res.monotone && runs[r].monotone;
    if (runs[r].nan) {
      ++res.aborted;
      continue;
    }
    if (best < 0 || runs[r].value > res.best) {
      best = r;
      res.best = runs[r].value;
    }
  }
  if (best < 0) throw NumericError("every seesaw restart produced NaN");
  res.converged = runs[best].converged;
  res.states = assignment_from_states(runs[best].psi);
  return res;
}

// -------------------------------------------------------------- reference family

struct CycleReference {
  std::vector<CVec> states;
  double value;
};

/// Real qubit states at angles pi/2 -+ (x-1) pi/(2n) (minus for odd n, plus for even n).
inline CycleReference cn_reference(int n)
{
  if (n < 3) throw ParamError("cn needs n >= 3");
  const double pi = std::numbers::pi;
  CycleReference out;
  for (int x = 1; x <= n; ++x) {
    double step = (x - 1) * pi / (2.0 * n);
    double t = n % 2 ? pi / 2 - step : pi / 2 + step;
    out.states.push_back({std::cos(t), std::sin(t)});
  }
  double a = std::cos(pi / (2.0 * n)), b = std::cos((1.0 - 1.0 / n) * pi / 2);
  out.value = (n - 1) * a * a - b * b;
  return out;
}

/// The cycle functional the reference states are tuned to: negative weight on {1, n}.
inline LinearInequality cn_reference_inequality(int n) { return cycle_inequality(n, n); }

// --------------------------------------------------------------- Frank-Wolfe

struct FwResult {
  double upper;      // value + gap, certified upper bound
  double value;      // objective at the final iterate
  double gap;        // Frank-Wolfe duality gap
  int iterations;
};

/// Maximizes A Tr(X^2) + B <0|X|0> + C over d x d density matrices with
/// A = -(n-1)^2/2, B = n-1, C = (n-1)/2 (away-step Frank-Wolfe, exact line search).
inline FwResult fw_quadratic_hn(int n, int d, int iters = 10000, double gap_tol = 1e-7)
{
  if (n < 3) throw ParamError("hn needs n >= 3");
  if (d < 2 || d > n - 1) throw ParamError("fw-hn needs 2 <= d <= n-1");
  const double A = -0.5 * (n - 1) * (n - 1), B = n - 1, C = 0.5 * (n - 1);
  CMat c0(d);
  c0(0, 0) = 1;

  std::vector<CVec> atoms;
  std::vector<double> w;
  for (int k = 0; k < d; ++k) {
    atoms.push_back(ket(d, k));
    w.push_back(1.0 / d);
  }
  auto iterate = [&] {
    CMat x(d);
    for (std::size_t k = 0; k < atoms.size(); ++k) x = x + outer(atoms[k]) * cplx(w[k]);
    return x;
  };
  auto objective = [&](const CMat& x) { return A * std::real(trace_product(x, x)) + B * std::real(x(0, 0)) + C; };
  auto pair = [](const CMat& g, const CVec& v) { return std::real(inner(v, g * v)); };

  FwResult res{0, 0, 0, 0};
  CMat x = iterate();
  for (int it = 0; it < iters; ++it) {
    res.iterations = it + 1;
    CMat grad = x * cplx(2 * A) + c0 * cplx(B);
    CVec s = top_eigvec(grad).second;
    double gx = std::real(trace_product(grad, x));
    double fw_gap = pair(grad, s) - gx;
    res.value = objective(x);
    res.gap = fw_gap;
    if (fw_gap < gap_tol) break;

    std::size_t away = 0;
    for (std::size_t k = 1; k < atoms.size(); ++k)
      if (pair(grad, atoms[k]) < pair(grad, atoms[away])) away = k;
    double away_gap = gx - pair(grad, atoms[away]);

    CMat dir;
    double gmax;
    bool toward = fw_gap >= away_gap;
    if (toward) {
      dir = outer(s) - x;
      gmax = 1;
    } else {
      dir = x - outer(atoms[away]);
      gmax = w[away] / (1 - w[away]);
    }
    double slope = std::real(trace_product(grad, dir)), curv = A * std::real(trace_product(dir, dir));
    double step = curv < 0 ? std::min(gmax, -slope / (2 * curv)) : gmax;

    if (toward) {
      for (auto& wk : w) wk *= 1 - step;
      std::size_t hit = atoms.size();
      for (std::size_t k = 0; k < atoms.size(); ++k)
        if (std::norm(inner(atoms[k], s)) > 1 - 1e-14) hit = k;
      if (hit == atoms.size()) {
        atoms.push_back(s);
        w.push_back(step);
      } else {
        w[hit] += step;
      }
    } else {
      for (auto& wk : w) wk *= 1 + step;
      w[away] -= step;
    }
    for (std::size_t k = atoms.size(); k-- > 0;)
      if (w[k] <= 1e-15) {
        atoms.erase(atoms.begin() + k);
        w.erase(w.begin() + k);
      }
    x = iterate();
  }
  res.value = objective(x);
  res.upper = res.value + std::max(0.0, res.gap);
  return res;
}

// ------------------------------------------------------------ B_n boundary

struct BoundarySample {
  double direction;
  cplx delta;
};

inline cplx cyclic_invariant(const std::vector<CVec>& psi)
{
  cplx prod = 1;
  const std::size_t n = psi.size();
  for (std::size_t k = 0; k < n; ++k) prod *= inner(psi[k], psi[(k + 1) % n]);
  return prod;
}

/// For each direction t, maximizes Re[e^{-it} Tr(rho_1 ... rho_n)] by seesaw over pure states.
inline std::vector<BoundarySample> bn_boundary(int n, const std::vector<double>& directions, const SeesawConfig& cfg)
{
  if (n < 2) throw ParamError("bn-boundary needs n >= 2");
  cfg.validate();
  if (cfg.d < 2) throw ParamError("bn-boundary needs d >= 2");
  std::vector<BoundarySample> out(directions.size());
  detail::parallel_for(static_cast<int>(directions.size()), cfg.jobs, [&](int k) {
    const cplx phase = std::polar(1.0, -directions[k]);
    double best = -std::numeric_limits<double>::infinity();
    cplx best_delta = 0;
    for (int r = 0; r < cfg.restarts; ++r) {
      Rng rng(restart_seed(cfg.seed + static_cast<std::uint64_t>(k) * 1000003ULL, r));
      std::vector<CVec> psi;
      for (int v = 0; v < n; ++v) psi.push_back(random_pure_state(cfg.d, rng));
      double f = std::real(phase * cyclic_invariant(psi));
      for (int s = 0; s < cfg.sweeps; ++s) {
        double start = f;
        for (int i = 0; i < n; ++i) {
          // Tr(rho_i P) with P = rho_{i+1} ... rho_{i-1}: rank one, |psi_{i+1}><psi_{i-1}| times the inner chain
          cplx chain = 1;
          for (int j = 1; j + 1 < n; ++j) chain *= inner(psi[(i + j) % n], psi[(i + j + 1) % n]);
          const CVec& a = psi[(i + 1) % n];
          const CVec& b = psi[(i + n - 1) % n];
          CMat p(cfg.d);
          for (int x = 0; x < cfg.d; ++x)
            for (int y = 0; y < cfg.d; ++y) p(x, y) = chain * a[x] * std::conj(b[y]);
          psi[i] = top_eigvec(hermitian_part(p * phase)).second;
        }
        f = std::real(phase * cyclic_invariant(psi));
        if (f - start < cfg.tol) break;
      }
      if (f > best) {
        best = f;
        best_delta = cyclic_invariant(psi);
      }
    }
    out[k] = {directions[k], best_delta};
  });
  return out;
}

/// Largest Im among boundary samples at Re = 0, interpolated between neighbours straddling the axis.
inline std::optional<double> max_imag_at_zero_real(const std::vector<BoundarySample>& samples)
{
  std::optional<double> best;
  for (std::size_t k = 0; k + 1 < samples.size(); ++k) {
    cplx a = samples[k].delta, b = samples[k + 1].delta;
    if ((a.real() <= 0) == (b.real() <= 0)) continue;
    double t = a.real() / (a.real() - b.real());
    double im = a.imag() + t * (b.imag() - a.imag());
    if (!best || im > *best) best = im;
  }
  return best;
}

// ------------------------------------------------------------------ scans

struct ScanRow {
  std::string family;
  int n, d;
  double bound;
  double lower;
  std::optional<double> upper;
  bool witness = false; // no violation at d, violation at d + 1
};

inline std::vector<ScanRow> dimension_witness_scan(const std::string& family, const std::vector<int>& ns,
                                                   const std::vector<int>& ds, SeesawConfig cfg)
{
  std::vector<ScanRow> rows;
  for (int n : ns) {
    LinearInequality q = family == "kcbs_w6" || family == "kappa_k7" ? inequality_family(family)
                         : family.rfind("hnm", 0) == 0                 ? inequality_family("hnm", n, 2)
                                                                       : inequality_family(family, n);
    EventGraph g = graph_of(q);
    double bound = static_cast<double>(q.bound);
    std::vector<ScanRow> block;
    for (int d : ds) {
      cfg.d = d;
      ScanRow row{family, n, d, bound, seesaw_linear(g, q, cfg).best, std::nullopt, false};
      if (family == "hn" && d >= 2 && d <= n - 1) row.upper = fw_quadratic_hn(n, d).upper;
      block.push_back(row);
    }
    for (std::size_t k = 0; k + 1 < block.size(); ++k)
      block[k].witness = block[k + 1].d == block[k].d + 1 && block[k].lower <= bound + 1e-6 &&
                         block[k + 1].lower > bound + 1e-6;
    rows.insert(rows.end(), block.begin(), block.end());
  }
  return rows;
}

} // namespace evg
