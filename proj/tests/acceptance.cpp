// One PASS/FAIL line per acceptance criterion, with wall-clock limits.
#include <evg/evg.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>

using namespace evg;

namespace {

const double pi = std::numbers::pi;

struct Outcome {
  bool ok = true;
  std::ostringstream note;

  void check(bool cond, const std::string& what)
  {
    if (!cond) {
      ok = false;
      note << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(int id, double limit_s, const std::function<void(Outcome&)>& body)
{
  Outcome out;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.ok = false;
    out.note << " [exception: " << e.what() << "]";
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > limit_s) {
    out.ok = false;
    out.note << " [over time limit " << limit_s << " s]";
  }
  if (!out.ok) ++failures;
  std::printf("%s %d (%.2f s)%s\n", out.ok ? "PASS" : "FAIL", id, secs, out.note.str().c_str());
  std::fflush(stdout);
}

SeesawConfig config(int d, std::uint64_t seed = 1)
{
  SeesawConfig c;
  c.d = d;
  c.seed = seed;
  c.restarts = 20;
  c.sweeps = 40;
  return c;
}

std::vector<std::vector<int>> edge_perms(const EventGraph& g)
{
  std::vector<std::vector<int>> out;
  for (auto& p : automorphisms(g)) out.push_back(edge_permutation(g, p));
  return out;
}

using Key = std::pair<std::vector<long long>, Rational>;

// nontrivial orbit keys; also checks that trivial facets are exactly 0 <= r_e or r_e <= 1
std::set<Key> nontrivial_classes(const EventGraph& g, Outcome& out)
{
  auto h = facets(vrep_event_polytope(g));
  for (auto& q : h.inequalities)
    if (q.trivial()) {
      long long c = 0;
      for (auto x : q.coeffs) c += x;
      out.check((c == -1 && q.bound == 0) || (c == 1 && q.bound == 1), "trivial facet shape");
    }
  std::set<Key> keys;
  for (auto& c : classify_facets(h, g))
    if (!c.trivial) keys.insert({c.representative.coeffs, c.representative.bound});
  return keys;
}

std::vector<long long> pad(const EventGraph& small, const EventGraph& big, const std::vector<long long>& c)
{
  std::vector<long long> out(big.size(), 0);
  for (std::size_t k = 0; k < small.size(); ++k) out[big.edge_index(small.edge(k).first, small.edge(k).second)] = c[k];
  return out;
}

} // namespace

int main()
{
  criterion(1, 30, [](Outcome& o) {
    const std::uint64_t want[] = {2, 5, 15, 52, 203, 877, 4140};
    for (int n = 2; n <= 8; ++n) {
      auto c = enumerate_extreme_labelings(complete_graph(n)).size();
      o.note << " K" << n << "=" << c;
      o.check(c == want[n - 2], "Bell count n=" + std::to_string(n));
    }
  });

  criterion(2, 300, [](Outcome& o) {
    for (int n = 3; n <= 5; ++n) {
      auto g = cycle_graph(n);
      auto got = nontrivial_classes(g, o);
      std::set<Key> want{{canonical_coeffs(cycle_inequality(n).coeffs, edge_perms(g)), n - 2}};
      o.check(got == want, "C" + std::to_string(n) + " classes");
    }
    {
      auto g = complete_graph(4);
      auto perms = edge_perms(g);
      std::set<Key> want{{canonical_coeffs(pad(cycle_graph(3), g, cycle_inequality(3).coeffs), perms), 1},
                         {canonical_coeffs(star_inequality(4).coeffs, perms), 1}};
      o.check(nontrivial_classes(g, o) == want, "K4 classes");
      auto h = facets(vrep_event_polytope(g));
      std::size_t h4 = 0;
      for (auto& c : classify_facets(h, g))
        if (c.representative.coeffs == canonical_coeffs(star_inequality(4).coeffs, perms)) h4 = c.members.size();
      o.check(h4 == 4, "h4 class size");
    }
    auto g = complete_graph(5);
    auto perms = edge_perms(g);
    std::set<Key> want;
    for (int i = 1; i <= 9; ++i) want.insert({canonical_coeffs(k5_class(i).coeffs, perms), k5_class(i).bound});
    auto got = nontrivial_classes(g, o);
    o.note << " K5 classes=" << got.size();
    o.check(got == want, "K5 classes match the nine listed representatives");
  });

  criterion(3, 10, [](Outcome& o) {
    for (auto h : {complete_graph(3), cycle_graph(4), cycle_graph(5)}) o.check(verify_stab_isomorphism(h), "STAB iso");
    // h_KCBS on the exclusivity section: only the spoke terms survive
    auto q = kcbs_inequality();
    auto w6 = wheel_graph(6);
    auto section = exclusivity_section(cycle_graph(5));
    Rational best = 0;
    for (auto& y : section.vertices) {
      RationalVector r(w6.size(), 0);
      for (int v = 1; v <= 5; ++v) r[w6.edge_index(v, 6)] = y[v - 1];
      best = std::max(best, evaluate(q, r));
    }
    o.note << " max on section=" << to_string(best) << " alpha(C5)=" << independence_number(cycle_graph(5));
    o.check(best == 2 && independence_number(cycle_graph(5)) == 2 && q.bound == 2, "KCBS section bound");
  });

  criterion(4, 300, [](Outcome& o) {
    struct Row {
      LinearInequality q;
      int d;
      double want, tol;
    };
    std::vector<Row> rows{{cycle_inequality(3), 2, 1.25, 1e-3},
                          {star_inequality(4), 2, 1.0, 1e-3},
                          {star_inequality(4), 3, 4.0 / 3, 1e-3},
                          {star_inequality(5), 4, 1.375, 1e-3},
                          {k5_class(5), 2, 5 * std::sqrt(5.0) / 4, 1e-4},
                          {kcbs_inequality(), 2, 3.25, 1e-3}};
    for (auto& r : rows) {
      double v = seesaw_linear(graph_of(r.q), r.q, config(r.d)).best;
      o.note << " " << r.q.label << "(d=" << r.d << ")=" << v;
      o.check(std::abs(v - r.want) <= r.tol, r.q.label + " d=" + std::to_string(r.d));
    }
  });

  criterion(5, 600, [](Outcome& o) {
    for (int n = 4; n <= 8; ++n) {
      auto g = complete_graph(n);
      auto q = star_inequality(n);
      double lo_below = seesaw_linear(g, q, config(n - 2)).best, lo_at = seesaw_linear(g, q, config(n - 1)).best;
      double up_below = fw_quadratic_hn(n, n - 2).upper, up_at = fw_quadratic_hn(n, n - 1).upper;
      o.note << " h" << n << ":" << lo_below << "/" << up_below << "," << lo_at << "/" << up_at;
      o.check(lo_below <= 1 + 1e-3 && up_below <= 1 + 1e-3, "no violation at d=n-2, n=" + std::to_string(n));
      o.check(lo_at >= 1.33 && up_at >= 1.33, "violation at d=n-1, n=" + std::to_string(n));
    }
    Rng rng(2024);
    auto g = complete_graph(4);
    auto q = star_inequality(4);
    double worst = -10;
    for (int t = 0; t < 100000; ++t) {
      std::vector<CVec> psi;
      for (int k = 0; k < 4; ++k) psi.push_back(random_pure_state(2, rng));
      worst = std::max(worst, evaluate(q, overlaps(g, assignment_from_states(psi))));
    }
    o.note << " qubit h4 max=" << worst;
    o.check(worst <= 1 + 1e-9, "random qubit h4");
  });

  criterion(6, 300, [](Outcome& o) {
    double worst = 0;
    for (int n = 3; n <= 20; ++n) {
      auto ref = cn_reference(n);
      double v = evaluate(cn_reference_inequality(n), overlaps(cycle_graph(n), assignment_from_states(ref.states)));
      worst = std::max(worst, std::abs(v - ref.value));
    }
    o.note << " closed-form err=" << worst;
    o.check(worst <= 1e-10, "closed form");
    double sworst = 0;
    for (int n = 3; n <= 8; ++n)
      sworst = std::max(sworst, std::abs(seesaw_linear(cycle_graph(n), cycle_inequality(n), config(2)).best -
                                         cn_reference(n).value));
    o.note << " seesaw err=" << sworst;
    o.check(sworst <= 1e-4, "seesaw d=2");
  });

  criterion(7, 300, [](Outcome& o) {
    double worst = 0;
    for (int k = 0; k < 100; ++k) {
      double th = 2 * pi * k / 99;
      auto psi = obg_states(3, th);
      worst = std::max(worst, std::abs(b3_boundary_defect(bargmann(assignment_from_states(psi), {1, 2, 3}))));
    }
    o.note << " OBG defect=" << worst;
    o.check(worst <= 1e-10, "OBG boundary");
    std::vector<double> dirs;
    for (int k = 0; k <= 180; ++k) dirs.push_back(pi * k / 180);
    auto s = bn_boundary(3, dirs, config(2));
    double min_re = 1;
    for (auto& x : s) min_re = std::min(min_re, x.delta.real());
    auto im = max_imag_at_zero_real(s);
    o.note << " minRe=" << min_re << " maxIm(Re=0)=" << (im ? *im : -1);
    o.check(std::abs(min_re + 0.125) <= 1e-4, "min Re");
    o.check(im && std::abs(*im - 0.19245) <= 1e-3, "max Im at Re=0");
  });

  criterion(8, 120, [](Outcome& o) {
    Rng rng(8);
    int bad = 0;
    for (int t = 0; t < 10000; ++t) {
      std::vector<CVec> psi{random_pure_state(2, rng), random_pure_state(2, rng), random_pure_state(2, rng)};
      auto rho = assignment_from_states(psi);
      double r12 = std::real(bargmann(rho, {1, 2})), r13 = std::real(bargmann(rho, {1, 3})),
             r23 = std::real(bargmann(rho, {2, 3}));
      cplx d = bargmann(rho, {1, 2, 3});
      auto res = pure_realizable_triplet(r12, r13, r23, d);
      if (!res.realizable) {
        ++bad;
        continue;
      }
      auto back = assignment_from_states(res.states);
      double err = std::abs(bargmann(back, {1, 2, 3}) - d);
      err = std::max(err, std::abs(std::real(bargmann(back, {1, 2})) - r12));
      err = std::max(err, std::abs(std::real(bargmann(back, {1, 3})) - r13));
      err = std::max(err, std::abs(std::real(bargmann(back, {2, 3})) - r23));
      if (err > 1e-8) ++bad;
    }
    o.note << " round-trip failures=" << bad;
    o.check(bad == 0, "round trip");
    o.check(!pure_realizable_triplet(0, 0.25, 0.25, 1).realizable, "(0,1/4,1/4,1) rejected");
    double q = std::sqrt(6.0);
    auto rep = imaginarity_from_overlaps({0.5, 0.5, 0.75, 0.5, (4 + q) / 8, (4 - q) / 8});
    const double want[] = {-0.044984, -0.512315, -0.709002, -0.561292, -0.837603, -0.704281, -0.491359, -1.174717};
    double err = 0;
    for (int k = 0; k < 8; ++k) err = std::max(err, std::abs(rep.lambda_min[k] - want[k]));
    o.note << " lambda_min err=" << err;
    o.check(rep.witnessed && err <= 1e-4, "imaginarity eigenvalues");
  });

  criterion(9, 30, [](Outcome& o) {
    auto c = interrogation_gap_max();
    auto n = interrogation_gap_max_numeric();
    o.check(std::abs(c.r_star - (std::sqrt(3.0) - 1)) <= 1e-10 && std::abs(c.gap - (7 - 4 * std::sqrt(3.0))) <= 1e-10,
            "closed form");
    o.check(std::abs(n.r_star - c.r_star) <= 1e-6 && std::abs(n.gap - c.gap) <= 1e-6, "numeric search");
    double eta = noisy_interrogation(5 * pi / 6, 0).eta_q;
    auto scan = noise_threshold_scan(400);
    o.note << " r*=" << n.r_star << " gap=" << n.gap << " eta(5pi/6,0)=" << eta << " max nu*=" << scan.best_nu;
    o.check(std::abs(eta - 0.428) <= 1e-3, "eta(5pi/6,0)");
    o.check(std::abs(scan.best_nu - 0.057) <= 0.002, "noise threshold");
  });

  criterion(10, 300, [](Outcome& o) {
    Rng rng(10);
    // Bargmann symmetries
    double sym = 0;
    for (int t = 0; t < 200; ++t) {
      VertexAssignment rho;
      for (int k = 0; k < 4; ++k) rho.push_back(random_density(2 + t % 3, rng));
      Word w{1, 2, 4, 3, 2};
      cplx v = bargmann(rho, w);
      Word r{2, 4, 3, 2, 1};
      sym = std::max({sym, std::abs(bargmann(rho, r) - v), std::abs(bargmann(rho, reversed(w)) - std::conj(v))});
    }
    o.note << " symmetry err=" << sym;
    o.check(sym <= 1e-12, "Bargmann symmetries");
    // seesaw monotone in every sweep
    bool mono = true;
    for (auto q : {cycle_inequality(5), star_inequality(5), k5_class(7), kcbs_inequality(), k33_class(2)})
      mono = mono && seesaw_linear(graph_of(q), q, config(3)).monotone;
    o.check(mono, "seesaw monotone");
    // convexity: direct-sum construction; Hadamard closure: tensor products
    double mix_err = 0, had_err = 0;
    bool mix_valid = true;
    for (double p : {0.25, 0.5, 0.75}) {
      VertexAssignment a, b;
      for (int k = 0; k < 3; ++k) {
        a.push_back(outer(random_pure_state(2, rng)));
        b.push_back(outer(random_pure_state(2, rng)));
      }
      auto mix = direct_sum_mixture(a, b, p, 3);
      mix_valid = mix_valid && mix.valid;
      for (Word w : {Word{1, 2, 3}, Word{1, 3, 2}, Word{1, 1, 2}})
        mix_err = std::max(mix_err, std::abs(bargmann(mix.rho, w) - (p * bargmann(a, w) + (1 - p) * bargmann(b, w))));
      auto ab = tensor_assignment(a, b);
      for (Word w : {Word{1, 2}, Word{1, 2, 3}, Word{1, 3, 2, 3}})
        had_err = std::max(had_err, std::abs(bargmann(ab, w) - bargmann(a, w) * bargmann(b, w)));
    }
    o.note << " mixture err=" << mix_err << " mixture states valid=" << (mix_valid ? "yes" : "no")
           << " hadamard err=" << had_err;
    o.check(mix_err <= 1e-9, "mixture values");
    o.check(mix_valid, "mixture construction yields density matrices");
    o.check(had_err <= 1e-9, "Hadamard closure");
    // incoherent assignments are members
    bool member = true;
    std::uniform_real_distribution<double> u(0.01, 1);
    for (auto g : {cycle_graph(3), complete_graph(4), wheel_graph(6)}) {
      auto h = facets(vrep_event_polytope(g));
      for (int t = 0; t < 50; ++t) {
        VertexAssignment rho;
        for (int k = 0; k < g.order(); ++k) {
          CMat d(3);
          double x = u(rng), y = u(rng), z = u(rng), s = x + y + z;
          d(0, 0) = x / s, d(1, 1) = y / s, d(2, 2) = z / s;
          rho.push_back(d);
        }
        member = member && membership(exact_from_doubles(overlaps(g, rho)), g, &h);
      }
    }
    o.check(member, "incoherent membership");
    // cross-section of c(C_n) at r_{1n} = 1 against c(C_{n-1})
    bool iso = true;
    for (int n = 4; n <= 7; ++n) {
      auto g = cycle_graph(n), s = cycle_graph(n - 1);
      int fixed = g.edge_index(1, n);
      std::set<RationalVector> img;
      auto cs = cross_section(g, {fixed}, 1);
      for (auto& x : cs.vertices) {
        RationalVector y(s.size());
        for (std::size_t k = 0; k < g.size(); ++k) {
          if (static_cast<int>(k) == fixed) continue;
          auto [a, b] = g.edge(k);
          if (b == n) b = 1;
          y[s.edge_index(std::min(a, b), std::max(a, b))] = x[k];
        }
        img.insert(y);
      }
      auto target = vrep_event_polytope(s).vertices;
      iso = iso && img.size() == cs.vertices.size() && img == std::set<RationalVector>(target.begin(), target.end());
    }
    o.check(iso, "cycle cross-section");
  });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
