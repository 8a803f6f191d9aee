#include <evg/witnesses.hpp>

#include <gtest/gtest.h>

#include <numbers>

using namespace evg;

namespace {
const double pi = std::numbers::pi;
}

TEST(Interrogation, Curve)
{
  auto h = interrogation_point(0.5);
  EXPECT_NEAR(h.eta_q, 1.0 / 3, 1e-15);
  EXPECT_NEAR(h.eta_nc, 1.0 / 3, 1e-15);
  auto one = interrogation_point(1);
  EXPECT_NEAR(one.eta_q, 0.5, 1e-15);
  EXPECT_NEAR(one.eta_nc, 0.5, 1e-15);
  EXPECT_NEAR(interrogation_gap(0), -1, 1e-15);
  EXPECT_NEAR(interrogation_gap(0.5), 0, 1e-15);
  EXPECT_THROW(interrogation_point(1.5), ParamError);
  for (int k = 0; k <= 100; ++k) {
    double r = k / 100.0;
    auto p = interrogation_point(r);
    EXPECT_NEAR(p.gap(), interrogation_gap(r), 1e-14);
    EXPECT_LE(p.eta_nc, 1);
    if (r > 0.5 && r < 1) EXPECT_GT(p.gap(), 0);
    if (r < 0.5) EXPECT_LT(p.gap(), 0);
  }
}

TEST(Interrogation, GapMaximum)
{
  auto c = interrogation_gap_max();
  EXPECT_NEAR(c.r_star, std::sqrt(3.0) - 1, 1e-15);
  EXPECT_NEAR(c.gap, interrogation_gap(c.r_star), 1e-12);
  auto n = interrogation_gap_max_numeric();
  EXPECT_NEAR(n.r_star, c.r_star, 1e-6);
  EXPECT_NEAR(n.gap, c.gap, 1e-10);
  EXPECT_NEAR(c.gap, 0.0718, 1e-4);
}

TEST(Depolarize, TracePreservingAndPurity)
{
  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    CMat rho = random_density(2, rng);
    double nu = t / 19.0;
    CMat out = depolarize(rho, nu);
    EXPECT_NEAR(std::abs(out.trace() - 1.0), 0, 1e-14);
    CMat p = outer(random_pure_state(2, rng));
    CMat dp = depolarize(p, nu);
    EXPECT_NEAR(std::real(trace_product(dp, dp)), 1 + nu * nu / 2 - nu, 1e-14);
  }
  EXPECT_THROW(depolarize(CMat::identity(2), -0.1), ParamError);
}

TEST(Interrogation, NoisyReducesToIdeal)
{
  Rng rng(2);
  std::uniform_real_distribution<double> u(0, pi);
  for (int t = 0; t < 100; ++t) {
    double th = u(rng);
    auto e = noisy_interrogation(th, 0);
    auto p = interrogation_point(std::cos(th) * std::cos(th));
    EXPECT_NEAR(e.eta_q, p.eta_q, 1e-12);
    EXPECT_NEAR(e.eta_nc, p.eta_nc, 1e-12);
  }
  EXPECT_NEAR(noisy_interrogation(5 * pi / 6, 0).eta_q, 0.428, 1e-3);
}

TEST(Interrogation, Thresholds)
{
  EXPECT_FALSE(noise_threshold(pi / 4).advantage);
  EXPECT_EQ(noise_threshold(pi / 4).nu, 0);
  auto t = noise_threshold(5 * pi / 6);
  EXPECT_TRUE(t.advantage);
  EXPECT_NEAR(t.nu, 0.057, 2e-3);
  // the crossing really is a sign change
  EXPECT_GT(noisy_interrogation(5 * pi / 6, t.nu - 1e-4).gap(), 0);
  EXPECT_LT(noisy_interrogation(5 * pi / 6, t.nu + 1e-4).gap(), 0);
  auto scan = noise_threshold_scan(200);
  EXPECT_NEAR(scan.best_nu, 0.057, 2e-3);
}

TEST(RobustCycle, Bounds)
{
  EXPECT_NEAR(robust_cycle_bound(3, {0, 0, 0}).bound, 1, 1e-15);
  EXPECT_NEAR(robust_cycle_bound(3, {0.01, 0.01, 0.01}).bound, 1.03, 1e-12);
  EXPECT_NEAR(robust_cycle_bound(5, std::vector<double>(5, 0.02)).bound, 3.10, 1e-12);
  EXPECT_THROW(robust_cycle_bound(3, {0.1, -0.1, 0}), ParamError);
  EXPECT_THROW(robust_cycle_bound(3, {0.1}), ParamError);
}

TEST(Correlator, Examples)
{
  auto chsh = to_correlator(cycle_inequality(4, 4));
  // C4 edge order 12,14,23,34
  EXPECT_EQ(chsh.coeffs, (std::vector<long long>{1, -1, 1, 1}));
  EXPECT_EQ(chsh.bound, 2);
  auto c3 = to_correlator(cycle_inequality(3));
  EXPECT_EQ(c3.bound, 1);
  EXPECT_EQ(to_correlator(star_inequality(4)).bound, 2);
}

TEST(Correlator, RoundTripAndValidity)
{
  std::vector<LinearInequality> qs{cycle_inequality(3), cycle_inequality(4), cycle_inequality(5), star_inequality(4),
                                   star_inequality(5), kcbs_inequality()};
  for (int i = 1; i <= 9; ++i) qs.push_back(k5_class(i));
  for (auto& q : qs) {
    auto c = to_correlator(q);
    EXPECT_TRUE(from_correlator(c).same_data(q)) << q.label;
    EXPECT_TRUE(correlator_valid(c, graph_of(q))) << q.label;
  }
  // a too-small bound is caught
  auto bad = to_correlator(cycle_inequality(4));
  bad.bound -= 1;
  EXPECT_FALSE(correlator_valid(bad, cycle_graph(4)));
}
