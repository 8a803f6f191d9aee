#include <evg/optimize.hpp>

#include <gtest/gtest.h>

#include <numbers>

using namespace evg;

namespace {

const double pi = std::numbers::pi;

SeesawConfig config(int d, std::uint64_t seed = 7)
{
  SeesawConfig c;
  c.d = d;
  c.seed = seed;
  return c;
}

// the optimum of A Tr X^2 + B X_00 + C is diag(x, (1-x)/(d-1), ...) by concavity and symmetry
double hn_scalar_optimum(int n, int d)
{
  const double A = -0.5 * (n - 1) * (n - 1), B = n - 1, C = 0.5 * (n - 1);
  const double k = d - 1;
  // f(x) = A (x^2 + (1-x)^2/k) + B x + C; f'(x) = 0
  double x = (B - 2 * A / k) / (-2 * A * (1 + 1 / k));
  x = std::clamp(x, 0.0, 1.0);
  return A * (x * x + (1 - x) * (1 - x) / k) + B * x + C;
}

} // namespace

TEST(Seesaw, TableValues)
{
  EXPECT_NEAR(seesaw_linear(cycle_graph(3), cycle_inequality(3), config(2)).best, 1.25, 1e-4);
  EXPECT_NEAR(seesaw_linear(complete_graph(4), star_inequality(4), config(3)).best, 4.0 / 3, 1e-4);
  EXPECT_NEAR(seesaw_linear(complete_graph(4), star_inequality(4), config(2)).best, 1.0, 1e-4);
  EXPECT_NEAR(seesaw_linear(complete_graph(5), k5_class(5), config(2)).best, 5 * std::sqrt(5.0) / 4, 1e-4);
}

TEST(Seesaw, ResultIsConsistent)
{
  auto g = complete_graph(5);
  auto q = star_inequality(5);
  auto res = seesaw_linear(g, q, config(4));
  EXPECT_TRUE(res.monotone);
  EXPECT_EQ(res.per_restart.size(), 20u);
  EXPECT_NEAR(evaluate(q, overlaps(g, res.states)), res.best, 1e-9);
  for (auto& rho : res.states) {
    EXPECT_TRUE(is_density(rho));
    EXPECT_NEAR(std::real(trace_product(rho, rho)), 1, 1e-9);
  }
}

TEST(Seesaw, Reproducible)
{
  auto a = seesaw_linear(wheel_graph(6), kcbs_inequality(), config(3, 42));
  auto b = seesaw_linear(wheel_graph(6), kcbs_inequality(), config(3, 42));
  auto cfg = config(3, 42);
  cfg.jobs = 3;
  auto c = seesaw_linear(wheel_graph(6), kcbs_inequality(), cfg);
  EXPECT_EQ(a.per_restart, b.per_restart);
  EXPECT_EQ(a.per_restart, c.per_restart);
}

TEST(Seesaw, RejectsBadConfig)
{
  EXPECT_THROW(seesaw_linear(cycle_graph(3), cycle_inequality(3), config(0)), ParamError);
  auto c = config(2);
  c.restarts = 0;
  EXPECT_THROW(seesaw_linear(cycle_graph(3), cycle_inequality(3), c), ParamError);
  EXPECT_THROW(seesaw_linear(cycle_graph(4), cycle_inequality(3), config(2)), ParamError);
}

TEST(Seesaw, NondecreasingInDimension)
{
  for (auto q : {star_inequality(5), star_inequality(5, 2), k5_class(4)}) {
    double prev = -1e9;
    for (int d = 2; d <= 5; ++d) {
      double v = seesaw_linear(graph_of(q), q, config(d)).best;
      EXPECT_GE(v, prev - 1e-6) << q.label << " d=" << d;
      prev = v;
    }
  }
}

TEST(CycleReference, ClosedFormMatchesStates)
{
  for (int n = 3; n <= 20; ++n) {
    auto ref = cn_reference(n);
    auto g = cycle_graph(n);
    double v = evaluate(cn_reference_inequality(n), overlaps(g, assignment_from_states(ref.states)));
    EXPECT_NEAR(v, ref.value, 1e-10) << n;
  }
  EXPECT_NEAR(cn_reference(3).value, 1.25, 1e-12);
  EXPECT_NEAR((200 - 2) / cn_reference(200).value, 1, 1e-2);
}

TEST(CycleReference, SeesawAgreesForSmallCycles)
{
  for (int n = 3; n <= 6; ++n)
    EXPECT_NEAR(seesaw_linear(cycle_graph(n), cycle_inequality(n), config(2)).best, cn_reference(n).value, 1e-4) << n;
}

TEST(FrankWolfe, MatchesScalarReduction)
{
  for (int n = 4; n <= 9; ++n)
    for (int d = 2; d <= n - 1; ++d) {
      auto r = fw_quadratic_hn(n, d);
      EXPECT_NEAR(r.value, hn_scalar_optimum(n, d), 1e-6) << n << " " << d;
      EXPECT_GE(r.upper, hn_scalar_optimum(n, d) - 1e-9);
      EXPECT_LT(r.gap, 1e-7);
    }
  EXPECT_NEAR(fw_quadratic_hn(4, 3).upper, 4.0 / 3, 1e-3);
  EXPECT_LE(fw_quadratic_hn(4, 2).upper, 1 + 1e-3);
  EXPECT_NEAR(fw_quadratic_hn(5, 4).upper, 1.375, 1e-3);
  EXPECT_THROW(fw_quadratic_hn(4, 4), ParamError);
}

TEST(FrankWolfe, UpperBoundsSeesaw)
{
  for (int n = 4; n <= 6; ++n)
    for (int d = 2; d <= n - 1; ++d)
      EXPECT_GE(fw_quadratic_hn(n, d).upper, seesaw_linear(complete_graph(n), star_inequality(n), config(d)).best - 1e-3);
}

TEST(Boundary, ThirdOrder)
{
  std::vector<double> dirs;
  for (int k = 0; k <= 90; ++k) dirs.push_back(pi * k / 90);
  auto cfg = config(2);
  cfg.restarts = 5;
  auto s = bn_boundary(3, dirs, cfg);
  double min_re = 1;
  for (auto& x : s) {
    EXPECT_LE(std::abs(x.delta), 1 + 1e-9);
    EXPECT_LE(std::abs(b3_boundary_defect(x.delta)), 1e-3);
    min_re = std::min(min_re, x.delta.real());
  }
  EXPECT_NEAR(min_re, -0.125, 1e-4);
  auto im = max_imag_at_zero_real(s);
  ASSERT_TRUE(im.has_value());
  EXPECT_NEAR(*im, std::pow(3.0, -1.5), 1e-3);
  EXPECT_THROW(bn_boundary(1, dirs, cfg), ParamError);
}

TEST(Scan, HnFirstViolationAtNMinusOne)
{
  auto cfg = config(2);
  auto rows = dimension_witness_scan("hn", {4, 5, 6}, {2, 3, 4, 5}, cfg);
  for (auto& r : rows) {
    if (r.d <= r.n - 2) EXPECT_LE(r.lower, 1 + 1e-6) << r.n << " " << r.d;
    if (r.d == r.n - 1) EXPECT_GT(r.lower, 1.3) << r.n;
    EXPECT_EQ(r.witness, r.d == r.n - 2) << r.n << " " << r.d;
    if (r.upper) EXPECT_GE(*r.upper, r.lower - 1e-3);
  }
}

TEST(Scan, CycleValuesIndependentOfDimension)
{
  auto rows = dimension_witness_scan("cn", {3, 4, 5}, {2, 3, 4}, config(2));
  for (auto& r : rows) {
    EXPECT_NEAR(r.lower, cn_reference(r.n).value, 1e-4);
    EXPECT_FALSE(r.witness);
  }
}

TEST(Qubits, H4NeverViolated)
{
  Rng rng(13);
  auto g = complete_graph(4);
  auto q = star_inequality(4);
  double worst = -10;
  for (int t = 0; t < 20000; ++t) {
    std::vector<CVec> psi;
    for (int k = 0; k < 4; ++k) psi.push_back(random_pure_state(2, rng));
    worst = std::max(worst, evaluate(q, overlaps(g, assignment_from_states(psi))));
  }
  EXPECT_LE(worst, 1 + 1e-9);
}
