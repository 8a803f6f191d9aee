#include <evg/linalg.hpp>

#include <gtest/gtest.h>

#include <numbers>

using namespace evg;

namespace {

double residual(const CMat& m, const EigenSystem& es)
{
  double worst = 0;
  for (int c = 0; c < m.rows(); ++c) {
    CVec v = column(es.vectors, c);
    CVec mv = m * v;
    for (int i = 0; i < m.rows(); ++i) worst = std::max(worst, std::abs(mv[i] - es.values[c] * v[i]));
  }
  return worst;
}

CMat random_hermitian(int d, Rng& rng)
{
  std::normal_distribution<double> g;
  CMat m(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = cplx(g(rng), g(rng));
  return hermitian_part(m);
}

} // namespace

TEST(Eigen, PauliY)
{
  CMat y{{0, cplx(0, -1)}, {cplx(0, 1), 0}};
  auto es = hermitian_eig(y);
  EXPECT_NEAR(es.values[0], -1, 1e-14);
  EXPECT_NEAR(es.values[1], 1, 1e-14);
}

TEST(Eigen, RandomMatricesDecompose)
{
  Rng rng(1);
  for (int d : {1, 2, 3, 5, 8, 16}) {
    CMat m = random_hermitian(d, rng);
    auto es = hermitian_eig(m);
    EXPECT_LT(residual(m, es), 1e-10);
    EXPECT_TRUE(std::is_sorted(es.values.begin(), es.values.end()));
    // eigenvectors orthonormal
    CMat g = es.vectors.adjoint() * es.vectors;
    EXPECT_LT(max_abs_diff(g, CMat::identity(d)), 1e-10);
    double tr = 0;
    for (double x : es.values) tr += x;
    EXPECT_NEAR(tr, std::real(m.trace()), 1e-10);
  }
}

TEST(Eigen, DegenerateSpectrum)
{
  CMat m = CMat::identity(4) * cplx(2);
  m(0, 0) = 5;
  auto es = hermitian_eig(m);
  EXPECT_NEAR(es.values[0], 2, 1e-14);
  EXPECT_NEAR(es.values[3], 5, 1e-14);
  EXPECT_LT(residual(m, es), 1e-12);
}

TEST(Eigen, RejectsNonHermitian)
{
  CMat m{{0, 1}, {0, 0}};
  EXPECT_THROW(hermitian_eig(m), ParamError);
}

TEST(Psd, SylvesterAgreesWithEigenvalues)
{
  Rng rng(2);
  for (int t = 0; t < 200; ++t) {
    int d = 2 + t % 3;
    CMat m = random_hermitian(d, rng) + CMat::identity(d) * cplx(1.5);
    double lm = lambda_min(m);
    if (std::abs(lm) < 1e-6) continue;
    EXPECT_EQ(sylvester_psd(m), lm > 0);
    EXPECT_EQ(is_psd(m), lm > 0);
  }
}

TEST(Psd, Examples)
{
  CMat ones{{1, 1}, {1, 1}};
  EXPECT_TRUE(is_psd(ones));
  CMat bad{{1, 1, 1}, {1, 1, 0}, {1, 0, 1}};
  EXPECT_NEAR(std::real(determinant(bad)), -1, 1e-12);
  EXPECT_FALSE(is_psd(bad));
}

TEST(Cholesky, ReconstructsRandomGrams)
{
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    int d = 2 + t % 3, n = 3 + t % 4;
    std::vector<CVec> psi;
    for (int k = 0; k < n; ++k) psi.push_back(random_pure_state(d, rng));
    CMat g = gram(psi);
    auto f = cholesky_psd(g);
    EXPECT_LE(f.rank, d);
    auto phi = vectors_from_gram(g);
    EXPECT_LT(max_abs_diff(gram(phi), g), 1e-10);
  }
}

TEST(Cholesky, RejectsIndefinite)
{
  CMat bad{{1, 1, 1}, {1, 1, 0}, {1, 0, 1}};
  EXPECT_THROW(cholesky_psd(bad), NumericError);
}

TEST(States, RandomStatesAreValid)
{
  Rng rng(4);
  for (int d : {2, 3, 5}) {
    EXPECT_NEAR(norm(random_pure_state(d, rng)), 1, 1e-12);
    EXPECT_TRUE(is_density(random_density(d, rng)));
    CMat u = random_unitary(d, rng);
    EXPECT_LT(max_abs_diff(u.adjoint() * u, CMat::identity(d)), 1e-12);
  }
  EXPECT_EQ(random_pure_state(3, 9u), random_pure_state(3, 9u));
}

TEST(Products, KronAndDirectSum)
{
  CMat a{{1, 2}, {3, 4}}, b = CMat::identity(2);
  CMat k = kron(a, b);
  EXPECT_EQ(k.rows(), 4);
  EXPECT_EQ(k(2, 0), cplx(3));
  EXPECT_EQ(k(2, 1), cplx(0));
  CMat s = direct_sum({a, b});
  EXPECT_EQ(s.rows(), 4);
  EXPECT_EQ(s(3, 3), cplx(1));
  EXPECT_EQ(s(0, 3), cplx(0));
  EXPECT_NEAR(std::abs(trace_product(a, b) - (a * b).trace()), 0, 1e-15);
}

TEST(TopEigen, ProjectorMaximizesTrace)
{
  Rng rng(6);
  for (int t = 0; t < 50; ++t) {
    CMat m = random_hermitian(3, rng);
    CMat p = top_eig_projector(m);
    EXPECT_NEAR(std::real(trace_product(p, m)), lambda_max(m), 1e-10);
    CMat rho = random_density(3, rng);
    EXPECT_LE(std::real(trace_product(rho, m)), lambda_max(m) + 1e-12);
  }
}
