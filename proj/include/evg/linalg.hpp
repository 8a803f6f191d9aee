#pragma once

#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace evg {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

inline constexpr double tol_herm = 1e-9;
inline constexpr double tol_psd = 1e-9;

/// Dense row-major complex matrix.
class CMat {
public:
  CMat() = default;
  CMat(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * cols) {}
  explicit CMat(int n) : CMat(n, n) {}
  CMat(std::initializer_list<std::initializer_list<cplx>> rows)
  {
    r_ = static_cast<int>(rows.size());
    c_ = r_ ? static_cast<int>(rows.begin()->size()) : 0;
    for (auto& row : rows) a_.insert(a_.end(), row.begin(), row.end());
  }

  static CMat identity(int n)
  {
    CMat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }
  int dim() const { return r_; }
  cplx& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }
  const cplx& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * c_ + j]; }

  CMat adjoint() const
  {
    CMat m(c_, r_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
  }

  cplx trace() const
  {
    cplx t = 0;
    for (int i = 0; i < std::min(r_, c_); ++i) t += (*this)(i, i);
    return t;
  }

  double max_abs() const
  {
    double m = 0;
    for (auto& x : a_) m = std::max(m, std::abs(x));
    return m;
  }

  CMat& operator+=(const CMat& o)
  {
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
  }
  CMat& operator-=(const CMat& o)
  {
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
  }
  CMat& operator*=(cplx s)
  {
    for (auto& x : a_) x *= s;
    return *this;
  }

  friend CMat operator+(CMat a, const CMat& b) { return a += b; }
  friend CMat operator-(CMat a, const CMat& b) { return a -= b; }
  friend CMat operator*(CMat a, cplx s) { return a *= s; }
  friend CMat operator*(cplx s, CMat a) { return a *= s; }
  friend CMat operator*(const CMat& a, const CMat& b)
  {
    if (a.c_ != b.r_) throw ParamError("matrix product: shape mismatch");
    CMat m(a.r_, b.c_);
    for (int i = 0; i < a.r_; ++i)
      for (int k = 0; k < a.c_; ++k) {
        cplx x = a(i, k);
        if (x == cplx(0)) continue;
        for (int j = 0; j < b.c_; ++j) m(i, j) += x * b(k, j);
      }
    return m;
  }

  const std::vector<cplx>& data() const { return a_; }

private:
  int r_ = 0, c_ = 0;
  std::vector<cplx> a_;
};

inline double max_abs_diff(const CMat& a, const CMat& b) { return (a - b).max_abs(); }

/// Tr(A B) without forming the product.
inline cplx trace_product(const CMat& a, const CMat& b)
{
  cplx t = 0;
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) t += a(i, k) * b(k, i);
  return t;
}

inline CMat outer(const CVec& v)
{
  int d = static_cast<int>(v.size());
  CMat m(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = v[i] * std::conj(v[j]);
  return m;
}

inline CVec operator*(const CMat& m, const CVec& v)
{
  CVec out(m.rows(), 0);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

inline cplx inner(const CVec& a, const CVec& b)
{
  cplx s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += std::conj(a[k]) * b[k];
  return s;
}

inline double norm(const CVec& v) { return std::sqrt(std::real(inner(v, v))); }

inline CMat kron(const CMat& a, const CMat& b)
{
  CMat m(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return m;
}

inline CMat direct_sum(const std::vector<CMat>& blocks)
{
  int n = 0;
  for (auto& b : blocks) n += b.rows();
  CMat m(n);
  int off = 0;
  for (auto& b : blocks) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) m(off + i, off + j) = b(i, j);
    off += b.rows();
  }
  return m;
}

inline CMat hermitian_part(const CMat& a) { return (a + a.adjoint()) * cplx(0.5); }

inline bool is_hermitian(const CMat& m, double tol = tol_herm)
{
  if (m.rows() != m.cols()) return false;
  return max_abs_diff(m, m.adjoint()) <= tol * std::max(1.0, m.max_abs());
}

/// Gram matrix G_ij = <psi_i|psi_j>.
inline CMat gram(const std::vector<CVec>& psi)
{
  int n = static_cast<int>(psi.size());
  CMat g(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = inner(psi[i], psi[j]);
  return g;
}

// ------------------------------------------------------------- eigensolver

struct EigenSystem {
  std::vector<double> values; // ascending
  CMat vectors;               // orthonormal columns
};

namespace detail {

// Implicit QL with Wilkinson-type shifts on a real symmetric tridiagonal matrix.
// d: diagonal, e[i]: coupling of i and i+1 (e[n-1] unused); z accumulates rotations.
inline void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, std::vector<std::vector<double>>& z)
{
  const int n = static_cast<int>(d.size());
  if (n == 0) return;
  e.resize(n, 0.0);
  e[n - 1] = 0.0;
  const double eps = std::numeric_limits<double>::epsilon();
  for (int l = 0; l < n; ++l) {
    int iter = 0, m;
    do {
      for (m = l; m < n - 1; ++m) {
        double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == 64) throw NumericError("QL iteration did not converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i], b = c * e[i];
          e[i + 1] = (r = std::hypot(f, g));
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          d[i + 1] = g + (p = s * r);
          g = c * r - b;
          for (int k = 0; k < n; ++k) {
            f = z[k][i + 1];
            z[k][i + 1] = s * z[k][i] + c * f;
            z[k][i] = c * z[k][i] - s * f;
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

} // namespace detail

/// Hermitian eigendecomposition: Householder reduction to real tridiagonal form, then implicit QL.
inline EigenSystem hermitian_eig(const CMat& m)
{
  if (!is_hermitian(m)) throw ParamError("hermitian_eig: matrix is not Hermitian");
  const int n = m.rows();
  CMat a = hermitian_part(m), q = CMat::identity(n);

  for (int k = 0; k + 2 < n; ++k) {
    double tail = 0;
    for (int i = k + 2; i < n; ++i) tail += std::norm(a(i, k));
    if (tail == 0.0) continue;
    double xnorm = std::sqrt(tail + std::norm(a(k + 1, k)));
    cplx x0 = a(k + 1, k);
    cplx phase = std::abs(x0) > 0 ? x0 / std::abs(x0) : cplx(1);
    cplx alpha = -phase * xnorm;
    CVec v(n, 0);
    for (int i = k + 1; i < n; ++i) v[i] = a(i, k);
    v[k + 1] -= alpha;
    double vn = norm(v);
    for (auto& x : v) x /= vn;
    // a <- H a H with H = I - 2 v v^dagger
    CVec w(n, 0); // w = v^dagger a (row)
    for (int j = 0; j < n; ++j)
      for (int i = k + 1; i < n; ++i) w[j] += std::conj(v[i]) * a(i, j);
    for (int i = k + 1; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) -= 2.0 * v[i] * w[j];
    CVec u(n, 0); // u = a v (column)
    for (int i = 0; i < n; ++i)
      for (int j = k + 1; j < n; ++j) u[i] += a(i, j) * v[j];
    for (int i = 0; i < n; ++i)
      for (int j = k + 1; j < n; ++j) a(i, j) -= 2.0 * u[i] * std::conj(v[j]);
    CVec t(n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = k + 1; j < n; ++j) t[i] += q(i, j) * v[j];
    for (int i = 0; i < n; ++i)
      for (int j = k + 1; j < n; ++j) q(i, j) -= 2.0 * t[i] * std::conj(v[j]);
    for (int i = k + 2; i < n; ++i) a(i, k) = a(k, i) = 0;
  }

  // diagonal phase change making the off-diagonal real and nonnegative
  std::vector<double> d(n), e(n, 0.0);
  CVec ph(n, 1.0);
  for (int i = 0; i < n; ++i) d[i] = std::real(a(i, i));
  for (int i = 0; i + 1 < n; ++i) {
    cplx t = a(i + 1, i);
    double at = std::abs(t);
    ph[i + 1] = at > 0 ? ph[i] * t / at : ph[i];
    e[i] = at;
  }
  std::vector<std::vector<double>> z(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) z[i][i] = 1.0;
  detail::tridiagonal_ql(d, e, z);

  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) { return d[x] < d[y]; });
  EigenSystem out;
  out.vectors = CMat(n);
  for (int c = 0; c < n; ++c) {
    int src = idx[c];
    out.values.push_back(d[src]);
    for (int i = 0; i < n; ++i) {
      cplx s = 0;
      for (int k = 0; k < n; ++k) s += q(i, k) * ph[k] * z[k][src];
      out.vectors(i, c) = s;
    }
  }
  return out;
}

inline CVec column(const CMat& m, int c)
{
  CVec v(m.rows());
  for (int i = 0; i < m.rows(); ++i) v[i] = m(i, c);
  return v;
}

inline double lambda_min(const CMat& m) { return hermitian_eig(m).values.front(); }
inline double lambda_max(const CMat& m) { return hermitian_eig(m).values.back(); }

inline double operator_norm(const CMat& hermitian)
{
  auto v = hermitian_eig(hermitian).values;
  return std::max(std::abs(v.front()), std::abs(v.back()));
}

namespace detail {
inline cplx determinant(CMat a)
{
  const int n = a.rows();
  cplx det = 1;
  for (int c = 0; c < n; ++c) {
    int p = c;
    for (int i = c + 1; i < n; ++i)
      if (std::abs(a(i, c)) > std::abs(a(p, c))) p = i;
    if (std::abs(a(p, c)) == 0.0) return 0;
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (int i = c + 1; i < n; ++i) {
      cplx f = a(i, c) / a(c, c);
      for (int j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}
} // namespace detail

inline cplx determinant(const CMat& a) { return detail::determinant(a); }

/// Sylvester test: every principal minor is nonnegative (within tol). Exponential; small matrices only.
inline bool sylvester_psd(const CMat& m, double tol = tol_psd)
{
  const int n = m.rows();
  double scale = std::max(1.0, m.max_abs());
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) idx.push_back(i);
    CMat sub(static_cast<int>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) sub(i, j) = m(idx[i], idx[j]);
    if (std::real(detail::determinant(sub)) < -tol * std::pow(scale, static_cast<double>(idx.size()))) return false;
  }
  return true;
}

inline bool is_psd(const CMat& m, double tol = tol_psd)
{
  return lambda_min(m) >= -tol * std::max(1.0, m.max_abs());
}

struct CholeskyFactor {
  CMat L;                // n x rank, M ~ L L^dagger; row perm[k] vanishes beyond column k
  std::vector<int> perm; // pivot order
  int rank = 0;
};

/// Diagonally pivoted Cholesky for positive semidefinite input; stops at numerical rank.
inline CholeskyFactor cholesky_psd(const CMat& m, double tol = tol_psd)
{
  if (!is_hermitian(m) || !is_psd(m, tol)) throw NumericError("cholesky_psd: matrix is not PSD");
  const int n = m.rows();
  CMat r = hermitian_part(m);
  double scale = 0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, std::real(r(i, i)));
  double stop = 1e-13 * std::max(1.0, scale) * n;
  std::vector<char> used(n, 0);
  std::vector<CVec> cols;
  CholeskyFactor f;
  for (int k = 0; k < n; ++k) {
    int p = -1;
    double best = stop;
    for (int i = 0; i < n; ++i)
      if (!used[i] && std::real(r(i, i)) > best) {
        best = std::real(r(i, i));
        p = i;
      }
    if (p < 0) break;
    double s = std::sqrt(best);
    CVec c(n, 0);
    for (int i = 0; i < n; ++i)
      if (!used[i]) c[i] = r(i, p) / s;
    c[p] = s;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r(i, j) -= c[i] * std::conj(c[j]);
    used[p] = 1;
    f.perm.push_back(p);
    cols.push_back(c);
  }
  f.rank = static_cast<int>(cols.size());
  f.L = CMat(n, f.rank);
  for (int k = 0; k < f.rank; ++k)
    for (int i = 0; i < n; ++i) f.L(i, k) = cols[k][i];
  return f;
}

/// Vectors whose Gram matrix is M: the conjugated rows of the Cholesky factor.
inline std::vector<CVec> vectors_from_gram(const CMat& g)
{
  auto f = cholesky_psd(g);
  std::vector<CVec> out(g.rows(), CVec(std::max(1, f.rank), 0));
  for (int i = 0; i < g.rows(); ++i)
    for (int k = 0; k < f.rank; ++k) out[i][k] = std::conj(f.L(i, k));
  return out;
}

// ---------------------------------------------------------- random states

using Rng = std::mt19937_64;

inline CVec random_pure_state(int d, Rng& rng)
{
  if (d < 1) throw ParamError("dimension must be >= 1");
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVec v(d);
  double nn;
  do {
    for (auto& x : v) x = cplx(gauss(rng), gauss(rng));
    nn = norm(v);
  } while (nn == 0.0);
  for (auto& x : v) x /= nn;
  return v;
}

inline CVec random_pure_state(int d, std::uint64_t seed)
{
  Rng rng(seed);
  return random_pure_state(d, rng);
}

/// Real-amplitude pure state (uniform on the real sphere).
inline CVec random_real_state(int d, Rng& rng)
{
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVec v(d);
  for (auto& x : v) x = gauss(rng);
  double nn = norm(v);
  for (auto& x : v) x /= nn;
  return v;
}

/// Haar unitary via Gram-Schmidt on a complex Ginibre matrix.
inline CMat random_unitary(int d, Rng& rng)
{
  std::vector<CVec> cols;
  while (static_cast<int>(cols.size()) < d) {
    CVec v = random_pure_state(d, rng);
    for (auto& c : cols) {
      cplx p = inner(c, v);
      for (int i = 0; i < d; ++i) v[i] -= p * c[i];
    }
    double nn = norm(v);
    if (nn < 1e-8) continue;
    for (auto& x : v) x /= nn;
    cols.push_back(v);
  }
  CMat u(d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) u(i, j) = cols[j][i];
  return u;
}

/// U diag(lambda) U^dagger with Haar U and lambda uniform on the simplex.
inline CMat random_density(int d, Rng& rng)
{
  if (d < 1) throw ParamError("dimension must be >= 1");
  CMat u = random_unitary(d, rng);
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> lam(d);
  double s = 0;
  for (auto& x : lam) s += (x = expo(rng));
  CMat diag(d);
  for (int i = 0; i < d; ++i) diag(i, i) = lam[i] / s;
  return u * diag * u.adjoint();
}

inline CMat random_density(int d, std::uint64_t seed)
{
  Rng rng(seed);
  return random_density(d, rng);
}

/// Top eigenvector (lowest index among ties) and its eigenvalue.
inline std::pair<double, CVec> top_eigvec(const CMat& m)
{
  auto es = hermitian_eig(m);
  const int n = m.rows();
  int c = n - 1;
  double top = es.values.back(), slack = 1e-12 * std::max(1.0, std::abs(top));
  while (c > 0 && es.values[c - 1] >= top - slack) --c;
  return {es.values[c], column(es.vectors, c)};
}

/// argmax of Tr(X M) over density matrices: the projector onto a top eigenvector.
inline CMat top_eig_projector(const CMat& m) { return outer(top_eigvec(m).second); }

inline bool is_density(const CMat& rho, double tol = tol_psd)
{
  return is_hermitian(rho, tol) && std::abs(rho.trace() - 1.0) <= tol && is_psd(rho, tol);
}

/// basis vector |k> in C^d
inline CVec ket(int d, int k)
{
  CVec v(d, 0);
  v[k] = 1;
  return v;
}

} // namespace evg
