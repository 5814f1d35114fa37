#pragma once

// Brute-force reference computations used by the tests. Everything here works
// on full index tables and explicit permutation signs; nothing calls into the
// library except for the plain data types.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "curvnf/curvature.hpp"

namespace oracle {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

constexpr double kPi = 3.14159265358979323846;

// Sign of a permutation of 0..n-1 by counting inversions; 0 on repeats.
inline int permutation_sign(const std::vector<int>& p) {
  for (size_t a = 0; a < p.size(); ++a)
    for (size_t b = a + 1; b < p.size(); ++b)
      if (p[a] == p[b]) return 0;
  int inversions = 0;
  for (size_t a = 0; a < p.size(); ++a)
    for (size_t b = a + 1; b < p.size(); ++b) inversions += p[a] > p[b];
  return inversions % 2 ? -1 : 1;
}

inline int epsilon(int i, int j, int k, int l) {
  return permutation_sign({i, j, k, l});
}

// Dense n^4 table.
struct Tensor {
  int n;
  std::vector<double> v;
  explicit Tensor(int dim) : n(dim), v(static_cast<size_t>(dim * dim * dim * dim), 0.0) {}
  double& operator()(int i, int j, int k, int l) { return v[((i * n + j) * n + k) * n + l]; }
  double operator()(int i, int j, int k, int l) const {
    return v[((i * n + j) * n + k) * n + l];
  }
};

inline Tensor from_library(const curvnf::CurvatureTensor& rm) {
  Tensor t(rm.dim());
  for (int i = 0; i < t.n; ++i)
    for (int j = 0; j < t.n; ++j)
      for (int k = 0; k < t.n; ++k)
        for (int l = 0; l < t.n; ++l) t(i, j, k, l) = rm(i, j, k, l);
  return t;
}

// R'_{abcd} = sum F_ia F_jb F_kc F_ld R_ijkl, done one slot at a time.
inline Tensor transform(const Tensor& r, const Matrix& f) {
  Tensor cur = r;
  for (int slot = 0; slot < 4; ++slot) {
    Tensor next(r.n);
    for (int a = 0; a < r.n; ++a)
      for (int b = 0; b < r.n; ++b)
        for (int c = 0; c < r.n; ++c)
          for (int d = 0; d < r.n; ++d) {
            double s = 0.0;
            for (int x = 0; x < r.n; ++x) {
              std::array<int, 4> idx{a, b, c, d};
              const int free = idx[slot];
              idx[slot] = x;
              s += f(x, free) * cur(idx[0], idx[1], idx[2], idx[3]);
            }
            next(a, b, c, d) = s;
          }
    cur = next;
  }
  return cur;
}

// Rm(v,w,v,w) / |v^w|^2: the quadratic form at span{v,w} (minus the classical
// sectional curvature).
inline double plane_value(const Tensor& r, const Matrix& g, const Vector& v,
                          const Vector& w) {
  double num = 0.0;
  for (int i = 0; i < r.n; ++i)
    for (int j = 0; j < r.n; ++j)
      for (int k = 0; k < r.n; ++k)
        for (int l = 0; l < r.n; ++l) num += r(i, j, k, l) * v[i] * w[j] * v[k] * w[l];
  const double area = v.dot(g * v) * w.dot(g * w) - std::pow(v.dot(g * w), 2);
  return num / area;
}

// Ric_jk = g^{il} R_ijkl (classical sign under the library convention).
inline Matrix ricci(const Tensor& r, const Matrix& g) {
  const Matrix gi = g.inverse();
  Matrix ric = Matrix::Zero(r.n, r.n);
  for (int j = 0; j < r.n; ++j)
    for (int k = 0; k < r.n; ++k)
      for (int i = 0; i < r.n; ++i)
        for (int l = 0; l < r.n; ++l) ric(j, k) += gi(i, l) * r(i, j, k, l);
  return ric;
}

inline double scalar(const Tensor& r, const Matrix& g) {
  return (g.inverse() * ricci(r, g)).trace();
}

// Gauss-Bonnet integrand per dV_g: (|Rm|^2 - 4|Ric|^2 + scal^2) / 32 pi^2,
// all norms contracted with g^{-1}.
inline double euler_density(const Tensor& r, const Matrix& g) {
  const Matrix gi = g.inverse();
  const int n = r.n;
  Tensor up(n);  // all indices raised
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) up(a, b, c, d) = r(a, b, c, d);
  up = transform(up, gi);
  double rm2 = 0.0;
  for (size_t x = 0; x < r.v.size(); ++x) rm2 += r.v[x] * up.v[x];
  const Matrix ric = ricci(r, g);
  const double ric2 = (gi * ric * gi * ric).trace();
  const double s = (gi * ric).trace();
  return (rm2 - 4.0 * ric2 + s * s) / (32.0 * kPi * kPi);
}

// First Pontryagin form / 3 per dV_g, from -tr(Omega ^ Omega) / 8 pi^2 with
// Omega^i_j = 1/2 g^{ia} R_{ajkl} dx^k ^ dx^l.
inline double signature_density(const Tensor& r, const Matrix& g) {
  const Matrix gi = g.inverse();
  const int n = r.n;
  double t = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          const double w = gi(i, a) * gi(j, b);
          if (w == 0.0) continue;
          for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
              for (int m = 0; m < n; ++m)
                for (int p = 0; p < n; ++p) {
                  const int e = epsilon(k, l, m, p);
                  if (e) t += w * e * r(a, j, k, l) * r(b, i, m, p);
                }
        }
  const double p1 = -t / (4.0 * 8.0 * kPi * kPi);
  return p1 / 3.0 / std::sqrt(g.determinant());
}

// <v^w, x^y> = g(v,x)g(w,y) - g(v,y)g(w,x) for all ordered index pairs.
inline double gram_entry(const Matrix& g, int i, int j, int k, int l) {
  return g(i, k) * g(j, l) - g(i, l) * g(j, k);
}

// Coefficient of e1^e2^e3^e4 in X ^ Y for antisymmetric coefficient
// matrices X(i,j) (bivector = 1/2 sum X_ij e_i ^ e_j).
inline double wedge_volume(const Matrix& x, const Matrix& y) {
  double s = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) s += epsilon(i, j, k, l) * x(i, j) * y(k, l);
  return s / 4.0;
}

inline Matrix random_spd(int n, std::mt19937_64& rng, double spread = 0.5) {
  std::normal_distribution<double> normal;
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = normal(rng);
  return Matrix::Identity(n, n) + spread * (a * a.transpose()) / n;
}

inline Matrix random_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = normal(rng);
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

// Random algebraic curvature tensor: a sum of terms A ∧○ A (Kulkarni-Nomizu
// squares of symmetric matrices), which satisfy every symmetry and Bianchi.
inline curvnf::CurvatureTensor random_curvature(int n, std::mt19937_64& rng,
                                                int terms = 3) {
  std::normal_distribution<double> normal;
  Tensor t(n);
  for (int s = 0; s < terms; ++s) {
    Matrix a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = normal(rng);
    a = (0.5 * (a + a.transpose())).eval();
    const double sign = s % 2 ? -1.0 : 1.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l)
            t(i, j, k, l) += sign * (a(i, k) * a(j, l) - a(i, l) * a(j, k));
  }
  curvnf::CurvatureTensor rm(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) rm.set(i, j, k, l, t(i, j, k, l));
  return rm;
}

}  // namespace oracle
