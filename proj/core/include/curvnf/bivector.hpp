#pragma once

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace curvnf {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Coefficients of a bivector in a BivectorBasis, in basis order.
using Bivector = Eigen::VectorXd;

/// Ordered basis {e_i ^ e_j} of the second exterior power of R^n.
///
/// Indices are 0-based. In dimension four the order is
/// (0,1),(0,2),(0,3),(2,3),(3,1),(1,2), so that the last three elements are
/// the Hodge complements of the first three in a positively oriented
/// orthonormal frame. Every other dimension uses lexicographic i<j order.
class BivectorBasis {
 public:
  explicit BivectorBasis(int dim);

  int dim() const noexcept { return dim_; }
  int size() const noexcept { return static_cast<int>(pairs_.size()); }
  const std::vector<std::pair<int, int>>& pairs() const noexcept {
    return pairs_;
  }
  const std::pair<int, int>& operator[](int a) const { return pairs_[a]; }

  /// Position of e_i ^ e_j together with the sign relating it to the stored
  /// pair: e_i ^ e_j = sign * basis[index]. Returns index -1 for i == j.
  std::pair<int, int> locate(int i, int j) const;

 private:
  int dim_;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<int> index_;  // dim*dim table, signed (index+1)
};

/// Canonical basis for dimension n; throws Error(kDimension) for n < 3.
BivectorBasis bivector_basis(int n);

/// Gram matrix of the scalar product induced on bivectors by `metric`:
/// <v^w, x^y> = g(v,x) g(w,y) - g(v,y) g(w,x).
Matrix induced_gram(const Matrix& metric, const BivectorBasis& basis);

/// Bivector coefficients of v ^ w.
Bivector wedge(const Vector& v, const Vector& w, const BivectorBasis& basis);

/// Coefficient of e1^e2^e3^e4 in xi ^ eta (dimension four only).
double wedge_to_volume(const Bivector& xi, const Bivector& eta,
                       const BivectorBasis& basis);

/// 6x6 matrix V with V(a,b) = wedge_to_volume(E_a, E_b) in dimension four.
Eigen::Matrix<double, 6, 6> volume_pairing();

/// Plucker test: every component of xi ^ xi is at most tol * |xi|^2.
/// Always true in dimension three.
bool is_decomposable(const Bivector& xi, const BivectorBasis& basis,
                     double tol);

/// The bivector as an antisymmetric n x n matrix, P(i,j) = coefficient of e_i^e_j.
Matrix bivector_to_matrix(const Bivector& xi, const BivectorBasis& basis);

Bivector matrix_to_bivector(const Matrix& p, const BivectorBasis& basis);

}  // namespace curvnf
