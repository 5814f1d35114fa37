#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>

#include "curvnf/bivector.hpp"
#include "curvnf/lambda2_operator.hpp"

namespace curvnf {

using Matrix6 = Eigen::Matrix<double, 6, 6>;
using Matrix4 = Eigen::Matrix4d;
using Vector4 = Eigen::Vector4d;
using Matrix3c = Eigen::Matrix3cd;

enum class Signature { kRiemannian, kLorentzian };

/// Hodge star on bivectors of a 4-metric, in the canonical basis.
struct HodgeStar {
  Matrix6 matrix;
  Matrix6 gram;  // induced Gram matrix the star is self-adjoint against
  Signature signature = Signature::kRiemannian;
};

/// Solves xi ^ (S eta) = <xi, eta> dV for S, where dV is the unit volume
/// 4-vector of the frame e1..e4 scaled by `orientation_sign`.
/// Accepts Riemannian or Lorentzian (-+++ in some order) metrics.
HodgeStar hodge_star(const Matrix4& metric, int orientation_sign = 1);

/// g_L = g - 2 (gT)(gT)^T. Requires |g(T,T) - 1| <= tol.
Matrix4 lorentz_metric_from_unit(const Matrix4& g, const Vector4& t,
                                 double tol = 1e-9);

/// Self-dual (+1) and anti-self-dual (-1) eigenbivectors of a Riemannian
/// star, orthonormal in the star's Gram matrix.
struct SdAsdBasis {
  std::array<Bivector, 3> plus;
  std::array<Bivector, 3> minus;

  /// 6x6 matrix whose columns are plus[0..2], minus[0..2].
  Matrix6 as_matrix() const;
};

SdAsdBasis sd_asd_basis(const HodgeStar& star);

/// ||op*S - S*op||_F / ||op||_F (0 for the zero operator).
double relative_commutator(const Matrix6& op, const Matrix6& star);

/// Matrix of `op` as a complex-linear map of (Lambda^2, i := star_L) in the
/// complex basis {e1^e2, e1^e3, e1^e4}. Throws kNotComplexLinear when the
/// relative commutator with star_L exceeds tol.
Matrix3c complexify(const Matrix6& op, const HodgeStar& star_l,
                    double tol = 1e-9);
Matrix3c complexify(const Lambda2Operator& op, const HodgeStar& star_l,
                    double tol = 1e-9);

/// Real bivector whose complex coordinates (same basis as complexify) are z.
Bivector realify(const Eigen::Vector3cd& z, const HodgeStar& star_l);

/// Complex coordinates of a real bivector; inverse of realify.
Eigen::Vector3cd complex_coordinates(const Bivector& xi,
                                     const HodgeStar& star_l);

}  // namespace curvnf
