#include "curvnf/normal_form3.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "curvnf/error.hpp"

namespace curvnf {

namespace {

using Matrix3 = Eigen::Matrix3d;
using Vector3 = Eigen::Vector3d;

void require_dim3(const CurvatureTensor& rm) {
  if (rm.dim() != 3) {
    throw Error(ErrorCode::kDimension, "expected a 3-dimensional tensor");
  }
}

// Normal vector of a bivector in the basis (e12, e13, e23).
Vector3 normal_of(const Vector3& p) { return {p[2], -p[1], p[0]}; }

}  // namespace

const char* to_string(CurvatureSign sign) {
  switch (sign) {
    case CurvatureSign::kPositive: return "positive";
    case CurvatureSign::kNegative: return "negative";
    case CurvatureSign::kNone: return "none";
  }
  return "none";
}

NormalForm3 normal_form_3(const CurvatureTensor& rm, double tol) {
  require_dim3(rm);
  const BivectorBasis basis(3);
  const Matrix3 k = rm.bilinear_form(basis);
  Eigen::SelfAdjointEigenSolver<Matrix3> eig(k);
  std::array<Vector3, 3> normals;
  for (int a = 0; a < 3; ++a) normals[a] = normal_of(eig.eigenvectors().col(a));

  // Eigenplane a plays the role of f1^f2, f1^f3, f2^f3 in turn. Any two
  // planes share the line orthogonal to both normals.
  NormalForm3 nf;
  nf.frame.col(0) = normals[0].cross(normals[1]).normalized();
  nf.frame.col(1) = normals[0].cross(normals[2]).normalized();
  nf.frame.col(2) = normals[1].cross(normals[2]).normalized();
  const Vector3 f1 = nf.frame.col(0);
  for (int i = 0; i < 3; ++i) {
    if (std::abs(f1[i]) > 1e-12) {
      if (f1[i] < 0.0) nf.frame.col(0) *= -1.0;
      break;
    }
  }
  if (nf.frame.determinant() < 0.0) nf.frame.col(2) *= -1.0;

  const Matrix3 local = rm.in_frame(nf.frame).bilinear_form(basis);
  nf.diag = local.diagonal();
  nf.residual = (local - Matrix3(nf.diag.asDiagonal())).cwiseAbs().maxCoeff();
  if (nf.residual > std::max(tol, 1e-8) * std::max(1.0, rm.max_abs())) {
    throw Error(ErrorCode::kFrameReconstruction,
                "eigenplanes do not come from an orthonormal frame");
  }
  return nf;
}

SignedCurvature3 signed_curvature_3(const CurvatureTensor& rm, int samples,
                                    std::uint64_t seed, double tol) {
  require_dim3(rm);
  const BivectorBasis basis(3);
  const Matrix3 k = rm.bilinear_form(basis);
  SignedCurvature3 out;
  out.critical_values = Eigen::SelfAdjointEigenSolver<Matrix3>(-k).eigenvalues();
  const double lo = out.critical_values[0], hi = out.critical_values[2];
  if (lo > 0.0) out.sign = CurvatureSign::kPositive;
  if (hi < 0.0) out.sign = CurvatureSign::kNegative;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  out.samples = samples;
  out.sampled_min = INFINITY;
  out.sampled_max = -INFINITY;
  const double slack = tol * std::max(1.0, rm.max_abs());
  for (int s = 0; s < samples; ++s) {
    const Vector v(Vector3(normal(rng), normal(rng), normal(rng)));
    const Vector w(Vector3(normal(rng), normal(rng), normal(rng)));
    const Bivector p = wedge(v, w, basis);
    const double len2 = p.squaredNorm();
    if (len2 < 1e-12) {
      --out.samples;
      continue;
    }
    // The quadratic form is minus the classical sectional curvature.
    const double value = -p.dot(k * p) / len2;
    out.sampled_min = std::min(out.sampled_min, value);
    out.sampled_max = std::max(out.sampled_max, value);
    if (value < lo - slack || value > hi + slack) ++out.bound_violations;
    if ((out.sign == CurvatureSign::kPositive && value <= 0.0) ||
        (out.sign == CurvatureSign::kNegative && value >= 0.0)) {
      ++out.sign_violations;
    }
  }
  return out;
}

}  // namespace curvnf
