#pragma once

#include <cstdint>

#include "curvnf/curvature.hpp"

namespace curvnf {

/// Orthonormal frame f1,f2,f3 (columns) in which the 3D curvature operator
/// is diagonal; diag = (R_1212, R_1313, R_2323) ascending.
struct NormalForm3 {
  Eigen::Matrix3d frame;
  Eigen::Vector3d diag;
  double residual = 0.0;  // largest off-diagonal operator entry in the frame
};

/// Input components are taken in an orthonormal frame.
NormalForm3 normal_form_3(const CurvatureTensor& rm, double tol = 1e-9);

enum class CurvatureSign { kPositive, kNegative, kNone };

const char* to_string(CurvatureSign sign);

struct SignedCurvature3 {
  CurvatureSign sign = CurvatureSign::kNone;
  Eigen::Vector3d critical_values;  // eigenvalues of -R, ascending
  double sampled_min = 0.0;         // over sampled planes of -sec
  double sampled_max = 0.0;
  int samples = 0;
  int sign_violations = 0;   // samples contradicting the guarantee
  int bound_violations = 0;  // samples outside [min, max] critical value
};

/// Sign guarantee from the critical values, cross-checked on `samples`
/// random planes drawn from a generator seeded with `seed`.
SignedCurvature3 signed_curvature_3(const CurvatureTensor& rm, int samples,
                                    std::uint64_t seed = 1,
                                    double tol = 1e-12);

}  // namespace curvnf
