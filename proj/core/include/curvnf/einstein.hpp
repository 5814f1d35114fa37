#pragma once

#include "curvnf/curvature.hpp"

namespace curvnf {

/// Result of testing whether a curvature operator commutes with a Hodge
/// star. All matrices refer to an orthonormal frame of the test metric.
struct EinsteinReport {
  bool einstein = false;
  double commutator = 0.0;           // ||[R, *]||_F
  double relative_commutator = 0.0;  // commutator / ||R||_F
  double block_asymmetry = 0.0;      // ||B - B^T||_F
  double block_mismatch = 0.0;       // ||D - A||_F, or ||D + A||_F (Lorentz)
  Matrix op;                         // 6x6 operator in the frame
  Matrix frame;                      // orthonormal frame, sample coordinates
  TraceFit trace;                    // tr_metric Rm ~ f metric, sample coords
  double scalar_curvature = 0.0;     // scal of g (Lorentz test only)
};

/// R_h commutes with *_h, tested in an h-orthonormal frame as
/// ||[R_h, *_h]|| <= tol ||R_h||. With h = g this is the Einstein condition.
EinsteinReport is_star_h_einstein(const CurvatureTensor& rm, const Matrix& h,
                                  double tol = 1e-9);

/// R_L commutes with *_L for g_L built from the g-unit field t, tested in a
/// g-orthonormal frame with e1 = t. The trace fit is against g_L.
EinsteinReport is_star_l_einstein(const CurvatureTensor& rm, const Matrix& g,
                                  const Vector& t, double tol = 1e-9);

}  // namespace curvnf
