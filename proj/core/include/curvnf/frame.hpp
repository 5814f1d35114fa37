#pragma once

#include "curvnf/bivector.hpp"

namespace curvnf {

/// Frames are stored as matrices whose columns are the frame vectors,
/// expressed in the coordinates of the sample frame.

/// Upper-triangular F with F^T g F = I (Cholesky); e1 is parallel to the
/// first coordinate vector. Throws kDegenerateMetric unless g is
/// positive-definite.
Matrix orthonormal_frame(const Matrix& metric);

/// g-orthonormal frame with e1 = t and det > 0. Requires g(t,t) = 1 within
/// tol (kNonUnitVector).
Matrix adapted_frame(const Matrix& metric, const Vector& t, double tol = 1e-9);

/// F^T g F.
Matrix metric_in_frame(const Matrix& metric, const Matrix& frame);

/// max |F^T g F - I|.
double orthonormality_defect(const Matrix& metric, const Matrix& frame);

/// Matrix of the map xi -> (F xi) on bivectors: column a holds the
/// coordinates of f_i ^ f_j for basis pair a = (i,j).
Matrix bivector_transform(const Matrix& frame, const BivectorBasis& basis);

}  // namespace curvnf
