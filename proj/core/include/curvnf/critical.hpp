#pragma once

#include <array>
#include <vector>

#include "curvnf/curvature.hpp"

namespace curvnf {

/// Least-squares fit op P = a P + b (star P) at a plane P normalized to
/// |<P,P>| = 1. The remainder is measured in the operator's Gram norm when
/// that is positive-definite and in the Euclidean coefficient norm otherwise.
struct CriticalFit {
  double a = 0.0;
  double b = 0.0;
  double residual = 0.0;
};

/// Throws kDegeneratePlane (kLightlikePlane for via_lorentz) when
/// |<P,P>| <= 1e-12 |P|^2, and kDegeneratePlane when P is not decomposable.
CriticalFit critical_point_residual(const Lambda2Operator& op,
                                    const Matrix& star, const Bivector& p);

/// Variant without a star term (fit op P = a P), used in dimension 3.
CriticalFit critical_point_residual(const Lambda2Operator& op,
                                    const Bivector& p);

struct FrameViolation {
  std::array<int, 4> indices;  // 0-based (i,j,k,j) or (i,j,i,k)
  double value = 0.0;
};

struct FrameCheck {
  bool critical = true;
  std::vector<FrameViolation> violations;
};

/// R_ijkj = R_ijik = 0 for all i<j and k not in {i,j}, evaluated in the
/// given frame (columns, sample coordinates). Throws kNonOrthogonalFrame if
/// the frame is not metric-orthonormal within 1e-9.
FrameCheck critical_frame_check_n(const CurvatureTensor& rm,
                                  const Matrix& frame, double tol = 1e-9);
FrameCheck critical_frame_check_n(const CurvatureTensor& rm,
                                  const Matrix& frame, const Matrix& metric,
                                  double tol);

struct RicciTerm {
  int j = 0, k = 0, i = 0;  // Ric_jk contains R_ijki
  double value = 0.0;
};

struct RicciDecomposition {
  Matrix ricci;           // Ric in the frame, classical sign
  Matrix critical_values; // (i,k) -> quadratic form at e_i ^ e_k (= R_ikik)
  std::vector<RicciTerm> off_diagonal_terms;
  double max_off_diagonal_term = 0.0;
};

/// Ric_kk = -sum_{i != k} R_ikik; the off-diagonal entries are reported
/// summand by summand. Throws kPrecondition unless the frame is critical.
RicciDecomposition ricci_from_critical_frame(const CurvatureTensor& rm,
                                             const Matrix& frame,
                                             double tol = 1e-9);

}  // namespace curvnf
