#pragma once

#include "curvnf/bivector.hpp"

namespace curvnf {

/// Which scalar product the curvature 4-tensor was raised with.
enum class OperatorKind { kViaG, kViaH, kViaLorentz };

const char* to_string(OperatorKind kind);

/// Endomorphism of the bivector space stored as a matrix acting on
/// coefficient columns, M * xi, together with the Gram matrix it is
/// self-adjoint against (gram * matrix is symmetric).
struct Lambda2Operator {
  Matrix matrix;
  Matrix gram;
  OperatorKind kind = OperatorKind::kViaG;
  int dim = 0;  // dimension of the underlying vector space

  Bivector apply(const Bivector& xi) const { return matrix * xi; }
  double pair(const Bivector& xi, const Bivector& eta) const {
    return xi.dot(gram * eta);
  }
};

}  // namespace curvnf
