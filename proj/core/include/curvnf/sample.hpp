#pragma once

#include <optional>
#include <vector>

#include "curvnf/curvature.hpp"

namespace curvnf {

/// One manifold point: metric(s) and curvature components in the sample
/// frame, an optional g-unit vector field value and a quadrature weight.
struct PointSample {
  int dim = 4;
  Matrix g;
  std::optional<Matrix> h;
  std::optional<Vector> t;
  std::vector<Component> rm;  // canonical representatives, 0-based
  std::optional<double> weight;
  std::vector<double> coords;

  /// Completed and validated tensor (throws like validate_curvature).
  CurvatureTensor tensor(double tol = 1e-9) const;
  /// h when present, otherwise g.
  const Matrix& h_or_g() const { return h ? *h : g; }
};

/// Canonical component list of a tensor (zero components omitted).
std::vector<Component> components_of(const CurvatureTensor& rm);

}  // namespace curvnf
