#include "curvnf/sample.hpp"

namespace curvnf {

CurvatureTensor PointSample::tensor(double tol) const {
  return validate_curvature(rm, dim, tol);
}

std::vector<Component> components_of(const CurvatureTensor& rm) {
  return rm.canonical_components();
}

}  // namespace curvnf
