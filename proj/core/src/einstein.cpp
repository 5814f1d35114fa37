#include "curvnf/einstein.hpp"

#include "curvnf/error.hpp"
#include "curvnf/frame.hpp"
#include "curvnf/hodge.hpp"

namespace curvnf {

namespace {

void require_dim4(const CurvatureTensor& rm, const Matrix& metric) {
  if (rm.dim() != 4 || metric.rows() != 4 || metric.cols() != 4) {
    throw Error(ErrorCode::kDimension, "Einstein tests require dimension 4");
  }
}

void fill_commutator(EinsteinReport& r, const Matrix6& star, double tol,
                     double sign) {
  const Matrix6 m = r.op;
  r.commutator = (m * star - star * m).norm();
  const double norm = m.norm();
  r.relative_commutator = norm > 0.0 ? r.commutator / norm : 0.0;
  const Eigen::Matrix3d a = m.topLeftCorner<3, 3>();
  const Eigen::Matrix3d b = m.topRightCorner<3, 3>();
  const Eigen::Matrix3d d = m.bottomRightCorner<3, 3>();
  r.block_asymmetry = (b - b.transpose()).norm();
  r.block_mismatch = (d - sign * a).norm();
  r.einstein = r.commutator <= tol * norm;
}

}  // namespace

EinsteinReport is_star_h_einstein(const CurvatureTensor& rm, const Matrix& h,
                                  double tol) {
  require_dim4(rm, h);
  EinsteinReport r;
  r.frame = orthonormal_frame(h);
  const Matrix4 id = Matrix4::Identity();
  r.op = operator_from(rm.in_frame(r.frame), id, OperatorKind::kViaH).matrix;
  fill_commutator(r, hodge_star(id).matrix, tol, 1.0);
  r.trace = fit_trace_proportionality(rm, h);
  return r;
}

EinsteinReport is_star_l_einstein(const CurvatureTensor& rm, const Matrix& g,
                                  const Vector& t, double tol) {
  require_dim4(rm, g);
  EinsteinReport r;
  r.frame = adapted_frame(g, t);
  Matrix4 gl = Matrix4::Identity();
  gl(0, 0) = -1.0;
  const CurvatureTensor local = rm.in_frame(r.frame);
  r.op = operator_from(local, gl, OperatorKind::kViaLorentz).matrix;
  // *_L-Einstein means B = B^T and D = -A in the via_g blocks, which is the
  // same as [R_L, *_L] = 0.
  fill_commutator(r, hodge_star(gl).matrix, tol, 1.0);
  const Matrix6 via_g =
      operator_from(local, Matrix4::Identity(), OperatorKind::kViaG).matrix;
  r.block_mismatch = (via_g.bottomRightCorner<3, 3>() +
                      via_g.topLeftCorner<3, 3>())
                         .norm();
  r.trace = fit_trace_proportionality(
      rm, lorentz_metric_from_unit(Matrix4(g), Vector4(t)));
  r.scalar_curvature = scalar_curvature(rm, g);
  return r;
}

}  // namespace curvnf
