#include "curvnf/critical.hpp"

#include <cmath>
#include <sstream>

#include "curvnf/error.hpp"
#include "curvnf/frame.hpp"

namespace curvnf {

namespace {

CriticalFit fit(const Lambda2Operator& op, const Bivector& p_in,
                const Matrix* star) {
  const bool with_star = star != nullptr;
  const BivectorBasis basis(op.dim);
  if (p_in.size() != basis.size()) {
    throw Error(ErrorCode::kDimension, "bivector size does not match operator");
  }
  if (!is_decomposable(p_in, basis, 1e-9)) {
    throw Error(ErrorCode::kDegeneratePlane, "bivector is not decomposable");
  }
  const double norm2 = p_in.dot(op.gram * p_in);
  if (std::abs(norm2) <= 1e-12 * p_in.squaredNorm()) {
    throw Error(op.kind == OperatorKind::kViaLorentz
                    ? ErrorCode::kLightlikePlane
                    : ErrorCode::kDegeneratePlane,
                "plane is degenerate for the operator's scalar product");
  }
  const Bivector p = p_in / std::sqrt(std::abs(norm2));
  const Bivector y = op.matrix * p;
  Matrix x(p.size(), with_star ? 2 : 1);
  x.col(0) = p;
  if (with_star) x.col(1) = *star * p;

  Eigen::LLT<Matrix> llt(op.gram);
  const bool positive = llt.info() == Eigen::Success &&
                        op.kind != OperatorKind::kViaLorentz;
  const Matrix w = positive ? op.gram : Matrix::Identity(p.size(), p.size());
  const Vector coef =
      (x.transpose() * w * x).ldlt().solve(x.transpose() * w * y);
  const Vector r = y - x * coef;
  CriticalFit out;
  out.a = coef[0];
  out.b = with_star ? coef[1] : 0.0;
  out.residual = std::sqrt(std::max(0.0, r.dot(w * r)));
  return out;
}

}  // namespace

CriticalFit critical_point_residual(const Lambda2Operator& op,
                                    const Matrix& star, const Bivector& p) {
  return fit(op, p, &star);
}

CriticalFit critical_point_residual(const Lambda2Operator& op,
                                    const Bivector& p) {
  return fit(op, p, nullptr);
}

FrameCheck critical_frame_check_n(const CurvatureTensor& rm,
                                  const Matrix& frame, double tol) {
  return critical_frame_check_n(rm, frame,
                                Matrix::Identity(rm.dim(), rm.dim()), tol);
}

FrameCheck critical_frame_check_n(const CurvatureTensor& rm,
                                  const Matrix& frame, const Matrix& metric,
                                  double tol) {
  const int n = rm.dim();
  if (n < 3) throw Error(ErrorCode::kDimension, "dimension must be >= 3");
  const double defect = orthonormality_defect(metric, frame);
  if (defect > 1e-9) {
    std::ostringstream os;
    os << "frame is not orthonormal (defect " << defect << ")";
    throw Error(ErrorCode::kNonOrthogonalFrame, os.str());
  }
  const CurvatureTensor local = rm.in_frame(frame);
  FrameCheck out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const double kj = local(i, j, k, j);
        const double ik = local(i, j, i, k);
        if (std::abs(kj) > tol) out.violations.push_back({{i, j, k, j}, kj});
        if (std::abs(ik) > tol) out.violations.push_back({{i, j, i, k}, ik});
      }
  out.critical = out.violations.empty();
  return out;
}

RicciDecomposition ricci_from_critical_frame(const CurvatureTensor& rm,
                                             const Matrix& frame, double tol) {
  const FrameCheck check = critical_frame_check_n(rm, frame, tol);
  if (!check.critical) {
    const auto& v = check.violations.front();
    std::ostringstream os;
    os << "frame is not critical: R(" << v.indices[0] + 1 << ","
       << v.indices[1] + 1 << "," << v.indices[2] + 1 << ","
       << v.indices[3] + 1 << ") = " << v.value;
    throw Error(ErrorCode::kPrecondition, os.str());
  }
  const int n = rm.dim();
  const CurvatureTensor local = rm.in_frame(frame);
  RicciDecomposition out;
  out.ricci = Matrix::Zero(n, n);
  out.critical_values = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if (i != k) out.critical_values(i, k) = local(i, k, i, k);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (i != k) out.ricci(k, k) -= out.critical_values(i, k);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      if (j == k) continue;
      for (int i = 0; i < n; ++i) {
        if (i == j || i == k) continue;
        const double v = local(i, j, k, i);
        out.ricci(j, k) += v;
        out.off_diagonal_terms.push_back({j, k, i, v});
        out.max_off_diagonal_term =
            std::max(out.max_off_diagonal_term, std::abs(v));
      }
    }
  return out;
}

}  // namespace curvnf
