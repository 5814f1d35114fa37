#include "curvnf/frame.hpp"

#include <cmath>
#include <sstream>

#include "curvnf/error.hpp"

namespace curvnf {

Matrix orthonormal_frame(const Matrix& metric) {
  if (metric.rows() != metric.cols()) {
    throw Error(ErrorCode::kDimension, "metric must be square");
  }
  Eigen::LLT<Matrix> llt(0.5 * (metric + metric.transpose()));
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::kDegenerateMetric,
                "metric is not positive-definite");
  }
  const int n = static_cast<int>(metric.rows());
  // g = L L^T, so F = L^{-T} satisfies F^T g F = I.
  Matrix f = llt.matrixU().solve(Matrix::Identity(n, n));
  return f;
}

Matrix adapted_frame(const Matrix& metric, const Vector& t, double tol) {
  const int n = static_cast<int>(metric.rows());
  if (t.size() != n) {
    throw Error(ErrorCode::kDimension, "vector size does not match metric");
  }
  const double norm = t.dot(metric * t);
  if (std::abs(norm - 1.0) > tol) {
    std::ostringstream os;
    os << "vector field is not g-unit: g(T,T) = " << norm;
    throw Error(ErrorCode::kNonUnitVector, os.str());
  }
  Matrix f(n, n);
  f.col(0) = t / std::sqrt(norm);
  int filled = 1;
  for (int c = 0; c < n && filled < n; ++c) {
    Vector v = Vector::Unit(n, c);
    // Two passes of modified Gram-Schmidt keep the defect near roundoff.
    for (int pass = 0; pass < 2; ++pass)
      for (int k = 0; k < filled; ++k) v -= f.col(k).dot(metric * v) * f.col(k);
    const double len2 = v.dot(metric * v);
    if (len2 <= 1e-10) continue;
    f.col(filled++) = v / std::sqrt(len2);
  }
  if (filled < n) {
    throw Error(ErrorCode::kDegenerateMetric,
                "could not complete an orthonormal frame");
  }
  if (f.determinant() < 0.0) f.col(n - 1) *= -1.0;
  return f;
}

Matrix metric_in_frame(const Matrix& metric, const Matrix& frame) {
  return frame.transpose() * metric * frame;
}

double orthonormality_defect(const Matrix& metric, const Matrix& frame) {
  const int n = static_cast<int>(frame.cols());
  return (metric_in_frame(metric, frame) - Matrix::Identity(n, n))
      .cwiseAbs()
      .maxCoeff();
}

Matrix bivector_transform(const Matrix& frame, const BivectorBasis& basis) {
  const int m = basis.size();
  Matrix out(m, m);
  for (int a = 0; a < m; ++a) {
    const auto [i, j] = basis[a];
    out.col(a) = wedge(frame.col(i), frame.col(j), basis);
  }
  return out;
}

}  // namespace curvnf
