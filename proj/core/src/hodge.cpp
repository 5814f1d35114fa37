#include "curvnf/hodge.hpp"

#include <cmath>
#include <sstream>

#include "curvnf/error.hpp"

namespace curvnf {

const char* to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::kViaG: return "via_g";
    case OperatorKind::kViaH: return "via_h";
    case OperatorKind::kViaLorentz: return "via_lorentz";
  }
  return "unknown";
}

namespace {

Signature classify_signature(const Matrix4& metric) {
  Eigen::SelfAdjointEigenSolver<Matrix4> eig(0.5 * (metric + metric.transpose()),
                                             Eigen::EigenvaluesOnly);
  int negative = 0;
  for (int i = 0; i < 4; ++i) negative += eig.eigenvalues()[i] < 0.0;
  if (negative == 0) return Signature::kRiemannian;
  if (negative == 1) return Signature::kLorentzian;
  throw Error(ErrorCode::kDegenerateMetric,
              "metric has " + std::to_string(negative) +
                  " negative directions; expected 0 or 1");
}

// Columns E1, E2, E3, S E1, S E2, S E3: a real basis of Lambda^2 adapted to
// the complex structure.
Matrix6 complex_frame(const HodgeStar& star_l) {
  Matrix6 q;
  q.leftCols<3>() = Matrix6::Identity().leftCols<3>();
  q.rightCols<3>() = star_l.matrix.leftCols<3>();
  return q;
}

}  // namespace

HodgeStar hodge_star(const Matrix4& metric, int orientation_sign) {
  if (orientation_sign != 1 && orientation_sign != -1) {
    throw Error(ErrorCode::kPrecondition, "orientation_sign must be +1 or -1");
  }
  const BivectorBasis basis(4);
  HodgeStar star;
  star.signature = classify_signature(metric);
  star.gram = induced_gram(metric, basis);
  const double volume = std::sqrt(std::abs(metric.determinant()));
  // V S = G / sqrt|det g|, and V is its own inverse in the canonical order.
  const Matrix6 v = volume_pairing();
  star.matrix = (orientation_sign / volume) * (v * star.gram);
  return star;
}

Matrix4 lorentz_metric_from_unit(const Matrix4& g, const Vector4& t,
                                 double tol) {
  const double norm = t.dot(g * t);
  if (std::abs(norm - 1.0) > tol) {
    std::ostringstream os;
    os << "vector field is not g-unit: g(T,T) = " << norm;
    throw Error(ErrorCode::kNonUnitVector, os.str());
  }
  const Vector4 flat = g * t;
  return g - 2.0 * flat * flat.transpose();
}

Matrix6 SdAsdBasis::as_matrix() const {
  Matrix6 m;
  for (int i = 0; i < 3; ++i) {
    m.col(i) = plus[i];
    m.col(i + 3) = minus[i];
  }
  return m;
}

SdAsdBasis sd_asd_basis(const HodgeStar& star) {
  if (star.signature != Signature::kRiemannian) {
    throw Error(ErrorCode::kPrecondition,
                "self-dual splitting needs a Riemannian star");
  }
  // Project canonical basis elements onto the +-1 eigenspaces and
  // Gram-Schmidt in the induced scalar product. For the standard star this
  // reproduces (E_i +- E_{i+3}) / sqrt(2).
  auto build = [&](double sign) {
    const Matrix6 projector =
        0.5 * (Matrix6::Identity() + sign * star.matrix);
    std::array<Bivector, 3> out;
    int found = 0;
    for (int a = 0; a < 6 && found < 3; ++a) {
      Bivector v = projector.col(a);
      for (int k = 0; k < found; ++k) v -= out[k].dot(star.gram * v) * out[k];
      const double len2 = v.dot(star.gram * v);
      if (len2 <= 1e-10) continue;
      out[found++] = v / std::sqrt(len2);
    }
    if (found < 3) {
      throw Error(ErrorCode::kPrecondition,
                  "star eigenspace is not three-dimensional");
    }
    return out;
  };
  return SdAsdBasis{build(1.0), build(-1.0)};
}

double relative_commutator(const Matrix6& op, const Matrix6& star) {
  const double norm = op.norm();
  if (norm == 0.0) return 0.0;
  return (op * star - star * op).norm() / norm;
}

Matrix3c complexify(const Matrix6& op, const HodgeStar& star_l, double tol) {
  if (star_l.signature != Signature::kLorentzian) {
    throw Error(ErrorCode::kPrecondition,
                "complexify needs a Lorentzian star (star^2 = -1)");
  }
  const double residual = relative_commutator(op, star_l.matrix);
  if (residual > tol) {
    std::ostringstream os;
    os << "operator does not commute with *_L: relative residual " << residual
       << " > " << tol;
    throw Error(ErrorCode::kNotComplexLinear, os.str());
  }
  const Matrix6 q = complex_frame(star_l);
  Eigen::FullPivLU<Matrix6> lu(q);
  if (!lu.isInvertible()) {
    throw Error(ErrorCode::kPrecondition,
                "e1^e2, e1^e3, e1^e4 do not span over C for this metric");
  }
  // Coordinates (x; y) of op*E_a in the basis (E_b, S E_b) give column a as
  // x + i y.
  const Eigen::Matrix<double, 6, 3> coords = lu.solve(op.leftCols<3>());
  Matrix3c c;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      c(b, a) = std::complex<double>(coords(b, a), coords(b + 3, a));
  return c;
}

Matrix3c complexify(const Lambda2Operator& op, const HodgeStar& star_l,
                    double tol) {
  if (op.matrix.rows() != 6 || op.matrix.cols() != 6) {
    throw Error(ErrorCode::kDimension, "complexify requires a 6x6 operator");
  }
  return complexify(Matrix6(op.matrix), star_l, tol);
}

Bivector realify(const Eigen::Vector3cd& z, const HodgeStar& star_l) {
  const Matrix6 q = complex_frame(star_l);
  Eigen::Matrix<double, 6, 1> coords;
  coords << z.real(), z.imag();
  return q * coords;
}

Eigen::Vector3cd complex_coordinates(const Bivector& xi,
                                     const HodgeStar& star_l) {
  const Matrix6 q = complex_frame(star_l);
  const Eigen::Matrix<double, 6, 1> coords = q.fullPivLu().solve(
      Eigen::Matrix<double, 6, 1>(xi));
  Eigen::Vector3cd z;
  for (int b = 0; b < 3; ++b) z[b] = {coords[b], coords[b + 3]};
  return z;
}

}  // namespace curvnf
