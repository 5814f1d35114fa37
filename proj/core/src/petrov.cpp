#include "curvnf/petrov.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>
#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include "curvnf/error.hpp"
#include "curvnf/frame.hpp"

namespace curvnf {

namespace {

using cd = std::complex<double>;

Matrix4 lorentz_standard() {
  Matrix4 gl = Matrix4::Identity();
  gl(0, 0) = -1.0;
  return gl;
}

// Operator R_L and the star of g_L in a g-orthonormal frame with e1 = t.
struct LorentzData {
  Lambda2Operator op;
  HodgeStar star;
};

LorentzData lorentz_data(const CurvatureTensor& rm, const Matrix& g,
                         const Vector& t) {
  if (rm.dim() != 4) {
    throw Error(ErrorCode::kDimension, "complex classification needs dim 4");
  }
  const CurvatureTensor local = rm.in_frame(adapted_frame(g, t));
  if (local.max_abs() == 0.0) {
    throw Error(ErrorCode::kFlatTensor,
                "curvature vanishes; the complex normal form needs a non-flat "
                "tensor");
  }
  const Matrix4 gl = lorentz_standard();
  return {operator_from(local, gl, OperatorKind::kViaLorentz), hodge_star(gl)};
}

int find_root(std::array<int, 3>& parent, int i) {
  while (parent[i] != i) i = parent[i] = parent[parent[i]];
  return i;
}

}  // namespace

std::string format_count(int count) {
  return count == kInfiniteCount ? "infinite" : std::to_string(count);
}

int expected_critical_count(int case_id) {
  switch (case_id) {
    case 1: return 3;
    case 2: return kInfiniteCount;
    case 3: return 1;
    case 4: return 0;
  }
  throw Error(ErrorCode::kPrecondition, "case id must be 1..4");
}

ComplexNormalForm classify_matrix(const Matrix3c& c, double cluster_tol) {
  ComplexNormalForm out;
  out.matrix = c;
  Eigen::ComplexEigenSolver<Matrix3c> es(c);
  const Eigen::Vector3cd z = es.eigenvalues();
  Matrix3c x = es.eigenvectors();
  for (int i = 0; i < 3; ++i) x.col(i).normalize();

  const double radius = z.cwiseAbs().maxCoeff();
  const double norm2 = Eigen::JacobiSVD<Matrix3c>(c).singularValues()[0];
  const double tau = cluster_tol * std::max({1.0, radius, norm2});
  out.cluster_tolerance = tau;

  // Condition number of z_i is |y_i| |x_i| / |y_i^H x_i| with y_i the left
  // eigenvector, i.e. the row norm of X^{-1} for unit columns.
  std::array<double, 3> kappa;
  Eigen::FullPivLU<Matrix3c> lu(x);
  if (lu.isInvertible()) {
    const Matrix3c y = lu.inverse();
    for (int i = 0; i < 3; ++i) kappa[i] = y.row(i).norm();
  } else {
    kappa.fill(1.0 / std::numeric_limits<double>::epsilon());
  }

  std::array<int, 3> parent{0, 1, 2};
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (std::abs(z[i] - z[j]) <= tau * std::min(kappa[i], kappa[j])) {
        parent[find_root(parent, i)] = find_root(parent, j);
      }

  for (int root = 0; root < 3; ++root) {
    std::vector<int> members;
    for (int i = 0; i < 3; ++i)
      if (find_root(parent, i) == root) members.push_back(i);
    if (members.empty()) continue;
    ComplexEigenvalue e;
    e.algebraic = static_cast<int>(members.size());
    double spread = 0.0;
    for (int i : members) e.value += z[i];
    e.value /= static_cast<double>(members.size());
    for (int i : members) {
      spread = std::max(spread, std::abs(z[i] - e.value));
      e.condition = std::max(e.condition, kappa[i]);
    }
    const Eigen::Vector3d sv =
        Eigen::JacobiSVD<Matrix3c>(c - e.value * Matrix3c::Identity())
            .singularValues();
    const double rank_tol = std::max(tau, 10.0 * spread);
    int small = 0;
    for (int k = 0; k < 3; ++k) small += sv[k] <= rank_tol;
    e.geometric = std::clamp(small, 1, e.algebraic);
    out.eigenvalues.push_back(e);
  }
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(),
            [](const ComplexEigenvalue& a, const ComplexEigenvalue& b) {
              return a.value.real() != b.value.real()
                         ? a.value.real() < b.value.real()
                         : a.value.imag() < b.value.imag();
            });

  const auto& ev = out.eigenvalues;
  const bool degenerate_space = std::any_of(
      ev.begin(), ev.end(), [](const auto& e) { return e.geometric > 1; });
  if (ev.size() == 3) {
    out.case_id = 1;
  } else if (degenerate_space) {
    out.case_id = 2;
  } else if (ev.size() == 2) {
    out.case_id = 3;
  } else {
    out.case_id = 4;
  }
  out.spacelike_critical_count = expected_critical_count(out.case_id);
  return out;
}

ComplexNormalForm classify_complex(const CurvatureTensor& rm, const Matrix& g,
                                   const Vector& t, double tol,
                                   double cluster_tol) {
  const LorentzData data = lorentz_data(rm, g, t);
  return classify_matrix(complexify(data.op, data.star, tol), cluster_tol);
}

namespace {

// Spacelike plane from chart parameters (w1, w2, s1, s2): W is the image of
// span{e2, e3} under the spatial rotation exp([w]x) with w = (w1, w2, 0),
// and phi has components s / sqrt(1 + |s|^2) along that basis.
Bivector chart_plane(const Eigen::VectorXd& x, const BivectorBasis& basis) {
  const Eigen::Vector3d w(x[0], x[1], 0.0);
  const double angle = w.norm();
  const Eigen::Matrix3d rot =
      angle > 0.0 ? Eigen::AngleAxisd(angle, w / angle).toRotationMatrix()
                  : Eigen::Matrix3d::Identity();
  const Eigen::Vector2d s(x[2], x[3]);
  const double root = std::sqrt(1.0 + s.squaredNorm());
  const Eigen::Vector2d c = s / root;
  Vector v1(4), v2(4);
  v1 << c[0], rot.col(0);
  v2 << c[1], rot.col(1);
  // <v1^v2, v1^v2>_L = 1 - |c|^2 = 1 / (1 + |s|^2).
  return wedge(v1, v2, basis) * root;
}

struct Fit {
  double a = 0.0, b = 0.0;
  Bivector remainder;
};

Fit fit_plane(const Matrix& op, const Matrix& star, const Bivector& p) {
  Matrix x(6, 2);
  x.col(0) = p;
  x.col(1) = star * p;
  const Bivector y = op * p;
  const Eigen::Vector2d coef =
      (x.transpose() * x).ldlt().solve(x.transpose() * y);
  return {coef[0], coef[1], y - x * coef};
}

struct ChartResidual {
  using Scalar = double;
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;
  enum {
    InputsAtCompileTime = Eigen::Dynamic,
    ValuesAtCompileTime = Eigen::Dynamic
  };

  const Matrix* op = nullptr;
  const Matrix* star = nullptr;
  const BivectorBasis* basis = nullptr;
  double scale = 1.0;

  int inputs() const { return 4; }
  int values() const { return 6; }
  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& f) const {
    f = fit_plane(*op, *star, chart_plane(x, *basis)).remainder / scale;
    return 0;
  }
};

double halton(int index, int base) {
  double f = 1.0, r = 0.0;
  for (int i = index; i > 0; i /= base) {
    f /= base;
    r += f * (i % base);
  }
  return r;
}

double line_distance(const Eigen::Vector3cd& z1, const Eigen::Vector3cd& z2) {
  const double overlap = std::norm(z1.dot(z2));
  return 1.0 - overlap / (z1.squaredNorm() * z2.squaredNorm());
}

}  // namespace

SpacelikeSearch count_spacelike_critical(const CurvatureTensor& rm,
                                         const Matrix& g, const Vector& t,
                                         double tol,
                                         const SearchOptions& options) {
  const LorentzData data = lorentz_data(rm, g, t);
  const double commutator = relative_commutator(data.op.matrix, data.star.matrix);
  if (commutator > tol) {
    std::ostringstream os;
    os << "operator does not commute with *_L: relative residual "
       << commutator;
    throw Error(ErrorCode::kNotComplexLinear, os.str());
  }
  const BivectorBasis basis(4);
  const Matrix op = data.op.matrix;
  const Matrix star = data.star.matrix;
  ChartResidual functor;
  functor.op = &op;
  functor.star = &star;
  functor.basis = &basis;
  functor.scale = op.norm();

  SpacelikeSearch out;
  out.starts = options.starts;
  for (int s = 0; s < options.starts; ++s) {
    Eigen::VectorXd x(4);
    x << (2.0 * halton(s + 1, 2) - 1.0) * 1.6,
        (2.0 * halton(s + 1, 3) - 1.0) * 1.6,
        (2.0 * halton(s + 1, 5) - 1.0) * 2.0,
        (2.0 * halton(s + 1, 7) - 1.0) * 2.0;
    Eigen::NumericalDiff<ChartResidual, Eigen::Central> numeric(functor);
    Eigen::LevenbergMarquardt<decltype(numeric)> lm(numeric);
    lm.parameters.maxfev = 600;
    lm.parameters.xtol = 1e-14;
    lm.parameters.ftol = 1e-16;
    lm.minimize(x);

    const Bivector p = chart_plane(x, basis);
    const Fit f = fit_plane(op, star, p);
    const double residual = f.remainder.norm() / functor.scale;
    const double nondegenerate = p.dot(data.op.gram * p) / p.squaredNorm();
    if (!(residual <= options.accept) || nondegenerate < options.nondegenerate) {
      continue;
    }
    ++out.converged;
    const Eigen::Vector3cd z = complex_coordinates(p, data.star).normalized();
    auto it = std::find_if(out.planes.begin(), out.planes.end(), [&](auto& c) {
      return line_distance(c.line, z) <= options.dedup;
    });
    if (it != out.planes.end()) {
      ++it->hits;
      continue;
    }
    out.planes.push_back({p, z, f.a, f.b, residual, 1});
  }
  const int lines = static_cast<int>(out.planes.size());
  out.count = lines > 3 ? kInfiniteCount : lines;
  return out;
}

StarLBlocks blocks_from_complex(const Matrix3c& c) {
  const double asym = (c - c.transpose()).norm();
  if (asym > 1e-12 * std::max(1.0, c.norm())) {
    std::ostringstream os;
    os << "complex matrix is not symmetric (||C - C^T|| = " << asym << ")";
    throw Error(ErrorCode::kPrecondition, os.str());
  }
  const Matrix3c shifted =
      c - cd(0.0, c.trace().imag() / 3.0) * Matrix3c::Identity();
  StarLBlocks out;
  out.a = -shifted.real();
  out.b = -shifted.imag();
  out.a = 0.5 * (out.a + out.a.transpose()).eval();
  out.b = 0.5 * (out.b + out.b.transpose()).eval();
  return out;
}

Matrix3c random_case_matrix(int case_id, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  std::normal_distribution<double> normal(0.0, 0.3);
  auto draw = [&] { return cd(uniform(rng), uniform(rng)); };
  auto distinct = [&](int count) {
    std::vector<cd> z;
    while (static_cast<int>(z.size()) < count) {
      const cd candidate = draw();
      if (std::all_of(z.begin(), z.end(), [&](cd w) {
            return std::abs(w - candidate) >= 0.3;
          })) {
        z.push_back(candidate);
      }
    }
    return z;
  };
  auto coefficient = [&] {
    const double r = 0.5 + 0.5 * (uniform(rng) + 1.0);
    const double phase = M_PI * uniform(rng);
    return std::polar(r, phase);
  };

  const cd i(0.0, 1.0);
  Matrix3c d = Matrix3c::Zero();
  switch (case_id) {
    case 1: {
      const auto z = distinct(3);
      d.diagonal() << z[0], z[1], z[2];
      break;
    }
    case 2: {
      const auto z = distinct(2);
      if (uniform(rng) < 0.0) {
        d.diagonal() << z[0], z[0], z[1];
      } else {
        // Jordan pair plus a third eigenvector for the same eigenvalue.
        const cd k = coefficient();
        d << z[0] + k, k * i, 0.0, k * i, z[0] - k, 0.0, 0.0, 0.0, z[0];
      }
      break;
    }
    case 3: {
      const auto z = distinct(2);
      const cd k = coefficient();
      d << z[0] + k, k * i, 0.0, k * i, z[0] - k, 0.0, 0.0, 0.0, z[1];
      break;
    }
    case 4: {
      const cd z = draw();
      const cd k = coefficient();
      d << z, k, 0.0, k, z, k * i, 0.0, k * i, z;
      break;
    }
    default:
      throw Error(ErrorCode::kPrecondition, "case id must be 1..4");
  }
  Matrix3c skew = Matrix3c::Zero();
  for (int r = 0; r < 3; ++r)
    for (int c = r + 1; c < 3; ++c) {
      skew(r, c) = cd(normal(rng), normal(rng));
      skew(c, r) = -skew(r, c);
    }
  const Matrix3c q = skew.exp();
  return q * d * q.transpose();
}

}  // namespace curvnf
