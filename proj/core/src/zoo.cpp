#include "curvnf/zoo.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/SVD>

#include "curvnf/error.hpp"
#include "curvnf/normal_form4.hpp"

namespace curvnf {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Antiderivative of sin^m.
double sin_power_integral(int m, double x) {
  if (m == 0) return x;
  if (m == 1) return -std::cos(x);
  return -std::pow(std::sin(x), m - 1) * std::cos(x) / m +
         (m - 1.0) / m * sin_power_integral(m - 2, x);
}

void check_grid(int dim, const GridSpec& grid) {
  if (dim < 3) throw Error(ErrorCode::kInvalidGrid, "grid dimension must be >= 3");
  if (grid.nodes < 1) throw Error(ErrorCode::kInvalidGrid, "grid needs >= 1 node per axis");
  if (grid.kind == GridKind::kTorus && !(grid.side > 0.0)) {
    throw Error(ErrorCode::kInvalidGrid, "torus side must be positive");
  }
}

// Odometer over nodes^count cells, last axis fastest.
bool advance(std::vector<int>& index, int nodes) {
  for (int a = static_cast<int>(index.size()) - 1; a >= 0; --a) {
    if (++index[a] < nodes) return true;
    index[a] = 0;
  }
  return false;
}

std::vector<PointSample> collect(
    const std::function<void(const SampleSink&)>& generate) {
  std::vector<PointSample> out;
  generate([&](const PointSample& s) { out.push_back(s); });
  return out;
}

}  // namespace

double grid_volume(int dim, double kappa, const GridSpec& grid) {
  check_grid(dim, grid);
  if (grid.kind == GridKind::kTorus) return std::pow(grid.side, dim);
  const double r = 1.0 / std::sqrt(kappa);
  return 2.0 * std::pow(kPi, 0.5 * (dim + 1)) / std::tgamma(0.5 * (dim + 1)) *
         std::pow(r, dim);
}

void gen_space_form(int dim, double kappa, const GridSpec& grid,
                    const SampleSink& sink) {
  check_grid(dim, grid);
  if (grid.kind == GridKind::kSphere && !(kappa > 0.0)) {
    throw Error(ErrorCode::kInvalidGrid, "sphere grids need kappa > 0");
  }
  if (grid.kind == GridKind::kTorus && kappa != 0.0) {
    throw Error(ErrorCode::kInvalidGrid, "flat tori need kappa = 0");
  }
  const int n = grid.nodes;
  PointSample sample;
  sample.dim = dim;
  sample.g = Matrix::Identity(dim, dim);
  sample.rm = components_of(space_form(dim, kappa));
  sample.coords.assign(dim, 0.0);

  // Per-axis cell centres and weight factors.
  std::vector<std::vector<double>> centre(dim), factor(dim);
  for (int a = 0; a < dim; ++a) {
    const bool angle = grid.kind == GridKind::kSphere && a < dim - 1;
    const double length = grid.kind == GridKind::kTorus ? grid.side
                          : angle                       ? kPi
                                                        : 2.0 * kPi;
    const double step = length / n;
    for (int c = 0; c < n; ++c) {
      const double lo = c * step, hi = (c + 1) * step;
      centre[a].push_back(0.5 * (lo + hi));
      if (angle) {
        // theta_{a+1} carries sin^{dim-1-a}.
        const int m = dim - 1 - a;
        factor[a].push_back(sin_power_integral(m, hi) -
                            sin_power_integral(m, lo));
      } else {
        factor[a].push_back(step);
      }
    }
  }
  const double radius_power =
      grid.kind == GridKind::kSphere ? std::pow(kappa, -0.5 * dim) : 1.0;

  std::vector<int> index(dim, 0);
  do {
    double w = radius_power;
    for (int a = 0; a < dim; ++a) {
      w *= factor[a][index[a]];
      sample.coords[a] = centre[a][index[a]];
    }
    sample.weight = w;
    sink(sample);
  } while (advance(index, n));
}

std::vector<PointSample> gen_space_form(int dim, double kappa,
                                        const GridSpec& grid) {
  return collect([&](const SampleSink& s) { gen_space_form(dim, kappa, grid, s); });
}

void gen_product_spheres(double a, double b, int nodes,
                         std::optional<double> h_scale,
                         const SampleSink& sink) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw Error(ErrorCode::kInvalidGrid, "sphere radii must be positive");
  }
  if (nodes < 1) throw Error(ErrorCode::kInvalidGrid, "grid needs >= 1 node per axis");
  if (h_scale && !(*h_scale > 0.0)) {
    throw Error(ErrorCode::kPrecondition, "h scale must be positive");
  }
  CurvatureTensor rm(4);
  rm.set(0, 1, 0, 1, -1.0 / (a * a));
  rm.set(2, 3, 2, 3, -1.0 / (b * b));
  PointSample sample;
  sample.dim = 4;
  sample.g = Matrix::Identity(4, 4);
  if (h_scale) {
    Matrix h = Matrix::Identity(4, 4);
    h(2, 2) = h(3, 3) = *h_scale;
    sample.h = h;
  }
  sample.rm = components_of(rm);
  sample.coords.assign(4, 0.0);

  const double dtheta = kPi / nodes, dphi = 2.0 * kPi / nodes;
  std::vector<double> band(nodes);
  for (int c = 0; c < nodes; ++c) {
    band[c] = std::cos(c * dtheta) - std::cos((c + 1) * dtheta);
  }
  std::vector<int> index(4, 0);
  do {
    sample.coords = {(index[0] + 0.5) * dtheta, (index[1] + 0.5) * dphi,
                     (index[2] + 0.5) * dtheta, (index[3] + 0.5) * dphi};
    sample.weight = a * a * b * b * band[index[0]] * band[index[2]] * dphi * dphi;
    sink(sample);
  } while (advance(index, nodes));
}

std::vector<PointSample> gen_product_spheres(double a, double b, int nodes,
                                             std::optional<double> h_scale) {
  return collect([&](const SampleSink& s) {
    gen_product_spheres(a, b, nodes, h_scale, s);
  });
}

PointSample synthetic_star_h_in_frame(const Eigen::Vector3d& lambdas,
                                      const Eigen::Vector3d& mus,
                                      const Matrix4& frame, const Matrix4& g) {
  const double scale =
      std::max({1.0, lambdas.cwiseAbs().maxCoeff(), mus.cwiseAbs().maxCoeff()});
  if (std::abs(mus.sum()) > 1e-12 * scale) {
    std::ostringstream os;
    os << "mu1 + mu2 + mu3 = " << mus.sum()
       << " violates the first Bianchi identity (R_1234 + R_1342 + R_1423)";
    throw Error(ErrorCode::kBianchiViolation, os.str());
  }
  Eigen::FullPivLU<Matrix4> lu(frame);
  if (!lu.isInvertible()) {
    throw Error(ErrorCode::kPrecondition, "frame is singular");
  }
  const Matrix4 inverse = lu.inverse();
  PointSample s;
  s.dim = 4;
  s.g = g;
  s.h = Matrix(inverse.transpose() * inverse);
  s.rm = components_of(normal_form_tensor(lambdas, mus).in_frame(inverse));
  return s;
}

PointSample gen_synthetic_star_h(const Eigen::Vector3d& lambdas,
                                 const Eigen::Vector3d& mus,
                                 const Eigen::Vector4d& h_diag,
                                 const Eigen::Vector4d& g_diag,
                                 const Matrix4& rotation) {
  if ((h_diag.array() <= 0.0).any() || (g_diag.array() <= 0.0).any()) {
    throw Error(ErrorCode::kPrecondition, "metric diagonals must be positive");
  }
  if ((rotation.transpose() * rotation - Matrix4::Identity()).cwiseAbs().maxCoeff() >
          1e-12 ||
      rotation.determinant() < 0.0) {
    throw Error(ErrorCode::kPrecondition, "frame_rotation must be in SO(4)");
  }
  const Matrix4 frame =
      rotation * Eigen::Vector4d(h_diag.cwiseSqrt().cwiseInverse()).asDiagonal();
  const Matrix4 g = rotation * g_diag.asDiagonal() * rotation.transpose();
  PointSample s = synthetic_star_h_in_frame(lambdas, mus, frame, g);
  s.h = Matrix(rotation * h_diag.asDiagonal() * rotation.transpose());
  return s;
}

PointSample gen_synthetic_star_l(const Eigen::Matrix3d& a,
                                 const Eigen::Matrix3d& b,
                                 const Matrix4& frame) {
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 0.0 ||
      (b - b.transpose()).cwiseAbs().maxCoeff() > 0.0) {
    throw Error(ErrorCode::kPrecondition, "blocks A and B must be symmetric");
  }
  if (!(frame.determinant() > 0.0) ||
      frame.jacobiSvd().singularValues().minCoeff() <
          1e-12 * frame.cwiseAbs().maxCoeff()) {
    throw Error(ErrorCode::kPrecondition,
                "frame must be invertible and positively oriented");
  }
  Matrix6 target;
  target << a, b, b, -a;
  const BivectorBasis basis(4);
  CurvatureTensor local(4);
  for (int p = 0; p < 6; ++p)
    for (int q = p; q < 6; ++q)
      local.set(basis[p].first, basis[p].second, basis[q].first,
                basis[q].second, target(p, q));

  // The only first-Bianchi constraint in dimension four is the cyclic sum
  // R_1234 + R_1342 + R_1423; remove its share of the Levi-Civita tensor.
  const double cyclic =
      (local(0, 1, 2, 3) + local(0, 2, 3, 1) + local(0, 3, 1, 2)) / 3.0;
  local.set(0, 1, 2, 3, local(0, 1, 2, 3) - cyclic);
  local.set(0, 2, 3, 1, local(0, 2, 3, 1) - cyclic);
  local.set(0, 3, 1, 2, local(0, 3, 1, 2) - cyclic);

  const double change =
      (local.bilinear_form(basis) - Matrix(target)).cwiseAbs().maxCoeff();
  const double limit = 1e-12 * std::max(1.0, target.cwiseAbs().maxCoeff());
  if (change > limit) {
    std::ostringstream os;
    os << "Bianchi projection changed the requested blocks by " << change
       << " (tr B = " << b.trace() << " must vanish)";
    throw Error(ErrorCode::kBianchiProjection, os.str());
  }

  // Components in sample coordinates: frame vectors are the columns, so the
  // coordinate vectors are the columns of frame^{-1} in the frame.
  const Matrix4 inverse = frame.inverse();
  PointSample s;
  s.dim = 4;
  s.g = Matrix(inverse.transpose() * inverse);
  s.t = Vector(frame.col(0));
  s.rm = components_of(local.in_frame(inverse));
  return s;
}

PointSample with_h_deformation(PointSample sample, double f) {
  if (!sample.t) throw Error(ErrorCode::kPrecondition, "h deformation needs a T field");
  if (!(f > -1.0)) throw Error(ErrorCode::kPrecondition, "h deformation needs f > -1");
  const Vector flat = sample.g * *sample.t;
  sample.h = sample.g + f * flat * flat.transpose();
  return sample;
}

Matrix4 random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = normal(rng);
  Eigen::HouseholderQR<Matrix4> qr(m);
  Matrix4 q = qr.householderQ();
  const Matrix4 r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < 4; ++i)
    if (r(i, i) < 0.0) q.col(i) *= -1.0;
  if (q.determinant() < 0.0) q.col(3) *= -1.0;
  return q;
}

}  // namespace curvnf
