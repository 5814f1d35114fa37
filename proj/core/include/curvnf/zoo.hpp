#pragma once

#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "curvnf/hodge.hpp"
#include "curvnf/sample.hpp"

namespace curvnf {

using SampleSink = std::function<void(const PointSample&)>;

enum class GridKind { kSphere, kTorus };

/// Midpoint grid with `nodes` cells per chart axis. Spheres use
/// hyperspherical angles (theta_1..theta_{n-1} in [0, pi], phi in [0, 2 pi))
/// with exact cell volumes; tori are cubes of side `side` with identified
/// faces.
struct GridSpec {
  GridKind kind = GridKind::kSphere;
  int nodes = 20;
  double side = 1.0;  // torus only
};

/// Closed-form volume: sphere of curvature kappa, or side^dim for a torus.
double grid_volume(int dim, double kappa, const GridSpec& grid);

/// Constant-curvature samples in orthonormal frames (g = I). Spheres need
/// kappa > 0 (radius 1/sqrt(kappa)), tori need kappa = 0. Throws
/// kInvalidGrid otherwise, and for nodes < 1, side <= 0 or dim < 3.
void gen_space_form(int dim, double kappa, const GridSpec& grid,
                    const SampleSink& sink);
std::vector<PointSample> gen_space_form(int dim, double kappa,
                                        const GridSpec& grid);

/// S^2(a) x S^2(b) in orthonormal frames with R_1212 = -1/a^2,
/// R_3434 = -1/b^2. When h_scale is given, h = diag(1, 1, s, s); the
/// product is *h-Einstein exactly for s = a/b.
void gen_product_spheres(double a, double b, int nodes,
                         std::optional<double> h_scale, const SampleSink& sink);
std::vector<PointSample> gen_product_spheres(double a, double b, int nodes,
                                             std::optional<double> h_scale = {});

/// Normal-form tensor with the given lambdas, mus in the frame
/// e_i = R diag(h)^{-1/2} u_i, with h = R diag(h_diag) R^T and
/// g = R diag(g_diag) R^T, so the frame is h-orthonormal and g-orthogonal.
/// Throws kBianchiViolation unless sum(mus) = 0 and kPrecondition unless
/// R is a rotation and the diagonals are positive.
PointSample gen_synthetic_star_h(const Eigen::Vector3d& lambdas,
                                 const Eigen::Vector3d& mus,
                                 const Eigen::Vector4d& h_diag,
                                 const Eigen::Vector4d& g_diag,
                                 const Matrix4& rotation);

/// Same pattern in an arbitrary h-orthonormal frame (columns) and metric g.
PointSample synthetic_star_h_in_frame(const Eigen::Vector3d& lambdas,
                                      const Eigen::Vector3d& mus,
                                      const Matrix4& frame, const Matrix4& g);

/// Curvature whose via_g matrix in `frame` (columns, any positively oriented
/// basis) is [[A, B], [B, -A]]. The sample metric is the one making the frame
/// orthonormal, g = F^{-T} F^{-1}, and T is the first frame vector. The
/// component table is projected onto the first-Bianchi subspace and the
/// blocks are re-checked; a change beyond 1e-12 * max(1, |blocks|) throws
/// kBianchiProjection.
PointSample gen_synthetic_star_l(const Eigen::Matrix3d& a,
                                 const Eigen::Matrix3d& b,
                                 const Matrix4& frame = Matrix4::Identity());

/// Sets h = g + f (gT)(gT)^T from the sample's unit field T. No choice of f
/// is assumed to make the result *h-Einstein. Throws kPrecondition without T
/// or for f <= -1 (h would not be positive definite).
PointSample with_h_deformation(PointSample sample, double f);

/// Uniformly distributed rotation of R^4 with determinant +1.
Matrix4 random_rotation(std::mt19937_64& rng);

}  // namespace curvnf
