#pragma once

#include <array>
#include <optional>
#include <vector>

#include "curvnf/curvature.hpp"

namespace curvnf {

/// Values of the orthogonal-frame form: lambda~, kappa~, mu~ and c_i with
/// {c_i e_i} g-orthonormal.
struct ScaledValues {
  Eigen::Vector4d c;
  Eigen::Vector3d lambda;
  Eigen::Vector3d kappa;
  Eigen::Vector3d mu;
};

/// An h-orthonormal, positively oriented frame e1..e4 (columns, sample
/// coordinates) in which
///   R_1212 = R_3434 = lambda1, R_1313 = R_4242 = lambda2,
///   R_1414 = R_2323 = lambda3, R_3412 = mu1, R_4213 = mu2, R_2314 = mu3
/// and every other independent component vanishes.
struct NormalForm4 {
  Eigen::Matrix4d frame;
  Eigen::Vector3d lambdas;
  Eigen::Vector3d mus;
  double residual = 0.0;  // largest off-pattern / mismatch component
  std::optional<ScaledValues> scaled;
};

/// Extracts the normal form of an *h-Einstein tensor. Pairs the ascending
/// eigenvalues of R_h on Lambda+ with the ascending eigenvalues on Lambda-;
/// pairs are then sorted by (lambda, mu).
///
/// Throws kPrecondition when R_h does not commute with *_h within tol, and
/// kFrameReconstruction when the rebuilt frame misses the pattern by more
/// than max(tol, 1e-8) * max(1, |R|).
NormalForm4 normal_form_4(const CurvatureTensor& rm, const Eigen::Matrix4d& h,
                          double tol = 1e-9);

/// Every normal form of the tensor, one per pairing of the Lambda+ and
/// Lambda- eigenvalues (six, fewer when eigenvalues repeat). The tensor
/// determines only the eigenvalues lambda_i + mu_i and lambda_i - mu_i, so
/// each pairing is an equally valid normal form.
std::vector<NormalForm4> normal_form_4_candidates(const CurvatureTensor& rm,
                                                  const Eigen::Matrix4d& h,
                                                  double tol = 1e-9);

/// Among the candidates, the one whose frame is closest to g-orthogonal,
/// with its scaled values filled in. Throws kNonOrthogonalFrame when no
/// candidate frame is g-orthogonal within tol (relative to the diagonal).
NormalForm4 orthogonal_normal_form(const CurvatureTensor& rm,
                                   const Eigen::Matrix4d& h,
                                   const Eigen::Matrix4d& g,
                                   double tol = 1e-9);

/// Fills in c_i = 1/sqrt(g(e_i,e_i)) and
///   lambda~ = (c1^2 c2^2 l1, c1^2 c3^2 l2, c1^2 c4^2 l3),
///   kappa~  = (c3^2 c4^2 l1, c2^2 c4^2 l2, c2^2 c3^2 l3),
///   mu~     = c1 c2 c3 c4 mu.
/// Throws kNonOrthogonalFrame when an off-diagonal g(e_i,e_j) exceeds
/// tol * max_i g(e_i,e_i).
NormalForm4 scaled_normal_form(const NormalForm4& nf, const Eigen::Matrix4d& g,
                               double tol = 1e-9);

/// Component tensor of the normal-form pattern in its own frame.
CurvatureTensor normal_form_tensor(const Eigen::Vector3d& lambdas,
                                   const Eigen::Vector3d& mus);

/// The operator R_h in the sample frame, rebuilt from a normal form.
Lambda2Operator rebuild_operator(const NormalForm4& nf,
                                 const Eigen::Matrix4d& h);

/// Inputs of the mu1 recovery formula; a_ij is the critical value at
/// P_ij = (P_i + *P_i + P_j - *P_j) / 2.
struct CriticalValues {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double a12 = 0.0;
  double a13 = 0.0;
  double a32 = 0.0;
};

/// mu1 = a12 + a13/3 - a32/3 - 2 lambda1/3 - lambda2/3.
double recover_mu1(const CriticalValues& v);

/// a_ij = ((lambda_i + lambda_j) + (mu_i - mu_j)) / 2, 0-based indices.
double mixed_critical_value(const Eigen::Vector3d& lambdas,
                            const Eigen::Vector3d& mus, int i, int j);

}  // namespace curvnf
