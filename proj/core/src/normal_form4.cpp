#include "curvnf/normal_form4.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "curvnf/error.hpp"
#include "curvnf/frame.hpp"
#include "curvnf/hodge.hpp"

namespace curvnf {

namespace {

using Matrix3 = Eigen::Matrix3d;
using Vector3 = Eigen::Vector3d;

struct Spectra {
  Eigen::Matrix4d h_frame;  // h-orthonormal frame used for the eigenproblem
  Vector3 alpha, beta;      // ascending eigenvalues on Lambda+ and Lambda-
  Matrix3 u, v;             // eigenvectors in the xi+ / xi- bases
  double scale = 0.0;
};

Spectra spectra(const CurvatureTensor& rm, const Eigen::Matrix4d& h,
                double tol) {
  if (rm.dim() != 4) {
    throw Error(ErrorCode::kDimension, "normal_form_4 requires dimension 4");
  }
  Spectra s;
  s.h_frame = orthonormal_frame(h);
  const Matrix6 m =
      rm.in_frame(s.h_frame).bilinear_form(BivectorBasis(4));
  const Matrix6 star = hodge_star(Matrix4::Identity()).matrix;
  const double norm = m.norm();
  const double commutator = (m * star - star * m).norm();
  if (commutator > tol * norm) {
    std::ostringstream os;
    os << "tensor is not *h-Einstein: ||[R_h, *_h]|| / ||R_h|| = "
       << commutator / norm;
    throw Error(ErrorCode::kPrecondition, os.str());
  }
  s.scale = rm.max_abs();
  const Matrix3 a =
      0.5 * (m.topLeftCorner<3, 3>() + m.bottomRightCorner<3, 3>());
  const Matrix3 b =
      0.5 * (m.topRightCorner<3, 3>() + m.bottomLeftCorner<3, 3>());
  Eigen::SelfAdjointEigenSolver<Matrix3> plus(a + b);
  Eigen::SelfAdjointEigenSolver<Matrix3> minus(a - b);
  s.alpha = plus.eigenvalues();
  s.beta = minus.eigenvalues();
  s.u = plus.eigenvectors();
  s.v = minus.eigenvectors();
  return s;
}

Matrix6 pattern(const Vector3& lambdas, const Vector3& mus) {
  Matrix6 k = Matrix6::Zero();
  for (int i = 0; i < 3; ++i) {
    k(i, i) = k(i + 3, i + 3) = lambdas[i];
    k(i, i + 3) = k(i + 3, i) = mus[i];
  }
  return k;
}

NormalForm4 build(const CurvatureTensor& rm, const Spectra& s,
                  const std::array<int, 3>& pairing, double tol) {
  struct Entry {
    double lambda, mu;
    int plus, minus;
  };
  std::array<Entry, 3> entries;
  for (int k = 0; k < 3; ++k) {
    const double al = s.alpha[k], be = s.beta[pairing[k]];
    entries[k] = {0.5 * (al + be), 0.5 * (al - be), k, pairing[k]};
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
    return x.lambda != y.lambda ? x.lambda < y.lambda : x.mu < y.mu;
  });

  Matrix3 u, v;
  Vector3 lambdas, mus;
  for (int k = 0; k < 3; ++k) {
    u.col(k) = s.u.col(entries[k].plus);
    v.col(k) = s.v.col(entries[k].minus);
    lambdas[k] = entries[k].lambda;
    mus[k] = entries[k].mu;
  }
  if (u.determinant() < 0.0) u.col(2) *= -1.0;
  if (v.determinant() < 0.0) v.col(2) *= -1.0;

  // P_k = (xi+(u_k) + xi-(v_k)) / sqrt(2) is the plane e1 ^ e_{k+1}.
  const BivectorBasis basis(4);
  std::array<Matrix, 3> planes;
  Eigen::Matrix4d sum_sq = Eigen::Matrix4d::Zero();
  for (int k = 0; k < 3; ++k) {
    Bivector p(6);
    p << 0.5 * (u.col(k) + v.col(k)), 0.5 * (u.col(k) - v.col(k));
    planes[k] = bivector_to_matrix(p, basis);
    sum_sq += planes[k] * planes[k];
  }
  // sum_k (e1 e_{k+1}^T - e_{k+1} e1^T)^2 = -(I + 2 e1 e1^T).
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> shared(
      -0.5 * (sum_sq + Eigen::Matrix4d::Identity()));
  Eigen::Matrix4d local;
  local.col(0) = shared.eigenvectors().col(3);
  for (int k = 0; k < 3; ++k) local.col(k + 1) = -planes[k] * local.col(0);
  if (local.determinant() < 0.0) {
    throw Error(ErrorCode::kFrameReconstruction,
                "reconstructed frame is negatively oriented");
  }

  NormalForm4 nf;
  nf.frame = s.h_frame * local;
  const Eigen::Vector4d e1 = nf.frame.col(0);
  for (int i = 0; i < 4; ++i) {
    if (std::abs(e1[i]) > 1e-12 * e1.norm()) {
      if (e1[i] < 0.0) nf.frame *= -1.0;
      break;
    }
  }

  const Matrix6 k = rm.in_frame(nf.frame).bilinear_form(basis);
  for (int i = 0; i < 3; ++i) {
    nf.lambdas[i] = 0.5 * (k(i, i) + k(i + 3, i + 3));
    nf.mus[i] = 0.5 * (k(i, i + 3) + k(i + 3, i));
  }
  nf.residual = std::max((k - pattern(nf.lambdas, nf.mus)).cwiseAbs().maxCoeff(),
                         std::max((nf.lambdas - lambdas).cwiseAbs().maxCoeff(),
                                  (nf.mus - mus).cwiseAbs().maxCoeff()));
  const double limit = std::max(tol, 1e-8) * std::max(1.0, s.scale);
  if (nf.residual > limit) {
    std::ostringstream os;
    os << "frame reconstruction misses the normal-form pattern by "
       << nf.residual << " (limit " << limit << ")";
    throw Error(ErrorCode::kFrameReconstruction, os.str());
  }
  return nf;
}

}  // namespace

NormalForm4 normal_form_4(const CurvatureTensor& rm, const Eigen::Matrix4d& h,
                          double tol) {
  return build(rm, spectra(rm, h, tol), {0, 1, 2}, tol);
}

std::vector<NormalForm4> normal_form_4_candidates(const CurvatureTensor& rm,
                                                  const Eigen::Matrix4d& h,
                                                  double tol) {
  const Spectra s = spectra(rm, h, tol);
  const double same = 1e-12 * std::max(1.0, s.scale);
  std::vector<NormalForm4> out;
  std::array<int, 3> pairing{0, 1, 2};
  do {
    NormalForm4 nf = build(rm, s, pairing, tol);
    const bool duplicate = std::any_of(out.begin(), out.end(), [&](auto& o) {
      return (o.lambdas - nf.lambdas).cwiseAbs().maxCoeff() <= same &&
             (o.mus - nf.mus).cwiseAbs().maxCoeff() <= same;
    });
    if (!duplicate) out.push_back(std::move(nf));
  } while (std::next_permutation(pairing.begin(), pairing.end()));
  return out;
}

namespace {

double orthogonality_defect(const Eigen::Matrix4d& frame,
                            const Eigen::Matrix4d& g) {
  const Eigen::Matrix4d gram = frame.transpose() * g * frame;
  const double diag = gram.diagonal().cwiseAbs().maxCoeff();
  double off = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) off = std::max(off, std::abs(gram(i, j)));
  return off / diag;
}

}  // namespace

NormalForm4 orthogonal_normal_form(const CurvatureTensor& rm,
                                   const Eigen::Matrix4d& h,
                                   const Eigen::Matrix4d& g, double tol) {
  std::vector<NormalForm4> candidates = normal_form_4_candidates(rm, h, tol);
  size_t best = 0;
  double best_defect = INFINITY;
  for (size_t n = 0; n < candidates.size(); ++n) {
    const double d = orthogonality_defect(candidates[n].frame, g);
    if (d < best_defect) best_defect = d, best = n;
  }
  if (best_defect > tol) {
    std::ostringstream os;
    os << "no normal-form frame is g-orthogonal (best relative defect "
       << best_defect << ")";
    throw Error(ErrorCode::kNonOrthogonalFrame, os.str());
  }
  return scaled_normal_form(candidates[best], g, tol);
}

NormalForm4 scaled_normal_form(const NormalForm4& nf, const Eigen::Matrix4d& g,
                               double tol) {
  const double defect = orthogonality_defect(nf.frame, g);
  if (defect > tol) {
    std::ostringstream os;
    os << "frame is not g-orthogonal: relative off-diagonal " << defect;
    throw Error(ErrorCode::kNonOrthogonalFrame, os.str());
  }
  const Eigen::Matrix4d gram = nf.frame.transpose() * g * nf.frame;
  ScaledValues s;
  for (int i = 0; i < 4; ++i) s.c[i] = 1.0 / std::sqrt(gram(i, i));
  const Eigen::Vector4d c2 = s.c.cwiseProduct(s.c);
  const Eigen::Vector3d& l = nf.lambdas;
  s.lambda << c2[0] * c2[1] * l[0], c2[0] * c2[2] * l[1], c2[0] * c2[3] * l[2];
  s.kappa << c2[2] * c2[3] * l[0], c2[1] * c2[3] * l[1], c2[1] * c2[2] * l[2];
  s.mu = s.c.prod() * nf.mus;
  NormalForm4 out = nf;
  out.scaled = s;
  return out;
}

CurvatureTensor normal_form_tensor(const Eigen::Vector3d& lambdas,
                                   const Eigen::Vector3d& mus) {
  CurvatureTensor rm(4);
  rm.set(0, 1, 0, 1, lambdas[0]);
  rm.set(2, 3, 2, 3, lambdas[0]);
  rm.set(0, 2, 0, 2, lambdas[1]);
  rm.set(3, 1, 3, 1, lambdas[1]);
  rm.set(0, 3, 0, 3, lambdas[2]);
  rm.set(1, 2, 1, 2, lambdas[2]);
  rm.set(2, 3, 0, 1, mus[0]);
  rm.set(3, 1, 0, 2, mus[1]);
  rm.set(1, 2, 0, 3, mus[2]);
  return rm;
}

Lambda2Operator rebuild_operator(const NormalForm4& nf,
                                 const Eigen::Matrix4d& h) {
  const CurvatureTensor local = normal_form_tensor(nf.lambdas, nf.mus);
  return operator_from(local.in_frame(nf.frame.inverse()), h,
                       OperatorKind::kViaH);
}

double recover_mu1(const CriticalValues& v) {
  return v.a12 + v.a13 / 3.0 - v.a32 / 3.0 - 2.0 * v.lambda1 / 3.0 -
         v.lambda2 / 3.0;
}

double mixed_critical_value(const Eigen::Vector3d& lambdas,
                            const Eigen::Vector3d& mus, int i, int j) {
  return 0.5 * ((lambdas[i] + lambdas[j]) + (mus[i] - mus[j]));
}

}  // namespace curvnf
