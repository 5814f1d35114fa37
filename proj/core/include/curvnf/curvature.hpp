#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "curvnf/bivector.hpp"
#include "curvnf/lambda2_operator.hpp"

namespace curvnf {

/// One supplied component R_{ijkl} (0-based indices).
struct Component {
  int i = 0, j = 0, k = 0, l = 0;
  double value = 0.0;
};

/// Riemann 4-tensor components R_{ijkl} = Rm(e_i, e_j, e_k, e_l) in a fixed
/// frame, with the algebraic symmetries of a curvature tensor.
///
/// Sign convention: Rm(v,w,x,y) = g(R(v,w)x, y) with
/// R(v,w) = [nabla_v, nabla_w] - nabla_[v,w], so the classical sectional
/// curvature of an orthonormal pair is Rm(v,w,w,v) = -Rm(v,w,v,w).
class CurvatureTensor {
 public:
  explicit CurvatureTensor(int dim);

  int dim() const noexcept { return dim_; }

  double operator()(int i, int j, int k, int l) const {
    return data_[index(i, j, k, l)];
  }

  /// Writes `value` at (i,j,k,l) and at every position related to it by
  /// antisymmetry in each pair and pair exchange.
  void set(int i, int j, int k, int l, double value);

  double max_abs() const;
  bool is_zero() const { return max_abs() == 0.0; }

  /// Nonzero canonical representatives: i<j, k<l, (i,j) <= (k,l).
  std::vector<Component> canonical_components() const;

  /// Components in a new frame whose vectors are the columns of `frame`
  /// (expressed in the current frame): R'_{abcd} = Rm(f_a, f_b, f_c, f_d).
  CurvatureTensor in_frame(const Matrix& frame) const;

  /// Symmetric matrix K(a,b) = Rm(E_a, E_b) on bivector basis elements.
  Matrix bilinear_form(const BivectorBasis& basis) const;

  CurvatureTensor& operator+=(const CurvatureTensor& other);
  CurvatureTensor& operator*=(double s);

 private:
  size_t index(int i, int j, int k, int l) const {
    return static_cast<size_t>(((i * dim_ + j) * dim_ + k) * dim_ + l);
  }

  int dim_;
  std::vector<double> data_;
};

/// Outcome of checking supplied components. `ok` is false when a symmetry
/// conflict or Bianchi violation exceeded tolerance; `indices` are 0-based.
struct CurvatureCheck {
  bool ok = true;
  std::string violation;  // "", "symmetry" or "bianchi"
  std::array<int, 4> indices{0, 0, 0, 0};
  double residual = 0.0;
  double scale = 0.0;
  std::optional<CurvatureTensor> tensor;
};

/// Completes `components` by symmetry and checks the first Bianchi identity.
/// Supplied duplicates that disagree by more than 1e-12 (relative to the
/// tensor scale) are symmetry violations; Bianchi residuals are compared to
/// tol * max|R|.
CurvatureCheck check_curvature(std::span<const Component> components, int dim,
                               double tol = 1e-9);

/// As check_curvature but throws Error(kSymmetryViolation/kBianchiViolation).
CurvatureTensor validate_curvature(std::span<const Component> components,
                                   int dim, double tol = 1e-9);

/// Largest |R_ijkl + R_iklj + R_iljk| and where it occurs.
double bianchi_residual(const CurvatureTensor& rm,
                        std::array<int, 4>* where = nullptr);

/// Constant curvature kappa in an orthonormal frame:
/// R_ijkl = kappa (d_il d_jk - d_ik d_jl), so Rm(v,w,w,v) = kappa.
CurvatureTensor space_form(int dim, double kappa);

/// The operator M with <M(e_i^e_j), e_k^e_l> = R_ijkl in the Gram matrix of
/// `metric`. via_g and via_h need a positive-definite metric, via_lorentz a
/// metric with exactly one negative direction.
Lambda2Operator operator_from(const CurvatureTensor& rm, const Matrix& metric,
                              OperatorKind kind);

/// <op P, P> / <P, P> for a decomposable P. For via_lorentz this equals
/// eps(P) <op P, P> at |<P,P>| = 1. Throws kLightlikePlane when |<P,P>| is
/// below tol * |P|^2.
double quadratic_form(const Lambda2Operator& op, const Bivector& p,
                      double tol = 1e-12);

/// g^{il} g^{jk} R_ijkl; for an orthonormal frame -2 trace of the via_g
/// operator.
double scalar_curvature(const CurvatureTensor& rm, const Matrix& metric);

/// (tr_metric Rm)_{jk} = metric^{il} R_{ijkl}; the Ricci tensor when the
/// metric is g itself.
Matrix trace_with(const CurvatureTensor& rm, const Matrix& metric);

/// Best f with tr_metric Rm ~ f * metric, plus the Frobenius residual.
struct TraceFit {
  Matrix trace;
  double f = 0.0;
  double residual = 0.0;
};
TraceFit fit_trace_proportionality(const CurvatureTensor& rm,
                                   const Matrix& metric);

/// Weyl operator 1/2 (R + *R*) + scal/12 I of a Riemannian 4-metric.
Lambda2Operator weyl_operator(const CurvatureTensor& rm, const Matrix& g);

}  // namespace curvnf
