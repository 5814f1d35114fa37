#include "curvnf/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

#include "curvnf/error.hpp"
#include "curvnf/hodge.hpp"

namespace curvnf {

CurvatureTensor::CurvatureTensor(int dim) : dim_(dim) {
  if (dim < 2) {
    throw Error(ErrorCode::kDimension, "curvature tensor needs dim >= 2");
  }
  data_.assign(static_cast<size_t>(dim) * dim * dim * dim, 0.0);
}

void CurvatureTensor::set(int i, int j, int k, int l, double value) {
  const int pairs[2][2] = {{i, j}, {k, l}};
  for (int swap = 0; swap < 2; ++swap) {
    const auto& p = pairs[swap];
    const auto& q = pairs[1 - swap];
    data_[index(p[0], p[1], q[0], q[1])] = value;
    data_[index(p[1], p[0], q[0], q[1])] = -value;
    data_[index(p[0], p[1], q[1], q[0])] = -value;
    data_[index(p[1], p[0], q[1], q[0])] = value;
  }
}

double CurvatureTensor::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

std::vector<Component> CurvatureTensor::canonical_components() const {
  std::vector<Component> out;
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j)
      for (int k = i; k < dim_; ++k)
        for (int l = k + 1; l < dim_; ++l) {
          if (k == i && l < j) continue;
          const double v = (*this)(i, j, k, l);
          if (v != 0.0) out.push_back({i, j, k, l, v});
        }
  return out;
}

CurvatureTensor CurvatureTensor::in_frame(const Matrix& frame) const {
  const int n = dim_;
  if (frame.rows() != n || frame.cols() != n) {
    throw Error(ErrorCode::kDimension, "frame size does not match tensor");
  }
  // Contract one slot at a time: four passes of n^5 work.
  std::vector<double> cur = data_;
  std::vector<double> next(cur.size());
  const size_t stride[4] = {static_cast<size_t>(n * n * n),
                            static_cast<size_t>(n * n),
                            static_cast<size_t>(n), 1};
  for (int slot = 0; slot < 4; ++slot) {
    std::fill(next.begin(), next.end(), 0.0);
    for (size_t flat = 0; flat < cur.size(); ++flat) {
      const int old_index = static_cast<int>((flat / stride[slot]) % n);
      const double v = cur[flat];
      if (v == 0.0) continue;
      const size_t base = flat - old_index * stride[slot];
      for (int a = 0; a < n; ++a)
        next[base + a * stride[slot]] += frame(old_index, a) * v;
    }
    std::swap(cur, next);
  }
  CurvatureTensor out(n);
  out.data_ = std::move(cur);
  return out;
}

Matrix CurvatureTensor::bilinear_form(const BivectorBasis& basis) const {
  if (basis.dim() != dim_) {
    throw Error(ErrorCode::kDimension, "basis dimension does not match tensor");
  }
  const int m = basis.size();
  Matrix k(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      k(a, b) = (*this)(basis[a].first, basis[a].second, basis[b].first,
                        basis[b].second);
  return k;
}

CurvatureTensor& CurvatureTensor::operator+=(const CurvatureTensor& other) {
  if (other.dim_ != dim_) {
    throw Error(ErrorCode::kDimension, "tensor dimensions differ");
  }
  for (size_t n = 0; n < data_.size(); ++n) data_[n] += other.data_[n];
  return *this;
}

CurvatureTensor& CurvatureTensor::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

double bianchi_residual(const CurvatureTensor& rm, std::array<int, 4>* where) {
  const int n = rm.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double r =
              std::abs(rm(i, j, k, l) + rm(i, k, l, j) + rm(i, l, j, k));
          if (r > worst) {
            worst = r;
            if (where) *where = {i, j, k, l};
          }
        }
  return worst;
}

CurvatureCheck check_curvature(std::span<const Component> components, int dim,
                               double tol) {
  CurvatureCheck result;
  double scale = 0.0;
  for (const auto& c : components) {
    if (c.i < 0 || c.j < 0 || c.k < 0 || c.l < 0 || c.i >= dim ||
        c.j >= dim || c.k >= dim || c.l >= dim) {
      std::ostringstream os;
      os << "component index out of range for dim " << dim;
      throw Error(ErrorCode::kDimension, os.str());
    }
    scale = std::max(scale, std::abs(c.value));
  }
  result.scale = scale;
  const double duplicate_tol = 1e-12 * std::max(1.0, scale);

  using Key = std::tuple<int, int, int, int>;
  std::map<Key, double> canonical;
  for (const auto& c : components) {
    if (c.i == c.j || c.k == c.l) {
      if (std::abs(c.value) > duplicate_tol) {
        result.ok = false;
        result.violation = "symmetry";
        result.indices = {c.i, c.j, c.k, c.l};
        result.residual = std::abs(c.value);
        return result;
      }
      continue;
    }
    int a = c.i, b = c.j, d = c.k, e = c.l;
    double sign = 1.0;
    if (a > b) std::swap(a, b), sign = -sign;
    if (d > e) std::swap(d, e), sign = -sign;
    if (std::pair(a, b) > std::pair(d, e)) std::swap(a, d), std::swap(b, e);
    const Key key{a, b, d, e};
    const double v = sign * c.value;
    auto [it, inserted] = canonical.emplace(key, v);
    if (!inserted && std::abs(it->second - v) > duplicate_tol) {
      result.ok = false;
      result.violation = "symmetry";
      result.indices = {c.i, c.j, c.k, c.l};
      result.residual = std::abs(it->second - v);
      return result;
    }
  }

  CurvatureTensor rm(dim);
  for (const auto& [key, v] : canonical) {
    auto [a, b, d, e] = key;
    rm.set(a, b, d, e, v);
  }
  std::array<int, 4> where{0, 0, 0, 0};
  const double bianchi = bianchi_residual(rm, &where);
  if (scale > 0.0 && bianchi > tol * scale) {
    result.ok = false;
    result.violation = "bianchi";
    result.indices = where;
    result.residual = bianchi;
    return result;
  }
  result.residual = bianchi;
  result.tensor = std::move(rm);
  return result;
}

CurvatureTensor validate_curvature(std::span<const Component> components,
                                   int dim, double tol) {
  CurvatureCheck check = check_curvature(components, dim, tol);
  if (!check.ok) {
    std::ostringstream os;
    os << check.violation << " violation at (" << check.indices[0] + 1 << ","
       << check.indices[1] + 1 << "," << check.indices[2] + 1 << ","
       << check.indices[3] + 1 << "), residual " << check.residual;
    throw Error(check.violation == "bianchi" ? ErrorCode::kBianchiViolation
                                             : ErrorCode::kSymmetryViolation,
                os.str());
  }
  return std::move(*check.tensor);
}

CurvatureTensor space_form(int dim, double kappa) {
  // Classical sectional curvature kappa: Rm(e_i,e_j,e_j,e_i) = kappa, hence
  // R_ijij = -kappa under the Rm(v,w,x,y) = g(R(v,w)x,y) convention.
  CurvatureTensor rm(dim);
  if (kappa == 0.0) return rm;
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) rm.set(i, j, i, j, -kappa);
  return rm;
}

namespace {

int count_negative_directions(const Matrix& metric) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(
      0.5 * (metric + metric.transpose()), Eigen::EigenvaluesOnly);
  const double scale = std::max(eig.eigenvalues().cwiseAbs().maxCoeff(), 1e-300);
  int negative = 0;
  for (int i = 0; i < eig.eigenvalues().size(); ++i) {
    const double v = eig.eigenvalues()[i];
    if (std::abs(v) <= 1e-14 * scale) {
      throw Error(ErrorCode::kDegenerateMetric, "metric is singular");
    }
    negative += v < 0.0;
  }
  return negative;
}

}  // namespace

Lambda2Operator operator_from(const CurvatureTensor& rm, const Matrix& metric,
                              OperatorKind kind) {
  const int n = rm.dim();
  if (metric.rows() != n || metric.cols() != n) {
    throw Error(ErrorCode::kDimension, "metric size does not match tensor");
  }
  const int negative = count_negative_directions(metric);
  const int expected = kind == OperatorKind::kViaLorentz ? 1 : 0;
  if (negative != expected) {
    std::ostringstream os;
    os << to_string(kind) << " expects " << expected
       << " negative metric direction(s), found " << negative;
    throw Error(ErrorCode::kPrecondition, os.str());
  }
  const BivectorBasis basis(n);
  Lambda2Operator op;
  op.kind = kind;
  op.dim = n;
  op.gram = induced_gram(metric, basis);
  // gram * M = K, with K(a,b) = Rm(E_a, E_b).
  op.matrix = op.gram.partialPivLu().solve(rm.bilinear_form(basis));
  return op;
}

double quadratic_form(const Lambda2Operator& op, const Bivector& p,
                      double tol) {
  const BivectorBasis basis(op.dim);
  if (p.size() != basis.size()) {
    throw Error(ErrorCode::kDimension, "bivector size does not match operator");
  }
  if (!is_decomposable(p, basis, 1e-9)) {
    throw Error(ErrorCode::kDegeneratePlane,
                "quadratic form is defined on decomposable bivectors only");
  }
  const double norm2 = p.dot(op.gram * p);
  if (std::abs(norm2) <= tol * std::max(p.squaredNorm(), 1e-300)) {
    throw Error(op.kind == OperatorKind::kViaLorentz
                    ? ErrorCode::kLightlikePlane
                    : ErrorCode::kDegeneratePlane,
                "plane is degenerate for the operator's scalar product");
  }
  return p.dot(op.gram * (op.matrix * p)) / norm2;
}

double scalar_curvature(const CurvatureTensor& rm, const Matrix& metric) {
  const Matrix inv = metric.inverse();
  const int n = rm.dim();
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          s += inv(i, l) * inv(j, k) * rm(i, j, k, l);
  return s;
}

Matrix trace_with(const CurvatureTensor& rm, const Matrix& metric) {
  const Matrix inv = metric.inverse();
  const int n = rm.dim();
  Matrix t = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) t(j, k) += inv(i, l) * rm(i, j, k, l);
  return t;
}

TraceFit fit_trace_proportionality(const CurvatureTensor& rm,
                                   const Matrix& metric) {
  TraceFit fit;
  fit.trace = trace_with(rm, metric);
  fit.f = (metric.inverse() * fit.trace).trace() / rm.dim();
  fit.residual = (fit.trace - fit.f * metric).norm();
  return fit;
}

Lambda2Operator weyl_operator(const CurvatureTensor& rm, const Matrix& g) {
  if (rm.dim() != 4) {
    throw Error(ErrorCode::kDimension, "weyl_operator requires dimension 4");
  }
  const Lambda2Operator r = operator_from(rm, g, OperatorKind::kViaG);
  const HodgeStar star = hodge_star(Matrix4(g));
  // The curvature operator here is minus the classical one, so the classical
  // -scal/12 shift enters with a plus sign.
  Lambda2Operator w = r;
  w.matrix = 0.5 * (r.matrix + star.matrix * r.matrix * star.matrix) +
             (scalar_curvature(rm, g) / 12.0) * Matrix::Identity(6, 6);
  return w;
}

}  // namespace curvnf
