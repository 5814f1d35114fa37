#include "curvnf/bivector.hpp"

#include <cmath>
#include <string>

#include "curvnf/error.hpp"

namespace curvnf {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimension: return "dimension";
    case ErrorCode::kDegenerateMetric: return "degenerate-metric";
    case ErrorCode::kNonUnitVector: return "non-unit-vector";
    case ErrorCode::kNotComplexLinear: return "not-complex-linear";
    case ErrorCode::kSymmetryViolation: return "symmetry-violation";
    case ErrorCode::kBianchiViolation: return "bianchi-violation";
    case ErrorCode::kPrecondition: return "precondition";
    case ErrorCode::kFrameReconstruction: return "frame-reconstruction";
    case ErrorCode::kFlatTensor: return "flat-tensor";
    case ErrorCode::kNonOrthogonalFrame: return "non-orthogonal-frame";
    case ErrorCode::kLightlikePlane: return "lightlike-plane";
    case ErrorCode::kDegeneratePlane: return "degenerate-plane";
    case ErrorCode::kBianchiProjection: return "bianchi-projection";
    case ErrorCode::kUnknownBlock: return "unknown-block";
    case ErrorCode::kMissingWeight: return "missing-weight";
    case ErrorCode::kInvalidGrid: return "invalid-grid";
    case ErrorCode::kFormat: return "format";
  }
  return "unknown";
}

BivectorBasis::BivectorBasis(int dim) : dim_(dim) {
  if (dim < 3) {
    throw Error(ErrorCode::kDimension,
                "bivector basis needs dimension >= 3, got " +
                    std::to_string(dim));
  }
  if (dim == 4) {
    pairs_ = {{0, 1}, {0, 2}, {0, 3}, {2, 3}, {3, 1}, {1, 2}};
  } else {
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j) pairs_.emplace_back(i, j);
  }
  index_.assign(static_cast<size_t>(dim * dim), 0);
  for (int a = 0; a < size(); ++a) {
    auto [i, j] = pairs_[a];
    index_[i * dim + j] = a + 1;
    index_[j * dim + i] = -(a + 1);
  }
}

std::pair<int, int> BivectorBasis::locate(int i, int j) const {
  const int v = index_[i * dim_ + j];
  if (v == 0) return {-1, 0};
  return v > 0 ? std::pair{v - 1, 1} : std::pair{-v - 1, -1};
}

BivectorBasis bivector_basis(int n) { return BivectorBasis(n); }

Matrix induced_gram(const Matrix& metric, const BivectorBasis& basis) {
  const int n = basis.dim();
  if (metric.rows() != n || metric.cols() != n) {
    throw Error(ErrorCode::kDimension, "metric size does not match basis");
  }
  const double scale = std::max(metric.cwiseAbs().maxCoeff(), 1e-300);
  const double det = metric.determinant();
  if (std::abs(det) <= 1e-14 * std::pow(scale, n)) {
    throw Error(ErrorCode::kDegenerateMetric, "metric is singular");
  }
  const int m = basis.size();
  Matrix gram(m, m);
  for (int a = 0; a < m; ++a) {
    auto [i, j] = basis[a];
    for (int b = a; b < m; ++b) {
      auto [k, l] = basis[b];
      gram(a, b) = metric(i, k) * metric(j, l) - metric(i, l) * metric(j, k);
      gram(b, a) = gram(a, b);
    }
  }
  return gram;
}

Bivector wedge(const Vector& v, const Vector& w, const BivectorBasis& basis) {
  Bivector out(basis.size());
  for (int a = 0; a < basis.size(); ++a) {
    auto [i, j] = basis[a];
    out[a] = v[i] * w[j] - v[j] * w[i];
  }
  return out;
}

namespace {

// Sign of the permutation taking (i,j,k,l) to (0,1,2,3); 0 if any repeat.
int permutation_sign4(int i, int j, int k, int l) {
  int p[4] = {i, j, k, l};
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      if (p[a] == p[b]) return 0;
  int sign = 1;
  for (int a = 0; a < 4; ++a) {
    while (p[a] != a) {
      std::swap(p[a], p[p[a]]);
      sign = -sign;
    }
  }
  return sign;
}

}  // namespace

Eigen::Matrix<double, 6, 6> volume_pairing() {
  static const Eigen::Matrix<double, 6, 6> pairing = [] {
    const BivectorBasis basis(4);
    Eigen::Matrix<double, 6, 6> v;
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b)
        v(a, b) = permutation_sign4(basis[a].first, basis[a].second,
                                    basis[b].first, basis[b].second);
    return v;
  }();
  return pairing;
}

double wedge_to_volume(const Bivector& xi, const Bivector& eta,
                       const BivectorBasis& basis) {
  if (basis.dim() != 4) {
    throw Error(ErrorCode::kDimension, "wedge_to_volume requires dimension 4");
  }
  return xi.dot(volume_pairing() * eta);
}

bool is_decomposable(const Bivector& xi, const BivectorBasis& basis,
                     double tol) {
  const int n = basis.dim();
  if (n == 3) return true;
  const Matrix p = bivector_to_matrix(xi, basis);
  const double bound = tol * xi.squaredNorm();
  // Components of xi^xi: P_ij P_kl - P_ik P_jl + P_il P_jk for i<j<k<l.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          const double c = 2.0 * (p(i, j) * p(k, l) - p(i, k) * p(j, l) +
                                  p(i, l) * p(j, k));
          if (std::abs(c) > bound) return false;
        }
  return true;
}

Matrix bivector_to_matrix(const Bivector& xi, const BivectorBasis& basis) {
  const int n = basis.dim();
  Matrix p = Matrix::Zero(n, n);
  for (int a = 0; a < basis.size(); ++a) {
    auto [i, j] = basis[a];
    p(i, j) = xi[a];
    p(j, i) = -xi[a];
  }
  return p;
}

Bivector matrix_to_bivector(const Matrix& p, const BivectorBasis& basis) {
  Bivector xi(basis.size());
  for (int a = 0; a < basis.size(); ++a) {
    auto [i, j] = basis[a];
    xi[a] = 0.5 * (p(i, j) - p(j, i));
  }
  return xi;
}

}  // namespace curvnf
