#include <gtest/gtest.h>

#include <random>

#include "curvnf/error.hpp"
#include "curvnf/hodge.hpp"
#include "oracles.hpp"

using namespace curvnf;

namespace {

Matrix6 block(const Eigen::Matrix3d& a, const Eigen::Matrix3d& b,
              const Eigen::Matrix3d& c, const Eigen::Matrix3d& d) {
  Matrix6 m;
  m << a, b, c, d;
  return m;
}

const Eigen::Matrix3d kI = Eigen::Matrix3d::Identity();
const Eigen::Matrix3d kO = Eigen::Matrix3d::Zero();

// Star from the defining identity, with the volume pairing built from the
// permutation oracle.
Matrix6 star_oracle(const Matrix4& g) {
  const BivectorBasis b = bivector_basis(4);
  Matrix6 v, gram;
  for (int a = 0; a < 6; ++a)
    for (int c = 0; c < 6; ++c) {
      Matrix x = Matrix::Zero(4, 4), y = Matrix::Zero(4, 4);
      x(b[a].first, b[a].second) = 1, x(b[a].second, b[a].first) = -1;
      y(b[c].first, b[c].second) = 1, y(b[c].second, b[c].first) = -1;
      v(a, c) = oracle::wedge_volume(x, y);
      gram(a, c) = oracle::gram_entry(g, b[a].first, b[a].second, b[c].first, b[c].second);
    }
  return v.inverse() * gram / std::sqrt(std::abs(g.determinant()));
}

Matrix4 random_lorentz(std::mt19937_64& rng) {
  const Matrix4 g = oracle::random_spd(4, rng);
  std::normal_distribution<double> normal;
  Vector4 t(normal(rng), normal(rng), normal(rng), normal(rng));
  t /= std::sqrt(t.dot(g * t));
  return lorentz_metric_from_unit(g, t);
}

}  // namespace

TEST(HodgeStar, StandardStar) {
  const HodgeStar s = hodge_star(Matrix4::Identity());
  EXPECT_TRUE(s.matrix.isApprox(block(kO, kI, kI, kO)));
  EXPECT_EQ(s.signature, Signature::kRiemannian);
}

TEST(HodgeStar, LorentzStar) {
  const HodgeStar s = hodge_star(Eigen::Vector4d(-1, 1, 1, 1).asDiagonal().toDenseMatrix());
  EXPECT_TRUE(s.matrix.isApprox(block(kO, kI, -kI, kO)));
  EXPECT_EQ(s.signature, Signature::kLorentzian);
}

TEST(HodgeStar, ScaledMetricSquaresToIdentity) {
  const Matrix4 g = Eigen::Vector4d(4, 1, 1, 1).asDiagonal();
  const HodgeStar s = hodge_star(g);
  EXPECT_LE((s.matrix * s.matrix - Matrix6::Identity()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE((s.matrix - star_oracle(g)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(HodgeStar, OrientationFlip) {
  const HodgeStar s = hodge_star(Matrix4::Identity(), -1);
  EXPECT_TRUE(s.matrix.isApprox(-block(kO, kI, kI, kO)));
  EXPECT_THROW(hodge_star(Matrix4::Identity(), 0), Error);
}

TEST(HodgeStar, InvolutionAndSelfAdjointOnRandomMetrics) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix4 g = oracle::random_spd(4, rng);
    const HodgeStar s = hodge_star(g);
    EXPECT_LE((s.matrix * s.matrix - Matrix6::Identity()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((s.gram.transpose() * s.matrix - s.matrix.transpose() * s.gram).cwiseAbs().maxCoeff(),
              1e-12);
    EXPECT_LE((s.matrix - star_oracle(g)).cwiseAbs().maxCoeff(), 1e-12);

    const Matrix4 l = random_lorentz(rng);
    const HodgeStar sl = hodge_star(l);
    EXPECT_EQ(sl.signature, Signature::kLorentzian);
    EXPECT_LE((sl.matrix * sl.matrix + Matrix6::Identity()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((sl.gram.transpose() * sl.matrix - sl.matrix.transpose() * sl.gram).cwiseAbs().maxCoeff(),
              1e-12);
  }
}

TEST(HodgeStar, RejectsBadSignature) {
  const Matrix4 g = Eigen::Vector4d(-1, -1, 1, 1).asDiagonal();
  EXPECT_THROW(hodge_star(g), Error);
}

TEST(LorentzMetric, Examples) {
  EXPECT_TRUE(lorentz_metric_from_unit(Matrix4::Identity(), Vector4::Unit(0))
                  .isApprox(Matrix4(Eigen::Vector4d(-1, 1, 1, 1).asDiagonal())));

  const Vector4 t = Vector4(1, 1, 0, 0) / std::sqrt(2.0);
  const Matrix4 l = lorentz_metric_from_unit(Matrix4::Identity(), t);
  EXPECT_TRUE(l.isApprox(l.transpose()));
  EXPECT_NEAR(t.dot(l * t), -1.0, 1e-15);
  Matrix4 expected = Matrix4::Identity();
  expected.topLeftCorner<2, 2>() << 0, -1, -1, 0;
  EXPECT_LE((l - expected).cwiseAbs().maxCoeff(), 1e-15);

  const Matrix4 g = Eigen::Vector4d(4, 1, 1, 1).asDiagonal();
  EXPECT_TRUE(lorentz_metric_from_unit(g, Vector4::Unit(0) / 2.0)
                  .isApprox(Matrix4(Eigen::Vector4d(-4, 1, 1, 1).asDiagonal())));
}

TEST(LorentzMetric, RejectsNonUnit) {
  try {
    lorentz_metric_from_unit(Matrix4::Identity(), Vector4::Unit(0) * 1.1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonUnitVector);
  }
}

TEST(SdAsdBasis, StandardStar) {
  const HodgeStar s = hodge_star(Matrix4::Identity());
  const SdAsdBasis b = sd_asd_basis(s);
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < 3; ++i) {
    Bivector plus = Bivector::Zero(6), minus = Bivector::Zero(6);
    plus[i] = plus[i + 3] = r;
    minus[i] = r;
    minus[i + 3] = -r;
    EXPECT_LE((b.plus[i] - plus).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LE((b.minus[i] - minus).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(SdAsdBasis, EigenvectorsAndOrthonormal) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const HodgeStar s = hodge_star(oracle::random_spd(4, rng));
    const SdAsdBasis b = sd_asd_basis(s);
    for (int i = 0; i < 3; ++i) {
      EXPECT_LE((s.matrix * b.plus[i] - b.plus[i]).norm(), 1e-12);
      EXPECT_LE((s.matrix * b.minus[i] + b.minus[i]).norm(), 1e-12);
    }
    const Matrix6 q = b.as_matrix();
    EXPECT_LE((q.transpose() * s.gram * q - Matrix6::Identity()).cwiseAbs().maxCoeff(), 1e-12);
  }
  EXPECT_THROW(sd_asd_basis(hodge_star(Eigen::Vector4d(-1, 1, 1, 1).asDiagonal().toDenseMatrix())),
               Error);
}

TEST(Complexify, IdentityAndStar) {
  const HodgeStar sl = hodge_star(Eigen::Vector4d(-1, 1, 1, 1).asDiagonal().toDenseMatrix());
  EXPECT_TRUE(complexify(Matrix6(Matrix6::Identity()), sl).isApprox(Matrix3c::Identity()));
  const Matrix3c i = std::complex<double>(0, 1) * Matrix3c::Identity();
  EXPECT_TRUE(complexify(sl.matrix, sl).isApprox(i));
}

TEST(Complexify, LorentzBlockOperator) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> normal;
  Eigen::Matrix3d a, b;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = normal(rng), b(i, j) = normal(rng);
  a = (0.5 * (a + a.transpose())).eval();
  b = 0.5 * (b + b.transpose());
  const HodgeStar sl = hodge_star(Eigen::Vector4d(-1, 1, 1, 1).asDiagonal().toDenseMatrix());
  const Matrix6 op = block(-a, -b, b, -a);
  const Matrix3c c = complexify(op, sl);
  // Direct action: op applied to the real coordinates of each complex basis
  // vector, read back through realify.
  for (int col = 0; col < 3; ++col) {
    const Bivector image = op * realify(Eigen::Vector3cd::Unit(col), sl);
    EXPECT_LE((realify(c.col(col), sl) - image).norm(), 1e-12);
  }
  const Matrix3c expected = (-a).cast<std::complex<double>>() -
                            std::complex<double>(0, 1) * b.cast<std::complex<double>>();
  EXPECT_LE((c - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Complexify, IsHomomorphism) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix4 l = random_lorentz(rng);
    const HodgeStar sl = hodge_star(l);
    Matrix6 x;
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) x(i, j) = normal(rng);
    const Matrix6 gen = x - sl.matrix * x * sl.matrix;  // commutes with *_L
    const Matrix6 op1 = gen * gen + 0.5 * gen;
    const Matrix6 op2 = gen * gen * gen - 2.0 * sl.matrix;
    const Matrix3c product = complexify(Matrix6(op1 * op2), sl, 1e-9);
    EXPECT_LE((product - complexify(op1, sl, 1e-9) * complexify(op2, sl, 1e-9)).cwiseAbs().maxCoeff(),
              1e-9 * product.cwiseAbs().maxCoeff());
  }
}

TEST(Complexify, RejectsNonCommuting) {
  const HodgeStar sl = hodge_star(Eigen::Vector4d(-1, 1, 1, 1).asDiagonal().toDenseMatrix());
  Matrix6 op = Matrix6::Identity();
  op(0, 0) = 2.0;
  try {
    complexify(op, sl);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotComplexLinear);
  }
}

TEST(Complexify, RealifyRoundTrip) {
  const HodgeStar sl = hodge_star(Eigen::Vector4d(-1, 1, 1, 1).asDiagonal().toDenseMatrix());
  const Eigen::Vector3cd z(std::complex<double>(1, 2), std::complex<double>(-3, 0.5),
                           std::complex<double>(0, -1));
  EXPECT_LE((complex_coordinates(realify(z, sl), sl) - z).norm(), 1e-14);
}
