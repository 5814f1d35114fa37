#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include <zlib.h>

#include "curvnf/einstein.hpp"
#include "curvnf/error.hpp"
#include "curvnf/normal_form3.hpp"
#include "curvnf/petrov.hpp"
#include "curvnf/sample_io.hpp"
#include "curvnf/zoo.hpp"
#include "oracles.hpp"

using namespace curvnf;

namespace {

constexpr double kPi = oracle::kPi;

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("curvnf_test_" + name)).string();
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::kFormat;
}

}  // namespace

TEST(SpaceFormGrid, VolumesMatchClosedForms) {
  const GridSpec grid{GridKind::kSphere, 20, 1.0};
  double total = 0.0;
  gen_space_form(4, 1.0, grid, [&](const PointSample& s) { total += *s.weight; });
  EXPECT_NEAR(total, 8 * kPi * kPi / 3, 1e-6);
  EXPECT_NEAR(grid_volume(4, 1.0, grid), 8 * kPi * kPi / 3, 1e-12);
  EXPECT_NEAR(grid_volume(3, 1.0, grid), 2 * kPi * kPi, 1e-12);
  EXPECT_NEAR(grid_volume(5, 1.0, grid), kPi * kPi * kPi, 1e-12);
  EXPECT_NEAR(grid_volume(4, 4.0, grid), 8 * kPi * kPi / 3 / 16, 1e-12);

  for (int dim : {3, 5}) {
    double sum = 0.0;
    for (const auto& s : gen_space_form(dim, 2.0, GridSpec{GridKind::kSphere, 6, 1.0})) sum += *s.weight;
    EXPECT_NEAR(sum, grid_volume(dim, 2.0, grid), 1e-10) << dim;
  }
  double torus = 0.0;
  const auto t = gen_space_form(4, 0.0, GridSpec{GridKind::kTorus, 3, 2.0});
  EXPECT_EQ(t.size(), 81u);
  for (const auto& s : t) {
    torus += *s.weight;
    EXPECT_TRUE(s.rm.empty());
  }
  EXPECT_NEAR(torus, 16.0, 1e-12);
}

TEST(SpaceFormGrid, SamplesAreValidConstantCurvature) {
  const auto samples = gen_space_form(3, 1.0, GridSpec{GridKind::kSphere, 5, 1.0});
  EXPECT_EQ(samples.size(), 125u);
  for (const auto& s : samples) {
    ASSERT_GE(*s.weight, 0.0);
    const CurvatureTensor rm = s.tensor(1e-12);
    const SignedCurvature3 sc = signed_curvature_3(rm, 50);
    EXPECT_EQ(sc.sign, CurvatureSign::kPositive);
    EXPECT_NEAR(sc.critical_values[0], 1.0, 1e-14);
    EXPECT_NEAR(sc.critical_values[2], 1.0, 1e-14);
  }
}

TEST(SpaceFormGrid, Errors) {
  EXPECT_EQ(code_of([] { gen_space_form(4, 0.0, GridSpec{GridKind::kSphere, 4, 1.0}); }),
            ErrorCode::kInvalidGrid);
  EXPECT_EQ(code_of([] { gen_space_form(4, 1.0, GridSpec{GridKind::kTorus, 4, 1.0}); }),
            ErrorCode::kInvalidGrid);
  EXPECT_EQ(code_of([] { gen_space_form(4, 1.0, GridSpec{GridKind::kSphere, 0, 1.0}); }),
            ErrorCode::kInvalidGrid);
  EXPECT_EQ(code_of([] { gen_space_form(2, 1.0, GridSpec{GridKind::kSphere, 4, 1.0}); }),
            ErrorCode::kInvalidGrid);
  EXPECT_EQ(code_of([] { gen_space_form(4, 0.0, GridSpec{GridKind::kTorus, 4, -1.0}); }),
            ErrorCode::kInvalidGrid);
}

TEST(ProductSpheres, ComponentsAndVolume) {
  const auto samples = gen_product_spheres(1.0, 2.0, 6);
  double total = 0.0;
  for (const auto& s : samples) {
    const CurvatureTensor rm = s.tensor(1e-12);
    EXPECT_DOUBLE_EQ(rm(0, 1, 0, 1), -1.0);
    EXPECT_DOUBLE_EQ(rm(2, 3, 2, 3), -0.25);
    EXPECT_EQ(rm(0, 2, 0, 2), 0.0);
    total += *s.weight;
  }
  EXPECT_NEAR(total, 16 * kPi * kPi * 4.0, 1e-9);
}

TEST(ProductSpheres, EinsteinOnlyForEqualRadii) {
  const Matrix id = Matrix::Identity(4, 4);
  const auto equal = gen_product_spheres(1.5, 1.5, 2);
  EXPECT_TRUE(is_star_h_einstein(equal.front().tensor(), id).einstein);
  const auto unequal = gen_product_spheres(1.0, 2.0, 2);
  EXPECT_FALSE(is_star_h_einstein(unequal.front().tensor(), id).einstein);
}

TEST(ProductSpheres, StarHEinsteinForMatchingScale) {
  const auto good = gen_product_spheres(1.0, 2.0, 2, 0.5);
  ASSERT_TRUE(good.front().h);
  EXPECT_TRUE(is_star_h_einstein(good.front().tensor(), *good.front().h).einstein);
  for (double s : {0.25, 1.0, 2.0}) {
    const auto bad = gen_product_spheres(1.0, 2.0, 2, s);
    EXPECT_FALSE(is_star_h_einstein(bad.front().tensor(), *bad.front().h).einstein) << s;
  }
}

TEST(SyntheticStarH, DiagonalOperator) {
  const PointSample s = gen_synthetic_star_h({1, 2, 3}, {0, 0, 0}, Eigen::Vector4d::Ones(),
                                             Eigen::Vector4d::Ones(), Matrix4::Identity());
  const Matrix k = operator_from(s.tensor(1e-12), s.g, OperatorKind::kViaG).matrix;
  Eigen::VectorXd d(6);
  d << 1, 2, 3, 1, 2, 3;
  EXPECT_LE((k - Matrix(d.asDiagonal())).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(SyntheticStarH, MixedBlocks) {
  const double m = 0.25;
  const PointSample s = gen_synthetic_star_h({1, 2, 3}, {m, m, -2 * m}, Eigen::Vector4d::Ones(),
                                             Eigen::Vector4d::Ones(), Matrix4::Identity());
  const Matrix k = operator_from(s.tensor(1e-12), s.g, OperatorKind::kViaG).matrix;
  Matrix expected = Matrix::Zero(6, 6);
  const Eigen::Vector3d l(1, 2, 3), mu(m, m, -2 * m);
  for (int i = 0; i < 3; ++i) {
    expected(i, i) = expected(i + 3, i + 3) = l[i];
    expected(i, i + 3) = expected(i + 3, i) = mu[i];
  }
  EXPECT_LE((k - expected).cwiseAbs().maxCoeff(), 1e-14);
  // Lambda+ and Lambda- spectra are lambda + mu and lambda - mu.
  Eigen::SelfAdjointEigenSolver<Matrix> es(k);
  std::vector<double> got(es.eigenvalues().data(), es.eigenvalues().data() + 6);
  std::vector<double> want;
  for (int i = 0; i < 3; ++i) want.push_back(l[i] + mu[i]), want.push_back(l[i] - mu[i]);
  std::sort(want.begin(), want.end());
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(got[i], want[i], 1e-13);
}

TEST(SyntheticStarH, EinsteinInRandomFrames) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const PointSample s =
        gen_synthetic_star_h({0.5, -1, 2}, {0.3, -0.1, -0.2}, Eigen::Vector4d(1, 2, 0.5, 1.5),
                             Eigen::Vector4d(2, 1, 1, 0.7), random_rotation(rng));
    ASSERT_TRUE(s.h);
    EXPECT_TRUE(is_star_h_einstein(s.tensor(1e-12), *s.h).einstein);
  }
}

TEST(SyntheticStarH, Errors) {
  EXPECT_EQ(code_of([] {
              gen_synthetic_star_h({1, 2, 3}, {0.1, 0.1, 0.1}, Eigen::Vector4d::Ones(),
                                   Eigen::Vector4d::Ones(), Matrix4::Identity());
            }),
            ErrorCode::kBianchiViolation);
  Matrix4 reflect = Matrix4::Identity();
  reflect(0, 0) = -1;
  EXPECT_EQ(code_of([&] {
              gen_synthetic_star_h({1, 2, 3}, {0, 0, 0}, Eigen::Vector4d::Ones(),
                                   Eigen::Vector4d::Ones(), reflect);
            }),
            ErrorCode::kPrecondition);
  EXPECT_EQ(code_of([] {
              gen_synthetic_star_h({1, 2, 3}, {0, 0, 0}, Eigen::Vector4d(1, 1, 0, 1),
                                   Eigen::Vector4d::Ones(), Matrix4::Identity());
            }),
            ErrorCode::kPrecondition);
}

TEST(RandomRotation, IsSpecialOrthogonal) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix4 r = random_rotation(rng);
    EXPECT_LE((r.transpose() * r - Matrix4::Identity()).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_NEAR(r.determinant(), 1.0, 1e-14);
  }
}

TEST(SyntheticStarL, BlocksInFrame) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> unit(-0.3, 0.3);
  for (int c = 1; c <= 4; ++c) {
    const StarLBlocks b = blocks_from_complex(random_case_matrix(c, rng));
    Matrix4 frame = Matrix4::Identity();
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) frame(i, j) += unit(rng);
    if (frame.determinant() < 0) frame.col(3) *= -1;
    const PointSample s = gen_synthetic_star_l(b.a, b.b, frame);
    ASSERT_TRUE(s.t);
    EXPECT_LE((frame.transpose() * s.g * frame - Matrix4::Identity()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(s.t->dot(s.g * *s.t), 1.0, 1e-12);
    const CurvatureTensor rm = s.tensor(1e-10);
    const Matrix k = operator_from(rm.in_frame(frame), Matrix::Identity(4, 4), OperatorKind::kViaG).matrix;
    const double scale = std::max(1.0, std::max(b.a.cwiseAbs().maxCoeff(), b.b.cwiseAbs().maxCoeff()));
    EXPECT_LE((k.topLeftCorner(3, 3) - b.a).cwiseAbs().maxCoeff(), 1e-10 * scale);
    EXPECT_LE((k.topRightCorner(3, 3) - b.b).cwiseAbs().maxCoeff(), 1e-10 * scale);
    EXPECT_LE((k.bottomRightCorner(3, 3) + b.a).cwiseAbs().maxCoeff(), 1e-10 * scale);
    EXPECT_TRUE(is_star_l_einstein(rm, s.g, *s.t).einstein);
  }
}

TEST(SyntheticStarL, BianchiViolationRejected) {
  EXPECT_EQ(code_of([] {
              gen_synthetic_star_l(Eigen::Matrix3d::Identity(), Eigen::Matrix3d::Identity());
            }),
            ErrorCode::kBianchiProjection);
}

TEST(SampleIo, JsonRoundTripIsExact) {
  std::mt19937_64 rng(14);
  PointSample s = gen_synthetic_star_h({0.1, 1.0 / 3.0, -2.5}, {1e-3, -1.0 / 7.0, 1.0 / 7.0 - 1e-3},
                                       Eigen::Vector4d(1, 2, 3, 4), Eigen::Vector4d(0.5, 1, 1, 2),
                                       random_rotation(rng));
  s.weight = 0.1;
  s.coords = {1.0 / 3.0, 2.0};
  const std::string line = sample_to_json(s);
  const PointSample back = sample_from_json(line);
  EXPECT_EQ(sample_to_json(back), line);
  EXPECT_EQ(back.g, s.g);
  EXPECT_EQ(*back.h, *s.h);
  EXPECT_EQ(*back.weight, 0.1);
  ASSERT_EQ(back.rm.size(), s.rm.size());
  for (size_t n = 0; n < s.rm.size(); ++n) EXPECT_EQ(back.rm[n].value, s.rm[n].value);
}

TEST(SampleIo, PlainAndGzipFiles) {
  auto samples = gen_space_form(4, 1.0, GridSpec{GridKind::kSphere, 3, 1.0});
  for (const std::string name : {"plain.jsonl", "packed.jsonl.gz"}) {
    const std::string path = temp_path(name);
    write_samples(path, samples);
    const auto back = read_samples(path);
    ASSERT_EQ(back.size(), samples.size());
    for (size_t n = 0; n < back.size(); ++n) EXPECT_EQ(sample_to_json(back[n]), sample_to_json(samples[n]));
    std::filesystem::remove(path);
  }
  // gzip detected from the content regardless of the name
  const std::string odd = temp_path("gzip_without_suffix.jsonl");
  gzFile f = gzopen(odd.c_str(), "wb");
  const std::string line = sample_to_json(samples[0]) + "\n";
  gzwrite(f, line.data(), static_cast<unsigned>(line.size()));
  gzclose(f);
  EXPECT_EQ(read_samples(odd).size(), 1u);
  std::filesystem::remove(odd);
}

TEST(SampleIo, BlankLinesAndLineNumbers) {
  const std::string path = temp_path("lines.jsonl");
  const auto samples = gen_product_spheres(1.0, 1.0, 1);
  {
    std::ofstream out(path);
    out << sample_to_json(samples[0]) << "\n\n   \n" << sample_to_json(samples[0]) << "\n";
  }
  EXPECT_EQ(read_samples(path).size(), 2u);
  {
    std::ofstream out(path);
    out << sample_to_json(samples[0]) << "\n{\"dim\":4,\"g\":[1]}\n";
  }
  try {
    read_samples(path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFormat);
    EXPECT_EQ(std::string(e.what()).rfind("line 2:", 0), 0u) << e.what();
  }
  std::filesystem::remove(path);
}

TEST(SampleIo, MalformedInput) {
  for (const char* bad :
       {"not json", "[]", "{\"dim\":4}", "{\"dim\":4,\"g\":[1,0,1,0,0,1,0,0,0,1],\"rm\":[[1,2,1]]}",
        "{\"dim\":4,\"g\":[1,0,1,0,0,1,0,0,0,1],\"rm\":[[0,2,1,2,1]]}",
        "{\"dim\":4,\"g\":[1,0,1,0,0,1,0,0,0,1],\"rm\":[],\"weight\":\"x\"}"}) {
    EXPECT_EQ(code_of([&] { sample_from_json(bad, 7); }), ErrorCode::kFormat) << bad;
  }
  EXPECT_EQ(code_of([] { read_samples(temp_path("does_not_exist.jsonl")); }), ErrorCode::kFormat);
  PointSample s = gen_product_spheres(1.0, 1.0, 1)[0];
  s.weight = std::nan("");
  EXPECT_EQ(code_of([&] { sample_to_json(s); }), ErrorCode::kFormat);
}

TEST(HDeformation, AddsTFlatSquared) {
  std::mt19937_64 rng(15);
  const StarLBlocks b = blocks_from_complex(random_case_matrix(1, rng));
  Matrix4 frame = Matrix4::Identity();
  frame(0, 1) = 0.4;
  const PointSample s = with_h_deformation(gen_synthetic_star_l(b.a, b.b, frame), 0.5);
  ASSERT_TRUE(s.h);
  // h(T,T) = 1 + f, and h = g on the g-orthogonal complement of T.
  EXPECT_NEAR(s.t->dot(*s.h * *s.t), 1.5, 1e-12);
  const Vector other = frame.col(2);
  EXPECT_NEAR(other.dot(*s.h * other), other.dot(s.g * other), 1e-12);
  EXPECT_GT(Eigen::SelfAdjointEigenSolver<Matrix>(*s.h).eigenvalues().minCoeff(), 0.0);
}

TEST(HDeformation, Errors) {
  const PointSample flat = gen_product_spheres(1.0, 1.0, 1)[0];
  EXPECT_EQ(code_of([&] { with_h_deformation(flat, 0.5); }), ErrorCode::kPrecondition);
  const PointSample s = gen_synthetic_star_l(Eigen::Matrix3d::Zero(), Eigen::Matrix3d::Zero());
  EXPECT_EQ(code_of([&] { with_h_deformation(s, -1.0); }), ErrorCode::kPrecondition);
}
