#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "curvnf/curvature.hpp"
#include "curvnf/hodge.hpp"

namespace curvnf {

/// Marker for an infinite number of spacelike critical planes.
inline constexpr int kInfiniteCount = -1;

/// "infinite" for kInfiniteCount, the decimal count otherwise.
std::string format_count(int count);

struct ComplexEigenvalue {
  std::complex<double> value;
  int algebraic = 1;
  int geometric = 1;
  double condition = 1.0;  // largest eigenvalue condition number in cluster
};

/// Complex normal form of a *L-Einstein curvature operator:
///   case 1: three distinct eigenvalues             (3 spacelike critical planes)
///   case 2: an eigenspace of geometric mult. > 1   (infinitely many)
///   case 3: two distinct eigenvalues, each gm 1    (1)
///   case 4: one distinct eigenvalue, gm 1          (0)
struct ComplexNormalForm {
  int case_id = 0;
  Matrix3c matrix;
  std::vector<ComplexEigenvalue> eigenvalues;  // sorted by (real, imag)
  int spacelike_critical_count = 0;
  double cluster_tolerance = 0.0;
};

/// Expected spacelike critical count of a case (3, infinite, 1, 0).
int expected_critical_count(int case_id);

/// Eigenstructure of a complex 3x3 matrix. Eigenvalues z_i, z_j are merged
/// when |z_i - z_j| <= tau * min(k_i, k_j), with k the eigenvalue condition
/// numbers and tau = cluster_tol * max(1, s), s = max(spectral radius,
/// ||C||_2). Computed eigenvalues of a Jordan block split by about
/// eps^(1/size), and their condition numbers grow accordingly.
ComplexNormalForm classify_matrix(const Matrix3c& c, double cluster_tol = 1e-8);

/// Builds g_L from the g-unit field t, works in a g-orthonormal frame with
/// e1 = t, complexifies R_L and classifies it. Throws kNonUnitVector,
/// kFlatTensor and kNotComplexLinear.
ComplexNormalForm classify_complex(const CurvatureTensor& rm, const Matrix& g,
                                   const Vector& t, double tol = 1e-9,
                                   double cluster_tol = 1e-8);

struct CriticalPlane {
  Bivector plane;  // adapted-frame coordinates, <P,P>_L = 1
  Eigen::Vector3cd line;  // unit complex coordinates
  double a = 0.0, b = 0.0, residual = 0.0;
  int hits = 0;  // starts that converged onto this line
};

struct SpacelikeSearch {
  int count = 0;  // kInfiniteCount when more than three lines survive
  std::vector<CriticalPlane> planes;
  int converged = 0;
  int starts = 0;
};

struct SearchOptions {
  int starts = 64;
  double accept = 1e-7;        // residual relative to ||R_L||_F
  double nondegenerate = 1e-4; // |<P,P>_L| / |P|^2 lower bound
  double dedup = 1e-4;         // 1 - |<z1,z2>|^2 / (|z1|^2 |z2|^2)
};

/// Multi-start Levenberg-Marquardt search for spacelike critical planes of
/// the Lorentzian quadratic form. Planes are charted as graphs
/// {(phi(v), v) : v in W} over a spatial 2-plane W with |phi| < 1; starts
/// come from a Halton sequence, so the result is deterministic.
SpacelikeSearch count_spacelike_critical(const CurvatureTensor& rm,
                                         const Matrix& g, const Vector& t,
                                         double tol = 1e-9,
                                         const SearchOptions& options = {});

/// Blocks (A, B) with C = -A - iB after shifting C by -i Im(tr C)/3 so that
/// tr B = 0. Throws kPrecondition unless C is complex symmetric.
struct StarLBlocks {
  Eigen::Matrix3d a;
  Eigen::Matrix3d b;
};
StarLBlocks blocks_from_complex(const Matrix3c& c);

/// Random complex-symmetric matrix with the eigenstructure of `case_id`,
/// conjugated by a random complex orthogonal matrix exp(K), K skew.
Matrix3c random_case_matrix(int case_id, std::mt19937_64& rng);

}  // namespace curvnf
