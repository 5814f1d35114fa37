#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "curvnf/curvature.hpp"
#include "curvnf/hodge.hpp"
#include "curvnf/normal_form4.hpp"

namespace curvnf {

/// Euler and signature integrands at one point of a *h-Einstein metric.
/// "per_frame" values multiply E^1^E^2^E^3^E^4 of the normal-form coframe;
/// E^1234 = volume_factor * dV_g with volume_factor = sqrt(det g^{ij}).
struct IntegrandValue {
  double chi_density = 0.0;   // per frame volume
  double tau_density = 0.0;   // per frame volume
  double chi_frame_expansion = 0.0;  // expanded epsilon^{ijkl} form, per frame
  double volume_factor = 1.0;
  double chi_per_volume = 0.0;  // per dV_g
  double tau_per_volume = 0.0;  // per dV_g
  bool orthogonal = false;      // g^{ij} diagonal in the frame
  double chi_orthogonal_reduced = 0.0;  // per frame, orthogonal case only
  double ht_correction_density = 0.0;   // per dV_g, orthogonal case only
};

/// chi uses the Pfaffian of the curvature, sqrt(det g^{ij}) / (4 pi^2) *
/// sum(lambda_i^2 + mu_i^2) per frame volume, which is frame independent.
/// tau is the expanded tr(Omega^2) integrand with prefactor
/// -1/3 * 1/(2^5 pi^2) * 16. chi_frame_expansion keeps the expanded
/// epsilon^{ijkl} Omega^i_j ^ Omega^k_l form; it agrees with chi_density when
/// the frame is g-orthonormal. g_inverse is (g^{ij}) in the frame of nf;
/// the frame counts as orthogonal when every |g^{ij}|, i != j, is at most
/// tol * max g^{ii}.
IntegrandValue chi_tau_densities(const NormalForm4& nf,
                                 const Eigen::Matrix4d& g_inverse,
                                 double tol = 1e-9);

/// (1/4 pi^2) sum (l~_i - m~_i)(k~_i - m~_i).
double ht_correction(const ScaledValues& s);

/// Normal form plus densities at one sample. Uses the g-orthogonal
/// normal form when one exists, the canonical one otherwise.
struct PointDensity {
  NormalForm4 normal_form;
  IntegrandValue value;
};
PointDensity point_density(const CurvatureTensor& rm, const Eigen::Matrix4d& g,
                           const Eigen::Matrix4d& h, double tol = 1e-9);

struct WeightedDensity {
  IntegrandValue value;
  std::optional<double> weight;
};

struct Integrals {
  double chi = 0.0;
  double tau = 0.0;
  double correction = 0.0;
  bool correction_available = true;  // every point was g-orthogonal
  double ht_identity_residual = 0.0;  // |chi - 3/2 tau - correction|
  double total_weight = 0.0;
  int points = 0;
};

/// Ordered weighted sums. Throws kMissingWeight if a weight is absent and
/// kPrecondition if one is negative or not finite.
Integrals integrate_samples(std::span<const WeightedDensity> samples);

struct WeylSplit {
  Eigen::Matrix3d w_plus;
  Eigen::Matrix3d w_minus;
  double off_block = 0.0;          // largest entry mixing Lambda+ and Lambda-
  double relation_residual = 0.0;  // max |[W+] + [W-]|
  double scalar_curvature = 0.0;
  bool star_l_einstein = false;
  double commutator = 0.0;         // relative ||[R_L, *_L]||
  double f = 0.0;                  // tr_{g_L} Rm ~ f g_L
  double trace_residual = 0.0;
  bool relation_holds = false;
};

/// Weyl operator in a g-orthonormal frame with e1 = t, split on Lambda+-.
/// The relation [W+] = -[W-] with scal = 0 is reported, never assumed.
WeylSplit weyl_split_check(const CurvatureTensor& rm, const Eigen::Matrix4d& g,
                           const Eigen::Vector4d& t, double tol = 1e-9);

struct BuildingBlock {
  std::string name;
  long long chi = 0;
  long long tau = 0;
};

/// S4, CP2, S1xS3, K3, T4 and HYP(d) (degree-d hypersurface in CP3, d >= 1).
/// Throws kUnknownBlock.
BuildingBlock lookup_block(const std::string& name);

struct ConnectedSum {
  std::vector<BuildingBlock> blocks;
  long long chi = 0;
  long long tau = 0;
  bool obstructed = false;  // chi = 0 and tau != 0
  std::string verdict;
};

/// chi = sum chi_i - 2(k - 1), tau = sum tau_i.
ConnectedSum connected_sum(std::span<const BuildingBlock> blocks);

/// Parses "CP2 # CP2 # S1xS3" style expressions.
ConnectedSum connected_sum(const std::string& expression);

}  // namespace curvnf
