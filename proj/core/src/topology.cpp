#include "curvnf/topology.hpp"

#include <cmath>
#include <regex>
#include <sstream>

#include "curvnf/einstein.hpp"
#include "curvnf/error.hpp"
#include "curvnf/frame.hpp"

namespace curvnf {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

IntegrandValue chi_tau_densities(const NormalForm4& nf,
                                 const Eigen::Matrix4d& g_inverse,
                                 double tol) {
  // 1-based accessors so the expansions read like the index formulas.
  auto g = [&](int i, int j) { return g_inverse(i - 1, j - 1); };
  auto det_c = [&](int i, int j) { return g(i, i) * g(j, j) - g(i, j) * g(i, j); };
  const double l1 = nf.lambdas[0], l2 = nf.lambdas[1], l3 = nf.lambdas[2];
  const double m1 = nf.mus[0], m2 = nf.mus[1], m3 = nf.mus[2];
  const double q1 = l1 * l1 + m1 * m1, q2 = l2 * l2 + m2 * m2,
               q3 = l3 * l3 + m3 * m3;
  const double x1 = g(2, 3) * g(4, 1) - g(1, 3) * g(2, 4);
  const double x2 = g(1, 2) * g(3, 4) - g(1, 4) * g(3, 2);
  const double x3 = g(2, 4) * g(1, 3) - g(1, 2) * g(3, 4);

  IntegrandValue v;
  v.volume_factor = std::sqrt(g_inverse.determinant());
  v.chi_density = v.volume_factor / (4.0 * kPi * kPi) * (q1 + q2 + q3);
  v.chi_frame_expansion =
      8.0 / (128.0 * kPi * kPi) *
      ((det_c(1, 3) + det_c(2, 3) + det_c(1, 4) + det_c(2, 4)) * q1 +
       (det_c(1, 4) + det_c(3, 4) + det_c(1, 2) + det_c(2, 3)) * q2 +
       (det_c(3, 4) + det_c(2, 4) + det_c(1, 2) + det_c(1, 3)) * q3 +
       2.0 * x1 * l1 * m1 + 2.0 * x2 * l2 * m2 + 2.0 * x3 * l3 * m3);
  v.tau_density = -1.0 / 3.0 / (32.0 * kPi * kPi) * 16.0 *
                  (x1 * q1 + x2 * q2 + x3 * q3 -
                   (det_c(1, 2) + det_c(3, 4)) * l1 * m1 -
                   (det_c(1, 3) + det_c(2, 4)) * l2 * m2 -
                   (det_c(1, 4) + det_c(2, 3)) * l3 * m3);
  v.chi_per_volume = v.chi_density * v.volume_factor;
  v.tau_per_volume = v.tau_density * v.volume_factor;

  double off = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) off = std::max(off, std::abs(g_inverse(i, j)));
  v.orthogonal = off <= tol * g_inverse.diagonal().maxCoeff();
  if (v.orthogonal) {
    v.chi_orthogonal_reduced =
        ((g(1, 1) + g(2, 2)) * (g(3, 3) + g(4, 4)) * q1 +
         (g(1, 1) + g(3, 3)) * (g(2, 2) + g(4, 4)) * q2 +
         (g(1, 1) + g(4, 4)) * (g(2, 2) + g(3, 3)) * q3) /
        (16.0 * kPi * kPi);
    // c_i = 1 / sqrt(g(e_i, e_i)) = sqrt(g^{ii}) for an orthogonal frame.
    NormalForm4 copy = nf;
    copy.frame.setIdentity();
    Eigen::Matrix4d g_frame = Eigen::Matrix4d::Zero();
    for (int i = 0; i < 4; ++i) g_frame(i, i) = 1.0 / g_inverse(i, i);
    v.ht_correction_density = ht_correction(*scaled_normal_form(copy, g_frame).scaled);
  }
  return v;
}

double ht_correction(const ScaledValues& s) {
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    sum += (s.lambda[i] - s.mu[i]) * (s.kappa[i] - s.mu[i]);
  }
  return sum / (4.0 * kPi * kPi);
}

PointDensity point_density(const CurvatureTensor& rm, const Eigen::Matrix4d& g,
                           const Eigen::Matrix4d& h, double tol) {
  PointDensity out;
  try {
    out.normal_form = orthogonal_normal_form(rm, h, g, tol);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNonOrthogonalFrame) throw;
    out.normal_form = normal_form_4(rm, h, tol);
  }
  const Eigen::Matrix4d g_frame = metric_in_frame(g, out.normal_form.frame);
  out.value = chi_tau_densities(out.normal_form, g_frame.inverse(), tol);
  return out;
}

Integrals integrate_samples(std::span<const WeightedDensity> samples) {
  Integrals out;
  for (size_t n = 0; n < samples.size(); ++n) {
    const auto& s = samples[n];
    if (!s.weight) {
      throw Error(ErrorCode::kMissingWeight,
                  "sample " + std::to_string(n) + " has no quadrature weight");
    }
    const double w = *s.weight;
    if (!std::isfinite(w) || w < 0.0) {
      throw Error(ErrorCode::kPrecondition,
                  "sample " + std::to_string(n) + " has an invalid weight");
    }
    out.chi += w * s.value.chi_per_volume;
    out.tau += w * s.value.tau_per_volume;
    if (s.value.orthogonal) {
      out.correction += w * s.value.ht_correction_density;
    } else {
      out.correction_available = false;
    }
    out.total_weight += w;
    ++out.points;
  }
  out.ht_identity_residual =
      out.correction_available
          ? std::abs(out.chi - 1.5 * out.tau - out.correction)
          : NAN;
  return out;
}

WeylSplit weyl_split_check(const CurvatureTensor& rm, const Eigen::Matrix4d& g,
                           const Eigen::Vector4d& t, double tol) {
  WeylSplit out;
  const Matrix frame = adapted_frame(g, t);
  const CurvatureTensor local = rm.in_frame(frame);
  const Matrix6 w = weyl_operator(local, Matrix4::Identity()).matrix;
  const Matrix6 basis =
      sd_asd_basis(hodge_star(Matrix4::Identity())).as_matrix();
  const Matrix6 split = basis.transpose() * w * basis;
  out.w_plus = split.topLeftCorner<3, 3>();
  out.w_minus = split.bottomRightCorner<3, 3>();
  out.off_block = std::max(split.topRightCorner<3, 3>().cwiseAbs().maxCoeff(),
                           split.bottomLeftCorner<3, 3>().cwiseAbs().maxCoeff());
  out.relation_residual = (out.w_plus + out.w_minus).cwiseAbs().maxCoeff();

  const EinsteinReport report = is_star_l_einstein(rm, g, t, tol);
  out.star_l_einstein = report.einstein;
  out.commutator = report.relative_commutator;
  out.scalar_curvature = report.scalar_curvature;
  out.f = report.trace.f;
  out.trace_residual = report.trace.residual;
  const double scale = std::max(1.0, rm.max_abs());
  out.relation_holds = report.einstein &&
                       out.relation_residual <= tol * scale &&
                       std::abs(out.scalar_curvature) <= tol * scale;
  return out;
}

BuildingBlock lookup_block(const std::string& name) {
  if (name == "S4") return {name, 2, 0};
  if (name == "CP2") return {name, 3, 1};
  if (name == "S1xS3") return {name, 0, 0};
  if (name == "K3") return {name, 24, -16};
  if (name == "T4") return {name, 0, 0};
  static const std::regex hyp(R"(HYP\(\s*([0-9]+)\s*\))");
  std::smatch m;
  if (std::regex_match(name, m, hyp)) {
    const long long d = std::stoll(m[1].str());
    if (d < 1) {
      throw Error(ErrorCode::kUnknownBlock, "hypersurface degree must be >= 1");
    }
    // d (4 - d^2) = d (2 - d)(2 + d) is always divisible by 3.
    return {name, (d * d - 4 * d + 6) * d, (4 - d * d) * d / 3};
  }
  throw Error(ErrorCode::kUnknownBlock,
              "unknown building block '" + name +
                  "' (known: S4, CP2, S1xS3, K3, T4, HYP(d))");
}

ConnectedSum connected_sum(std::span<const BuildingBlock> blocks) {
  if (blocks.empty()) {
    throw Error(ErrorCode::kPrecondition, "connected sum of no blocks");
  }
  ConnectedSum out;
  out.blocks.assign(blocks.begin(), blocks.end());
  for (const auto& b : blocks) {
    out.chi += b.chi;
    out.tau += b.tau;
  }
  out.chi -= 2 * (static_cast<long long>(blocks.size()) - 1);
  out.obstructed = out.chi == 0 && out.tau != 0;
  out.verdict = out.obstructed ? "admits no *L-Einstein metric (chi = 0, tau != 0)"
                               : "no obstruction";
  return out;
}

ConnectedSum connected_sum(const std::string& expression) {
  std::vector<BuildingBlock> blocks;
  std::stringstream in(expression);
  std::string part;
  while (std::getline(in, part, '#')) {
    const auto first = part.find_first_not_of(" \t");
    const auto last = part.find_last_not_of(" \t");
    if (first == std::string::npos) {
      throw Error(ErrorCode::kUnknownBlock, "empty summand in '" + expression + "'");
    }
    blocks.push_back(lookup_block(part.substr(first, last - first + 1)));
  }
  return connected_sum(std::span<const BuildingBlock>(blocks));
}

}  // namespace curvnf
