#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>
#include <thread>

#include "curvnf/einstein.hpp"
#include "curvnf/error.hpp"
#include "curvnf/petrov.hpp"
#include "curvnf/sample_io.hpp"
#include "curvnf/topology.hpp"
#include "curvnf/version.hpp"
#include "curvnf/zoo.hpp"

namespace curvnf::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string file;
  double tol = 1e-9;
  std::string format = "text";
  int threads = 0;
  std::string output;
};

struct Outcome {
  json report;
  int exit = kOk;
};

template <typename Vec>
json to_list(const Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json to_rows(const Matrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(to_list(Vector(m.row(i))));
  return out;
}

json error_json(const std::exception& e) {
  json out = {{"message", e.what()}};
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    out["code"] = to_string(err->code());
  }
  return out;
}

int thread_count(int requested, size_t work) {
  int n = requested > 0 ? requested
                        : static_cast<int>(std::thread::hardware_concurrency());
  n = std::max(1, n);
  return static_cast<int>(std::min<size_t>(static_cast<size_t>(n), std::max<size_t>(work, 1)));
}

// Contiguous index ranges per thread; results are written by index so the
// reduction order never depends on scheduling.
template <typename F>
void parallel_ranges(size_t n, int threads, F&& body) {
  threads = thread_count(threads, n);
  if (threads == 1) {
    body(size_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  const size_t chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const size_t begin = std::min(n, t * chunk);
    const size_t end = std::min(n, begin + chunk);
    pool.emplace_back([&body, begin, end] { body(begin, end); });
  }
  for (auto& th : pool) th.join();
}

template <typename F>
std::vector<json> map_points(const std::vector<PointSample>& samples,
                             int threads, F&& analyse) {
  std::vector<json> out(samples.size());
  parallel_ranges(samples.size(), threads, [&](size_t begin, size_t end) {
    for (size_t n = begin; n < end; ++n) {
      json point;
      try {
        point = analyse(samples[n]);
      } catch (const std::exception& e) {
        point = {{"error", error_json(e)}};
      }
      point["index"] = n;
      out[n] = std::move(point);
    }
  });
  return out;
}

std::vector<PointSample> load(const std::string& path) {
  std::vector<PointSample> samples = read_samples(path);
  if (samples.empty()) throw UsageError(path + ": no samples");
  return samples;
}

Eigen::Matrix4d metric4(const Matrix& m) {
  if (m.rows() != 4 || m.cols() != 4) {
    throw Error(ErrorCode::kDimension, "this command needs 4-dimensional samples");
  }
  return m;
}

json base_report(const std::string& command, const Common& c) {
  return {{"command", command},
          {"tool", {{"name", "curvnf"}, {"version", kVersion}}},
          {"tolerances", {{"tol", c.tol}}}};
}

int count_errors(const std::vector<json>& points) {
  return static_cast<int>(std::count_if(points.begin(), points.end(), [](const json& p) {
    return p.contains("error");
  }));
}

// ---------------------------------------------------------------- validate

Outcome cmd_validate(const Common& c) {
  const auto samples = load(c.file);
  auto points = map_points(samples, c.threads, [&](const PointSample& s) {
    const CurvatureCheck check = check_curvature(s.rm, s.dim, c.tol);
    json p = {{"ok", check.ok}};
    if (!check.ok) {
      json idx = json::array();
      for (int i : check.indices) idx.push_back(i + 1);
      p["violation"] = check.violation;
      p["indices"] = idx;
      p["residual"] = check.residual;
    }
    if (s.t) {
      const double norm = s.t->dot(s.g * *s.t);
      p["t_norm_defect"] = std::abs(norm - 1.0);
      if (std::abs(norm - 1.0) > 1e-9 && check.ok) {
        p["ok"] = false;
        p["violation"] = "non-unit T";
      }
    }
    return p;
  });
  int failed = 0;
  for (const json& p : points) failed += p.contains("error") || !p.value("ok", false);
  Outcome o{base_report("validate", c)};
  o.report["points"] = points;
  o.report["aggregate"] = {{"points", points.size()},
                           {"valid", points.size() - failed},
                           {"invalid", failed}};
  o.exit = failed ? kAnalysisFailure : kOk;
  return o;
}

// ---------------------------------------------------------- einstein-check

Outcome cmd_einstein(const Common& c, const std::string& metric) {
  const auto samples = load(c.file);
  auto points = map_points(samples, c.threads, [&](const PointSample& s) {
    const CurvatureTensor rm = s.tensor(c.tol);
    json p;
    if (metric == "lorentz") {
      if (!s.t) throw Error(ErrorCode::kPrecondition, "sample has no T");
      const EinsteinReport r = is_star_l_einstein(rm, s.g, *s.t, c.tol);
      p = {{"einstein", r.einstein},
           {"commutator", r.commutator},
           {"relative_commutator", r.relative_commutator},
           {"f", r.trace.f},
           {"trace_residual", r.trace.residual},
           {"scalar_curvature", r.scalar_curvature}};
      const WeylSplit w = weyl_split_check(rm, metric4(s.g), Eigen::Vector4d(*s.t), c.tol);
      p["weyl_relation_residual"] = w.relation_residual;
    } else {
      if (metric == "h" && !s.h) throw Error(ErrorCode::kPrecondition, "sample has no h");
      const Matrix& scalar = metric == "h" ? *s.h : s.g;
      const EinsteinReport r = is_star_h_einstein(rm, scalar, c.tol);
      p = {{"einstein", r.einstein},
           {"commutator", r.commutator},
           {"relative_commutator", r.relative_commutator},
           {"f", r.trace.f},
           {"trace_residual", r.trace.residual}};
    }
    return p;
  });
  int yes = 0, no = 0;
  double worst = 0.0;
  for (const json& p : points) {
    if (p.contains("error")) continue;
    (p["einstein"].get<bool>() ? yes : no)++;
    worst = std::max(worst, p["relative_commutator"].get<double>());
  }
  const int errors = count_errors(points);
  Outcome o{base_report("einstein-check", c)};
  o.report["metric"] = metric;
  o.report["points"] = points;
  o.report["aggregate"] = {
      {"histogram", {{"einstein", yes}, {"not_einstein", no}, {"error", errors}}},
      {"max_relative_commutator", worst},
      {"points", points.size()}};
  o.exit = errors ? kAnalysisFailure : kOk;
  return o;
}

// ------------------------------------------------------------- normal-form

Outcome cmd_normal_form(const Common& c) {
  const auto samples = load(c.file);
  auto points = map_points(samples, c.threads, [&](const PointSample& s) {
    const CurvatureTensor rm = s.tensor(c.tol);
    json p;
    try {
      const PointDensity d = point_density(rm, metric4(s.g), metric4(s.h_or_g()), c.tol);
      const NormalForm4& nf = d.normal_form;
      p = {{"available", true},
           {"lambdas", to_list(nf.lambdas)},
           {"mus", to_list(nf.mus)},
           {"residual", nf.residual},
           {"frame", to_rows(nf.frame)},
           {"g_orthogonal", nf.scaled.has_value()}};
      if (nf.scaled) {
        p["scaled"] = {{"c", to_list(nf.scaled->c)},
                       {"lambda", to_list(nf.scaled->lambda)},
                       {"kappa", to_list(nf.scaled->kappa)},
                       {"mu", to_list(nf.scaled->mu)}};
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kPrecondition &&
          e.code() != ErrorCode::kFrameReconstruction) {
        throw;
      }
      p = {{"available", false}, {"note", e.what()}};
    }
    return p;
  });
  int available = 0;
  for (const json& p : points) available += p.value("available", false);
  const int errors = count_errors(points);
  const int unavailable = static_cast<int>(points.size()) - available - errors;
  Outcome o{base_report("normal-form", c)};
  o.report["points"] = points;
  o.report["aggregate"] = {{"available", available},
                           {"unavailable", unavailable},
                           {"error", errors},
                           {"points", points.size()}};
  o.exit = errors || unavailable ? kAnalysisFailure : kOk;
  return o;
}

// ------------------------------------------------------------------ petrov

Outcome cmd_petrov(const Common& c, double cluster_tol, bool count,
                   int starts) {
  const auto samples = load(c.file);
  SearchOptions options;
  options.starts = starts;
  auto points = map_points(samples, c.threads, [&](const PointSample& s) {
    if (!s.t) throw Error(ErrorCode::kPrecondition, "sample has no T");
    const CurvatureTensor rm = s.tensor(c.tol);
    const ComplexNormalForm nf = classify_complex(rm, s.g, *s.t, c.tol, cluster_tol);
    json eig = json::array();
    for (const auto& e : nf.eigenvalues) {
      eig.push_back({{"re", e.value.real()},
                     {"im", e.value.imag()},
                     {"algebraic", e.algebraic},
                     {"geometric", e.geometric}});
    }
    json p = {{"case", nf.case_id},
              {"eigenvalues", eig},
              {"expected_spacelike_critical", format_count(nf.spacelike_critical_count)}};
    if (count) {
      const SpacelikeSearch found = count_spacelike_critical(rm, s.g, *s.t, c.tol, options);
      p["found_spacelike_critical"] = format_count(found.count);
      p["count_agrees"] = found.count == nf.spacelike_critical_count;
      p["converged_starts"] = found.converged;
    }
    return p;
  });
  std::map<std::string, int> histogram{{"1", 0}, {"2", 0}, {"3", 0}, {"4", 0},
                                       {"unclassified", 0}};
  int disagreements = 0;
  for (const json& p : points) {
    if (p.contains("error")) {
      ++histogram["unclassified"];
      continue;
    }
    ++histogram[std::to_string(p["case"].get<int>())];
    if (p.contains("count_agrees") && !p["count_agrees"].get<bool>()) ++disagreements;
  }
  Outcome o{base_report("petrov", c)};
  o.report["tolerances"]["cluster_tol"] = cluster_tol;
  o.report["points"] = points;
  o.report["aggregate"] = {{"histogram", histogram}, {"points", points.size()}};
  if (count) o.report["aggregate"]["count_disagreements"] = disagreements;
  o.exit = histogram["unclassified"] ? kAnalysisFailure : kOk;
  return o;
}

// --------------------------------------------------------------- integrate

bool same_inputs(const PointSample& a, const PointSample& b) {
  if (a.dim != b.dim || a.g != b.g || a.h.has_value() != b.h.has_value()) return false;
  if (a.h && *a.h != *b.h) return false;
  if (a.rm.size() != b.rm.size()) return false;
  for (size_t n = 0; n < a.rm.size(); ++n) {
    const Component &x = a.rm[n], &y = b.rm[n];
    if (x.i != y.i || x.j != y.j || x.k != y.k || x.l != y.l || x.value != y.value) {
      return false;
    }
  }
  return true;
}

Outcome cmd_integrate(const Common& c, const std::string& quantity) {
  const auto samples = load(c.file);
  std::vector<WeightedDensity> values(samples.size());
  std::vector<std::string> failures(samples.size());
  parallel_ranges(samples.size(), c.threads, [&](size_t begin, size_t end) {
    // Constant-density short-circuit: reuse the previous point's value when
    // metric and curvature are bitwise identical.
    const PointSample* previous = nullptr;
    IntegrandValue cached;
    for (size_t n = begin; n < end; ++n) {
      const PointSample& s = samples[n];
      values[n].weight = s.weight;
      if (previous && failures[n - 1].empty() && same_inputs(*previous, s)) {
        values[n].value = cached;
        continue;
      }
      previous = &s;
      try {
        cached = point_density(s.tensor(c.tol), metric4(s.g), metric4(s.h_or_g()), c.tol).value;
        values[n].value = cached;
      } catch (const std::exception& e) {
        failures[n] = e.what();
      }
    }
  });
  Outcome o{base_report("integrate", c)};
  o.report["quantity"] = quantity;
  json failed = json::array();
  for (size_t n = 0; n < failures.size(); ++n) {
    if (!failures[n].empty()) failed.push_back({{"index", n}, {"message", failures[n]}});
  }
  if (!failed.empty()) {
    o.report["failures"] = failed;
    o.report["aggregate"] = {{"points", samples.size()}, {"failed", failed.size()}};
    o.exit = kAnalysisFailure;
    return o;
  }
  const Integrals in = integrate_samples(values);
  json agg = {{"points", in.points}, {"total_weight", in.total_weight}};
  if (quantity == "chi" || quantity == "all") agg["chi"] = in.chi;
  if (quantity == "tau" || quantity == "all") agg["tau"] = in.tau;
  if (quantity == "ht" || quantity == "all") {
    agg["correction_available"] = in.correction_available;
    if (in.correction_available) {
      agg["chi"] = in.chi;
      agg["tau"] = in.tau;
      agg["correction"] = in.correction;
      agg["ht_identity_residual"] = in.ht_identity_residual;
    } else if (quantity == "ht") {
      o.exit = kAnalysisFailure;
      agg["note"] = "correction needs a g-orthogonal normal form at every point";
    }
  }
  o.report["aggregate"] = agg;
  return o;
}

// -------------------------------------------------------------------- sums

Outcome cmd_sums(const std::string& expression) {
  ConnectedSum sum;
  try {
    sum = connected_sum(expression);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kUnknownBlock) throw UsageError(e.what());
    throw;
  }
  json blocks = json::array();
  for (const auto& b : sum.blocks) {
    blocks.push_back({{"name", b.name}, {"chi", b.chi}, {"tau", b.tau}});
  }
  Outcome o;
  o.report = {{"command", "sums"},
              {"tool", {{"name", "curvnf"}, {"version", kVersion}}},
              {"expression", expression},
              {"blocks", blocks},
              {"chi", sum.chi},
              {"tau", sum.tau},
              {"obstructed", sum.obstructed},
              {"verdict", sum.verdict}};
  return o;
}

// --------------------------------------------------------------------- gen

struct GenOptions {
  std::string output = "-";
  std::uint64_t seed = 1;
  int count = 10;
  double weight = 1.0;
  // space-form
  int dim = 4;
  double kappa = 1.0;
  int nodes = 20;
  bool torus = false;
  double side = 1.0;
  // product spheres
  double a = 1.0, b = 1.0;
  std::optional<double> h_scale;
  // star-h
  std::vector<double> lambdas, mus, h_diag, g_diag;
  // star-l
  int case_id = 1;
  bool random_frame = false;
  std::optional<double> h_deform;
};

Eigen::Vector3d vec3(const std::vector<double>& v, const char* name) {
  if (v.size() != 3) throw UsageError(std::string(name) + " needs 3 values");
  return {v[0], v[1], v[2]};
}

Eigen::Vector4d vec4(const std::vector<double>& v, const char* name) {
  if (v.size() != 4) throw UsageError(std::string(name) + " needs 4 values");
  return {v[0], v[1], v[2], v[3]};
}

void gen(const std::string& kind, const GenOptions& o) {
  SampleWriter writer(o.output);
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0), positive(0.5, 2.0);
  if (kind == "space-form") {
    GridSpec grid{o.torus ? GridKind::kTorus : GridKind::kSphere, o.nodes, o.side};
    gen_space_form(o.dim, o.torus ? 0.0 : o.kappa, grid,
                   [&](const PointSample& s) { writer.write(s); });
  } else if (kind == "product-spheres") {
    gen_product_spheres(o.a, o.b, o.nodes, o.h_scale,
                        [&](const PointSample& s) { writer.write(s); });
  } else if (kind == "star-h") {
    for (int n = 0; n < o.count; ++n) {
      Eigen::Vector3d l(2 * unit(rng), 2 * unit(rng), 2 * unit(rng));
      Eigen::Vector3d m(unit(rng), unit(rng), 0.0);
      m[2] = -m[0] - m[1];
      Eigen::Vector4d hd(positive(rng), positive(rng), positive(rng), positive(rng));
      Eigen::Vector4d gd(positive(rng), positive(rng), positive(rng), positive(rng));
      const Matrix4 rotation = random_rotation(rng);
      if (!o.lambdas.empty()) l = vec3(o.lambdas, "--lambdas");
      if (!o.mus.empty()) m = vec3(o.mus, "--mus");
      if (!o.h_diag.empty()) hd = vec4(o.h_diag, "--h-diag");
      if (!o.g_diag.empty()) gd = vec4(o.g_diag, "--g-diag");
      PointSample s = gen_synthetic_star_h(l, m, hd, gd, rotation);
      s.weight = o.weight;
      writer.write(s);
    }
  } else if (kind == "star-l") {
    if (o.case_id < 1 || o.case_id > 4) throw UsageError("--case must be 1..4");
    if (o.h_deform && !(*o.h_deform > -1.0)) throw UsageError("--h-deform must exceed -1");
    for (int n = 0; n < o.count; ++n) {
      const StarLBlocks blocks = blocks_from_complex(random_case_matrix(o.case_id, rng));
      Matrix4 frame = Matrix4::Identity();
      if (o.random_frame) {
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) frame(i, j) += 0.3 * unit(rng);
        if (frame.determinant() < 0.0) frame.col(3) *= -1.0;
      }
      PointSample s = gen_synthetic_star_l(blocks.a, blocks.b, frame);
      if (o.h_deform) s = with_h_deformation(std::move(s), *o.h_deform);
      s.weight = o.weight;
      writer.write(s);
    }
  }
  writer.close();
}

// ------------------------------------------------------------------ output

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool is_flat_list(const json& v) {
  return v.is_array() && std::all_of(v.begin(), v.end(), [](const json& x) {
           return x.is_primitive();
         });
}

void flatten(const json& v, const std::string& path,
             std::vector<std::pair<std::string, std::string>>& rows) {
  if (v.is_object()) {
    for (const auto& [key, item] : v.items()) {
      flatten(item, path.empty() ? key : path + "." + key, rows);
    }
  } else if (v.is_array() && !is_flat_list(v)) {
    for (size_t n = 0; n < v.size(); ++n) {
      flatten(v[n], path + "[" + std::to_string(n) + "]", rows);
    }
  } else if (v.is_array()) {
    std::string s = "[";
    for (size_t n = 0; n < v.size(); ++n) s += (n ? ", " : "") + scalar_text(v[n]);
    rows.emplace_back(path, s + "]");
  } else {
    rows.emplace_back(path, scalar_text(v));
  }
}

std::string render(const json& report, const std::string& format) {
  if (format == "json") return report.dump(2) + "\n";
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.first.size());
  std::string out;
  for (const auto& [key, value] : rows) {
    out += key + std::string(width - key.size() + 2, ' ') + value + "\n";
  }
  return out;
}

void emit(const json& report, const Common& c, std::ostream& out) {
  const std::string text = render(report, c.format);
  if (c.output.empty() || c.output == "-") {
    out << text;
    return;
  }
  std::ofstream file(c.output);
  if (!file) throw UsageError("cannot write " + c.output);
  file << text;
}

void add_common(CLI::App* sub, Common& c, bool takes_file = true) {
  if (takes_file) sub->add_option("file", c.file, "JSONL samples (plain or gzip)")->required();
  sub->add_option("--tol", c.tol, "Numerical tolerance")->capture_default_str();
  sub->add_option("--format", c.format, "Report format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  sub->add_option("--threads", c.threads, "Worker threads (0: logical cores)")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("-o,--output", c.output, "Write the report to FILE");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Curvature normal forms and topology of sampled 4-manifolds", "curvnf"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Common c;
  std::string metric = "g", quantity = "all", expression;
  double cluster_tol = 1e-8;
  bool count = false;
  int starts = 64;
  GenOptions g;

  auto* validate = app.add_subcommand("validate", "Check symmetries and the first Bianchi identity");
  add_common(validate, c);
  auto* einstein = app.add_subcommand("einstein-check", "Test whether R commutes with the Hodge star");
  add_common(einstein, c);
  einstein->add_option("--metric", metric, "g, h or lorentz")
      ->check(CLI::IsMember({"g", "h", "lorentz"}))
      ->capture_default_str();
  auto* normal = app.add_subcommand("normal-form", "Critical-plane normal form per point");
  add_common(normal, c);
  auto* petrov = app.add_subcommand("petrov", "Complex normal form of *L-Einstein points");
  add_common(petrov, c);
  petrov->add_option("--cluster-tol", cluster_tol, "Eigenvalue merge tolerance")
      ->capture_default_str();
  petrov->add_flag("--count-critical", count, "Also search for spacelike critical planes");
  petrov->add_option("--starts", starts, "Search starts per point")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  auto* integrate = app.add_subcommand("integrate", "Weighted chi / tau integrals");
  add_common(integrate, c);
  integrate->add_option("--quantity", quantity, "chi, tau, ht or all")
      ->check(CLI::IsMember({"chi", "tau", "ht", "all"}))
      ->capture_default_str();
  auto* sums = app.add_subcommand("sums", "chi and tau of a connected sum, e.g. \"CP2 # K3\"");
  sums->add_option("expression", expression)->required();
  sums->add_option("--format", c.format)->check(CLI::IsMember({"json", "text"}));
  sums->add_option("-o,--output", c.output, "Write the report to FILE");

  auto* gen_cmd = app.add_subcommand("gen", "Write synthetic sample files");
  gen_cmd->require_subcommand(1);
  auto add_gen_common = [&](CLI::App* sub) {
    sub->add_option("-o,--output", g.output, "Output file (.gz compresses)")->capture_default_str();
  };
  auto* space = gen_cmd->add_subcommand("space-form", "Round sphere or flat torus grid");
  add_gen_common(space);
  space->add_option("--dim", g.dim)->capture_default_str();
  space->add_option("--kappa", g.kappa)->capture_default_str();
  space->add_option("--nodes", g.nodes)->capture_default_str();
  space->add_flag("--torus", g.torus);
  space->add_option("--side", g.side)->capture_default_str();
  auto* product = gen_cmd->add_subcommand("product-spheres", "S2(a) x S2(b) grid");
  add_gen_common(product);
  product->add_option("--a", g.a)->capture_default_str();
  product->add_option("--b", g.b)->capture_default_str();
  product->add_option("--nodes", g.nodes)->capture_default_str();
  product->add_option("--h-scale", g.h_scale, "h = diag(1,1,s,s)");
  auto* star_h = gen_cmd->add_subcommand("star-h", "Random *h-Einstein normal-form points");
  add_gen_common(star_h);
  star_h->add_option("--count", g.count)->capture_default_str();
  star_h->add_option("--seed", g.seed)->capture_default_str();
  star_h->add_option("--weight", g.weight)->capture_default_str();
  star_h->add_option("--lambdas", g.lambdas)->delimiter(',');
  star_h->add_option("--mus", g.mus)->delimiter(',');
  star_h->add_option("--h-diag", g.h_diag)->delimiter(',');
  star_h->add_option("--g-diag", g.g_diag)->delimiter(',');
  auto* star_l = gen_cmd->add_subcommand("star-l", "Random *L-Einstein points of a given case");
  add_gen_common(star_l);
  star_l->add_option("--case", g.case_id)->capture_default_str();
  star_l->add_option("--count", g.count)->capture_default_str();
  star_l->add_option("--seed", g.seed)->capture_default_str();
  star_l->add_option("--weight", g.weight)->capture_default_str();
  star_l->add_flag("--random-frame", g.random_frame, "Perturb the frame (non-trivial g)");
  star_l->add_option("--h-deform", g.h_deform, "Add h = g + F (gT)(gT)^T");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion& e) {
    out << kVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    std::ostringstream os;
    app.exit(e, os, os);
    err << os.str();
    return kUsage;
  }

  try {
    Outcome o;
    if (*validate) o = cmd_validate(c);
    else if (*einstein) o = cmd_einstein(c, metric);
    else if (*normal) o = cmd_normal_form(c);
    else if (*petrov) o = cmd_petrov(c, cluster_tol, count, starts);
    else if (*integrate) o = cmd_integrate(c, quantity);
    else if (*sums) o = cmd_sums(expression);
    else {
      for (auto* sub : {space, product, star_h, star_l}) {
        if (*sub) gen(sub->get_name(), g);
      }
      return kOk;
    }
    emit(o.report, c, out);
    return o.exit;
  } catch (const UsageError& e) {
    err << "curvnf: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "curvnf: " << e.what() << "\n";
    return e.code() == ErrorCode::kFormat || e.code() == ErrorCode::kInvalidGrid
               ? kUsage
               : kAnalysisFailure;
  } catch (const std::exception& e) {
    err << "curvnf: " << e.what() << "\n";
    return kAnalysisFailure;
  }
}

}  // namespace curvnf::cli
