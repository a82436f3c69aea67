#include "cvxjet/body_c11.hpp"
#include "cvxjet/body_c1omega.hpp"
#include "cvxjet/fixtures.hpp"
#include "cvxjet/io.hpp"
#include "cvxjet/verifier.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>

using namespace cvxjet;
using io::json;

namespace {

// exit-code contract: 0 pass, 1 input error, 2 mathematical failure
// (infeasible data / failed verification), 3 numerical backend failure
constexpr int kOk = 0, kInputError = 1, kMathFailure = 2, kNumFailure = 3;

struct BuildSpec {
  std::string klass = "c11";
  double radius = 0.0;
  double delta = 0.0;
  double alpha = 1.0;
  double K = 1.0;
  bool auto_constants = false;
};

ModulusCalculus make_modulus(const io::ProblemFile& pf, const BuildSpec& bs) {
  if (pf.modulus) return ModulusCalculus(*pf.modulus);
  return ModulusCalculus(Modulus::power(bs.K, bs.alpha));
}

int run_feasibility(const std::string& in, const BuildSpec& bs,
                    const std::string& out) {
  io::ProblemFile pf = io::load_problem(in);
  json rep;
  rep["problem"] = in;
  rep["class"] = bs.klass;
  FeasibilityReport fr;
  double extremal;
  if (bs.klass == "c11") {
    extremal = max_c11_radius(pf.problem);
    double r = bs.radius > 0.0 ? bs.radius
               : pf.params.r  ? *pf.params.r
                              : extremal;
    fr = check_c11(pf.problem, std::isfinite(r) && r > 0.0 ? r : 1.0);
    rep["r_max"] = extremal;
  } else if (bs.klass == "c1omega") {
    ModulusCalculus mc = make_modulus(pf, bs);
    extremal = max_c1omega_delta(pf.problem, mc);
    double d = bs.delta > 0.0   ? bs.delta
               : pf.params.delta ? *pf.params.delta
                                 : extremal;
    fr = check_c1omega(pf.problem, mc,
                       std::isfinite(d) && d > 0.0 ? d : 1.0);
    rep["delta_max"] = extremal;
  } else if (bs.klass == "c1alpha") {
    extremal = max_c1alpha_delta(pf.problem, bs.alpha);
    double d = bs.delta > 0.0   ? bs.delta
               : pf.params.delta ? *pf.params.delta
                                 : extremal;
    fr = check_c1alpha_dual(pf.problem, bs.alpha,
                            std::isfinite(d) && d > 0.0 ? d : 1.0);
    rep["delta_max"] = extremal;
  } else {
    std::cerr << "unknown class: " << bs.klass << "\n";
    return kInputError;
  }
  rep["feasible"] = fr.feasible;
  rep["checked_constant"] = fr.extremal_constant;
  if (fr.violating_pair) {
    rep["violating_pair"] = {fr.violating_pair->first,
                             fr.violating_pair->second};
  }
  if (!fr.diagnostic.empty()) rep["diagnostic"] = fr.diagnostic;
  if (!out.empty()) io::save_json(rep, out);
  if (!fr.feasible) {
    auto p = fr.violating_pair.value_or(std::make_pair(-1, -1));
    std::cout << "infeasible (pair " << p.first << "," << p.second << ")\n";
    return kMathFailure;
  }
  std::cout << "feasible, extremal constant " << extremal << "\n";
  return kOk;
}

void smoke_check_c11(const BodyC11& body) {
  for (const auto& d : body.source().data) {
    if (std::abs(body.signed_distance(d.point)) > 1e-9 ||
        (body.boundary_normal(d.point) - d.normal).norm() > 1e-7)
      throw NumericalError("post-build check failed at a datum", 0.0);
  }
}

void smoke_check_c1omega(const BodyC1Omega& body) {
  const auto& space = body.source().space;
  for (const auto& d : body.source().data) {
    if (std::abs(body.eval_F(d.point) - 1.0) > 1e-5 ||
        space.dual_norm(body.grad_F(d.point) - d.normal) > 1e-4)
      throw NumericalError("post-build check failed at a datum", 0.0);
  }
}

void cross_check_envelope(const BodyC1Omega& body, int res,
                          std::uint64_t seed) {
  if (body.dim() > 3) return;
  GridBiconjugate grid = body.make_grid_backend(res);
  double cell = 0.0, lip = 0.0;
  for (int a = 0; a < body.dim(); ++a)
    cell = std::max(cell, grid.grid().spacing(a));
  for (const auto& xi : body.jet().xis())
    lip = std::max(lip, body.source().space.dual_norm(xi));
  double tol = std::max(1e-4, 4.0 * cell * (lip + 1.0));
  std::mt19937_64 rng(seed);
  std::vector<Vector> queries;
  for (int k = 0; k < 32; ++k) {
    Vector x(body.dim());
    for (int i = 0; i < body.dim(); ++i) {
      std::uniform_real_distribution<double> u(body.box_lo()[i],
                                               body.box_hi()[i]);
      x[i] = u(rng);
    }
    queries.push_back(x);
  }
  cross_validate(body.jet(), grid, queries, tol);
}

int run_build(const std::string& in, BuildSpec bs, const std::string& out,
              int grid_res, bool skip_cross_check) {
  io::ProblemFile pf = io::load_problem(in);
  json body_json;
  if (bs.klass == "c11") {
    double r = bs.radius;
    if (bs.auto_constants) r = 0.5 * max_c11_radius(pf.problem);
    if (r <= 0.0 && pf.params.r) r = *pf.params.r;
    if (!(r > 0.0) || !std::isfinite(r)) {
      std::cerr << "build: need --radius, --auto, or params.r\n";
      return kInputError;
    }
    BodyC11 body = BodyC11::build(pf.problem, r);
    smoke_check_c11(body);
    body_json = io::body_to_json(body);
  } else if (bs.klass == "c1omega" || bs.klass == "c1alpha") {
    double d = bs.delta;
    if (bs.klass == "c1omega") {
      ModulusCalculus mc = make_modulus(pf, bs);
      if (bs.auto_constants) d = 0.5 * max_c1omega_delta(pf.problem, mc);
      if (d <= 0.0 && pf.params.delta) d = *pf.params.delta;
      if (!(d > 0.0) || !std::isfinite(d)) {
        std::cerr << "build: need --delta, --auto, or params.delta\n";
        return kInputError;
      }
      BodyC1Omega body = BodyC1Omega::build_hilbert(pf.problem, mc, d);
      smoke_check_c1omega(body);
      if (!skip_cross_check) cross_check_envelope(body, grid_res, 7);
      body_json = io::body_to_json(body);
    } else {
      if (bs.auto_constants)
        d = 0.5 * max_c1alpha_delta(pf.problem, bs.alpha);
      if (d <= 0.0 && pf.params.delta) d = *pf.params.delta;
      if (!(d > 0.0) || !std::isfinite(d)) {
        std::cerr << "build: need --delta, --auto, or params.delta\n";
        return kInputError;
      }
      BodyC1Omega body = BodyC1Omega::build_dual_alpha(pf.problem, bs.alpha, d);
      smoke_check_c1omega(body);
      if (!skip_cross_check) cross_check_envelope(body, grid_res, 7);
      body_json = io::body_to_json(body);
    }
  } else {
    std::cerr << "unknown class: " << bs.klass << "\n";
    return kInputError;
  }
  if (out.empty()) {
    std::cerr << "build: --out required\n";
    return kInputError;
  }
  io::save_json(body_json, out);
  std::cout << "built " << bs.klass << " body -> " << out << "\n";
  return kOk;
}

int run_verify(const std::string& in, std::uint64_t seed, int samples,
               double epsilon, const std::string& out) {
  io::AnyBody body = io::body_from_json(io::load_json(in));
  json combined;
  combined["seed"] = seed;
  combined["samples"] = samples;
  json reports = json::array();
  bool all = true;
  if (std::holds_alternative<BodyC11>(body)) {
    const auto& b = std::get<BodyC11>(body);
    VerificationReport r1 = verify_c11(b, samples, seed);
    VerificationReport r2 = verify_signed_distance(b, epsilon, samples, seed);
    all = r1.all_pass() && r2.all_pass();
    reports.push_back(io::report_to_json(r1));
    reports.push_back(io::report_to_json(r2));
    for (const auto& rep : {r1, r2})
      for (const auto& rec : rep.records)
        if (!rec.pass) std::cout << "FAIL " << rec.name << "\n";
  } else {
    const auto& b = std::get<BodyC1Omega>(body);
    VerificationReport r = verify_c1omega(b, samples, seed);
    all = r.all_pass();
    reports.push_back(io::report_to_json(r));
    for (const auto& rec : r.records)
      if (!rec.pass) std::cout << "FAIL " << rec.name << "\n";
  }
  combined["reports"] = reports;
  combined["all_pass"] = all;
  if (!out.empty()) io::save_json(combined, out);
  std::cout << (all ? "verification passed" : "verification FAILED") << "\n";
  return all ? kOk : kMathFailure;
}

int run_export(const std::string& in, const std::string& format, int count,
               std::uint64_t seed, const std::string& out) {
  io::AnyBody body = io::body_from_json(io::load_json(in));
  std::vector<Vector> samples;
  std::vector<Vector> normals;
  std::vector<double> values;
  int dim = 0;
  if (std::holds_alternative<BodyC11>(body)) {
    const auto& b = std::get<BodyC11>(body);
    dim = b.dim();
    samples = b.sample_boundary(count, seed);
    for (const auto& s : samples) {
      normals.push_back(b.boundary_normal(s));
      values.push_back(b.signed_distance(s));
    }
  } else {
    const auto& b = std::get<BodyC1Omega>(body);
    dim = b.dim();
    samples = b.sample_boundary(count, seed);
    for (const auto& s : samples) {
      Vector g = b.grad_F(s);
      normals.push_back(g / b.source().space.dual_norm(g));
      values.push_back(b.eval_F(s) - 1.0);
    }
  }
  std::ofstream os(out);
  if (!os) {
    std::cerr << "cannot open " << out << "\n";
    return kInputError;
  }
  if (format == "polyline") {
    if (dim != 2) {
      std::cerr << "polyline export requires a 2D body\n";
      return kInputError;
    }
    io::export_polyline(samples, os);
  } else if (format == "obj") {
    if (dim != 3) {
      std::cerr << "obj export requires a 3D body\n";
      return kInputError;
    }
    io::export_obj(samples, os);
  } else if (format == "csv") {
    io::export_csv(samples, normals, values, os);
  } else {
    std::cerr << "unknown format: " << format << "\n";
    return kInputError;
  }
  std::cout << "exported " << samples.size() << " samples -> " << out << "\n";
  return kOk;
}

int run_sample(const std::string& in, int count, std::uint64_t seed,
               const std::string& out) {
  io::AnyBody body = io::body_from_json(io::load_json(in));
  std::vector<Vector> samples =
      std::holds_alternative<BodyC11>(body)
          ? std::get<BodyC11>(body).sample_boundary(count, seed)
          : std::get<BodyC1Omega>(body).sample_boundary(count, seed);
  std::ofstream os(out);
  if (!os) {
    std::cerr << "cannot open " << out << "\n";
    return kInputError;
  }
  os.precision(17);
  for (const auto& s : samples) {
    for (int i = 0; i < s.size(); ++i) os << (i ? " " : "") << s[i];
    os << "\n";
  }
  std::cout << "sampled " << samples.size() << " boundary points -> " << out
            << "\n";
  return kOk;
}

int run_gen(const std::string& kind, int count, int dim, double radius,
            double h_min, double h_max, std::vector<double> axes, double noise,
            std::uint64_t seed, const std::string& out) {
  io::ProblemFile pf;
  if (kind == "sphere") {
    pf.problem = fixtures::sphere(count, dim, radius);
  } else if (kind == "cusp") {
    pf.problem = fixtures::cusp_curve(h_min, h_max, count);
  } else if (kind == "ellipse") {
    if (axes.empty()) axes = {2.0, 1.0};
    pf.problem = fixtures::random_convex(axes, count, noise, seed);
  } else {
    std::cerr << "unknown fixture kind: " << kind << "\n";
    return kInputError;
  }
  io::save_json(io::problem_to_json(pf), out);
  std::cout << "generated " << kind << " fixture -> " << out << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* th = std::getenv("CVXJET_THREADS"))
    Eigen::setNbThreads(std::max(1, std::atoi(th)));

  CLI::App app{"convex 1-jet interpolation: feasibility, construction, "
               "verification and export of smooth convex interpolants"};
  app.require_subcommand(1);

  BuildSpec bs;
  std::string in, out, format = "csv", kind = "sphere";
  std::uint64_t seed = 0;
  int samples = 200, count = 100, dim = 2, grid_res = 65;
  double epsilon = 0.5, radius = 1.0, h_min = 1e-3, h_max = 1.0, noise = 0.0;
  std::vector<double> axes;
  bool auto_flag = false, no_cross = false;
  std::vector<double> clip_box;  // accepted for forward compatibility

  auto add_class_opts = [&](CLI::App* cmd) {
    cmd->add_option("--class", bs.klass, "c11 | c1omega | c1alpha");
    cmd->add_option("--radius", bs.radius, "rolling radius (c11)");
    cmd->add_option("--delta", bs.delta, "margin constant (c1omega/c1alpha)");
    cmd->add_option("--alpha", bs.alpha, "exponent in (0,1]");
    cmd->add_option("--K", bs.K, "power-modulus scale");
  };

  auto* feas = app.add_subcommand("feasibility", "pairwise feasibility scan");
  feas->add_option("problem", in, "problem file")->required();
  add_class_opts(feas);
  feas->add_option("--out", out, "report file");

  auto* build = app.add_subcommand("build", "construct an interpolating body");
  build->add_option("problem", in, "problem file")->required();
  add_class_opts(build);
  build->add_flag("--auto", auto_flag,
                  "use half the extremal constant (r = r_max/2, "
                  "delta = delta_max/2)");
  build->add_option("--grid-res", grid_res,
                    "grid resolution for the envelope cross-check");
  build->add_flag("--no-cross-check", no_cross,
                  "skip the envelope backend cross-validation");
  build->add_option("--out", out, "body file");

  auto* verify = app.add_subcommand("verify", "run the verification suites");
  verify->add_option("body", in, "body file")->required();
  verify->add_option("--seed", seed, "sampling seed")->required();
  verify->add_option("--samples", samples, "boundary sample count");
  verify->add_option("--epsilon", epsilon, "depth parameter in (0,1)");
  verify->add_option("--tol", epsilon, "alias kept for scripts")
      ->group("");  // hidden
  verify->add_option("--out", out, "report file");

  auto* exp = app.add_subcommand("export", "export boundary geometry");
  exp->add_option("body", in, "body file")->required();
  exp->add_option("--format", format, "polyline | obj | csv");
  exp->add_option("--count", count, "sample count");
  exp->add_option("--seed", seed, "sampling seed");
  exp->add_option("--clip-box", clip_box, "box clip lo.. hi.. (optional)");
  exp->add_option("--out", out, "output file")->required();

  auto* sample = app.add_subcommand("sample", "emit raw boundary samples");
  sample->add_option("body", in, "body file")->required();
  sample->add_option("--count", count, "sample count");
  sample->add_option("--seed", seed, "sampling seed");
  sample->add_option("--out", out, "output file")->required();

  auto* gen = app.add_subcommand("gen", "generate a fixture problem file");
  gen->add_option("kind", kind, "sphere | cusp | ellipse")->required();
  gen->add_option("--count", count, "data point count (per side for cusp)");
  gen->add_option("--dim", dim, "dimension (sphere)");
  gen->add_option("--radius", radius, "sphere radius");
  gen->add_option("--h-min", h_min, "cusp: smallest |t|");
  gen->add_option("--h-max", h_max, "cusp: largest |t|");
  gen->add_option("--axes", axes, "ellipse semi-axes");
  gen->add_option("--noise", noise, "normal perturbation scale");
  gen->add_option("--seed", seed, "generator seed");
  gen->add_option("--out", out, "output file")->required();

  CLI11_PARSE(app, argc, argv);
  bs.auto_constants = auto_flag;

  try {
    if (feas->parsed()) return run_feasibility(in, bs, out);
    if (build->parsed()) return run_build(in, bs, out, grid_res, no_cross);
    if (verify->parsed()) return run_verify(in, seed, samples, epsilon, out);
    if (exp->parsed()) return run_export(in, format, count, seed, out);
    if (sample->parsed()) return run_sample(in, count, seed, out);
    if (gen->parsed())
      return run_gen(kind, count, dim, radius, h_min, h_max, axes, noise, seed,
                     out);
  } catch (const InfeasibleError& e) {
    std::cerr << e.what() << "\n";
    return kMathFailure;
  } catch (const NumericalError& e) {
    std::cerr << e.what() << "\n";
    return kNumFailure;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
