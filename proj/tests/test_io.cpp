#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cvxjet/fixtures.hpp"
#include "cvxjet/io.hpp"

#include <cmath>
#include <random>
#include <sstream>

using namespace cvxjet;
using io::json;

TEST_CASE("problem files round-trip exactly") {
  io::ProblemFile pf;
  pf.problem = fixtures::random_convex({2.0, 1.0}, 25, 0.02, 11);
  pf.params.r = 0.25;
  io::ProblemFile back = io::problem_from_json(io::problem_to_json(pf));
  REQUIRE(back.problem.data.size() == pf.problem.data.size());
  for (size_t i = 0; i < pf.problem.data.size(); ++i) {
    CHECK((back.problem.data[i].point - pf.problem.data[i].point).norm() == 0.0);
    CHECK((back.problem.data[i].normal - pf.problem.data[i].normal).norm() ==
          0.0);
  }
  CHECK(back.params.r == pf.params.r);
}

TEST_CASE("modulus round-trips through problem files") {
  io::ProblemFile pf;
  pf.problem = fixtures::sphere(8, 2);
  pf.modulus = Modulus::tabulated({0.0, 1.0, 3.0}, {0.0, 1.0, 1.8});
  io::ProblemFile back = io::problem_from_json(io::problem_to_json(pf));
  REQUIRE(back.modulus.has_value());
  CHECK(back.modulus->knots() == pf.modulus->knots());
  CHECK(back.modulus->values() == pf.modulus->values());
}

TEST_CASE("malformed records are reported by index") {
  io::ProblemFile pf;
  pf.problem = fixtures::sphere(4, 2);
  json j = io::problem_to_json(pf);
  j["data"][2]["normal"] = {3.0, 0.0};  // not unit
  try {
    io::problem_from_json(j);
    FAIL("expected invalid_argument");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("data[2]") != std::string::npos);
  }
}

TEST_CASE("rolled-ball bodies round-trip through JSON") {
  TangencyProblem p = fixtures::random_convex({1.5, 1.0}, 20, 0.0, 6);
  BodyC11 body = BodyC11::build(p, 0.5 * max_c11_radius(p));
  io::AnyBody back = io::body_from_json(io::body_to_json(body));
  REQUIRE(std::holds_alternative<BodyC11>(back));
  const BodyC11& b = std::get<BodyC11>(back);
  std::mt19937_64 rng(61);
  std::normal_distribution<double> g(0.0, 1.5);
  for (int i = 0; i < 40; ++i) {
    Vector x(2);
    x << g(rng), g(rng);
    CHECK(b.signed_distance(x) == body.signed_distance(x));
  }
}

TEST_CASE("level-set bodies round-trip through JSON") {
  TangencyProblem p = fixtures::sphere(10, 2);
  ModulusCalculus mc(Modulus::power(1.0, 0.5));
  BodyC1Omega body =
      BodyC1Omega::build_hilbert(p, mc, 0.5 * max_c1omega_delta(p, mc));
  io::AnyBody back = io::body_from_json(io::body_to_json(body));
  REQUIRE(std::holds_alternative<BodyC1Omega>(back));
  const BodyC1Omega& b = std::get<BodyC1Omega>(back);
  std::mt19937_64 rng(62);
  for (int i = 0; i < 30; ++i) {
    Vector x(2);
    for (int k = 0; k < 2; ++k) {
      std::uniform_real_distribution<double> u(body.box_lo()[k],
                                               body.box_hi()[k]);
      x[k] = u(rng);
    }
    CHECK(b.eval_F(x) == doctest::Approx(body.eval_F(x)).epsilon(1e-12));
  }

  BodyC1Omega alpha_body = BodyC1Omega::build_dual_alpha(p, 0.5, 0.1);
  io::AnyBody back2 = io::body_from_json(io::body_to_json(alpha_body));
  REQUIRE(std::holds_alternative<BodyC1Omega>(back2));
  CHECK(std::get<BodyC1Omega>(back2).variant() == C1OmegaVariant::DualAlpha);
  CHECK(std::get<BodyC1Omega>(back2).alpha() == alpha_body.alpha());
}

TEST_CASE("polyline export orders samples by angle") {
  std::vector<Vector> pts;
  std::mt19937_64 rng(63);
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::acos(-1.0));
  for (int i = 0; i < 24; ++i) {
    double th = u(rng);
    Vector v(2);
    v << std::cos(th), std::sin(th);
    pts.push_back(v);
  }
  std::ostringstream os;
  io::export_polyline(pts, os);
  std::istringstream is(os.str());
  std::vector<Vector> rows;
  double x, y;
  while (is >> x >> y) {
    Vector v(2);
    v << x, y;
    rows.push_back(v);
  }
  REQUIRE(rows.size() == 24);
  Vector c = Vector::Zero(2);
  for (const auto& r : rows) c += r;
  c /= 24.0;
  double prev = -10.0;
  for (const auto& r : rows) {
    double th = std::atan2(r[1] - c[1], r[0] - c[0]);
    CHECK(th >= prev);
    prev = th;
  }
}

TEST_CASE("3D hull of the octahedron has eight faces") {
  std::vector<Vector> pts;
  for (int axis = 0; axis < 3; ++axis)
    for (double s : {-1.0, 1.0}) {
      Vector v = Vector::Zero(3);
      v[axis] = s;
      pts.push_back(v);
    }
  CHECK(io::convex_hull_3d(pts).size() == 8);
  std::ostringstream os;
  io::export_obj(pts, os);
  CHECK(os.str().find("v ") != std::string::npos);
  CHECK(os.str().find("f ") != std::string::npos);
}

TEST_CASE("grid dump carries the lattice header") {
  GridFunction g = GridFunction::sample(
      [](const Vector& x) { return x.squaredNorm(); }, Vector::Zero(2),
      Vector::Ones(2), {3, 3});
  std::ostringstream os;
  io::dump_grid(g, os);
  CHECK(os.str().find("box") != std::string::npos);
  std::istringstream is(os.str());
  std::string header;
  std::getline(is, header);
  int count = 0;
  double v;
  while (is >> v) ++count;
  CHECK(count == 9);
}
