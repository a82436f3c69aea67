#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cvxjet/fixtures.hpp"
#include "cvxjet/io.hpp"
#include "cvxjet/verifier.hpp"

using namespace cvxjet;

TEST_CASE("rolled-ball suite passes on honest bodies") {
  TangencyProblem p = fixtures::random_convex({2.0, 1.0}, 40, 0.0, 8);
  BodyC11 body = BodyC11::build(p, 0.5 * max_c11_radius(p));
  VerificationReport rep = verify_c11(body, 120, 17);
  CHECK(rep.all_pass());
  for (const char* name : {"interpolation", "gauss-lipschitz", "rolling-ball",
                           "normal-inequality"})
    CHECK(rep.find(name) != nullptr);
  CHECK(rep.find("gauss-lipschitz")->measured <=
        1.0 / body.radius() + 1e-3);
}

TEST_CASE("signed-distance suite passes on honest bodies") {
  TangencyProblem p = fixtures::sphere(60, 3);
  BodyC11 body = BodyC11::build(p, 0.4);
  VerificationReport rep = verify_signed_distance(body, 0.5, 120, 18);
  CHECK(rep.all_pass());
  CHECK(rep.find("gradient-lipschitz")->measured <=
        2.0 / body.radius() + 1e-3);
}

TEST_CASE("a forged rolling radius is caught with a witness") {
  TangencyProblem p = fixtures::random_convex({2.0, 1.0}, 40, 0.0, 8);
  double r_max = max_c11_radius(p);
  BodyC11 honest = BodyC11::build(p, 0.5 * r_max);
  // keep the honest geometry but claim a radius the body does not roll
  BodyC11 forged = BodyC11::from_parts(p, 2.5 * r_max, honest.centers());
  VerificationReport rep = verify_c11(forged, 120, 17);
  CHECK_FALSE(rep.all_pass());
  const PropertyRecord* ball = rep.find("rolling-ball");
  REQUIRE(ball != nullptr);
  CHECK_FALSE(ball->pass);
  CHECK_FALSE(ball->witnesses.empty());
}

TEST_CASE("level-set suite passes on honest bodies") {
  TangencyProblem p = fixtures::sphere(14, 2);
  ModulusCalculus mc(Modulus::power(1.0, 0.5));
  BodyC1Omega body =
      BodyC1Omega::build_hilbert(p, mc, 0.5 * max_c1omega_delta(p, mc));
  VerificationReport rep = verify_c1omega(body, 80, 19);
  CHECK(rep.all_pass());
  for (const char* name : {"interpolation", "gauss-modulus", "dual-inequality",
                           "support-region", "gradient-pinching"})
    CHECK(rep.find(name) != nullptr);
}

TEST_CASE("reports are deterministic given the seed") {
  TangencyProblem p = fixtures::random_convex({1.5, 1.0}, 30, 0.0, 5);
  BodyC11 body = BodyC11::build(p, 0.5 * max_c11_radius(p));
  std::string a = io::report_to_json(verify_c11(body, 60, 23)).dump(2);
  std::string b = io::report_to_json(verify_c11(body, 60, 23)).dump(2);
  CHECK(a == b);
  std::string c = io::report_to_json(verify_c11(body, 60, 24)).dump(2);
  CHECK(a != c);
}

TEST_CASE("pair statistics are monotone under adding samples") {
  TangencyProblem p = fixtures::random_convex({2.0, 1.0}, 40, 0.0, 8);
  BodyC11 body = BodyC11::build(p, 0.5 * max_c11_radius(p));
  double small = verify_c11(body, 60, 17).find("gauss-lipschitz")->measured;
  double large = verify_c11(body, 120, 17).find("gauss-lipschitz")->measured;
  // the first 60 samples are a prefix of the 120, so the sup can only grow
  CHECK(large >= small - 1e-15);
}
