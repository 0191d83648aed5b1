#include <cmath>

#include "doctest.h"
#include "oxy/model.hpp"
#include "oxy/types.hpp"

using namespace oxy;

TEST_CASE("method and termination names round-trip") {
  CHECK(method_name(Method::Deg3) == doctest::String("deg3"));
  CHECK(method_name(Method::Deg6) == doctest::String("deg6"));
  CHECK(method_name(Method::Oracle) == doctest::String("oracle"));
  CHECK(method_from_name("deg6") == Method::Deg6);
  CHECK(method_from_name("oracle") == Method::Oracle);
  CHECK(!method_from_name("deg4").has_value());

  CHECK(termination_name(Termination::HorizonReached) ==
        doctest::String("horizon_reached"));
  CHECK(termination_name(Termination::Extinction) ==
        doctest::String("extinction"));
  CHECK(termination_name(Termination::ConstraintViolated) ==
        doctest::String("constraint_violated"));
  CHECK(termination_name(Termination::ConcentrationFloor) ==
        doctest::String("concentration_floor"));

  CHECK(to_termination(Event::Kind::Extinction) == Termination::Extinction);
  CHECK(to_termination(Event::Kind::ConstraintViolated) ==
        Termination::ConstraintViolated);
  CHECK(to_termination(Event::Kind::ConcentrationFloor) ==
        Termination::ConcentrationFloor);
}

TEST_CASE("problem spec defaults and validation") {
  const ProblemSpec d6 = ProblemSpec::defaults(Method::Deg6);
  CHECK(d6.a0 == 29.0 / 128.0);
  CHECK(d6.s0 == 1.0);
  CHECK(d6.t0 == 0.051);
  CHECK(d6.dt == 1e-4);
  CHECK(d6.t_end == 0.25);
  CHECK(d6.s_min == 1e-3);
  CHECK(d6.a_min == 0.0);
  CHECK_NOTHROW(d6.validate());

  // the oracle runs on the table clock from the sealing instant
  const ProblemSpec orc = ProblemSpec::defaults(Method::Oracle);
  CHECK(orc.t0 == 0.0);
  CHECK(orc.t_end == 0.2);

  ProblemSpec bad = d6;
  bad.a0 = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = d6;
  bad.s0 = 0.9;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = d6;
  bad.t0 = -0.01;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = d6;
  bad.dt = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = d6;
  bad.t_end = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = d6;
  bad.s_min = 1.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = d6;
  bad.a_min = d6.a0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("trajectory interpolation") {
  Trajectory traj;
  traj.samples = {{0.0, 1.0, 2.0}, {1.0, 3.0, 4.0}, {3.0, 5.0, 8.0}};

  CHECK(traj.t_front() == 0.0);
  CHECK(traj.t_back() == 3.0);

  const State mid = traj.at_time(0.5);
  CHECK(mid.s == doctest::Approx(2.0));
  CHECK(mid.a == doctest::Approx(3.0));

  const State hit = traj.at_time(1.0);
  CHECK(hit.s == 3.0);
  CHECK(hit.a == 4.0);

  const State late = traj.at_time(2.0);
  CHECK(late.s == doctest::Approx(4.0));
  CHECK(late.a == doctest::Approx(6.0));

  CHECK_THROWS_AS(traj.at_time(-0.1), std::out_of_range);
  CHECK_THROWS_AS(traj.at_time(3.1), std::out_of_range);

  Trajectory empty;
  CHECK_THROWS_AS(empty.at_time(0.0), std::out_of_range);
  CHECK_THROWS_AS(empty.t_back(), std::out_of_range);
}

TEST_CASE("initial profile") {
  CHECK(initial_profile(0.0) == 0.5);
  CHECK(initial_profile(1.0) == 0.0);
  CHECK(initial_profile(0.5) == 0.125);
  CHECK(initial_profile(0.25) == doctest::Approx(0.28125));
  CHECK_THROWS_AS(initial_profile(-0.01), std::domain_error);
  CHECK_THROWS_AS(initial_profile(1.01), std::domain_error);
}

TEST_CASE("degree-6 coefficients at the starting state are exact") {
  const ProfileCoefficients c = coeffs_deg6(29.0 / 128.0, 1.0);
  CHECK(c.a == 0.2265625);
  CHECK(c.b == -0.5546875);
  CHECK(c.c == 0.4296875);
  CHECK(c.d == -0.1015625);
}

TEST_CASE("profile boundary conditions hold across states") {
  for (double a : {0.02, 0.1, 29.0 / 128.0, 0.3})
    for (double s : {0.05, 0.4, 1.0}) {
      for (Method m : {Method::Deg6, Method::Deg3}) {
        const ProfileValues at_s = eval_profile_derivatives(m, a, s, s);
        const ProfileValues at_0 = eval_profile_derivatives(m, a, s, 0.0);
        CHECK(std::abs(at_s.u) < 1e-13);
        CHECK(std::abs(at_s.ux) < 1e-12);
        CHECK(at_0.ux == 0.0); // only even/cubic powers of xi: exact
        CHECK(at_0.u == a);
        if (m == Method::Deg6)
          CHECK(at_s.uxx == doctest::Approx(1.0).epsilon(1e-10));
      }
    }
}

TEST_CASE("profile evaluation matches closed forms") {
  // deg6 at the starting state: all dyadic, so the value is exact
  CHECK(eval_profile(Method::Deg6, 29.0 / 128.0, 1.0, 0.5) == 0.1131591796875);
  // deg3: u = a (1 - 3 xi^2 + 2 xi^3), at xi = 1/2 the bracket is 1/2
  CHECK(eval_profile(Method::Deg3, 0.2, 1.0, 0.5) == doctest::Approx(0.1));

  // scaling in s: the profile depends on x only through xi = x/s
  const double u1 = eval_profile(Method::Deg3, 0.15, 1.0, 0.3);
  const double u2 = eval_profile(Method::Deg3, 0.15, 0.5, 0.15);
  CHECK(u1 == doctest::Approx(u2));

  CHECK_THROWS_AS(eval_profile(Method::Deg6, 0.1, 1.0, -0.1),
                  DegenerateBoundaryError);
  CHECK_THROWS_AS(eval_profile(Method::Deg6, 0.1, 1.0, 1.1),
                  DegenerateBoundaryError);
  CHECK_THROWS_AS(eval_profile(Method::Deg6, 0.1, 0.0, 0.0),
                  DegenerateBoundaryError);
}

TEST_CASE("profile derivatives agree with central differences") {
  const double a = 0.18, s = 0.7;
  const double h = 1e-6;
  for (Method m : {Method::Deg6, Method::Deg3})
    for (double x : {0.1, 0.35, 0.6}) {
      const ProfileValues v = eval_profile_derivatives(m, a, s, x);
      const double up = eval_profile(m, a, s, x + h);
      const double um = eval_profile(m, a, s, x - h);
      const double u0 = eval_profile(m, a, s, x);
      CHECK(v.u == u0);
      CHECK(v.ux == doctest::Approx((up - um) / (2 * h)).epsilon(1e-6));
      CHECK(v.uxx ==
            doctest::Approx((up - 2 * u0 + um) / (h * h)).epsilon(1e-4));
    }
}

TEST_CASE("degree-6 monotonicity threshold is 24a = s^2") {
  CHECK(profile_monotone(Method::Deg6, 29.0 / 128.0, 1.0)); // 24a = 5.4375
  CHECK(profile_monotone(Method::Deg6, 1.0 / 24.0, 1.0));   // boundary case
  CHECK(!profile_monotone(Method::Deg6, 0.04, 1.0));        // 24a = 0.96

  // confirm against direct sampling of u_x on both sides of the threshold
  auto max_ux = [](double a, double s) {
    double worst = -1.0;
    for (int i = 1; i < 400; ++i) {
      const double x = s * i / 400.0;
      worst = std::max(worst,
                       eval_profile_derivatives(Method::Deg6, a, s, x).ux);
    }
    return worst;
  };
  CHECK(max_ux(0.05, 1.0) <= 0.0);
  CHECK(max_ux(0.04, 1.0) > 0.0);

  CHECK(profile_monotone(Method::Deg3, 0.01, 1.0));
  CHECK(profile_monotone(Method::Deg3, 0.3, 0.2));
}

TEST_CASE("steady-state boundary") {
  CHECK(steady_state_boundary(0.5, 1.0) == 1.0);
  CHECK(steady_state_boundary(0.18, 1.0) == doctest::Approx(0.6));
  CHECK(steady_state_boundary(0.5, 2.0) == doctest::Approx(std::sqrt(0.5)));
  // X0^2 m / 2 recovers the surface concentration
  for (double c0 : {0.1, 0.5, 2.0})
    for (double mm : {0.5, 1.0, 3.0}) {
      const double x0 = steady_state_boundary(c0, mm);
      CHECK(0.5 * mm * x0 * x0 == doctest::Approx(c0).epsilon(1e-14));
    }
  CHECK_THROWS_AS(steady_state_boundary(0.5, 0.0), std::domain_error);
  CHECK_THROWS_AS(steady_state_boundary(-0.1, 1.0), std::domain_error);
}
