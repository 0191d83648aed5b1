#include "oxy/model.hpp"

#include <cmath>

namespace oxy {

const char* method_name(Method m) {
  switch (m) {
    case Method::Deg3: return "deg3";
    case Method::Deg6: return "deg6";
    case Method::Oracle: return "oracle";
  }
  return "?";
}

std::optional<Method> method_from_name(std::string_view name) {
  if (name == "deg3") return Method::Deg3;
  if (name == "deg6") return Method::Deg6;
  if (name == "oracle") return Method::Oracle;
  return std::nullopt;
}

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::HorizonReached: return "horizon_reached";
    case Termination::Extinction: return "extinction";
    case Termination::ConstraintViolated: return "constraint_violated";
    case Termination::ConcentrationFloor: return "concentration_floor";
  }
  return "?";
}

Termination to_termination(Event::Kind k) {
  switch (k) {
    case Event::Kind::Extinction: return Termination::Extinction;
    case Event::Kind::ConstraintViolated: return Termination::ConstraintViolated;
    case Event::Kind::ConcentrationFloor: return Termination::ConcentrationFloor;
  }
  return Termination::HorizonReached;
}

double Trajectory::t_front() const {
  if (samples.empty()) throw std::out_of_range("trajectory is empty");
  return samples.front().t;
}

double Trajectory::t_back() const {
  if (samples.empty()) throw std::out_of_range("trajectory is empty");
  return samples.back().t;
}

State Trajectory::at_time(double t) const {
  if (samples.empty()) throw std::out_of_range("trajectory is empty");
  if (t < samples.front().t || t > samples.back().t)
    throw std::out_of_range("time outside the sampled span");
  // first sample with sample.t >= t
  auto hi = std::lower_bound(samples.begin(), samples.end(), t,
                             [](const State& st, double v) { return st.t < v; });
  if (hi == samples.begin()) return samples.front();
  auto lo = hi - 1;
  if (hi == samples.end()) return samples.back();
  const double span = hi->t - lo->t;
  if (span <= 0.0) return *hi;
  const double w = (t - lo->t) / span;
  return State{t, lo->s + w * (hi->s - lo->s), lo->a + w * (hi->a - lo->a)};
}

ProblemSpec ProblemSpec::defaults(Method m) {
  ProblemSpec spec;
  spec.method = m;
  if (m == Method::Oracle) {
    spec.t0 = 0.0;   // the oracle runs on the absolute clock from sealing
    spec.t_end = 0.2;
  }
  return spec;
}

void ProblemSpec::validate() const {
  if (!(a0 > 0.0)) throw std::invalid_argument("a0 must be positive");
  if (s0 != 1.0)
    throw std::invalid_argument("s0 must be 1 (the reduction assumes it)");
  if (!(t0 >= 0.0)) throw std::invalid_argument("t0 must be non-negative");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
  if (!(s_min > 0.0 && s_min < s0))
    throw std::invalid_argument("s_min must lie in (0, s0)");
  if (!(a_min >= 0.0 && a_min < a0))
    throw std::invalid_argument("a_min must lie in [0, a0)");
}

double initial_profile(double x) {
  if (x < 0.0 || x > 1.0)
    throw std::domain_error("initial_profile: x outside [0, 1]");
  return 0.5 * (1.0 - x) * (1.0 - x);
}

ProfileCoefficients coeffs_deg6(double a, double s) {
  if (!(s > 0.0)) throw DegenerateBoundaryError("coeffs_deg6: s <= 0");
  const double s2 = s * s;
  return {a, -3.0 * a + s2 / 8.0, 3.0 * a - s2 / 4.0, -a + s2 / 8.0};
}

ProfileCoefficients coeffs_deg3(double a) { return {a, -3.0 * a, 2.0 * a, 0.0}; }

namespace {

void require_inside(double s, double x, const char* who) {
  if (!(s > 0.0)) throw DegenerateBoundaryError(std::string(who) + ": s <= 0");
  if (x < 0.0 || x > s)
    throw DegenerateBoundaryError(std::string(who) + ": x outside [0, s]");
}

} // namespace

double eval_profile(Method m, double a, double s, double x) {
  require_inside(s, x, "eval_profile");
  const double xi = x / s;
  const double xi2 = xi * xi;
  if (m == Method::Deg3) {
    const ProfileCoefficients c = coeffs_deg3(a);
    return c.a + xi2 * (c.b + xi * c.c);
  }
  if (m == Method::Deg6) {
    const ProfileCoefficients c = coeffs_deg6(a, s);
    return c.a + xi2 * (c.b + xi2 * (c.c + xi2 * c.d));
  }
  throw std::invalid_argument("eval_profile: no closed-form oracle profile");
}

ProfileValues eval_profile_derivatives(Method m, double a, double s, double x) {
  require_inside(s, x, "eval_profile_derivatives");
  const double xi = x / s;
  const double xi2 = xi * xi;
  ProfileValues v;
  if (m == Method::Deg3) {
    const ProfileCoefficients c = coeffs_deg3(a);
    v.u = c.a + xi2 * (c.b + xi * c.c);
    v.ux = (2.0 * c.b * xi + 3.0 * c.c * xi2) / s;
    v.uxx = (2.0 * c.b + 6.0 * c.c * xi) / (s * s);
    return v;
  }
  if (m == Method::Deg6) {
    const ProfileCoefficients c = coeffs_deg6(a, s);
    v.u = c.a + xi2 * (c.b + xi2 * (c.c + xi2 * c.d));
    v.ux = xi * (2.0 * c.b + xi2 * (4.0 * c.c + 6.0 * c.d * xi2)) / s;
    v.uxx = (2.0 * c.b + xi2 * (12.0 * c.c + 30.0 * c.d * xi2)) / (s * s);
    return v;
  }
  throw std::invalid_argument(
      "eval_profile_derivatives: no closed-form oracle profile");
}

bool profile_monotone(Method m, double a, double s) {
  if (!(s > 0.0)) throw DegenerateBoundaryError("profile_monotone: s <= 0");
  if (m == Method::Deg3) return a >= 0.0;
  if (m == Method::Deg6) return 24.0 * a >= s * s;
  throw std::invalid_argument("profile_monotone: no closed-form oracle profile");
}

double steady_state_boundary(double c0, double m) {
  if (!(m > 0.0)) throw std::domain_error("steady_state_boundary: m <= 0");
  if (c0 < 0.0) throw std::domain_error("steady_state_boundary: c0 < 0");
  return std::sqrt(2.0 * c0 / m);
}

} // namespace oxy
