// Concentration profiles shared by the reduced methods, and the steady state.
#pragma once

#include "oxy/types.hpp"

namespace oxy {

// Steady pre-sealing concentration (1-x)^2/2 on [0,1]; this is the initial
// condition for every method. Throws std::domain_error outside [0,1].
double initial_profile(double x);

// Polynomial profile in xi = x/s:
//   u(x) = a + b*xi^2 + c*xi^p2 + d*xi^p3
// Deg6 uses powers (2,4,6); Deg3 uses (2,3) with d unused (kept 0).
struct ProfileCoefficients {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
};

// Degree-6 coefficients fixing u(s)=u_x(s)=u_x(0)=0 and u_xx(s)=1:
//   b = -3a + s^2/8,  c = 3a - s^2/4,  d = -a + s^2/8.
ProfileCoefficients coeffs_deg6(double a, double s);

// Cubic coefficients fixing u(s)=u_x(s)=u_x(0)=0: b = -3a, c = 2a.
ProfileCoefficients coeffs_deg3(double a);

// u(x) for the given method's profile. Requires 0 <= x <= s and s > 0.
double eval_profile(Method m, double a, double s, double x);

struct ProfileValues {
  double u = 0.0;
  double ux = 0.0;
  double uxx = 0.0;
};

ProfileValues eval_profile_derivatives(Method m, double a, double s, double x);

// The Deg6 profile is monotone non-increasing in x exactly when 24a >= s^2
// (sign analysis of u_x; under the recession constraint 128a <= 29 s^2 both
// signs occur). The Deg3 profile is monotone for every a > 0.
bool profile_monotone(Method m, double a, double s);

// Steady free boundary of C'' = m with C(0) = c0, C'(X0) = C(X0) = 0:
//   X0 = sqrt(2 c0 / m),  C(X) = (m/2) (X - X0)^2.
double steady_state_boundary(double c0, double m);

} // namespace oxy
