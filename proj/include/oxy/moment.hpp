// Reduced ODE systems obtained by forcing the zeroth and first moments of
// u_t = u_xx - 1 on the polynomial profiles:
//   d/dt ∫ u dx    = -s            (zeroth; mass balance)
//   d/dt ∫ x u dx  = u(0) - s^2/2  (first)
#pragma once

#include "oxy/types.hpp"

namespace oxy {

struct Derivative {
  double ds_dt = 0.0;
  double da_dt = 0.0;
};

// Degree-6 system:
//   ds/dt = (3/s) (128a - 29 s^2) / (48a + 5 s^2)
//   da/dt = -(84 a s^2 + 11 s^4 + 768 a^2) / (2 s^2 (48a + 5 s^2))
Derivative rhs_deg6(double a, double s);

// Cubic system:
//   ds/dt = (4/3) (5a - s^2) / (a s)
//   da/dt = -2/3 - 20a / (3 s^2)
Derivative rhs_deg3(double a, double s);

Derivative rhs(Method m, double a, double s); // Deg3/Deg6 dispatch

// Signed recession-constraint slack: 128a - 29 s^2 (Deg6) or 5a - s^2 (Deg3).
// slack <= 0 means ds/dt <= 0, i.e. the boundary actually recedes.
double check_constraint(Method m, double a, double s);

// Closed-form ∫_0^s u dx: s(48a + s^2)/105 (Deg6), a s / 2 (Deg3).
double oxygen_mass(Method m, double a, double s);

// Closed-form d/dt ∫_0^s u dx under the given derivative (chain rule on the
// mass formulas). Equals -s identically when the derivative is the method's
// own right-hand side.
double oxygen_mass_rate(Method m, double a, double s, const Derivative& d);

struct MomentResidual {
  double zeroth = 0.0;
  double first = 0.0;
};

// Left-minus-right of the moment identities, in the cleared-denominator form
//   Deg6: zeroth = 16(a's + a s') + s^2 s' + 35 s
//         first  = 6(a's^2 + 2 a s s') + s^3 s' - 48 a + 24 s^2
//   Deg3: zeroth = a's + a s' + 2 s
//         first  = 3(a's^2 + 2 a s s') - 20 a + 10 s^2
// Both vanish identically when d = rhs(m, a, s).
MomentResidual moment_residual(Method m, const State& st, const Derivative& d);

// The same residuals evaluated by composite-Simpson quadrature of the raw
// identities (∫ u_t vs ∫(u_xx - 1), and the x-weighted pair), scaled to the
// cleared-denominator form above. Cross-checks the algebra end to end.
MomentResidual moment_residual_quadrature(Method m, const State& st,
                                          const Derivative& d,
                                          int panels = 2048);

} // namespace oxy
