#include "oxy/moment.hpp"

#include <cmath>

#include "oxy/model.hpp"
#include "oxy/quadrature.hpp"

namespace oxy {

namespace {
constexpr double kDenGuard = 1e-14;
} // namespace

Derivative rhs_deg6(double a, double s) {
  if (!(s > 0.0)) throw DegenerateBoundaryError("rhs_deg6: s <= 0");
  const double s2 = s * s;
  const double den = 48.0 * a + 5.0 * s2;
  if (std::abs(den) < kDenGuard)
    throw SingularDenominatorError("rhs_deg6: 48a + 5s^2 ~ 0");
  Derivative d;
  d.ds_dt = (3.0 / s) * (128.0 * a - 29.0 * s2) / den;
  d.da_dt = (-84.0 * a * s2 - 11.0 * s2 * s2 - 768.0 * a * a) / (2.0 * s2 * den);
  return d;
}

Derivative rhs_deg3(double a, double s) {
  if (!(s > 0.0)) throw DegenerateBoundaryError("rhs_deg3: s <= 0");
  if (std::abs(a) < kDenGuard)
    throw ExtinctionSignal("rhs_deg3: a ~ 0, ds/dt singular");
  const double s2 = s * s;
  Derivative d;
  d.ds_dt = (4.0 / 3.0) * (5.0 * a - s2) / (a * s);
  d.da_dt = -2.0 / 3.0 - 20.0 * a / (3.0 * s2);
  return d;
}

Derivative rhs(Method m, double a, double s) {
  switch (m) {
    case Method::Deg3: return rhs_deg3(a, s);
    case Method::Deg6: return rhs_deg6(a, s);
    default:
      throw std::invalid_argument("rhs: only the reduced methods have one");
  }
}

double check_constraint(Method m, double a, double s) {
  switch (m) {
    case Method::Deg3: return 5.0 * a - s * s;
    case Method::Deg6: return 128.0 * a - 29.0 * s * s;
    default:
      throw std::invalid_argument("check_constraint: reduced methods only");
  }
}

double oxygen_mass(Method m, double a, double s) {
  if (!(s > 0.0)) throw DegenerateBoundaryError("oxygen_mass: s <= 0");
  switch (m) {
    case Method::Deg3: return 0.5 * a * s;
    case Method::Deg6: return s * (48.0 * a + s * s) / 105.0;
    default:
      throw std::invalid_argument("oxygen_mass: reduced methods only");
  }
}

double oxygen_mass_rate(Method m, double a, double s, const Derivative& d) {
  if (!(s > 0.0)) throw DegenerateBoundaryError("oxygen_mass_rate: s <= 0");
  switch (m) {
    case Method::Deg3:
      return 0.5 * (d.da_dt * s + a * d.ds_dt);
    case Method::Deg6:
      // d/dt [s(48a + s^2)/105]
      return (d.ds_dt * (48.0 * a + 3.0 * s * s) + 48.0 * s * d.da_dt) / 105.0;
    default:
      throw std::invalid_argument("oxygen_mass_rate: reduced methods only");
  }
}

MomentResidual moment_residual(Method m, const State& st, const Derivative& d) {
  const double a = st.a, s = st.s;
  const double ap = d.da_dt, sp = d.ds_dt;
  MomentResidual r;
  switch (m) {
    case Method::Deg6:
      r.zeroth = 16.0 * (ap * s + a * sp) + s * s * sp + 35.0 * s;
      r.first = 6.0 * (ap * s * s + 2.0 * a * s * sp) + s * s * s * sp -
                48.0 * a + 24.0 * s * s;
      return r;
    case Method::Deg3:
      r.zeroth = ap * s + a * sp + 2.0 * s;
      r.first = 3.0 * (ap * s * s + 2.0 * a * s * sp) - 20.0 * a + 10.0 * s * s;
      return r;
    default:
      throw std::invalid_argument("moment_residual: reduced methods only");
  }
}

namespace {

// du/dt at fixed x for the profile with s, a moving: differentiate each
// coefficient and account for xi = x/s dragging along with s.
double profile_time_derivative(Method m, double a, double s,
                               const Derivative& d, double x) {
  const double xi = x / s;
  const double xi2 = xi * xi;
  const double sp = d.ds_dt, ap = d.da_dt;
  if (m == Method::Deg3) {
    // coefficients (a, -3a, 2a) at powers (0, 2, 3); only a-dependence
    const double coef_dot = ap * (1.0 + xi2 * (-3.0 + 2.0 * xi));
    const double drag =
        -(2.0 * (-3.0 * a) * xi2 + 3.0 * (2.0 * a) * xi2 * xi) * (sp / s);
    return coef_dot + drag;
  }
  // Deg6: coefficients (a, -3a + s^2/8, 3a - s^2/4, -a + s^2/8) at powers
  // (0, 2, 4, 6); each depends on both a and s.
  const ProfileCoefficients c = coeffs_deg6(a, s);
  const double b_dot = -3.0 * ap + s * sp / 4.0;
  const double c_dot = 3.0 * ap - s * sp / 2.0;
  const double d_dot = -ap + s * sp / 4.0;
  const double coef_dot =
      ap + xi2 * (b_dot + xi2 * (c_dot + xi2 * d_dot));
  const double drag =
      -(2.0 * c.b * xi2 + 4.0 * c.c * xi2 * xi2 + 6.0 * c.d * xi2 * xi2 * xi2) *
      (sp / s);
  return coef_dot + drag;
}

} // namespace

MomentResidual moment_residual_quadrature(Method m, const State& st,
                                          const Derivative& d, int panels) {
  const double a = st.a, s = st.s;
  if (!(s > 0.0))
    throw DegenerateBoundaryError("moment_residual_quadrature: s <= 0");

  const auto ut = [&](double x) { return profile_time_derivative(m, a, s, d, x); };
  const auto rhs_integrand = [&](double x) {
    return eval_profile_derivatives(m, a, s, x).uxx - 1.0;
  };

  // Raw identities via quadrature. The boundary terms of ∫ x u_xx dx are
  // handled by integrating the exact integrand rather than by parts.
  const double zeroth_quad =
      simpson(ut, 0.0, s, panels) - simpson(rhs_integrand, 0.0, s, panels);
  const double first_quad =
      simpson([&](double x) { return x * ut(x); }, 0.0, s, panels) -
      simpson([&](double x) { return x * rhs_integrand(x); }, 0.0, s, panels);

  // Scale to the cleared-denominator form used by moment_residual; the raw
  // identities differ from it by the constant factors 35 and 48 (Deg6) or
  // 2 and 20 (Deg3).
  MomentResidual r;
  switch (m) {
    case Method::Deg6:
      r.zeroth = 35.0 * zeroth_quad;
      r.first = 48.0 * first_quad;
      return r;
    case Method::Deg3:
      r.zeroth = 2.0 * zeroth_quad;
      r.first = 20.0 * first_quad;
      return r;
    default:
      throw std::invalid_argument("moment_residual_quadrature: reduced methods only");
  }
}

} // namespace oxy
