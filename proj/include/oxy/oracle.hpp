// Reference solution of the free-boundary problem by an explicit
// finite-difference obstacle scheme on the fixed domain [0, 1]:
//   u <- max(u + dt (u_xx - 1), 0)
// with a mirror ghost node at x = 0 (sealed face) and u pinned to 0 at x = 1.
// The positive region {u > 0} shrinks from the right; its edge is the free
// boundary. Independent of the reduced systems in every way, so it serves as
// their oracle.
#pragma once

#include <span>

#include "oxy/types.hpp"

namespace oxy {

struct OracleField {
  int nx = 0;          // grid points on [0,1], spacing dx = 1/(nx-1)
  double dx = 0.0;
  double dt = 0.0;     // time step; stability requires dt <= 0.5 dx^2
  double t = 0.0;      // = steps * dt
  long steps = 0;
  std::vector<double> u;
  int last_positive = -1;   // largest j with u[j] > threshold, -1 if none
  double s_integral = 0.0;  // running ∫ s dt (trapezoid per step); the mass
                            // balance says ∫u dx + s_integral stays at 1/6
  std::vector<double> scratch;
};

// Nodes at or below this count as absorbed when locating the boundary.
inline constexpr double kOracleBoundaryEps = 1e-12;

// Field at t = 0 holding the initial profile. cfl scales the step:
// dt = cfl * dx^2, cfl in (0, 0.5]. Requires nx >= 3.
OracleField oracle_init(int nx, double cfl = 0.4);

// One explicit update in place. Throws StabilityError if dt > 0.5 dx^2.
void oracle_step(OracleField& f);

// Free-boundary estimate: for the last positive node j, the profile near the
// boundary is locally quadratic with u_xx = 1, so s ~ x_j + sqrt(2 u_j).
// Returns 0 when the field is fully absorbed.
double estimate_boundary(const OracleField& f);

// Trapezoid ∫_0^1 u dx.
double field_mass(const OracleField& f);

// March the scheme and record (t, s, u(0)) at the requested times (each
// reported with the field at the nearest grid step; the offset is at most
// dt/2). Stops early with Termination::Extinction when s <= spec.s_min.
// sample_times must be non-negative and strictly increasing.
Trajectory oracle_solve(const ProblemSpec& spec, int nx,
                        std::span<const double> sample_times);

// Field snapshots at the requested times, for profile output.
std::vector<std::vector<double>> oracle_fields_at(
    int nx, std::span<const double> times);

} // namespace oxy
