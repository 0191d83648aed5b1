#include "oxy/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "oxy/model.hpp"

namespace oxy {

OracleField oracle_init(int nx, double cfl) {
  if (nx < 3) throw std::invalid_argument("oracle_init: nx must be >= 3");
  if (!(cfl > 0.0 && cfl <= 0.5))
    throw std::invalid_argument("oracle_init: cfl must lie in (0, 0.5]");
  OracleField f;
  f.nx = nx;
  f.dx = 1.0 / (nx - 1);
  f.dt = cfl * f.dx * f.dx;
  f.u.resize(nx);
  f.scratch.resize(nx);
  for (int j = 0; j < nx; ++j) f.u[j] = initial_profile(j * f.dx);
  f.u[nx - 1] = 0.0;
  f.last_positive = nx - 2;
  return f;
}

double estimate_boundary(const OracleField& f) {
  int j = f.last_positive;
  if (j < 0 || j >= f.nx) {
    // no maintained index; scan
    j = f.nx - 1;
    while (j >= 0 && f.u[j] <= kOracleBoundaryEps) --j;
  }
  if (j < 0) return 0.0;
  // near the boundary u ~ (s - x)^2 / 2, so s ~ x_j + sqrt(2 u_j)
  return j * f.dx + std::sqrt(2.0 * f.u[j]);
}

void oracle_step(OracleField& f) {
  const double dx2 = f.dx * f.dx;
  if (f.dt > 0.5 * dx2 * (1.0 + 1e-12))
    throw StabilityError("oracle_step: dt exceeds the stability bound dx^2/2");

  const double s_before = estimate_boundary(f);
  const double r = f.dt / dx2;
  const int nx = f.nx;
  std::vector<double>& u = f.u;
  std::vector<double>& w = f.scratch;

  // mirror ghost at the sealed face: u[-1] = u[1]
  w[0] = std::max(u[0] + r * 2.0 * (u[1] - u[0]) - f.dt, 0.0);
  for (int j = 1; j < nx - 1; ++j)
    w[j] = std::max(u[j] + r * (u[j + 1] - 2.0 * u[j] + u[j - 1]) - f.dt, 0.0);
  w[nx - 1] = 0.0;
  u.swap(w);

  ++f.steps;
  f.t = f.steps * f.dt;

  int lp = std::min(f.last_positive, nx - 2);
  while (lp >= 0 && u[lp] <= kOracleBoundaryEps) --lp;
  while (lp + 1 <= nx - 2 && u[lp + 1] > kOracleBoundaryEps) ++lp;
  f.last_positive = lp;

  f.s_integral += 0.5 * (s_before + estimate_boundary(f)) * f.dt;
}

double field_mass(const OracleField& f) {
  double sum = 0.5 * (f.u.front() + f.u.back());
  for (int j = 1; j < f.nx - 1; ++j) sum += f.u[j];
  return sum * f.dx;
}

namespace {

void check_sample_times(std::span<const double> times) {
  if (times.empty())
    throw std::invalid_argument("oracle: no sample times given");
  double prev = -1.0;
  for (double t : times) {
    if (!(t >= 0.0) || t <= prev)
      throw std::invalid_argument(
          "oracle: sample times must be non-negative and strictly increasing");
    prev = t;
  }
}

// Advance to the grid step nearest the target time.
void advance_to(OracleField& f, double target) {
  const long want = std::lround(target / f.dt);
  while (f.steps < want) oracle_step(f);
}

} // namespace

Trajectory oracle_solve(const ProblemSpec& spec, int nx,
                        std::span<const double> sample_times) {
  check_sample_times(sample_times);
  OracleField f = oracle_init(nx);

  Trajectory traj;
  traj.method = Method::Oracle;
  for (double target : sample_times) {
    advance_to(f, target);
    const double s = estimate_boundary(f);
    const State st{target, s, f.u[0]};
    traj.samples.push_back(st);
    if (s <= spec.s_min) {
      traj.termination = Termination::Extinction;
      traj.event = Event{Event::Kind::Extinction, target, st};
      return traj;
    }
  }
  traj.termination = Termination::HorizonReached;
  return traj;
}

std::vector<std::vector<double>> oracle_fields_at(
    int nx, std::span<const double> times) {
  check_sample_times(times);
  OracleField f = oracle_init(nx);
  std::vector<std::vector<double>> snaps;
  snaps.reserve(times.size());
  for (double target : times) {
    advance_to(f, target);
    snaps.push_back(f.u);
  }
  return snaps;
}

} // namespace oxy
