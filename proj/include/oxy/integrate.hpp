// Time integration of the reduced systems with event detection.
//
// Both systems end in a finite-time collapse where the right-hand sides are
// singular, so the integrator watches for three events on every step:
//   Extinction         s crossed s_min
//   ConcentrationFloor a crossed a_min
//   ConstraintViolated recession slack crossed from <=0 to >0 (armed only
//                      after the slack has been <=0, so a run started in
//                      violation is not killed on step one)
// and refines the earliest one by bisection before recording it.
#pragma once

#include <functional>

#include "oxy/moment.hpp"

namespace oxy {

enum class Scheme {
  RK4Fixed,      // classical RK4, fixed step
  RK45Adaptive,  // Dormand-Prince 5(4) embedded pair
};

struct IntegratorOptions {
  Scheme scheme = Scheme::RK4Fixed;
  double dt = 1e-4;       // RK4 step; initial step for RK45
  double rtol = 1e-10;    // RK45 only
  double atol = 1e-12;    // RK45 only
  double dt_min = 1e-12;  // RK45 only; going below throws StepUnderflowError
  double dt_max = 1e-2;   // RK45 only
  double t_end = 0.25;    // internal clock
  double s_min = 1e-3;
  double a_min = 0.0;
  int sample_stride = 10; // RK4 records every Nth step; RK45 records all
                          // accepted steps

  static IntegratorOptions from(const ProblemSpec& spec);
  void validate() const; // throws std::invalid_argument
};

// Integrate spec.method from (spec.s0, spec.a0). Sample times are reported as
// tau + spec.t0. The initial state and the final (horizon or refined event)
// state are always recorded. Identical inputs produce bit-identical output.
Trajectory integrate(const ProblemSpec& spec, const IntegratorOptions& opts);
Trajectory integrate(const ProblemSpec& spec); // options from the spec

// Positive before the event, negative past it. States handed to the
// predicate are produced by sub-stepping from the bracket's left endpoint.
using EventPredicate = std::function<double(const State&)>;

// Bisect the predicate's sign change inside [lo.t, hi.t] down to a time
// window of 1e-10, integrating sub-steps of the given method from lo. Returns
// the event anchored at the last pre-event state. Sub-evaluations that throw
// or produce non-finite values are treated as "past the event". Throws
// NoSignChangeError when predicate(lo) and the hi side have the same sign.
Event refine_event(Method m, const State& lo, const State& hi,
                   Event::Kind kind, const EventPredicate& predicate);

} // namespace oxy
