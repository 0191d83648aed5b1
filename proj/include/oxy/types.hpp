// Shared value types and error taxonomy for the oxygen free-boundary solvers.
//
// The problem: oxygen diffuses into an absorbing medium on 0 <= x <= s(t),
//   u_t = u_xx - 1,  u_x(0,t) = 0 (sealed face),  u(s,t) = u_x(s,t) = 0,
// starting from the steady profile u(x,0) = (1-x)^2/2 with s(0) = 1.
// The moving boundary s(t) recedes and the oxygen is exhausted in finite time.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace oxy {

enum class Method {
  Deg3,   // cubic profile, reduced to ODEs in (s, a)
  Deg6,   // degree-6 profile, reduced to ODEs in (s, a)
  Oracle, // explicit finite-difference obstacle scheme for the PDE itself
};

const char* method_name(Method m);
std::optional<Method> method_from_name(std::string_view name);

// Why an evolution stopped.
enum class Termination {
  HorizonReached,     // integrated to t_end
  Extinction,         // s reached s_min
  ConstraintViolated, // recession-constraint slack crossed from <=0 to >0
  ConcentrationFloor, // sealed-face concentration a reached a_min
};

const char* termination_name(Termination t);

// One trajectory point: boundary position s and sealed-face value a = u(0,t).
struct State {
  double t = 0.0;
  double s = 0.0;
  double a = 0.0;
};

struct Event {
  enum class Kind { Extinction, ConstraintViolated, ConcentrationFloor };
  Kind kind{};
  double t = 0.0;
  State state; // refined to the crossing, always a usable pre-event state
};

Termination to_termination(Event::Kind k);

struct Trajectory {
  Method method = Method::Deg6;
  std::vector<State> samples; // strictly increasing in t
  Termination termination = Termination::HorizonReached;
  std::optional<Event> event;
  // Quadratic-contact estimate of the true extinction time, a little past the
  // Extinction event at s = s_min. Absent for other terminations.
  std::optional<double> extinction_estimate;

  double t_front() const;
  double t_back() const;
  // Linear interpolation between samples; throws std::out_of_range outside
  // [t_front, t_back].
  State at_time(double t) const;
};

struct ProblemSpec {
  Method method = Method::Deg6;
  double a0 = 29.0 / 128.0; // sealed-face concentration when recession starts
  double s0 = 1.0;          // the reduction assumes the full initial depth
  double t0 = 0.051; // offset between the internal clock (tau = 0 at the start
                     // of recession) and the reference tables' time axis;
                     // reported times are tau + t0
  double dt = 1e-4;
  double t_end = 0.25;  // horizon on the internal clock
  double s_min = 1e-3;  // extinction threshold; the reduced systems are
                        // singular at s = 0
  double a_min = 0.0;   // concentration floor; a < 0 is unphysical

  static ProblemSpec defaults(Method m);
  void validate() const; // throws std::invalid_argument
};

// Profile evaluated outside 0 <= x <= s, or an operation handed s <= 0.
class DegenerateBoundaryError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A reduced-system denominator vanished (|den| below the guard).
class SingularDenominatorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The Deg3 right-hand side was evaluated at a ~ 0, where ds/dt blows up.
class ExtinctionSignal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Explicit scheme asked to run with dt exceeding its stability bound.
class StabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Event refinement given a bracket whose endpoints do not straddle a sign
// change of the predicate.
class NoSignChangeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Adaptive step control drove the step size below dt_min.
class StepUnderflowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

} // namespace oxy
