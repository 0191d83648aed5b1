#include "oxy/integrate.hpp"

#include <algorithm>
#include <cmath>

namespace oxy {

IntegratorOptions IntegratorOptions::from(const ProblemSpec& spec) {
  IntegratorOptions o;
  o.dt = spec.dt;
  o.t_end = spec.t_end;
  o.s_min = spec.s_min;
  o.a_min = spec.a_min;
  return o;
}

void IntegratorOptions::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
  if (!(rtol > 0.0 && atol > 0.0))
    throw std::invalid_argument("rtol and atol must be positive");
  if (!(dt_min > 0.0 && dt_min <= dt_max))
    throw std::invalid_argument("need 0 < dt_min <= dt_max");
  if (sample_stride < 1)
    throw std::invalid_argument("sample_stride must be >= 1");
  if (!(s_min > 0.0)) throw std::invalid_argument("s_min must be positive");
  if (!(a_min >= 0.0)) throw std::invalid_argument("a_min must be >= 0");
}

namespace {

struct Y {
  double s = 0.0;
  double a = 0.0;
};

Y rk4_step(Method m, const Y& y, double h) {
  const Derivative k1 = rhs(m, y.a, y.s);
  const Derivative k2 =
      rhs(m, y.a + 0.5 * h * k1.da_dt, y.s + 0.5 * h * k1.ds_dt);
  const Derivative k3 =
      rhs(m, y.a + 0.5 * h * k2.da_dt, y.s + 0.5 * h * k2.ds_dt);
  const Derivative k4 = rhs(m, y.a + h * k3.da_dt, y.s + h * k3.ds_dt);
  return {y.s + h / 6.0 * (k1.ds_dt + 2.0 * k2.ds_dt + 2.0 * k3.ds_dt + k4.ds_dt),
          y.a + h / 6.0 * (k1.da_dt + 2.0 * k2.da_dt + 2.0 * k3.da_dt + k4.da_dt)};
}

constexpr double kEventTimeTol = 1e-10;
// A committed state may legitimately move s upward only while the recession
// slack is positive; any larger rise under slack <= 0 marks a garbage step
// (near collapse the stage denominators can flip sign and bounce s upward).
constexpr double kBounceTol = 1e-9;
bool finite(const Y& y) { return std::isfinite(y.s) && std::isfinite(y.a); }

// Re-integrate an event window. The boundary collapses like ds/dt ~ -1/s, so
// any fixed subdivision garbles the tail; sub-steps are instead capped so no
// one of them moves s by more than a small fraction, halving on violation and
// regrowing gently after success. A march that stalls (sub-step underflow or
// iteration cap) cannot traverse the window and throws, which callers treat
// as being past the event.
Y march(Method m, const Y& from, double span) {
  constexpr double kMaxFrac = 0.05;
  constexpr int kMaxIters = 1 << 15;
  Y y = from;
  double t = 0.0;
  double h = span / 16.0;
  for (int iter = 0; t < span * (1.0 - 1e-15); ++iter) {
    if (iter >= kMaxIters || !(h > span * 1e-12))
      throw StabilityError("event march stalled inside the step window");
    h = std::min(h, span - t);
    bool ok = true;
    Y y1{};
    try {
      y1 = rk4_step(m, y, h);
    } catch (const std::exception&) {
      ok = false;
    }
    if (!ok || !finite(y1) || std::abs(y1.s - y.s) > kMaxFrac * y.s) {
      h *= 0.5;
      continue;
    }
    y = y1;
    t += h;
    h *= 2.0;
  }
  return y;
}

} // namespace

Event refine_event(Method m, const State& lo, const State& hi,
                   Event::Kind kind, const EventPredicate& predicate) {
  if (!(hi.t > lo.t)) throw NoSignChangeError("refine_event: empty bracket");

  const double p_lo = predicate(lo);
  if (!std::isfinite(p_lo) || p_lo < 0.0)
    throw NoSignChangeError("refine_event: left endpoint already past the event");
  if (p_lo == 0.0) return Event{kind, lo.t, lo};

  // Interior (and right-endpoint) states are re-integrated from lo with
  // sub-steps sized to the collapse rate; hi only bounds the search in time.
  // Probes that throw or go non-finite count as past the event.
  const Y y0{lo.s, lo.a};
  auto eval_at = [&](double t, State& out) -> double {
    Y y{};
    try {
      y = march(m, y0, t - lo.t);
    } catch (const std::exception&) {
      return -1.0;
    }
    if (!finite(y)) return -1.0;
    out = State{t, y.s, y.a};
    const double p = predicate(out);
    return std::isfinite(p) ? p : -1.0;
  };

  State right_state;
  if (eval_at(hi.t, right_state) > 0.0)
    throw NoSignChangeError("refine_event: no sign change across the bracket");

  double left = lo.t;
  double right = hi.t;
  State left_state = lo;
  while (right - left > kEventTimeTol) {
    const double mid = 0.5 * (left + right);
    State mid_state;
    if (eval_at(mid, mid_state) > 0.0) {
      left = mid;
      left_state = mid_state;
    } else {
      right = mid;
    }
  }
  return Event{kind, left, left_state};
}

namespace {

// Candidate crossings for one committed (or failed) step. Each component is
// wrapped so non-finite values and bounced states count as past the event.
struct TerminalSearch {
  Method m;
  State lo;      // last good committed state
  double hi_t;   // end of the step window
  double slack0; // recession slack at lo
  double s_min;
  double a_min;

  EventPredicate wrap(std::function<double(const State&)> component) const {
    const double s0 = lo.s;
    const double sl0 = slack0;
    auto comp = std::move(component);
    return [s0, sl0, comp](const State& st) -> double {
      if (!std::isfinite(st.s) || !std::isfinite(st.a)) return -1.0;
      if (sl0 <= 0.0 && st.s > s0 + kBounceTol) return -1.0;
      return comp(st);
    };
  }

  // Refine one candidate kind; nullopt when its predicate has no crossing.
  std::optional<Event> candidate(Event::Kind kind) const {
    std::function<double(const State&)> component;
    switch (kind) {
      case Event::Kind::Extinction:
        component = [v = s_min](const State& st) { return st.s - v; };
        break;
      case Event::Kind::ConcentrationFloor:
        component = [v = a_min](const State& st) { return st.a - v; };
        break;
      case Event::Kind::ConstraintViolated:
        component = [m = m](const State& st) {
          return -check_constraint(m, st.a, st.s);
        };
        break;
    }
    try {
      return refine_event(m, lo, State{hi_t, 0.0, 0.0}, kind, wrap(component));
    } catch (const NoSignChangeError&) {
      return std::nullopt;
    }
  }
};

std::optional<Event> earliest(std::optional<Event> a, std::optional<Event> b) {
  if (!a) return b;
  if (!b) return a;
  return (b->t < a->t) ? b : a;
}

struct StepOutcome {
  bool committed = false;        // y_next is a usable post-step state
  Y y_next{};                    // state to commit when no event fired
  std::optional<Event> event;    // terminal event located inside the step
};

// Examine one attempted step [lo, lo + h] and either commit it, or locate
// the terminal event inside it. step_ok says whether y1 was produced without
// throwing. Suspicious steps (failed, non-finite, bounced, or tripping a
// threshold) are re-integrated across the window with the same subdivision
// the event refinement probes with, so trigger and refinement agree on the
// sign at the window end; when the refined view shows no crossing the coarse
// trip was an overshoot artifact and the refined end state is committed
// instead.
StepOutcome resolve_step(Method m, const State& lo, double hi_t, bool step_ok,
                         const Y& y1, const IntegratorOptions& opts) {
  TerminalSearch search{m, lo, hi_t, check_constraint(m, lo.a, lo.s),
                        opts.s_min, opts.a_min};
  auto bounced = [&](const Y& y) {
    return search.slack0 <= 0.0 && y.s > lo.s + kBounceTol;
  };
  auto slack_flipped = [&](const Y& y) {
    return search.slack0 <= 0.0 && check_constraint(m, y.a, y.s) > 0.0;
  };

  const bool coarse_bad = !step_ok || !finite(y1) || bounced(y1);
  if (!coarse_bad && y1.s >= opts.s_min && y1.a >= opts.a_min &&
      !slack_flipped(y1))
    return {true, y1, std::nullopt};

  bool fine_ok = true;
  Y yf{};
  try {
    yf = march(m, Y{lo.s, lo.a}, hi_t - lo.t);
  } catch (const std::exception&) {
    fine_ok = false;
  }

  std::optional<Event> ev;
  if (!fine_ok || !finite(yf) || bounced(yf)) {
    ev = earliest(search.candidate(Event::Kind::Extinction),
                  search.candidate(Event::Kind::ConcentrationFloor));
  } else {
    if (yf.s < opts.s_min)
      ev = earliest(ev, search.candidate(Event::Kind::Extinction));
    if (yf.a < opts.a_min)
      ev = earliest(ev, search.candidate(Event::Kind::ConcentrationFloor));
    if (slack_flipped(yf))
      ev = earliest(ev, search.candidate(Event::Kind::ConstraintViolated));
    if (!ev) return {true, yf, std::nullopt};
  }

  if (!ev)
    throw SingularDenominatorError(
        "integration step failed with no locatable event");
  return {false, {}, ev};
}

void record(Trajectory& traj, const State& st) {
  if (!traj.samples.empty() && traj.samples.back().t == st.t) {
    traj.samples.back() = st;
    return;
  }
  traj.samples.push_back(st);
}

void finish_with_event(Trajectory& traj, Method m, const Event& ev) {
  record(traj, ev.state);
  traj.termination = to_termination(ev.kind);
  traj.event = ev;
  if (ev.kind == Event::Kind::Extinction) {
    // Quadratic contact with s = 0: the collapse looks like
    // s(t)^2 ~ 2 s |s'| (t_f - t) near the end, so t_f ~ t + s / (2|s'|).
    try {
      const Derivative d = rhs(m, ev.state.a, ev.state.s);
      if (std::isfinite(d.ds_dt) && d.ds_dt < 0.0)
        traj.extinction_estimate = ev.t + ev.state.s / (2.0 * -d.ds_dt);
    } catch (const std::exception&) {
      // no estimate when the rhs is already unusable at the event state
    }
  }
}

Trajectory integrate_rk4(const ProblemSpec& spec, const IntegratorOptions& opts) {
  const Method m = spec.method;
  Trajectory traj;
  traj.method = m;

  Y y{spec.s0, spec.a0};
  traj.samples.push_back({spec.t0, y.s, y.a});

  long n = 0;
  for (;;) {
    const double tau0 = static_cast<double>(n) * opts.dt;
    if (tau0 >= opts.t_end * (1.0 - 1e-15)) break;

    double tau1 = static_cast<double>(n + 1) * opts.dt;
    bool clipped = false;
    if (tau1 > opts.t_end) {
      tau1 = opts.t_end;
      clipped = true;
    }
    const State lo{spec.t0 + tau0, y.s, y.a};
    const double hi_t = spec.t0 + tau1;

    bool ok = true;
    Y y1{};
    try {
      y1 = rk4_step(m, y, tau1 - tau0);
    } catch (const std::exception&) {
      ok = false;
    }

    const StepOutcome out = resolve_step(m, lo, hi_t, ok, y1, opts);
    if (out.event) {
      finish_with_event(traj, m, *out.event);
      return traj;
    }

    y = out.y_next;
    ++n;
    if (!clipped && n % opts.sample_stride == 0)
      record(traj, {spec.t0 + tau1, y.s, y.a});
  }

  const double tau_end = std::min(static_cast<double>(n) * opts.dt, opts.t_end);
  record(traj, {spec.t0 + std::max(tau_end, 0.0), y.s, y.a});
  traj.termination = Termination::HorizonReached;
  return traj;
}

// Dormand-Prince 5(4) tableau.
namespace dp {
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                 e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;
} // namespace dp

struct DpResult {
  Y y5;          // 5th-order solution
  double err;    // scaled error norm of y5 - y4
};

DpResult dp45_step(Method m, const Y& y, double h, double rtol, double atol) {
  const Derivative k1 = rhs(m, y.a, y.s);
  auto at = [&](double cs, double ca) { return rhs(m, y.a + h * ca, y.s + h * cs); };
  const Derivative k2 = at(dp::a21 * k1.ds_dt, dp::a21 * k1.da_dt);
  const Derivative k3 = at(dp::a31 * k1.ds_dt + dp::a32 * k2.ds_dt,
                           dp::a31 * k1.da_dt + dp::a32 * k2.da_dt);
  const Derivative k4 =
      at(dp::a41 * k1.ds_dt + dp::a42 * k2.ds_dt + dp::a43 * k3.ds_dt,
         dp::a41 * k1.da_dt + dp::a42 * k2.da_dt + dp::a43 * k3.da_dt);
  const Derivative k5 = at(dp::a51 * k1.ds_dt + dp::a52 * k2.ds_dt +
                               dp::a53 * k3.ds_dt + dp::a54 * k4.ds_dt,
                           dp::a51 * k1.da_dt + dp::a52 * k2.da_dt +
                               dp::a53 * k3.da_dt + dp::a54 * k4.da_dt);
  const Derivative k6 =
      at(dp::a61 * k1.ds_dt + dp::a62 * k2.ds_dt + dp::a63 * k3.ds_dt +
             dp::a64 * k4.ds_dt + dp::a65 * k5.ds_dt,
         dp::a61 * k1.da_dt + dp::a62 * k2.da_dt + dp::a63 * k3.da_dt +
             dp::a64 * k4.da_dt + dp::a65 * k5.da_dt);

  Y y5{y.s + h * (dp::b1 * k1.ds_dt + dp::b3 * k3.ds_dt + dp::b4 * k4.ds_dt +
                  dp::b5 * k5.ds_dt + dp::b6 * k6.ds_dt),
       y.a + h * (dp::b1 * k1.da_dt + dp::b3 * k3.da_dt + dp::b4 * k4.da_dt +
                  dp::b5 * k5.da_dt + dp::b6 * k6.da_dt)};
  const Derivative k7 = rhs(m, y5.a, y5.s);
  Y y4{y.s + h * (dp::e1 * k1.ds_dt + dp::e3 * k3.ds_dt + dp::e4 * k4.ds_dt +
                  dp::e5 * k5.ds_dt + dp::e6 * k6.ds_dt + dp::e7 * k7.ds_dt),
       y.a + h * (dp::e1 * k1.da_dt + dp::e3 * k3.da_dt + dp::e4 * k4.da_dt +
                  dp::e5 * k5.da_dt + dp::e6 * k6.da_dt + dp::e7 * k7.da_dt)};

  const double scale_s = atol + rtol * std::max(std::abs(y.s), std::abs(y5.s));
  const double scale_a = atol + rtol * std::max(std::abs(y.a), std::abs(y5.a));
  const double err = std::max(std::abs(y5.s - y4.s) / scale_s,
                              std::abs(y5.a - y4.a) / scale_a);
  return {y5, err};
}

Trajectory integrate_rk45(const ProblemSpec& spec, const IntegratorOptions& opts) {
  const Method m = spec.method;
  Trajectory traj;
  traj.method = m;

  Y y{spec.s0, spec.a0};
  traj.samples.push_back({spec.t0, y.s, y.a});

  double tau = 0.0;
  double h = std::clamp(opts.dt, opts.dt_min, opts.dt_max);
  while (tau < opts.t_end * (1.0 - 1e-15)) {
    h = std::min(h, opts.t_end - tau);
    if (h < opts.dt_min)
      h = std::min(opts.dt_min, opts.t_end - tau);

    bool ok = true;
    DpResult r{};
    try {
      r = dp45_step(m, y, h, opts.rtol, opts.atol);
    } catch (const std::exception&) {
      ok = false;
    }

    if (ok && finite(r.y5) && r.err > 1.0) {
      // plain rejection: shrink and retry
      const double factor =
          std::clamp(0.9 * std::pow(r.err, -0.2), 0.2, 5.0);
      h *= factor;
      if (h < opts.dt_min)
        throw StepUnderflowError("rk45: step size underflow while rejecting");
      continue;
    }

    const double tau1 = tau + h;
    const State lo{spec.t0 + tau, y.s, y.a};
    const StepOutcome out =
        resolve_step(m, lo, spec.t0 + tau1, ok, r.y5, opts);
    if (out.event) {
      finish_with_event(traj, m, *out.event);
      return traj;
    }

    y = out.y_next;
    tau = tau1;
    record(traj, {spec.t0 + tau, y.s, y.a});

    const double factor =
        (r.err > 0.0) ? std::clamp(0.9 * std::pow(r.err, -0.2), 0.2, 5.0) : 5.0;
    h = std::clamp(h * factor, opts.dt_min, opts.dt_max);
  }

  traj.termination = Termination::HorizonReached;
  return traj;
}

} // namespace

Trajectory integrate(const ProblemSpec& spec, const IntegratorOptions& opts) {
  spec.validate();
  opts.validate();
  if (spec.method == Method::Oracle)
    throw std::invalid_argument(
        "integrate: reduced methods only (use oracle_solve)");
  return opts.scheme == Scheme::RK4Fixed ? integrate_rk4(spec, opts)
                                         : integrate_rk45(spec, opts);
}

Trajectory integrate(const ProblemSpec& spec) {
  return integrate(spec, IntegratorOptions::from(spec));
}

} // namespace oxy
