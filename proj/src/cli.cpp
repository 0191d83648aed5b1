#include "oxy/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "oxy/integrate.hpp"
#include "oxy/io.hpp"
#include "oxy/model.hpp"
#include "oxy/oracle.hpp"
#include "oxy/reference.hpp"

namespace oxy {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOutOfTolerance = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSolver = 3;

struct CommonFlags {
  std::string method = "deg6";
  double a0 = NAN;    // NaN = keep the method default
  double t0 = NAN;
  double dt = NAN;
  double t_end = NAN;
  double s_min = NAN;
  int nx = 1001;
  std::string scheme = "rk4";
  std::string out_path;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_scheme = true) {
  cmd->add_option("--method", f.method, "deg3 | deg6 | oracle")
      ->check(CLI::IsMember({"deg3", "deg6", "oracle"}));
  cmd->add_option("--a0", f.a0, "initial sealed-face concentration");
  cmd->add_option("--t0", f.t0,
                  "time-axis offset added to reported times (reduced methods)");
  cmd->add_option("--dt", f.dt, "time step (reduced methods)");
  cmd->add_option("--t-end", f.t_end, "integration horizon");
  cmd->add_option("--s-min", f.s_min, "extinction threshold on s");
  cmd->add_option("--nx", f.nx, "grid points (oracle) / profile samples");
  if (with_scheme)
    cmd->add_option("--scheme", f.scheme, "rk4 | rk45 (reduced methods)")
        ->check(CLI::IsMember({"rk4", "rk45"}));
  cmd->add_option("--out", f.out_path, "write output to this file");
}

ProblemSpec build_spec(const CommonFlags& f, Method m) {
  ProblemSpec spec = ProblemSpec::defaults(m);
  if (!std::isnan(f.a0)) spec.a0 = f.a0;
  if (!std::isnan(f.t0)) spec.t0 = f.t0;
  if (!std::isnan(f.dt)) spec.dt = f.dt;
  if (!std::isnan(f.t_end)) spec.t_end = f.t_end;
  if (!std::isnan(f.s_min)) spec.s_min = f.s_min;
  spec.validate();
  return spec;
}

void warn_if_constrained(std::ostream& err, Method m, const ProblemSpec& spec) {
  if (m == Method::Oracle) return;
  const double slack = check_constraint(m, spec.a0, spec.s0);
  if (slack > 0.0)
    err << "warning: initial state violates the recession constraint ("
        << (m == Method::Deg3 ? "5*a0 - s0^2" : "128*a0 - 29*s0^2") << " = "
        << format_g12(slack)
        << " > 0); the boundary will expand until the surplus is absorbed\n";
}

std::vector<double> oracle_sample_times(double t_end) {
  std::vector<double> times;
  for (long k = 0;; ++k) {
    const double t = k * 1e-3;
    if (t > t_end + 1e-12) break;
    times.push_back(t);
  }
  if (times.back() < t_end - 1e-12) times.push_back(t_end);
  return times;
}

Trajectory run_method(Method m, const ProblemSpec& spec, const CommonFlags& f,
                      std::span<const double> oracle_times) {
  if (m == Method::Oracle) {
    if (f.nx < 3)
      throw std::invalid_argument("oracle needs --nx >= 3");
    return oracle_solve(spec, f.nx, oracle_times);
  }
  IntegratorOptions opts = IntegratorOptions::from(spec);
  if (f.scheme == "rk45") opts.scheme = Scheme::RK45Adaptive;
  return integrate(spec, opts);
}

// Stream selector: file when --out given, the session stream otherwise.
class OutputTarget {
 public:
  OutputTarget(const std::string& path, std::ostream& fallback)
      : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_)
        throw std::runtime_error("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

int cmd_solve(const CommonFlags& f, const std::string& format,
              std::ostream& out, std::ostream& err) {
  const Method m = *method_from_name(f.method);
  const ProblemSpec spec = build_spec(f, m);
  warn_if_constrained(err, m, spec);

  std::vector<double> times;
  if (m == Method::Oracle) times = oracle_sample_times(spec.t_end);
  const Trajectory traj = run_method(m, spec, f, times);

  OutputTarget target(f.out_path, out);
  if (format == "json")
    write_trajectory_json(target.stream(), traj);
  else
    write_trajectory_csv(target.stream(), traj);

  err << "note: " << method_name(m) << " terminated by "
      << termination_name(traj.termination) << " at t = "
      << format_g12(traj.t_back());
  if (traj.extinction_estimate)
    err << " (extrapolated extinction t ~ "
        << format_g12(*traj.extinction_estimate) << ")";
  err << "\n";
  return kExitOk;
}

int cmd_compare(const CommonFlags& f, int table_no, std::string column_name_raw,
                const std::string& export_path, std::ostream& out,
                std::ostream& err) {
  const Method m = *method_from_name(f.method);
  const auto [t1, t2] = load_tables();
  const ReferenceTable& table = table_no == 1 ? t1 : t2;

  if (!export_path.empty()) {
    std::ofstream ef(export_path);
    if (!ef) throw std::runtime_error("cannot open export file: " + export_path);
    ef << table_to_csv(table);
  }

  if (column_name_raw.empty())
    column_name_raw = (m == Method::Oracle) ? "ref10" : "present";
  const auto column = column_from_name(column_name_raw);
  if (!column) throw std::invalid_argument("unknown column: " + column_name_raw);

  const ProblemSpec spec = build_spec(f, m);
  warn_if_constrained(err, m, spec);

  std::vector<double> times;
  if (m == Method::Oracle) {
    times.reserve(table.rows.size());
    for (const ReferenceRow& r : table.rows) times.push_back(r.t);
  }
  const Trajectory traj = run_method(m, spec, f, times);
  const ComparisonReport rep = compare(traj, table, *column);

  OutputTarget target(f.out_path, out);
  std::ostream& os = target.stream();
  os << "table " << table.number << " ("
     << (table.quantity == TableQuantity::BoundaryPosition
             ? "free-boundary position"
             : "sealed-face concentration")
     << "), column " << oxy::column_name(*column) << ", method "
     << method_name(m) << "\n";
  os << "        t  reference   computed    |error|  tolerance  status\n";
  std::ostringstream row;
  for (const ComparisonRow& r : rep.rows) {
    row.str("");
    row << std::fixed << std::setprecision(3) << std::setw(9) << r.t
        << std::setprecision(4) << std::setw(11) << r.reference
        << std::setprecision(6) << std::setw(11) << r.computed << std::setw(11)
        << r.abs_error << std::defaultfloat << std::setw(11) << r.tolerance
        << "  " << (r.within ? "ok" : "FAIL");
    os << row.str() << "\n";
  }
  os << "max |error| " << format_g12(rep.max_abs_error) << "; rows within tolerance "
     << rep.rows_within_tolerance << "/" << table.rows.size() << "\n";
  if (rep.truncated)
    os << "trajectory ended at t = " << format_g12(traj.t_back())
       << "; later table rows not covered\n";
  return rep.all_within() ? kExitOk : kExitOutOfTolerance;
}

int cmd_profile(const CommonFlags& f, const std::vector<double>& times,
                std::ostream& out, std::ostream& err) {
  const Method m = *method_from_name(f.method);
  if (times.empty()) throw std::invalid_argument("profile needs --times");

  OutputTarget target(f.out_path, out);
  std::ostream& os = target.stream();

  if (m == Method::Oracle) {
    if (f.nx < 3) throw std::invalid_argument("oracle needs --nx >= 3");
    const auto snaps = oracle_fields_at(f.nx, times);
    const double dx = 1.0 / (f.nx - 1);
    for (size_t i = 0; i < times.size(); ++i) {
      if (i) os << "\n";
      os << "# t=" << format_g12(times[i]) << "\nx,u\n";
      for (int j = 0; j < f.nx; ++j)
        os << format_g12(j * dx) << ',' << format_g12(snaps[i][j]) << '\n';
    }
    return kExitOk;
  }

  if (f.nx < 2) throw std::invalid_argument("profile needs --nx >= 2");
  const ProblemSpec spec = build_spec(f, m);
  warn_if_constrained(err, m, spec);
  const Trajectory traj = integrate(spec);
  for (size_t i = 0; i < times.size(); ++i) {
    State st;
    try {
      st = traj.at_time(times[i]);
    } catch (const std::out_of_range&) {
      throw std::runtime_error(
          "requested time " + format_g12(times[i]) +
          " outside the computed trajectory [" + format_g12(traj.t_front()) +
          ", " + format_g12(traj.t_back()) + "]");
    }
    if (i) os << "\n";
    os << "# t=" << format_g12(times[i]) << "\nx,u\n";
    for (int j = 0; j < f.nx; ++j) {
      const double x = st.s * j / (f.nx - 1);
      os << format_g12(x) << ',' << format_g12(eval_profile(m, st.a, st.s, x))
         << '\n';
    }
  }
  return kExitOk;
}

int cmd_steady(double c0, double m_coef, std::ostream& out) {
  if (!(m_coef > 0.0)) throw std::invalid_argument("steady needs --m > 0");
  if (c0 < 0.0) throw std::invalid_argument("steady needs --c0 >= 0");
  out << "X0 = " << format_g12(steady_state_boundary(c0, m_coef)) << "\n";
  out << "c2 = " << format_g12(0.5 * m_coef) << "\n";
  return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Free-boundary solvers for oxygen diffusion with constant absorption"};
  app.require_subcommand(1);

  CommonFlags solve_flags, compare_flags, profile_flags;
  std::string solve_format = "csv";
  int compare_table = 0;
  std::string compare_column;
  std::string compare_export;
  std::vector<double> profile_times;
  double steady_c0 = 0.5, steady_m = 1.0;

  CLI::App* solve = app.add_subcommand("solve", "integrate and emit (t, s, a)");
  add_common(solve, solve_flags);
  solve->add_option("--format", solve_format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));

  CLI::App* cmp = app.add_subcommand(
      "compare", "difference a computed trajectory against a reference table");
  add_common(cmp, compare_flags);
  cmp->add_option("--table", compare_table, "reference table number")
      ->required()
      ->check(CLI::IsMember({1, 2}));
  cmp->add_option("--column", compare_column,
                  "ref10 | present (default: present; ref10 for oracle)")
      ->check(CLI::IsMember({"ref10", "present"}));
  cmp->add_option("--export-table", compare_export,
                  "also write the reference table as CSV to this file");

  CLI::App* prof = app.add_subcommand(
      "profile", "emit concentration profiles u(x) at chosen times");
  add_common(prof, profile_flags, /*with_scheme=*/false);
  prof->add_option("--times", profile_times, "comma-separated times")
      ->required()
      ->delimiter(',');

  CLI::App* steady = app.add_subcommand(
      "steady", "steady free boundary of C'' = m with C(0) = c0");
  steady->add_option("--c0", steady_c0, "surface concentration (default 0.5)");
  steady->add_option("--m", steady_m, "absorption rate (default 1)");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("oxy-fbp");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(solve_flags, solve_format, out, err);
    if (cmp->parsed())
      return cmd_compare(compare_flags, compare_table, compare_column,
                         compare_export, out, err);
    if (prof->parsed()) return cmd_profile(profile_flags, profile_times, out, err);
    if (steady->parsed()) return cmd_steady(steady_c0, steady_m, out);
    err << "error: no subcommand\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitSolver;
  }
}

} // namespace oxy
