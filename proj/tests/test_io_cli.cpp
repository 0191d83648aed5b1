#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "oxy/cli.hpp"
#include "oxy/integrate.hpp"
#include "oxy/io.hpp"

using namespace oxy;
using nlohmann::json;

namespace {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("number formatting") {
  CHECK(format_g12(0.0) == "0");
  CHECK(format_g12(1.0) == "1");
  CHECK(format_g12(-2.5) == "-2.5");
  CHECK(format_g12(1.0 / 3.0) == "0.333333333333");
  CHECK(format_g12(1e-7) == "1e-07");
  CHECK(format_g12(0.1) == "0.1");
}

TEST_CASE("csv round trip") {
  ProblemSpec spec = ProblemSpec::defaults(Method::Deg6);
  spec.t_end = 0.02;
  const Trajectory traj = integrate(spec);

  std::ostringstream os;
  write_trajectory_csv(os, traj);
  const std::string text = os.str();
  CHECK(text.substr(0, 6) == "t,s,a\n");

  std::istringstream is(text);
  const std::vector<State> parsed = parse_trajectory_csv(is);
  REQUIRE(parsed.size() == traj.samples.size());
  for (size_t i = 0; i < parsed.size(); ++i) {
    // 12 significant digits survive the round trip
    CHECK(parsed[i].t ==
          doctest::Approx(traj.samples[i].t).epsilon(1e-11));
    CHECK(parsed[i].s ==
          doctest::Approx(traj.samples[i].s).epsilon(1e-11));
    CHECK(parsed[i].a ==
          doctest::Approx(traj.samples[i].a).epsilon(1e-11));
  }
}

TEST_CASE("csv parser rejects malformed input") {
  std::istringstream bad_header("time,s,a\n0,1,2\n");
  CHECK_THROWS_AS(parse_trajectory_csv(bad_header), std::invalid_argument);
  std::istringstream short_row("t,s,a\n0.1,0.2\n");
  CHECK_THROWS_AS(parse_trajectory_csv(short_row), std::invalid_argument);
  std::istringstream junk("t,s,a\n0.1,zebra,0.3\n");
  CHECK_THROWS_AS(parse_trajectory_csv(junk), std::invalid_argument);
}

TEST_CASE("json output carries termination and the extinction estimate") {
  const Trajectory t3 = integrate(ProblemSpec::defaults(Method::Deg3));
  std::ostringstream os;
  write_trajectory_json(os, t3);
  const json j = json::parse(os.str());
  CHECK(j["method"] == "deg3");
  CHECK(j["termination"] == "extinction");
  REQUIRE(j.contains("extinction_estimate"));
  CHECK(std::abs(j["extinction_estimate"].get<double>() -
                 *t3.extinction_estimate) < 1e-12);
  REQUIRE(j["samples"].is_array());
  CHECK(j["samples"].size() == t3.samples.size());
  CHECK(j["samples"][0]["t"] == 0.051);
  CHECK(j["samples"][0]["s"] == 1.0);

  const Trajectory t6 = integrate(ProblemSpec::defaults(Method::Deg6));
  std::ostringstream os6;
  write_trajectory_json(os6, t6);
  const json j6 = json::parse(os6.str());
  CHECK(j6["termination"] == "concentration_floor");
  CHECK(!j6.contains("extinction_estimate"));
}

TEST_CASE("cli: solve") {
  const CliResult r = cli({"solve", "--method", "deg6", "--t-end", "0.01"});
  CHECK(r.code == 0);
  CHECK(r.out.substr(0, 6) == "t,s,a\n");
  CHECK(r.out.find("0.051,1,0.2265625\n") != std::string::npos);
  CHECK(r.err.find("terminated by horizon_reached") != std::string::npos);

  const CliResult j = cli({"solve", "--method", "deg3", "--format", "json"});
  CHECK(j.code == 0);
  const json parsed = json::parse(j.out);
  CHECK(parsed["termination"] == "extinction");
  CHECK(j.err.find("extrapolated extinction") != std::string::npos);
  // the default cubic start sits above its constraint; the run warns
  CHECK(j.err.find("warning: initial state violates the recession constraint") !=
        std::string::npos);
  CHECK(j.err.find("0.1328125") != std::string::npos);

  const CliResult o =
      cli({"solve", "--method", "oracle", "--nx", "81", "--t-end", "0.05"});
  CHECK(o.code == 0);
  CHECK(o.out.substr(0, 6) == "t,s,a\n");
  CHECK(o.out.find("\n0,1,0.5\n") != std::string::npos);
}

TEST_CASE("cli: solve writes to a file") {
  const auto path =
      std::filesystem::temp_directory_path() / "oxy_cli_solve_test.csv";
  const CliResult r = cli({"solve", "--method", "deg6", "--t-end", "0.01",
                           "--out", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  REQUIRE(in.good());
  const std::vector<State> parsed = parse_trajectory_csv(in);
  CHECK(parsed.size() > 5);
  CHECK(parsed.front().t == 0.051);
  std::filesystem::remove(path);
}

TEST_CASE("cli: compare exit codes follow the tables") {
  const CliResult t1 = cli({"compare", "--table", "1"});
  CHECK(t1.code == 0);
  CHECK(t1.out.find("rows within tolerance 3/3") != std::string::npos);
  CHECK(t1.out.find("sealed-face concentration") != std::string::npos);

  const CliResult t2 = cli({"compare", "--table", "2"});
  CHECK(t2.code == 1);
  CHECK(t2.out.find("rows within tolerance 6/9") != std::string::npos);
  CHECK(t2.out.find("FAIL") != std::string::npos);

  const CliResult shifted = cli({"compare", "--table", "2", "--t0", "0.05"});
  CHECK(shifted.code == 0);
  CHECK(shifted.out.find("rows within tolerance 9/9") != std::string::npos);

  const CliResult missing = cli({"compare"});
  CHECK(missing.code == 2);

  const CliResult bad_table = cli({"compare", "--table", "3"});
  CHECK(bad_table.code == 2);
}

TEST_CASE("cli: compare can export the reference table") {
  const auto path =
      std::filesystem::temp_directory_path() / "oxy_cli_table_test.csv";
  const CliResult r =
      cli({"compare", "--table", "1", "--export-table", path.string()});
  CHECK(r.code == 0);
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,ref10,present");
  std::filesystem::remove(path);
}

TEST_CASE("cli: profile blocks") {
  const CliResult r = cli({"profile", "--method", "deg6", "--times",
                           "0.051,0.1", "--nx", "5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("# t=0.051\nx,u\n0,0.2265625\n") != std::string::npos);
  CHECK(r.out.find("\n\n# t=0.1\nx,u\n") != std::string::npos);
  // last node of the first block is the boundary itself: u(s) = 0
  CHECK(r.out.find("\n1,0\n") != std::string::npos);

  const CliResult orc = cli({"profile", "--method", "oracle", "--times",
                             "0.05", "--nx", "41"});
  CHECK(orc.code == 0);
  CHECK(orc.out.find("# t=0.05\nx,u\n0,") != std::string::npos);

  // a requested time outside the computed span is a solver error
  const CliResult out_of_range =
      cli({"profile", "--method", "deg6", "--times", "0.3"});
  CHECK(out_of_range.code == 3);
  CHECK(out_of_range.err.find("outside the computed trajectory") !=
        std::string::npos);

  const CliResult no_times = cli({"profile", "--method", "deg6"});
  CHECK(no_times.code == 2);
}

TEST_CASE("cli: steady") {
  const CliResult r = cli({"steady"});
  CHECK(r.code == 0);
  CHECK(r.out == "X0 = 1\nc2 = 0.5\n");

  const CliResult custom = cli({"steady", "--c0", "0.18", "--m", "1"});
  CHECK(custom.code == 0);
  CHECK(custom.out.find("X0 = 0.6") != std::string::npos);

  const CliResult bad = cli({"steady", "--m", "-1"});
  CHECK(bad.code == 2);
}

TEST_CASE("cli: usage errors") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"solve", "--method", "nope"}).code == 2);
  CHECK(cli({"solve", "--dt", "-1"}).code == 2);
  CHECK(cli({"solve", "--scheme", "rk9"}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);

  const CliResult help = cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("solve") != std::string::npos);
  CHECK(help.out.find("compare") != std::string::npos);
}
