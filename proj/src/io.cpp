#include "oxy/io.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>

#include "oxy/model.hpp"

namespace oxy {

std::string format_g12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << "t,s,a\n";
  for (const State& st : traj.samples)
    os << format_g12(st.t) << ',' << format_g12(st.s) << ','
       << format_g12(st.a) << '\n';
}

void write_trajectory_json(std::ostream& os, const Trajectory& traj) {
  os << "{\n";
  os << "  \"method\": \"" << method_name(traj.method) << "\",\n";
  os << "  \"termination\": \"" << termination_name(traj.termination)
     << "\",\n";
  if (traj.extinction_estimate)
    os << "  \"extinction_estimate\": " << format_g12(*traj.extinction_estimate)
       << ",\n";
  os << "  \"samples\": [\n";
  for (size_t i = 0; i < traj.samples.size(); ++i) {
    const State& st = traj.samples[i];
    os << "    {\"t\": " << format_g12(st.t) << ", \"s\": " << format_g12(st.s)
       << ", \"a\": " << format_g12(st.a) << '}'
       << (i + 1 < traj.samples.size() ? ",\n" : "\n");
  }
  os << "  ]\n}\n";
}

namespace {

double parse_field(std::string_view text) {
  double v = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end)
    throw std::invalid_argument("trajectory csv: bad number '" +
                                std::string(text) + "'");
  return v;
}

} // namespace

std::vector<State> parse_trajectory_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "t,s,a")
    throw std::invalid_argument("trajectory csv: missing 't,s,a' header");
  std::vector<State> samples;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const size_t c1 = line.find(',');
    const size_t c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw std::invalid_argument("trajectory csv: expected three fields");
    std::string_view sv(line);
    samples.push_back(State{parse_field(sv.substr(0, c1)),
                            parse_field(sv.substr(c1 + 1, c2 - c1 - 1)),
                            parse_field(sv.substr(c2 + 1))});
  }
  return samples;
}

} // namespace oxy
