#include "oxy/reference.hpp"

#include <cmath>

#include "oxy/io.hpp"

namespace oxy {

std::optional<RefColumn> column_from_name(std::string_view name) {
  if (name == "ref10") return RefColumn::Ref10;
  if (name == "present") return RefColumn::Present;
  return std::nullopt;
}

const char* column_name(RefColumn c) {
  return c == RefColumn::Ref10 ? "ref10" : "present";
}

std::pair<ReferenceTable, ReferenceTable> load_tables() {
  ReferenceTable t1{1,
                    TableQuantity::SealedFaceConcentration,
                    {
                        {0.051, 0.2451, 0.227},
                        {0.060, 0.2237, 0.205},
                        {0.100, 0.1423, 0.132},
                    }};
  ReferenceTable t2{2,
                    TableQuantity::BoundaryPosition,
                    {
                        {0.051, 1.0000, 1.000},
                        {0.060, 0.9969, 0.997},
                        {0.080, 0.9756, 0.977},
                        {0.100, 0.9350, 0.936},
                        {0.120, 0.8743, 0.873},
                        {0.140, 0.7896, 0.783},
                        {0.150, 0.7356, 0.725},
                        {0.160, 0.6710, 0.653},
                        {0.180, 0.4879, 0.440},
                    }};
  return {std::move(t1), std::move(t2)};
}

std::string table_to_csv(const ReferenceTable& table) {
  std::string out = "t,ref10,present\n";
  for (const ReferenceRow& r : table.rows) {
    out += format_g12(r.t);
    out += ',';
    out += format_g12(r.ref10);
    out += ',';
    out += format_g12(r.present);
    out += '\n';
  }
  return out;
}

std::vector<double> default_tolerances(const ReferenceTable& table,
                                       RefColumn column) {
  std::vector<double> tol;
  tol.reserve(table.rows.size());
  for (const ReferenceRow& r : table.rows) {
    if (column == RefColumn::Present) {
      // The recession steepens sharply by t = 0.180; the published boundary
      // value there is much more step-size sensitive than the others.
      const bool steep =
          table.quantity == TableQuantity::BoundaryPosition && r.t > 0.17;
      tol.push_back(steep ? 0.02 : 0.005);
    } else {
      // Past t ~ 0.14 the earlier published solution's boundary tracking
      // carries visible error of its own; keep those rows informational.
      tol.push_back(r.t <= 0.14 + 1e-9 ? 0.01 : 0.05);
    }
  }
  return tol;
}

bool ComparisonReport::all_within() const {
  return !rows.empty() && !truncated &&
         rows_within_tolerance == static_cast<int>(rows.size());
}

ComparisonReport compare(const Trajectory& traj, const ReferenceTable& table,
                         RefColumn column, std::span<const double> tolerances) {
  if (tolerances.size() != table.rows.size())
    throw std::invalid_argument("compare: one tolerance per table row");

  ComparisonReport rep;
  for (size_t i = 0; i < table.rows.size(); ++i) {
    const ReferenceRow& row = table.rows[i];
    State st;
    try {
      st = traj.at_time(row.t);
    } catch (const std::out_of_range&) {
      rep.truncated = true;
      continue;
    }
    ComparisonRow cr;
    cr.t = row.t;
    cr.reference = column == RefColumn::Ref10 ? row.ref10 : row.present;
    cr.computed = table.quantity == TableQuantity::BoundaryPosition ? st.s : st.a;
    cr.abs_error = std::abs(cr.computed - cr.reference);
    cr.tolerance = tolerances[i];
    cr.within = cr.abs_error <= cr.tolerance;
    rep.max_abs_error = std::max(rep.max_abs_error, cr.abs_error);
    if (cr.within) ++rep.rows_within_tolerance;
    rep.rows.push_back(cr);
  }
  return rep;
}

ComparisonReport compare(const Trajectory& traj, const ReferenceTable& table,
                         RefColumn column) {
  const std::vector<double> tol = default_tolerances(table, column);
  return compare(traj, table, column, tol);
}

} // namespace oxy
