#include "ulfemi/workflows.hpp"

#include <cmath>

#include "ulfemi/csv.hpp"

namespace ulfemi {

namespace {

void check_sweep_args(double from, double to, int steps) {
  if (steps < 2) {
    throw SimError(ErrorCode::InvalidArgument, "sweep needs steps >= 2");
  }
  if (!(from < to)) {
    throw SimError(ErrorCode::InvalidArgument, "sweep needs from < to");
  }
}

double sweep_point(double from, double to, int steps, int i) {
  return from + (to - from) * i / (steps - 1);
}

}  // namespace

std::string run_param_sweep_csv(const ScenarioDocument& doc, std::string_view dotted_key,
                                double from, double to, int steps) {
  check_sweep_args(from, to, steps);
  std::vector<std::vector<CsvValue>> rows;
  rows.reserve(static_cast<size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const double v = sweep_point(from, to, steps, i);
    ScenarioDocument point = doc;
    point.set(dotted_key, v);
    const CouplingReport rep = evaluate(to_parameters(point));
    rows.push_back({v, rep.v_h, rep.v_cd, std::abs(rep.v_cd), std::abs(rep.v_cd_oracle)});
  }
  return write_csv({"param", "v_h", "v_cd", "v_cd_abs", "oracle_abs"}, rows);
}

std::string run_geometry_sweep_csv(const ScenarioDocument& doc, double from, double to, int steps,
                                   int slices) {
  const auto [head, coil] = to_geometry(doc);
  const ScenarioParameters base = to_parameters(doc);
  const DisplacementSweep sweep = delta_c_sweep(head, coil, from, to, steps, slices);
  std::vector<std::vector<CsvValue>> rows;
  rows.reserve(sweep.rows.size());
  for (const DisplacementSweep::Row& r : sweep.rows) {
    ScenarioParameters p = base;
    p.c_ha = r.c_ha;
    p.c_hb = r.c_hb;
    rows.push_back({r.x, r.c_ha, r.c_hb, r.delta_c, std::abs(v_cd(p))});
  }
  return write_csv({"x", "c_ha", "c_hb", "delta_c", "v_cd_abs"}, rows);
}

std::string run_sensitivity_csv(const ScenarioDocument& doc, double rel_step) {
  const std::vector<Sensitivity> sens = sensitivity(to_parameters(doc), rel_step);
  std::vector<std::string> headers;
  std::vector<CsvValue> row;
  headers.reserve(sens.size());
  row.reserve(sens.size());
  for (const Sensitivity& s : sens) {
    headers.push_back(s.parameter);
    row.push_back(s.value);
  }
  return write_csv(headers, {row});
}

std::string run_suppress_sweep_csv(const ScenarioDocument& doc, double from, double to,
                                   int steps) {
  check_sweep_args(from, to, steps);
  if (from < 0.0) {
    throw SimError(ErrorCode::InvalidArgument, "blanket sweep needs from >= 0");
  }
  const ScenarioParameters p = to_parameters(doc);
  std::vector<std::vector<CsvValue>> rows;
  rows.reserve(static_cast<size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const double extra = sweep_point(from, to, steps, i);
    rows.push_back({extra, suppression_ratio(p, extra), suppression_ratio_oracle(p, extra)});
  }
  return write_csv({"c_blanket", "suppression_model", "suppression_oracle"}, rows);
}

}  // namespace ulfemi
