#include "ulfemi.h"

#include <cstdio>
#include <cstring>
#include <new>
#include <string>

#include "ulfemi/coupling.hpp"
#include "ulfemi/peec.hpp"
#include "ulfemi/scenario.hpp"
#include "ulfemi/workflows.hpp"

struct ulfemi_scenario {
  ulfemi::ScenarioDocument doc;
};

namespace {

thread_local std::string t_last_error;

ulfemi_status record_error(ulfemi_status status, const std::string& message) {
  t_last_error = message;
  return status;
}

ulfemi_status status_of(const ulfemi::SimError& e) {
  using ulfemi::ErrorCode;
  switch (e.code()) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::IndexOutOfRange:
    case ErrorCode::ArityMismatch:
      return ULFEMI_ERR_ARGUMENT;
    default:
      return ULFEMI_ERR_NUMERIC;
  }
}

template <typename Fn>
ulfemi_status guarded(Fn&& fn) {
  try {
    fn();
    return ULFEMI_OK;
  } catch (const ulfemi::SimError& e) {
    return record_error(status_of(e), std::string(ulfemi::to_string(e.code())) + ": " + e.what());
  } catch (const std::exception& e) {
    return record_error(ULFEMI_ERR_INTERNAL, e.what());
  } catch (...) {
    return record_error(ULFEMI_ERR_INTERNAL, "unknown failure");
  }
}

ulfemi_status require(bool ok, const char* what) {
  return ok ? ULFEMI_OK : record_error(ULFEMI_ERR_ARGUMENT, what);
}

char* copy_string(const std::string& s) {
  char* out = new (std::nothrow) char[s.size() + 1];
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ulfemi_status emit_string(const std::string& s, char** out) {
  *out = copy_string(s);
  return *out ? ULFEMI_OK : record_error(ULFEMI_ERR_INTERNAL, "out of memory");
}

void fill_report(const ulfemi::CouplingReport& rep, ulfemi_report* out) {
  out->c_hg_total = rep.c_hg_total;
  out->delta_c = rep.delta_c;
  out->v_h_re = rep.v_h.real();
  out->v_h_im = rep.v_h.imag();
  out->y_x_re = rep.y_x.real();
  out->y_x_im = rep.y_x.imag();
  out->v_ab_exact_re = rep.v_ab_exact.real();
  out->v_ab_exact_im = rep.v_ab_exact.imag();
  out->v_ab_simplified_re = rep.v_ab_simplified.real();
  out->v_ab_simplified_im = rep.v_ab_simplified.imag();
  out->z_total_re = rep.z_total.real();
  out->z_total_im = rep.z_total.imag();
  out->v_cd_re = rep.v_cd.real();
  out->v_cd_im = rep.v_cd.imag();
  out->v_cd_oracle_re = rep.v_cd_oracle.real();
  out->v_cd_oracle_im = rep.v_cd_oracle.imag();
}

ulfemi_status reduce_with(const ulfemi_scenario* scenario, ulfemi::LadderModel ladder,
                          ulfemi_reduce_result* out) {
  return guarded([&] {
    const ulfemi::ScenarioParameters p = ulfemi::to_parameters(scenario->doc);
    const double omega = p.omega();
    const ulfemi::Complex v_h = ulfemi::body_potential(p);
    const ulfemi::Complex z_coil{p.r_coil, omega * p.l_coil};
    ladder.element_impedance = z_coil / static_cast<double>(ladder.q_count);
    const ulfemi::Complex terminal_load{0.0, omega * p.c_ag};

    const ulfemi::LumpedPair lumped = ulfemi::reduce_to_lumped(ladder);
    const ulfemi::ReductionValidation val =
        ulfemi::validate_reduction(ladder, v_h, omega, terminal_load);

    out->q_count = ladder.q_count;
    out->c_total = ladder.cap_total();
    out->c_ha = lumped.c_ha;
    out->c_hb = lumped.c_hb;
    out->i_a_distributed_re = val.i_a_distributed.real();
    out->i_a_distributed_im = val.i_a_distributed.imag();
    out->i_b_distributed_re = val.i_b_distributed.real();
    out->i_b_distributed_im = val.i_b_distributed.imag();
    out->i_a_lumped_re = val.i_a_lumped.real();
    out->i_a_lumped_im = val.i_a_lumped.imag();
    out->i_b_lumped_re = val.i_b_lumped.real();
    out->i_b_lumped_im = val.i_b_lumped.imag();
    out->rel_error = val.rel_error;
    out->weak_coupling = val.weak_coupling ? 1 : 0;
  });
}

}  // namespace

extern "C" {

const char* ulfemi_version(void) { return "1.0.0"; }

const char* ulfemi_last_error(void) { return t_last_error.c_str(); }

const char* ulfemi_parse_error_kind_name(int kind) {
  return ulfemi::to_string(static_cast<ulfemi::ParseErrorKind>(kind));
}

ulfemi_status ulfemi_scenario_parse(const char* text, ulfemi_scenario** out,
                                    ulfemi_parse_error* err) {
  if (ulfemi_status s = require(text && out, "null argument"); s != ULFEMI_OK) return s;
  *out = nullptr;
  try {
    ulfemi::ParseResult result = ulfemi::parse_scenario(text);
    if (!result.ok) {
      if (err) {
        err->line = result.error.line;
        err->column = result.error.column;
        err->kind = static_cast<int>(result.error.kind);
        std::snprintf(err->message, sizeof err->message, "%s", result.error.message.c_str());
      }
      return record_error(ULFEMI_ERR_PARSE,
                          "line " + std::to_string(result.error.line) + ", column " +
                              std::to_string(result.error.column) + ": " +
                              ulfemi::to_string(result.error.kind) + ": " + result.error.message);
    }
    *out = new ulfemi_scenario{std::move(result.document)};
    return ULFEMI_OK;
  } catch (const std::exception& e) {
    return record_error(ULFEMI_ERR_INTERNAL, e.what());
  }
}

void ulfemi_scenario_free(ulfemi_scenario* scenario) { delete scenario; }

ulfemi_status ulfemi_scenario_serialize(const ulfemi_scenario* scenario, char** out_text) {
  if (ulfemi_status s = require(scenario && out_text, "null argument"); s != ULFEMI_OK) return s;
  return guarded([&] {
    const std::string text = ulfemi::serialize_scenario(scenario->doc);
    if (emit_string(text, out_text) != ULFEMI_OK) throw std::bad_alloc();
  });
}

void ulfemi_string_free(char* text) { delete[] text; }

ulfemi_status ulfemi_scenario_get(const ulfemi_scenario* scenario, const char* dotted_key,
                                  double* out_value) {
  if (ulfemi_status s = require(scenario && dotted_key && out_value, "null argument");
      s != ULFEMI_OK)
    return s;
  return guarded([&] {
    const std::string_view path(dotted_key);
    const size_t dot = path.find('.');
    if (dot == std::string_view::npos) {
      throw ulfemi::SimError(ulfemi::ErrorCode::InvalidArgument,
                             "parameter path must look like section.key");
    }
    const ulfemi::ScenarioEntry* e =
        scenario->doc.find(path.substr(0, dot), path.substr(dot + 1));
    if (!e) {
      throw ulfemi::SimError(ulfemi::ErrorCode::InvalidArgument,
                             "scenario key '" + std::string(path) + "' not set");
    }
    *out_value = e->value;
  });
}

ulfemi_status ulfemi_scenario_set(ulfemi_scenario* scenario, const char* dotted_key,
                                  double value) {
  if (ulfemi_status s = require(scenario && dotted_key, "null argument"); s != ULFEMI_OK) return s;
  return guarded([&] { scenario->doc.set(dotted_key, value); });
}

int ulfemi_scenario_has_geometry(const ulfemi_scenario* scenario) {
  if (!scenario) return -1;
  return ulfemi::has_geometry(scenario->doc) ? 1 : 0;
}

ulfemi_status ulfemi_evaluate(const ulfemi_scenario* scenario, int alt_matching_form,
                              ulfemi_report* out) {
  if (ulfemi_status s = require(scenario && out, "null argument"); s != ULFEMI_OK) return s;
  return guarded([&] {
    const ulfemi::MatchingTerm form = alt_matching_form ? ulfemi::MatchingTerm::PrintedVariant
                                                        : ulfemi::MatchingTerm::SeriesChain;
    fill_report(ulfemi::evaluate(ulfemi::to_parameters(scenario->doc), form), out);
  });
}

ulfemi_status ulfemi_suppression_ratio(const ulfemi_scenario* scenario, double c_blanket,
                                       double* out_model_ratio, double* out_oracle_ratio) {
  if (ulfemi_status s = require(scenario && out_model_ratio && out_oracle_ratio, "null argument");
      s != ULFEMI_OK)
    return s;
  return guarded([&] {
    const ulfemi::ScenarioParameters p = ulfemi::to_parameters(scenario->doc);
    *out_model_ratio = ulfemi::suppression_ratio(p, c_blanket);
    *out_oracle_ratio = ulfemi::suppression_ratio_oracle(p, c_blanket);
  });
}

ulfemi_status ulfemi_sweep_csv(const ulfemi_scenario* scenario, const char* dotted_key,
                               double from, double to, int steps, char** out_csv) {
  if (ulfemi_status s = require(scenario && dotted_key && out_csv, "null argument");
      s != ULFEMI_OK)
    return s;
  return guarded([&] {
    const std::string csv = ulfemi::run_param_sweep_csv(scenario->doc, dotted_key, from, to, steps);
    if (emit_string(csv, out_csv) != ULFEMI_OK) throw std::bad_alloc();
  });
}

ulfemi_status ulfemi_geometry_sweep_csv(const ulfemi_scenario* scenario, double from, double to,
                                        int steps, int slices, char** out_csv) {
  if (ulfemi_status s = require(scenario && out_csv, "null argument"); s != ULFEMI_OK) return s;
  return guarded([&] {
    const std::string csv = ulfemi::run_geometry_sweep_csv(scenario->doc, from, to, steps, slices);
    if (emit_string(csv, out_csv) != ULFEMI_OK) throw std::bad_alloc();
  });
}

ulfemi_status ulfemi_sensitivity_csv(const ulfemi_scenario* scenario, double rel_step,
                                     char** out_csv) {
  if (ulfemi_status s = require(scenario && out_csv, "null argument"); s != ULFEMI_OK) return s;
  return guarded([&] {
    const std::string csv = ulfemi::run_sensitivity_csv(scenario->doc, rel_step);
    if (emit_string(csv, out_csv) != ULFEMI_OK) throw std::bad_alloc();
  });
}

ulfemi_status ulfemi_suppress_sweep_csv(const ulfemi_scenario* scenario, double from, double to,
                                        int steps, char** out_csv) {
  if (ulfemi_status s = require(scenario && out_csv, "null argument"); s != ULFEMI_OK) return s;
  return guarded([&] {
    const std::string csv = ulfemi::run_suppress_sweep_csv(scenario->doc, from, to, steps);
    if (emit_string(csv, out_csv) != ULFEMI_OK) throw std::bad_alloc();
  });
}

ulfemi_status ulfemi_head_capacitances(const ulfemi_scenario* scenario, double displacement,
                                       int slices, double* out_c_ha, double* out_c_hb) {
  if (ulfemi_status s = require(scenario && out_c_ha && out_c_hb, "null argument");
      s != ULFEMI_OK)
    return s;
  return guarded([&] {
    const auto [head, coil] = ulfemi::to_geometry(scenario->doc);
    const auto [c_ha, c_hb] = ulfemi::head_capacitances(head, coil, displacement, slices);
    *out_c_ha = c_ha;
    *out_c_hb = c_hb;
  });
}

ulfemi_status ulfemi_reduce_uniform(const ulfemi_scenario* scenario, int q_count,
                                    double cap_per_element, ulfemi_reduce_result* out) {
  if (ulfemi_status s = require(scenario && out, "null argument"); s != ULFEMI_OK) return s;
  if (ulfemi_status s = require(q_count >= 2, "q_count must be >= 2"); s != ULFEMI_OK) return s;
  if (ulfemi_status s = require(cap_per_element > 0.0, "cap_per_element must be > 0");
      s != ULFEMI_OK)
    return s;
  ulfemi::LadderModel ladder;
  ladder.q_count = q_count;
  ladder.partial_caps.assign(static_cast<size_t>(q_count), cap_per_element);
  out->has_cluster = 0;
  out->cluster_c_ha = 0.0;
  out->cluster_c_hb = 0.0;
  return reduce_with(scenario, std::move(ladder), out);
}

ulfemi_status ulfemi_reduce_cluster(const ulfemi_scenario* scenario, int q_count,
                                    double c_front_total, double c_rear_total,
                                    ulfemi_reduce_result* out) {
  if (ulfemi_status s = require(scenario && out, "null argument"); s != ULFEMI_OK) return s;
  if (ulfemi_status s = require(q_count >= 2 && q_count % 2 == 0,
                                "cluster reduction needs an even q_count >= 2");
      s != ULFEMI_OK)
    return s;
  if (ulfemi_status s = require(c_front_total >= 0.0 && c_rear_total >= 0.0 &&
                                    c_front_total + c_rear_total > 0.0,
                                "cluster totals must be >= 0 and not both zero");
      s != ULFEMI_OK)
    return s;
  ulfemi::LadderModel ladder;
  ladder.q_count = q_count;
  const int half = q_count / 2;
  ladder.partial_caps.assign(static_cast<size_t>(q_count), 0.0);
  for (size_t i = 0; i < static_cast<size_t>(half); ++i) {
    ladder.partial_caps[i] = c_front_total / half;
    ladder.partial_caps[i + static_cast<size_t>(half)] = c_rear_total / half;
  }
  const ulfemi::LumpedPair cluster = ulfemi::two_cluster(c_front_total, c_rear_total);
  const ulfemi_status status = reduce_with(scenario, std::move(ladder), out);
  if (status == ULFEMI_OK) {
    out->has_cluster = 1;
    out->cluster_c_ha = cluster.c_ha;
    out->cluster_c_hb = cluster.c_hb;
  }
  return status;
}

}  // extern "C"
