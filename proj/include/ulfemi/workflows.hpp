#pragma once

#include <string>
#include <string_view>

#include "ulfemi/scenario.hpp"

namespace ulfemi {

/// Varies one scalar scenario key over [from, to] in `steps` uniform points
/// and evaluates the model at each; CSV columns
/// param, v_h_re, v_h_im, v_cd_re, v_cd_im, v_cd_abs, oracle_abs.
std::string run_param_sweep_csv(const ScenarioDocument& doc, std::string_view dotted_key,
                                double from, double to, int steps);

/// Head-displacement sweep from the scenario's geometry section; the computed
/// band capacitances override terminals.c_ha/c_hb per row. CSV columns
/// x, c_ha, c_hb, delta_c, v_cd_abs.
std::string run_geometry_sweep_csv(const ScenarioDocument& doc, double from, double to, int steps,
                                   int slices);

/// One row of normalized |v_cd| sensitivities, one column per parameter.
std::string run_sensitivity_csv(const ScenarioDocument& doc, double rel_step);

/// Blanket sweep; CSV columns c_blanket, suppression_model, suppression_oracle.
std::string run_suppress_sweep_csv(const ScenarioDocument& doc, double from, double to, int steps);

}  // namespace ulfemi
