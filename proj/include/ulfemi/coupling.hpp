#pragma once

#include <string>
#include <vector>

#include "ulfemi/netsolve.hpp"
#include "ulfemi/types.hpp"

namespace ulfemi {

/// Every lumped element of the environment-body-receive-chain model.
/// All values in SI base units. The in-class initializers form the default
/// scenario used throughout the docs and tests: a 2.23 MHz receive chain, a
/// body raked by a normalized 1 V environmental source, picofarad-order
/// body couplings, and a tuned, 50-ohm-matched coil.
struct ScenarioParameters {
  double frequency = 2.23e6;  // Hz
  Complex v_e{1.0, 0.0};      // environmental source phasor, V

  double c_eh = 2e-12;         // environment-to-body coupling, F
  double c_hg_direct = 30e-12; // direct body-to-ground, F
  double c_hn = 200e-12;       // body-to-bed, F
  double c_ng = 100e-12;       // bed-to-ground, F

  double c_ha = 1.5e-12;   // body to terminal a, F
  double c_hb = 0.75e-12;  // body to terminal b, F
  double c_ag = 150e-12;   // terminal a to ground, F
  double c_bg = 150e-12;   // terminal b to ground, F

  double r_coil = 0.5;    // ohm
  double l_coil = 10e-6;  // H
  double c_t = 5.0936668564790048e-10;  // tuning, resonates l_coil at 2.23 MHz
  double c_m = 220e-12;                 // matching, F
  Complex z_l{50.0, 0.0};               // preamplifier input impedance, ohm

  double c_blanket = 0.0;  // extra body-to-ground bypass, F

  double omega() const { return 2.0 * kPi * frequency; }

  /// Throws SimError(InvalidArgument) on out-of-domain values.
  void validate() const;
};

/// Denominator form of the matching-branch admittance used by the
/// simplified expressions. SeriesChain is the form the series
/// a-Cm-c-ZL-d-Cm-b topology implies (2 + jwCmZL) and is the default;
/// PrintedVariant substitutes (1 + jwCmZL) for numeric comparison only.
enum class MatchingTerm { SeriesChain, PrintedVariant };

/// Total effective body-to-ground capacitance: direct path, series
/// body-bed-ground path, and any bypass blanket in parallel.
double body_ground_capacitance(const ScenarioParameters& p);

/// Common-mode body potential from the capacitive divider.
Complex body_potential(const ScenarioParameters& p);

/// Total shunt mutual admittance across terminals a-b: coil branch, tuning
/// capacitor, and matching branch.
Complex shunt_admittance_yx(const ScenarioParameters& p);

/// Differential terminal voltage V_a - V_b from the two-node analytic
/// solution; valid for asymmetric terminal groundings.
Complex v_ab_exact(const ScenarioParameters& p);

/// Simplified form assuming c_ag == c_bg; throws
/// SimError(AsymmetricTerminals) otherwise.
Complex v_ab_simplified(const ScenarioParameters& p,
                        MatchingTerm form = MatchingTerm::SeriesChain);

/// Transfer impedance from the common-mode conversion current to the
/// preamplifier input voltage. Exactly 0 when c_m == 0.
Complex z_total(const ScenarioParameters& p, MatchingTerm form = MatchingTerm::SeriesChain);

/// Differential-mode noise voltage at the preamplifier input.
Complex v_cd(const ScenarioParameters& p, MatchingTerm form = MatchingTerm::SeriesChain);

/// Full nodal model of the coupled system with named node handles.
/// Nodes with no live branch are pruned and report kAbsent; the matching
/// chain (nodes c, d) exists only when c_m > 0.
struct CouplingNetwork {
  static constexpr int kAbsent = -2;

  NodalNetwork net;
  int h = kAbsent;  // body
  int n = kAbsent;  // bed
  int a = kAbsent;  // coil terminal a
  int b = kAbsent;  // coil terminal b
  int c = kAbsent;  // matching output +
  int d = kAbsent;  // matching output -
  int source_e = kAbsent;  // environmental source (clamped)
};

CouplingNetwork build_full_network(const ScenarioParameters& p);

/// Closed forms plus the full-network reference in one bundle.
struct CouplingReport {
  double c_hg_total = 0.0;
  Complex v_h;
  Complex y_x;
  Complex v_ab_exact;
  Complex v_ab_simplified;
  Complex z_total;
  Complex v_cd;
  Complex v_cd_oracle;  // V_c - V_d from the solved full network
  double delta_c = 0.0; // c_ha - c_hb, signed
};

CouplingReport evaluate(const ScenarioParameters& p,
                        MatchingTerm form = MatchingTerm::SeriesChain);

/// |V_c - V_d| from the solved full network (0 when the matching chain is
/// absent).
Complex oracle_v_cd(const ScenarioParameters& p);

/// Fractional reduction of |v_cd| when `c_blanket_extra` is added on top of
/// the scenario's existing bypass. Closed-form route (only the body divider
/// changes). Throws SimError(ZeroBaseline) when the baseline |v_cd| is 0.
double suppression_ratio(const ScenarioParameters& p, double c_blanket_extra);

/// Same ratio measured on the full-network solution.
double suppression_ratio_oracle(const ScenarioParameters& p, double c_blanket_extra);

struct Sensitivity {
  std::string parameter;  // scenario-file addressing, e.g. "body.c_eh"
  double value = 0.0;     // d|v_cd|/dp * p/|v_cd|, central differences
};

/// Normalized (logarithmic) sensitivities of the full-network |v_cd| to each
/// real scalar parameter. Parameters currently at zero report 0.
/// rel_step must lie in [1e-8, 1e-2].
std::vector<Sensitivity> sensitivity(const ScenarioParameters& p, double rel_step);

}  // namespace ulfemi
