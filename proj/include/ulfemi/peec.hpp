#pragma once

#include <vector>

#include "ulfemi/netsolve.hpp"
#include "ulfemi/types.hpp"

namespace ulfemi {

/// Distributed coil model: Q series elements of uniform impedance, each
/// injecting displacement current through its own partial capacitance.
/// Total coil impedance is q_count * element_impedance.
struct LadderModel {
  int q_count = 0;
  Complex element_impedance;         // z per element
  std::vector<double> partial_caps;  // length q_count, farads

  Complex coil_impedance() const { return element_impedance * static_cast<double>(q_count); }
  double cap_total() const;
  void validate() const;
};

struct LumpedPair {
  double c_ha = 0.0;
  double c_hb = 0.0;
};

/// Displacement current injected by one element under the weak-coupling
/// approximation (node potential neglected against the body potential).
Complex element_current(double c_q, Complex v_h, double omega);

struct PortSplit {
  Complex i_a;
  Complex i_b;
};

/// Current-division of an element's injected current between the two ports:
/// the piece returning through a port is proportional to the opposite path
/// length, (Q-q)/Q toward a and q/Q toward b. q is 1-based.
PortSplit port_split(Complex i_q, int q, int q_count);

/// Position-weighted reduction of the distributed capacitances to the two
/// effective terminal capacitances. c_ha + c_hb equals the capacitance total
/// identically.
LumpedPair reduce_to_lumped(const LadderModel& ladder);

/// Closed form for the half-and-half cluster ladder in the large-Q limit,
/// from the cluster totals.
LumpedPair two_cluster(double c_tf, double c_tr);

/// Brute-force ladder network: chain nodes 0..Q with ports at both ends,
/// element q's capacitance attached at node q, the body clamped at v_h, and
/// each port shunted to ground through terminal_load (an admittance).
/// This solves the ladder without the weak-coupling approximation.
NodalNetwork build_distributed_network(const LadderModel& ladder, Complex v_h, double omega,
                                       Complex terminal_load);

struct ReductionValidation {
  Complex i_a_distributed;
  Complex i_b_distributed;
  Complex i_a_lumped;
  Complex i_b_lumped;
  double rel_error = 0.0;     // max per-port relative mismatch
  bool weak_coupling = true;  // false when the regime check fails (result still valid)
};

/// Compares the solved ladder's port currents against the lumped-pair
/// prediction. The weak_coupling flag reports whether
/// 10*|jw*sum(C_q)| <= |terminal_load| and 10*|jw*sum(C_q)*Z_coil| <= 1.
ReductionValidation validate_reduction(const LadderModel& ladder, Complex v_h, double omega,
                                       Complex terminal_load);

}  // namespace ulfemi
