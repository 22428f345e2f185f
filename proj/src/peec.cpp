#include "ulfemi/peec.hpp"

#include <cmath>

namespace ulfemi {

double LadderModel::cap_total() const {
  double total = 0.0;
  for (double c : partial_caps) total += c;
  return total;
}

void LadderModel::validate() const {
  if (q_count < 2) {
    throw SimError(ErrorCode::InvalidArgument, "ladder needs q_count >= 2");
  }
  if (partial_caps.size() != static_cast<size_t>(q_count)) {
    throw SimError(ErrorCode::InvalidArgument, "partial_caps length must equal q_count");
  }
  bool any_positive = false;
  for (double c : partial_caps) {
    if (!(c >= 0.0) || !std::isfinite(c)) {
      throw SimError(ErrorCode::InvalidArgument, "partial capacitances must be finite and >= 0");
    }
    any_positive |= c > 0.0;
  }
  if (!any_positive) {
    throw SimError(ErrorCode::InvalidArgument, "at least one partial capacitance must be > 0");
  }
  if (!std::isfinite(std::abs(element_impedance)) || std::abs(coil_impedance()) == 0.0) {
    throw SimError(ErrorCode::InvalidArgument, "coil impedance must be finite and nonzero");
  }
}

Complex element_current(double c_q, Complex v_h, double omega) {
  if (!(c_q >= 0.0)) {
    throw SimError(ErrorCode::InvalidArgument, "element capacitance must be >= 0");
  }
  if (!(omega > 0.0)) {
    throw SimError(ErrorCode::InvalidArgument, "omega must be > 0");
  }
  return Complex{0.0, omega * c_q} * v_h;
}

PortSplit port_split(Complex i_q, int q, int q_count) {
  if (q < 1 || q > q_count) {
    throw SimError(ErrorCode::IndexOutOfRange,
                   "element index " + std::to_string(q) + " outside 1.." +
                       std::to_string(q_count));
  }
  const double frac_b = static_cast<double>(q) / q_count;
  const double frac_a = static_cast<double>(q_count - q) / q_count;
  return {i_q * frac_a, i_q * frac_b};
}

LumpedPair reduce_to_lumped(const LadderModel& ladder) {
  ladder.validate();
  const double q_total = static_cast<double>(ladder.q_count);
  LumpedPair out;
  for (int q = 1; q <= ladder.q_count; ++q) {
    const double c = ladder.partial_caps[static_cast<size_t>(q - 1)];
    out.c_ha += c * static_cast<double>(ladder.q_count - q) / q_total;
    out.c_hb += c * static_cast<double>(q) / q_total;
  }
  return out;
}

LumpedPair two_cluster(double c_tf, double c_tr) {
  if (!(c_tf >= 0.0) || !(c_tr >= 0.0)) {
    throw SimError(ErrorCode::InvalidArgument, "cluster capacitances must be >= 0");
  }
  return {0.75 * c_tf + 0.25 * c_tr, 0.25 * c_tf + 0.75 * c_tr};
}

NodalNetwork build_distributed_network(const LadderModel& ladder, Complex v_h, double omega,
                                       Complex terminal_load) {
  ladder.validate();
  if (!(omega > 0.0)) {
    throw SimError(ErrorCode::InvalidArgument, "omega must be > 0");
  }
  if (std::abs(terminal_load) == 0.0) {
    throw SimError(ErrorCode::InvalidArgument,
                   "terminal_load admittance must be nonzero or the ladder floats");
  }

  const int q_count = ladder.q_count;
  NodalNetwork net;
  net.node_count = q_count + 2;  // chain nodes 0..Q plus the body node
  const int body = q_count + 1;
  net.add_source(body, v_h);

  const Complex y_segment = 1.0 / ladder.element_impedance;
  for (int i = 1; i <= q_count; ++i) {
    net.add_branch(i - 1, i, y_segment);
  }
  for (int q = 1; q <= q_count; ++q) {
    const double c = ladder.partial_caps[static_cast<size_t>(q - 1)];
    if (c > 0.0) net.add_branch(q, body, Complex{0.0, omega * c});
  }
  net.add_branch(0, NodalNetwork::kGround, terminal_load);
  net.add_branch(q_count, NodalNetwork::kGround, terminal_load);
  return net;
}

ReductionValidation validate_reduction(const LadderModel& ladder, Complex v_h, double omega,
                                       Complex terminal_load) {
  ladder.validate();
  const double sum_c = ladder.cap_total();
  ReductionValidation out;
  out.weak_coupling = 10.0 * omega * sum_c <= std::abs(terminal_load) &&
                      10.0 * omega * sum_c * std::abs(ladder.coil_impedance()) <= 1.0;
  if (std::abs(v_h) == 0.0) {
    return out;  // no excitation: all currents zero, mismatch defined as 0
  }

  const NodalNetwork net = build_distributed_network(ladder, v_h, omega, terminal_load);
  const SolveResult sol = solve_network(net);
  out.i_a_distributed = sol.potentials[0] * terminal_load;
  out.i_b_distributed = sol.potentials[static_cast<size_t>(ladder.q_count)] * terminal_load;

  const LumpedPair lumped = reduce_to_lumped(ladder);
  out.i_a_lumped = Complex{0.0, omega * lumped.c_ha} * v_h;
  out.i_b_lumped = Complex{0.0, omega * lumped.c_hb} * v_h;

  // A port whose lumped prediction is exactly zero (all mass at the far end)
  // is normalized by the total injected current instead.
  const double scale = omega * sum_c * std::abs(v_h);
  auto mismatch = [scale](Complex dist, Complex lump) {
    const double den = std::abs(lump) > 0.0 ? std::abs(lump) : scale;
    return std::abs(dist - lump) / den;
  };
  out.rel_error = std::max(mismatch(out.i_a_distributed, out.i_a_lumped),
                           mismatch(out.i_b_distributed, out.i_b_lumped));
  return out;
}

}  // namespace ulfemi
