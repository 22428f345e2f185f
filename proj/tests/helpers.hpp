#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "ulfemi/netsolve.hpp"

namespace testutil {

using ulfemi::Complex;

/// Scenario text mirroring ScenarioParameters{} defaults.
inline const char* default_scenario_text() {
  return R"([source]
f_hz = 2.23e6
v_e_re = 1.0
v_e_im = 0.0

[body]
c_eh = 2e-12
c_hg = 30e-12
c_hn = 200e-12
c_ng = 100e-12

[coil]
r_coil_ohm = 0.5
l_coil = 10e-6
c_t = 5.0936668564790048e-10

[terminals]
c_ha = 1.5e-12
c_hb = 0.75e-12
c_ag = 150e-12
c_bg = 150e-12

[matching]
c_m = 220e-12
z_l_re = 50.0
z_l_im = 0.0

[geometry]
r_head = 0.09
l_cyl = 0.12
r_coil_m = 0.10
band_a_start = -0.07
band_a_end = -0.01
band_b_start = 0.01
band_b_end = 0.07
eps_r = 1.0
)";
}

/// Same chain with balanced terminal couplings (delta_c = 0).
inline const char* symmetric_scenario_text() {
  return R"([source]
f_hz = 2.23e6
v_e_re = 1.0
v_e_im = 0.0

[body]
c_eh = 2e-12
c_hg = 30e-12
c_hn = 200e-12
c_ng = 100e-12

[coil]
r_coil_ohm = 0.5
l_coil = 10e-6
c_t = 5.0936668564790048e-10

[terminals]
c_ha = 1.5e-12
c_hb = 1.5e-12
c_ag = 150e-12
c_bg = 150e-12

[matching]
c_m = 220e-12
z_l_re = 50.0
z_l_im = 0.0
)";
}

inline double rel_diff(Complex got, Complex want) {
  const double scale = std::abs(want);
  return scale > 0.0 ? std::abs(got - want) / scale : std::abs(got);
}

inline bool close(Complex got, Complex want, double tol = 1e-12) {
  return rel_diff(got, want) <= tol;
}

inline bool close(double got, double want, double tol = 1e-12) {
  const double scale = std::fabs(want);
  return scale > 0.0 ? std::fabs(got - want) / scale <= tol : std::fabs(got) <= tol;
}

/// Connected random network: every node reaches ground through the chain,
/// plus extra cross braces. Admittances are O(1) complex values, so the
/// systems stay well-conditioned.
inline ulfemi::NodalNetwork random_network(std::mt19937_64& rng, int nodes, int sources) {
  std::uniform_real_distribution<double> mag(0.2, 2.0);
  auto y = [&] { return Complex{mag(rng), mag(rng)}; };

  ulfemi::NodalNetwork net;
  net.node_count = nodes;
  net.add_branch(0, ulfemi::NodalNetwork::kGround, y());
  for (int i = 1; i < nodes; ++i) {
    net.add_branch(i, i - 1, y());
  }
  std::uniform_int_distribution<int> pick(0, nodes - 1);
  const int extra = nodes / 2 + 1;
  for (int k = 0; k < extra; ++k) {
    const int i = pick(rng);
    int j = pick(rng);
    if (i == j) j = ulfemi::NodalNetwork::kGround;
    net.add_branch(i, j, y());
  }
  std::vector<int> source_nodes;
  while (static_cast<int>(source_nodes.size()) < sources) {
    const int n = pick(rng);
    bool used = false;
    for (int s : source_nodes) used |= s == n;
    if (!used) source_nodes.push_back(n);
  }
  std::uniform_real_distribution<double> volt(-2.0, 2.0);
  for (int s : source_nodes) {
    net.add_source(s, Complex{volt(rng), volt(rng)});
  }
  return net;
}

}  // namespace testutil
