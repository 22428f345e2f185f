#pragma once

#include <utility>
#include <vector>

#include "ulfemi/types.hpp"

namespace ulfemi {

/// Hemisphere-capped cylinder head surrogate. The local axial coordinate runs
/// from 0 at the flat base through the cylindrical section to the apex at
/// l_cyl + r_head.
struct HeadModel {
  double r_head = 0.09;  // m, cylinder and cap radius
  double l_cyl = 0.12;   // m, cylindrical section length
  double eps_r = 1.0;    // effective relative permittivity of the gap

  double length() const { return l_cyl + r_head; }
  void validate() const;
};

/// Axial interval [start, end] in coil coordinates.
struct AxialBand {
  double start = 0.0;
  double end = 0.0;

  double width() const { return end - start; }
};

/// Two-ring-band surrogate for a solenoid receive coil: each terminal's
/// winding group collapses to one conductive band at radius r_coil.
struct CoilBands {
  double r_coil = 0.10;             // m, must exceed the head radius
  AxialBand band_a{-0.07, -0.01};   // terminal-a band
  AxialBand band_b{0.01, 0.07};     // terminal-b band

  void validate(const HeadModel& head) const;
};

/// Local head radius at axial offset u from the flat base; 0 outside the
/// head, r_head on the cylinder, the circle radius on the cap.
double radius_profile(const HeadModel& head, double axial_offset);

/// Coupling capacitance between the head and one band by per-slice coaxial
/// integration: each axial slice dx contributes
/// 2*pi*eps0*eps_r*dx / ln(r_coil / r(x)), empty slices contribute 0.
/// `displacement` places the head apex at that coil coordinate (the head
/// occupies [displacement - length, displacement]). Midpoint rule,
/// slices >= 16. Throws SimError(GeometryViolation) if the head radius
/// reaches r_coil.
double band_capacitance(const HeadModel& head, double r_coil, AxialBand band,
                        double displacement, int slices);

/// Band capacitances for both terminal bands; feeds ScenarioParameters
/// c_ha / c_hb.
std::pair<double, double> head_capacitances(const HeadModel& head, const CoilBands& coil,
                                            double displacement, int slices = 256);

struct DisplacementSweep {
  struct Row {
    double x = 0.0;       // apex position, m
    double c_ha = 0.0;    // F
    double c_hb = 0.0;    // F
    double delta_c = 0.0; // c_ha - c_hb
  };
  std::vector<Row> rows;  // x strictly increasing
};

DisplacementSweep delta_c_sweep(const HeadModel& head, const CoilBands& coil, double x_from,
                                double x_to, int steps, int slices = 256);

/// Monopole-style exposure proxy: environment coupling grows linearly with
/// the exposed conductor length.
double exposure_capacitance(double length, double cap_per_meter);

}  // namespace ulfemi
