#include "ulfemi/geometry.hpp"

#include <cmath>

namespace ulfemi {

void HeadModel::validate() const {
  if (!(r_head > 0.0) || !std::isfinite(r_head)) {
    throw SimError(ErrorCode::InvalidArgument, "r_head must be > 0");
  }
  if (!(l_cyl >= 0.0) || !std::isfinite(l_cyl)) {
    throw SimError(ErrorCode::InvalidArgument, "l_cyl must be >= 0");
  }
  if (!(eps_r >= 1.0) || !std::isfinite(eps_r)) {
    throw SimError(ErrorCode::InvalidArgument, "eps_r must be >= 1");
  }
}

void CoilBands::validate(const HeadModel& head) const {
  if (!(r_coil > head.r_head)) {
    throw SimError(ErrorCode::GeometryViolation, "coil radius must exceed the head radius");
  }
  if (!(band_a.end > band_a.start) || !(band_b.end > band_b.start)) {
    throw SimError(ErrorCode::InvalidArgument, "band end must exceed band start");
  }
  const bool disjoint = band_a.end <= band_b.start || band_b.end <= band_a.start;
  if (!disjoint) {
    throw SimError(ErrorCode::InvalidArgument, "coil bands overlap");
  }
}

double radius_profile(const HeadModel& head, double axial_offset) {
  if (axial_offset < 0.0 || axial_offset > head.length()) return 0.0;
  if (axial_offset <= head.l_cyl) return head.r_head;
  const double s = axial_offset - head.l_cyl;  // depth into the cap
  const double sq = head.r_head * head.r_head - s * s;
  return sq > 0.0 ? std::sqrt(sq) : 0.0;
}

double band_capacitance(const HeadModel& head, double r_coil, AxialBand band,
                        double displacement, int slices) {
  head.validate();
  if (!(band.end > band.start)) {
    throw SimError(ErrorCode::InvalidArgument, "band end must exceed band start");
  }
  if (slices < 16) {
    throw SimError(ErrorCode::InvalidArgument, "band integration needs slices >= 16");
  }
  if (!(r_coil > head.r_head)) {
    throw SimError(ErrorCode::GeometryViolation, "head radius reaches the coil radius");
  }

  const double dx = band.width() / slices;
  const double tail = displacement - head.length();
  double total = 0.0;
  for (int i = 0; i < slices; ++i) {
    const double t = band.start + (i + 0.5) * dx;
    const double r = radius_profile(head, t - tail);
    if (r < 1e-6 * head.r_head) continue;  // near-apex slices contribute ~0
    total += 2.0 * kPi * kEps0 * head.eps_r * dx / std::log(r_coil / r);
  }
  return total;
}

std::pair<double, double> head_capacitances(const HeadModel& head, const CoilBands& coil,
                                            double displacement, int slices) {
  coil.validate(head);
  return {band_capacitance(head, coil.r_coil, coil.band_a, displacement, slices),
          band_capacitance(head, coil.r_coil, coil.band_b, displacement, slices)};
}

DisplacementSweep delta_c_sweep(const HeadModel& head, const CoilBands& coil, double x_from,
                                double x_to, int steps, int slices) {
  if (steps < 2) {
    throw SimError(ErrorCode::InvalidArgument, "sweep needs steps >= 2");
  }
  if (!(x_from < x_to)) {
    throw SimError(ErrorCode::InvalidArgument, "sweep needs x_from < x_to");
  }
  DisplacementSweep sweep;
  sweep.rows.reserve(static_cast<size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const double x = x_from + (x_to - x_from) * i / (steps - 1);
    const auto [c_ha, c_hb] = head_capacitances(head, coil, x, slices);
    sweep.rows.push_back({x, c_ha, c_hb, c_ha - c_hb});
  }
  return sweep;
}

double exposure_capacitance(double length, double cap_per_meter) {
  if (!(length >= 0.0) || !(cap_per_meter >= 0.0)) {
    throw SimError(ErrorCode::InvalidArgument,
                   "exposure length and cap_per_meter must be >= 0");
  }
  return length * cap_per_meter;
}

}  // namespace ulfemi
