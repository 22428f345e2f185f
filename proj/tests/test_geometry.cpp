#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "ulfemi/geometry.hpp"

using namespace ulfemi;
using testutil::close;

namespace {

// full-band coaxial value for a band of the given width over the cylinder
double coax_closed_form(double width, double r_coil, double r_head, double eps_r = 1.0) {
  return 2.0 * kPi * kEps0 * eps_r * width / std::log(r_coil / r_head);
}

double centered_apex(const HeadModel& head) { return head.length() / 2.0; }

int count_interior_maxima(const std::vector<double>& v) {
  int count = 0;
  for (size_t i = 1; i + 1 < v.size(); ++i) {
    if (v[i] > v[i - 1] && v[i] > v[i + 1]) ++count;
  }
  return count;
}

}  // namespace

TEST_SUITE_BEGIN("geometry");

TEST_CASE("radius_profile") {
  const HeadModel head;
  CHECK(radius_profile(head, 0.06) == head.r_head);                 // cylinder
  CHECK(radius_profile(head, head.length()) == 0.0);                // apex
  CHECK(radius_profile(head, -0.01) == 0.0);                        // outside
  CHECK(radius_profile(head, head.length() + 0.01) == 0.0);         // outside
  const double s = head.r_head / std::sqrt(2.0);
  CHECK(close(radius_profile(head, head.l_cyl + s), s, 1e-12));     // circle identity
}

TEST_CASE("band_capacitance") {
  const HeadModel head;
  SUBCASE("no overlap gives exactly zero") {
    CHECK(band_capacitance(head, 0.10, {0.01, 0.07}, -1.0, 64) == 0.0);
  }
  SUBCASE("full cylindrical overlap matches the coaxial closed form") {
    // head centered far enough that the 0.05 m band sees cylinder only
    const HeadModel tall{0.09, 0.30, 1.0};
    const AxialBand band{-0.025, 0.025};
    const double got = band_capacitance(tall, 0.10, band, 0.30, 256);
    const double want = coax_closed_form(0.05, 0.10, 0.09);
    CHECK(std::fabs(got - want) / want <= 1e-3);
    CHECK(close(got, 2.6401020546002364e-11, 1e-3));  // frozen independent value
  }
  SUBCASE("halving a fully covered band halves the capacitance") {
    const HeadModel tall{0.09, 0.30, 1.0};
    const double full = band_capacitance(tall, 0.10, {-0.03, 0.03}, 0.30, 128);
    const double half = band_capacitance(tall, 0.10, {-0.015, 0.015}, 0.30, 128);
    CHECK(close(half, full / 2.0, 1e-12));
  }
  SUBCASE("permittivity scales linearly") {
    HeadModel eps = head;
    eps.eps_r = 4.0;
    const double base = band_capacitance(head, 0.10, {-0.07, -0.01}, centered_apex(head), 128);
    const double scaled = band_capacitance(eps, 0.10, {-0.07, -0.01}, centered_apex(eps), 128);
    CHECK(close(scaled, 4.0 * base, 1e-12));
  }
  SUBCASE("geometry violations and bad arguments") {
    CHECK_THROWS_AS(static_cast<void>(band_capacitance(head, 0.08, {0.0, 0.05}, 0.1, 64)),
                    SimError);
    CHECK_THROWS_AS(static_cast<void>(band_capacitance(head, 0.10, {0.05, 0.0}, 0.1, 64)),
                    SimError);
    CHECK_THROWS_AS(static_cast<void>(band_capacitance(head, 0.10, {0.0, 0.05}, 0.1, 8)),
                    SimError);
  }
  SUBCASE("nonnegative and continuous in displacement") {
    for (const double x : {0.02, 0.05, 0.09, 0.15}) {
      const double c0 = band_capacitance(head, 0.10, {0.01, 0.07}, x, 256);
      const double c1 = band_capacitance(head, 0.10, {0.01, 0.07}, x + 1e-6, 256);
      CHECK(c0 >= 0.0);
      CHECK(std::fabs(c1 - c0) <= 1e-14);  // slope bound ~5e-10 F/m
    }
  }
  SUBCASE("midpoint rule converges first-order on an edge-cut band") {
    // the flat tail sits a third of the way into the band, so each slice
    // doubling halves the discretization error
    const AxialBand band{0.01, 0.07};
    const double x = HeadModel{}.length() + band.start + band.width() / 3.0;
    double prev = band_capacitance(HeadModel{}, 0.10, band, x, 16);
    double prev_diff = 0.0;
    for (int n = 32; n <= 256; n *= 2) {
      const double cur = band_capacitance(HeadModel{}, 0.10, band, x, n);
      const double diff = std::fabs(cur - prev);
      if (prev_diff > 0.0) CHECK(prev_diff / diff >= 1.99);
      prev_diff = diff;
      prev = cur;
    }
  }
}

TEST_CASE("head_capacitances") {
  const HeadModel head;
  const CoilBands coil;
  SUBCASE("pure-cylinder mirror symmetry") {
    const HeadModel longhead{0.09, 0.30, 1.0};
    // cylinder spans both bands at this apex position
    const auto [c_a, c_b] = head_capacitances(longhead, coil, 0.30);
    CHECK(c_a == c_b);
  }
  SUBCASE("a centered head still couples asymmetrically") {
    const auto [c_a, c_b] = head_capacitances(head, coil, centered_apex(head));
    CHECK(c_a != c_b);
    CHECK(c_a > c_b);  // the cap thins the coupling on the apex side
  }
  SUBCASE("far displacement decouples both bands") {
    const auto [c_a, c_b] = head_capacitances(head, coil, 5.0);
    CHECK(c_a == 0.0);
    CHECK(c_b == 0.0);
    const auto [c_a2, c_b2] = head_capacitances(head, coil, -5.0);
    CHECK(c_a2 == 0.0);
    CHECK(c_b2 == 0.0);
  }
  SUBCASE("deeper proximal overlap lands on the proximal band") {
    // head covering band_a fully and band_b only partially
    const auto [c_a, c_b] = head_capacitances(head, coil, 0.05);
    CHECK(c_a > c_b);
  }
}

TEST_CASE("delta_c_sweep") {
  const HeadModel head;
  const CoilBands coil;
  SUBCASE("default exit sweep: rise-then-fall with one interior peak") {
    const DisplacementSweep sweep = delta_c_sweep(head, coil, -0.15, centered_apex(head), 100);
    REQUIRE(sweep.rows.size() == 100);
    for (size_t i = 1; i < sweep.rows.size(); ++i) {
      CHECK(sweep.rows[i].x > sweep.rows[i - 1].x);
      CHECK(sweep.rows[i].delta_c == sweep.rows[i].c_ha - sweep.rows[i].c_hb);
    }
    CHECK(sweep.rows.back().delta_c != 0.0);  // centered position
    std::vector<double> adc;
    for (const auto& r : sweep.rows) adc.push_back(std::fabs(r.delta_c));
    CHECK(count_interior_maxima(adc) == 1);
  }
  SUBCASE("sweep outside the bands is all zeros") {
    const DisplacementSweep sweep = delta_c_sweep(head, coil, 2.0, 3.0, 16);
    for (const auto& r : sweep.rows) {
      CHECK(r.c_ha == 0.0);
      CHECK(r.c_hb == 0.0);
    }
  }
  SUBCASE("rows are deterministic and match pointwise evaluation") {
    const DisplacementSweep a = delta_c_sweep(head, coil, -0.1, 0.1, 21);
    const DisplacementSweep b = delta_c_sweep(head, coil, -0.1, 0.1, 21);
    REQUIRE(a.rows.size() == b.rows.size());
    for (size_t i = 0; i < a.rows.size(); ++i) {
      CHECK(a.rows[i].c_ha == b.rows[i].c_ha);
      const auto [c_a, c_b] = head_capacitances(head, coil, a.rows[i].x);
      CHECK(a.rows[i].c_ha == c_a);
      CHECK(a.rows[i].c_hb == c_b);
    }
  }
  SUBCASE("bad sweep arguments") {
    CHECK_THROWS_AS(static_cast<void>(delta_c_sweep(head, coil, 0.1, -0.1, 10)), SimError);
    CHECK_THROWS_AS(static_cast<void>(delta_c_sweep(head, coil, -0.1, 0.1, 1)), SimError);
  }
}

TEST_CASE("exposure_capacitance") {
  CHECK(exposure_capacitance(0.0, 0.5e-12) == 0.0);
  CHECK(close(exposure_capacitance(2.0, 0.5e-12), 1e-12));
  CHECK(close(exposure_capacitance(4.0, 0.5e-12), 2.0 * exposure_capacitance(2.0, 0.5e-12)));
  CHECK_THROWS_AS(static_cast<void>(exposure_capacitance(-1.0, 1e-12)), SimError);
}

TEST_SUITE_END();
