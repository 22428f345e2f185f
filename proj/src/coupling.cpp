#include "ulfemi/coupling.hpp"

#include <cmath>
#include <functional>

namespace ulfemi {

namespace {

Complex jw_cap(double omega, double c) { return Complex{0.0, omega * c}; }

Complex matching_branch_admittance(const ScenarioParameters& p, MatchingTerm form) {
  if (p.c_m == 0.0) return Complex{};
  const double k = (form == MatchingTerm::SeriesChain) ? 2.0 : 1.0;
  const Complex jwcm = jw_cap(p.omega(), p.c_m);
  return jwcm / (k + jwcm * p.z_l);
}

Complex coil_admittance(const ScenarioParameters& p) {
  return 1.0 / Complex{p.r_coil, p.omega() * p.l_coil};
}

// Shunt admittance with a selectable matching-branch denominator; the
// public shunt_admittance_yx is the SeriesChain instance.
Complex shunt_admittance(const ScenarioParameters& p, MatchingTerm form) {
  if (p.r_coil == 0.0 && p.l_coil == 0.0) {
    throw SimError(ErrorCode::DegenerateDenominator, "coil branch impedance is zero");
  }
  return coil_admittance(p) + jw_cap(p.omega(), p.c_t) + matching_branch_admittance(p, form);
}

void require_symmetric_terminals(const ScenarioParameters& p) {
  if (p.c_ag != p.c_bg) {
    throw SimError(ErrorCode::AsymmetricTerminals,
                   "simplified forms assume c_ag == c_bg; use v_ab_exact for "
                   "asymmetric terminal groundings");
  }
}

}  // namespace

void ScenarioParameters::validate() const {
  auto nonneg = [](double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw SimError(ErrorCode::InvalidArgument, std::string(name) + " must be finite and >= 0");
    }
  };
  if (!(frequency > 0.0) || !std::isfinite(frequency)) {
    throw SimError(ErrorCode::InvalidArgument, "frequency must be > 0");
  }
  nonneg(c_eh, "c_eh");
  nonneg(c_hg_direct, "c_hg_direct");
  nonneg(c_hn, "c_hn");
  nonneg(c_ng, "c_ng");
  nonneg(c_ha, "c_ha");
  nonneg(c_hb, "c_hb");
  nonneg(c_ag, "c_ag");
  nonneg(c_bg, "c_bg");
  nonneg(r_coil, "r_coil");
  nonneg(l_coil, "l_coil");
  nonneg(c_t, "c_t");
  nonneg(c_m, "c_m");
  nonneg(c_blanket, "c_blanket");
  if (r_coil == 0.0 && l_coil == 0.0) {
    throw SimError(ErrorCode::InvalidArgument, "r_coil and l_coil cannot both be zero");
  }
  if (std::abs(z_l) == 0.0 || !std::isfinite(std::abs(z_l))) {
    throw SimError(ErrorCode::InvalidArgument, "|z_l| must be finite and > 0");
  }
  if (!std::isfinite(std::abs(v_e))) {
    throw SimError(ErrorCode::InvalidArgument, "v_e must be finite");
  }
}

double body_ground_capacitance(const ScenarioParameters& p) {
  const double series_den = p.c_hn + p.c_ng;
  const double series = series_den > 0.0 ? p.c_hn * p.c_ng / series_den : 0.0;
  return p.c_hg_direct + series + p.c_blanket;
}

Complex body_potential(const ScenarioParameters& p) {
  const double c_hg = body_ground_capacitance(p);
  const double den = p.c_eh + c_hg;
  if (den == 0.0) {
    throw SimError(ErrorCode::DegenerateDivider,
                   "c_eh + total body-to-ground capacitance is zero");
  }
  return p.v_e * (p.c_eh / den);
}

Complex shunt_admittance_yx(const ScenarioParameters& p) {
  return shunt_admittance(p, MatchingTerm::SeriesChain);
}

Complex v_ab_exact(const ScenarioParameters& p) {
  const double w = p.omega();
  const Complex y_x = shunt_admittance_yx(p);
  const Complex y_ha = jw_cap(w, p.c_ha);
  const Complex y_hb = jw_cap(w, p.c_hb);
  const Complex y_ag = jw_cap(w, p.c_ag);
  const Complex y_bg = jw_cap(w, p.c_bg);
  const Complex den =
      y_x * (y_ag + y_bg + y_ha + y_hb) + (y_ag + y_ha) * (y_bg + y_hb);
  if (std::abs(den) < 1e-300) {
    throw SimError(ErrorCode::DegenerateDenominator, "terminal-network denominator underflows");
  }
  return body_potential(p) * (y_ha * y_bg - y_hb * y_ag) / den;
}

Complex v_ab_simplified(const ScenarioParameters& p, MatchingTerm form) {
  require_symmetric_terminals(p);
  const double w = p.omega();
  const Complex den = 2.0 * shunt_admittance(p, form) + jw_cap(w, p.c_ag);
  if (std::abs(den) < 1e-300) {
    throw SimError(ErrorCode::DegenerateDenominator, "simplified denominator underflows");
  }
  return body_potential(p) * Complex{0.0, w * (p.c_ha - p.c_hb)} / den;
}

Complex z_total(const ScenarioParameters& p, MatchingTerm form) {
  require_symmetric_terminals(p);
  if (p.c_m == 0.0) return Complex{};
  const double w = p.omega();
  const Complex jwcm = jw_cap(w, p.c_m);
  const Complex output_divider = jwcm * p.z_l / (2.0 + jwcm * p.z_l);
  const Complex den = 2.0 * shunt_admittance(p, form) + jw_cap(w, p.c_ag);
  if (std::abs(den) < 1e-300) {
    throw SimError(ErrorCode::DegenerateDenominator, "simplified denominator underflows");
  }
  return output_divider / den;
}

Complex v_cd(const ScenarioParameters& p, MatchingTerm form) {
  return body_potential(p) * z_total(p, form) *
         Complex{0.0, p.omega() * (p.c_ha - p.c_hb)};
}

CouplingNetwork build_full_network(const ScenarioParameters& p) {
  p.validate();
  const double w = p.omega();

  const bool has_h = p.c_eh > 0.0 || p.c_hg_direct > 0.0 || p.c_hn > 0.0 ||
                     p.c_blanket > 0.0 || p.c_ha > 0.0 || p.c_hb > 0.0;
  const bool has_n = p.c_hn > 0.0 || p.c_ng > 0.0;
  const bool has_chain = p.c_m > 0.0;

  CouplingNetwork fn;
  int next = 0;
  if (has_h) fn.h = next++;
  if (has_n) fn.n = next++;
  fn.a = next++;
  fn.b = next++;
  if (has_chain) {
    fn.c = next++;
    fn.d = next++;
  }
  fn.source_e = next++;
  fn.net.node_count = next;
  fn.net.add_source(fn.source_e, p.v_e);

  auto cap_branch = [&](int i, int j, double c) {
    if (c > 0.0) fn.net.add_branch(i, j, jw_cap(w, c));
  };
  const int g = NodalNetwork::kGround;
  if (has_h) {
    cap_branch(fn.source_e, fn.h, p.c_eh);
    cap_branch(fn.h, g, p.c_hg_direct);
    cap_branch(fn.h, g, p.c_blanket);
    if (has_n) cap_branch(fn.h, fn.n, p.c_hn);
    cap_branch(fn.h, fn.a, p.c_ha);
    cap_branch(fn.h, fn.b, p.c_hb);
  }
  if (has_n) cap_branch(fn.n, g, p.c_ng);
  cap_branch(fn.a, g, p.c_ag);
  cap_branch(fn.b, g, p.c_bg);
  fn.net.add_branch(fn.a, fn.b, coil_admittance(p));
  cap_branch(fn.a, fn.b, p.c_t);
  if (has_chain) {
    cap_branch(fn.a, fn.c, p.c_m);
    fn.net.add_branch(fn.c, fn.d, 1.0 / p.z_l);
    cap_branch(fn.d, fn.b, p.c_m);
  }
  return fn;
}

Complex oracle_v_cd(const ScenarioParameters& p) {
  const CouplingNetwork fn = build_full_network(p);
  if (fn.c == CouplingNetwork::kAbsent) return Complex{};
  const SolveResult sol = solve_network(fn.net);
  return sol.potentials[static_cast<size_t>(fn.c)] - sol.potentials[static_cast<size_t>(fn.d)];
}

CouplingReport evaluate(const ScenarioParameters& p, MatchingTerm form) {
  p.validate();
  CouplingReport rep;
  rep.c_hg_total = body_ground_capacitance(p);
  rep.v_h = body_potential(p);
  rep.y_x = shunt_admittance_yx(p);
  rep.v_ab_exact = v_ab_exact(p);
  rep.v_ab_simplified = v_ab_simplified(p, form);
  rep.z_total = z_total(p, form);
  rep.v_cd = v_cd(p, form);
  rep.delta_c = p.c_ha - p.c_hb;
  rep.v_cd_oracle = oracle_v_cd(p);
  return rep;
}

namespace {

// Baselines at the solver noise floor count as zero: a ratio or normalized
// derivative against them would be meaningless.
bool null_baseline(double base, const ScenarioParameters& p) {
  return base <= 1e-16 * std::abs(p.v_e);
}

double ratio_from(const ScenarioParameters& p, double extra,
                  const std::function<double(const ScenarioParameters&)>& measure) {
  if (extra < 0.0 || !std::isfinite(extra)) {
    throw SimError(ErrorCode::InvalidArgument, "blanket capacitance must be finite and >= 0");
  }
  const double base = measure(p);
  if (null_baseline(base, p)) {
    throw SimError(ErrorCode::ZeroBaseline, "baseline |v_cd| is zero (delta_c == 0?)");
  }
  ScenarioParameters with = p;
  with.c_blanket += extra;
  return 1.0 - measure(with) / base;
}

}  // namespace

double suppression_ratio(const ScenarioParameters& p, double c_blanket_extra) {
  return ratio_from(p, c_blanket_extra,
                    [](const ScenarioParameters& q) { return std::abs(v_cd(q)); });
}

double suppression_ratio_oracle(const ScenarioParameters& p, double c_blanket_extra) {
  return ratio_from(p, c_blanket_extra,
                    [](const ScenarioParameters& q) { return std::abs(oracle_v_cd(q)); });
}

std::vector<Sensitivity> sensitivity(const ScenarioParameters& p, double rel_step) {
  if (!(rel_step >= 1e-8 && rel_step <= 1e-2)) {
    throw SimError(ErrorCode::InvalidArgument, "rel_step must lie in [1e-8, 1e-2]");
  }
  p.validate();
  const double base = std::abs(oracle_v_cd(p));
  if (null_baseline(base, p)) {
    throw SimError(ErrorCode::ZeroBaseline, "baseline |v_cd| is zero");
  }

  struct Param {
    const char* name;
    std::function<double(const ScenarioParameters&)> get;
    std::function<void(ScenarioParameters&, double)> set;
  };
  const std::vector<Param> params = {
      {"source.f_hz", [](const ScenarioParameters& q) { return q.frequency; },
       [](ScenarioParameters& q, double v) { q.frequency = v; }},
      {"source.v_e_abs", [](const ScenarioParameters& q) { return std::abs(q.v_e); },
       [](ScenarioParameters& q, double v) {
         const double m = std::abs(q.v_e);
         q.v_e = m > 0.0 ? q.v_e * (v / m) : Complex{v, 0.0};
       }},
      {"body.c_eh", [](const ScenarioParameters& q) { return q.c_eh; },
       [](ScenarioParameters& q, double v) { q.c_eh = v; }},
      {"body.c_hg", [](const ScenarioParameters& q) { return q.c_hg_direct; },
       [](ScenarioParameters& q, double v) { q.c_hg_direct = v; }},
      {"body.c_hn", [](const ScenarioParameters& q) { return q.c_hn; },
       [](ScenarioParameters& q, double v) { q.c_hn = v; }},
      {"body.c_ng", [](const ScenarioParameters& q) { return q.c_ng; },
       [](ScenarioParameters& q, double v) { q.c_ng = v; }},
      {"terminals.c_ha", [](const ScenarioParameters& q) { return q.c_ha; },
       [](ScenarioParameters& q, double v) { q.c_ha = v; }},
      {"terminals.c_hb", [](const ScenarioParameters& q) { return q.c_hb; },
       [](ScenarioParameters& q, double v) { q.c_hb = v; }},
      {"terminals.c_ag", [](const ScenarioParameters& q) { return q.c_ag; },
       [](ScenarioParameters& q, double v) { q.c_ag = v; }},
      {"terminals.c_bg", [](const ScenarioParameters& q) { return q.c_bg; },
       [](ScenarioParameters& q, double v) { q.c_bg = v; }},
      {"coil.r_coil_ohm", [](const ScenarioParameters& q) { return q.r_coil; },
       [](ScenarioParameters& q, double v) { q.r_coil = v; }},
      {"coil.l_coil", [](const ScenarioParameters& q) { return q.l_coil; },
       [](ScenarioParameters& q, double v) { q.l_coil = v; }},
      {"coil.c_t", [](const ScenarioParameters& q) { return q.c_t; },
       [](ScenarioParameters& q, double v) { q.c_t = v; }},
      {"matching.c_m", [](const ScenarioParameters& q) { return q.c_m; },
       [](ScenarioParameters& q, double v) { q.c_m = v; }},
      {"suppression.c_blanket", [](const ScenarioParameters& q) { return q.c_blanket; },
       [](ScenarioParameters& q, double v) { q.c_blanket = v; }},
  };

  std::vector<Sensitivity> rows;
  rows.reserve(params.size());
  for (const Param& prm : params) {
    const double x0 = prm.get(p);
    double value = 0.0;
    if (x0 != 0.0) {
      const double h = rel_step * std::fabs(x0);
      ScenarioParameters hi = p, lo = p;
      prm.set(hi, x0 + h);
      prm.set(lo, x0 - h);
      const double f_hi = std::abs(oracle_v_cd(hi));
      const double f_lo = std::abs(oracle_v_cd(lo));
      value = (f_hi - f_lo) / (2.0 * h) * x0 / base;
    }
    rows.push_back({prm.name, value});
  }
  return rows;
}

}  // namespace ulfemi
