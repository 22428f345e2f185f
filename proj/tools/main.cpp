// ulfemi CLI: solve, sweep, geometry, reduce, sensitivity, suppress.
//
// The tool talks to the solver exclusively through the C API in ulfemi.h.
// Exit codes: 0 success, 2 scenario parse error, 3 numeric failure,
// 4 argument/usage error, 1 output I/O failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ulfemi.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitParse = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitArgs = 4;

int exit_code_for(ulfemi_status status) {
  switch (status) {
    case ULFEMI_OK: return kExitOk;
    case ULFEMI_ERR_PARSE: return kExitParse;
    case ULFEMI_ERR_NUMERIC: return kExitNumeric;
    case ULFEMI_ERR_ARGUMENT: return kExitArgs;
    default: return kExitIo;
  }
}

int report_failure(ulfemi_status status) {
  std::cerr << "error: " << ulfemi_last_error() << "\n";
  return exit_code_for(status);
}

struct ScenarioDeleter {
  void operator()(ulfemi_scenario* s) const { ulfemi_scenario_free(s); }
};
using ScenarioPtr = std::unique_ptr<ulfemi_scenario, ScenarioDeleter>;

struct StringDeleter {
  void operator()(char* s) const { ulfemi_string_free(s); }
};
using ApiString = std::unique_ptr<char, StringDeleter>;

// Engineering notation: mantissa in [1, 1000), exponent a multiple of 3,
// three decimals. 0 renders as 0.000e0.
std::string eng(double v) {
  if (v == 0.0) return "0.000e0";
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  const double a = std::fabs(v);
  int e3 = 3 * static_cast<int>(std::floor(std::log10(a) / 3.0));
  double mant = v / std::pow(10.0, e3);
  if (std::fabs(mant) >= 999.9995) {  // would render as 1000.000
    mant /= 1000.0;
    e3 += 3;
  }
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3fe%d", mant, e3);
  return buf;
}

double cabs(double re, double im) { return std::hypot(re, im); }

std::string render_report(const ulfemi_report& r) {
  std::ostringstream out;
  auto line = [&out](const char* key, const std::string& value, const char* tag = nullptr) {
    out << key << " = " << value;
    if (tag) out << "  # " << tag;
    out << "\n";
  };
  auto complex_lines = [&](const char* key, double re, double im, const char* unit,
                           const char* tag = nullptr) {
    line((std::string(key)).c_str(), eng(cabs(re, im)) + " " + unit, tag);
    line((std::string(key) + "_re").c_str(), eng(re) + " " + unit);
    line((std::string(key) + "_im").c_str(), eng(im) + " " + unit);
  };

  out << "# three-factor decomposition: source v_h, conversion delta_c, gain z_total\n";
  line("c_hg_total", eng(r.c_hg_total) + " F");
  complex_lines("v_h", r.v_h_re, r.v_h_im, "V", "source");
  line("delta_c", eng(r.delta_c) + " F", "conversion");
  complex_lines("z_total", r.z_total_re, r.z_total_im, "Ohm", "gain");
  complex_lines("y_x", r.y_x_re, r.y_x_im, "S");
  complex_lines("v_ab_exact", r.v_ab_exact_re, r.v_ab_exact_im, "V");
  complex_lines("v_ab_simplified", r.v_ab_simplified_re, r.v_ab_simplified_im, "V");
  complex_lines("v_cd", r.v_cd_re, r.v_cd_im, "V");
  complex_lines("v_cd_oracle", r.v_cd_oracle_re, r.v_cd_oracle_im, "V");

  const double exact = cabs(r.v_ab_exact_re, r.v_ab_exact_im);
  const double simp_dev =
      exact > 0.0 ? cabs(r.v_ab_simplified_re - r.v_ab_exact_re,
                         r.v_ab_simplified_im - r.v_ab_exact_im) / exact
                  : 0.0;
  line("v_ab_simplification_deviation", eng(simp_dev));
  const double oracle = cabs(r.v_cd_oracle_re, r.v_cd_oracle_im);
  const double dev = oracle > 0.0
                         ? cabs(r.v_cd_re - r.v_cd_oracle_re, r.v_cd_im - r.v_cd_oracle_im) / oracle
                         : 0.0;
  line("v_cd_rel_deviation", eng(dev));
  return out.str();
}

// Writes the fully assembled output, or nothing at all: the text goes to a
// sibling temp file first and is renamed over the target.
int emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return kExitOk;
  }
  namespace fs = std::filesystem;
  const fs::path target(out_path);
  const fs::path tmp = target.string() + ".tmp";
  std::error_code ec;
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f || !(f << text) || !f.flush()) {
      std::cerr << "error: cannot write " << tmp.string() << "\n";
      fs::remove(tmp, ec);
      return kExitIo;
    }
  }
  fs::rename(tmp, target, ec);
  if (ec) {
    std::cerr << "error: cannot move output into place: " << ec.message() << "\n";
    fs::remove(tmp, ec);
    return kExitIo;
  }
  return kExitOk;
}

int load_scenario(const std::string& path, ScenarioPtr& out) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot read scenario file '" << path << "'\n";
    return kExitArgs;
  }
  std::ostringstream text;
  text << f.rdbuf();
  ulfemi_parse_error err{};
  ulfemi_scenario* raw = nullptr;
  const ulfemi_status status = ulfemi_scenario_parse(text.str().c_str(), &raw, &err);
  if (status != ULFEMI_OK) {
    if (status == ULFEMI_ERR_PARSE) {
      std::cerr << path << ":" << err.line << ":" << err.column << ": "
                << ulfemi_parse_error_kind_name(err.kind) << ": " << err.message << "\n";
    } else {
      std::cerr << "error: " << ulfemi_last_error() << "\n";
    }
    return exit_code_for(status);
  }
  out.reset(raw);
  return kExitOk;
}

std::string render_reduce(const ulfemi_reduce_result& r) {
  std::ostringstream out;
  out << "q_count = " << r.q_count << "\n";
  out << "c_total = " << eng(r.c_total) << " F\n";
  out << "c_ha = " << eng(r.c_ha) << " F\n";
  out << "c_hb = " << eng(r.c_hb) << " F\n";
  if (r.has_cluster) {
    out << "cluster_c_ha = " << eng(r.cluster_c_ha) << " F\n";
    out << "cluster_c_hb = " << eng(r.cluster_c_hb) << " F\n";
    const double dev_a = r.c_ha > 0 ? std::fabs(r.cluster_c_ha - r.c_ha) / r.c_ha : 0.0;
    const double dev_b = r.c_hb > 0 ? std::fabs(r.cluster_c_hb - r.c_hb) / r.c_hb : 0.0;
    out << "cluster_rel_deviation = " << eng(std::max(dev_a, dev_b)) << "\n";
  }
  out << "i_a_distributed = " << eng(cabs(r.i_a_distributed_re, r.i_a_distributed_im)) << " A\n";
  out << "i_a_lumped = " << eng(cabs(r.i_a_lumped_re, r.i_a_lumped_im)) << " A\n";
  out << "i_b_distributed = " << eng(cabs(r.i_b_distributed_re, r.i_b_distributed_im)) << " A\n";
  out << "i_b_lumped = " << eng(cabs(r.i_b_lumped_re, r.i_b_lumped_im)) << " A\n";
  out << "port_current_rel_error = " << eng(r.rel_error) << "\n";
  out << "weak_coupling = " << (r.weak_coupling ? "true" : "false") << "\n";
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lumped-circuit model of body-coupled electric-field interference "
               "in unshielded ultra-low-field MRI receive chains"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  std::string scenario_path;
  std::string out_path;
  bool alt_matching = false;

  auto add_common = [&](CLI::App* cmd, bool with_output = true) {
    cmd->add_option("scenario", scenario_path, "scenario file (.scn)")->required();
    if (with_output) {
      cmd->add_option("-o,--output", out_path, "write to this file instead of stdout");
    }
  };

  CLI::App* solve = app.add_subcommand("solve", "evaluate one scenario and print the report");
  add_common(solve);
  solve->add_flag("--alt-matching-form", alt_matching,
                  "use the (1 + jwCmZL) matching-branch denominator in the simplified forms");

  CLI::App* sweep = app.add_subcommand("sweep", "vary one scalar scenario key, emit CSV");
  std::string sweep_param;
  double sweep_from = 0.0, sweep_to = 0.0;
  int sweep_steps = 0;
  add_common(sweep);
  sweep->add_option("--param", sweep_param, "key to vary, section.key form (e.g. body.c_eh)")
      ->required();
  sweep->add_option("--from", sweep_from, "first value")->required();
  sweep->add_option("--to", sweep_to, "last value")->required();
  sweep->add_option("--steps", sweep_steps, "number of points (>= 2)")->required();

  CLI::App* geometry =
      app.add_subcommand("geometry", "head-displacement sweep from the [geometry] section, CSV");
  double geo_from = 0.0, geo_to = 0.0;
  int geo_steps = 0, geo_slices = 256;
  add_common(geometry);
  geometry->add_option("--from", geo_from, "first apex displacement, m")->required();
  geometry->add_option("--to", geo_to, "last apex displacement, m")->required();
  geometry->add_option("--steps", geo_steps, "number of points (>= 2)")->required();
  geometry->add_option("--slices", geo_slices, "axial slices per band (>= 16)");

  CLI::App* reduce =
      app.add_subcommand("reduce", "reduce a distributed coil ladder to terminal capacitances");
  int reduce_elements = 0;
  double reduce_cap = 0.0, cluster_front = -1.0, cluster_rear = -1.0;
  add_common(reduce);
  reduce->add_option("--elements", reduce_elements, "number of ladder elements Q (>= 2)")
      ->required();
  reduce->add_option("--cap", reduce_cap, "uniform per-element capacitance, F");
  reduce->add_option("--cluster-front", cluster_front, "front-cluster total capacitance, F");
  reduce->add_option("--cluster-rear", cluster_rear, "rear-cluster total capacitance, F");

  CLI::App* sensitivity =
      app.add_subcommand("sensitivity", "normalized |v_cd| sensitivities, CSV");
  double rel_step = 1e-4;
  add_common(sensitivity);
  sensitivity->add_option("--rel-step", rel_step, "relative finite-difference step");

  CLI::App* suppress =
      app.add_subcommand("suppress", "capacitive-bypass suppression ratio or blanket sweep");
  double blanket = -1.0, sup_from = -1.0, sup_to = -1.0;
  int sup_steps = 0;
  add_common(suppress);
  suppress->add_option("--blanket", blanket, "single added blanket capacitance, F");
  suppress->add_option("--from", sup_from, "blanket sweep start, F");
  suppress->add_option("--to", sup_to, "blanket sweep end, F");
  suppress->add_option("--steps", sup_steps, "blanket sweep points (>= 2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // --help prints usage, exits 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitArgs;
  }

  auto check_range = [](double from, double to, int steps) {
    if (steps < 2) {
      std::cerr << "error: --steps must be >= 2\n";
      return false;
    }
    if (!(from < to)) {
      std::cerr << "error: --from must be less than --to\n";
      return false;
    }
    return true;
  };

  ScenarioPtr scenario;
  if (int rc = load_scenario(scenario_path, scenario); rc != kExitOk) return rc;

  if (solve->parsed()) {
    ulfemi_report rep{};
    const ulfemi_status status = ulfemi_evaluate(scenario.get(), alt_matching ? 1 : 0, &rep);
    if (status != ULFEMI_OK) return report_failure(status);
    return emit(render_report(rep), out_path);
  }

  if (sweep->parsed()) {
    if (!check_range(sweep_from, sweep_to, sweep_steps)) return kExitArgs;
    char* csv = nullptr;
    const ulfemi_status status =
        ulfemi_sweep_csv(scenario.get(), sweep_param.c_str(), sweep_from, sweep_to, sweep_steps,
                         &csv);
    if (status != ULFEMI_OK) return report_failure(status);
    ApiString owned(csv);
    return emit(owned.get(), out_path);
  }

  if (geometry->parsed()) {
    if (!check_range(geo_from, geo_to, geo_steps)) return kExitArgs;
    if (geo_slices < 16) {
      std::cerr << "error: --slices must be >= 16\n";
      return kExitArgs;
    }
    if (ulfemi_scenario_has_geometry(scenario.get()) != 1) {
      std::cerr << "error: scenario has no [geometry] section\n";
      return kExitArgs;
    }
    char* csv = nullptr;
    const ulfemi_status status =
        ulfemi_geometry_sweep_csv(scenario.get(), geo_from, geo_to, geo_steps, geo_slices, &csv);
    if (status != ULFEMI_OK) return report_failure(status);
    ApiString owned(csv);
    return emit(owned.get(), out_path);
  }

  if (reduce->parsed()) {
    const bool cluster_mode = cluster_front >= 0.0 || cluster_rear >= 0.0;
    const bool uniform_mode = reduce->count("--cap") > 0;
    if (cluster_mode == uniform_mode) {
      std::cerr << "error: give either --cap or both --cluster-front and --cluster-rear\n";
      return kExitArgs;
    }
    if (cluster_mode && (cluster_front < 0.0 || cluster_rear < 0.0)) {
      std::cerr << "error: cluster mode needs both --cluster-front and --cluster-rear\n";
      return kExitArgs;
    }
    ulfemi_reduce_result result{};
    const ulfemi_status status =
        cluster_mode
            ? ulfemi_reduce_cluster(scenario.get(), reduce_elements, cluster_front, cluster_rear,
                                    &result)
            : ulfemi_reduce_uniform(scenario.get(), reduce_elements, reduce_cap, &result);
    if (status != ULFEMI_OK) return report_failure(status);
    std::string text = render_reduce(result);
    if (!result.weak_coupling) {
      std::cerr << "warning: ladder is outside the weak-coupling regime; "
                   "lumped predictions may be off\n";
    }
    return emit(text, out_path);
  }

  if (sensitivity->parsed()) {
    if (!(rel_step >= 1e-8 && rel_step <= 1e-2)) {
      std::cerr << "error: --rel-step must lie in [1e-8, 1e-2]\n";
      return kExitArgs;
    }
    char* csv = nullptr;
    const ulfemi_status status = ulfemi_sensitivity_csv(scenario.get(), rel_step, &csv);
    if (status != ULFEMI_OK) return report_failure(status);
    ApiString owned(csv);
    return emit(owned.get(), out_path);
  }

  if (suppress->parsed()) {
    const bool single = suppress->count("--blanket") > 0;
    const bool sweep_mode = suppress->count("--from") > 0 || suppress->count("--to") > 0 ||
                            suppress->count("--steps") > 0;
    if (single == sweep_mode) {
      std::cerr << "error: give either --blanket or a --from/--to/--steps sweep\n";
      return kExitArgs;
    }
    if (single) {
      if (blanket < 0.0) {
        std::cerr << "error: --blanket must be >= 0\n";
        return kExitArgs;
      }
      double model = 0.0, oracle = 0.0;
      const ulfemi_status status =
          ulfemi_suppression_ratio(scenario.get(), blanket, &model, &oracle);
      if (status != ULFEMI_OK) return report_failure(status);
      std::ostringstream text;
      text << "c_blanket = " << eng(blanket) << " F\n";
      text << "suppression_model = " << eng(model) << "\n";
      text << "suppression_oracle = " << eng(oracle) << "\n";
      return emit(text.str(), out_path);
    }
    if (!check_range(sup_from, sup_to, sup_steps)) return kExitArgs;
    if (sup_from < 0.0) {
      std::cerr << "error: --from must be >= 0\n";
      return kExitArgs;
    }
    char* csv = nullptr;
    const ulfemi_status status =
        ulfemi_suppress_sweep_csv(scenario.get(), sup_from, sup_to, sup_steps, &csv);
    if (status != ULFEMI_OK) return report_failure(status);
    ApiString owned(csv);
    return emit(owned.get(), out_path);
  }

  std::cerr << "error: no subcommand\n";
  return kExitArgs;
}
