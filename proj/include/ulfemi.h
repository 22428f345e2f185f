/* ulfemi: lumped-parameter model of body-coupled electric-field
 * interference in unshielded ultra-low-field MRI receive chains.
 *
 * C API of the shared library. All functions return ULFEMI_OK on success;
 * on failure, ulfemi_last_error() describes what went wrong in the calling
 * thread. Strings returned through char** out-parameters are heap-allocated
 * and must be released with ulfemi_string_free().
 */
#ifndef ULFEMI_H
#define ULFEMI_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define ULFEMI_API __declspec(dllexport)
#else
#define ULFEMI_API __attribute__((visibility("default")))
#endif

typedef enum ulfemi_status {
  ULFEMI_OK = 0,
  ULFEMI_ERR_PARSE = 1,    /* scenario text rejected; see ulfemi_parse_error */
  ULFEMI_ERR_NUMERIC = 2,  /* singular/degenerate model evaluation */
  ULFEMI_ERR_ARGUMENT = 3, /* bad argument or parameter path */
  ULFEMI_ERR_INTERNAL = 4
} ulfemi_status;

typedef enum ulfemi_parse_error_kind {
  ULFEMI_PARSE_UNKNOWN_SECTION = 0,
  ULFEMI_PARSE_UNKNOWN_KEY = 1,
  ULFEMI_PARSE_DUPLICATE_KEY = 2,
  ULFEMI_PARSE_MISSING_KEY = 3,
  ULFEMI_PARSE_BAD_NUMBER = 4,
  ULFEMI_PARSE_MISSING_SECTION = 5,
  ULFEMI_PARSE_NEGATIVE_VALUE = 6
} ulfemi_parse_error_kind;

typedef struct ulfemi_parse_error {
  int line;   /* 1-based */
  int column; /* 1-based */
  int kind;   /* ulfemi_parse_error_kind */
  char message[240];
} ulfemi_parse_error;

/* Opaque parsed scenario. */
typedef struct ulfemi_scenario ulfemi_scenario;

/* Closed-form quantities plus the full-network reference solution. */
typedef struct ulfemi_report {
  double c_hg_total; /* total body-to-ground capacitance, F */
  double delta_c;    /* c_ha - c_hb, F */
  double v_h_re, v_h_im;
  double y_x_re, y_x_im;
  double v_ab_exact_re, v_ab_exact_im;
  double v_ab_simplified_re, v_ab_simplified_im;
  double z_total_re, z_total_im;
  double v_cd_re, v_cd_im;
  double v_cd_oracle_re, v_cd_oracle_im;
} ulfemi_report;

typedef struct ulfemi_reduce_result {
  int q_count;
  double c_total; /* sum of the distributed capacitances, F */
  double c_ha, c_hb; /* position-weighted reduction, F */
  int has_cluster;   /* cluster closed form populated */
  double cluster_c_ha, cluster_c_hb;
  double i_a_distributed_re, i_a_distributed_im;
  double i_b_distributed_re, i_b_distributed_im;
  double i_a_lumped_re, i_a_lumped_im;
  double i_b_lumped_re, i_b_lumped_im;
  double rel_error;  /* max per-port relative mismatch, distributed vs lumped */
  int weak_coupling; /* 1 when the weak-coupling regime check passes */
} ulfemi_reduce_result;

ULFEMI_API const char* ulfemi_version(void);

/* Message describing the calling thread's most recent failure. */
ULFEMI_API const char* ulfemi_last_error(void);

ULFEMI_API const char* ulfemi_parse_error_kind_name(int kind);

/* -------- scenario lifecycle -------- */

ULFEMI_API ulfemi_status ulfemi_scenario_parse(const char* text, ulfemi_scenario** out,
                                               ulfemi_parse_error* err /* nullable */);
ULFEMI_API void ulfemi_scenario_free(ulfemi_scenario* scenario);

/* Canonical scenario text (schema section order, sorted keys, 17 digits). */
ULFEMI_API ulfemi_status ulfemi_scenario_serialize(const ulfemi_scenario* scenario,
                                                   char** out_text);
ULFEMI_API void ulfemi_string_free(char* text);

/* Scalar access via "section.key" paths, e.g. "body.c_eh". */
ULFEMI_API ulfemi_status ulfemi_scenario_get(const ulfemi_scenario* scenario,
                                             const char* dotted_key, double* out_value);
ULFEMI_API ulfemi_status ulfemi_scenario_set(ulfemi_scenario* scenario, const char* dotted_key,
                                             double value);

/* 1 when the scenario carries a [geometry] section, 0 otherwise, -1 on null. */
ULFEMI_API int ulfemi_scenario_has_geometry(const ulfemi_scenario* scenario);

/* -------- model evaluation -------- */

/* alt_matching_form != 0 switches the simplified forms' matching-branch
 * denominator from (2 + jwCmZL) to (1 + jwCmZL); comparison aid only. */
ULFEMI_API ulfemi_status ulfemi_evaluate(const ulfemi_scenario* scenario, int alt_matching_form,
                                         ulfemi_report* out);

/* Fractional |v_cd| reduction from adding c_blanket on top of the scenario's
 * bypass; closed-form and full-network routes. */
ULFEMI_API ulfemi_status ulfemi_suppression_ratio(const ulfemi_scenario* scenario,
                                                  double c_blanket, double* out_model_ratio,
                                                  double* out_oracle_ratio);

/* -------- sweep workflows (CSV text out) -------- */

ULFEMI_API ulfemi_status ulfemi_sweep_csv(const ulfemi_scenario* scenario, const char* dotted_key,
                                          double from, double to, int steps, char** out_csv);
ULFEMI_API ulfemi_status ulfemi_geometry_sweep_csv(const ulfemi_scenario* scenario, double from,
                                                   double to, int steps, int slices,
                                                   char** out_csv);
ULFEMI_API ulfemi_status ulfemi_sensitivity_csv(const ulfemi_scenario* scenario, double rel_step,
                                                char** out_csv);
ULFEMI_API ulfemi_status ulfemi_suppress_sweep_csv(const ulfemi_scenario* scenario, double from,
                                                   double to, int steps, char** out_csv);

/* -------- geometry -------- */

/* Band capacitances at one head-apex displacement (requires [geometry]). */
ULFEMI_API ulfemi_status ulfemi_head_capacitances(const ulfemi_scenario* scenario,
                                                  double displacement, int slices,
                                                  double* out_c_ha, double* out_c_hb);

/* -------- distributed-coil reduction -------- */

/* Uniform ladder: q_count elements of cap_per_element each. Coil impedance,
 * frequency, body potential, and the terminal load (jw * c_ag) come from the
 * scenario. */
ULFEMI_API ulfemi_status ulfemi_reduce_uniform(const ulfemi_scenario* scenario, int q_count,
                                               double cap_per_element, ulfemi_reduce_result* out);

/* Two-cluster ladder: front/rear halves hold c_front_total / c_rear_total
 * spread uniformly; also evaluates the 0.75/0.25 closed form. q_count must
 * be even. */
ULFEMI_API ulfemi_status ulfemi_reduce_cluster(const ulfemi_scenario* scenario, int q_count,
                                               double c_front_total, double c_rear_total,
                                               ulfemi_reduce_result* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ULFEMI_H */
