/*
 * qpow: C interface to the quantum proof-of-work laboratory.
 *
 * Every fallible function returns a qpow_status. On failure a human-readable
 * message is available from qpow_last_error() on the same thread until the
 * next call into the library. Handles are opaque and owned by the caller;
 * release each with its matching *_free function (NULL is accepted).
 *
 * Monetary inputs are USD, operating costs are USD per 365-day year, times
 * are seconds unless the name says years.
 */
#ifndef QPOW_QPOW_H
#define QPOW_QPOW_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(QPOW_BUILDING)
#    define QPOW_API __declspec(dllexport)
#  else
#    define QPOW_API __declspec(dllimport)
#  endif
#else
#  define QPOW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qpow_status {
    QPOW_OK = 0,
    QPOW_E_INVALID_ARGUMENT = 1,
    QPOW_E_RANGE = 2,
    QPOW_E_DOMAIN = 3,
    QPOW_E_DEGENERATE_RATIO = 4,
    QPOW_E_SINGULAR_FIT = 5,
    QPOW_E_NO_SOLUTION = 6,
    QPOW_E_CAPACITY = 7,
    QPOW_E_STALL = 8,
    QPOW_E_PARSE = 9,
    QPOW_E_IO = 10,
    QPOW_E_BUFFER_TOO_SMALL = 11,
    QPOW_E_INTERNAL = 12
} qpow_status;

QPOW_API const char* qpow_last_error(void);
QPOW_API const char* qpow_status_name(qpow_status status);
QPOW_API const char* qpow_version(void);
/* Identifier of the seeded generator behind every stochastic result. */
QPOW_API const char* qpow_rng_algorithm(void);

/* ---- economics ---------------------------------------------------------- */

typedef enum qpow_miner_kind { QPOW_CLASSICAL = 0, QPOW_QUANTUM = 1 } qpow_miner_kind;

typedef struct qpow_chain {
    double block_time_s;
    double hash_size;
    double difficulty;
    double block_reward;
    uint32_t retarget_interval;
} qpow_chain;

typedef struct qpow_miner {
    qpow_miner_kind kind;
    double rate; /* H/s; Grover-equivalent rate for quantum miners */
    double opex_per_year;
    double setup_cost;
} qpow_miner;

typedef struct qpow_profit_report {
    double block_probability;
    double income_usd;
    double profit_usd;
    double timespan_s;
} qpow_profit_report;

typedef struct qpow_scenario_row {
    double quantum_rate;
    double usd_per_coin;
    double break_even_opex;
} qpow_scenario_row;

QPOW_API double qpow_seconds_per_year(void);

/* Named presets: "btc-2025", "monero", "etc". Either output may be NULL. */
QPOW_API qpow_status qpow_preset(const char* name, qpow_chain* chain, double* network_hash_rate);

QPOW_API qpow_status qpow_block_probability(const qpow_miner* miner, const qpow_chain* chain, double* out);
QPOW_API qpow_status qpow_income(const qpow_miner* miner, const qpow_chain* chain, double usd_per_coin,
                                 double timespan_s, double* out);
QPOW_API qpow_status qpow_profit(const qpow_miner* miner, const qpow_chain* chain, double usd_per_coin,
                                 double timespan_s, double* out);
QPOW_API qpow_status qpow_profit_report_compute(const qpow_miner* miner, const qpow_chain* chain,
                                                double usd_per_coin, double timespan_s,
                                                qpow_profit_report* out);
QPOW_API qpow_status qpow_profit_ratio(const qpow_miner* classical, const qpow_miner* quantum,
                                       const qpow_chain* chain, double usd_per_coin, double timespan_s,
                                       double* out);
QPOW_API qpow_status qpow_break_even_opex(const qpow_miner* miner, const qpow_chain* chain,
                                          double usd_per_coin, double timespan_s, double* out);

/* Default scenario inputs for the break-even table. Pointers stay valid for
 * the life of the process. */
QPOW_API void qpow_default_scenarios(const double** quantum_rates, size_t* n_rates,
                                     const double** usd_per_coin, size_t* n_usd);

/* Writes n_rates * n_usd rows. *n_rows always receives the required count;
 * QPOW_E_BUFFER_TOO_SMALL when capacity is short. */
QPOW_API qpow_status qpow_break_even_table(const qpow_chain* chain, const double* quantum_rates,
                                           size_t n_rates, const double* usd_per_coin, size_t n_usd,
                                           qpow_scenario_row* rows, size_t capacity, size_t* n_rows);

/* ---- forecasting -------------------------------------------------------- */

typedef struct qpow_growth {
    double initial_rate;
    double doubling_years;
    int quadratic_equivalent; /* nonzero: initial_rate is a clock rate */
    double window_s;
} qpow_growth;

typedef struct qpow_crossover_summary {
    double years_until_crossover;
    int already_crossed;
    int has_scan_crossover;
    double scan_crossover_years;
    size_t sample_count;
} qpow_crossover_summary;

typedef struct qpow_crossover qpow_crossover;
typedef struct qpow_polyfit qpow_polyfit;

QPOW_API double qpow_default_doubling_years(void);
QPOW_API qpow_status qpow_equivalent_hash_rate(double clock_rate, double window_s, double* out);

/* Same capacity protocol as qpow_break_even_table. */
QPOW_API qpow_status qpow_extrapolate_series(const qpow_growth* model, double horizon_years, double step_years,
                                             double* years, double* rates, size_t capacity, size_t* count);

QPOW_API qpow_status qpow_crossover_compute(const qpow_growth* network, const qpow_growth* quantum,
                                            double horizon_years, double step_years, qpow_crossover** out);
QPOW_API qpow_status qpow_crossover_get_summary(const qpow_crossover* c, qpow_crossover_summary* out);
QPOW_API qpow_status qpow_crossover_sample(const qpow_crossover* c, size_t index, double* year,
                                           double* network_rate, double* quantum_rate);
QPOW_API void qpow_crossover_free(qpow_crossover* c);

QPOW_API qpow_status qpow_polyfit_fit(const double* xs, const double* ys, size_t n, size_t degree,
                                      qpow_polyfit** out);
QPOW_API qpow_status qpow_polyfit_from_coefficients(const double* coefficients, size_t n, qpow_polyfit** out);
QPOW_API size_t qpow_polyfit_degree(const qpow_polyfit* fit);
QPOW_API double qpow_polyfit_residual_rms(const qpow_polyfit* fit);
/* Ascending powers; writes degree + 1 values. */
QPOW_API qpow_status qpow_polyfit_coefficients(const qpow_polyfit* fit, double* out, size_t capacity);
QPOW_API qpow_status qpow_polyfit_evaluate(const qpow_polyfit* fit, double x, double* out);
/* As evaluate, but a non-positive value is QPOW_E_DOMAIN. */
QPOW_API qpow_status qpow_extrapolate_difficulty(const qpow_polyfit* fit, double x, double* out);
QPOW_API void qpow_polyfit_free(qpow_polyfit* fit);

/* ---- series CSV --------------------------------------------------------- */

typedef struct qpow_series qpow_series;

QPOW_API qpow_status qpow_series_load(const char* path, qpow_series** out);
QPOW_API qpow_status qpow_series_parse(const char* text, size_t length, qpow_series** out);
QPOW_API size_t qpow_series_size(const qpow_series* s);
QPOW_API qpow_status qpow_series_get(const qpow_series* s, size_t index, double* x, double* y);
QPOW_API void qpow_series_free(qpow_series* s);
/* Writes header then x,y rows with shortest round-trip formatting. */
QPOW_API qpow_status qpow_series_write(const char* path, const char* header, const double* xs,
                                       const double* ys, size_t n);

/* ---- chain simulation --------------------------------------------------- */

typedef struct qpow_sim_config qpow_sim_config;
typedef struct qpow_sim qpow_sim;

typedef struct qpow_epoch_stats {
    uint32_t epoch;
    double difficulty_start;
    double difficulty_end;
    double elapsed_s;
    double mean_block_time_s;
    double classical_reward_share;
    double quantum_rate_share;
    uint32_t miner_count;
    uint32_t quantum_miners;
    int has_profit_ratio;
    double profit_ratio;
} qpow_epoch_stats;

QPOW_API qpow_status qpow_miner_rate(const qpow_miner* miner, const qpow_chain* chain, double* out);
/* clamp <= 0 disables clamping. */
QPOW_API qpow_status qpow_retarget(double difficulty, double elapsed_s, const qpow_chain* chain, double clamp,
                                   double* out);
QPOW_API qpow_status qpow_majority_check(const qpow_miner* miners, size_t n, const qpow_chain* chain,
                                         double* quantum_share, int* majority);
QPOW_API qpow_status qpow_equilibrium_difficulty(const qpow_miner* miners, size_t n, const qpow_chain* chain,
                                                 double* out);

QPOW_API qpow_status qpow_sim_config_create(const qpow_chain* chain, double usd_per_coin, qpow_sim_config** out);
QPOW_API qpow_status qpow_sim_config_load(const char* path, qpow_sim_config** out);
QPOW_API qpow_status qpow_sim_config_parse(const char* text, size_t length, qpow_sim_config** out);
QPOW_API qpow_status qpow_sim_config_add_miner(qpow_sim_config* cfg, const qpow_miner* miner);
QPOW_API qpow_status qpow_sim_config_set_run(qpow_sim_config* cfg, int stochastic, uint64_t seed, uint32_t epochs);
QPOW_API qpow_status qpow_sim_config_set_seed(qpow_sim_config* cfg, uint64_t seed);
QPOW_API qpow_status qpow_sim_config_set_epochs(qpow_sim_config* cfg, uint32_t epochs);
QPOW_API qpow_status qpow_sim_config_set_adoption(qpow_sim_config* cfg, double threshold, uint32_t miners_per_epoch,
                                                  const qpow_miner* quantum_template);
QPOW_API qpow_status qpow_sim_config_set_clamp(qpow_sim_config* cfg, double clamp);
QPOW_API uint64_t qpow_sim_config_seed(const qpow_sim_config* cfg);
QPOW_API uint32_t qpow_sim_config_epochs(const qpow_sim_config* cfg);
/* Canonical key = value text (NUL-terminated). *length receives the size
 * without the terminator; QPOW_E_BUFFER_TOO_SMALL if it does not fit. */
QPOW_API qpow_status qpow_sim_config_to_text(const qpow_sim_config* cfg, char* buffer, size_t capacity,
                                             size_t* length);
QPOW_API void qpow_sim_config_free(qpow_sim_config* cfg);

QPOW_API qpow_status qpow_sim_create(const qpow_sim_config* cfg, qpow_sim** out);
/* Runs one retarget epoch. Returns QPOW_E_DOMAIN once the configured number
 * of epochs has been run. */
QPOW_API qpow_status qpow_sim_step(qpow_sim* sim, qpow_epoch_stats* out);
/* Per-miner blocks of the last completed epoch. */
QPOW_API qpow_status qpow_sim_miner_blocks(const qpow_sim* sim, double* out, size_t capacity, size_t* count);
QPOW_API qpow_status qpow_sim_majority(const qpow_sim* sim, double* quantum_share, int* majority);
QPOW_API double qpow_sim_difficulty(const qpow_sim* sim);
QPOW_API void qpow_sim_free(qpow_sim* sim);

/* ---- Grover toy --------------------------------------------------------- */

typedef struct qpow_pow_instance qpow_pow_instance;

typedef struct qpow_pow_info {
    unsigned n_bits;
    uint32_t header;
    uint32_t target;
    uint64_t space_size;
    uint64_t solution_count;
} qpow_pow_info;

typedef struct qpow_grover_result {
    double success_probability;
    uint64_t queries;
    double max_norm_error;
} qpow_grover_result;

typedef struct qpow_advantage {
    double classical_expected;
    uint64_t grover_queries;
    uint64_t verify_ops;
} qpow_advantage;

QPOW_API unsigned qpow_max_toy_bits(void);
QPOW_API qpow_status qpow_toy_digest(uint32_t header, uint32_t nonce, unsigned n_bits, uint32_t* out);
QPOW_API qpow_status qpow_pow_instance_create(unsigned n_bits, uint32_t header, uint32_t target,
                                              qpow_pow_instance** out);
/* Picks the target giving exactly `solutions` qualifying nonces for this
 * header; QPOW_E_NO_SOLUTION if no target does. */
QPOW_API qpow_status qpow_pow_instance_with_solutions(unsigned n_bits, uint32_t header, uint64_t solutions,
                                                      qpow_pow_instance** out);
QPOW_API qpow_status qpow_pow_instance_info(const qpow_pow_instance* inst, qpow_pow_info* out);
QPOW_API void qpow_pow_instance_free(qpow_pow_instance* inst);

QPOW_API qpow_status qpow_optimal_iterations(uint64_t space_size, uint64_t solutions, uint64_t* out);
QPOW_API qpow_status qpow_grover_search(const qpow_pow_instance* inst, uint64_t iterations,
                                        qpow_grover_result* out);
QPOW_API qpow_status qpow_classical_search(const qpow_pow_instance* inst, uint64_t seed, uint64_t* tries,
                                           uint32_t* nonce);
QPOW_API qpow_status qpow_advantage_report(const qpow_pow_instance* inst, qpow_advantage* out);

#ifdef __cplusplus
}
#endif

#endif /* QPOW_QPOW_H */
