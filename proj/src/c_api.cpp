#include "qpow/qpow.h"

#include "qpow/chain_sim.hpp"
#include "qpow/config.hpp"
#include "qpow/econ.hpp"
#include "qpow/error.hpp"
#include "qpow/forecast.hpp"
#include "qpow/grover.hpp"
#include "qpow/series.hpp"

#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

struct qpow_crossover {
    qpow::CrossoverResult result;
};

struct qpow_polyfit {
    qpow::PolyFit fit;
};

struct qpow_series {
    std::vector<qpow::SeriesRecord> records;
};

struct qpow_sim_config {
    qpow::SimConfig config;
};

struct qpow_sim {
    qpow::ChainSimulation sim;
    std::vector<double> last_blocks;
};

struct qpow_pow_instance {
    qpow::PowInstance instance;
};

namespace {

#ifndef QPOW_VERSION_STRING
#define QPOW_VERSION_STRING "0.0.0"
#endif

thread_local std::string g_last_error;

qpow_status to_status(qpow::ErrorCode code) {
    using qpow::ErrorCode;
    switch (code) {
    case ErrorCode::InvalidArgument: return QPOW_E_INVALID_ARGUMENT;
    case ErrorCode::Range: return QPOW_E_RANGE;
    case ErrorCode::Domain: return QPOW_E_DOMAIN;
    case ErrorCode::DegenerateRatio: return QPOW_E_DEGENERATE_RATIO;
    case ErrorCode::SingularFit: return QPOW_E_SINGULAR_FIT;
    case ErrorCode::NoSolution: return QPOW_E_NO_SOLUTION;
    case ErrorCode::Capacity: return QPOW_E_CAPACITY;
    case ErrorCode::Stall: return QPOW_E_STALL;
    case ErrorCode::Parse: return QPOW_E_PARSE;
    case ErrorCode::Io: return QPOW_E_IO;
    }
    return QPOW_E_INTERNAL;
}

qpow_status fail(qpow_status status, std::string message) {
    g_last_error = std::move(message);
    return status;
}

// Runs `body`, translating exceptions into status codes. Nothing escapes.
template <class F>
qpow_status guarded(F&& body) noexcept {
    try {
        g_last_error.clear();
        return body();
    } catch (const qpow::Error& e) {
        return fail(to_status(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(QPOW_E_CAPACITY, "out of memory");
    } catch (const std::exception& e) {
        return fail(QPOW_E_INTERNAL, e.what());
    } catch (...) {
        return fail(QPOW_E_INTERNAL, "unknown exception");
    }
}

#define QPOW_REQUIRE_PTR(p) \
    do { \
        if (!(p)) return fail(QPOW_E_INVALID_ARGUMENT, #p " must not be NULL"); \
    } while (0)

qpow::ChainParams to_cpp(const qpow_chain& c) {
    return {c.block_time_s, c.hash_size, c.difficulty, c.block_reward, c.retarget_interval};
}

qpow_chain to_c(const qpow::ChainParams& c) {
    return {c.block_time_s, c.hash_size, c.difficulty, c.block_reward, c.retarget_interval};
}

qpow::MinerSpec to_cpp(const qpow_miner& m) {
    if (m.kind != QPOW_CLASSICAL && m.kind != QPOW_QUANTUM) qpow::raise(qpow::ErrorCode::InvalidArgument, "unknown miner kind");
    return {m.kind == QPOW_QUANTUM ? qpow::MinerKind::Quantum : qpow::MinerKind::Classical, m.rate, m.opex_per_year,
            m.setup_cost};
}

std::vector<qpow::MinerSpec> to_cpp(const qpow_miner* miners, size_t n) {
    std::vector<qpow::MinerSpec> out;
    out.reserve(n);
    for (size_t i = 0; i < n; ++i) out.push_back(to_cpp(miners[i]));
    return out;
}

qpow::GrowthModel to_cpp(const qpow_growth& g) {
    return {g.initial_rate, g.doubling_years, g.quadratic_equivalent != 0, g.window_s};
}

qpow_epoch_stats to_c(const qpow::EpochStats& s) {
    qpow_epoch_stats out{};
    out.epoch = s.epoch;
    out.difficulty_start = s.difficulty_start;
    out.difficulty_end = s.difficulty_end;
    out.elapsed_s = s.elapsed_s;
    out.mean_block_time_s = s.mean_block_time_s;
    out.classical_reward_share = s.classical_reward_share;
    out.quantum_rate_share = s.quantum_rate_share;
    out.miner_count = static_cast<uint32_t>(s.miner_blocks.size());
    out.quantum_miners = s.quantum_miners;
    out.has_profit_ratio = s.profit_ratio.has_value() ? 1 : 0;
    out.profit_ratio = s.profit_ratio.value_or(0.0);
    return out;
}

template <class T>
qpow_status copy_out(const std::vector<T>& src, T* dst, size_t capacity, size_t* count) {
    QPOW_REQUIRE_PTR(count);
    *count = src.size();
    if (capacity < src.size() || (!dst && !src.empty()))
        return fail(QPOW_E_BUFFER_TOO_SMALL, "buffer holds " + std::to_string(capacity) + " items, "
                                                 + std::to_string(src.size()) + " required");
    std::copy(src.begin(), src.end(), dst);
    return QPOW_OK;
}

} // namespace

extern "C" {

QPOW_API const char* qpow_last_error(void) { return g_last_error.c_str(); }

QPOW_API const char* qpow_status_name(qpow_status status) {
    switch (status) {
    case QPOW_OK: return "ok";
    case QPOW_E_INVALID_ARGUMENT: return "invalid argument";
    case QPOW_E_RANGE: return "range error";
    case QPOW_E_DOMAIN: return "domain error";
    case QPOW_E_DEGENERATE_RATIO: return "degenerate ratio";
    case QPOW_E_SINGULAR_FIT: return "singular fit";
    case QPOW_E_NO_SOLUTION: return "no solution";
    case QPOW_E_CAPACITY: return "capacity exceeded";
    case QPOW_E_STALL: return "stalled";
    case QPOW_E_PARSE: return "parse error";
    case QPOW_E_IO: return "I/O error";
    case QPOW_E_BUFFER_TOO_SMALL: return "buffer too small";
    case QPOW_E_INTERNAL: return "internal error";
    }
    return "unknown status";
}

QPOW_API const char* qpow_version(void) { return QPOW_VERSION_STRING; }
QPOW_API const char* qpow_rng_algorithm(void) { return qpow::kRngAlgorithm; }

// economics

QPOW_API double qpow_seconds_per_year(void) { return qpow::kSecondsPerYear; }

QPOW_API qpow_status qpow_preset(const char* name, qpow_chain* chain, double* network_hash_rate) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(name);
        const auto p = qpow::find_preset(name);
        if (!p) return fail(QPOW_E_INVALID_ARGUMENT, std::string("unknown preset '") + name + "'");
        if (chain) *chain = to_c(p->chain);
        if (network_hash_rate) *network_hash_rate = p->network_hash_rate;
        return QPOW_OK;
    });
}

QPOW_API qpow_status qpow_block_probability(const qpow_miner* miner, const qpow_chain* chain, double* out) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(miner);
        QPOW_REQUIRE_PTR(chain);
        QPOW_REQUIRE_PTR(out);
        *out = qpow::block_probability(to_cpp(*miner), to_cpp(*chain));
        return QPOW_OK;
    });
}

QPOW_API qpow_status qpow_income(const qpow_miner* miner, const qpow_chain* chain, double usd_per_coin,
                                 double timespan_s, double* out) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(miner);
        QPOW_REQUIRE_PTR(chain);
        QPOW_REQUIRE_PTR(out);
        *out = qpow::income(to_cpp(*miner), to_cpp(*chain), qpow::Market{usd_per_coin}, timespan_s);
        return QPOW_OK;
    });
}

QPOW_API qpow_status qpow_profit(const qpow_miner* miner, const qpow_chain* chain, double usd_per_coin,
                                 double timespan_s, double* out) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(miner);
        QPOW_REQUIRE_PTR(chain);
        QPOW_REQUIRE_PTR(out);
        *out = qpow::profit(to_cpp(*miner), to_cpp(*chain), qpow::Market{usd_per_coin}, timespan_s);
        return QPOW_OK;
    });
}

QPOW_API qpow_status qpow_profit_report_compute(const qpow_miner* miner, const qpow_chain* chain,
                                                double usd_per_coin, double timespan_s, qpow_profit_report* out) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(miner);
        QPOW_REQUIRE_PTR(chain);
        QPOW_REQUIRE_PTR(out);
        const auto r = qpow::profit_report(to_cpp(*miner), to_cpp(*chain), qpow::Market{usd_per_coin}, timespan_s);
        *out = {r.block_probability, r.income_usd, r.profit_usd, r.timespan_s};
        return QPOW_OK;
    });
}

QPOW_API qpow_status qpow_profit_ratio(const qpow_miner* classical, const qpow_miner* quantum,
                                       const qpow_chain* chain, double usd_per_coin, double timespan_s,
                                       double* out) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(classical);
        QPOW_REQUIRE_PTR(quantum);
        QPOW_REQUIRE_PTR(chain);
        QPOW_REQUIRE_PTR(out);
        *out = qpow::profit_ratio(to_cpp(*classical), to_cpp(*quantum), to_cpp(*chain), qpow::Market{usd_per_coin},
                                  timespan_s);
        return QPOW_OK;
    });
}

QPOW_API qpow_status qpow_break_even_opex(const qpow_miner* miner, const qpow_chain* chain, double usd_per_coin,
                                          double timespan_s, double* out) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(miner);
        QPOW_REQUIRE_PTR(chain);
        QPOW_REQUIRE_PTR(out);
        *out = qpow::break_even_opex(to_cpp(*miner), to_cpp(*chain), qpow::Market{usd_per_coin}, timespan_s);
        return QPOW_OK;
    });
}

QPOW_API void qpow_default_scenarios(const double** quantum_rates, size_t* n_rates, const double** usd_per_coin,
                                     size_t* n_usd) {
    if (quantum_rates) *quantum_rates = qpow::scenario::kQuantumRates;
    if (n_rates) *n_rates = std::size(qpow::scenario::kQuantumRates);
    if (usd_per_coin) *usd_per_coin = qpow::scenario::kUsdPerCoin;
    if (n_usd) *n_usd = std::size(qpow::scenario::kUsdPerCoin);
}

QPOW_API qpow_status qpow_break_even_table(const qpow_chain* chain, const double* quantum_rates, size_t n_rates,
                                           const double* usd_per_coin, size_t n_usd, qpow_scenario_row* rows,
                                           size_t capacity, size_t* n_rows) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(chain);
        QPOW_REQUIRE_PTR(n_rows);
        if (n_rates && !quantum_rates) return fail(QPOW_E_INVALID_ARGUMENT, "quantum_rates must not be NULL");
        if (n_usd && !usd_per_coin) return fail(QPOW_E_INVALID_ARGUMENT, "usd_per_coin must not be NULL");
        const auto table = qpow::break_even_table(to_cpp(*chain), {quantum_rates, n_rates}, {usd_per_coin, n_usd});
        std::vector<qpow_scenario_row> out;
        out.reserve(table.size());
        for (const auto& r : table) out.push_back({r.quantum_rate, r.usd_per_coin, r.break_even_opex});
        return copy_out(out, rows, capacity, n_rows);
    });
}

// forecasting

QPOW_API double qpow_default_doubling_years(void) { return qpow::kDefaultDoublingYears; }

QPOW_API qpow_status qpow_equivalent_hash_rate(double clock_rate, double window_s, double* out) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(out);
        *out = qpow::equivalent_hash_rate(clock_rate, window_s);
        return QPOW_OK;
    });
}

QPOW_API qpow_status qpow_extrapolate_series(const qpow_growth* model, double horizon_years, double step_years,
                                             double* years, double* rates, size_t capacity, size_t* count) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(model);
        QPOW_REQUIRE_PTR(count);
        const auto series = qpow::extrapolate_series(to_cpp(*model), horizon_years, step_years);
        *count = series.size();
        if (capacity < series.size() || !years || !rates)
            return fail(QPOW_E_BUFFER_TOO_SMALL, std::to_string(series.size()) + " samples required");
        for (size_t i = 0; i < series.size(); ++i) {
            years[i] = series[i].year;
            rates[i] = series[i].rate;
        }
        return QPOW_OK;
    });
}

QPOW_API qpow_status qpow_crossover_compute(const qpow_growth* network, const qpow_growth* quantum,
                                            double horizon_years, double step_years, qpow_crossover** out) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(network);
        QPOW_REQUIRE_PTR(quantum);
        QPOW_REQUIRE_PTR(out);
        *out = nullptr;
        auto r = qpow::crossover_time(to_cpp(*network), to_cpp(*quantum), {horizon_years, step_years});
        *out = new qpow_crossover{std::move(r)};
        return QPOW_OK;
    });
}

QPOW_API qpow_status qpow_crossover_get_summary(const qpow_crossover* c, qpow_crossover_summary* out) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(c);
        QPOW_REQUIRE_PTR(out);
        const auto& r = c->result;
        out->years_until_crossover = r.years_until_crossover;
        out->already_crossed = r.already_crossed ? 1 : 0;
        out->has_scan_crossover = r.scan_crossover_years ? 1 : 0;
        out->scan_crossover_years = r.scan_crossover_years.value_or(0.0);
        out->sample_count = r.series.size();
        return QPOW_OK;
    });
}

QPOW_API qpow_status qpow_crossover_sample(const qpow_crossover* c, size_t index, double* year, double* network_rate,
                                           double* quantum_rate) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(c);
        if (index >= c->result.series.size()) return fail(QPOW_E_INVALID_ARGUMENT, "sample index out of range");
        const auto& s = c->result.series[index];
        if (year) *year = s.year;
        if (network_rate) *network_rate = s.network_rate;
        if (quantum_rate) *quantum_rate = s.quantum_rate;
        return QPOW_OK;
    });
}

QPOW_API void qpow_crossover_free(qpow_crossover* c) { delete c; }

QPOW_API qpow_status qpow_polyfit_fit(const double* xs, const double* ys, size_t n, size_t degree,
                                      qpow_polyfit** out) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(out);
        *out = nullptr;
        if (n && (!xs || !ys)) return fail(QPOW_E_INVALID_ARGUMENT, "xs and ys must not be NULL");
        std::vector<qpow::Point2> pts(n);
        for (size_t i = 0; i < n; ++i) pts[i] = {xs[i], ys[i]};
        *out = new qpow_polyfit{qpow::fit_polynomial(pts, degree)};
        return QPOW_OK;
    });
}

QPOW_API qpow_status qpow_polyfit_from_coefficients(const double* coefficients, size_t n, qpow_polyfit** out) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(out);
        *out = nullptr;
        if (n && !coefficients) return fail(QPOW_E_INVALID_ARGUMENT, "coefficients must not be NULL");
        *out = new qpow_polyfit{qpow::PolyFit::from_coefficients({coefficients, coefficients + n})};
        return QPOW_OK;
    });
}

QPOW_API size_t qpow_polyfit_degree(const qpow_polyfit* fit) { return fit ? fit->fit.degree() : 0; }
QPOW_API double qpow_polyfit_residual_rms(const qpow_polyfit* fit) { return fit ? fit->fit.residual_rms() : 0.0; }

QPOW_API qpow_status qpow_polyfit_coefficients(const qpow_polyfit* fit, double* out, size_t capacity) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(fit);
        size_t n = 0;
        return copy_out(fit->fit.coefficients(), out, capacity, &n);
    });
}

QPOW_API qpow_status qpow_polyfit_evaluate(const qpow_polyfit* fit, double x, double* out) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(fit);
        QPOW_REQUIRE_PTR(out);
        *out = fit->fit.evaluate(x);
        return QPOW_OK;
    });
}

QPOW_API qpow_status qpow_extrapolate_difficulty(const qpow_polyfit* fit, double x, double* out) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(fit);
        QPOW_REQUIRE_PTR(out);
        *out = qpow::extrapolate_difficulty(fit->fit, x);
        return QPOW_OK;
    });
}

QPOW_API void qpow_polyfit_free(qpow_polyfit* fit) { delete fit; }

// series

QPOW_API qpow_status qpow_series_load(const char* path, qpow_series** out) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(path);
        QPOW_REQUIRE_PTR(out);
        *out = nullptr;
        *out = new qpow_series{qpow::load_series(path)};
        return QPOW_OK;
    });
}

QPOW_API qpow_status qpow_series_parse(const char* text, size_t length, qpow_series** out) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(out);
        *out = nullptr;
        if (length && !text) return fail(QPOW_E_INVALID_ARGUMENT, "text must not be NULL");
        *out = new qpow_series{qpow::parse_series({text, length})};
        return QPOW_OK;
    });
}

QPOW_API size_t qpow_series_size(const qpow_series* s) { return s ? s->records.size() : 0; }

QPOW_API qpow_status qpow_series_get(const qpow_series* s, size_t index, double* x, double* y) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(s);
        if (index >= s->records.size()) return fail(QPOW_E_INVALID_ARGUMENT, "series index out of range");
        if (x) *x = s->records[index].x;
        if (y) *y = s->records[index].y;
        return QPOW_OK;
    });
}

QPOW_API void qpow_series_free(qpow_series* s) { delete s; }

QPOW_API qpow_status qpow_series_write(const char* path, const char* header, const double* xs, const double* ys,
                                       size_t n) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(path);
        if (n && (!xs || !ys)) return fail(QPOW_E_INVALID_ARGUMENT, "xs and ys must not be NULL");
        std::vector<qpow::SeriesRecord> recs(n);
        for (size_t i = 0; i < n; ++i) recs[i] = {xs[i], ys[i]};
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f) return fail(QPOW_E_IO, std::string("cannot write '") + path + "'");
        qpow::write_series(f, recs, header ? header : "x,y");
        f.flush();
        if (!f) return fail(QPOW_E_IO, std::string("write failed for '") + path + "'");
        return QPOW_OK;
    });
}

// chain simulation

QPOW_API qpow_status qpow_miner_rate(const qpow_miner* miner, const qpow_chain* chain, double* out) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(miner);
        QPOW_REQUIRE_PTR(chain);
        QPOW_REQUIRE_PTR(out);
        *out = qpow::miner_rate(to_cpp(*miner), to_cpp(*chain));
        return QPOW_OK;
    });
}

QPOW_API qpow_status qpow_retarget(double difficulty, double elapsed_s, const qpow_chain* chain, double clamp,
                                   double* out) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(chain);
        QPOW_REQUIRE_PTR(out);
        *out = qpow::retarget(difficulty, elapsed_s, to_cpp(*chain),
                              clamp > 0.0 ? std::optional<double>(clamp) : std::nullopt);
        return QPOW_OK;
    });
}

QPOW_API qpow_status qpow_majority_check(const qpow_miner* miners, size_t n, const qpow_chain* chain,
                                         double* quantum_share, int* majority) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(chain);
        if (n && !miners) return fail(QPOW_E_INVALID_ARGUMENT, "miners must not be NULL");
        const auto r = qpow::majority_check(to_cpp(miners, n), to_cpp(*chain));
        if (quantum_share) *quantum_share = r.quantum_share;
        if (majority) *majority = r.majority ? 1 : 0;
        return QPOW_OK;
    });
}

QPOW_API qpow_status qpow_equilibrium_difficulty(const qpow_miner* miners, size_t n, const qpow_chain* chain,
                                                 double* out) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(chain);
        QPOW_REQUIRE_PTR(out);
        if (n && !miners) return fail(QPOW_E_INVALID_ARGUMENT, "miners must not be NULL");
        *out = qpow::equilibrium_difficulty(to_cpp(miners, n), to_cpp(*chain));
        return QPOW_OK;
    });
}

QPOW_API qpow_status qpow_sim_config_create(const qpow_chain* chain, double usd_per_coin, qpow_sim_config** out) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(chain);
        QPOW_REQUIRE_PTR(out);
        *out = nullptr;
        auto cfg = std::make_unique<qpow_sim_config>();
        cfg->config.chain = to_cpp(*chain);
        cfg->config.chain.validate();
        cfg->config.market = qpow::Market{usd_per_coin};
        cfg->config.market.validate();
        *out = cfg.release();
        return QPOW_OK;
    });
}

QPOW_API qpow_status qpow_sim_config_load(const char* path, qpow_sim_config** out) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(path);
        QPOW_REQUIRE_PTR(out);
        *out = nullptr;
        *out = new qpow_sim_config{qpow::load_sim_config(path)};
        return QPOW_OK;
    });
}

QPOW_API qpow_status qpow_sim_config_parse(const char* text, size_t length, qpow_sim_config** out) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(out);
        *out = nullptr;
        if (length && !text) return fail(QPOW_E_INVALID_ARGUMENT, "text must not be NULL");
        *out = new qpow_sim_config{qpow::parse_sim_config({text, length})};
        return QPOW_OK;
    });
}

QPOW_API qpow_status qpow_sim_config_add_miner(qpow_sim_config* cfg, const qpow_miner* miner) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(cfg);
        QPOW_REQUIRE_PTR(miner);
        auto m = to_cpp(*miner);
        m.validate();
        cfg->config.miners.push_back(m);
        return QPOW_OK;
    });
}

QPOW_API qpow_status qpow_sim_config_set_run(qpow_sim_config* cfg, int stochastic, uint64_t seed, uint32_t epochs) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(cfg);
        qpow::require(epochs >= 1, "simulation needs at least one epoch");
        cfg->config.mode = stochastic ? qpow::SimMode::Stochastic : qpow::SimMode::Deterministic;
        cfg->config.seed = seed;
        cfg->config.epochs = epochs;
        return QPOW_OK;
    });
}

QPOW_API qpow_status qpow_sim_config_set_seed(qpow_sim_config* cfg, uint64_t seed) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(cfg);
        cfg->config.seed = seed;
        return QPOW_OK;
    });
}

QPOW_API qpow_status qpow_sim_config_set_epochs(qpow_sim_config* cfg, uint32_t epochs) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(cfg);
        qpow::require(epochs >= 1, "simulation needs at least one epoch");
        cfg->config.epochs = epochs;
        return QPOW_OK;
    });
}

QPOW_API qpow_status qpow_sim_config_set_adoption(qpow_sim_config* cfg, double threshold, uint32_t miners_per_epoch,
                                                  const qpow_miner* quantum_template) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(cfg);
        if (!quantum_template) {
            cfg->config.adoption.reset();
            return QPOW_OK;
        }
        qpow::AdoptionRule rule{threshold, miners_per_epoch, to_cpp(*quantum_template)};
        auto probe = cfg->config;
        probe.adoption = rule;
        if (probe.miners.empty()) probe.miners.push_back(rule.quantum_template);
        probe.validate();
        cfg->config.adoption = rule;
        return QPOW_OK;
    });
}

QPOW_API qpow_status qpow_sim_config_set_clamp(qpow_sim_config* cfg, double clamp) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(cfg);
        if (clamp <= 0.0) {
            cfg->config.retarget_clamp.reset();
        } else {
            qpow::require(clamp >= 1.0, "retarget clamp must be >= 1");
            cfg->config.retarget_clamp = clamp;
        }
        return QPOW_OK;
    });
}

QPOW_API uint64_t qpow_sim_config_seed(const qpow_sim_config* cfg) { return cfg ? cfg->config.seed : 0; }
QPOW_API uint32_t qpow_sim_config_epochs(const qpow_sim_config* cfg) { return cfg ? cfg->config.epochs : 0; }

QPOW_API qpow_status qpow_sim_config_to_text(const qpow_sim_config* cfg, char* buffer, size_t capacity,
                                             size_t* length) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(cfg);
        QPOW_REQUIRE_PTR(length);
        const std::string text = qpow::to_config_text(cfg->config);
        *length = text.size();
        if (!buffer || capacity < text.size() + 1)
            return fail(QPOW_E_BUFFER_TOO_SMALL, std::to_string(text.size() + 1) + " bytes required");
        std::memcpy(buffer, text.c_str(), text.size() + 1);
        return QPOW_OK;
    });
}

QPOW_API void qpow_sim_config_free(qpow_sim_config* cfg) { delete cfg; }

QPOW_API qpow_status qpow_sim_create(const qpow_sim_config* cfg, qpow_sim** out) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(cfg);
        QPOW_REQUIRE_PTR(out);
        *out = nullptr;
        *out = new qpow_sim{qpow::ChainSimulation(cfg->config), {}};
        return QPOW_OK;
    });
}

QPOW_API qpow_status qpow_sim_step(qpow_sim* sim, qpow_epoch_stats* out) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(sim);
        QPOW_REQUIRE_PTR(out);
        if (sim->sim.epochs_run() >= sim->sim.config().epochs)
            return fail(QPOW_E_DOMAIN, "all configured epochs have been run");
        auto stats = sim->sim.step();
        *out = to_c(stats);
        sim->last_blocks = std::move(stats.miner_blocks);
        return QPOW_OK;
    });
}

QPOW_API qpow_status qpow_sim_miner_blocks(const qpow_sim* sim, double* out, size_t capacity, size_t* count) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(sim);
        return copy_out(sim->last_blocks, out, capacity, count);
    });
}

QPOW_API qpow_status qpow_sim_majority(const qpow_sim* sim, double* quantum_share, int* majority) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(sim);
        auto chain = sim->sim.config().chain;
        chain.difficulty = sim->sim.difficulty();
        const auto r = qpow::majority_check(sim->sim.miners(), chain);
        if (quantum_share) *quantum_share = r.quantum_share;
        if (majority) *majority = r.majority ? 1 : 0;
        return QPOW_OK;
    });
}

QPOW_API double qpow_sim_difficulty(const qpow_sim* sim) { return sim ? sim->sim.difficulty() : 0.0; }

QPOW_API void qpow_sim_free(qpow_sim* sim) { delete sim; }

// Grover toy

QPOW_API unsigned qpow_max_toy_bits(void) { return qpow::kMaxToyBits; }

QPOW_API qpow_status qpow_toy_digest(uint32_t header, uint32_t nonce, unsigned n_bits, uint32_t* out) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(out);
        *out = qpow::toy_digest(header, nonce, n_bits);
        return QPOW_OK;
    });
}

QPOW_API qpow_status qpow_pow_instance_create(unsigned n_bits, uint32_t header, uint32_t target,
                                              qpow_pow_instance** out) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(out);
        *out = nullptr;
        *out = new qpow_pow_instance{qpow::PowInstance(qpow::ToyHash{n_bits, header}, target)};
        return QPOW_OK;
    });
}

QPOW_API qpow_status qpow_pow_instance_with_solutions(unsigned n_bits, uint32_t header, uint64_t solutions,
                                                      qpow_pow_instance** out) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(out);
        *out = nullptr;
        auto inst = qpow::PowInstance::with_solution_count(qpow::ToyHash{n_bits, header}, solutions);
        if (!inst)
            return fail(QPOW_E_NO_SOLUTION, "no target gives exactly " + std::to_string(solutions)
                                                + " solutions for header " + std::to_string(header));
        *out = new qpow_pow_instance{std::move(*inst)};
        return QPOW_OK;
    });
}

QPOW_API qpow_status qpow_pow_instance_info(const qpow_pow_instance* inst, qpow_pow_info* out) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(inst);
        QPOW_REQUIRE_PTR(out);
        const auto& i = inst->instance;
        *out = {i.hash().n_bits, i.hash().header, i.target(), i.space_size(), i.solution_count()};
        return QPOW_OK;
    });
}

QPOW_API void qpow_pow_instance_free(qpow_pow_instance* inst) { delete inst; }

QPOW_API qpow_status qpow_optimal_iterations(uint64_t space_size, uint64_t solutions, uint64_t* out) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(out);
        *out = qpow::optimal_iterations(space_size, solutions);
        return QPOW_OK;
    });
}

QPOW_API qpow_status qpow_grover_search(const qpow_pow_instance* inst, uint64_t iterations, qpow_grover_result* out) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(inst);
        QPOW_REQUIRE_PTR(out);
        const auto r = qpow::grover_search(inst->instance, iterations);
        *out = {r.success_probability, r.queries, r.max_norm_error};
        return QPOW_OK;
    });
}

QPOW_API qpow_status qpow_classical_search(const qpow_pow_instance* inst, uint64_t seed, uint64_t* tries,
                                           uint32_t* nonce) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(inst);
        const auto r = qpow::classical_search(inst->instance, seed);
        if (tries) *tries = r.tries;
        if (nonce) *nonce = r.nonce;
        return QPOW_OK;
    });
}

QPOW_API qpow_status qpow_advantage_report(const qpow_pow_instance* inst, qpow_advantage* out) {
    return guarded([&] {
        QPOW_REQUIRE_PTR(inst);
        QPOW_REQUIRE_PTR(out);
        const auto r = qpow::advantage_report(inst->instance);
        *out = {r.classical_expected, r.grover_queries, r.verify_ops};
        return QPOW_OK;
    });
}

} // extern "C"
