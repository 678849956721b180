// qpow command-line front end. Talks to the engines only through the C API.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or parse error,
// 3 declared domain error (no solutions, negative extrapolation).

#include "qpow/format.hpp"
#include "qpow/qpow.h"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace {

namespace fmt = qpow::fmt;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

struct Failure {
    int exit_code;
    std::string message;
};

int exit_code_for(qpow_status s) {
    switch (s) {
    case QPOW_OK: return kExitOk;
    case QPOW_E_INVALID_ARGUMENT:
    case QPOW_E_PARSE:
    case QPOW_E_CAPACITY:
    case QPOW_E_SINGULAR_FIT:
    case QPOW_E_IO: return kExitUsage;
    case QPOW_E_NO_SOLUTION:
    case QPOW_E_DOMAIN: return kExitDomain;
    default: return kExitRuntime;
    }
}

void check(qpow_status s) {
    if (s != QPOW_OK) throw Failure{exit_code_for(s), qpow_last_error()};
}

[[noreturn]] void usage(const std::string& message) {
    throw Failure{kExitUsage, message};
}

template <class T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const { Free(p); }
};
using CrossoverPtr = std::unique_ptr<qpow_crossover, Deleter<qpow_crossover, qpow_crossover_free>>;
using PolyfitPtr = std::unique_ptr<qpow_polyfit, Deleter<qpow_polyfit, qpow_polyfit_free>>;
using SeriesPtr = std::unique_ptr<qpow_series, Deleter<qpow_series, qpow_series_free>>;
using ConfigPtr = std::unique_ptr<qpow_sim_config, Deleter<qpow_sim_config, qpow_sim_config_free>>;
using SimPtr = std::unique_ptr<qpow_sim, Deleter<qpow_sim, qpow_sim_free>>;
using InstancePtr = std::unique_ptr<qpow_pow_instance, Deleter<qpow_pow_instance, qpow_pow_instance_free>>;

struct Globals {
    std::optional<std::uint64_t> seed;
    std::string config_path;
    std::string out_path;
    std::string preset;
};

// Resolved parameters of one run, written next to --out files.
class Manifest {
public:
    void set(std::string key, std::string value) { entries_.emplace_back(std::move(key), std::move(value)); }
    void set(std::string key, double value) { set(std::move(key), fmt::shortest(value)); }

    void write(const std::string& path, const std::string& subcommand, const std::string& config_text) const {
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f) throw Failure{kExitRuntime, "cannot write manifest '" + path + "'"};
        f << "# qpow run manifest\n"
          << "tool.name = qpow\n"
          << "tool.version = " << qpow_version() << '\n'
          << "tool.rng = " << qpow_rng_algorithm() << '\n'
          << "run.subcommand = " << subcommand << '\n';
        for (const auto& [k, v] : entries_) f << "run." << k << " = " << v << '\n';
        if (!config_text.empty()) {
            std::istringstream lines(config_text);
            for (std::string line; std::getline(lines, line);) f << "config." << line << '\n';
        }
    }

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

// Writes to --out when given (plus a manifest), otherwise standard output.
class Output {
public:
    explicit Output(const std::string& path) : path_(path) {}

    std::ostream& stream() { return path_.empty() ? static_cast<std::ostream&>(std::cout) : buffer_; }

    void finish(const Manifest& manifest, const std::string& subcommand, const std::string& config_text = {}) {
        if (path_.empty()) {
            std::cout.flush();
            return;
        }
        std::ofstream f(path_, std::ios::binary | std::ios::trunc);
        if (!f) throw Failure{kExitRuntime, "cannot write '" + path_ + "'"};
        f << buffer_.str();
        f.flush();
        if (!f) throw Failure{kExitRuntime, "write failed for '" + path_ + "'"};
        manifest.write(path_ + ".manifest", subcommand, config_text);
    }

private:
    std::string path_;
    std::ostringstream buffer_;
};

struct ChainFlags {
    std::optional<double> t, eta, difficulty, reward;

    void add(CLI::App* app) {
        app->add_option("--t", t, "Block time in seconds");
        app->add_option("--eta", eta, "Hash-size constant (expected hashes per unit difficulty)");
        app->add_option("--difficulty", difficulty, "Network difficulty D");
        app->add_option("--reward", reward, "Block reward in coins");
    }

    qpow_chain resolve(const Globals& g, Manifest& m) const {
        qpow_chain chain{};
        const std::string preset = g.preset.empty() ? "btc-2025" : g.preset;
        check(qpow_preset(preset.c_str(), &chain, nullptr));
        if (t) chain.block_time_s = *t;
        if (eta) chain.hash_size = *eta;
        if (difficulty) chain.difficulty = *difficulty;
        if (reward) chain.block_reward = *reward;
        m.set("preset", preset);
        m.set("chain.t", chain.block_time_s);
        m.set("chain.eta", chain.hash_size);
        m.set("chain.difficulty", chain.difficulty);
        m.set("chain.reward", chain.block_reward);
        return chain;
    }
};

qpow_miner_kind parse_kind(const std::string& s) {
    return s == "quantum" ? QPOW_QUANTUM : QPOW_CLASSICAL;
}

const char* kind_name(qpow_miner_kind k) { return k == QPOW_QUANTUM ? "quantum" : "classical"; }

// ---- profit ---------------------------------------------------------------

struct ProfitCmd {
    std::string mode;
    double rate = 0.0;
    double opex = 0.0, setup = 0.0;
    std::optional<double> compare_rate;
    double compare_opex = 0.0, compare_setup = 0.0;
    double usd = 0.0;
    double days = 365.0;
    ChainFlags chain;

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("profit", "Block probability, income, profit and profit ratio G");
        c->add_option("--mode", mode, "Miner kind of the primary miner")
            ->required()
            ->check(CLI::IsMember({"classical", "quantum"}));
        c->add_option("--rate", rate, "Hash rate in H/s (H_Q for quantum miners)")->required();
        c->add_option("--opex", opex, "Operating cost, USD per year");
        c->add_option("--setup", setup, "Setup cost, USD");
        c->add_option("--compare-rate", compare_rate, "Rate of a miner of the other kind; enables G");
        c->add_option("--compare-opex", compare_opex, "Operating cost of the comparison miner, USD per year");
        c->add_option("--compare-setup", compare_setup, "Setup cost of the comparison miner, USD");
        c->add_option("--usd", usd, "Fiat rate, USD per coin")->required();
        c->add_option("--days", days, "Timespan in days")->check(CLI::PositiveNumber);
        chain.add(c);
    }

    int run(const Globals& g) {
        Manifest m;
        const qpow_chain ch = chain.resolve(g, m);
        const qpow_miner_kind kind = parse_kind(mode);
        const double hash_rate = rate;
        const double timespan = days * 86400.0;
        const qpow_miner primary{kind, hash_rate, opex, setup};
        m.set("mode", mode);
        m.set("rate", hash_rate);
        m.set("opex", opex);
        m.set("setup", setup);
        m.set("usd", usd);
        m.set("timespan_s", timespan);

        Output out(g.out_path);
        auto& os = out.stream();
        auto report = [&](const qpow_miner& miner) {
            qpow_profit_report r{};
            check(qpow_profit_report_compute(&miner, &ch, usd, timespan, &r));
            const std::string p = kind_name(miner.kind);
            os << p << ".block_probability=" << fmt::scientific(r.block_probability, 6) << '\n'
               << p << ".income_usd=" << fmt::usd(r.income_usd) << '\n'
               << p << ".profit_usd=" << fmt::usd(r.profit_usd) << '\n';
        };
        os << "timespan_s=" << fmt::shortest(timespan) << '\n';
        report(primary);
        if (compare_rate) {
            const qpow_miner other{kind == QPOW_QUANTUM ? QPOW_CLASSICAL : QPOW_QUANTUM, *compare_rate, compare_opex,
                                   compare_setup};
            m.set("compare_rate", *compare_rate);
            m.set("compare_opex", compare_opex);
            m.set("compare_setup", compare_setup);
            report(other);
            const qpow_miner& classical = kind == QPOW_CLASSICAL ? primary : other;
            const qpow_miner& quantum = kind == QPOW_QUANTUM ? primary : other;
            double ratio = 0.0;
            const auto s = qpow_profit_ratio(&classical, &quantum, &ch, usd, timespan, &ratio);
            if (s == QPOW_E_DEGENERATE_RATIO)
                os << "g_ratio=undefined\n";
            else {
                check(s);
                os << "g_ratio=" << fmt::scientific(ratio, 6) << '\n';
            }
        }
        out.finish(m, "profit");
        return kExitOk;
    }
};

// ---- table1 ---------------------------------------------------------------

struct Table1Cmd {
    std::vector<double> rates, usd;
    double days = 365.0;
    ChainFlags chain;

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("table1", "Break-even annual operating cost per quantum rate and fiat rate");
        c->add_option("--rates", rates, "Comma-separated quantum equivalent rates (H/s)")->delimiter(',');
        c->add_option("--usd", usd, "Comma-separated fiat rates (USD per coin)")->delimiter(',');
        chain.add(c);
    }

    int run(const Globals& g) {
        Manifest m;
        const qpow_chain ch = chain.resolve(g, m);
        const double* default_rates = nullptr;
        const double* default_usd = nullptr;
        size_t n_rates = 0, n_usd = 0;
        qpow_default_scenarios(&default_rates, &n_rates, &default_usd, &n_usd);
        if (rates.empty()) rates.assign(default_rates, default_rates + n_rates);
        if (usd.empty()) usd.assign(default_usd, default_usd + n_usd);

        std::vector<qpow_scenario_row> rows(rates.size() * usd.size());
        size_t n = 0;
        check(qpow_break_even_table(&ch, rates.data(), rates.size(), usd.data(), usd.size(), rows.data(), rows.size(),
                                    &n));
        std::string rate_list, usd_list;
        for (double r : rates) rate_list += (rate_list.empty() ? "" : ",") + fmt::shortest(r);
        for (double u : usd) usd_list += (usd_list.empty() ? "" : ",") + fmt::shortest(u);
        m.set("rates", rate_list);
        m.set("usd", usd_list);

        Output out(g.out_path);
        auto& os = out.stream();
        os << "h_q_hs,f_usd,break_even_opex_usd\n";
        for (size_t i = 0; i < n; ++i)
            os << fmt::plain(rows[i].quantum_rate) << ',' << fmt::usd(rows[i].usd_per_coin) << ','
               << fmt::usd(rows[i].break_even_opex) << '\n';
        out.finish(m, "table1");
        return kExitOk;
    }
};

// ---- crossover ------------------------------------------------------------

struct CrossoverCmd {
    std::optional<double> network_rate;
    double clock = 4.0e7;
    double window = 1.0;
    std::optional<double> doubling, network_doubling, quantum_doubling;
    double horizon = 40.0;
    double step = 0.1;

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("crossover", "Years until one quantum device out-hashes the network");
        c->add_option("--network-rate", network_rate, "Network hash rate today (H/s); default from --preset");
        c->add_option("--clock", clock, "Quantum device clock rate today (cycles/s)");
        c->add_option("--window", window, "Grover window in seconds");
        c->add_option("--doubling", doubling, "Shared doubling period in years");
        c->add_option("--network-doubling", network_doubling, "Network doubling period in years");
        c->add_option("--quantum-doubling", quantum_doubling, "Quantum clock doubling period in years");
        c->add_option("--horizon", horizon, "Series horizon in years");
        c->add_option("--step", step, "Series step in years");
    }

    int run(const Globals& g) {
        Manifest m;
        double net = 0.0;
        const std::string preset = g.preset.empty() ? "btc-2025" : g.preset;
        check(qpow_preset(preset.c_str(), nullptr, &net));
        if (network_rate) net = *network_rate;
        if (!(net > 0.0) || !(clock > 0.0)) usage("rates must be positive");
        const double shared = doubling.value_or(qpow_default_doubling_years());
        const qpow_growth network{net, network_doubling.value_or(shared), 0, 1.0};
        const qpow_growth quantum{clock, quantum_doubling.value_or(shared), 1, window};
        m.set("preset", preset);
        m.set("network_rate", net);
        m.set("clock", clock);
        m.set("window", window);
        m.set("network_doubling", network.doubling_years);
        m.set("quantum_doubling", quantum.doubling_years);
        m.set("horizon", horizon);
        m.set("step", step);

        qpow_crossover* raw = nullptr;
        check(qpow_crossover_compute(&network, &quantum, horizon, step, &raw));
        CrossoverPtr result(raw);
        qpow_crossover_summary summary{};
        check(qpow_crossover_get_summary(result.get(), &summary));

        Output out(g.out_path);
        auto& os = out.stream();
        os << "year,network_hs,quantum_equivalent_hs\n";
        for (size_t i = 0; i < summary.sample_count; ++i) {
            double y = 0, n = 0, q = 0;
            check(qpow_crossover_sample(result.get(), i, &y, &n, &q));
            os << fmt::shortest(y) << ',' << fmt::shortest(n) << ',' << fmt::shortest(q) << '\n';
        }
        out.finish(m, "crossover");
        if (summary.already_crossed)
            std::cout << "already_crossed=true\n";
        else
            std::cout << "crossover_years=" << fmt::fixed(summary.years_until_crossover, 4) << '\n';
        return kExitOk;
    }
};

// ---- simulate -------------------------------------------------------------

struct SimulateCmd {
    std::optional<std::uint32_t> epochs;

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("simulate", "Retargeting chain simulation with quantum adoption");
        c->add_option("--epochs", epochs, "Override the configured number of epochs")->check(CLI::PositiveNumber);
    }

    int run(const Globals& g) {
        if (g.config_path.empty()) usage("simulate requires --config <path>");
        qpow_sim_config* raw_cfg = nullptr;
        check(qpow_sim_config_load(g.config_path.c_str(), &raw_cfg));
        ConfigPtr cfg(raw_cfg);
        if (g.seed) check(qpow_sim_config_set_seed(cfg.get(), *g.seed));
        if (epochs) check(qpow_sim_config_set_epochs(cfg.get(), *epochs));

        qpow_sim* raw_sim = nullptr;
        check(qpow_sim_create(cfg.get(), &raw_sim));
        SimPtr sim(raw_sim);

        Output out(g.out_path);
        auto& os = out.stream();
        os << "epoch,difficulty,elapsed_s,mean_block_time_s,quantum_share,classical_reward_share,g_ratio\n";
        const std::uint32_t n = qpow_sim_config_epochs(cfg.get());
        for (std::uint32_t e = 0; e < n; ++e) {
            qpow_epoch_stats s{};
            check(qpow_sim_step(sim.get(), &s));
            os << s.epoch << ',' << fmt::shortest(s.difficulty_start) << ',' << fmt::shortest(s.elapsed_s) << ','
               << fmt::shortest(s.mean_block_time_s) << ',' << fmt::shortest(s.quantum_rate_share) << ','
               << fmt::shortest(s.classical_reward_share) << ','
               << (s.has_profit_ratio ? fmt::shortest(s.profit_ratio) : std::string("NA")) << '\n';
        }

        size_t len = 0;
        qpow_sim_config_to_text(cfg.get(), nullptr, 0, &len);
        std::string text(len + 1, '\0');
        check(qpow_sim_config_to_text(cfg.get(), text.data(), text.size(), &len));
        text.resize(len);

        Manifest m;
        m.set("config_path", g.config_path);
        m.set("seed", std::to_string(qpow_sim_config_seed(cfg.get())));
        out.finish(m, "simulate", text);
        return kExitOk;
    }
};

// ---- grover ---------------------------------------------------------------

struct GroverCmd {
    unsigned bits = 10;
    std::uint32_t header = 0;
    std::optional<std::uint32_t> target;
    std::optional<std::uint64_t> solutions;
    std::optional<std::uint64_t> iterations;

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("grover", "Statevector Grover search over a toy hash PoW instance");
        c->add_option("--bits", bits, "Nonce width n (search space 2^n)");
        c->add_option("--header", header, "Block header word");
        auto* t = c->add_option("--target", target, "Accept digests <= target");
        auto* s = c->add_option("--solutions", solutions,
                                "Pick the first header (from --header up) whose target admits exactly M solutions");
        t->excludes(s);
        c->add_option("--iterations", iterations, "Grover iterations (default: optimal k*)");
    }

    int run(const Globals& g) {
        qpow_pow_instance* raw = nullptr;
        if (target) {
            check(qpow_pow_instance_create(bits, header, *target, &raw));
        } else {
            const std::uint64_t want = solutions.value_or(1);
            std::uint32_t h = header;
            qpow_status s = QPOW_E_NO_SOLUTION;
            for (int attempt = 0; attempt < 4096; ++attempt, ++h) {
                s = qpow_pow_instance_with_solutions(bits, h, want, &raw);
                if (s != QPOW_E_NO_SOLUTION) break;
            }
            check(s);
        }
        InstancePtr inst(raw);
        qpow_pow_info info{};
        check(qpow_pow_instance_info(inst.get(), &info));
        if (info.solution_count == 0) throw Failure{kExitDomain, "no solutions under target"};

        qpow_advantage adv{};
        check(qpow_advantage_report(inst.get(), &adv));
        const std::uint64_t k = iterations.value_or(adv.grover_queries);
        qpow_grover_result gr{};
        check(qpow_grover_search(inst.get(), k, &gr));
        const std::uint64_t seed = g.seed.value_or(0);
        std::uint64_t tries = 0;
        std::uint32_t nonce = 0;
        check(qpow_classical_search(inst.get(), seed, &tries, &nonce));

        Manifest m;
        m.set("bits", std::to_string(info.n_bits));
        m.set("header", std::to_string(info.header));
        m.set("target", std::to_string(info.target));
        m.set("iterations", std::to_string(k));
        m.set("seed", std::to_string(seed));

        Output out(g.out_path);
        auto& os = out.stream();
        os << "n_bits=" << info.n_bits << '\n'
           << "header=" << info.header << '\n'
           << "target=" << info.target << '\n'
           << "N=" << info.space_size << '\n'
           << "M=" << info.solution_count << '\n'
           << "k_star=" << adv.grover_queries << '\n'
           << "iterations=" << gr.queries << '\n'
           << "success_probability=" << fmt::fixed(gr.success_probability, 9) << '\n'
           << "classical_expected_tries=" << fmt::shortest(adv.classical_expected) << '\n'
           << "classical_sample_tries=" << tries << '\n'
           << "classical_sample_nonce=" << nonce << '\n'
           << "verify_ops=" << adv.verify_ops << '\n';
        out.finish(m, "grover");
        return kExitOk;
    }
};

// ---- extrapolate ----------------------------------------------------------

struct ExtrapolateCmd {
    std::string history;
    std::size_t degree = 2;
    double at = 0.0;

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("extrapolate", "Least-squares polynomial fit of a difficulty history");
        c->add_option("history", history, "CSV with header x,y")->required();
        c->add_option("--degree", degree, "Polynomial degree");
        c->add_option("--at", at, "Abscissa to extrapolate to")->required();
    }

    int run(const Globals& g) {
        qpow_series* raw = nullptr;
        check(qpow_series_load(history.c_str(), &raw));
        SeriesPtr series(raw);
        const size_t n = qpow_series_size(series.get());
        std::vector<double> xs(n), ys(n);
        for (size_t i = 0; i < n; ++i) check(qpow_series_get(series.get(), i, &xs[i], &ys[i]));

        qpow_polyfit* raw_fit = nullptr;
        check(qpow_polyfit_fit(xs.data(), ys.data(), n, degree, &raw_fit));
        PolyfitPtr fit(raw_fit);
        std::vector<double> coeffs(qpow_polyfit_degree(fit.get()) + 1);
        check(qpow_polyfit_coefficients(fit.get(), coeffs.data(), coeffs.size()));
        double value = 0.0;
        check(qpow_extrapolate_difficulty(fit.get(), at, &value));

        Manifest m;
        m.set("history", history);
        m.set("degree", std::to_string(degree));
        m.set("at", at);

        Output out(g.out_path);
        auto& os = out.stream();
        os << "degree=" << degree << '\n' << "coefficients=";
        for (size_t i = 0; i < coeffs.size(); ++i) os << (i ? "," : "") << fmt::shortest(coeffs[i]);
        os << '\n'
           << "residual_rms=" << fmt::shortest(qpow_polyfit_residual_rms(fit.get())) << '\n'
           << "x=" << fmt::shortest(at) << '\n'
           << "difficulty=" << fmt::shortest(value) << '\n';
        out.finish(m, "extrapolate");
        return kExitOk;
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qpow: quantum advantage in proof-of-work mining"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", std::string(qpow_version()));

    Globals g;
    app.add_option("--seed", g.seed, "Seed for stochastic components");
    app.add_option("--config", g.config_path, "Simulation config file (key = value)");
    app.add_option("--out", g.out_path, "Write output here (plus <out>.manifest) instead of stdout");
    app.add_option("--preset", g.preset, "Named parameter set")
        ->check(CLI::IsMember({"btc-2025", "monero", "etc"}));

    ProfitCmd profit;
    Table1Cmd table1;
    CrossoverCmd crossover;
    SimulateCmd simulate;
    GroverCmd grover;
    ExtrapolateCmd extrapolate;
    profit.add(app);
    table1.add(app);
    crossover.add(app);
    simulate.add(app);
    grover.add(app);
    extrapolate.add(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand("profit")) return profit.run(g);
        if (app.got_subcommand("table1")) return table1.run(g);
        if (app.got_subcommand("crossover")) return crossover.run(g);
        if (app.got_subcommand("simulate")) return simulate.run(g);
        if (app.got_subcommand("grover")) return grover.run(g);
        if (app.got_subcommand("extrapolate")) return extrapolate.run(g);
    } catch (const Failure& f) {
        std::cerr << "qpow: " << f.message << '\n';
        return f.exit_code;
    }
    return kExitUsage;
}
