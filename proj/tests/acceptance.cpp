// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.
#include "qpow/chain_sim.hpp"
#include "qpow/config.hpp"
#include "qpow/econ.hpp"
#include "qpow/error.hpp"
#include "qpow/forecast.hpp"
#include "qpow/grover.hpp"

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace qpow;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_s > 0 && secs >= limit_s) o.expect(false, "took " + std::to_string(secs) + " s");
    if (!o.pass) ++failures;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.3fs", secs);
    std::cout << (o.pass ? "PASS" : "FAIL") << ' ' << id << ' ' << name << " [" << timing << "]";
    if (!o.detail.empty()) std::cout << ": " << o.detail;
    std::cout << '\n';
}

double rel_err(double a, double e) { return std::fabs(a - e) / std::fabs(e); }

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string("'") + QPOW_CLI_PATH + "' " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::map<std::string, std::string> manifest(const std::string& path) {
    std::map<std::string, std::string> kv;
    std::istringstream in(slurp(path));
    for (std::string line; std::getline(in, line);) {
        const auto eq = line.find(" = ");
        if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 3);
    }
    return kv;
}

MinerSpec miner(MinerKind k, double rate, double opex = 0.0) { return {k, rate, opex, 0.0}; }

SimConfig btc_sim(std::vector<MinerSpec> miners, double difficulty, std::uint32_t epochs) {
    SimConfig c;
    c.chain = scenario::btc_2025();
    c.chain.difficulty = difficulty;
    c.miners = std::move(miners);
    c.market = Market{23536.12};
    c.epochs = epochs;
    return c;
}

} // namespace

int main() {
    criterion(1, "Table 1 break-even regression", 1.0, [] {
        Outcome o;
        const double reference[] = {6258.27, 2761.51, 8242.92, 26590.06, 100132.28, 44184.12, 131886.68, 425440.90};
        const auto rows = break_even_table(scenario::btc_2025(), scenario::kQuantumRates, scenario::kUsdPerCoin);
        o.expect(rows.size() == 8, "expected 8 rows");
        double worst = 0.0;
        for (std::size_t i = 0; i < rows.size() && i < 8; ++i) worst = std::max(worst, rel_err(rows[i].break_even_opex, reference[i]));
        o.expect(worst <= 1e-3, "worst relative error " + std::to_string(worst));
        o.note(std::string("worst rel err ") + sci(worst));
        return o;
    });

    criterion(2, "Equivalent hash rate 4e7 -> 1.6e15", 0.0, [] {
        Outcome o;
        o.expect(equivalent_hash_rate(4.0e7, 1.0) == 1.6e15, "not exactly 1.6e15");
        return o;
    });

    criterion(3, "Crossover closed form, ~27 years, small networks crossed", 0.0, [] {
        Outcome o;
        const GrowthModel device{4.0e7, kDefaultDoublingYears, true, 1.0};
        for (double p : {1.0, 1.5, kDefaultDoublingYears, 2.0}) {
            const GrowthModel net{130e18, p, false, 1.0};
            const GrowthModel dev{4.0e7, p, true, 1.0};
            const auto r = crossover_time(net, dev, {60.0, 0.1});
            const double closed = p * std::log2(130e18 / 1.6e15);
            o.expect(std::fabs(r.years_until_crossover - closed) <= 0.1, "closed form mismatch at p=" + std::to_string(p));
            o.expect(r.scan_crossover_years && std::fabs(*r.scan_crossover_years - closed) <= 0.1 + 1e-9,
                     "series scan off by more than one step at p=" + std::to_string(p));
        }
        const auto base = crossover_time({130e18, kDefaultDoublingYears, false, 1.0}, device);
        o.expect(std::fabs(base.years_until_crossover - 27.1) <= 0.5, "p=1.66 gives " + std::to_string(base.years_until_crossover));
        for (const char* name : {"monero", "etc"}) {
            const auto preset = find_preset(name);
            const auto r = crossover_time({preset->network_hash_rate, kDefaultDoublingYears, false, 1.0}, device);
            o.expect(r.already_crossed, std::string(name) + " not already crossed");
        }
        o.note(std::string("p=1.66 -> ") + std::to_string(base.years_until_crossover) + " years");
        return o;
    });

    criterion(4, "Grover analytic agreement, k*=25 at N=1024, quadratic scaling", 30.0, [] {
        Outcome o;
        std::mt19937_64 rng(4);
        double worst = 0.0;
        for (unsigned bits = 2; bits <= 12; ++bits) {
            for (int rep = 0; rep < 8; ++rep) {
                const ToyHash h{bits, static_cast<std::uint32_t>(rng())};
                const PowInstance inst(h, static_cast<std::uint32_t>(rng() % h.space_size()));
                const auto m = inst.solution_count();
                if (m == 0) continue;
                const auto marked = oracle_marked_states(inst);
                const double theta = std::asin(std::sqrt(static_cast<double>(m) / static_cast<double>(h.space_size())));
                const auto kstar = optimal_iterations(h.space_size(), m);
                GroverState s(bits);
                for (std::uint64_t k = 0; k <= 2 * kstar; ++k) {
                    const double a = std::sin((2.0 * static_cast<double>(k) + 1.0) * theta);
                    worst = std::max(worst, std::fabs(s.probability_of(marked) - a * a));
                    s.iterate(marked);
                }
            }
        }
        o.expect(worst <= 1e-9, "analytic deviation " + std::to_string(worst));

        std::optional<PowInstance> single;
        for (std::uint32_t header = 0; header < 4096 && !single; ++header)
            single = PowInstance::with_solution_count({10, header}, 1);
        o.expect(single.has_value(), "no N=1024, M=1 instance");
        if (single) {
            const auto r = grover_search(*single, 25);
            o.expect(r.success_probability >= 0.999, "success " + std::to_string(r.success_probability));
            o.expect(r.queries == 25, "queries " + std::to_string(r.queries));
            o.expect(optimal_iterations(1024, 1) == 25, "k* != 25");
        }
        for (unsigned n : {8u, 10u, 12u, 14u, 16u}) {
            const double ratio = static_cast<double>(optimal_iterations(std::uint64_t{1} << (n + 2), 1))
                                 / static_cast<double>(optimal_iterations(std::uint64_t{1} << n, 1));
            o.expect(ratio >= 1.9 && ratio <= 2.1, "doubling ratio " + std::to_string(ratio) + " at n=" + std::to_string(n));
        }
        o.note(std::string("max |p - sin^2| = ") + sci(worst));
        return o;
    });

    criterion(5, "Chain-sim fixed points", 5.0, [] {
        Outcome o;
        const double span = 2016.0 * 600.0;
        for (double d0 : {1.0, 10.0, 1e6, 1e12}) {
            const std::vector<MinerSpec> miners{miner(MinerKind::Classical, 4.0e7), miner(MinerKind::Classical, 1.3e14)};
            const auto stats = run_simulation(btc_sim(miners, d0, 5));
            for (std::size_t k = 1; k < stats.size(); ++k)
                o.expect(rel_err(stats[k].elapsed_s, span) <= 1e-6, "classical epoch " + std::to_string(k) + " off target");
        }
        const double h = 4.0e7;
        const double dstar = std::pow(h * 600.0 * 600.0 / 4294967296.0, 2);
        const double d_eq = equilibrium_difficulty({miner(MinerKind::Quantum, h)}, btc_sim({}, 1.0, 1).chain);
        o.expect(rel_err(d_eq, dstar) < 1e-12, "equilibrium solver disagrees with closed form");
        // Substitution: at D* one quantum miner finds one block per block time.
        ChainParams at = scenario::btc_2025();
        at.difficulty = dstar;
        o.expect(rel_err(miner_rate(miner(MinerKind::Quantum, h), at), 1.0 / 600.0) < 1e-12, "substitution failed");
        // Start from the difficulty a classical miner of the same rate sustains.
        const double d0 = h * 600.0 * 600.0 / 4294967296.0;
        const auto stats = run_simulation(btc_sim({miner(MinerKind::Quantum, h)}, d0, 10));
        const double err = rel_err(stats.back().difficulty_end, dstar);
        o.expect(err <= 0.01, "all-quantum error after 10 epochs " + std::to_string(err));
        o.note(std::string("D*=") + std::to_string(dstar)
                    + ", rel err after 10 epochs from D0=" + std::to_string(d0) + ": " + sci(err));
        return o;
    });

    criterion(6, "Adoption feedback cycle", 5.0, [] {
        Outcome o;
        const MinerSpec incumbent = miner(MinerKind::Classical, 1e15, 5000.0);
        const ChainParams chain = scenario::btc_2025();
        for (SimMode mode : {SimMode::Deterministic, SimMode::Stochastic}) {
            auto cfg = btc_sim({incumbent}, equilibrium_difficulty({incumbent}, chain), 20);
            cfg.mode = mode;
            cfg.seed = 2025;
            cfg.adoption = AdoptionRule{1.0, 1, miner(MinerKind::Quantum, 1e10)};
            const auto stats = run_simulation(cfg);
            bool joined = false;
            std::uint32_t last_count = 0;
            for (std::size_t k = 0; k < stats.size(); ++k) {
                if (joined) {
                    o.expect(stats[k].difficulty_start >= stats[k - 1].difficulty_start, "difficulty fell at epoch " + std::to_string(k));
                    o.expect(stats[k].quantum_rate_share >= stats[k - 1].quantum_rate_share, "share fell at epoch " + std::to_string(k));
                    o.expect(stats[k].quantum_miners >= stats[k - 1].quantum_miners, "miners fell");
                }
                joined = joined || stats[k].quantum_miners > 0;
                last_count = stats[k].quantum_miners;
            }
            o.expect(joined, "no quantum miner joined");
            o.expect(last_count > 1, "adoption did not continue");
        }
        return o;
    });

    criterion(7, "Determinism: simulate and grover replay byte-identically from the manifest", 0.0, [] {
        Outcome o;
        const std::string conf = "acceptance_sim.conf";
        {
            std::ofstream f(conf);
            f << "preset = btc-2025\nchain.difficulty = 83819031715.39307\nsim.mode = stochastic\nsim.epochs = 8\n"
                 "miner.pool.rate = 1e15\nminer.pool.opex = 5000\nadoption.threshold = 1\nadoption.rate = 1e10\n";
        }
        o.expect(run_cli("--seed 11 --config " + conf + " --out acc_sim.csv simulate") == 0, "simulate failed");
        std::string replay_conf;
        {
            std::istringstream in(slurp("acc_sim.csv.manifest"));
            for (std::string line; std::getline(in, line);)
                if (line.rfind("config.", 0) == 0) replay_conf += line.substr(7) + '\n';
            std::ofstream f("acc_replay.conf");
            f << replay_conf;
        }
        o.expect(run_cli("--config acc_replay.conf --out acc_sim_2.csv simulate") == 0, "simulate replay failed");
        o.expect(run_cli("--seed 11 --config " + conf + " --out acc_sim_3.csv simulate") == 0, "simulate rerun failed");
        const auto sim1 = slurp("acc_sim.csv");
        o.expect(!sim1.empty() && sim1 == slurp("acc_sim_2.csv"), "simulate replay differs");
        o.expect(sim1 == slurp("acc_sim_3.csv"), "simulate rerun differs");
        o.expect(slurp("acc_sim.csv.manifest") == slurp("acc_sim_3.csv.manifest"), "simulate manifests differ");

        o.expect(run_cli("--seed 99 --out acc_grover.txt grover --bits 14 --solutions 2") == 0, "grover failed");
        auto m = manifest("acc_grover.txt.manifest");
        const std::string replay = "--seed " + m["run.seed"] + " --out acc_grover_2.txt grover --bits " + m["run.bits"]
                                   + " --header " + m["run.header"] + " --target " + m["run.target"]
                                   + " --iterations " + m["run.iterations"];
        o.expect(run_cli(replay) == 0, "grover replay failed");
        const auto g1 = slurp("acc_grover.txt");
        o.expect(!g1.empty() && g1 == slurp("acc_grover_2.txt"), "grover replay differs");
        o.expect(m["tool.rng"] == "mt19937_64", "manifest lacks rng id");

        for (const char* f : {"acceptance_sim.conf", "acc_replay.conf", "acc_sim.csv", "acc_sim.csv.manifest", "acc_sim_2.csv",
                              "acc_sim_2.csv.manifest", "acc_sim_3.csv", "acc_sim_3.csv.manifest", "acc_grover.txt",
                              "acc_grover.txt.manifest", "acc_grover_2.txt", "acc_grover_2.txt.manifest"})
            std::remove(f);
        return o;
    });

    criterion(8, "Polynomial fit recovery and held-out extrapolation", 0.0, [] {
        Outcome o;
        for (std::size_t degree : {1u, 2u, 3u}) {
            std::vector<Point2> pts;
            double scale = 0.0;
            for (int i = 0; i < 24; ++i) {
                const double x = 2012.0 + 0.5 * i;
                const double u = x - 2009.0;
                double y = 1e11;
                for (std::size_t d = 1; d <= degree; ++d) y += 1e11 * static_cast<double>(d) * std::pow(u, static_cast<double>(d));
                pts.push_back({x, y});
                scale = std::max(scale, std::fabs(y));
            }
            const auto fit = fit_polynomial(pts, degree);
            o.expect(fit.residual_rms() <= 1e-9 * scale, "residual too large at degree " + std::to_string(degree));
        }
        auto truth = [](double x) {
            const double u = x - 2009.0;
            return 2.0e11 + 1.5e11 * u + 4.0e11 * u * u;
        };
        std::mt19937_64 rng(8);
        std::normal_distribution<double> noise(0.0, 1e-3);
        std::vector<Point2> pts;
        for (int month = 0; month < 144; ++month) {
            const double x = 2012.0 + month / 12.0;
            pts.push_back({x, truth(x) * (1.0 + noise(rng))});
        }
        const auto fit = fit_polynomial(pts, 2);
        const double err = rel_err(extrapolate_difficulty(fit, 2025.0), truth(2025.0));
        o.expect(err <= 0.01, "held-out error " + std::to_string(err));
        o.note(std::string("held-out rel err ") + sci(err));
        return o;
    });

    std::cout << (failures == 0 ? "ALL PASS" : "SOME FAILED") << '\n';
    return failures == 0 ? 0 : 1;
}
