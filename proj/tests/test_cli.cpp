// Black-box tests of the qpow binary: output text, exit codes, manifests.
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Run {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Run qpow(const std::string& args) {
    const std::string err_path = "qpow_cli_stderr.txt";
    const std::string cmd = std::string("'") + QPOW_CLI_PATH + "' " + args + " 2>" + err_path;
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(p);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(err_path);
    std::remove(err_path.c_str());
    return r;
}

std::string fixture(const char* name) { return std::string("'") + QPOW_FIXTURE_DIR + "/" + name + "'"; }

std::map<std::string, std::string> key_values(const std::string& text, char sep = '=') {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        const auto eq = line.find(sep);
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            while (!s.empty() && s.front() == ' ') s.erase(s.begin());
            while (!s.empty() && s.back() == ' ') s.pop_back();
            return s;
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        if (line.empty() || line.find(',') == std::string::npos) continue;
        std::vector<std::string> fields;
        std::istringstream ls(line);
        for (std::string f; std::getline(ls, f, ',');) fields.push_back(f);
        rows.push_back(fields);
    }
    return rows;
}

double rel_err(double a, double e) { return std::fabs(a - e) / std::fabs(e); }

} // namespace

TEST_SUITE("cli") {

TEST_CASE("usage errors exit 2") {
    CHECK(qpow("").exit_code == 2);
    CHECK(qpow("frobnicate").exit_code == 2);
    CHECK(qpow("profit --usd 1").exit_code == 2);
    CHECK(qpow("profit --mode quantum --mode classical --rate 4e7 --usd 1").exit_code == 2);
    CHECK(qpow("profit --mode quantum --usd 1").exit_code == 2);
    CHECK(qpow("--preset dogecoin crossover").exit_code == 2);
    CHECK(qpow("simulate").exit_code == 2);
    CHECK(qpow("--help").exit_code == 0);
}

TEST_CASE("profit reproduces table row one") {
    const auto r = qpow("profit --mode quantum --rate 4e7 --usd 23536.12");
    REQUIRE(r.exit_code == 0);
    const auto kv = key_values(r.out);
    // Reference 6258.27; the formula gives 6257.47 (0.013% off).
    CHECK(rel_err(std::stod(kv.at("quantum.income_usd")), 6258.27) < 1e-3);
    CHECK(kv.at("quantum.income_usd") == "6257.47");
    CHECK(kv.at("quantum.block_probability") == "1.61867e-06");
    CHECK(kv.at("timespan_s") == "31536000");

    const auto z = qpow("profit --mode quantum --rate 4e7 --usd 23536.12 --reward 0");
    REQUIRE(z.exit_code == 0);
    CHECK(key_values(z.out).at("quantum.income_usd") == "0.00");

    // Half a year halves income.
    const auto h = qpow("profit --mode quantum --rate 4e7 --usd 23536.12 --days 182.5");
    REQUIRE(h.exit_code == 0);
    CHECK(rel_err(std::stod(key_values(h.out).at("quantum.income_usd")), 6257.47 / 2) < 1e-5);

    const auto g = qpow("profit --mode classical --rate 4e7 --compare-rate 4e7 --usd 23536.12");
    REQUIRE(g.exit_code == 0);
    CHECK(rel_err(std::stod(key_values(g.out).at("g_ratio")), 4.828e-10) < 1e-3);

    CHECK(qpow("profit --mode quantum --rate -4 --usd 1").exit_code == 2);
}

TEST_CASE("table1 default rows") {
    const auto r = qpow("table1");
    REQUIRE(r.exit_code == 0);
    const auto rows = csv(r.out);
    REQUIRE(rows.size() == 9);
    CHECK(rows[0] == std::vector<std::string>{"h_q_hs", "f_usd", "break_even_opex_usd"});
    CHECK(rows[1][0] == "40000000");
    CHECK(rows[1][1] == "23536.12");
    const double reference[] = {6258.27, 2761.51, 8242.92, 26590.06, 100132.28, 44184.12, 131886.68, 425440.90};
    for (int i = 0; i < 8; ++i) CHECK(rel_err(std::stod(rows[i + 1][2]), reference[i]) < 1e-3);

    // Ratios across fiat columns are the fiat ratios, per rate.
    for (int block : {1, 5})
        CHECK(rel_err(std::stod(rows[block + 3][2]) / std::stod(rows[block][2]), 100000.0 / 23536.12) < 1e-5);

    const auto one = qpow("table1 --rates 4e7 --usd 31000");
    REQUIRE(one.exit_code == 0);
    CHECK(csv(one.out).size() == 2);
}

TEST_CASE("crossover") {
    const auto r = qpow("crossover --network-rate 130e18 --clock 4e7 --doubling 1.66");
    REQUIRE(r.exit_code == 0);
    const auto kv = key_values(r.out);
    REQUIRE(kv.count("crossover_years"));
    CHECK(std::fabs(std::stod(kv.at("crossover_years")) - 27.1) <= 0.5);
    const auto rows = csv(r.out);
    CHECK(rows[0] == std::vector<std::string>{"year", "network_hs", "quantum_equivalent_hs"});
    CHECK(rows.size() == 402);

    CHECK(qpow("--preset btc-2025 crossover").out == r.out);
    CHECK(key_values(qpow("--preset etc crossover").out).at("already_crossed") == "true");
    CHECK(key_values(qpow("--preset monero crossover").out).at("already_crossed") == "true");
    CHECK(key_values(qpow("crossover --network-rate 1e15").out).at("already_crossed") == "true");
    CHECK(qpow("crossover --network-rate -1").exit_code == 2);
    CHECK(qpow("crossover --clock 0").exit_code == 2);
    CHECK(qpow("crossover --network-doubling 1 --quantum-doubling 4").exit_code == 3);
}

TEST_CASE("simulate") {
    const auto eq = qpow("--config " + fixture("equilibrium.conf") + " simulate");
    REQUIRE(eq.exit_code == 0);
    const auto rows = csv(eq.out);
    REQUIRE(rows.size() == 7);
    CHECK(rows[0] == std::vector<std::string>{"epoch", "difficulty", "elapsed_s", "mean_block_time_s",
                                              "quantum_share", "classical_reward_share", "g_ratio"});
    for (std::size_t i = 2; i < rows.size(); ++i) CHECK(rows[i][1] == rows[1][1]);
    CHECK(rows[1][6] == "NA");

    const auto ad = qpow("--config " + fixture("adoption.conf") + " simulate");
    REQUIRE(ad.exit_code == 0);
    const auto arows = csv(ad.out);
    bool seen_quantum = false;
    double prev = 0.0;
    for (std::size_t i = 1; i < arows.size(); ++i) {
        const double d = std::stod(arows[i][1]);
        if (seen_quantum) CHECK(d >= prev);
        if (std::stod(arows[i][4]) > 0.0) seen_quantum = true;
        prev = d;
    }
    CHECK(seen_quantum);
    CHECK(qpow("--config " + fixture("adoption.conf") + " simulate").out == ad.out);
    CHECK(qpow("--seed 1 --config " + fixture("adoption.conf") + " simulate").out != ad.out);
    CHECK(csv(qpow("--config " + fixture("adoption.conf") + " simulate --epochs 3").out).size() == 4);

    const auto bad = qpow("--config " + fixture("bad_line.conf") + " simulate");
    CHECK(bad.exit_code == 2);
    CHECK(bad.err.find("line 4") != std::string::npos);
    CHECK(qpow("--config /nonexistent/qpow.conf simulate").exit_code == 2);
}

TEST_CASE("grover") {
    const auto r = qpow("grover --bits 10");
    REQUIRE(r.exit_code == 0);
    const auto kv = key_values(r.out);
    CHECK(kv.at("N") == "1024");
    CHECK(kv.at("M") == "1");
    CHECK(kv.at("k_star") == "25");
    CHECK(std::stod(kv.at("success_probability")) >= 0.999);
    CHECK(kv.at("classical_expected_tries") == "1024");
    CHECK(kv.at("verify_ops") == "1");

    CHECK(key_values(qpow("grover --bits 2").out).at("success_probability") == "1.000000000");
    const auto big = qpow("grover --bits 25");
    CHECK(big.exit_code == 2);
    CHECK(big.err.find("2^25") != std::string::npos);

    // Find a header/target pair with no solutions: target below the minimum digest.
    int none_exit = -1;
    for (int header = 0; header < 64 && none_exit != 3; ++header) {
        const auto probe = qpow("grover --bits 8 --target 0 --header " + std::to_string(header));
        none_exit = probe.exit_code;
        if (none_exit == 3) CHECK(probe.err.find("no solutions under target") != std::string::npos);
    }
    CHECK(none_exit == 3);
    CHECK(qpow("grover --bits 8 --target 256").exit_code == 2);
}

TEST_CASE("extrapolate") {
    const auto r = qpow("extrapolate " + fixture("history_quadratic.csv") + " --degree 2 --at 2025");
    REQUIRE(r.exit_code == 0);
    const auto kv = key_values(r.out);
    CHECK(kv.at("degree") == "2");
    const double expected = 3e11 * 256 + 2e11 * 16 + 1e11;
    CHECK(rel_err(std::stod(kv.at("difficulty")), expected) < 1e-9);

    const auto bad = qpow("extrapolate " + fixture("history_bad.csv") + " --at 2025");
    CHECK(bad.exit_code == 2);
    CHECK(bad.err.find("line 4") != std::string::npos);
    CHECK(qpow("extrapolate " + fixture("history_two.csv") + " --degree 2 --at 2025").exit_code == 2);
    CHECK(qpow("extrapolate " + fixture("history_falling.csv") + " --degree 1 --at 10").exit_code == 3);
    CHECK(qpow("extrapolate /nonexistent.csv --at 1").exit_code == 2);
}

TEST_CASE("--out writes a manifest that replays byte-identically") {
    SUBCASE("grover") {
        REQUIRE(qpow("--seed 17 --out cli_grover.txt grover --bits 12 --solutions 3").exit_code == 0);
        const auto first = slurp("cli_grover.txt");
        const auto m = key_values(slurp("cli_grover.txt.manifest"));
        CHECK(m.at("tool.name") == "qpow");
        CHECK(m.at("tool.rng") == "mt19937_64");
        CHECK(m.at("run.subcommand") == "grover");
        const std::string replay = "--seed " + m.at("run.seed") + " --out cli_grover_2.txt grover --bits "
                                   + m.at("run.bits") + " --header " + m.at("run.header") + " --target "
                                   + m.at("run.target") + " --iterations " + m.at("run.iterations");
        REQUIRE(qpow(replay).exit_code == 0);
        CHECK(slurp("cli_grover_2.txt") == first);
        CHECK(slurp("cli_grover_2.txt.manifest") == slurp("cli_grover.txt.manifest"));
        for (const char* f : {"cli_grover.txt", "cli_grover.txt.manifest", "cli_grover_2.txt", "cli_grover_2.txt.manifest"})
            std::remove(f);
    }
    SUBCASE("simulate") {
        REQUIRE(qpow("--seed 5 --config " + fixture("adoption.conf") + " --out cli_sim.csv simulate").exit_code == 0);
        const auto first = slurp("cli_sim.csv");
        CHECK(first.rfind("epoch,", 0) == 0);
        // The embedded config.* lines are a complete config on their own.
        std::istringstream in(slurp("cli_sim.csv.manifest"));
        std::ofstream conf("cli_replay.conf", std::ios::binary);
        for (std::string line; std::getline(in, line);)
            if (line.rfind("config.", 0) == 0) conf << line.substr(7) << '\n';
        conf.close();
        REQUIRE(qpow("--config cli_replay.conf --out cli_sim_2.csv simulate").exit_code == 0);
        CHECK(slurp("cli_sim_2.csv") == first);
        for (const char* f : {"cli_sim.csv", "cli_sim.csv.manifest", "cli_sim_2.csv", "cli_sim_2.csv.manifest",
                              "cli_replay.conf"})
            std::remove(f);
    }
}

} // TEST_SUITE
