#include "qpow/config.hpp"

#include "qpow/error.hpp"
#include "qpow/format.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <vector>

namespace qpow {

std::optional<Preset> find_preset(std::string_view name) {
    const ChainParams btc = scenario::btc_2025();
    if (name == "btc-2025") return Preset{"btc-2025", btc, 130e18};
    if (name == "monero") return Preset{"monero", btc, 1.28e9};
    if (name == "etc") return Preset{"etc", btc, 6.43e12};
    return std::nullopt;
}

namespace {

struct Entry {
    std::string value;
    std::size_t line;
};

[[noreturn]] void bad(std::size_t line, const std::string& what) {
    raise(ErrorCode::Parse, "line " + std::to_string(line) + ": " + what);
}

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double as_double(const Entry& e, const std::string& key) {
    const auto v = fmt::parse_double(e.value);
    if (!v || !std::isfinite(*v)) bad(e.line, key + " expects a finite number, got '" + e.value + "'");
    return *v;
}

std::uint64_t as_uint(const Entry& e, const std::string& key, std::uint64_t max) {
    std::uint64_t v = 0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || v > max)
        bad(e.line, key + " expects an integer in [0, " + std::to_string(max) + "], got '" + e.value + "'");
    return v;
}

MinerKind as_kind(const Entry& e, const std::string& key) {
    if (e.value == "classical") return MinerKind::Classical;
    if (e.value == "quantum") return MinerKind::Quantum;
    bad(e.line, key + " must be 'classical' or 'quantum', got '" + e.value + "'");
}

void check_config(const SimConfig& c, std::size_t line) {
    try {
        c.validate();
    } catch (const Error& e) {
        bad(line, e.what());
    }
}

} // namespace

SimConfig parse_sim_config(std::string_view text) {
    std::map<std::string, Entry> entries;
    std::vector<std::string> miner_ids;
    std::size_t line_no = 0;
    std::size_t last_line = 0;

    for (std::size_t pos = 0; pos < text.size();) {
        const auto nl = text.find('\n', pos);
        const auto end = nl == std::string_view::npos ? text.size() : nl;
        std::string_view raw = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        const auto line = trim(raw);
        if (line.empty()) continue;
        last_line = line_no;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) bad(line_no, "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) bad(line_no, "empty key");
        if (value.empty()) bad(line_no, "empty value for " + key);
        if (auto it = entries.find(key); it != entries.end())
            bad(line_no, "duplicate key " + key + " (first set on line " + std::to_string(it->second.line) + ")");
        if (key.rfind("miner.", 0) == 0) {
            const auto dot = key.find('.', 6);
            if (dot == std::string::npos || dot == 6) bad(line_no, "miner keys look like miner.<id>.<field>");
            const std::string id = key.substr(6, dot - 6);
            if (std::find(miner_ids.begin(), miner_ids.end(), id) == miner_ids.end()) miner_ids.push_back(id);
        }
        entries.emplace(key, Entry{value, line_no});
    }

    SimConfig c;
    c.miners.clear();
    std::map<std::string, bool> used;
    auto get = [&](const std::string& key) -> const Entry* {
        auto it = entries.find(key);
        if (it == entries.end()) return nullptr;
        used[key] = true;
        return &it->second;
    };

    if (const Entry* e = get("preset")) {
        const auto p = find_preset(e->value);
        if (!p) bad(e->line, "unknown preset '" + e->value + "'");
        c.chain = p->chain;
    }
    if (const Entry* e = get("chain.t")) c.chain.block_time_s = as_double(*e, "chain.t");
    if (const Entry* e = get("chain.eta")) c.chain.hash_size = as_double(*e, "chain.eta");
    if (const Entry* e = get("chain.difficulty")) c.chain.difficulty = as_double(*e, "chain.difficulty");
    if (const Entry* e = get("chain.reward")) c.chain.block_reward = as_double(*e, "chain.reward");
    if (const Entry* e = get("chain.retarget_interval"))
        c.chain.retarget_interval = static_cast<std::uint32_t>(
            as_uint(*e, "chain.retarget_interval", std::numeric_limits<std::uint32_t>::max()));
    if (const Entry* e = get("market.usd_per_coin")) c.market.usd_per_coin = as_double(*e, "market.usd_per_coin");

    if (const Entry* e = get("sim.mode")) {
        if (e->value == "deterministic") c.mode = SimMode::Deterministic;
        else if (e->value == "stochastic") c.mode = SimMode::Stochastic;
        else bad(e->line, "sim.mode must be 'deterministic' or 'stochastic'");
    }
    if (const Entry* e = get("sim.seed")) c.seed = as_uint(*e, "sim.seed", std::numeric_limits<std::uint64_t>::max());
    if (const Entry* e = get("sim.epochs"))
        c.epochs = static_cast<std::uint32_t>(as_uint(*e, "sim.epochs", std::numeric_limits<std::uint32_t>::max()));
    if (const Entry* e = get("sim.clamp")) c.retarget_clamp = as_double(*e, "sim.clamp");

    for (const auto& id : miner_ids) {
        const std::string base = "miner." + id + ".";
        MinerSpec m;
        std::uint64_t count = 1;
        const Entry* rate = get(base + "rate");
        if (!rate) {
            const Entry* any = nullptr;
            for (const auto& [k, v] : entries)
                if (k.rfind(base, 0) == 0 && (!any || v.line < any->line)) any = &v;
            bad(any->line, "miner '" + id + "' has no " + base + "rate");
        }
        m.rate = as_double(*rate, base + "rate");
        if (const Entry* e = get(base + "kind")) m.kind = as_kind(*e, base + "kind");
        if (const Entry* e = get(base + "opex")) m.opex_per_year = as_double(*e, base + "opex");
        if (const Entry* e = get(base + "setup")) m.setup_cost = as_double(*e, base + "setup");
        if (const Entry* e = get(base + "count")) count = as_uint(*e, base + "count", 1u << 20);
        try {
            m.validate();
        } catch (const Error& err) {
            bad(rate->line, "miner '" + id + "': " + err.what());
        }
        c.miners.insert(c.miners.end(), count, m);
    }

    const bool has_adoption = std::any_of(entries.begin(), entries.end(),
                                          [](const auto& kv) { return kv.first.rfind("adoption.", 0) == 0; });
    if (has_adoption) {
        AdoptionRule rule;
        const Entry* threshold = get("adoption.threshold");
        const Entry* rate = get("adoption.rate");
        if (!threshold || !rate) {
            std::size_t line = 0;
            for (const auto& [k, v] : entries)
                if (k.rfind("adoption.", 0) == 0 && (line == 0 || v.line < line)) line = v.line;
            bad(line, "adoption rule needs adoption.threshold and adoption.rate");
        }
        rule.threshold = as_double(*threshold, "adoption.threshold");
        rule.quantum_template.kind = MinerKind::Quantum;
        rule.quantum_template.rate = as_double(*rate, "adoption.rate");
        if (const Entry* e = get("adoption.opex")) rule.quantum_template.opex_per_year = as_double(*e, "adoption.opex");
        if (const Entry* e = get("adoption.setup")) rule.quantum_template.setup_cost = as_double(*e, "adoption.setup");
        if (const Entry* e = get("adoption.count"))
            rule.miners_per_epoch = static_cast<std::uint32_t>(as_uint(*e, "adoption.count", 1u << 20));
        c.adoption = rule;
    }

    for (const auto& [k, v] : entries)
        if (!used.count(k)) bad(v.line, "unknown key " + k);

    if (c.miners.empty()) bad(last_line == 0 ? 1 : last_line, "config defines no miners");
    check_config(c, last_line == 0 ? 1 : last_line);
    return c;
}

SimConfig load_sim_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorCode::Io, "cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_sim_config(ss.str());
    } catch (const Error& e) {
        raise(e.code(), path + ": " + e.what());
    }
}

std::string to_config_text(const SimConfig& c) {
    std::ostringstream out;
    out << "chain.t = " << fmt::shortest(c.chain.block_time_s) << '\n'
        << "chain.eta = " << fmt::shortest(c.chain.hash_size) << '\n'
        << "chain.difficulty = " << fmt::shortest(c.chain.difficulty) << '\n'
        << "chain.reward = " << fmt::shortest(c.chain.block_reward) << '\n'
        << "chain.retarget_interval = " << c.chain.retarget_interval << '\n'
        << "market.usd_per_coin = " << fmt::shortest(c.market.usd_per_coin) << '\n'
        << "sim.mode = " << (c.mode == SimMode::Deterministic ? "deterministic" : "stochastic") << '\n'
        << "sim.seed = " << c.seed << '\n'
        << "sim.epochs = " << c.epochs << '\n';
    if (c.retarget_clamp) out << "sim.clamp = " << fmt::shortest(*c.retarget_clamp) << '\n';
    for (std::size_t i = 0; i < c.miners.size(); ++i) {
        const auto& m = c.miners[i];
        const std::string base = "miner.m" + std::to_string(i) + ".";
        out << base << "kind = " << (m.kind == MinerKind::Quantum ? "quantum" : "classical") << '\n'
            << base << "rate = " << fmt::shortest(m.rate) << '\n'
            << base << "opex = " << fmt::shortest(m.opex_per_year) << '\n'
            << base << "setup = " << fmt::shortest(m.setup_cost) << '\n';
    }
    if (c.adoption) {
        const auto& a = *c.adoption;
        out << "adoption.threshold = " << fmt::shortest(a.threshold) << '\n'
            << "adoption.count = " << a.miners_per_epoch << '\n'
            << "adoption.rate = " << fmt::shortest(a.quantum_template.rate) << '\n'
            << "adoption.opex = " << fmt::shortest(a.quantum_template.opex_per_year) << '\n'
            << "adoption.setup = " << fmt::shortest(a.quantum_template.setup_cost) << '\n';
    }
    return out.str();
}

} // namespace qpow
