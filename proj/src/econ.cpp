#include "qpow/econ.hpp"

#include "qpow/error.hpp"

#include <cmath>

namespace qpow {

namespace {

// D for classical search, sqrt(D) once Grover applies to the difficulty.
double difficulty_term(MinerKind kind, double difficulty) {
    return kind == MinerKind::Quantum ? std::sqrt(difficulty) : difficulty;
}

} // namespace

void ChainParams::validate() const {
    require(std::isfinite(block_time_s) && block_time_s > 0.0, "block time must be positive");
    require(std::isfinite(hash_size) && hash_size >= 1.0, "hash size must be at least 1");
    require(std::isfinite(difficulty) && difficulty >= 1.0, "difficulty must be at least 1");
    require(std::isfinite(block_reward) && block_reward >= 0.0, "block reward must be nonnegative");
    require(retarget_interval >= 1, "retarget interval must be at least one block");
}

void MinerSpec::validate() const {
    require(std::isfinite(rate) && rate > 0.0, "miner rate must be positive");
    require(std::isfinite(opex_per_year) && opex_per_year >= 0.0, "operating cost must be nonnegative");
    require(std::isfinite(setup_cost) && setup_cost >= 0.0, "setup cost must be nonnegative");
}

void Market::validate() const {
    require(std::isfinite(usd_per_coin) && usd_per_coin > 0.0, "fiat rate must be positive");
}

double block_probability(const MinerSpec& miner, const ChainParams& chain) {
    miner.validate();
    chain.validate();
    const double t = chain.block_time_s;
    return checked(miner.rate * t * t / (chain.hash_size * difficulty_term(miner.kind, chain.difficulty)),
                   "block probability");
}

double income(const MinerSpec& miner, const ChainParams& chain, const Market& market,
              double timespan_s) {
    miner.validate();
    chain.validate();
    market.validate();
    require(std::isfinite(timespan_s) && timespan_s > 0.0, "timespan must be positive");
    const double coins = timespan_s * miner.rate * chain.block_time_s * chain.block_reward
                         / (chain.hash_size * difficulty_term(miner.kind, chain.difficulty));
    return checked(market.to_fiat(coins), "income");
}

double profit(const MinerSpec& miner, const ChainParams& chain, const Market& market,
              double timespan_s) {
    const double in = income(miner, chain, market, timespan_s);
    const double opex = miner.opex_per_year * (timespan_s / kSecondsPerYear);
    return checked(in - opex - miner.setup_cost, "profit");
}

ProfitReport profit_report(const MinerSpec& miner, const ChainParams& chain,
                           const Market& market, double timespan_s) {
    ProfitReport r;
    r.block_probability = block_probability(miner, chain);
    r.income_usd = income(miner, chain, market, timespan_s);
    r.profit_usd = profit(miner, chain, market, timespan_s);
    r.timespan_s = timespan_s;
    return r;
}

double profit_ratio(const MinerSpec& classical, const MinerSpec& quantum,
                    const ChainParams& chain, const Market& market, double timespan_s) {
    const double rc = profit(classical, chain, market, timespan_s);
    const double rq = profit(quantum, chain, market, timespan_s);
    if (rq == 0.0) raise(ErrorCode::DegenerateRatio, "profit ratio undefined: quantum profit is zero");
    return checked(rc / rq, "profit ratio");
}

double break_even_opex(const MinerSpec& miner, const ChainParams& chain, const Market& market,
                       double timespan_s) {
    return income(miner, chain, market, timespan_s) / (timespan_s / kSecondsPerYear);
}

std::vector<ScenarioRow> break_even_table(const ChainParams& chain,
                                          std::span<const double> quantum_rates,
                                          std::span<const double> usd_per_coin) {
    require(!quantum_rates.empty(), "at least one quantum rate is required");
    require(!usd_per_coin.empty(), "at least one fiat rate is required");
    std::vector<ScenarioRow> rows;
    rows.reserve(quantum_rates.size() * usd_per_coin.size());
    for (double rate : quantum_rates) {
        const MinerSpec miner{MinerKind::Quantum, rate, 0.0, 0.0};
        for (double usd : usd_per_coin) {
            rows.push_back({rate, usd, break_even_opex(miner, chain, Market{usd}, kSecondsPerYear)});
        }
    }
    return rows;
}

namespace scenario {

ChainParams btc_2025() {
    ChainParams c;
    c.block_time_s = 600.0;
    c.hash_size = 4294967296.0;
    c.difficulty = 4.2903e18;
    c.block_reward = 3.125;
    c.retarget_interval = 2016;
    return c;
}

} // namespace scenario

} // namespace qpow
