#include "qpow/chain_sim.hpp"

#include "qpow/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace qpow {

namespace {

struct RateTotals {
    double classical = 0.0;
    double quantum = 0.0;
    double total() const { return classical + quantum; }
};

RateTotals rate_totals(const std::vector<MinerSpec>& miners, const ChainParams& chain) {
    RateTotals t;
    for (const auto& m : miners) (m.kind == MinerKind::Quantum ? t.quantum : t.classical) += miner_rate(m, chain);
    return t;
}

const MinerSpec* first_of(const std::vector<MinerSpec>& miners, MinerKind kind) {
    auto it = std::find_if(miners.begin(), miners.end(), [kind](const MinerSpec& m) { return m.kind == kind; });
    return it == miners.end() ? nullptr : &*it;
}

} // namespace

void SimConfig::validate() const {
    chain.validate();
    market.validate();
    require(!miners.empty(), "simulation needs at least one miner");
    for (const auto& m : miners) m.validate();
    require(epochs >= 1, "simulation needs at least one epoch");
    if (adoption) {
        require(std::isfinite(adoption->threshold), "adoption threshold must be finite");
        require(adoption->miners_per_epoch >= 1, "adoption must add at least one miner");
        require(adoption->quantum_template.kind == MinerKind::Quantum, "adoption template must be a quantum miner");
        adoption->quantum_template.validate();
    }
    if (retarget_clamp) require(std::isfinite(*retarget_clamp) && *retarget_clamp >= 1.0, "retarget clamp must be >= 1");
}

double miner_rate(const MinerSpec& miner, const ChainParams& chain) {
    return block_probability(miner, chain) / chain.block_time_s;
}

double retarget(double difficulty, double elapsed_s, const ChainParams& chain, std::optional<double> clamp) {
    chain.validate();
    require(std::isfinite(difficulty) && difficulty > 0.0, "difficulty must be positive");
    if (!(elapsed_s > 0.0) || !std::isfinite(elapsed_s))
        raise(ErrorCode::Domain, "retarget needs a positive elapsed time");
    const double target = static_cast<double>(chain.retarget_interval) * chain.block_time_s;
    double factor = target / elapsed_s;
    if (clamp) factor = std::clamp(factor, 1.0 / *clamp, *clamp);
    return std::max(1.0, checked(difficulty * factor, "retargeted difficulty"));
}

MajorityCheck majority_check(const std::vector<MinerSpec>& miners, const ChainParams& chain) {
    require(!miners.empty(), "majority check needs at least one miner");
    const auto totals = rate_totals(miners, chain);
    MajorityCheck r;
    r.quantum_share = totals.quantum / totals.total();
    r.majority = r.quantum_share > 0.5;
    return r;
}

double equilibrium_difficulty(const std::vector<MinerSpec>& miners, const ChainParams& chain) {
    require(!miners.empty(), "equilibrium needs at least one miner");
    chain.validate();
    // Total rate is a/D + b/sqrt(D); with s = sqrt(D), s^2 - t b s - t a = 0.
    double a = 0.0, b = 0.0;
    for (const auto& m : miners) {
        m.validate();
        (m.kind == MinerKind::Quantum ? b : a) += m.rate * chain.block_time_s / chain.hash_size;
    }
    const double t = chain.block_time_s;
    const double s = 0.5 * (t * b + std::sqrt(t * t * b * b + 4.0 * t * a));
    return std::max(1.0, checked(s * s, "equilibrium difficulty"));
}

ChainSimulation::ChainSimulation(SimConfig config)
    : config_(std::move(config)), miners_(config_.miners), difficulty_(config_.chain.difficulty), rng_(config_.seed) {
    config_.validate();
}

std::optional<double> ChainSimulation::epoch_profit_ratio(double difficulty, double elapsed_s,
                                                          const MinerSpec* quantum_override) const {
    const MinerSpec* classical = first_of(miners_, MinerKind::Classical);
    const MinerSpec* quantum = quantum_override ? quantum_override : first_of(miners_, MinerKind::Quantum);
    if (!classical || !quantum) return std::nullopt;
    ChainParams chain = config_.chain;
    chain.difficulty = difficulty;
    const double rq = profit(*quantum, chain, config_.market, elapsed_s);
    if (rq == 0.0) return std::nullopt;
    return profit(*classical, chain, config_.market, elapsed_s) / rq;
}

EpochStats ChainSimulation::step() {
    ChainParams chain = config_.chain;
    chain.difficulty = difficulty_;
    const auto interval = chain.retarget_interval;

    std::vector<double> rates;
    rates.reserve(miners_.size());
    for (const auto& m : miners_) rates.push_back(miner_rate(m, chain));
    double total = 0.0;
    for (double r : rates) total += r;
    if (!(total > 0.0) || !std::isfinite(total))
        raise(ErrorCode::Stall, "total block rate is zero at difficulty " + std::to_string(difficulty_));

    EpochStats s;
    s.epoch = epoch_;
    s.difficulty_start = difficulty_;
    s.miner_blocks.assign(miners_.size(), 0.0);

    if (config_.mode == SimMode::Deterministic) {
        s.elapsed_s = static_cast<double>(interval) / total;
        for (std::size_t i = 0; i < rates.size(); ++i)
            s.miner_blocks[i] = static_cast<double>(interval) * rates[i] / total;
    } else {
        // Each miner's next find is exponential; the earliest one wins the block.
        for (std::uint32_t b = 0; b < interval; ++b) {
            double best = std::numeric_limits<double>::infinity();
            std::size_t winner = 0;
            for (std::size_t i = 0; i < rates.size(); ++i) {
                const double arrival = exponential(rng_, rates[i]);
                if (arrival < best) {
                    best = arrival;
                    winner = i;
                }
            }
            s.elapsed_s += best;
            s.miner_blocks[winner] += 1.0;
        }
        if (!(s.elapsed_s > 0.0))
            raise(ErrorCode::Stall, "epoch completed in zero time");
    }
    s.mean_block_time_s = s.elapsed_s / static_cast<double>(interval);

    double classical_blocks = 0.0;
    double quantum_rate = 0.0;
    for (std::size_t i = 0; i < miners_.size(); ++i) {
        if (miners_[i].kind == MinerKind::Classical) {
            classical_blocks += s.miner_blocks[i];
        } else {
            quantum_rate += rates[i];
            ++s.quantum_miners;
        }
    }
    s.classical_reward_share = std::clamp(classical_blocks / static_cast<double>(interval), 0.0, 1.0);
    s.quantum_rate_share = quantum_rate / total;
    s.profit_ratio = epoch_profit_ratio(s.difficulty_start, s.elapsed_s, nullptr);

    difficulty_ = retarget(difficulty_, s.elapsed_s, chain, config_.retarget_clamp);
    s.difficulty_end = difficulty_;
    maybe_adopt(s);
    ++epoch_;
    return s;
}

void ChainSimulation::maybe_adopt(const EpochStats& stats) {
    if (!config_.adoption) return;
    const auto& rule = *config_.adoption;
    // With no quantum miner yet, the template itself is the prospective entrant.
    const bool have_quantum = first_of(miners_, MinerKind::Quantum) != nullptr;
    const MinerSpec& quantum = have_quantum ? *first_of(miners_, MinerKind::Quantum) : rule.quantum_template;

    ChainParams chain = config_.chain;
    chain.difficulty = stats.difficulty_start;
    if (profit(quantum, chain, config_.market, stats.elapsed_s) <= 0.0) return;

    const std::optional<double> g =
        have_quantum ? stats.profit_ratio
                     : epoch_profit_ratio(stats.difficulty_start, stats.elapsed_s, &rule.quantum_template);
    if (!g || !(*g < rule.threshold)) return;
    miners_.insert(miners_.end(), rule.miners_per_epoch, rule.quantum_template);
}

std::vector<EpochStats> ChainSimulation::run() {
    std::vector<EpochStats> out;
    out.reserve(config_.epochs);
    while (epoch_ < config_.epochs) out.push_back(step());
    return out;
}

std::vector<EpochStats> run_simulation(const SimConfig& config) {
    return ChainSimulation(config).run();
}

} // namespace qpow
