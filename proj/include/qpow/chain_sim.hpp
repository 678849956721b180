#ifndef QPOW_CHAIN_SIM_HPP
#define QPOW_CHAIN_SIM_HPP

#include "qpow/econ.hpp"
#include "qpow/random.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace qpow {

enum class SimMode { Deterministic, Stochastic };

/// Adds `miners_per_epoch` copies of `quantum_template` after every epoch in
/// which the profit ratio G falls below `threshold`.
struct AdoptionRule {
    double threshold = 1.0;
    std::uint32_t miners_per_epoch = 1;
    MinerSpec quantum_template{MinerKind::Quantum, 1.0, 0.0, 0.0};
};

struct SimConfig {
    ChainParams chain;
    std::vector<MinerSpec> miners;
    Market market;
    SimMode mode = SimMode::Deterministic;
    std::uint64_t seed = 0;
    std::uint32_t epochs = 1;
    std::optional<AdoptionRule> adoption;
    std::optional<double> retarget_clamp; // bounds D'/D to [1/c, c]

    void validate() const;
};

struct EpochStats {
    std::uint32_t epoch = 0;
    double difficulty_start = 0.0;
    double difficulty_end = 0.0;
    double elapsed_s = 0.0;
    double mean_block_time_s = 0.0;
    std::vector<double> miner_blocks;
    double classical_reward_share = 0.0;
    double quantum_rate_share = 0.0;
    std::uint32_t quantum_miners = 0;
    std::optional<double> profit_ratio; // unset while either class is absent
};

/// Expected blocks per second: P / t.
double miner_rate(const MinerSpec& miner, const ChainParams& chain);

/// D * (interval * t) / elapsed, optionally clamped, floored at 1.
double retarget(double difficulty, double elapsed_s, const ChainParams& chain,
                std::optional<double> clamp = std::nullopt);

struct MajorityCheck {
    double quantum_share = 0.0;
    bool majority = false; // strict: share > 0.5
};

MajorityCheck majority_check(const std::vector<MinerSpec>& miners, const ChainParams& chain);

/// Difficulty at which the total block rate equals 1/t. Closed form for
/// classical-only and quantum-only sets; mixed sets solve a quadratic in
/// sqrt(D).
double equilibrium_difficulty(const std::vector<MinerSpec>& miners, const ChainParams& chain);

/// Stateful simulation: one retarget epoch per step().
class ChainSimulation {
public:
    explicit ChainSimulation(SimConfig config);

    EpochStats step();
    std::vector<EpochStats> run();

    double difficulty() const noexcept { return difficulty_; }
    const std::vector<MinerSpec>& miners() const noexcept { return miners_; }
    std::uint32_t epochs_run() const noexcept { return epoch_; }
    const SimConfig& config() const noexcept { return config_; }

private:
    std::optional<double> epoch_profit_ratio(double difficulty, double elapsed_s,
                                             const MinerSpec* quantum_override) const;
    void maybe_adopt(const EpochStats& stats);

    SimConfig config_;
    std::vector<MinerSpec> miners_;
    double difficulty_;
    Rng rng_;
    std::uint32_t epoch_ = 0;
};

std::vector<EpochStats> run_simulation(const SimConfig& config);

} // namespace qpow

#endif // QPOW_CHAIN_SIM_HPP
