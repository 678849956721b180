#ifndef QPOW_ECON_HPP
#define QPOW_ECON_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace qpow {

/// Seconds in the 365-day year used for every per-year quantity.
inline constexpr double kSecondsPerYear = 365.0 * 86400.0;

/// Protocol constants of a proof-of-work chain.
struct ChainParams {
    double block_time_s = 600.0;
    double hash_size = 4294967296.0; // 2^32 expected hashes per unit difficulty
    double difficulty = 1.0;
    double block_reward = 3.125;
    std::uint32_t retarget_interval = 2016;

    void validate() const;
};

enum class MinerKind { Classical, Quantum };

/// One mining entity. For quantum miners `rate` is the Grover-equivalent
/// hash rate, not the device clock rate.
struct MinerSpec {
    MinerKind kind = MinerKind::Classical;
    double rate = 1.0;          // H/s
    double opex_per_year = 0.0; // USD per 365-day year
    double setup_cost = 0.0;    // USD, paid once per timespan evaluated

    void validate() const;
};

/// Fiat conversion, applied as f(x) = x * usd_per_coin.
struct Market {
    double usd_per_coin = 1.0;

    void validate() const;
    double to_fiat(double coins) const noexcept { return coins * usd_per_coin; }
};

struct ProfitReport {
    double block_probability = 0.0;
    double income_usd = 0.0;
    double profit_usd = 0.0;
    double timespan_s = 0.0;
};

/// Chance that `miner` wins one block period: H t^2 / (eta D) for classical
/// hardware and H t^2 / (eta sqrt(D)) for quantum hardware.
double block_probability(const MinerSpec& miner, const ChainParams& chain);

/// f(T/t * P * B). Evaluated through the collapsed form T H t B / (eta D^p)
/// so that the block time cancels exactly.
double income(const MinerSpec& miner, const ChainParams& chain, const Market& market,
              double timespan_s);

/// Income minus operating cost over the timespan minus setup cost.
double profit(const MinerSpec& miner, const ChainParams& chain, const Market& market,
              double timespan_s);

ProfitReport profit_report(const MinerSpec& miner, const ChainParams& chain,
                           const Market& market, double timespan_s);

/// G = R_C / R_Q. G < 1 means the quantum miner is the better investment.
/// Throws DegenerateRatio when the quantum profit is exactly zero.
double profit_ratio(const MinerSpec& classical, const MinerSpec& quantum,
                    const ChainParams& chain, const Market& market, double timespan_s);

/// Annual operating cost at which profit over the timespan is zero, with the
/// setup cost taken as zero (rented hardware).
double break_even_opex(const MinerSpec& miner, const ChainParams& chain,
                       const Market& market, double timespan_s);

struct ScenarioRow {
    double quantum_rate = 0.0;
    double usd_per_coin = 0.0;
    double break_even_opex = 0.0;
};

/// Cartesian product of quantum equivalent rates and fiat rates over one year,
/// rates outermost.
std::vector<ScenarioRow> break_even_table(const ChainParams& chain,
                                          std::span<const double> quantum_rates,
                                          std::span<const double> usd_per_coin);

namespace scenario {
/// Bitcoin at 2025-01-01 as used for the break-even table.
ChainParams btc_2025();
inline constexpr double kQuantumRates[] = {4.0e7, 6.4e8};
inline constexpr double kUsdPerCoin[] = {23536.12, 10385.49, 31000.00, 100000.00};
} // namespace scenario

} // namespace qpow

#endif // QPOW_ECON_HPP
