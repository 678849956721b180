#ifndef QPOW_CONFIG_HPP
#define QPOW_CONFIG_HPP

#include "qpow/chain_sim.hpp"
#include "qpow/econ.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace qpow {

/// Built-in named parameter sets.
struct Preset {
    std::string_view name;
    ChainParams chain;
    double network_hash_rate; // H/s
};

std::optional<Preset> find_preset(std::string_view name);

/// Parses a simulation config: one `key = value` per line, `#` comments,
/// dotted keys. Recognised keys:
///
///   preset                       named chain preset applied first
///   chain.t chain.eta chain.difficulty chain.reward chain.retarget_interval
///   market.usd_per_coin
///   sim.mode (deterministic|stochastic) sim.seed sim.epochs sim.clamp
///   miner.<id>.kind (classical|quantum) .rate .opex .setup .count
///   adoption.threshold adoption.count adoption.rate adoption.opex adoption.setup
///
/// Miners keep the order in which their ids first appear. Errors carry the
/// 1-based line number.
SimConfig parse_sim_config(std::string_view text);

SimConfig load_sim_config(const std::string& path);

/// Canonical text form; parse_sim_config(to_config_text(c)) reproduces c
/// exactly (one miner entry per miner, count 1).
std::string to_config_text(const SimConfig& config);

} // namespace qpow

#endif // QPOW_CONFIG_HPP
