#ifndef QPOW_GROVER_HPP
#define QPOW_GROVER_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace qpow {

inline constexpr unsigned kMinToyBits = 2;
inline constexpr unsigned kMaxToyBits = 24;

/// Multiply-xorshift mixer standing in for SHA-256 at statevector scale.
/// Bit-exact: x = header*2654435761 + nonce (mod 2^32); x ^= x>>13;
/// x *= 2246822519 (mod 2^32); x ^= x>>16; return x mod 2^n.
std::uint32_t toy_digest(std::uint32_t header, std::uint32_t nonce, unsigned n_bits);

struct ToyHash {
    unsigned n_bits = 8;
    std::uint32_t header = 0;

    std::uint32_t digest(std::uint32_t nonce) const { return toy_digest(header, nonce, n_bits); }
    std::uint64_t space_size() const noexcept { return std::uint64_t{1} << n_bits; }
};

/// Nonce search problem: find nonce with digest(header, nonce) <= target.
class PowInstance {
public:
    PowInstance(ToyHash hash, std::uint32_t target);

    const ToyHash& hash() const noexcept { return hash_; }
    std::uint32_t target() const noexcept { return target_; }
    std::uint64_t space_size() const noexcept { return hash_.space_size(); }
    std::uint64_t solution_count() const noexcept { return solutions_; }

    bool is_solution(std::uint32_t nonce) const { return hash_.digest(nonce) <= target_; }

    /// Target giving exactly `solutions` qualifying nonces, if one exists.
    static std::optional<PowInstance> with_solution_count(ToyHash hash, std::uint64_t solutions);

private:
    ToyHash hash_;
    std::uint32_t target_;
    std::uint64_t solutions_;
};

/// Exhaustive count of nonces meeting the target.
std::uint64_t count_solutions(const PowInstance& instance);

/// Basis states flagged by the phase oracle, ascending.
std::vector<std::uint32_t> oracle_marked_states(const PowInstance& instance);

/// round(pi / (4 theta) - 1/2) with theta = asin(sqrt(M/N)), floored at 0.
std::uint64_t optimal_iterations(std::uint64_t space_size, std::uint64_t solutions);

/// Real statevector over 2^n nonces. Holds 2^n doubles.
class GroverState {
public:
    explicit GroverState(unsigned n_bits);

    void apply_oracle(std::span<const std::uint32_t> marked);
    void apply_diffusion();
    void iterate(std::span<const std::uint32_t> marked) {
        apply_oracle(marked);
        apply_diffusion();
        ++iterations_;
    }

    double norm_squared() const;
    double probability_of(std::span<const std::uint32_t> states) const;
    std::uint64_t iterations() const noexcept { return iterations_; }
    std::span<const double> amplitudes() const noexcept { return amps_; }

private:
    std::vector<double> amps_;
    std::uint64_t iterations_ = 0;
};

struct GroverResult {
    double success_probability = 0.0;
    std::uint64_t queries = 0;
    double max_norm_error = 0.0; // worst |1 - sum |a|^2| seen after any iteration
};

GroverResult grover_search(const PowInstance& instance, std::uint64_t iterations);

struct ClassicalResult {
    std::uint64_t tries = 0;
    std::uint32_t nonce = 0;
};

/// Draws nonces uniformly (with replacement) until one meets the target, so
/// the expected number of tries is N / M.
ClassicalResult classical_search(const PowInstance& instance, std::uint64_t seed);

struct AdvantageReport {
    double classical_expected = 0.0;
    std::uint64_t grover_queries = 0;
    std::uint64_t verify_ops = 1;
};

AdvantageReport advantage_report(const PowInstance& instance);

} // namespace qpow

#endif // QPOW_GROVER_HPP
