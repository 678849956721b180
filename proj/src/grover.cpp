#include "qpow/grover.hpp"

#include "qpow/error.hpp"
#include "qpow/format.hpp"
#include "qpow/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace qpow {

namespace {

void check_bits(unsigned n_bits) {
    if (n_bits > kMaxToyBits)
        raise(ErrorCode::Capacity,
              "n_bits=" + std::to_string(n_bits) + " needs 2^" + std::to_string(n_bits)
                  + " amplitude slots (" + fmt::plain(std::ldexp(8.0, static_cast<int>(n_bits) - 20))
                  + " MiB); the statevector limit is 2^" + std::to_string(kMaxToyBits) + " slots (128 MiB)");
    if (n_bits < kMinToyBits)
        raise(ErrorCode::InvalidArgument, "n_bits must be at least " + std::to_string(kMinToyBits));
}

} // namespace

std::uint32_t toy_digest(std::uint32_t header, std::uint32_t nonce, unsigned n_bits) {
    check_bits(n_bits);
    if (nonce >= (std::uint64_t{1} << n_bits))
        raise(ErrorCode::InvalidArgument, "nonce " + std::to_string(nonce) + " outside [0, 2^"
                                              + std::to_string(n_bits) + ")");
    std::uint32_t x = header * 2654435761u + nonce;
    x ^= x >> 13;
    x *= 2246822519u;
    x ^= x >> 16;
    return x & ((std::uint32_t{1} << n_bits) - 1);
}

PowInstance::PowInstance(ToyHash hash, std::uint32_t target) : hash_(hash), target_(target), solutions_(0) {
    check_bits(hash.n_bits);
    if (target >= hash.space_size())
        raise(ErrorCode::InvalidArgument, "target " + std::to_string(target) + " outside [0, 2^"
                                              + std::to_string(hash.n_bits) + ")");
    solutions_ = count_solutions(*this);
}

std::optional<PowInstance> PowInstance::with_solution_count(ToyHash hash, std::uint64_t solutions) {
    check_bits(hash.n_bits);
    if (solutions == 0 || solutions > hash.space_size()) return std::nullopt;
    std::vector<std::uint32_t> digests(hash.space_size());
    for (std::uint32_t nonce = 0; nonce < digests.size(); ++nonce) digests[nonce] = hash.digest(nonce);
    std::sort(digests.begin(), digests.end());
    const std::uint32_t target = digests[solutions - 1];
    if (solutions < digests.size() && digests[solutions] == target) return std::nullopt;
    return PowInstance(hash, target);
}

std::uint64_t count_solutions(const PowInstance& instance) {
    std::uint64_t m = 0;
    const auto n = instance.space_size();
    for (std::uint64_t nonce = 0; nonce < n; ++nonce)
        if (toy_digest(instance.hash().header, static_cast<std::uint32_t>(nonce), instance.hash().n_bits)
            <= instance.target())
            ++m;
    return m;
}

std::vector<std::uint32_t> oracle_marked_states(const PowInstance& instance) {
    std::vector<std::uint32_t> marked;
    marked.reserve(instance.solution_count());
    const auto n = instance.space_size();
    for (std::uint64_t s = 0; s < n; ++s)
        if (instance.is_solution(static_cast<std::uint32_t>(s))) marked.push_back(static_cast<std::uint32_t>(s));
    return marked;
}

std::uint64_t optimal_iterations(std::uint64_t space_size, std::uint64_t solutions) {
    if (solutions == 0) raise(ErrorCode::NoSolution, "no solutions under target");
    require(space_size > 0 && solutions <= space_size, "solution count must not exceed the search space");
    const double theta = std::asin(std::sqrt(static_cast<double>(solutions) / static_cast<double>(space_size)));
    // std::round is half-away-from-zero.
    const double k = std::round(std::numbers::pi / (4.0 * theta) - 0.5);
    return k <= 0.0 ? 0 : static_cast<std::uint64_t>(k);
}

GroverState::GroverState(unsigned n_bits) {
    check_bits(n_bits);
    const std::size_t n = std::size_t{1} << n_bits;
    amps_.assign(n, 1.0 / std::sqrt(static_cast<double>(n)));
}

void GroverState::apply_oracle(std::span<const std::uint32_t> marked) {
    for (auto s : marked) amps_[s] = -amps_[s];
}

void GroverState::apply_diffusion() {
    double sum = 0.0;
    for (double a : amps_) sum += a;
    const double twice_mean = 2.0 * sum / static_cast<double>(amps_.size());
    for (double& a : amps_) a = twice_mean - a;
}

double GroverState::norm_squared() const {
    double s = 0.0;
    for (double a : amps_) s += a * a;
    return s;
}

double GroverState::probability_of(std::span<const std::uint32_t> states) const {
    double p = 0.0;
    for (auto s : states) p += amps_[s] * amps_[s];
    return p;
}

GroverResult grover_search(const PowInstance& instance, std::uint64_t iterations) {
    if (instance.solution_count() == 0) raise(ErrorCode::NoSolution, "no solutions under target");
    const auto marked = oracle_marked_states(instance);
    GroverState state(instance.hash().n_bits);
    GroverResult r;
    for (std::uint64_t k = 0; k < iterations; ++k) {
        state.iterate(marked);
        r.max_norm_error = std::max(r.max_norm_error, std::abs(1.0 - state.norm_squared()));
    }
    r.success_probability = std::min(1.0, state.probability_of(marked));
    r.queries = state.iterations();
    return r;
}

ClassicalResult classical_search(const PowInstance& instance, std::uint64_t seed) {
    if (instance.solution_count() == 0)
        raise(ErrorCode::NoSolution, "no solutions under target: search space of "
                                         + std::to_string(instance.space_size()) + " nonces is exhausted");
    Rng rng(seed);
    ClassicalResult r;
    for (;;) {
        const auto nonce = static_cast<std::uint32_t>(uniform_below(rng, instance.space_size()));
        ++r.tries;
        if (instance.is_solution(nonce)) {
            r.nonce = nonce;
            return r;
        }
    }
}

AdvantageReport advantage_report(const PowInstance& instance) {
    AdvantageReport r;
    r.grover_queries = optimal_iterations(instance.space_size(), instance.solution_count());
    r.classical_expected = static_cast<double>(instance.space_size())
                           / static_cast<double>(instance.solution_count());
    r.verify_ops = 1;
    return r;
}

} // namespace qpow
