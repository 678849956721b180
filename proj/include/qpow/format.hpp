#ifndef QPOW_FORMAT_HPP
#define QPOW_FORMAT_HPP

// Locale-independent number formatting (header-only, no link dependency).

#include <array>
#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>

namespace qpow::fmt {

/// Shortest text that parses back to exactly `v`.
inline std::string shortest(double v) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return ec == std::errc{} ? std::string(buf.data(), end) : std::string("nan");
}

inline std::string fixed(double v, int decimals) {
    std::array<char, 400> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, decimals);
    return ec == std::errc{} ? std::string(buf.data(), end) : shortest(v);
}

/// Scientific notation with `significant` digits, e.g. 1.61867e-06.
inline std::string scientific(double v, int significant) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::scientific,
                                   significant - 1);
    return ec == std::errc{} ? std::string(buf.data(), end) : shortest(v);
}

inline std::string usd(double v) { return fixed(v, 2); }

/// Integral values below 1e21 without an exponent (40000000), otherwise shortest.
inline std::string plain(double v) {
    if (std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 1e21) return fixed(v, 0);
    return shortest(v);
}

/// Strict parse of a whole field as a double ("." separator, no grouping).
inline std::optional<double> parse_double(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return std::nullopt;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

} // namespace qpow::fmt

#endif // QPOW_FORMAT_HPP
