#ifndef QPOW_SERIES_HPP
#define QPOW_SERIES_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qpow {

/// One sample of a historical or forecast series. x is fractional years since
/// the epoch (or a raw timestamp for ingested history).
struct SeriesRecord {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const SeriesRecord&) const = default;
};

/// Parses two-column CSV text. The first line is a header and is skipped;
/// blank lines are ignored. x must be strictly increasing. Errors name the
/// 1-based line number.
std::vector<SeriesRecord> parse_series(std::string_view text);

std::vector<SeriesRecord> load_series(const std::string& path);

/// Writes `header` then one `x,y` line per record using shortest round-trip
/// formatting.
void write_series(std::ostream& out, std::span<const SeriesRecord> records, std::string_view header = "x,y");

} // namespace qpow

#endif // QPOW_SERIES_HPP
