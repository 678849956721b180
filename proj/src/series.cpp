#include "qpow/series.hpp"

#include "qpow/error.hpp"
#include "qpow/format.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace qpow {

namespace {

[[noreturn]] void bad_line(std::size_t line, const std::string& what) {
    raise(ErrorCode::Parse, "line " + std::to_string(line) + ": " + what);
}

} // namespace

std::vector<SeriesRecord> parse_series(std::string_view text) {
    std::vector<SeriesRecord> out;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

        const auto comma = line.find(',');
        if (comma == std::string_view::npos) bad_line(line_no, "expected two comma-separated fields");
        const auto rest = line.substr(comma + 1);
        if (rest.find(',') != std::string_view::npos) bad_line(line_no, "expected exactly two fields");
        const auto x = fmt::parse_double(line.substr(0, comma));
        const auto y = fmt::parse_double(rest);
        if (!x || !std::isfinite(*x)) bad_line(line_no, "x is not a finite number");
        if (!y || !std::isfinite(*y)) bad_line(line_no, "y is not a finite number");
        if (!out.empty() && !(*x > out.back().x))
            bad_line(line_no, "x values must be strictly increasing (x=" + fmt::shortest(*x) + " follows "
                                  + fmt::shortest(out.back().x) + ")");
        out.push_back({*x, *y});
    }
    return out;
}

std::vector<SeriesRecord> load_series(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorCode::Io, "cannot open series file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_series(ss.str());
    } catch (const Error& e) {
        raise(e.code(), path + ": " + e.what());
    }
}

void write_series(std::ostream& out, std::span<const SeriesRecord> records, std::string_view header) {
    out << header << '\n';
    for (const auto& r : records) out << fmt::shortest(r.x) << ',' << fmt::shortest(r.y) << '\n';
}

} // namespace qpow
