#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fastsax/series.hpp"
#include "fastsax/text.hpp"

namespace fastsax {

/// Load a UCR-style text file: one series per line, first field is the class
/// label, remaining fields are the values. Fields may be separated by commas
/// or whitespace. Lines starting with '#' and blank lines are ignored.
/// Series ids are assigned sequentially from 0 in file order. Errors name
/// the offending (1-based) file line.
inline Dataset load_ucr(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("load_ucr: cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    std::vector<TimeSeries> series;
    std::size_t expected = 0;
    std::size_t lineno = 0;
    for (std::string_view raw : detail::split_lines(text)) {
        ++lineno;
        const std::string_view line = detail::strip_cr(raw);
        if (line.empty() || line.front() == '#') continue;

        const std::string where = path.filename().string() + " line " + std::to_string(lineno);
        const auto fields = detail::split_any(line, ", \t");
        if (fields.size() < 2) {
            throw std::runtime_error(where + ": expected a label followed by values");
        }
        TimeSeries s;
        s.id = std::to_string(series.size());
        s.label = std::string(fields[0]);
        s.values.reserve(fields.size() - 1);
        for (std::size_t i = 1; i < fields.size(); ++i) {
            const double v = detail::parse_double(fields[i], where);
            if (!std::isfinite(v)) {
                throw std::runtime_error(where + ": non-finite value \"" +
                                         std::string(fields[i]) + "\"");
            }
            s.values.push_back(v);
        }
        if (series.empty()) {
            expected = s.values.size();
        } else if (s.values.size() != expected) {
            throw std::runtime_error(where + ": row has " +
                                     std::to_string(s.values.size()) +
                                     " values, expected " + std::to_string(expected));
        }
        series.push_back(std::move(s));
    }
    if (series.empty()) {
        throw std::runtime_error("load_ucr: " + path.string() + " contains no series");
    }
    return make_dataset(std::move(series));
}

/// Write a dataset back out in the same format (comma separated). Values are
/// printed with enough digits to round-trip exactly.
inline void save_ucr(const Dataset& d, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("save_ucr: cannot open " + path.string() + " for writing");
    }
    for (const TimeSeries& s : d.series) {
        out << s.label;
        for (double v : s.values) out << ',' << detail::format_double(v);
        out << '\n';
    }
    if (!out) {
        throw std::runtime_error("save_ucr: write to " + path.string() + " failed");
    }
}

}  // namespace fastsax
