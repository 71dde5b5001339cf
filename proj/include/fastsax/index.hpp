#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fastsax/digest.hpp"
#include "fastsax/pla.hpp"
#include "fastsax/sax.hpp"
#include "fastsax/series.hpp"
#include "fastsax/text.hpp"

namespace fastsax {

/// Representation levels for one index: frame counts sorted from most frames
/// (finest level, shortest segments) to fewest, plus the shared alphabet.
struct LevelConfig {
    std::vector<std::size_t> frame_counts;
    int alphabet_size = 0;

    std::size_t levels() const { return frame_counts.size(); }

    bool operator==(const LevelConfig&) const = default;
};

/// Validate frame counts against a series length and canonicalize the order
/// (descending, duplicates removed).
inline LevelConfig make_level_config(std::vector<std::size_t> frame_counts,
                                     int alphabet_size, std::size_t n) {
    if (alphabet_size < kMinAlphabet || alphabet_size > kMaxAlphabet) {
        throw std::invalid_argument("alphabet size a=" + std::to_string(alphabet_size) +
                                    " outside [" + std::to_string(kMinAlphabet) + ", " +
                                    std::to_string(kMaxAlphabet) + "]");
    }
    if (frame_counts.empty()) {
        throw std::invalid_argument("level config: at least one level required");
    }
    for (std::size_t f : frame_counts) {
        detail::require_divides(n, f, "level config");
    }
    std::sort(frame_counts.begin(), frame_counts.end(), std::greater<>());
    frame_counts.erase(std::unique(frame_counts.begin(), frame_counts.end()),
                       frame_counts.end());
    return LevelConfig{std::move(frame_counts), alphabet_size};
}

/// Default level ladder: the divisors of n closest to n/4, n/8 and n/16,
/// each at least 2 frames, deduplicated. Ties between equally close divisors
/// go to the larger one.
inline std::vector<std::size_t> default_levels(std::size_t n) {
    if (n < 2) {
        throw std::invalid_argument("default_levels: series length n=" +
                                    std::to_string(n) + " too short");
    }
    std::vector<std::size_t> divisors;
    for (std::size_t d = 2; d <= n; ++d) {
        if (n % d == 0) divisors.push_back(d);
    }
    std::vector<std::size_t> out;
    for (int denom : {4, 8, 16}) {
        const double target = static_cast<double>(n) / denom;
        std::size_t best = divisors.front();
        double best_gap = std::abs(static_cast<double>(best) - target);
        for (std::size_t d : divisors) {
            const double gap = std::abs(static_cast<double>(d) - target);
            if (gap < best_gap || (gap == best_gap && d > best)) {
                best = d;
                best_gap = gap;
            }
        }
        if (std::find(out.begin(), out.end(), best) == out.end()) {
            out.push_back(best);
        }
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

/// Per-series, per-level summary: the distance from the series to its
/// piecewise linear fit at that level, and its SAX word.
struct LevelEntry {
    double residual = 0.0;
    SaxWord word;

    bool operator==(const LevelEntry&) const = default;
};

struct MultiLevelIndex {
    LevelConfig config;
    std::size_t length = 0;
    std::string fingerprint;
    std::vector<std::string> ids;
    std::vector<std::vector<LevelEntry>> entries;  // [series][level]

    std::size_t size() const { return ids.size(); }

    bool operator==(const MultiLevelIndex&) const = default;
};

/// Digest of a normalized dataset's exact contents (ids and value bits),
/// used to pair an index file with the dataset it was built from.
inline std::string dataset_fingerprint(const Dataset& d) {
    if (!d.normalized) {
        throw std::invalid_argument("dataset_fingerprint: dataset must be normalized");
    }
    Crc64 crc;
    crc.update_u64(d.length);
    crc.update_u64(d.series.size());
    for (const TimeSeries& s : d.series) {
        crc.update_u64(s.id.size());
        crc.update(s.id);
        for (double v : s.values) crc.update_double(v);
    }
    return to_hex16(crc.value());
}

inline MultiLevelIndex build_index(const Dataset& d, const LevelConfig& cfg) {
    if (!d.normalized) {
        throw std::invalid_argument("build_index: dataset must be normalized");
    }
    if (d.series.empty()) {
        throw std::invalid_argument("build_index: empty dataset");
    }
    if (cfg.frame_counts.empty()) {
        throw std::invalid_argument("build_index: level config has no levels");
    }
    for (std::size_t f : cfg.frame_counts) {
        detail::require_divides(d.length, f, "build_index");
    }
    const BreakpointTable& table = breakpoint_table(cfg.alphabet_size);

    MultiLevelIndex idx;
    idx.config = cfg;
    idx.length = d.length;
    idx.fingerprint = dataset_fingerprint(d);
    idx.ids.reserve(d.series.size());
    idx.entries.reserve(d.series.size());
    for (const TimeSeries& s : d.series) {
        idx.ids.push_back(s.id);
        std::vector<LevelEntry> levels;
        levels.reserve(cfg.frame_counts.size());
        for (std::size_t frames : cfg.frame_counts) {
            LevelEntry e;
            e.residual = residual(s, fit_pla(s, frames));
            e.word = symbolize(paa(s, frames), table);
            levels.push_back(std::move(e));
        }
        idx.entries.push_back(std::move(levels));
    }
    return idx;
}

namespace detail {

inline std::string join_sizes(const std::vector<std::size_t>& v, char sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(v[i]);
    }
    return out;
}

inline std::string word_letters(const SaxWord& w) {
    std::string out;
    out.reserve(w.symbols.size());
    for (std::uint8_t s : w.symbols) out += symbol_letter(s);
    return out;
}

}  // namespace detail

/// Serialize an index. The layout is line oriented:
///   FASTSAX 1
///   n=<n> a=<a> levels=<N1,N2,...> count=<series>
///   fingerprint=<hex>
///   <id> <level> <residual> <word>     (one line per series per level)
///   checksum=<hex over all preceding bytes>
inline void save_index(const MultiLevelIndex& idx, const std::filesystem::path& path) {
    for (const std::string& id : idx.ids) {
        if (id.empty() || id.find_first_of(" \t\r\n") != std::string::npos) {
            throw std::invalid_argument("save_index: series id \"" + id +
                                        "\" is empty or contains whitespace");
        }
    }
    std::ostringstream body;
    body << "FASTSAX 1\n";
    body << "n=" << idx.length << " a=" << idx.config.alphabet_size
         << " levels=" << detail::join_sizes(idx.config.frame_counts, ',')
         << " count=" << idx.ids.size() << '\n';
    body << "fingerprint=" << idx.fingerprint << '\n';
    for (std::size_t i = 0; i < idx.ids.size(); ++i) {
        for (std::size_t li = 0; li < idx.config.frame_counts.size(); ++li) {
            const LevelEntry& e = idx.entries[i][li];
            body << idx.ids[i] << ' ' << li << ' '
                 << detail::format_double(e.residual) << ' '
                 << detail::word_letters(e.word) << '\n';
        }
    }
    const std::string text = body.str();
    const std::string checksum = to_hex16(Crc64::of(text));

    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("save_index: cannot open " + path.string() +
                                 " for writing");
    }
    out << text << "checksum=" << checksum << '\n';
    if (!out) {
        throw std::runtime_error("save_index: write to " + path.string() + " failed");
    }
}

inline MultiLevelIndex load_index(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("load_index: cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const std::string where = "load_index: " + path.filename().string();

    // The checksum line covers every byte before it; verify first.
    const std::string_view tv(text);
    std::size_t tail = tv.size();
    if (tail > 0 && tv[tail - 1] == '\n') --tail;
    const std::size_t last_nl = tv.rfind('\n', tail == 0 ? 0 : tail - 1);
    const std::size_t last_start = (last_nl == std::string_view::npos) ? 0 : last_nl + 1;
    const std::string_view last_line = tv.substr(last_start, tail - last_start);
    if (!last_line.starts_with("checksum=")) {
        throw std::runtime_error(where + ": missing checksum line");
    }
    const std::string_view stored = last_line.substr(9);
    const std::string computed = to_hex16(Crc64::of(tv.substr(0, last_start)));
    if (stored != computed) {
        throw std::runtime_error(where + ": checksum mismatch (file corrupt)");
    }

    const auto lines = detail::split_lines(tv.substr(0, last_start));
    if (lines.size() < 3) {
        throw std::runtime_error(where + ": truncated file");
    }
    if (lines[0] != "FASTSAX 1") {
        throw std::runtime_error(where + ": unsupported format (expected \"FASTSAX 1\")");
    }

    std::size_t n = 0, count = 0;
    int a = 0;
    std::vector<std::size_t> frame_counts;
    for (std::string_view tok : detail::split_any(lines[1], " ")) {
        const std::size_t eq = tok.find('=');
        if (eq == std::string_view::npos) {
            throw std::runtime_error(where + ": malformed header token \"" +
                                     std::string(tok) + "\"");
        }
        const std::string_view key = tok.substr(0, eq);
        const std::string_view val = tok.substr(eq + 1);
        if (key == "n") {
            n = detail::parse_size(val, where);
        } else if (key == "a") {
            a = static_cast<int>(detail::parse_size(val, where));
        } else if (key == "levels") {
            for (std::string_view piece : detail::split_any(val, ",")) {
                frame_counts.push_back(detail::parse_size(piece, where));
            }
        } else if (key == "count") {
            count = detail::parse_size(val, where);
        } else {
            throw std::runtime_error(where + ": unknown header key \"" +
                                     std::string(key) + "\"");
        }
    }
    if (n == 0 || a == 0 || frame_counts.empty() || count == 0) {
        throw std::runtime_error(where + ": incomplete header");
    }

    if (!lines[2].starts_with("fingerprint=")) {
        throw std::runtime_error(where + ": missing fingerprint line");
    }

    MultiLevelIndex idx;
    idx.config = make_level_config(frame_counts, a, n);
    if (idx.config.frame_counts != frame_counts) {
        throw std::runtime_error(where + ": levels are not strictly decreasing");
    }
    idx.length = n;
    idx.fingerprint = std::string(lines[2].substr(12));

    const std::size_t L = frame_counts.size();
    if (lines.size() != 3 + count * L) {
        throw std::runtime_error(where + ": expected " + std::to_string(count * L) +
                                 " entry lines, found " + std::to_string(lines.size() - 3));
    }
    const BreakpointTable& table = breakpoint_table(a);
    idx.ids.reserve(count);
    idx.entries.reserve(count);
    std::size_t row = 3;
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<LevelEntry> levels(L);
        std::string id;
        for (std::size_t li = 0; li < L; ++li, ++row) {
            const std::string ctx = where + " line " + std::to_string(row + 1);
            const auto fields = detail::split_any(lines[row], " ");
            if (fields.size() != 4) {
                throw std::runtime_error(ctx + ": expected 4 fields, found " +
                                         std::to_string(fields.size()));
            }
            if (li == 0) {
                id = std::string(fields[0]);
            } else if (fields[0] != id) {
                throw std::runtime_error(ctx + ": series id changed mid-block");
            }
            if (detail::parse_size(fields[1], ctx) != li) {
                throw std::runtime_error(ctx + ": level index out of order");
            }
            LevelEntry& e = levels[li];
            e.residual = detail::parse_double(fields[2], ctx);
            if (!std::isfinite(e.residual) || e.residual < 0.0) {
                throw std::runtime_error(ctx + ": residual must be finite and >= 0");
            }
            const std::string_view word = fields[3];
            if (word.size() != frame_counts[li]) {
                throw std::runtime_error(ctx + ": word has " +
                                         std::to_string(word.size()) +
                                         " symbols, expected " +
                                         std::to_string(frame_counts[li]));
            }
            e.word.alphabet_size = table.alphabet_size();
            e.word.length = n;
            e.word.symbols.reserve(word.size());
            for (char c : word) {
                if (c < 'a' || c >= static_cast<char>('a' + a)) {
                    throw std::runtime_error(ctx + ": symbol '" + std::string(1, c) +
                                             "' outside alphabet of size " +
                                             std::to_string(a));
                }
                e.word.symbols.push_back(static_cast<std::uint8_t>(c - 'a'));
            }
        }
        idx.ids.push_back(std::move(id));
        idx.entries.push_back(std::move(levels));
    }
    return idx;
}

}  // namespace fastsax
