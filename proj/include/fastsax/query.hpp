#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "fastsax/index.hpp"
#include "fastsax/ops.hpp"
#include "fastsax/pla.hpp"
#include "fastsax/sax.hpp"
#include "fastsax/series.hpp"

namespace fastsax {

struct RangeQuery {
    TimeSeries query;
    double epsilon = 0.0;
};

/// What happened at one level of the cascade.
struct LevelCounters {
    std::uint64_t tested = 0;
    std::uint64_t excluded_residual = 0;  // |d(u,u~) - d(q,q~)| > epsilon
    std::uint64_t excluded_mindist = 0;   // mindist(q^, u^) > epsilon

    bool operator==(const LevelCounters&) const = default;
};

struct QueryReport {
    std::vector<std::string> answers;  // ids, natural order
    std::vector<LevelCounters> levels;
    std::uint64_t candidates = 0;  // survivors handed to the verification scan
    OpCounts ops;

    bool operator==(const QueryReport&) const = default;
};

/// Natural id order: all-digit ids compare numerically, everything else
/// lexicographically, numbers before words.
inline bool id_less(const std::string& x, const std::string& y) {
    const auto numeric = [](const std::string& s) {
        return !s.empty() &&
               std::all_of(s.begin(), s.end(),
                           [](unsigned char c) { return std::isdigit(c); });
    };
    const bool nx = numeric(x), ny = numeric(y);
    if (nx && ny) {
        const auto strip = [](const std::string& s) {
            std::size_t i = 0;
            while (i + 1 < s.size() && s[i] == '0') ++i;
            return std::string_view(s).substr(i);
        };
        const std::string_view sx = strip(x), sy = strip(y);
        if (sx.size() != sy.size()) return sx.size() < sy.size();
        if (sx != sy) return sx < sy;
        return x < y;
    }
    if (nx != ny) return nx;
    return x < y;
}

/// The query's own per-level summaries: residual to its piecewise linear fit
/// plus its SAX word, computed once per query.
struct QueryLevel {
    double residual = 0.0;
    SaxWord word;
};

inline std::vector<QueryLevel> query_residuals(const TimeSeries& q,
                                               const LevelConfig& cfg,
                                               OpCounts* ops = nullptr) {
    const BreakpointTable& table = breakpoint_table(cfg.alphabet_size);
    std::vector<QueryLevel> out;
    out.reserve(cfg.frame_counts.size());
    for (std::size_t frames : cfg.frame_counts) {
        QueryLevel ql;
        ql.residual = residual(q, fit_pla(q, frames, ops), ops);
        ql.word = symbolize(paa(q, frames, ops), table, ops);
        out.push_back(std::move(ql));
    }
    return out;
}

/// Exclusion by approximation residuals: if the residuals of u and q to
/// their own fits differ by more than epsilon, u cannot be within epsilon
/// of q (the fit is the closest piecewise linear curve to each series, so
/// the triangle inequality pins both euclidean distances).
inline bool exclude_residual(double res_u, double res_q, double epsilon,
                             OpCounts* ops = nullptr) {
    if (ops) {
        ops->adds += 1;
        ops->abss += 1;
        ops->compares += 1;
    }
    return std::abs(res_u - res_q) > epsilon;
}

/// Exclusion by symbolic lower bound: mindist never exceeds the true
/// distance, so mindist > epsilon proves the pair is out of range.
inline bool exclude_mindist(const SaxWord& wq, const SaxWord& wu,
                            const BreakpointTable& table, double epsilon,
                            OpCounts* ops = nullptr) {
    const double md = mindist(wq, wu, table, ops);
    if (ops) ops->compares += 1;
    return md > epsilon;
}

namespace detail {

inline void check_query_inputs(const MultiLevelIndex& idx, const Dataset& d,
                               const RangeQuery& rq, const char* what) {
    if (!d.normalized) {
        throw std::invalid_argument(std::string(what) + ": dataset must be normalized");
    }
    if (idx.size() != d.size()) {
        throw std::invalid_argument(std::string(what) + ": index has " +
                                    std::to_string(idx.size()) + " series, dataset has " +
                                    std::to_string(d.size()));
    }
    if (idx.length != d.length) {
        throw std::invalid_argument(std::string(what) + ": index length " +
                                    std::to_string(idx.length) + " vs dataset length " +
                                    std::to_string(d.length));
    }
    if (rq.query.size() != d.length) {
        throw std::invalid_argument(std::string(what) + ": query length " +
                                    std::to_string(rq.query.size()) +
                                    " does not match series length " +
                                    std::to_string(d.length));
    }
    if (!(rq.epsilon >= 0.0) || !std::isfinite(rq.epsilon)) {
        throw std::invalid_argument(std::string(what) + ": epsilon must be finite and >= 0");
    }
}

/// Cascade plus verification scan, with validation already done and the
/// fingerprint check factored out so sweeps can amortize it.
inline QueryReport run_cascade(const MultiLevelIndex& idx, const Dataset& d,
                               const RangeQuery& rq) {
    const BreakpointTable& table = breakpoint_table(idx.config.alphabet_size);
    QueryReport rep;
    rep.levels.resize(idx.config.levels());

    const std::vector<QueryLevel> q = query_residuals(rq.query, idx.config, &rep.ops);

    std::vector<std::uint32_t> alive(idx.size());
    for (std::size_t i = 0; i < alive.size(); ++i) alive[i] = static_cast<std::uint32_t>(i);

    for (std::size_t li = 0; li < idx.config.levels() && !alive.empty(); ++li) {
        LevelCounters& lc = rep.levels[li];
        lc.tested = alive.size();
        std::vector<std::uint32_t> next;
        next.reserve(alive.size());
        for (std::uint32_t i : alive) {
            const LevelEntry& e = idx.entries[i][li];
            if (exclude_residual(e.residual, q[li].residual, rq.epsilon, &rep.ops)) {
                ++lc.excluded_residual;
            } else if (exclude_mindist(q[li].word, e.word, table, rq.epsilon, &rep.ops)) {
                ++lc.excluded_mindist;
            } else {
                next.push_back(i);
            }
        }
        alive = std::move(next);
    }
    rep.candidates = alive.size();

    for (std::uint32_t i : alive) {
        const double dist = euclidean(rq.query, d.series[i], &rep.ops);
        rep.ops.compares += 1;
        if (dist <= rq.epsilon) rep.answers.push_back(d.series[i].id);
    }
    std::sort(rep.answers.begin(), rep.answers.end(), id_less);
    return rep;
}

inline QueryReport run_baseline(const MultiLevelIndex& idx, const Dataset& d,
                                const RangeQuery& rq, std::size_t level) {
    const BreakpointTable& table = breakpoint_table(idx.config.alphabet_size);
    QueryReport rep;
    rep.levels.resize(idx.config.levels());
    const std::size_t li = level - 1;

    const SaxWord wq = symbolize(
        paa(rq.query, idx.config.frame_counts[li], &rep.ops), table, &rep.ops);

    LevelCounters& lc = rep.levels[li];
    lc.tested = idx.size();
    std::vector<std::uint32_t> alive;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (exclude_mindist(wq, idx.entries[i][li].word, table, rq.epsilon, &rep.ops)) {
            ++lc.excluded_mindist;
        } else {
            alive.push_back(static_cast<std::uint32_t>(i));
        }
    }
    rep.candidates = alive.size();

    for (std::uint32_t i : alive) {
        const double dist = euclidean(rq.query, d.series[i], &rep.ops);
        rep.ops.compares += 1;
        if (dist <= rq.epsilon) rep.answers.push_back(d.series[i].id);
    }
    std::sort(rep.answers.begin(), rep.answers.end(), id_less);
    return rep;
}

}  // namespace detail

/// Exact range query: every series within epsilon of the query, nothing
/// else. Levels are visited from most frames to fewest; a series excluded
/// at any level is never reconsidered, and survivors are verified against
/// the raw data. The query is assumed to be normalized like the dataset.
inline QueryReport range_query(const MultiLevelIndex& idx, const Dataset& d,
                               const RangeQuery& rq) {
    detail::check_query_inputs(idx, d, rq, "range_query");
    if (idx.fingerprint != dataset_fingerprint(d)) {
        throw std::invalid_argument(
            "range_query: index/dataset fingerprint mismatch (index built from "
            "different data)");
    }
    return detail::run_cascade(idx, d, rq);
}

/// Brute-force oracle: scan everything, keep series with distance <= epsilon.
inline std::vector<std::string> linear_scan(const Dataset& d, const RangeQuery& rq,
                                            OpCounts* ops = nullptr) {
    if (rq.query.size() != d.length) {
        throw std::invalid_argument("linear_scan: query length " +
                                    std::to_string(rq.query.size()) +
                                    " does not match series length " +
                                    std::to_string(d.length));
    }
    if (!(rq.epsilon >= 0.0) || !std::isfinite(rq.epsilon)) {
        throw std::invalid_argument("linear_scan: epsilon must be finite and >= 0");
    }
    std::vector<std::string> answers;
    for (const TimeSeries& s : d.series) {
        if (euclidean(rq.query, s, ops) <= rq.epsilon) answers.push_back(s.id);
        if (ops) ops->compares += 1;
    }
    std::sort(answers.begin(), answers.end(), id_less);
    return answers;
}

/// Single-level baseline: mindist filtering only, at the given (1-based)
/// level of the same index, then the same verification scan.
inline QueryReport sax_only_query(const MultiLevelIndex& idx, const Dataset& d,
                                  const RangeQuery& rq, std::size_t level = 1) {
    detail::check_query_inputs(idx, d, rq, "sax_only_query");
    if (level < 1 || level > idx.config.levels()) {
        throw std::invalid_argument("sax_only_query: level " + std::to_string(level) +
                                    " outside [1, " +
                                    std::to_string(idx.config.levels()) + "]");
    }
    if (idx.fingerprint != dataset_fingerprint(d)) {
        throw std::invalid_argument(
            "sax_only_query: index/dataset fingerprint mismatch (index built from "
            "different data)");
    }
    return detail::run_baseline(idx, d, rq, level);
}

}  // namespace fastsax
