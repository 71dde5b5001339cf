#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fastsax/index.hpp"
#include "fastsax/query.hpp"
#include "fastsax/series.hpp"
#include "fastsax/text.hpp"

namespace fastsax {

/// Latency weights per operation class. weighted_total(counts) is the
/// cost figure the sweep compares across methods.
struct CostModel {
    double add = 1.0;
    double mult = 1.0;
    double compare = 1.0;
    double sqrt = 1.0;
    double abs = 1.0;
    double lookup = 1.0;

    void validate() const {
        for (double w : {add, mult, compare, sqrt, abs, lookup}) {
            if (!std::isfinite(w) || w < 0.0) {
                throw std::invalid_argument("cost model: weights must be finite and >= 0");
            }
        }
    }

    bool operator==(const CostModel&) const = default;
};

inline double weighted_total(const OpCounts& c, const CostModel& m) {
    return m.add * static_cast<double>(c.adds) +
           m.mult * static_cast<double>(c.mults) +
           m.compare * static_cast<double>(c.compares) +
           m.sqrt * static_cast<double>(c.sqrts) +
           m.abs * static_cast<double>(c.abss) +
           m.lookup * static_cast<double>(c.lookups);
}

/// One CSV row: a (method, alphabet, epsilon) cell aggregated over the
/// query batch.
struct BenchResult {
    std::string method;   // "fast_sax" or "sax"
    std::string dataset;
    std::uint64_t seed = 0;
    std::size_t n = 0;
    int a = 0;
    std::vector<std::size_t> levels;
    double epsilon = 0.0;
    OpCounts ops;
    double weighted = 0.0;
    std::uint64_t excluded_residual = 0;
    std::uint64_t excluded_mindist = 0;
    std::uint64_t candidates = 0;
    std::uint64_t answers = 0;
    double wall_seconds = 0.0;
    double mean_tightness = 0.0;

    bool operator==(const BenchResult&) const = default;
};

namespace detail {

/// Deterministic across platforms: raw engine output scaled by hand, no
/// library distributions involved.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::vector<double> random_walk(std::mt19937_64& rng, std::size_t n) {
    std::vector<double> v(n);
    double level = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        level += 2.0 * uniform01(rng) - 1.0;
        v[i] = level;
    }
    return v;
}

inline std::vector<double> white_noise(std::mt19937_64& rng, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = 2.0 * uniform01(rng) - 1.0;
    return v;
}

}  // namespace detail

/// Seeded synthetic dataset: z-normalized random walks.
inline Dataset make_random_walks(std::size_t count, std::size_t n, std::uint64_t seed) {
    if (count == 0 || n < 2) {
        throw std::invalid_argument("make_random_walks: need count >= 1 and n >= 2");
    }
    std::mt19937_64 rng(seed);
    std::vector<TimeSeries> series;
    series.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        series.push_back(TimeSeries{std::to_string(i), "0",
                                    znormalize(detail::random_walk(rng, n))});
    }
    return make_dataset(std::move(series), true);
}

/// Seeded query batch spanning a smoothness spectrum: query j blends a fresh
/// random walk with white noise, with the noise share rising from 0 to 1
/// across the batch. Smooth series hug their piecewise linear fits and rough
/// ones do not, so a batch like this exercises both exclusion rules instead
/// of only the symbolic one.
inline std::vector<TimeSeries> make_blend_queries(std::size_t count, std::size_t n,
                                                  std::uint64_t seed) {
    if (count == 0 || n < 2) {
        throw std::invalid_argument("make_blend_queries: need count >= 1 and n >= 2");
    }
    std::mt19937_64 rng(seed);
    std::vector<TimeSeries> out;
    out.reserve(count);
    for (std::size_t j = 0; j < count; ++j) {
        const std::vector<double> walk = znormalize(detail::random_walk(rng, n));
        const std::vector<double> noise = znormalize(detail::white_noise(rng, n));
        const double t = (count == 1) ? 0.5
                                      : static_cast<double>(j) /
                                            static_cast<double>(count - 1);
        const double cw = std::sqrt(1.0 - t);
        const double cn = std::sqrt(t);
        std::vector<double> blend(n);
        for (std::size_t i = 0; i < n; ++i) blend[i] = cw * walk[i] + cn * noise[i];
        out.push_back(TimeSeries{"q" + std::to_string(j), "q", znormalize(blend)});
    }
    return out;
}

struct TightnessSummary {
    double min = 0.0;
    double mean = 0.0;
    double max = 0.0;
    std::size_t pairs = 0;    // pairs with nonzero true distance
    std::size_t skipped = 0;  // zero-distance pairs, ratio undefined

    bool operator==(const TightnessSummary&) const = default;
};

/// Sampled mindist/euclidean ratios at one representation setting. Ratios
/// lie in [0, 1]; closer to 1 means a tighter lower bound.
inline TightnessSummary tightness_report(const Dataset& d, std::size_t frames, int a,
                                         std::size_t sample_pairs, std::uint64_t seed) {
    if (d.size() < 2) {
        throw std::invalid_argument("tightness_report: need at least 2 series");
    }
    if (sample_pairs == 0) {
        throw std::invalid_argument("tightness_report: need at least 1 pair");
    }
    const BreakpointTable& table = breakpoint_table(a);
    std::vector<SaxWord> words;
    words.reserve(d.size());
    for (const TimeSeries& s : d.series) {
        words.push_back(symbolize(paa(s, frames), table));
    }
    std::mt19937_64 rng(seed);
    TightnessSummary out;
    out.min = 2.0;
    for (std::size_t k = 0; k < sample_pairs; ++k) {
        const std::size_t i = rng() % d.size();
        std::size_t j = rng() % (d.size() - 1);
        if (j >= i) ++j;
        const double e = euclidean(d.series[i], d.series[j]);
        if (e == 0.0) {
            ++out.skipped;
            continue;
        }
        const double r = mindist(words[i], words[j], table) / e;
        out.min = std::min(out.min, r);
        out.max = std::max(out.max, r);
        out.mean += r;
        ++out.pairs;
    }
    if (out.pairs > 0) {
        out.mean /= static_cast<double>(out.pairs);
    } else {
        out.min = 0.0;
    }
    return out;
}

struct SweepConfig {
    std::vector<int> alphabets = {3, 10, 20};
    std::vector<double> epsilons = {1.0, 2.0, 3.0, 4.0};
    std::vector<std::size_t> levels;  // empty: default_levels(n)
    std::size_t baseline_level = 1;   // 1-based level the plain-SAX rows use
    CostModel model;
    std::uint64_t seed = 42;
    std::string dataset_name = "synthetic-rw";
    std::size_t tightness_pairs = 1000;
    bool timing = false;  // off: wall_seconds column is 0 and output is reproducible
};

/// Run every (alphabet, epsilon) cell with both methods over the same query
/// batch. Both methods must return identical answer sets per query; a
/// mismatch is a bug in one of them and aborts the sweep.
inline std::vector<BenchResult> run_sweep(const Dataset& d,
                                          const std::vector<TimeSeries>& queries,
                                          const SweepConfig& cfg) {
    if (!d.normalized) {
        throw std::invalid_argument("run_sweep: dataset must be normalized");
    }
    if (queries.empty()) {
        throw std::invalid_argument("run_sweep: no queries");
    }
    if (cfg.alphabets.empty() || cfg.epsilons.empty()) {
        throw std::invalid_argument("run_sweep: alphabet and epsilon lists must be non-empty");
    }
    cfg.model.validate();
    const std::vector<std::size_t> levels =
        cfg.levels.empty() ? default_levels(d.length) : cfg.levels;

    std::vector<BenchResult> results;
    results.reserve(cfg.alphabets.size() * cfg.epsilons.size() * 2);
    for (int a : cfg.alphabets) {
        const LevelConfig lc = make_level_config(levels, a, d.length);
        if (cfg.baseline_level < 1 || cfg.baseline_level > lc.levels()) {
            throw std::invalid_argument("run_sweep: baseline level " +
                                        std::to_string(cfg.baseline_level) +
                                        " outside [1, " + std::to_string(lc.levels()) + "]");
        }
        const MultiLevelIndex idx = build_index(d, lc);
        const TightnessSummary tight =
            tightness_report(d, lc.frame_counts[cfg.baseline_level - 1], a,
                             cfg.tightness_pairs, cfg.seed);

        for (double eps : cfg.epsilons) {
            BenchResult fast, sax;
            for (BenchResult* r : {&fast, &sax}) {
                r->dataset = cfg.dataset_name;
                r->seed = cfg.seed;
                r->n = d.length;
                r->a = a;
                r->levels = lc.frame_counts;
                r->epsilon = eps;
                r->mean_tightness = tight.mean;
            }
            fast.method = "fast_sax";
            sax.method = "sax";

            const auto t0 = std::chrono::steady_clock::now();
            std::vector<std::vector<std::string>> fast_answers;
            fast_answers.reserve(queries.size());
            for (const TimeSeries& q : queries) {
                const QueryReport rep = detail::run_cascade(idx, d, RangeQuery{q, eps});
                fast.ops += rep.ops;
                for (const LevelCounters& lvl : rep.levels) {
                    fast.excluded_residual += lvl.excluded_residual;
                    fast.excluded_mindist += lvl.excluded_mindist;
                }
                fast.candidates += rep.candidates;
                fast.answers += rep.answers.size();
                fast_answers.push_back(rep.answers);
            }
            const auto t1 = std::chrono::steady_clock::now();
            for (std::size_t qi = 0; qi < queries.size(); ++qi) {
                const QueryReport rep = detail::run_baseline(
                    idx, d, RangeQuery{queries[qi], eps}, cfg.baseline_level);
                sax.ops += rep.ops;
                for (const LevelCounters& lvl : rep.levels) {
                    sax.excluded_mindist += lvl.excluded_mindist;
                }
                sax.candidates += rep.candidates;
                sax.answers += rep.answers.size();
                if (rep.answers != fast_answers[qi]) {
                    throw std::runtime_error(
                        "run_sweep: methods disagree on the answer set at a=" +
                        std::to_string(a) + " epsilon=" + detail::format_double(eps) +
                        " query=" + queries[qi].id + "; this is a bug");
                }
            }
            const auto t2 = std::chrono::steady_clock::now();
            if (cfg.timing) {
                fast.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
                sax.wall_seconds = std::chrono::duration<double>(t2 - t1).count();
            }
            fast.weighted = weighted_total(fast.ops, cfg.model);
            sax.weighted = weighted_total(sax.ops, cfg.model);
            results.push_back(std::move(fast));
            results.push_back(std::move(sax));
        }
    }
    return results;
}

inline void emit_csv(const std::vector<BenchResult>& results, std::ostream& out) {
    out << "method,dataset,seed,n,a,levels,epsilon,adds,mults,compares,sqrts,abss,"
           "lookups,weighted_total,excluded_eq9,excluded_eq10,candidates,answers,"
           "wall_seconds,mean_tightness\n";
    for (const BenchResult& r : results) {
        out << r.method << ',' << r.dataset << ',' << r.seed << ',' << r.n << ','
            << r.a << ',' << detail::join_sizes(r.levels, '|') << ','
            << detail::format_double(r.epsilon) << ',' << r.ops.adds << ','
            << r.ops.mults << ',' << r.ops.compares << ',' << r.ops.sqrts << ','
            << r.ops.abss << ',' << r.ops.lookups << ','
            << detail::format_double(r.weighted) << ',' << r.excluded_residual << ','
            << r.excluded_mindist << ',' << r.candidates << ',' << r.answers << ','
            << detail::format_double(r.wall_seconds) << ','
            << detail::format_double(r.mean_tightness) << '\n';
    }
}

inline void emit_csv(const std::vector<BenchResult>& results,
                     const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("emit_csv: cannot open " + path.string() +
                                 " for writing");
    }
    emit_csv(results, out);
    if (!out) {
        throw std::runtime_error("emit_csv: write to " + path.string() + " failed");
    }
}

}  // namespace fastsax
