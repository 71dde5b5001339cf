#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "fastsax/ops.hpp"

namespace fastsax {

/// A univariate time series: an identifier, a class label carried through
/// from the source file, and the raw values.
struct TimeSeries {
    std::string id;
    std::string label;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }

    bool operator==(const TimeSeries&) const = default;
};

/// A collection of equal-length series. `normalized` records whether every
/// series has already been z-normalized; index construction and querying
/// require it.
struct Dataset {
    std::vector<TimeSeries> series;
    std::size_t length = 0;
    bool normalized = false;

    std::size_t size() const { return series.size(); }
};

namespace detail {

inline void require_finite(std::span<const double> values, const char* what) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw std::invalid_argument(std::string(what) +
                                        ": non-finite value at index " +
                                        std::to_string(i));
        }
    }
}

}  // namespace detail

/// Z-normalize: subtract the mean, divide by the population standard
/// deviation (the one that divides by n). A series with zero variance maps
/// to all zeros rather than dividing by zero.
inline std::vector<double> znormalize(std::span<const double> values) {
    if (values.empty()) {
        throw std::invalid_argument("znormalize: empty series");
    }
    detail::require_finite(values, "znormalize");

    const std::size_t n = values.size();
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);

    double var = 0.0;
    for (double v : values) {
        const double d = v - mean;
        var += d * d;
    }
    var /= static_cast<double>(n);

    std::vector<double> out(n);
    if (var == 0.0) {
        return out;
    }
    const double sd = std::sqrt(var);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = (values[i] - mean) / sd;
    }
    return out;
}

inline TimeSeries znormalize(const TimeSeries& s) {
    return TimeSeries{s.id, s.label, znormalize(std::span<const double>(s.values))};
}

/// Euclidean distance between two equal-length series.
inline double euclidean(std::span<const double> a, std::span<const double> b,
                        OpCounts* ops = nullptr) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("euclidean: length mismatch (" +
                                    std::to_string(a.size()) + " vs " +
                                    std::to_string(b.size()) + ")");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    if (ops) {
        ops->adds += 2 * a.size();
        ops->mults += a.size();
        ops->sqrts += 1;
    }
    return std::sqrt(sum);
}

inline double euclidean(const TimeSeries& a, const TimeSeries& b,
                        OpCounts* ops = nullptr) {
    return euclidean(std::span<const double>(a.values),
                     std::span<const double>(b.values), ops);
}

/// Assemble a dataset from loose series, checking that lengths agree,
/// ids are unique, and every series has at least two points.
inline Dataset make_dataset(std::vector<TimeSeries> series, bool normalized = false) {
    if (series.empty()) {
        throw std::invalid_argument("make_dataset: no series");
    }
    const std::size_t n = series.front().size();
    if (n < 2) {
        throw std::invalid_argument("make_dataset: series length must be at least 2, got " +
                                    std::to_string(n));
    }
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (series[i].size() != n) {
            throw std::invalid_argument(
                "make_dataset: series " + std::to_string(i) + " has length " +
                std::to_string(series[i].size()) + ", expected " + std::to_string(n));
        }
        detail::require_finite(series[i].values, "make_dataset");
        if (!seen.insert(series[i].id).second) {
            throw std::invalid_argument("make_dataset: duplicate series id \"" +
                                        series[i].id + "\"");
        }
    }
    return Dataset{std::move(series), n, normalized};
}

/// Z-normalize every series of a dataset.
inline Dataset znormalize(const Dataset& d) {
    std::vector<TimeSeries> out;
    out.reserve(d.series.size());
    for (const TimeSeries& s : d.series) out.push_back(znormalize(s));
    return Dataset{std::move(out), d.length, true};
}

}  // namespace fastsax
