#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fastsax/ops.hpp"
#include "fastsax/series.hpp"

namespace fastsax {

namespace detail {

/// Standard normal CDF.
inline double norm_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

/// Standard normal quantile. Rational approximation refined by two Halley
/// steps against norm_cdf, accurate to full double precision over (0, 1).
inline double norm_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("norm_quantile: p must lie in (0, 1)");
    }
    static constexpr double A[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                    -2.759285104469687e+02, 1.383577518672690e+02,
                                    -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double B[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                    -1.556989798598866e+02, 6.680131188771972e+01,
                                    -1.328068155288572e+01};
    static constexpr double C[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                    -2.400758277161838e+00, -2.549732539343734e+00,
                                    4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double D[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                    2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double plow = 0.02425;

    double x;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5]) /
            ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q /
            (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5]) /
            ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0);
    }
    for (int k = 0; k < 2; ++k) {
        const double e = norm_cdf(x) - p;
        const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(x * x / 2.0);
        x -= u / (1.0 + x * u / 2.0);
    }
    return x;
}

}  // namespace detail

constexpr int kMinAlphabet = 3;
constexpr int kMaxAlphabet = 20;

/// The a-1 breakpoints that cut the standard normal into a equiprobable
/// intervals. Sorted ascending and antisymmetric; for even a the middle
/// breakpoint is exactly 0.
class BreakpointTable {
public:
    explicit BreakpointTable(int alphabet_size) : a_(alphabet_size) {
        if (a_ < kMinAlphabet || a_ > kMaxAlphabet) {
            throw std::invalid_argument("alphabet size a=" + std::to_string(a_) +
                                        " outside [" + std::to_string(kMinAlphabet) +
                                        ", " + std::to_string(kMaxAlphabet) + "]");
        }
        betas_.resize(static_cast<std::size_t>(a_) - 1);
        for (int i = 1; 2 * i < a_; ++i) {
            betas_[static_cast<std::size_t>(i) - 1] =
                detail::norm_quantile(static_cast<double>(i) / a_);
        }
        if (a_ % 2 == 0) {
            betas_[static_cast<std::size_t>(a_) / 2 - 1] = 0.0;
        }
        for (int i = 1; 2 * i < a_; ++i) {
            betas_[static_cast<std::size_t>(a_) - 1 - i] = -betas_[static_cast<std::size_t>(i) - 1];
        }
    }

    int alphabet_size() const { return a_; }
    const std::vector<double>& betas() const { return betas_; }

    bool operator==(const BreakpointTable&) const = default;

private:
    int a_;
    std::vector<double> betas_;
};

/// Process-wide cache of breakpoint tables, one per alphabet size.
/// Safe to call from multiple threads.
inline const BreakpointTable& breakpoint_table(int alphabet_size) {
    static std::mutex mutex;
    static std::map<int, BreakpointTable> cache;
    std::scoped_lock lock(mutex);
    auto it = cache.find(alphabet_size);
    if (it == cache.end()) {
        it = cache.emplace(alphabet_size, BreakpointTable(alphabet_size)).first;
    }
    return it->second;
}

/// Piecewise aggregate approximation: per-frame means. `length` keeps the
/// original series length so downstream distances can rescale.
struct PaaVector {
    std::vector<double> means;
    std::size_t length = 0;

    std::size_t frames() const { return means.size(); }

    bool operator==(const PaaVector&) const = default;
};

namespace detail {

inline void require_divides(std::size_t n, std::size_t frames, const char* what) {
    if (frames == 0 || n % frames != 0) {
        throw std::invalid_argument(std::string(what) + ": frame count N=" +
                                    std::to_string(frames) + " must divide n=" +
                                    std::to_string(n));
    }
}

}  // namespace detail

inline PaaVector paa(std::span<const double> values, std::size_t frames,
                     OpCounts* ops = nullptr) {
    detail::require_divides(values.size(), frames, "paa");
    const std::size_t m = values.size() / frames;
    PaaVector out;
    out.length = values.size();
    out.means.resize(frames);
    const double inv_m = 1.0 / static_cast<double>(m);
    for (std::size_t f = 0; f < frames; ++f) {
        double sum = 0.0;
        for (std::size_t j = 0; j < m; ++j) sum += values[f * m + j];
        out.means[f] = sum * inv_m;
    }
    if (ops) {
        ops->adds += values.size() - frames;
        ops->mults += frames;
    }
    return out;
}

inline PaaVector paa(const TimeSeries& s, std::size_t frames, OpCounts* ops = nullptr) {
    return paa(std::span<const double>(s.values), frames, ops);
}

/// A SAX word: one symbol per frame, each in [0, alphabet_size).
struct SaxWord {
    std::vector<std::uint8_t> symbols;
    int alphabet_size = 0;
    std::size_t length = 0;

    std::size_t frames() const { return symbols.size(); }

    bool operator==(const SaxWord&) const = default;
};

/// Map per-frame means to symbols. A mean in [beta_k, beta_{k+1}) gets
/// symbol k+1 against the implicit beta_0 = -inf; equivalently, the symbol
/// is the number of breakpoints at or below the mean.
inline SaxWord symbolize(const PaaVector& p, const BreakpointTable& t,
                         OpCounts* ops = nullptr) {
    SaxWord w;
    w.alphabet_size = t.alphabet_size();
    w.length = p.length;
    w.symbols.resize(p.frames());
    const std::vector<double>& betas = t.betas();
    for (std::size_t f = 0; f < p.frames(); ++f) {
        const double v = p.means[f];
        std::size_t lo = 0, hi = betas.size();
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (betas[mid] <= v) {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        w.symbols[f] = static_cast<std::uint8_t>(lo);
    }
    if (ops) ops->lookups += p.frames();
    return w;
}

inline char symbol_letter(std::uint8_t symbol) {
    return static_cast<char>('a' + symbol);
}

/// Distance contribution of one symbol pair: zero for identical or adjacent
/// symbols, otherwise the gap between the closest edges of their intervals.
inline double cell_dist(int i, int j, const BreakpointTable& t) {
    const int a = t.alphabet_size();
    if (i < 0 || i >= a || j < 0 || j >= a) {
        throw std::invalid_argument("cell_dist: symbol outside [0, " +
                                    std::to_string(a) + ")");
    }
    if (i > j) std::swap(i, j);
    if (j - i <= 1) return 0.0;
    return t.betas()[static_cast<std::size_t>(j) - 1] - t.betas()[static_cast<std::size_t>(i)];
}

/// Lower bound on the euclidean distance between the two series the words
/// were derived from.
inline double mindist(const SaxWord& x, const SaxWord& y, const BreakpointTable& t,
                      OpCounts* ops = nullptr) {
    if (x.frames() != y.frames() || x.length != y.length) {
        throw std::invalid_argument("mindist: word shapes differ");
    }
    if (x.alphabet_size != t.alphabet_size() || y.alphabet_size != t.alphabet_size()) {
        throw std::invalid_argument("mindist: alphabet size mismatch");
    }
    double sum = 0.0;
    for (std::size_t f = 0; f < x.frames(); ++f) {
        const double c = cell_dist(x.symbols[f], y.symbols[f], t);
        sum += c * c;
    }
    if (ops) {
        ops->lookups += x.frames();
        ops->mults += x.frames() + 1;
        ops->adds += x.frames();
        ops->sqrts += 1;
    }
    const double scale = static_cast<double>(x.length) / static_cast<double>(x.frames());
    return std::sqrt(scale * sum);
}

/// Frame-space distance; lower-bounds euclidean and upper-bounds mindist.
inline double paa_dist(const PaaVector& x, const PaaVector& y, OpCounts* ops = nullptr) {
    if (x.frames() != y.frames() || x.length != y.length) {
        throw std::invalid_argument("paa_dist: shapes differ");
    }
    double sum = 0.0;
    for (std::size_t f = 0; f < x.frames(); ++f) {
        const double d = x.means[f] - y.means[f];
        sum += d * d;
    }
    if (ops) {
        ops->adds += 2 * x.frames();
        ops->mults += x.frames() + 1;
        ops->sqrts += 1;
    }
    const double scale = static_cast<double>(x.length) / static_cast<double>(x.frames());
    return std::sqrt(scale * sum);
}

}  // namespace fastsax
