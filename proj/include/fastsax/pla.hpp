#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fastsax/ops.hpp"
#include "fastsax/sax.hpp"
#include "fastsax/series.hpp"

namespace fastsax {

/// One least-squares line segment over a frame, in the frame's local
/// coordinates (abscissa 0 .. frame_length-1).
struct PlaSegment {
    double slope = 0.0;
    double intercept = 0.0;

    bool operator==(const PlaSegment&) const = default;
};

/// Piecewise linear approximation of a series, one segment per frame.
struct PlaApprox {
    std::vector<PlaSegment> segments;
    std::size_t length = 0;

    std::size_t frames() const { return segments.size(); }
    std::size_t frame_length() const { return length / segments.size(); }

    bool operator==(const PlaApprox&) const = default;
};

/// Fit the optimal least-squares line per frame. Ordinates are centered
/// before the cross sum so constant frames come out with slope 0; frames of
/// length 1 are a single point and get slope 0, intercept equal to it.
inline PlaApprox fit_pla(std::span<const double> values, std::size_t frames,
                         OpCounts* ops = nullptr) {
    detail::require_divides(values.size(), frames, "fit_pla");
    const std::size_t m = values.size() / frames;
    PlaApprox out;
    out.length = values.size();
    out.segments.resize(frames);

    if (m == 1) {
        for (std::size_t f = 0; f < frames; ++f) {
            out.segments[f] = PlaSegment{0.0, values[f]};
        }
        return out;
    }

    const double md = static_cast<double>(m);
    const double xbar = (md - 1.0) / 2.0;
    const double sxx = md * (md * md - 1.0) / 12.0;
    for (std::size_t f = 0; f < frames; ++f) {
        const std::span<const double> y = values.subspan(f * m, m);
        double sy = 0.0;
        for (std::size_t j = 0; j < m; ++j) sy += y[j];
        const double ybar = sy / md;
        double sxy = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            sxy += (static_cast<double>(j) - xbar) * (y[j] - ybar);
        }
        const double slope = sxy / sxx;
        out.segments[f] = PlaSegment{slope, ybar - slope * xbar};
    }
    if (ops) {
        ops->adds += frames * (4 * m);
        ops->mults += frames * (m + 3);
    }
    return out;
}

inline PlaApprox fit_pla(const TimeSeries& s, std::size_t frames, OpCounts* ops = nullptr) {
    return fit_pla(std::span<const double>(s.values), frames, ops);
}

/// Expand the approximation back to a full-length series.
inline std::vector<double> evaluate(const PlaApprox& p, OpCounts* ops = nullptr) {
    const std::size_t m = p.frame_length();
    std::vector<double> out(p.length);
    for (std::size_t f = 0; f < p.frames(); ++f) {
        const PlaSegment& seg = p.segments[f];
        for (std::size_t j = 0; j < m; ++j) {
            out[f * m + j] = seg.slope * static_cast<double>(j) + seg.intercept;
        }
    }
    if (ops) {
        ops->mults += p.length;
        ops->adds += p.length;
    }
    return out;
}

/// Euclidean distance between a series and its piecewise linear fit.
inline double residual(std::span<const double> values, const PlaApprox& p,
                       OpCounts* ops = nullptr) {
    if (values.size() != p.length) {
        throw std::invalid_argument("residual: series length " +
                                    std::to_string(values.size()) +
                                    " does not match approximation length " +
                                    std::to_string(p.length));
    }
    const std::vector<double> fitted = evaluate(p, ops);
    return euclidean(values, fitted, ops);
}

inline double residual(const TimeSeries& s, const PlaApprox& p, OpCounts* ops = nullptr) {
    return residual(std::span<const double>(s.values), p, ops);
}

}  // namespace fastsax
