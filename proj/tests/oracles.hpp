#pragma once

#include "pplot/summarize.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

// Naive per-observation oracles. They share no code with the library.
namespace pplot::oracles {

inline std::vector<std::size_t> naive_histogram(std::span<const double> values, double lo, double hi, std::size_t bins,
                                         std::size_t& outside) {
    std::vector<double> edges(bins + 1);
    for (std::size_t i = 0; i < bins; ++i) edges[i] = lo + (hi - lo) / static_cast<double>(bins) * static_cast<double>(i);
    edges[bins] = hi;
    std::vector<std::size_t> counts(bins, 0);
    outside = 0;
    for (double v : values) {
        bool placed = false;
        for (std::size_t b = 0; b < bins; ++b) {
            const bool last = b + 1 == bins;
            if (v >= edges[b] && (v < edges[b + 1] || (last && v == hi))) {
                ++counts[b];
                placed = true;
                break;
            }
        }
        if (!placed) ++outside;
    }
    return counts;
}

/// Literal floor((v - lo) / width) rule; exact when values and widths are dyadic.
inline std::vector<std::size_t> floor_histogram(std::span<const double> values, double lo, double hi, std::size_t bins) {
    std::vector<std::size_t> counts(bins, 0);
    const double w = (hi - lo) / static_cast<double>(bins);
    for (double v : values) {
        if (v < lo || v > hi) continue;
        auto b = static_cast<std::size_t>(std::floor((v - lo) / w));
        if (b >= bins) b = bins - 1;
        ++counts[b];
    }
    return counts;
}

inline std::vector<std::size_t> naive_time_bins(std::span<const TimeMs> times, TimeInterval iv, std::size_t bins) {
    std::vector<std::size_t> counts(bins, 0);
    const auto w = static_cast<__int128>(iv.width());
    for (TimeMs t : times) {
        if (t < iv.start || t >= iv.end) continue;
        for (std::size_t b = 0; b < bins; ++b) {
            // t is in bin b iff b*W <= (t-s)*B < (b+1)*W
            const __int128 scaled = static_cast<__int128>(t - iv.start) * static_cast<__int128>(bins);
            if (scaled >= w * static_cast<__int128>(b) && scaled < w * static_cast<__int128>(b + 1)) {
                ++counts[b];
                break;
            }
        }
    }
    return counts;
}

inline std::vector<double> naive_window_means(std::span<const double> v, std::size_t window) {
    const std::size_t k = (window - 1) / 2;
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::size_t a = i >= k ? i - k : 0;
        const std::size_t b = std::min(v.size() - 1, i + k);
        __float128 sum = 0;
        for (std::size_t j = a; j <= b; ++j) sum += v[j];
        out.push_back(static_cast<double>(sum / static_cast<__float128>(b - a + 1)));
    }
    return out;
}

inline double naive_quantile(std::vector<double> v, double p) {
    std::sort(v.begin(), v.end());
    const double pos = p * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = static_cast<std::size_t>(std::ceil(pos));
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}


/// Cell (time bin, value bin) per observation, using the two oracles above.
inline std::vector<std::size_t> naive_density(std::span<const TimeMs> times, std::span<const double> values,
                                              TimeInterval iv, double lo, double hi, std::size_t nx, std::size_t ny) {
    std::vector<std::size_t> cells(nx * ny, 0);
    for (std::size_t i = 0; i < times.size(); ++i) {
        std::size_t unused = 0;
        const auto tb = naive_time_bins(times.subspan(i, 1), iv, nx);
        const auto vb = naive_histogram(values.subspan(i, 1), lo, hi, ny, unused);
        const auto ti = static_cast<std::size_t>(std::find(tb.begin(), tb.end(), 1u) - tb.begin());
        const auto vi = static_cast<std::size_t>(std::find(vb.begin(), vb.end(), 1u) - vb.begin());
        if (ti < nx && vi < ny) ++cells[ti * ny + vi];
    }
    return cells;
}
}  // namespace pplot::oracles
