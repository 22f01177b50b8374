#pragma once

#include "pplot/ingest.hpp"
#include "pplot/summarize.hpp"
#include "pplot/timeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace pplot::testing {

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline double uniform_real(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

struct LayoutShape {
    std::size_t zones_min = 3;
    std::size_t zones_max = 7;
    TimeMs width_max = 500;
    TimeMs min_width_max = 20;
    double lock_probability = 0.0;
};

/// Random valid layout with small integer geometry, so brute-force oracles
/// can scan every candidate position.
inline ZoneLayout random_layout(Rng& rng, const LayoutShape& shape = {}) {
    const auto n = static_cast<std::size_t>(uniform(rng, static_cast<std::int64_t>(shape.zones_min),
                                                    static_cast<std::int64_t>(shape.zones_max)));
    const TimeMs min_width = uniform(rng, 1, shape.min_width_max);
    const auto focus = static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(n) - 1));
    std::vector<Zone> zones;
    TimeMs t = uniform(rng, -1000, 1000);
    for (std::size_t i = 0; i < n; ++i) {
        const TimeMs w = uniform(rng, min_width, min_width + shape.width_max);
        zones.push_back({i == focus ? ZoneKind::Focus : ZoneKind::Context, {t, t + w}});
        t += w;
    }
    const TimeInterval domain{zones.front().interval.start - uniform(rng, 0, 300),
                              zones.back().interval.end + uniform(rng, 1, 300)};
    auto layout = ZoneLayout::create(zones, domain, min_width);
    for (std::size_t b = 0; b < layout.boundary_count(); ++b)
        if (coin(rng, shape.lock_probability)) layout = layout.toggle_lock(b);
    return layout;
}

inline InteractionEvent random_event(Rng& rng, const ZoneLayout& layout) {
    const auto nb = static_cast<std::int64_t>(layout.boundary_count());
    const auto span = layout.axis_domain();
    const TimeMs reach = std::max<TimeMs>(2000, span.width() / 4);
    switch (uniform(rng, 0, 9)) {
    case 0:
    case 1:
    case 2:
    case 3:
        return events::ResizeBoundary{static_cast<std::size_t>(uniform(rng, 0, nb - 1)),
                                      uniform(rng, span.start - reach, span.end + reach)};
    case 4:
        return events::ToggleLock{static_cast<std::size_t>(uniform(rng, 0, nb - 1))};
    case 5:
    case 6:
        return events::Pan{uniform(rng, -reach, reach)};
    case 7:
    case 8: {
        const double f = std::exp(uniform_real(rng, -2.5, 2.5));
        return events::Zoom{f, uniform(rng, span.start - reach / 4, span.end + reach / 4)};
    }
    default:
        return events::Hover{coin(rng) ? std::optional<TimeMs>(uniform(rng, span.start, span.end)) : std::nullopt};
    }
}

/// Whether boundaries keep the minimum width and the representable range.
inline bool admissible(const std::vector<TimeMs>& b, TimeMs min_width) {
    for (std::size_t i = 0; i + 1 < b.size(); ++i)
        if (b[i + 1] - b[i] < min_width) return false;
    for (TimeMs t : b)
        if (t < -kTimeLimit || t > kTimeLimit) return false;
    return true;
}

/// Brute-force pan: try every candidate delta from 0 toward `delta` and keep
/// the largest admissible magnitude.
inline std::vector<TimeMs> pan_oracle(const ZoneLayout& layout, TimeMs delta) {
    const TimeMs step = delta >= 0 ? 1 : -1;
    std::vector<TimeMs> best = layout.boundaries();
    for (TimeMs d = step; d != delta + step; d += step) {
        std::vector<TimeMs> cand = layout.boundaries();
        for (std::size_t i = 0; i < cand.size(); ++i)
            if (!layout.locked(i)) cand[i] += d;
        if (!admissible(cand, layout.min_zone_width())) break;
        best = cand;
    }
    return best;
}

/// Boundaries after dragging boundary j by exactly d with the push rule:
/// every boundary from j to just before the first lock in the direction of
/// motion shifts by d; the lock holds.
inline std::vector<TimeMs> push_shift(const ZoneLayout& layout, std::size_t j, TimeMs d) {
    std::vector<TimeMs> b = layout.boundaries();
    if (d > 0) {
        for (std::size_t i = j; i < b.size() && (i == j || !layout.locked(i)); ++i) b[i] += d;
    } else if (d < 0) {
        for (std::size_t i = j + 1; i-- > 0;) {
            if (i != j && layout.locked(i)) break;
            b[i] += d;
        }
    }
    return b;
}

/// Brute-force drag: scan positions from the current boundary toward the
/// (domain-clamped) target and keep the furthest admissible one.
inline std::vector<TimeMs> resize_oracle(const ZoneLayout& layout, std::size_t j, TimeMs target) {
    const auto dom = layout.axis_domain();
    target = std::clamp(target, dom.start, dom.end);
    const TimeMs from = layout.boundary(j);
    std::vector<TimeMs> best = layout.boundaries();
    if (target == from) return best;
    const TimeMs step = target > from ? 1 : -1;
    for (TimeMs p = from + step; p != target + step; p += step) {
        auto cand = push_shift(layout, j, p - from);
        if (!admissible(cand, layout.min_zone_width())) break;
        best = std::move(cand);
    }
    return best;
}

/// Series with random sorted timestamps (ties allowed) and values.
inline Series random_continuous(Rng& rng, std::size_t n, TimeMs t0 = 0, TimeMs span = 100000) {
    Series s;
    s.name = "x";
    s.kind = ValueKind::Continuous;
    for (std::size_t i = 0; i < n; ++i) {
        s.times.push_back(uniform(rng, t0, t0 + span - 1));
        s.values.push_back(coin(rng, 0.1) ? std::round(uniform_real(rng, -50, 50)) : uniform_real(rng, -50, 50));
    }
    std::sort(s.times.begin(), s.times.end());
    return s;
}

inline Series series_of(std::vector<TimeMs> times, std::vector<double> values) {
    Series s;
    s.name = "x";
    s.kind = ValueKind::Continuous;
    s.times = std::move(times);
    s.values = std::move(values);
    return s;
}

inline SeriesSlice whole(const Series& s) {
    return slice(s, {s.times.empty() ? 0 : s.times.front(), s.times.empty() ? 1 : s.times.back() + 1});
}

}  // namespace pplot::testing
