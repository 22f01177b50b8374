#include "pplot/summarize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pplot {

namespace {

void require_continuous(const SeriesSlice& s, const char* op) {
    if (s.series().kind != ValueKind::Continuous) {
        throw SummarizeError(SummarizeErrc::WrongValueKind,
                             std::string(op) + " needs a continuous series, '" + s.series().name + "' is " +
                                 std::string(to_string(s.series().kind)));
    }
}

void require_domain(ValueDomain d) {
    if (!(d.lo < d.hi) || !std::isfinite(d.lo) || !std::isfinite(d.hi))
        throw SummarizeError(SummarizeErrc::InvalidArgument, "value domain must satisfy lo < hi");
}

std::vector<double> value_edges(ValueDomain d, std::size_t bins) {
    std::vector<double> edges(bins + 1);
    const double width = (d.hi - d.lo) / static_cast<double>(bins);
    for (std::size_t i = 0; i < bins; ++i) edges[i] = d.lo + width * static_cast<double>(i);
    edges[bins] = d.hi;
    return edges;
}

/// Bin b holds edges[b] <= v < edges[b+1]; the last bin also holds v == hi.
std::optional<std::size_t> value_bin(double v, std::span<const double> edges) {
    const std::size_t bins = edges.size() - 1;
    if (!(v >= edges.front() && v <= edges.back())) return std::nullopt;
    const double width = (edges.back() - edges.front()) / static_cast<double>(bins);
    auto idx = std::min(static_cast<std::size_t>(std::floor((v - edges.front()) / width)), bins - 1);
    // The floor estimate can be off by one near an edge due to rounding.
    while (idx > 0 && v < edges[idx]) --idx;
    while (idx + 1 < bins && v >= edges[idx + 1]) ++idx;
    return idx;
}

/// Time bin index for t in [start, end), or nullopt when outside.
std::optional<std::size_t> time_bin(TimeMs t, TimeInterval iv, std::size_t bins) {
    if (!iv.contains(t)) return std::nullopt;
    // Integer arithmetic: bin = floor((t - start) * bins / width).
    const auto offset = static_cast<__int128>(t - iv.start);
    const auto idx = static_cast<std::size_t>(offset * static_cast<__int128>(bins) / iv.width());
    return std::min(idx, bins - 1);
}

}  // namespace

std::string_view to_string(ValueKind kind) {
    switch (kind) {
        case ValueKind::Continuous: return "Continuous";
        case ValueKind::Categorical: return "Categorical";
        case ValueKind::Event: return "Event";
    }
    return "Unknown";
}

std::string_view to_string(PlotType type) {
    switch (type) {
        case PlotType::TVAP: return "TVAP";
        case PlotType::TAP: return "TAP";
        case PlotType::VAP: return "VAP";
        case PlotType::NAP: return "NAP";
    }
    return "Unknown";
}

std::optional<PlotType> plot_type_from_string(std::string_view text) {
    for (auto t : {PlotType::TVAP, PlotType::TAP, PlotType::VAP, PlotType::NAP}) {
        if (to_string(t) == text) return t;
    }
    return std::nullopt;
}

int summarization_level(PlotType type) {
    switch (type) {
        case PlotType::TVAP: return 0;
        case PlotType::TAP:
        case PlotType::VAP: return 1;
        case PlotType::NAP: return 2;
    }
    return 0;
}

namespace plots {

std::size_t DensityGrid::max_count() const {
    return cells.empty() ? 0 : *std::max_element(cells.begin(), cells.end());
}

std::size_t DensityGrid::total() const { return std::accumulate(cells.begin(), cells.end(), std::size_t{0}); }

}  // namespace plots

SeriesSlice slice(const Series& series, TimeInterval interval) {
    const auto& t = series.times;
    const auto first = std::lower_bound(t.begin(), t.end(), interval.start);
    const auto last = std::lower_bound(first, t.end(), interval.end);
    return SeriesSlice(series, interval, static_cast<std::size_t>(first - t.begin()),
                       static_cast<std::size_t>(last - t.begin()));
}

plots::Histogram histogram(const SeriesSlice& s, ValueDomain domain, std::size_t bins) {
    require_continuous(s, "histogram");
    require_domain(domain);
    if (bins == 0) throw SummarizeError(SummarizeErrc::InvalidArgument, "histogram needs at least one bin");

    plots::Histogram h;
    h.edges = value_edges(domain, bins);
    h.counts.assign(bins, 0);
    for (double v : s.values()) {
        if (auto b = value_bin(v, h.edges)) {
            ++h.counts[*b];
        } else {
            ++h.out_of_domain;
        }
    }
    return h;
}

plots::CategoryCounts category_counts(const SeriesSlice& s) {
    const auto& series = s.series();
    plots::CategoryCounts out;
    if (series.kind == ValueKind::Categorical) {
        out.categories = series.categories;
        out.counts.assign(series.categories.size(), 0);
        for (auto code : s.codes()) {
            if (code < out.counts.size()) ++out.counts[code];
        }
    } else if (series.kind == ValueKind::Event) {
        out.categories = {series.name};
        out.counts = {s.size()};
    } else {
        throw SummarizeError(SummarizeErrc::WrongValueKind, "category counts need a categorical or event series");
    }
    return out;
}

plots::BinCounts time_bin_counts(const SeriesSlice& s, TimeInterval interval, std::size_t bins) {
    if (bins == 0) throw SummarizeError(SummarizeErrc::InvalidArgument, "time binning needs at least one bin");
    if (!interval.valid()) throw SummarizeError(SummarizeErrc::InvalidArgument, "time interval must be non-empty");

    plots::BinCounts out;
    out.edges.resize(bins + 1);
    // edges[i] = start + ceil(width * i / bins), so that edges[b] <= t < edges[b+1]
    // exactly when floor((t - start) * bins / width) == b.
    const auto width = static_cast<__int128>(interval.width());
    const auto n = static_cast<__int128>(bins);
    for (std::size_t i = 0; i <= bins; ++i) {
        const auto off = (width * static_cast<__int128>(i) + n - 1) / n;
        out.edges[i] = interval.start + static_cast<TimeMs>(off);
    }
    out.counts.assign(bins, 0);
    for (TimeMs t : s.times()) {
        if (auto b = time_bin(t, interval, bins)) ++out.counts[*b];
    }
    return out;
}

plots::Envelope moving_average_envelope(const SeriesSlice& s, std::size_t window) {
    require_continuous(s, "moving_average_envelope");
    if (window == 0 || window % 2 == 0)
        throw SummarizeError(SummarizeErrc::InvalidArgument, "envelope window must be a positive odd number");

    const auto times = s.times();
    const auto values = s.values();
    const std::size_t n = values.size();
    const std::size_t k = (window - 1) / 2;

    plots::Envelope env;
    env.times.assign(times.begin(), times.end());
    env.mean.resize(n);
    env.min.resize(n);
    env.max.resize(n);

    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i >= k ? i - k : 0;
        const std::size_t hi = std::min(n - 1, i + k);
        // Neumaier summation; windows that nearly cancel stay accurate.
        double sum = 0.0;
        double carry = 0.0;
        double mn = values[lo];
        double mx = values[lo];
        for (std::size_t j = lo; j <= hi; ++j) {
            const double t = sum + values[j];
            carry += std::fabs(sum) >= std::fabs(values[j]) ? (sum - t) + values[j] : (values[j] - t) + sum;
            sum = t;
            mn = std::min(mn, values[j]);
            mx = std::max(mx, values[j]);
        }
        const double mean = (sum + carry) / static_cast<double>(hi - lo + 1);
        env.mean[i] = std::clamp(mean, mn, mx);
        env.min[i] = mn;
        env.max[i] = mx;
    }
    return env;
}

plots::DensityGrid density_grid(const SeriesSlice& s, TimeInterval interval, ValueDomain domain, std::size_t nx,
                                std::size_t ny) {
    require_continuous(s, "density_grid");
    require_domain(domain);
    if (nx == 0 || ny == 0) throw SummarizeError(SummarizeErrc::InvalidArgument, "density grid needs nx, ny >= 1");
    if (!interval.valid()) throw SummarizeError(SummarizeErrc::InvalidArgument, "time interval must be non-empty");

    plots::DensityGrid g;
    g.nx = nx;
    g.ny = ny;
    g.cells.assign(nx * ny, 0);
    const auto edges = value_edges(domain, ny);
    const auto times = s.times();
    const auto values = s.values();
    for (std::size_t i = 0; i < times.size(); ++i) {
        const auto tb = time_bin(times[i], interval, nx);
        const auto vb = value_bin(values[i], edges);
        if (tb && vb) ++g.cells[*tb * ny + *vb];
    }
    return g;
}

plots::DensityGrid category_grid(const SeriesSlice& s, TimeInterval interval, std::size_t nx) {
    const auto& series = s.series();
    if (series.kind == ValueKind::Continuous)
        throw SummarizeError(SummarizeErrc::WrongValueKind, "category grid needs a categorical or event series");
    if (nx == 0) throw SummarizeError(SummarizeErrc::InvalidArgument, "category grid needs nx >= 1");
    if (!interval.valid()) throw SummarizeError(SummarizeErrc::InvalidArgument, "time interval must be non-empty");

    plots::DensityGrid g;
    g.nx = nx;
    g.ny = series.kind == ValueKind::Categorical ? std::max<std::size_t>(series.categories.size(), 1) : 1;
    g.cells.assign(g.nx * g.ny, 0);
    const auto times = s.times();
    const auto codes = s.codes();
    for (std::size_t i = 0; i < times.size(); ++i) {
        const auto tb = time_bin(times[i], interval, nx);
        if (!tb) continue;
        const std::size_t row = codes.empty() ? 0 : codes[i];
        if (row < g.ny) ++g.cells[*tb * g.ny + row];
    }
    return g;
}

plots::RawMarks raw_marks(const SeriesSlice& s) {
    plots::RawMarks out;
    const auto times = s.times();
    out.times.assign(times.begin(), times.end());
    switch (s.series().kind) {
        case ValueKind::Continuous: {
            const auto v = s.values();
            out.values.assign(v.begin(), v.end());
            break;
        }
        case ValueKind::Categorical:
            for (auto c : s.codes()) out.values.push_back(static_cast<double>(c));
            break;
        case ValueKind::Event:
            out.values.assign(times.size(), 0.0);
            break;
    }
    return out;
}

AnnotationStats summary_stats(const SeriesSlice& s, std::span<const double> probabilities) {
    AnnotationStats stats;
    stats.count = s.size();
    if (s.series().kind != ValueKind::Continuous || s.empty()) return stats;

    const auto values = s.values();
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());

    double sum = 0.0;
    for (double v : values) sum += v;
    const double n = static_cast<double>(sorted.size());
    stats.mean = std::clamp(sum / n, sorted.front(), sorted.back());
    stats.min = sorted.front();
    stats.max = sorted.back();

    for (double p : probabilities) {
        const double pc = std::clamp(p, 0.0, 1.0);
        const double pos = pc * (n - 1.0);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const auto hi = std::min(lo + 1, sorted.size() - 1);
        const double frac = pos - static_cast<double>(lo);
        stats.quantiles[p] = sorted[lo] + frac * (sorted[hi] - sorted[lo]);
    }
    return stats;
}

PlotType select_plot_type(const PlotPolicy& policy, std::size_t n) {
    if (const auto* fixed = std::get_if<PlotPolicy::Fixed>(&policy.mode)) return fixed->type;
    const auto& a = std::get<PlotPolicy::Auto>(policy.mode);
    if (n <= a.t1) return PlotType::TVAP;
    if (n <= a.t2) return a.path == SummarizationPath::ValuePreserving ? PlotType::VAP : PlotType::TAP;
    return PlotType::NAP;
}

}  // namespace pplot
