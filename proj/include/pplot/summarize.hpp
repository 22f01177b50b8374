#pragma once

#include "pplot/timeline.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pplot {

enum class ValueKind { Continuous, Categorical, Event };

[[nodiscard]] std::string_view to_string(ValueKind kind);

/**
 * One variable's observations, stored column-wise and sorted by time.
 *
 * Continuous series fill `values`; categorical series fill `codes`, each an
 * index into `categories`; event series carry timestamps only.
 */
struct Series {
    std::string name;
    ValueKind kind = ValueKind::Continuous;
    std::optional<std::string> units;
    std::vector<std::string> categories;
    std::vector<TimeMs> times;
    std::vector<double> values;
    std::vector<std::uint32_t> codes;

    [[nodiscard]] std::size_t size() const { return times.size(); }
};

/// Observations of a series whose timestamps fall in [interval.start, interval.end).
class SeriesSlice {
public:
    SeriesSlice(const Series& series, TimeInterval interval, std::size_t begin, std::size_t end)
        : series_(&series), interval_(interval), begin_(begin), end_(end) {}

    [[nodiscard]] const Series& series() const { return *series_; }
    [[nodiscard]] TimeInterval interval() const { return interval_; }
    [[nodiscard]] std::size_t begin_index() const { return begin_; }
    [[nodiscard]] std::size_t end_index() const { return end_; }
    [[nodiscard]] std::size_t size() const { return end_ - begin_; }
    [[nodiscard]] bool empty() const { return begin_ == end_; }

    [[nodiscard]] std::span<const TimeMs> times() const {
        return std::span<const TimeMs>(series_->times).subspan(begin_, size());
    }
    /// Empty for non-continuous series.
    [[nodiscard]] std::span<const double> values() const {
        if (series_->values.empty()) return {};
        return std::span<const double>(series_->values).subspan(begin_, size());
    }
    /// Empty for non-categorical series.
    [[nodiscard]] std::span<const std::uint32_t> codes() const {
        if (series_->codes.empty()) return {};
        return std::span<const std::uint32_t>(series_->codes).subspan(begin_, size());
    }

private:
    const Series* series_;
    TimeInterval interval_;
    std::size_t begin_;
    std::size_t end_;
};

enum class PlotType { TVAP, TAP, VAP, NAP };

[[nodiscard]] std::string_view to_string(PlotType type);
[[nodiscard]] std::optional<PlotType> plot_type_from_string(std::string_view text);

/// 0 for TVAP, 1 for TAP and VAP, 2 for NAP.
[[nodiscard]] int summarization_level(PlotType type);

struct ValueDomain {
    double lo = 0.0;
    double hi = 1.0;

    friend bool operator==(const ValueDomain&, const ValueDomain&) = default;
};

namespace plots {

/// Individual observations (TVAP). `values` holds category codes for
/// categorical series and zeros for events.
struct RawMarks {
    std::vector<TimeMs> times;
    std::vector<double> values;
};

/// Moving-window mean/min/max per observation (TVAP).
struct Envelope {
    std::vector<TimeMs> times;
    std::vector<double> mean;
    std::vector<double> min;
    std::vector<double> max;
};

/// Equal-width value bins (VAP).
struct Histogram {
    std::vector<double> edges;
    std::vector<std::size_t> counts;
    std::size_t out_of_domain = 0;
};

/// Per-category frequencies in the series' declared category order (VAP).
struct CategoryCounts {
    std::vector<std::string> categories;
    std::vector<std::size_t> counts;
};

/// Equal-width time bins (TAP).
struct BinCounts {
    std::vector<TimeMs> edges;
    std::vector<std::size_t> counts;
};

/// Time x value count matrix (NAP), row-major: cells[time_bin * ny + value_bin].
struct DensityGrid {
    std::size_t nx = 0;
    std::size_t ny = 0;
    std::vector<std::size_t> cells;

    [[nodiscard]] std::size_t at(std::size_t time_bin, std::size_t value_bin) const {
        return cells[time_bin * ny + value_bin];
    }
    [[nodiscard]] std::size_t max_count() const;
    [[nodiscard]] std::size_t total() const;
};

}  // namespace plots

using PlotData = std::variant<plots::RawMarks, plots::Envelope, plots::Histogram, plots::CategoryCounts,
                              plots::BinCounts, plots::DensityGrid>;

struct AnnotationStats {
    std::size_t count = 0;
    std::optional<double> mean;
    std::optional<double> min;
    std::optional<double> max;
    std::map<double, double> quantiles;
};

enum class SummarizationPath { ValuePreserving, TimePreserving };

struct PlotPolicy {
    struct Fixed {
        PlotType type = PlotType::TVAP;
        friend bool operator==(const Fixed&, const Fixed&) = default;
    };
    struct Auto {
        SummarizationPath path = SummarizationPath::ValuePreserving;
        std::size_t t1 = 50;
        std::size_t t2 = 5000;
        friend bool operator==(const Auto&, const Auto&) = default;
    };

    std::variant<Fixed, Auto> mode = Auto{};

    friend bool operator==(const PlotPolicy&, const PlotPolicy&) = default;
};

enum class SummarizeErrc { WrongValueKind, InvalidArgument };

class SummarizeError : public std::runtime_error {
public:
    SummarizeError(SummarizeErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    [[nodiscard]] SummarizeErrc code() const noexcept { return code_; }

private:
    SummarizeErrc code_;
};

[[nodiscard]] SeriesSlice slice(const Series& series, TimeInterval interval);

/// Equal-width bins over [lo, hi]; a value equal to hi lands in the last bin.
/// Values outside the domain are tallied in out_of_domain.
[[nodiscard]] plots::Histogram histogram(const SeriesSlice& slice, ValueDomain domain, std::size_t bins);

[[nodiscard]] plots::CategoryCounts category_counts(const SeriesSlice& slice);

[[nodiscard]] plots::BinCounts time_bin_counts(const SeriesSlice& slice, TimeInterval interval, std::size_t bins);

/// Index-window envelope: sample i aggregates observations [i-k, i+k],
/// k = (window-1)/2, truncated at the ends. `window` must be odd.
[[nodiscard]] plots::Envelope moving_average_envelope(const SeriesSlice& slice, std::size_t window);

[[nodiscard]] plots::DensityGrid density_grid(const SeriesSlice& slice, TimeInterval interval, ValueDomain domain,
                                              std::size_t nx, std::size_t ny);

/// Time x category grid for categorical series (one value row per category),
/// or a single-row time grid for event series.
[[nodiscard]] plots::DensityGrid category_grid(const SeriesSlice& slice, TimeInterval interval, std::size_t nx);

[[nodiscard]] plots::RawMarks raw_marks(const SeriesSlice& slice);

inline constexpr double kDefaultQuantiles[] = {0.25, 0.5, 0.75};

/// Linear interpolation between order statistics at position p*(n-1).
[[nodiscard]] AnnotationStats summary_stats(const SeriesSlice& slice,
                                            std::span<const double> probabilities = kDefaultQuantiles);

[[nodiscard]] PlotType select_plot_type(const PlotPolicy& policy, std::size_t n);

}  // namespace pplot
