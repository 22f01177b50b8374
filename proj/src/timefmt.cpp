#include "pplot/timefmt.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>

namespace pplot {

namespace {

constexpr TimeMs kMsPerDay = 86'400'000;

bool digits(std::string_view s, std::size_t pos, std::size_t n, int& out) {
    if (pos + n > s.size()) return false;
    int v = 0;
    for (std::size_t i = pos; i < pos + n; ++i) {
        const char c = s[i];
        if (c < '0' || c > '9') return false;
        v = v * 10 + (c - '0');
    }
    out = v;
    return true;
}

std::optional<TimeMs> days_to_ms(int y, int m, int d) {
    using namespace std::chrono;
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) return std::nullopt;
    return static_cast<TimeMs>(sys_days{ymd}.time_since_epoch().count()) * kMsPerDay;
}

std::optional<TimeMs> parse_date(std::string_view s) {
    int y = 0, m = 0, d = 0;
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    if (!digits(s, 0, 4, y) || !digits(s, 5, 2, m) || !digits(s, 8, 2, d)) return std::nullopt;
    return days_to_ms(y, m, d);
}

std::optional<TimeMs> parse_iso(std::string_view s) {
    if (s.size() == 10) return parse_date(s);
    if (s.size() < 16) return std::nullopt;
    auto date = parse_date(s.substr(0, 10));
    if (!date || (s[10] != 'T' && s[10] != ' ')) return std::nullopt;

    int hh = 0, mm = 0, ss = 0;
    if (!digits(s, 11, 2, hh) || s[13] != ':' || !digits(s, 14, 2, mm)) return std::nullopt;
    std::size_t pos = 16;
    TimeMs millis = 0;
    if (pos < s.size() && s[pos] == ':') {
        if (!digits(s, pos + 1, 2, ss)) return std::nullopt;
        pos += 3;
        if (pos < s.size() && (s[pos] == '.' || s[pos] == ',')) {
            ++pos;
            int scale = 100;
            const std::size_t frac_start = pos;
            while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
                millis += (s[pos] - '0') * scale;
                scale /= 10;
                ++pos;
            }
            if (pos == frac_start) return std::nullopt;
        }
    }
    if (hh > 23 || mm > 59 || ss > 60) return std::nullopt;

    TimeMs offset = 0;
    if (pos < s.size()) {
        if (s[pos] == 'Z' && pos + 1 == s.size()) {
            ++pos;
        } else if (s[pos] == '+' || s[pos] == '-') {
            const int sign = s[pos] == '+' ? 1 : -1;
            int oh = 0, om = 0;
            if (!digits(s, pos + 1, 2, oh)) return std::nullopt;
            std::size_t mpos = pos + 3;
            if (mpos < s.size() && s[mpos] == ':') ++mpos;
            if (!digits(s, mpos, 2, om) || mpos + 2 != s.size()) return std::nullopt;
            offset = sign * (static_cast<TimeMs>(oh) * 3'600'000 + static_cast<TimeMs>(om) * 60'000);
            pos = s.size();
        } else {
            return std::nullopt;
        }
    }
    if (pos != s.size()) return std::nullopt;
    return *date + static_cast<TimeMs>(hh) * 3'600'000 + static_cast<TimeMs>(mm) * 60'000 +
           static_cast<TimeMs>(ss) * 1000 + millis - offset;
}

}  // namespace

std::string_view to_string(TimeFormat format) {
    switch (format) {
        case TimeFormat::EpochMillis: return "epoch_ms";
        case TimeFormat::Iso8601: return "iso8601";
        case TimeFormat::DateOnly: return "date";
    }
    return "unknown";
}

std::optional<TimeFormat> time_format_from_string(std::string_view text) {
    for (auto f : {TimeFormat::EpochMillis, TimeFormat::Iso8601, TimeFormat::DateOnly}) {
        if (to_string(f) == text) return f;
    }
    return std::nullopt;
}

std::optional<TimeMs> parse_time(std::string_view text, TimeFormat format) {
    switch (format) {
        case TimeFormat::EpochMillis: {
            TimeMs v = 0;
            const auto* first = text.data();
            const auto* last = text.data() + text.size();
            if (first != last && *first == '+') ++first;
            const auto [ptr, ec] = std::from_chars(first, last, v);
            if (ec != std::errc{} || ptr != last || first == last) return std::nullopt;
            return v;
        }
        case TimeFormat::Iso8601: return parse_iso(text);
        case TimeFormat::DateOnly: return parse_date(text);
    }
    return std::nullopt;
}

std::string format_time(TimeMs t) {
    using namespace std::chrono;
    TimeMs days = t / kMsPerDay;
    TimeMs rem = t % kMsPerDay;
    if (rem < 0) {
        rem += kMsPerDay;
        --days;
    }
    const year_month_day ymd{sys_days{std::chrono::days{days}}};
    char buf[48];
    if (rem == 0) {
        std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                      static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    } else {
        const TimeMs secs = rem / 1000;
        std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u %02lld:%02lld:%02lld", static_cast<int>(ymd.year()),
                      static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                      static_cast<long long>(secs / 3600), static_cast<long long>(secs / 60 % 60),
                      static_cast<long long>(secs % 60));
    }
    return buf;
}

}  // namespace pplot
