#include "pplot/ingest.hpp"

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_map>

namespace pplot {

using nlohmann::json;

namespace {

std::string join_messages(IngestErrc code, const std::vector<Diagnostic>& diags) {
    std::string out(to_string(code));
    for (const auto& d : diags) out += "\n  " + d.location + ": " + d.message;
    return out;
}

// ---------------------------------------------------------------------------
// Spec reading

struct Named {
    std::string_view name;
    int value;
};

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(const Named (&table)[N], std::string_view text) {
    for (const auto& e : table) {
        if (e.name == text) return static_cast<Enum>(e.value);
    }
    return std::nullopt;
}

template <typename Enum, std::size_t N>
std::string_view name_of(const Named (&table)[N], Enum value) {
    for (const auto& e : table) {
        if (e.value == static_cast<int>(value)) return e.name;
    }
    return "unknown";
}

constexpr Named kValueKinds[] = {{"continuous", static_cast<int>(ValueKind::Continuous)},
                                 {"categorical", static_cast<int>(ValueKind::Categorical)},
                                 {"event", static_cast<int>(ValueKind::Event)}};
constexpr Named kFocusPlots[] = {{"line", static_cast<int>(FocusPlot::Line)},
                                 {"bar", static_cast<int>(FocusPlot::Bar)},
                                 {"dot", static_cast<int>(FocusPlot::Dot)},
                                 {"event_ticks", static_cast<int>(FocusPlot::EventTicks)}};
constexpr Named kAnnotations[] = {{"mean_line", static_cast<int>(AnnotationKind::MeanLine)},
                                  {"quantile_band", static_cast<int>(AnnotationKind::QuantileBand)}};
constexpr Named kZoneKinds[] = {{"focus", static_cast<int>(ZoneKind::Focus)},
                                {"context", static_cast<int>(ZoneKind::Context)}};
constexpr Named kPaths[] = {{"value_preserving", static_cast<int>(SummarizationPath::ValuePreserving)},
                            {"time_preserving", static_cast<int>(SummarizationPath::TimePreserving)}};

class SpecReader {
public:
    std::vector<Diagnostic> diagnostics;

    void error(const std::string& path, std::string message) {
        diagnostics.push_back({path.empty() ? "/" : path, std::move(message)});
    }

    bool expect_object(const json& j, const std::string& path, std::initializer_list<std::string_view> allowed) {
        if (!j.is_object()) {
            error(path, "expected an object");
            return false;
        }
        for (const auto& [key, _] : j.items()) {
            if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) error(path + "/" + key, "unknown key");
        }
        return true;
    }

    const json* field(const json& obj, std::string_view key, const std::string& path, bool required) {
        auto it = obj.find(key);
        if (it == obj.end()) {
            if (required) error(path + "/" + std::string(key), "required field is missing");
            return nullptr;
        }
        return &*it;
    }

    std::optional<std::string> string_field(const json& obj, std::string_view key, const std::string& path,
                                            bool required) {
        const json* v = field(obj, key, path, required);
        if (!v) return std::nullopt;
        if (!v->is_string()) {
            error(path + "/" + std::string(key), "expected a string");
            return std::nullopt;
        }
        return v->get<std::string>();
    }

    std::optional<long long> int_field(const json& obj, std::string_view key, const std::string& path,
                                       bool required) {
        const json* v = field(obj, key, path, required);
        if (!v) return std::nullopt;
        if (!v->is_number_integer()) {
            error(path + "/" + std::string(key), "expected an integer");
            return std::nullopt;
        }
        return v->get<long long>();
    }

    std::optional<double> number_field(const json& obj, std::string_view key, const std::string& path) {
        const json* v = field(obj, key, path, false);
        if (!v) return std::nullopt;
        if (!v->is_number()) {
            error(path + "/" + std::string(key), "expected a number");
            return std::nullopt;
        }
        return v->get<double>();
    }

    std::optional<bool> bool_field(const json& obj, std::string_view key, const std::string& path) {
        const json* v = field(obj, key, path, false);
        if (!v) return std::nullopt;
        if (!v->is_boolean()) {
            error(path + "/" + std::string(key), "expected a boolean");
            return std::nullopt;
        }
        return v->get<bool>();
    }

    template <typename Enum, std::size_t N>
    std::optional<Enum> enum_field(const json& obj, std::string_view key, const std::string& path,
                                   const Named (&table)[N], bool required = false) {
        auto text = string_field(obj, key, path, required);
        if (!text) return std::nullopt;
        auto value = lookup<Enum>(table, *text);
        if (!value) {
            std::string choices;
            for (const auto& e : table) choices += (choices.empty() ? "" : ", ") + std::string(e.name);
            error(path + "/" + std::string(key), "'" + *text + "' is not one of: " + choices);
        }
        return value;
    }

    std::optional<TimeMs> time_value(const json& v, const std::string& path, TimeFormat format) {
        if (v.is_number_integer()) return v.get<TimeMs>();
        if (v.is_string()) {
            const auto text = v.get<std::string>();
            if (auto t = parse_time(text, format)) return t;
            if (auto t = parse_time(text, TimeFormat::Iso8601)) return t;
            error(path, "cannot parse '" + text + "' as a " + std::string(to_string(format)) + " timestamp");
            return std::nullopt;
        }
        error(path, "expected an integer epoch-ms time or a time string");
        return std::nullopt;
    }

    PlotPolicy policy(const json& j, const std::string& path) {
        PlotPolicy p;
        if (!expect_object(j, path, {"mode", "type", "path", "t1", "t2"})) return p;
        const auto mode = string_field(j, "mode", path, true);
        if (!mode) return p;
        if (*mode == "fixed") {
            if (j.contains("path") || j.contains("t1") || j.contains("t2"))
                error(path, "fixed policies take only 'type'");
            if (auto type = string_field(j, "type", path, true)) {
                if (auto t = plot_type_from_string(*type)) {
                    p.mode = PlotPolicy::Fixed{*t};
                } else {
                    error(path + "/type", "'" + *type + "' is not one of: TVAP, TAP, VAP, NAP");
                }
            }
        } else if (*mode == "auto") {
            if (j.contains("type")) error(path + "/type", "auto policies do not take 'type'");
            PlotPolicy::Auto a;
            if (auto v = enum_field<SummarizationPath>(j, "path", path, kPaths)) a.path = *v;
            const auto t1 = int_field(j, "t1", path, false);
            const auto t2 = int_field(j, "t2", path, false);
            if (t1) {
                if (*t1 <= 0) error(path + "/t1", "must be positive");
                else a.t1 = static_cast<std::size_t>(*t1);
            }
            if (t2) {
                if (*t2 <= 0) error(path + "/t2", "must be positive");
                else a.t2 = static_cast<std::size_t>(*t2);
            }
            if (a.t1 >= a.t2) error(path, "thresholds must satisfy 0 < t1 < t2");
            p.mode = a;
        } else {
            error(path + "/mode", "'" + *mode + "' is not one of: auto, fixed");
        }
        return p;
    }

    TrackSpec track(const json& j, const std::string& path) {
        TrackSpec t;
        if (!expect_object(j, path,
                           {"series", "label", "units", "value_kind", "focus_plot", "periphery_policy", "annotations",
                            "histogram_bins", "envelope_window", "categories"}))
            return t;
        if (auto s = string_field(j, "series", path, true)) {
            if (s->empty()) error(path + "/series", "must not be empty");
            t.series = *s;
        }
        t.label = string_field(j, "label", path, false);
        t.units = string_field(j, "units", path, false);
        if (auto k = enum_field<ValueKind>(j, "value_kind", path, kValueKinds)) t.value_kind = *k;
        t.focus_plot = t.value_kind == ValueKind::Continuous ? FocusPlot::Line : FocusPlot::EventTicks;
        if (auto f = enum_field<FocusPlot>(j, "focus_plot", path, kFocusPlots)) t.focus_plot = *f;
        if (t.focus_plot == FocusPlot::EventTicks && t.value_kind == ValueKind::Continuous)
            error(path + "/focus_plot", "event_ticks is only valid for event or categorical tracks");
        if (t.focus_plot != FocusPlot::EventTicks && t.focus_plot != FocusPlot::Dot &&
            t.value_kind != ValueKind::Continuous)
            error(path + "/focus_plot", "event and categorical tracks use event_ticks or dot");

        if (const json* p = field(j, "periphery_policy", path, false)) t.periphery_policy = policy(*p, path + "/periphery_policy");

        if (const json* a = field(j, "annotations", path, false)) {
            if (!a->is_array()) {
                error(path + "/annotations", "expected an array");
            } else {
                for (std::size_t i = 0; i < a->size(); ++i) {
                    const auto apath = path + "/annotations/" + std::to_string(i);
                    const auto& item = (*a)[i];
                    auto kind = item.is_string() ? lookup<AnnotationKind>(kAnnotations, item.get<std::string>())
                                                 : std::nullopt;
                    if (!kind) {
                        error(apath, "expected one of: mean_line, quantile_band");
                        continue;
                    }
                    if (t.value_kind != ValueKind::Continuous)
                        error(apath, "annotations are only valid for continuous tracks");
                    if (std::find(t.annotations.begin(), t.annotations.end(), *kind) != t.annotations.end())
                        error(apath, "duplicate annotation");
                    t.annotations.push_back(*kind);
                }
            }
        }
        if (auto bins = int_field(j, "histogram_bins", path, false)) {
            if (*bins < 1 || *bins > 1000) error(path + "/histogram_bins", "must be in [1, 1000]");
            else t.histogram_bins = static_cast<std::size_t>(*bins);
        }
        if (auto w = int_field(j, "envelope_window", path, false)) {
            if (*w < 1 || *w % 2 == 0 || *w > 10001) error(path + "/envelope_window", "must be an odd integer >= 1");
            else t.envelope_window = static_cast<std::size_t>(*w);
        }
        if (const json* c = field(j, "categories", path, false)) {
            if (t.value_kind != ValueKind::Categorical) error(path + "/categories", "only valid for categorical tracks");
            if (!c->is_array()) {
                error(path + "/categories", "expected an array of strings");
            } else {
                std::set<std::string> seen;
                for (std::size_t i = 0; i < c->size(); ++i) {
                    const auto& item = (*c)[i];
                    if (!item.is_string()) {
                        error(path + "/categories/" + std::to_string(i), "expected a string");
                        continue;
                    }
                    auto label = item.get<std::string>();
                    if (!seen.insert(label).second)
                        error(path + "/categories/" + std::to_string(i), "duplicate category '" + label + "'");
                    t.categories.push_back(std::move(label));
                }
            }
        }
        return t;
    }

    ZoneSpec zone(const json& j, const std::string& path, TimeFormat format) {
        ZoneSpec z;
        if (!expect_object(j, path, {"kind", "start", "end", "lock_left", "lock_right"})) return z;
        if (auto k = enum_field<ZoneKind>(j, "kind", path, kZoneKinds, true)) z.kind = *k;
        if (const json* s = field(j, "start", path, true)) {
            if (auto t = time_value(*s, path + "/start", format)) z.start = *t;
        }
        if (const json* e = field(j, "end", path, true)) {
            if (auto t = time_value(*e, path + "/end", format)) z.end = *t;
        }
        if (auto b = bool_field(j, "lock_left", path)) z.lock_left = *b;
        if (auto b = bool_field(j, "lock_right", path)) z.lock_right = *b;
        return z;
    }
};

// ---------------------------------------------------------------------------
// CSV

struct CsvRecord {
    std::size_t line = 0;
    std::vector<std::string> fields;
};

std::vector<CsvRecord> read_csv(std::string_view text) {
    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

    std::vector<CsvRecord> records;
    CsvRecord current;
    std::string field;
    bool in_quotes = false;
    bool field_quoted = false;
    std::size_t line = 1;
    current.line = 1;

    const auto end_field = [&] {
        current.fields.push_back(std::move(field));
        field.clear();
        field_quoted = false;
    };
    const auto end_record = [&] {
        end_field();
        const bool blank = current.fields.size() == 1 && current.fields[0].empty();
        if (!blank) records.push_back(std::move(current));
        current = CsvRecord{};
        current.line = line;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                if (field.empty() && !field_quoted) {
                    in_quotes = true;
                    field_quoted = true;
                } else {
                    field.push_back(c);
                }
                break;
            case ',': end_field(); break;
            case '\r':
                if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
                ++line;
                end_record();
                break;
            case '\n':
                ++line;
                end_record();
                break;
            default: field.push_back(c);
        }
    }
    if (in_quotes) {
        throw IngestError(IngestErrc::MalformedCsv,
                          {{"line " + std::to_string(current.line), "unterminated quoted field"}});
    }
    if (!field.empty() || field_quoted || !current.fields.empty()) end_record();
    return records;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::optional<double> parse_double(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc::result_out_of_range) return std::numeric_limits<double>::infinity();
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

}  // namespace

std::string_view to_string(FocusPlot plot) { return name_of(kFocusPlots, plot); }
std::string_view to_string(AnnotationKind kind) { return name_of(kAnnotations, kind); }

std::string_view to_string(IngestErrc code) {
    switch (code) {
        case IngestErrc::MalformedJson: return "MalformedJson";
        case IngestErrc::InvalidField: return "InvalidField";
        case IngestErrc::ZoneInvariantViolation: return "ZoneInvariantViolation";
        case IngestErrc::MissingColumn: return "MissingColumn";
        case IngestErrc::UnparseableTime: return "UnparseableTime";
        case IngestErrc::MalformedCsv: return "MalformedCsv";
        case IngestErrc::EmptyDataset: return "EmptyDataset";
    }
    return "Unknown";
}

IngestError::IngestError(IngestErrc code, std::vector<Diagnostic> diagnostics)
    : std::runtime_error(join_messages(code, diagnostics)), code_(code), diagnostics_(std::move(diagnostics)) {}

bool TrackSpec::has_annotation(AnnotationKind kind) const {
    return std::find(annotations.begin(), annotations.end(), kind) != annotations.end();
}

const Series* Dataset::find(const std::string& name) const {
    auto it = series.find(name);
    return it == series.end() ? nullptr : &it->second;
}

std::size_t Dataset::observation_count() const {
    std::size_t n = 0;
    for (const auto& [_, s] : series) n += s.size();
    return n;
}

FigureSpec parse_spec(std::string_view text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        // Translate the byte offset into a line/column location.
        const std::size_t byte = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
        std::size_t line = 1;
        std::size_t col = 1;
        for (std::size_t i = 0; i < byte; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw IngestError(IngestErrc::MalformedJson,
                          {{"line " + std::to_string(line) + ", column " + std::to_string(col), e.what()}});
    }

    SpecReader r;
    FigureSpec spec;
    if (!r.expect_object(root, "", {"time_column", "time_format", "tracks", "initial_zones", "layout", "axis_domain"}))
        throw IngestError(IngestErrc::InvalidField, r.diagnostics);

    if (auto c = r.string_field(root, "time_column", "", true)) {
        if (c->empty()) r.error("/time_column", "must not be empty");
        spec.time_column = *c;
    }
    if (auto f = r.string_field(root, "time_format", "", false)) {
        if (auto tf = time_format_from_string(*f)) {
            spec.time_format = *tf;
        } else {
            r.error("/time_format", "'" + *f + "' is not one of: epoch_ms, iso8601, date");
        }
    }

    if (const json* tracks = r.field(root, "tracks", "", true)) {
        if (!tracks->is_array() || tracks->empty()) {
            r.error("/tracks", "expected a non-empty array");
        } else {
            for (std::size_t i = 0; i < tracks->size(); ++i) {
                spec.tracks.push_back(r.track((*tracks)[i], "/tracks/" + std::to_string(i)));
                if (spec.tracks.back().series == spec.time_column && !spec.time_column.empty())
                    r.error("/tracks/" + std::to_string(i) + "/series", "must differ from the time column");
            }
        }
    }

    if (const json* zones = r.field(root, "initial_zones", "", true)) {
        if (!zones->is_array() || zones->empty()) {
            r.error("/initial_zones", "expected a non-empty array");
        } else {
            for (std::size_t i = 0; i < zones->size(); ++i)
                spec.initial_zones.push_back(r.zone((*zones)[i], "/initial_zones/" + std::to_string(i), spec.time_format));
        }
    }

    if (const json* layout = r.field(root, "layout", "", false)) {
        if (r.expect_object(*layout, "/layout", {"focus_fraction", "control_height_px", "min_zone_width_ms"})) {
            if (auto f = r.number_field(*layout, "focus_fraction", "/layout")) {
                if (!(*f > 0.0 && *f < 1.0)) r.error("/layout/focus_fraction", "must be in (0, 1)");
                else spec.layout.focus_fraction = *f;
            }
            if (auto h = r.number_field(*layout, "control_height_px", "/layout")) {
                if (!(*h > 0.0) || !std::isfinite(*h)) r.error("/layout/control_height_px", "must be positive");
                else spec.layout.control_height_px = *h;
            }
            if (auto w = r.int_field(*layout, "min_zone_width_ms", "/layout", false)) {
                if (*w <= 0) r.error("/layout/min_zone_width_ms", "must be positive");
                else spec.layout.min_zone_width_ms = *w;
            }
        }
    }

    if (const json* domain = r.field(root, "axis_domain", "", false)) {
        if (r.expect_object(*domain, "/axis_domain", {"start", "end"})) {
            const json* s = r.field(*domain, "start", "/axis_domain", true);
            const json* e = r.field(*domain, "end", "/axis_domain", true);
            std::optional<TimeMs> start = s ? r.time_value(*s, "/axis_domain/start", spec.time_format) : std::nullopt;
            std::optional<TimeMs> end = e ? r.time_value(*e, "/axis_domain/end", spec.time_format) : std::nullopt;
            if (start && end) {
                if (*start >= *end) r.error("/axis_domain", "start must be before end");
                else spec.axis_domain = TimeInterval{*start, *end};
            }
        }
    }

    if (!r.diagnostics.empty()) throw IngestError(IngestErrc::InvalidField, r.diagnostics);

    // Zone geometry is checked last so that field errors are reported first.
    try {
        (void)initial_layout(spec, {spec.initial_zones.front().start,
                                    std::max(spec.initial_zones.back().end, spec.initial_zones.front().start + 1)});
    } catch (const TimelineError& e) {
        throw IngestError(IngestErrc::ZoneInvariantViolation,
                          {{"/initial_zones", std::string(to_string(e.code())) + ": " + e.what()}});
    }
    return spec;
}

std::string serialize_spec(const FigureSpec& spec) {
    json root;
    root["time_column"] = spec.time_column;
    root["time_format"] = std::string(to_string(spec.time_format));
    json tracks = json::array();
    for (const auto& t : spec.tracks) {
        json jt;
        jt["series"] = t.series;
        if (t.label) jt["label"] = *t.label;
        if (t.units) jt["units"] = *t.units;
        jt["value_kind"] = std::string(name_of(kValueKinds, t.value_kind));
        jt["focus_plot"] = std::string(to_string(t.focus_plot));
        if (const auto* fixed = std::get_if<PlotPolicy::Fixed>(&t.periphery_policy.mode)) {
            jt["periphery_policy"] = {{"mode", "fixed"}, {"type", std::string(to_string(fixed->type))}};
        } else {
            const auto& a = std::get<PlotPolicy::Auto>(t.periphery_policy.mode);
            jt["periphery_policy"] = {
                {"mode", "auto"}, {"path", std::string(name_of(kPaths, a.path))}, {"t1", a.t1}, {"t2", a.t2}};
        }
        json ann = json::array();
        for (auto a : t.annotations) ann.push_back(std::string(to_string(a)));
        jt["annotations"] = ann;
        jt["histogram_bins"] = t.histogram_bins;
        jt["envelope_window"] = t.envelope_window;
        if (!t.categories.empty()) jt["categories"] = t.categories;
        tracks.push_back(jt);
    }
    root["tracks"] = tracks;
    json zones = json::array();
    for (const auto& z : spec.initial_zones) {
        zones.push_back({{"kind", std::string(name_of(kZoneKinds, z.kind))},
                         {"start", z.start},
                         {"end", z.end},
                         {"lock_left", z.lock_left},
                         {"lock_right", z.lock_right}});
    }
    root["initial_zones"] = zones;
    root["layout"] = {{"focus_fraction", spec.layout.focus_fraction},
                      {"control_height_px", spec.layout.control_height_px},
                      {"min_zone_width_ms", spec.layout.min_zone_width_ms}};
    if (spec.axis_domain) root["axis_domain"] = {{"start", spec.axis_domain->start}, {"end", spec.axis_domain->end}};
    return root.dump(2);
}

Dataset parse_csv(std::string_view bytes, const FigureSpec& spec) {
    const auto records = read_csv(bytes);
    if (records.empty()) throw IngestError(IngestErrc::EmptyDataset, {{"line 1", "no header row"}});

    const auto& header = records.front().fields;
    std::unordered_map<std::string, std::size_t> columns;
    for (std::size_t i = 0; i < header.size(); ++i) columns.emplace(std::string(trim(header[i])), i);

    std::vector<Diagnostic> missing;
    const auto column_of = [&](const std::string& name) -> std::size_t {
        auto it = columns.find(name);
        if (it == columns.end()) {
            missing.push_back({"header", "column '" + name + "' not found"});
            return 0;
        }
        return it->second;
    };
    const std::size_t time_col = column_of(spec.time_column);
    std::vector<std::size_t> track_cols;
    for (const auto& t : spec.tracks) track_cols.push_back(column_of(t.series));
    if (!missing.empty()) throw IngestError(IngestErrc::MissingColumn, missing);

    Dataset ds;
    ds.rows = records.size() - 1;

    struct Row {
        TimeMs time;
        std::size_t record;
    };
    std::vector<Row> rows;
    rows.reserve(ds.rows);
    std::vector<Diagnostic> time_failures;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        const std::string loc = "line " + std::to_string(rec.line);
        if (rec.fields.size() != header.size()) {
            ds.diagnostics.push_back({loc, "row has " + std::to_string(rec.fields.size()) + " fields, header has " +
                                               std::to_string(header.size())});
        }
        const auto cell = time_col < rec.fields.size() ? trim(rec.fields[time_col]) : std::string_view{};
        auto t = parse_time(cell, spec.time_format);
        if (!t) {
            time_failures.push_back({loc, "unparseable time '" + std::string(cell) + "'"});
            continue;
        }
        rows.push_back({*t, r});
    }
    if (!time_failures.empty()) {
        if (time_failures.size() * 10 > ds.rows) throw IngestError(IngestErrc::UnparseableTime, time_failures);
        ds.diagnostics.insert(ds.diagnostics.end(), time_failures.begin(), time_failures.end());
    }
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.time < b.time; });

    for (std::size_t ti = 0; ti < spec.tracks.size(); ++ti) {
        const auto& track = spec.tracks[ti];
        if (ds.series.count(track.series)) continue;
        const std::size_t col = track_cols[ti];

        Series s;
        s.name = track.series;
        s.kind = track.value_kind;
        s.units = track.units;
        s.categories = track.categories;
        const bool declared = !track.categories.empty();
        std::unordered_map<std::string, std::uint32_t> codes;
        for (std::uint32_t i = 0; i < s.categories.size(); ++i) codes.emplace(s.categories[i], i);

        for (const auto& row : rows) {
            const auto& rec = records[row.record];
            if (col >= rec.fields.size()) continue;
            const auto cell = trim(rec.fields[col]);
            if (cell.empty()) continue;
            const auto loc = [&] { return "line " + std::to_string(rec.line) + ", column '" + track.series + "'"; };

            switch (track.value_kind) {
                case ValueKind::Continuous: {
                    auto v = parse_double(cell);
                    if (!v) {
                        ds.diagnostics.push_back({loc(), "unparseable number '" + std::string(cell) + "'"});
                        continue;
                    }
                    if (!std::isfinite(*v)) {
                        ds.diagnostics.push_back({loc(), "non-finite value '" + std::string(cell) + "' dropped"});
                        continue;
                    }
                    s.times.push_back(row.time);
                    s.values.push_back(*v);
                    break;
                }
                case ValueKind::Categorical: {
                    std::string label(cell);
                    auto it = codes.find(label);
                    if (it == codes.end()) {
                        if (declared) {
                            ds.diagnostics.push_back({loc(), "undeclared category '" + label + "'"});
                            continue;
                        }
                        it = codes.emplace(label, static_cast<std::uint32_t>(s.categories.size())).first;
                        s.categories.push_back(label);
                    }
                    s.times.push_back(row.time);
                    s.codes.push_back(it->second);
                    break;
                }
                case ValueKind::Event: s.times.push_back(row.time); break;
            }
        }
        ds.series.emplace(s.name, std::move(s));
    }
    return ds;
}

TimeInterval dataset_extent(const Dataset& dataset) {
    std::optional<TimeMs> lo;
    std::optional<TimeMs> hi;
    for (const auto& [_, s] : dataset.series) {
        if (s.times.empty()) continue;
        lo = lo ? std::min(*lo, s.times.front()) : s.times.front();
        hi = hi ? std::max(*hi, s.times.back()) : s.times.back();
    }
    if (!lo) throw IngestError(IngestErrc::EmptyDataset, {{"dataset", "no observations in any tracked column"}});
    return {*lo, *hi + 1};
}

TimeInterval figure_domain(const FigureSpec& spec, const Dataset& dataset) {
    return spec.axis_domain ? *spec.axis_domain : dataset_extent(dataset);
}

ZoneLayout initial_layout(const FigureSpec& spec, TimeInterval axis_domain) {
    std::vector<Zone> zones;
    zones.reserve(spec.initial_zones.size());
    for (const auto& z : spec.initial_zones) zones.push_back({z.kind, {z.start, z.end}});
    auto layout = ZoneLayout::create(zones, axis_domain, spec.layout.min_zone_width_ms);
    for (std::size_t i = 0; i < spec.initial_zones.size(); ++i) {
        if (spec.initial_zones[i].lock_left && !layout.locked(i)) layout = layout.toggle_lock(i);
        if (spec.initial_zones[i].lock_right && !layout.locked(i + 1)) layout = layout.toggle_lock(i + 1);
    }
    return layout;
}

}  // namespace pplot
