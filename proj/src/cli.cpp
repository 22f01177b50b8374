#include "pplot/cli.hpp"

#include "pplot/ingest.hpp"
#include "pplot/scene.hpp"
#include "pplot/service.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace pplot {

namespace {

constexpr int kExitInvalid = 2;
constexpr std::size_t kMaxPrintedDiagnostics = 20;

struct CliFailure {
    int code;
    std::string message;
};

std::string read_file(const std::string& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliFailure{kExitInvalid, std::string(what) + " file not found: " + path};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw CliFailure{1, "cannot write " + path};
    out << contents;
    if (!out.flush()) throw CliFailure{1, "failed writing " + path};
}

void print_diagnostics(std::ostream& err, const std::vector<Diagnostic>& diags, const char* prefix) {
    for (std::size_t i = 0; i < diags.size() && i < kMaxPrintedDiagnostics; ++i)
        err << prefix << diags[i].location << ": " << diags[i].message << "\n";
    if (diags.size() > kMaxPrintedDiagnostics)
        err << prefix << "... " << diags.size() - kMaxPrintedDiagnostics << " more\n";
}

int render(const std::string& data_path, const std::string& spec_path, const std::string& out_path, double width,
           double height, std::ostream& err) {
    const auto spec_text = read_file(spec_path, "spec");
    const auto csv = read_file(data_path, "data");
    const FigureSpec spec = parse_spec(spec_text);
    const Dataset dataset = parse_csv(csv, spec);
    print_diagnostics(err, dataset.diagnostics, "warning: ");
    const TimeInterval domain = figure_domain(spec, dataset);
    const ZoneLayout layout = initial_layout(spec, domain);
    const Scene scene = compose(dataset, spec, layout, width, height);
    write_file(out_path, to_svg(scene));
    return 0;
}

int replay(const std::string& data_path, const std::string& spec_path, const std::string& events_path,
           const std::string& out_path, std::ostream& err) {
    const auto spec_text = read_file(spec_path, "spec");
    const auto csv = read_file(data_path, "data");
    nlohmann::json log;
    try {
        log = nlohmann::json::parse(read_file(events_path, "events"));
    } catch (const nlohmann::json::parse_error& e) {
        throw CliFailure{kExitInvalid, std::string("events file is not valid JSON: ") + e.what()};
    }
    if (!log.is_object() || !log.contains("events") || !log["events"].is_array())
        throw CliFailure{kExitInvalid, "events file needs an 'events' array"};

    std::optional<double> width;
    std::optional<double> height;
    if (log.contains("width")) width = log["width"].get<double>();
    if (log.contains("height")) height = log["height"].get<double>();

    SessionService service;
    const auto created = service.create_session(csv, spec_text, width, height);
    std::size_t rejected = 0;
    for (const auto& entry : log["events"]) {
        const auto response = service.handle_event(created.id, entry.dump());
        if (response.status != 200) ++rejected;
    }
    if (rejected > 0) err << "note: " << rejected << " recorded event(s) were rejected, as in the original session\n";
    write_file(out_path, to_svg(service.get_scene(created.id).scene));
    return 0;
}

int default_port() {
    if (const char* env = std::getenv("PPLOT_PORT")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0 && v < 65536) return static_cast<int>(v);
    }
    return 8080;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"pplot: focus+context periphery plots for time series"};
    app.name("pplot");
    app.require_subcommand(1);

    std::string data;
    std::string spec;
    std::string output;
    std::string events;
    double width = 1200.0;
    double height = 600.0;

    auto* render_cmd = app.add_subcommand("render", "Render the spec's initial zones to an SVG file");
    render_cmd->add_option("--data", data, "CSV dataset")->required();
    render_cmd->add_option("--spec", spec, "JSON figure spec")->required();
    render_cmd->add_option("--out", output, "Output SVG path")->required();
    render_cmd->add_option("--width", width, "Figure width in px")->capture_default_str();
    render_cmd->add_option("--height", height, "Figure height in px")->capture_default_str();

    auto* replay_cmd = app.add_subcommand("replay", "Replay a recorded event log and write the final SVG");
    replay_cmd->add_option("--data", data, "CSV dataset")->required();
    replay_cmd->add_option("--spec", spec, "JSON figure spec")->required();
    replay_cmd->add_option("--events", events, "Recorded events JSON")->required();
    replay_cmd->add_option("--out", output, "Output SVG path")->required();

    std::string host = "0.0.0.0";
    int port = default_port();
    std::string static_dir;
    auto* serve_cmd = app.add_subcommand("serve", "Run the interactive session HTTP service");
    serve_cmd->add_option("--host", host, "Bind address")->capture_default_str();
    serve_cmd->add_option("--port", port, "Port (default from PPLOT_PORT, else 8080)")->capture_default_str();
    serve_cmd->add_option("--static", static_dir, "Directory of static client files to serve at /");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "pplot: " << e.what() << "\n\n";
        const auto subs = app.get_subcommands();
        err << (subs.empty() ? app.help() : subs.front()->help());
        return kExitInvalid;
    }

    try {
        if (render_cmd->parsed()) return render(data, spec, output, width, height, err);
        if (replay_cmd->parsed()) return replay(data, spec, events, output, err);
        SessionService service;
        return run_http_server(service, host, port,
                               static_dir.empty() ? std::nullopt : std::optional<std::string>(static_dir));
    } catch (const CliFailure& f) {
        err << "pplot: " << f.message << "\n";
        return f.code;
    } catch (const IngestError& e) {
        err << "pplot: " << to_string(e.code()) << "\n";
        print_diagnostics(err, e.diagnostics(), "  ");
        return kExitInvalid;
    } catch (const TimelineError& e) {
        err << "pplot: " << to_string(e.code()) << ": " << e.what() << "\n";
        return kExitInvalid;
    } catch (const SceneError& e) {
        err << "pplot: " << to_string(e.code()) << ": " << e.what() << "\n";
        return kExitInvalid;
    } catch (const ServiceError& e) {
        err << "pplot: " << e.code() << ": " << e.what() << "\n";
        return kExitInvalid;
    }
}

}  // namespace pplot
