#include "pplot/cli.hpp"

#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = pplot::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "pplot_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

const std::string kData = PPLOT_DATA_DIR "/weather_sample.csv";
const std::string kSpec = PPLOT_DATA_DIR "/weather_spec.json";

}  // namespace

TEST_CASE("render writes an SVG for the bundled sample") {
    const auto out = scratch("sample.svg");
    fs::remove(out);
    const auto r = cli({"render", "--data", kData, "--spec", kSpec, "--out", out.string()});
    CHECK(r.code == 0);
    const auto svg = slurp(out);
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("width=\"1200\" height=\"600\"") != std::string::npos);
}

TEST_CASE("render honours the size flags") {
    const auto out = scratch("small.svg");
    CHECK(cli({"render", "--data", kData, "--spec", kSpec, "--out", out.string(), "--width", "800", "--height",
               "500"})
              .code == 0);
    CHECK(slurp(out).find("width=\"800\" height=\"500\"") != std::string::npos);
}

TEST_CASE("missing flags print usage and exit 2") {
    const auto r = cli({"render", "--data", kData, "--out", scratch("x.svg").string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("--spec") != std::string::npos);
    CHECK(r.err.find("Usage") != std::string::npos);
    CHECK(cli({}).code == 2);
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("unknown column reports MissingColumn and exits 2") {
    const auto spec = scratch("bad_spec.json");
    {
        std::ofstream f(spec);
        f << R"({"time_column": "date", "tracks": [{"series": "humidity"}],
                 "initial_zones": [{"kind": "focus", "start": "2000-01-01", "end": "2001-01-01"}]})";
    }
    const auto r = cli({"render", "--data", kData, "--spec", spec.string(), "--out", scratch("y.svg").string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("MissingColumn") != std::string::npos);
    CHECK(r.err.find("humidity") != std::string::npos);
}

TEST_CASE("missing input files exit 2") {
    const auto r = cli({"render", "--data", "/nonexistent.csv", "--spec", kSpec, "--out", scratch("z.svg").string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("not found") != std::string::npos);
}

TEST_CASE("too-small render exits 2 with TooSmall") {
    const auto r = cli({"render", "--data", kData, "--spec", kSpec, "--out", scratch("t.svg").string(), "--width",
                        "50"});
    CHECK(r.code == 2);
    CHECK(r.err.find("TooSmall") != std::string::npos);
}

TEST_CASE("replay reproduces a recorded session") {
    const auto out = scratch("replay.svg");
    const auto r = cli({"replay", "--data", kData, "--spec", kSpec, "--events", PPLOT_DATA_DIR "/../tests/data/weather_session.json",
                        "--out", out.string()});
    CHECK(r.code == 0);
    CHECK(slurp(out) == slurp(PPLOT_DATA_DIR "/../tests/data/weather_session_final.svg"));
}

TEST_CASE("the installed binary exits with the same codes") {
    CHECK(std::system((std::string(PPLOT_BINARY) + " render --data " + kData + " > /dev/null 2>&1").c_str()) != 0);
    const auto out = scratch("bin.svg");
    CHECK(std::system((std::string(PPLOT_BINARY) + " render --data " + kData + " --spec " + kSpec + " --out " +
                       out.string())
                          .c_str()) == 0);
    CHECK(fs::file_size(out) > 1000);
}
