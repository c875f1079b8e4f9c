// Command-line front end: mastereq <command> [options]
//
//   solve        R_n series and master-equation residuals
//   verify       conservation of gamma / gamma_tilde / theta over an n-range
//   correlators  G_2i via the three routes and the identities they satisfy
//   enumerate    blossom-tree counts against the solved R_n
//   stats        face-degree distribution of the external face
//
// Exit status: 0 all checks pass, 1 some check failed, 2 bad arguments.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <tuple>

#include <CLI11.hpp>

#include "mastereq/report.hpp"

namespace {

// MASTEREQ_OUTPUT_DIR, when set, prefixes relative --output paths.
std::string resolve_output(const std::string& path)
{
    if (path.empty()) return path;
    const char* dir = std::getenv("MASTEREQ_OUTPUT_DIR");
    std::filesystem::path p(path);
    if (dir == nullptr || *dir == '\0' || p.is_absolute()) return path;
    return (std::filesystem::path(dir) / p).string();
}

}  // namespace

int main(int argc, char** argv)
{
    using namespace mastereq;

    CLI::App app{"Series solutions and conservation checks for the planar-map master equation"};
    app.set_version_flag("--version", "mastereq 1.0.0");

    std::string command;
    std::string boundary = "one";
    std::string family = "all";
    std::string range = "0..6";
    std::string model = "tetra";
    std::string format = "json";
    RunConfig config;

    app.add_option("command", command, "solve | verify | correlators | enumerate | stats")->required();
    app.add_option("--m", config.m, "valence cutoff: inner vertices of valence <= 2m");
    app.add_option("--order", config.order, "truncation order in the couplings (stats: order in x)");
    app.add_option("--boundary", boundary, "boundary term of the n = 0 equation: one | x");
    app.add_option("--family", family, "gamma | gamma_tilde | theta | all");
    app.add_option("--n", range, "range of n, as lo..hi or a single value");
    app.add_option("--i-max", config.i_max, "largest correlator index checked");
    app.add_option("--max-inner", config.max_inner, "largest number of inner vertices enumerated");
    app.add_option("--model", model, "face statistics model: tetra | hexa");
    app.add_option("--output", config.output, "output file (default: standard output)");
    app.add_option("--format", format, "json | csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        config.command = parse_command(command);
        if (boundary != "one" && boundary != "x") throw ConfigError("boundary must be 'one' or 'x'");
        config.boundary_x = boundary == "x";
        config.families = parse_families(family);
        std::tie(config.n_lo, config.n_hi) = parse_range(range);
        if (format != "json" && format != "csv") throw ConfigError("format must be 'json' or 'csv'");
        config.format = format == "json" ? Format::json : Format::csv;
        try {
            config.model = parse_face_model(model);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        config.output = resolve_output(config.output);
    } catch (const ConfigError& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 2;
    }

    return run(config);
}
