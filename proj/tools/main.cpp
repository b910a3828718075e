#include "CLI11.hpp"

#include "deltapol/cli.hpp"
#include "deltapol/version.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace {

// 0 on success, 2 on IO failure
int emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        return 0;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
        std::fprintf(stderr, "error: cannot open output file '%s'\n",
                     out_path.c_str());
        return 2;
    }
    f << text;
    f.flush();
    if (!f) {
        std::fprintf(stderr, "error: write to '%s' failed\n", out_path.c_str());
        return 2;
    }
    return 0;
}

std::vector<deltapol::route> parse_routes(const std::string& arg) {
    std::vector<deltapol::route> routes;
    std::stringstream ss(arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        const deltapol::route r = deltapol::parse_route(tok);
        if (std::find(routes.begin(), routes.end(), r) == routes.end())
            routes.push_back(r);
    }
    if (routes.empty()) throw deltapol::invalid_params("no routes requested");
    return routes;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polarizability of a particle bound by a 1D attractive delta well"};
    app.set_version_flag("--version", deltapol::tool_version);
    app.require_subcommand(1);

    deltapol::sweep_request req;
    std::string routes_arg = "closed";
    std::string format = "csv";
    std::string level_arg = "fast";
    std::string out_path;
    std::string config_path;
    bool raw = false;

    CLI::App* sweep = app.add_subcommand("sweep", "tabulate alpha over a grid of x = omega/B");
    sweep->add_option("--g", req.g, "well depth g (k0 = g)")->capture_default_str();
    sweep->add_option("--xmin", req.x_min, "lowest x")->capture_default_str();
    sweep->add_option("--xmax", req.x_max, "highest x")->capture_default_str();
    sweep->add_option("--samples", req.samples, "number of grid points (>= 2)")
        ->capture_default_str();
    sweep->add_option("--routes", routes_arg,
                      "comma-separated subset of closed,greens,oracle")
        ->capture_default_str();
    sweep->add_option("--mu", req.mu, "oracle broadening")->capture_default_str();
    sweep->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sweep->add_flag("--raw", raw, "emit bare alpha instead of (2B)^2-scaled values");
    sweep->add_option("--out", out_path, "write to this file instead of stdout");
    sweep->add_option("--config", config_path, "key = value engine overrides");

    CLI::App* compare = app.add_subcommand(
        "compare", "cross-check the closed forms against the prior expressions");
    compare->add_option("--format", format, "text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    compare->add_option("--out", out_path, "write to this file instead of stdout");
    compare->add_option("--config", config_path, "key = value engine overrides");

    CLI::App* verify = app.add_subcommand("verify", "run the self-check suite");
    verify->add_option("--level", level_arg, "fast or full (full builds the box oracle)")
        ->check(CLI::IsMember({"fast", "full"}))
        ->capture_default_str();
    verify->add_option("--format", format, "text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    verify->add_option("--out", out_path, "write to this file instead of stdout");
    verify->add_option("--config", config_path, "key = value engine overrides");

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
        deltapol::run_config cfg;
        if (!config_path.empty()) cfg = deltapol::load_config(config_path);

        if (sweep->parsed()) {
            req.scaled = !raw;
            req.routes = parse_routes(routes_arg);
            const deltapol::sweep_table table = deltapol::run_sweep(req, cfg);
            return emit(format == "json" ? deltapol::format_json(table)
                                         : deltapol::format_csv(table),
                        out_path);
        }
        if (compare->parsed()) {
            const deltapol::comparison_report rep = deltapol::run_compare(cfg);
            return emit(format == "json" ? deltapol::format_json(rep)
                                         : deltapol::format_text(rep),
                        out_path);
        }
        if (verify->parsed()) {
            const auto level = level_arg == "full" ? deltapol::verify_level::full
                                                   : deltapol::verify_level::fast;
            const deltapol::verify_summary sum = deltapol::run_verify(level, cfg);
            std::fputs((format == "json" ? deltapol::format_json(sum)
                                         : deltapol::format_text(sum))
                           .c_str(),
                       stdout);
            if (!out_path.empty()) {
                // the file always carries the machine-readable summary
                const int rc = emit(deltapol::format_json(sum), out_path);
                if (rc != 0) return rc;
            }
            return sum.all_pass() ? 0 : 1;
        }
    } catch (const deltapol::numerical_error& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
