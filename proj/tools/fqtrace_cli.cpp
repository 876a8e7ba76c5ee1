#include "fqtrace/config.hpp"
#include "fqtrace/report.hpp"
#include "fqtrace/selftest.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

bool write_out(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return true;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        return false;
    }
    f << text;
    return true;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact trace tables for semi-local window operators over F_q(t)"};
    app.require_subcommand(1);

    std::string config_path, format_override, out_path;
    int jobs = 1;
    bool timings = false;

    auto add_io = [&](CLI::App* sc) {
        sc->add_option("--config", config_path, "experiment config file")->required();
        sc->add_option("--format", format_override, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
        sc->add_option("--out", out_path, "write output to this file");
        sc->add_option("--jobs", jobs, "concurrent height jobs")
            ->check(CLI::PositiveNumber);
    };

    CLI::App* trace = app.add_subcommand("trace", "build the convergence table");
    add_io(trace);
    trace->add_flag("--timings", timings, "include per-row timings (json output)");
    CLI::App* dims = app.add_subcommand("dims", "report subspace dimensions per height");
    add_io(dims);
    CLI::App* weil = app.add_subcommand("weil", "report the explicit-side decomposition");
    add_io(weil);
    CLI::App* places = app.add_subcommand("places", "describe the configured place set");
    add_io(places);
    CLI::App* selftest = app.add_subcommand("selftest", "run the built-in oracle suites");
    selftest->add_option("--out", out_path, "write output to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (selftest->parsed()) {
            std::ostringstream os;
            int failures = fqtrace::run_selftests(os);
            if (!write_out(os.str(), out_path)) return 1;
            return failures == 0 ? 0 : 2;
        }

        fqtrace::ExperimentConfig cfg = fqtrace::load_config_file(config_path);
        if (!format_override.empty()) cfg.format = format_override;

        if (places->parsed())
            return write_out(fqtrace::render_places(cfg.make_places(), cfg.format), out_path)
                       ? 0
                       : 1;

        fqtrace::TraceReport rep = fqtrace::run_experiment(cfg, jobs);
        if (!rep.warning.empty()) std::cerr << "warning: " << rep.warning << "\n";

        std::string text;
        if (trace->parsed())
            text = fqtrace::render_report(rep, timings);
        else if (dims->parsed())
            text = fqtrace::render_dims(rep);
        else
            text = fqtrace::render_weil(rep);
        return write_out(text, out_path) ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
