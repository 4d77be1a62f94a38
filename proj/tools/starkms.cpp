#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "starkms/report.hpp"
#include "starkms/runner.hpp"
#include "starkms/scenario.hpp"

namespace fs = std::filesystem;
using namespace starkms;

namespace
{

constexpr int exit_failed_checks = 1;
constexpr int exit_config_error = 2;

fs::path default_out_dir()
{
    if (const char *env = std::getenv("STARKMS_OUT_DIR"); env && *env) {
        return env;
    }
    return "starkms-out";
}

void emit(std::ostream &os, const Report &r, const std::string &format)
{
    if (format == "json") {
        emit_json(os, r);
    } else if (format == "csv") {
        emit_csv(os, r);
    } else {
        emit_table(os, r);
    }
}

std::ofstream open_out(const fs::path &p)
{
    std::ofstream os(p);
    if (!os) {
        throw std::runtime_error("cannot write " + p.string());
    }
    return os;
}

int cmd_run(const std::string &config, std::optional<std::size_t> truncation, std::optional<std::uint64_t> seed,
            fs::path out, const std::string &format)
{
    Scenario s;
    try {
        s = load_scenario(resolve_scenario(config));
    } catch (const config_error &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config_error;
    }
    const Report r = run_scenario(s, RunOptions{truncation, seed});

    out /= r.scenario;
    fs::create_directories(out);
    {
        auto os = open_out(out / "report.json");
        emit_json(os, r);
    }
    {
        auto os = open_out(out / "report.csv");
        emit_csv(os, r);
    }
    {
        auto os = open_out(out / "spectra.csv");
        emit_spectra_csv(os, r);
    }
    {
        auto os = open_out(out / "null_vectors.csv");
        emit_null_vectors_csv(os, r);
    }
    emit(std::cout, r, format);
    std::cerr << "wrote " << (out / "report.json").string() << '\n';
    return r.all_passed() ? 0 : exit_failed_checks;
}

int cmd_list()
{
    for (const auto &p : bundled_scenarios()) {
        try {
            const Scenario s = load_scenario(p);
            std::cout << s.name << "  " << s.description << '\n';
        } catch (const config_error &e) {
            std::cout << p.stem().string() << "  (invalid: " << e.what() << ")\n";
        }
    }
    return 0;
}

int cmd_emit(const fs::path &path, const std::string &format)
{
    std::ifstream is(path);
    if (!is) {
        std::cerr << "cannot read " << path.string() << '\n';
        return exit_config_error;
    }
    Report r;
    try {
        r = report_from_json(ojson::parse(is));
    } catch (const std::exception &e) {
        std::cerr << "invalid report " << path.string() << ": " << e.what() << '\n';
        return exit_config_error;
    }
    emit(std::cout, r, format);
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Formal KMS state workbench"};
    app.require_subcommand(1);

    std::string config;
    std::optional<std::size_t> truncation;
    std::optional<std::uint64_t> seed;
    std::string out = default_out_dir().string();
    std::string run_format = "table";
    auto *run = app.add_subcommand("run", "Run a scenario (file path or bundled name)");
    run->add_option("config", config, "Scenario file or bundled scenario name")->required();
    run->add_option("--truncation,-K", truncation, "Override the lambda truncation order");
    run->add_option("--seed,-s", seed, "Override the probe seed");
    run->add_option("--out,-o", out, "Output directory (default: $STARKMS_OUT_DIR or ./starkms-out)");
    run->add_option("--format,-f", run_format, "Format printed to stdout")
        ->check(CLI::IsMember({"json", "csv", "table"}));

    auto *list = app.add_subcommand("list-scenarios", "List bundled scenarios");

    std::string report_path;
    std::string emit_format = "table";
    auto *emit_cmd = app.add_subcommand("emit", "Re-emit a saved JSON report");
    emit_cmd->add_option("report", report_path, "report.json written by run")->required();
    emit_cmd->add_option("--format,-f", emit_format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            return cmd_run(config, truncation, seed, out, run_format);
        }
        if (*list) {
            return cmd_list();
        }
        if (*emit_cmd) {
            return cmd_emit(report_path, emit_format);
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_config_error;
    }
    return 0;
}
