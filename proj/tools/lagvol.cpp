// Command-line front end: criteria, run, verify and sweep over a scenario
// config. Exit codes: 0 all checks pass, 1 a check failed, 2 bad config or
// violated precondition.

#include "lagvol/config.hpp"
#include "lagvol/errors.hpp"
#include "lagvol/report.hpp"
#include "lagvol/verify.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_config = 2;

struct Options {
    std::string config;
    std::string out;
    std::string format;
    std::uint64_t seed = 0;
};

lagvol::ScenarioConfig load(const Options& opt)
{
    lagvol::ScenarioConfig cfg = lagvol::load_scenario(opt.config);
    if (!opt.out.empty())
        cfg.out_dir = opt.out;
    if (opt.format == "csv")
        cfg.format = lagvol::OutputFormat::csv;
    else if (opt.format == "report")
        cfg.format = lagvol::OutputFormat::report;
    return cfg;
}

// Writes `text` to <out_dir>/<file> when an output directory is configured.
void save(const lagvol::ScenarioConfig& cfg, const std::string& file, const std::string& text)
{
    if (cfg.out_dir.empty())
        return;
    std::filesystem::create_directories(cfg.out_dir);
    const auto path = std::filesystem::path(cfg.out_dir) / file;
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw lagvol::Error("cannot write '" + path.string() + "'");
    os << text;
}

int cmd_criteria(const Options& opt)
{
    const lagvol::ScenarioConfig cfg = load(opt);
    const lagvol::CriteriaReport r = lagvol::scenario_criteria(cfg);
    std::ostringstream report, csv;
    lagvol::write_criteria_report(report, cfg.name, r);
    lagvol::write_criteria_csv(csv, cfg.name, r);
    save(cfg, cfg.name + "_criteria.txt", report.str());
    save(cfg, cfg.name + "_criteria.csv", csv.str());
    std::cout << (cfg.format == lagvol::OutputFormat::csv ? csv.str() : report.str());
    return exit_ok;
}

int cmd_run(const Options& opt)
{
    const lagvol::ScenarioConfig cfg = load(opt);
    const lagvol::TheoremReport r = lagvol::run_theorem_scenario(cfg);
    std::ostringstream report, csv;
    lagvol::write_theorem_report(report, r);
    lagvol::write_series_csv(csv, r.series);
    save(cfg, cfg.name + "_report.txt", report.str());
    save(cfg, cfg.name + "_series.csv", csv.str());
    std::cout << (cfg.format == lagvol::OutputFormat::csv ? csv.str() : report.str());
    const bool ok = r.failed_checks() == 0 && r.verdict != lagvol::Verdict::violation;
    return ok ? exit_ok : exit_failed;
}

int cmd_verify(const Options& opt)
{
    const lagvol::ScenarioConfig cfg = load(opt);
    const lagvol::VerifyReport r = lagvol::run_verify_suite(cfg, opt.seed);
    std::ostringstream report, csv;
    lagvol::write_verify_report(report, r);
    lagvol::write_verify_csv(csv, r);
    save(cfg, cfg.name + "_verify.txt", report.str());
    save(cfg, cfg.name + "_verify.csv", csv.str());
    std::cout << (cfg.format == lagvol::OutputFormat::csv ? csv.str() : report.str());
    return r.failed() == 0 ? exit_ok : exit_failed;
}

int cmd_sweep(const Options& opt)
{
    const lagvol::ScenarioConfig cfg = load(opt);
    const auto rows = lagvol::run_sweep(cfg);
    std::ostringstream report, csv;
    lagvol::write_sweep_report(report, cfg.name, rows);
    lagvol::write_sweep_csv(csv, rows);
    save(cfg, cfg.name + "_sweep.txt", report.str());
    save(cfg, cfg.name + "_sweep.csv", csv.str());
    std::cout << (cfg.format == lagvol::OutputFormat::csv ? csv.str() : report.str());
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Moving-volume attainment criteria for compressible Euler flows"};
    app.require_subcommand(1);

    Options opt;
    int (*handler)(const Options&) = nullptr;
    const auto add = [&](const char* name, const char* help, int (*fn)(const Options&)) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", opt.config, "Scenario config file")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", opt.out, "Output directory (overrides output.dir)");
        sub->add_option("--format", opt.format, "Output format on stdout")
            ->check(CLI::IsMember({"csv", "report"}));
        sub->add_option("--seed", opt.seed, "Seed for randomized checks");
        sub->callback([&handler, fn] { handler = fn; });
    };
    add("criteria", "Evaluate the initial-time attainment criteria", cmd_criteria);
    add("run", "Run the scenario and classify the outcome", cmd_run);
    add("verify", "Run the lemma, inequality and oracle suites", cmd_verify);
    add("sweep", "Tabulate the criteria over the declared (q, epsilon) grid", cmd_sweep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config;
    }

    try {
        return handler(opt);
    } catch (const lagvol::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const lagvol::InvalidArgument& e) {
        std::cerr << "precondition violated: " << e.what() << '\n';
        return exit_config;
    } catch (const lagvol::GeometryError& e) {
        std::cerr << "precondition violated: " << e.what() << '\n';
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_failed;
    }
}
