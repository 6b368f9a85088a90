// Runs acceptance items 1-11 and prints one PASS/FAIL line per item.

#include "suite.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
    jforge::acceptance::SuiteConfig cfg;
    CLI::App app{"jordanforge acceptance suite"};
    app.add_option("--seed", cfg.seed, "master seed");
    app.add_option("--threads", cfg.threads, "worker threads for the first run")->check(CLI::PositiveNumber);
    app.add_option("--output-dir", cfg.output_dir, "directory for per-instance JSON results");
    CLI11_PARSE(app, argc, argv);

    cfg.progress = [](const std::string& line) { std::cerr << line << std::endl; };
    const auto report = jforge::acceptance::run_suite(cfg);
    std::cout << "\n" << jforge::acceptance::format_report(report);
    std::cout << (report.all_pass() ? "ALL PASS" : "SOME ITEMS FAILED") << std::endl;
    return report.all_pass() ? 0 : 1;
}
