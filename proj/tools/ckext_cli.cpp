// Command-line front end: build a taming/extension pair from a JSON config,
// run the verification battery, and emit the report/sample artifacts.

#include "ckext/function_catalog.hpp"
#include "ckext/pipeline.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"smooth taming multipliers and C^k extensions"};
    app.require_subcommand(1);

    std::string config_path;
    ckext::RunOptions opts;
    CLI::App* run = app.add_subcommand("run", "build from a config and run all checks");
    run->add_option("config", config_path, "JSON config file")->required()->check(CLI::ExistingFile);
    run->add_option("--report-json", opts.report_json_override, "write the check report here");
    run->add_option("--samples-csv", opts.samples_csv_override, "write evaluation samples here");
    run->add_flag_callback("--no-timestamp", [&opts] { opts.timestamp = false; },
                           "omit the timestamp field from the report");

    CLI::App* catalog = app.add_subcommand("catalog", "list the available function oracles");

    CLI11_PARSE(app, argc, argv);

    if (catalog->parsed()) {
        for (const auto& [id, what] : ckext::catalog_entries())
            std::cout << id << "\t" << what << "\n";
        return 0;
    }

    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "error: cannot read '" << config_path << "'\n";
        return 1;
    }
    std::ostringstream text;
    text << in.rdbuf();
    return ckext::run_pipeline(text.str(), std::cout, std::cerr, opts);
}
