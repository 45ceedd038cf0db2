// nkze: run NKZE multi-agent search experiments and the oracle suite.
//
//   nkze run --preset fig1 --runs 5 --iterations 20 --out results
//   nkze run --config grid.cfg K=5 E=6
//   nkze verify --seed 7
//
// Exit codes: 0 success, 2 configuration error, 3 I/O error, 4 verification
// failure.

#include "nkze/config.hpp"
#include "nkze/engine.hpp"
#include "nkze/error.hpp"
#include "nkze/io.hpp"
#include "nkze/verify.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitVerify = 4;

struct RunArgs {
    std::string config;
    std::string preset;
    std::string model;
    std::optional<std::size_t> runs;
    std::optional<std::size_t> iterations;
    std::optional<std::uint64_t> seed;
    std::size_t jobs = 0;
    std::string out = "results";
    std::vector<std::string> overrides;
};

int cmd_run(const RunArgs& args) {
    std::vector<std::string> overrides;
    if (!args.model.empty()) overrides.push_back("model=" + args.model);
    if (args.runs) overrides.push_back("runs=" + std::to_string(*args.runs));
    if (args.iterations) overrides.push_back("iterations=" + std::to_string(*args.iterations));
    if (args.seed) overrides.push_back("seed=" + std::to_string(*args.seed));
    overrides.insert(overrides.end(), args.overrides.begin(), args.overrides.end());

    nkze::ExperimentSpec spec;
    try {
        if (!args.preset.empty() && !args.config.empty())
            throw nkze::ConfigError("--preset and --config are mutually exclusive");
        if (!args.preset.empty()) spec = nkze::preset(args.preset, overrides);
        else if (!args.config.empty()) spec = nkze::parse_config(args.config, overrides);
        else spec = nkze::parse_config_text("", overrides);
    } catch (const nkze::ConfigError& ex) {
        std::cerr << "configuration error: " << ex.what() << '\n';
        return kExitConfig;
    }

    const auto results = nkze::run_experiment(spec.cells, args.jobs);

    const std::filesystem::path out_dir(args.out);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    std::ofstream raw(out_dir / "raw.csv", std::ios::binary);
    std::ofstream agg(out_dir / "aggregate.csv", std::ios::binary);
    if (ec || !raw || !agg) {
        std::cerr << "I/O error: cannot write to '" << out_dir.string() << "'\n";
        return kExitIo;
    }
    nkze::io::write_raw_header(raw);
    nkze::io::write_aggregate_header(agg);
    for (const auto& cell : results) {
        nkze::io::write_raw_rows(raw, cell);
        nkze::io::write_aggregate_rows(agg, cell);
    }
    raw.close();
    agg.close();
    if (!raw || !agg) {
        std::cerr << "I/O error: failed while writing results\n";
        return kExitIo;
    }

    nkze::io::write_summary(std::cout, results);
    std::cout << "wrote " << (out_dir / "raw.csv").string() << " and " << (out_dir / "aggregate.csv").string()
              << '\n';

    for (const auto& cell : results) {
        if (!cell.error.empty()) {
            std::cerr << "cell '" << cell.cell.id << "' failed: " << cell.error << '\n';
            return kExitConfig;
        }
    }
    return 0;
}

int cmd_verify(std::uint64_t seed) {
    nkze::VerifyOptions opts;
    opts.seed = seed;
    bool ok = true;
    for (const auto& r : nkze::run_verify_suite(opts)) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name;
        if (!r.passed) std::cout << "  " << r.detail;
        std::cout << '\n';
        ok = ok && r.passed;
    }
    return ok ? 0 : kExitVerify;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-agent search on endogenously changing NKZE landscapes"};
    app.require_subcommand(1);

    RunArgs run;
    auto* run_cmd = app.add_subcommand("run", "Run an experiment grid and write raw.csv / aggregate.csv");
    run_cmd->add_option("--config", run.config, "Config file (key = value, [cell] sections)");
    run_cmd->add_option("--preset", run.preset, "Figure preset")
        ->check(CLI::IsMember({"fig1", "fig2", "fig3", "fig4", "fig5"}));
    run_cmd->add_option("--model", run.model, "Override model: standard, stealthl, structc");
    run_cmd->add_option("--runs", run.runs, "Replications per cell (StructC: appearances per composition)");
    run_cmd->add_option("--iterations", run.iterations, "Iterations per replication");
    run_cmd->add_option("--seed", run.seed, "Master seed");
    run_cmd->add_option("--jobs", run.jobs, "Worker threads (0 = all cores)");
    run_cmd->add_option("--out", run.out, "Output directory");
    run_cmd->add_option("overrides", run.overrides, "key=value overrides applied to every cell");

    std::uint64_t verify_seed = 1;
    auto* verify_cmd = app.add_subcommand("verify", "Run the brute-force oracle suite");
    verify_cmd->add_option("--seed", verify_seed, "Seed for the randomized instances");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& ex) {
        const int code = app.exit(ex);
        return code == 0 ? 0 : kExitConfig;
    }

    if (*run_cmd) return cmd_run(run);
    return cmd_verify(verify_seed);
}
