// Command-line driver: deterministic experiment runs with machine-readable
// artifacts (report.json, cells.csv, coeffs.json).

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rqi/config.hpp"
#include "rqi/runner.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream stream(path, std::ios::binary);
    if (!stream) throw rqi::config_error("cannot read config file " + path);
    std::ostringstream buffer;
    buffer << stream.rdbuf();
    return buffer.str();
}

struct CommonArgs {
    std::string config_path;
    std::string example_name;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool out_set = false;
};

rqi::RunConfig resolve(const CommonArgs& args) {
    rqi::RunConfig cfg;
    if (!args.config_path.empty()) {
        cfg = rqi::parse_config(read_file(args.config_path));
    } else if (!args.example_name.empty()) {
        cfg = rqi::default_config_for_example(args.example_name);
    } else {
        throw rqi::config_error("either --config or an example name is required");
    }
    if (args.seed_set) cfg.seed = args.seed;
    if (args.out_set) cfg.out_dir = args.out_dir;
    return cfg;
}

void add_common(CLI::App* cmd, CommonArgs& args, bool with_example_option) {
    cmd->add_option("--config", args.config_path, "path to a JSON run config");
    cmd->add_option("--out", args.out_dir, "output directory")
        ->each([&args](const std::string&) { args.out_set = true; });
    cmd->add_option("--seed", args.seed, "seed for the reproducible test vectors")
        ->each([&args](const std::string&) { args.seed_set = true; });
    if (with_example_option) {
        cmd->add_option("--example", args.example_name,
                        "built-in example name (alternative to --config)");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"repeated-interaction approximations of quantum stochastic models"};
    app.require_subcommand(1);

    CommonArgs args;
    CLI::App* coeffs = app.add_subcommand("coeffs", "emit the limit coefficients");
    CLI::App* check_hp =
        app.add_subcommand("check-hp", "unitarity conditions on the coefficients");
    CLI::App* converge =
        app.add_subcommand("converge", "generator residuals and semigroup errors");
    CLI::App* cocycle =
        app.add_subcommand("cocycle-check", "chain versus compressed-power identity");
    for (CLI::App* cmd : {coeffs, check_hp, converge, cocycle}) {
        add_common(cmd, args, true);
    }
    CLI::App* example =
        app.add_subcommand("example", "full suite for a built-in example");
    example->add_option("name", args.example_name, "built-in example name")
        ->required();
    add_common(example, args, false);

    CLI11_PARSE(app, argc, argv);

    std::string command = app.get_subcommands().front()->get_name();
    try {
        const rqi::RunConfig cfg = resolve(args);
        return rqi::run_command(command, cfg, std::cout, std::cerr);
    } catch (const rqi::config_error& e) {
        std::cerr << "{\"error\":{\"type\":\"config\",\"message\":"
                  << nlohmann::json(std::string(e.what())).dump() << "}}\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "{\"error\":{\"type\":\"internal\",\"message\":"
                  << nlohmann::json(std::string(e.what())).dump() << "}}\n";
        return 3;
    }
}
