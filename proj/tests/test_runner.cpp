#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rqi/runner.hpp"

using namespace rqi;

namespace {

std::filesystem::path scratch_dir(const char* leaf) {
    const auto dir = std::filesystem::temp_directory_path() / "rqi_runner_tests" / leaf;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << f.rdbuf();
    return buffer.str();
}

int run_quiet(const std::string& command, const RunConfig& cfg) {
    std::ostringstream out, err;
    return run_command(command, cfg, out, err);
}

}  // namespace

TEST_SUITE("runner") {

TEST_CASE("converge writes the stable CSV schema, one row per cell point") {
    const auto dir = scratch_dir("converge");
    // Short grid for speed; the default decrease thresholds assume the full
    // grid, so only the artifacts matter here, not the verdict.
    RunConfig cfg = parse_config(R"({
      "model": {"example": "spin_chain"},
      "k_grid": [4, 5, 6]
    })");
    cfg.out_dir = dir.string();
    const int code = run_quiet("converge", cfg);
    CHECK((code == 0 || code == 1));

    const std::string csv = slurp(dir / "cells.csv");
    std::istringstream lines(csv);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "k,alpha_index,beta_index,t,residual,error,rate");

    std::size_t rows = 0;
    for (std::string line; std::getline(lines, line);) {
        if (!line.empty()) ++rows;
    }
    // 16 witness cells x 3 resolutions x 17 dyadic times at the coarsest level.
    CHECK(rows == std::size_t(16) * 3 * 17);

    CHECK(std::filesystem::exists(dir / "report.json"));
}

TEST_CASE("coeffs emits the coefficient blocks and validation verdict") {
    const auto dir = scratch_dir("coeffs");
    RunConfig cfg = parse_config(R"({"model": {"example": "holevo_truncated"}})");
    cfg.out_dir = dir.string();
    CHECK(run_quiet("coeffs", cfg) == 0);
    const std::string coeffs = slurp(dir / "coeffs.json");
    CHECK(coeffs.find("\"N\"") != std::string::npos);
    CHECK(coeffs.find("\"hp\"") != std::string::npos);
}

TEST_CASE("failing checks exit with status 1, usage errors with 2") {
    const auto dir = scratch_dir("failures");
    RunConfig cfg = parse_config(R"({
      "model": {"example": "spin_chain"},
      "k_grid": [4, 5, 6],
      "checks": {"rate_window": [-0.011, -0.01]}
    })");
    cfg.out_dir = (dir / "bad_window").string();
    CHECK(run_quiet("converge", cfg) == 1);

    RunConfig ok = parse_config(R"({"model": {"example": "spin_chain"}})");
    ok.out_dir = (dir / "usage").string();
    CHECK(run_quiet("not-a-command", ok) == 2);
}

TEST_CASE("cocycle-check stays within the dense-chain budget and passes") {
    const auto dir = scratch_dir("cocycle");
    RunConfig cfg = parse_config(R"({
      "model": {"example": "spin_chain"},
      "k_grid": [2],
      "alphas": [[[1.0, 0.0]]]
    })");
    cfg.out_dir = dir.string();
    CHECK(run_quiet("cocycle-check", cfg) == 0);
    const std::string report = slurp(dir / "report.json");
    CHECK(report.find("\"cocycle\"") != std::string::npos);
    CHECK(report.find("\"max_defect\"") != std::string::npos);
}

TEST_CASE("full example suites pass for the fast built-ins") {
    for (const char* name : {"spin_chain", "holevo_truncated"}) {
        const auto dir = scratch_dir(name);
        RunConfig cfg = default_config_for_example(name);
        cfg.out_dir = dir.string();
        CHECK(run_quiet("example", cfg) == 0);
        CHECK(std::filesystem::exists(dir / "coeffs.json"));
        CHECK(std::filesystem::exists(dir / "cells.csv"));
        CHECK(std::filesystem::exists(dir / "report.json"));
    }
}

}  // TEST_SUITE
