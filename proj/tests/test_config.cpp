#include <doctest.h>

#include "rqi/coefficients.hpp"
#include "rqi/config.hpp"
#include "rqi/json_io.hpp"

using namespace rqi;

TEST_SUITE("config") {

TEST_CASE("minimal example config materializes every default") {
    const RunConfig cfg = parse_config(R"({"model": {"example": "spin_chain"}})");
    CHECK(cfg.example_name == "spin_chain");
    CHECK(cfg.model.dim_initial == 2);
    CHECK(cfg.k_grid == std::vector<int>{6, 7, 8, 9, 10, 11, 12, 13, 14});
    REQUIRE(cfg.alphas.size() == 4);  // 0, 1, i, 1+i
    CHECK(cfg.alphas[3](0) == Complex(1, 1));
    CHECK(cfg.betas.size() == 4);
    CHECK(cfg.t_max == 1.0);
    CHECK(cfg.seed == 20240901);
    CHECK(cfg.checks.rate_window_lo == -0.7);
    CHECK(cfg.tol.hp == 1e-10);
}

TEST_CASE("canonical echo round-trips byte for byte") {
    for (const char* text :
         {R"({"model": {"example": "spin_chain"}})",
          R"({"model": {"example": "holevo_truncated",
              "params": {"fock_cut": 5}},
              "k_grid": [2, 4, 6], "seed": 7, "t_max": 0.5})"}) {
        const RunConfig cfg = parse_config(text);
        const std::string canonical = canonical_config(cfg);
        const RunConfig reparsed = parse_config(canonical);
        CHECK(canonical_config(reparsed) == canonical);
    }
}

TEST_CASE("inline models parse and round-trip") {
    const char* text = R"({
      "model": {"inline": {
        "dim_initial": 1, "dim_noise": 2, "channels": 1,
        "F_list": [], "lambda_list": [],
        "G_list": [[[[0.5, 0.0]]]],
        "mu_list": [[[[0.0, 0.0], [1.0, 0.0]], [[1.0, 0.0], [0.0, 0.0]]]],
        "H_list": [], "nu_list": [],
        "chi": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]
      }},
      "k_grid": [3, 4, 5]
    })";
    const RunConfig cfg = parse_config(text);
    CHECK(cfg.example_name.empty());
    CHECK(cfg.model.dim_initial == 1);
    CHECK(cfg.model.G_list.size() == 1);
    const std::string canonical = canonical_config(cfg);
    CHECK(canonical_config(parse_config(canonical)) == canonical);
}

TEST_CASE("unknown keys are hard errors with the offending path") {
    CHECK_THROWS_WITH_AS(
        (void)parse_config(R"({"model": {"example": "spin_chain"}, "bogus": 1})"),
        doctest::Contains("bogus"), config_error);
    CHECK_THROWS_WITH_AS(
        (void)parse_config(
            R"({"model": {"example": "spin_chain", "params": {"Q": []}}})"),
        doctest::Contains("Q"), config_error);
}

TEST_CASE("non-Hermitian parameter matrices are rejected naming key and residual") {
    const char* text = R"({"model": {"example": "spin_chain",
        "params": {"F": [[[0.0, 0.0], [1.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]]]}}})";
    CHECK_THROWS_WITH_AS((void)parse_config(text), doctest::Contains("residual"),
                         config_error);
    CHECK_THROWS_WITH_AS((void)parse_config(text), doctest::Contains("params.F"),
                         config_error);
}

TEST_CASE("dimension mismatches are reported with the key path") {
    const char* text = R"({
      "model": {"inline": {
        "dim_initial": 2, "dim_noise": 2, "channels": 1,
        "F_list": [], "lambda_list": [], "G_list": [], "mu_list": [],
        "H_list": [], "nu_list": [],
        "chi": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0]]]
      }}
    })";
    CHECK_THROWS_WITH_AS((void)parse_config(text), doctest::Contains("chi"),
                         config_error);
}

TEST_CASE("malformed values are rejected") {
    CHECK_THROWS_AS((void)parse_config("not json"), config_error);
    CHECK_THROWS_AS((void)parse_config(R"({"model": {}})"), config_error);
    CHECK_THROWS_AS(
        (void)parse_config(R"({"model": {"example": "spin_chain"}, "k_grid": []})"),
        config_error);
    CHECK_THROWS_AS(
        (void)parse_config(
            R"({"model": {"example": "spin_chain"}, "k_grid": [4, 4]})"),
        config_error);
    CHECK_THROWS_AS(
        (void)parse_config(
            R"({"model": {"example": "spin_chain"}, "alphas": [[[1, 0], [0, 0]]]})"),
        config_error);
    CHECK_THROWS_AS(
        (void)parse_config(
            R"({"model": {"example": "spin_chain"}, "t_max": -1})"),
        config_error);
}

TEST_CASE("witness overrides are honored") {
    const RunConfig cfg = parse_config(R"({
      "model": {"example": "spin_chain"},
      "alphas": [[[0.0, 0.0]], [[2.0, 0.0]]],
      "betas": [[[0.0, 1.0]]]
    })");
    REQUIRE(cfg.alphas.size() == 2);
    CHECK(cfg.alphas[1](0) == Complex(2, 0));
    REQUIRE(cfg.betas.size() == 1);
    CHECK(cfg.betas[0](0) == Complex(0, 1));
}

TEST_CASE("resolve_bundle ties configs to expected coefficients") {
    const RunConfig cfg = parse_config(R"({"model": {"example": "spin_chain"}})");
    const ExampleBundle bundle = resolve_bundle(cfg);
    CHECK(bundle.name == "spin_chain");
    CHECK(coefficient_distance(bundle.expected,
                               builtin_example("spin_chain").expected) <= 1e-14);
}

}  // TEST_SUITE
