// config.hpp — Run configuration: a strict JSON document with every default
// materialized on echo, complex numbers always as [re, im] pairs.

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "rqi/examples.hpp"
#include "rqi/linalg.hpp"
#include "rqi/model.hpp"

namespace rqi {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CheckSettings {
    double rate_window_lo = -0.7;
    double rate_window_hi = -0.3;
    double min_error_decrease = 4.0;
    int jitter_allowance = 1;
    bool semigroup_errors = true;
};

struct RunConfig {
    std::string example_name;               // empty when the model is inline
    std::optional<ModelSpec> inline_model;
    ModelSpec model;                        // resolved model (reference instance)
    std::vector<int> k_grid = {6, 7, 8, 9, 10, 11, 12, 13, 14};
    std::vector<CVector> alphas;            // witness drive vectors
    std::vector<CVector> betas;
    double t_max = 1.0;
    std::uint64_t seed = 20240901;
    std::string out_dir = "out";
    Tolerances tol;
    CheckSettings checks;
    // Raw example parameter overrides, kept verbatim for the echo round-trip.
    std::string example_params_json;        // "{}" when none
};

// Parses and fully validates a config document. Unknown keys, malformed
// values, dimension mismatches, and non-Hermitian operator entries are hard
// errors naming the offending key path (and residual where applicable).
RunConfig parse_config(const std::string& text);

// Canonical echo with all defaults materialized; parse_config on the result
// reproduces the same canonical form byte for byte.
std::string canonical_config(const RunConfig& config);

// Default run configuration for a built-in example (the heavier examples trim
// the witness set and resolution grid so a plain CLI run stays quick).
RunConfig default_config_for_example(const std::string& name);

// Bundle for the configured model: the named example rebuilt from the
// materialized parameters, or a synthetic bundle around an inline model whose
// expected coefficients are the pipeline output.
ExampleBundle resolve_bundle(const RunConfig& config);

}  // namespace rqi
