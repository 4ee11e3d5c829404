// convergence.hpp — The discretization test harness: generator residuals,
// power-vs-semigroup errors, exact chain-vs-compressed defects, decay-rate
// fits, and per-cell report assembly.

#pragma once

#include <functional>
#include <string>

#include "rqi/discrete.hpp"
#include "rqi/linalg.hpp"
#include "rqi/model.hpp"
#include "rqi/semigroup.hpp"

namespace rqi {

// ‖2^k(C_k − I)u − Gen·u‖₂ where C_k is the step compressed between the
// coherent slices of alpha and beta at resolution k.
double generator_residual(const ModelSpec& model, const LimitCoefficients& coeffs,
                          const CVector& alpha, const CVector& beta,
                          const CVector& u, int k,
                          const Tolerances& tol = default_tolerances());

// Per t: ‖C_k^⌊t·2^k⌋·u − T_t·u‖₂ with T the limit semigroup of (alpha, beta).
std::vector<double> semigroup_power_error(
    const ModelSpec& model, const LimitCoefficients& coeffs, const CVector& alpha,
    const CVector& beta, const CVector& u, int k, const std::vector<double>& t_grid,
    const Tolerances& tol = default_tolerances());

// Per t: |normalized chain matrix element − <u, C_k^⌊t·2^k⌋ v>| over a chain of
// 2^k slices on [0, 1]. An exact identity for any unitary step: defects are
// pure floating-point noise.
std::vector<double> chain_power_defects(const ModelSpec& model, int k,
                                        const CVector& alpha, const CVector& beta,
                                        const CVector& u, const CVector& v,
                                        const std::vector<double>& t_grid,
                                        const Tolerances& tol = default_tolerances());

// Same identity with a caller-supplied step unitary (it holds for any unitary,
// not only the built one); the coherent slices still come from the model.
std::vector<double> chain_power_defects(const StepUnitary& step,
                                        const ModelSpec& model,
                                        const CVector& alpha, const CVector& beta,
                                        const CVector& u, const CVector& v,
                                        const std::vector<double>& t_grid,
                                        const Tolerances& tol = default_tolerances());

struct RateFit {
    double slope = 0.0;
    bool reliable = false;
    std::string note;
};

// Least-squares slope of log2(error) against k. Refuses grids with fewer than
// three points or errors at the double-precision noise floor.
RateFit fit_rate(const std::vector<int>& k_grid, const std::vector<double>& errors);

struct CellReport {
    int alpha_index = 0;
    int beta_index = 0;
    std::vector<double> residuals;            // per k, max over the u set
    std::vector<std::vector<double>> errors;  // per k, per t, max over the u set
    RateFit rate;
    bool monotone_pass = false;  // residual decreasing in k, one jitter allowed
    bool rate_pass = false;      // fitted rate inside the acceptance window
    bool error_decrease_pass = false;  // max-over-t error shrank enough
    bool diverged = false;       // residuals grew or became non-finite
};

struct ConvergenceReport {
    std::string model_id;
    std::uint64_t seed = 0;
    std::vector<int> k_grid;
    std::vector<double> t_grid;
    std::vector<CVector> alphas;
    std::vector<CVector> betas;
    std::vector<CellReport> cells;  // sorted by (alpha_index, beta_index)
    bool model_valid = false;
    bool pass = false;
};

struct HarnessOptions {
    std::vector<int> k_grid = {6, 7, 8, 9, 10, 11, 12, 13, 14};
    double t_max = 1.0;                      // dyadic grid at min(k_grid)
    double rate_window_lo = -0.7;            // acceptance window for the slope
    double rate_window_hi = -0.3;
    double min_error_decrease = 4.0;         // first-k vs last-k max error ratio
    int jitter_allowance = 1;
    bool with_semigroup_errors = true;
    std::vector<CVector> u_set;              // defaults to basis + seeded unit vector
    std::uint64_t seed = 20240901;
    // Per-k model and test-vector hooks for models whose initial space grows.
    std::function<ModelSpec(int)> model_at;
    std::function<CVector(const CVector&, int)> project_u;
    Tolerances tol = default_tolerances();
};

std::vector<double> dyadic_grid(double t_max, int level);

ConvergenceReport run_harness(const ModelSpec& model,
                              const LimitCoefficients& coeffs,
                              const std::vector<CVector>& alphas,
                              const std::vector<CVector>& betas,
                              const HarnessOptions& opts,
                              const std::string& model_id);

}  // namespace rqi
