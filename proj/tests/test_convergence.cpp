#include <doctest.h>

#include <cmath>

#include "rqi/coefficients.hpp"
#include "rqi/convergence.hpp"
#include "rqi/examples.hpp"
#include "test_support.hpp"

using namespace rqi;

namespace {

CVector cvec1(Complex z) {
    CVector v(1);
    v << z;
    return v;
}

}  // namespace

TEST_SUITE("convergence") {

TEST_CASE("rate fits: exact slopes and refusals") {
    const std::vector<int> ks = {1, 2, 3};
    CHECK(fit_rate(ks, {1.0, 0.5, 0.25}).slope == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(fit_rate(ks, {1.0, std::pow(2.0, -0.5), 0.5}).slope ==
          doctest::Approx(-0.5).epsilon(1e-12));

    CHECK_FALSE(fit_rate({1, 2}, {1.0, 0.5}).reliable);
    CHECK_FALSE(fit_rate(ks, {1.0, 1e-15, 0.25}).reliable);
    CHECK_FALSE(fit_rate({1, 1, 2}, {1.0, 0.5, 0.25}).reliable);
}

TEST_CASE("generator residual vanishes on the zero vector") {
    const ExampleBundle bundle = builtin_example("spin_chain");
    const double res =
        generator_residual(bundle.model, bundle.expected, cvec1(Complex(1, 0)),
                           cvec1(Complex(0, 1)), CVector::Zero(2), 6);
    CHECK(res == 0.0);
}

TEST_CASE("drift-only model: residual decays at first order") {
    Rng rng(50);
    ModelSpec model;
    model.dim_initial = 3;
    model.dim_noise = 3;
    model.channels = 1;
    model.H_list = {random_hermitian(rng, 3)};
    model.nu_list = {random_hermitian(rng, 3)};
    model.chi = {CVector::Unit(3, 0), CVector::Unit(3, 1)};
    const LimitCoefficients coeffs = limit_coefficients(model);

    const CVector u = random_unit_vector(rng, 3);
    std::vector<int> ks;
    std::vector<double> residuals;
    for (int k = 6; k <= 14; ++k) {
        ks.push_back(k);
        residuals.push_back(generator_residual(model, coeffs, cvec1(0), cvec1(0), u, k));
    }
    for (std::size_t i = 1; i < residuals.size(); ++i) {
        CHECK(residuals[i] < residuals[i - 1]);
    }
    const RateFit fit = fit_rate(ks, residuals);
    REQUIRE(fit.reliable);
    CHECK(fit.slope >= -1.2);
    CHECK(fit.slope <= -0.8);
}

TEST_CASE("chain example: residual decays at the half-order coupling rate") {
    const ExampleBundle bundle = builtin_example("spin_chain");
    Rng rng(51);
    const CVector u = random_unit_vector(rng, 2);
    std::vector<int> ks;
    std::vector<double> residuals;
    for (int k = 6; k <= 14; ++k) {
        ks.push_back(k);
        residuals.push_back(generator_residual(bundle.model, bundle.expected,
                                               cvec1(Complex(1, 0)),
                                               cvec1(Complex(0, 1)), u, k));
    }
    int increases = 0;
    for (std::size_t i = 1; i < residuals.size(); ++i) {
        if (!(residuals[i] < residuals[i - 1])) ++increases;
    }
    CHECK(increases <= 1);
    const RateFit fit = fit_rate(ks, residuals);
    REQUIRE(fit.reliable);
    CHECK(fit.slope >= -0.7);
    CHECK(fit.slope <= -0.3);
}

TEST_CASE("semigroup power error: zero at t = 0 and decaying maxima") {
    const ExampleBundle bundle = builtin_example("spin_chain");
    Rng rng(52);
    const CVector u = random_unit_vector(rng, 2);
    const std::vector<double> t_grid = dyadic_grid(1.0, 6);

    double prev_max = 0.0;
    bool first = true;
    int increases = 0;
    for (int k : {6, 8, 10, 12, 14}) {
        const std::vector<double> errs =
            semigroup_power_error(bundle.model, bundle.expected, cvec1(Complex(1, 0)),
                                  cvec1(Complex(0, 1)), u, k, t_grid);
        CHECK(errs.front() == 0.0);
        const double max_err = *std::max_element(errs.begin(), errs.end());
        if (!first && !(max_err < prev_max)) ++increases;
        first = false;
        prev_max = max_err;
    }
    CHECK(increases <= 1);
}

TEST_CASE("chain identity: defects at floating-point noise for the chain example") {
    const ExampleBundle bundle = builtin_example("spin_chain");
    Rng rng(53);
    const CVector u = random_unit_vector(rng, 2);
    const CVector v = random_unit_vector(rng, 2);
    for (int k : {0, 2, 3}) {
        const std::vector<double> t_grid = dyadic_grid(1.0, k);
        const std::vector<double> defects =
            chain_power_defects(bundle.model, k, cvec1(Complex(1, 0)),
                                cvec1(Complex(0, 1)), u, v, t_grid);
        for (double d : defects) CHECK(d <= 1e-10);
    }
}

TEST_CASE("chain identity holds for an arbitrary unitary replacing the step") {
    const ExampleBundle bundle = builtin_example("spin_chain");
    Rng rng(54);
    const CMatrix h = random_hermitian(rng, 4);
    const StepUnitary random_step{2, expm(Complex(0, 1) * h)};
    const CVector u = random_unit_vector(rng, 2);
    const CVector v = random_unit_vector(rng, 2);
    const std::vector<double> t_grid = dyadic_grid(1.0, 2);
    const std::vector<double> defects =
        chain_power_defects(random_step, bundle.model, cvec1(Complex(0, 1)),
                            cvec1(Complex(1, 0)), u, v, t_grid);
    for (double d : defects) CHECK(d <= 1e-10);
}

TEST_CASE("power error is bounded by accumulated one-step distances") {
    // Triangle inequality: the power-vs-semigroup error at t is at most
    // floor(t 2^k) single-step distances plus the residual accumulation;
    // checked with a factor-4 cushion.
    const ExampleBundle bundle = builtin_example("spin_chain");
    Rng rng(55);
    const CVector u = random_unit_vector(rng, 2);
    const CVector alpha = cvec1(Complex(1, 0));
    const CVector beta = cvec1(Complex(0, 1));
    const int k = 6;
    const CVector psi = coherent_slice(bundle.model, alpha, k);
    const CVector phi = coherent_slice(bundle.model, beta, k);
    const CompressedStep c = build_compressed(bundle.model, k, psi, phi);
    const Generator gen = generator(bundle.expected, alpha, beta);
    const double one_step =
        op_norm(c.matrix - evolve(gen, std::ldexp(1.0, -k)));

    const std::vector<double> t_grid = dyadic_grid(1.0, 6);
    const std::vector<double> errs = semigroup_power_error(
        bundle.model, bundle.expected, alpha, beta, u, k, t_grid);
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        const double steps = std::floor(t_grid[i] * std::ldexp(1.0, k));
        CHECK(errs[i] <= 4.0 * (steps * one_step) + 1e-12);
    }
}

TEST_CASE("harness aggregates cells and passes on the chain example") {
    const ExampleBundle bundle = builtin_example("spin_chain");
    HarnessOptions opts;
    opts.k_grid = {6, 8, 10, 12};
    const std::vector<CVector> witnesses = {cvec1(Complex(0, 0)), cvec1(Complex(1, 0))};
    const ConvergenceReport report = run_harness(
        bundle.model, bundle.expected, witnesses, witnesses, opts, bundle.name);
    CHECK(report.model_valid);
    CHECK(report.cells.size() == 4);
    CHECK(report.pass);
    for (const CellReport& cell : report.cells) {
        CHECK(cell.monotone_pass);
        CHECK_FALSE(cell.diverged);
        CHECK(cell.error_decrease_pass);
    }
}

TEST_CASE("harness flags divergence for a gauge term that misses the vacuum") {
    // Violating the vacuum-annihilation condition leaves a 2^k-scaled block in
    // the compressed step: residuals must grow, and the harness must flag the
    // cell rather than fail.
    ModelSpec model = builtin_example("spin_chain").model;
    model.lambda_list[0] = CMatrix::Identity(2, 2);
    CHECK_FALSE(validate(model).pass);

    const LimitCoefficients coeffs = limit_coefficients(model);
    HarnessOptions opts;
    opts.k_grid = {6, 8, 10};
    opts.with_semigroup_errors = false;
    const std::vector<CVector> witnesses = {cvec1(Complex(1, 0))};
    const ConvergenceReport report =
        run_harness(model, coeffs, witnesses, witnesses, opts, "invalid");
    CHECK_FALSE(report.model_valid);
    CHECK_FALSE(report.pass);
    REQUIRE(report.cells.size() == 1);
    CHECK(report.cells[0].diverged);
    for (double r : report.cells[0].residuals) CHECK(std::isfinite(r));
}

TEST_CASE("two-channel model: residuals and power errors converge") {
    Rng rng(56);
    const ModelSpec model = testing::random_span_model(rng, 3, 5, 2);
    REQUIRE(validate(model).pass);
    const LimitCoefficients coeffs = limit_coefficients(model);
    REQUIRE(hp_check(coeffs).pass);

    CVector alpha(2), beta(2);
    alpha << Complex(1, 0), Complex(0, -1);
    beta << Complex(0.5, 0.5), Complex(1, 0);
    const CVector u = random_unit_vector(rng, 3);

    std::vector<int> ks;
    std::vector<double> residuals;
    for (int k = 6; k <= 12; ++k) {
        ks.push_back(k);
        residuals.push_back(generator_residual(model, coeffs, alpha, beta, u, k));
    }
    int increases = 0;
    for (std::size_t i = 1; i < residuals.size(); ++i) {
        if (!(residuals[i] < residuals[i - 1])) ++increases;
    }
    CHECK(increases <= 1);
    const RateFit fit = fit_rate(ks, residuals);
    REQUIRE(fit.reliable);
    CHECK(fit.slope <= -0.3);

    const std::vector<double> t_grid = dyadic_grid(1.0, 6);
    const std::vector<double> coarse =
        semigroup_power_error(model, coeffs, alpha, beta, u, 6, t_grid);
    const std::vector<double> fine =
        semigroup_power_error(model, coeffs, alpha, beta, u, 10, t_grid);
    const double coarse_max = *std::max_element(coarse.begin(), coarse.end());
    const double fine_max = *std::max_element(fine.begin(), fine.end());
    CHECK(fine_max < 0.5 * coarse_max);
}

TEST_CASE("harness flags non-convergence for wrong limit coefficients") {
    // A valid model compared against deliberately wrong coefficients: the
    // power errors stall instead of decreasing and the harness reports the
    // failure without throwing.
    const ExampleBundle bundle = builtin_example("spin_chain");
    LimitCoefficients wrong = bundle.expected;
    wrong.N[0][0] *= 2.0;
    REQUIRE_FALSE(hp_check(wrong).pass);

    HarnessOptions opts;
    opts.k_grid = {6, 8, 10, 12};
    const std::vector<CVector> witnesses = {cvec1(Complex(1, 0))};
    const ConvergenceReport report = run_harness(
        bundle.model, wrong, witnesses, witnesses, opts, "wrong-coefficients");
    CHECK(report.model_valid);
    CHECK_FALSE(report.pass);
    REQUIRE(report.cells.size() == 1);
    const CellReport& cell = report.cells[0];
    const bool all_checks =
        cell.error_decrease_pass && cell.rate_pass && cell.monotone_pass;
    CHECK_FALSE(all_checks);
    const double first =
        *std::max_element(cell.errors.front().begin(), cell.errors.front().end());
    const double last =
        *std::max_element(cell.errors.back().begin(), cell.errors.back().end());
    CHECK(last > 0.25 * first);  // stalled, not converging
}

TEST_CASE("dyadic grids") {
    const std::vector<double> grid = dyadic_grid(1.0, 3);
    REQUIRE(grid.size() == 9);
    CHECK(grid.front() == 0.0);
    CHECK(grid.back() == 1.0);
    CHECK(grid[1] == 0.125);
}

}  // TEST_SUITE
