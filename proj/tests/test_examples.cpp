#include <doctest.h>

#include <cmath>

#include "rqi/coefficients.hpp"
#include "rqi/convergence.hpp"
#include "rqi/discrete.hpp"
#include "rqi/examples.hpp"
#include "rqi/fock.hpp"
#include "test_support.hpp"

using namespace rqi;

namespace {

CVector cvec1(Complex z) {
    CVector v(1);
    v << z;
    return v;
}

}  // namespace

TEST_SUITE("examples") {

TEST_CASE("truncated ladder operators") {
    const Eigen::Index d = 5;
    const CMatrix a = annihilation_op(d);
    CHECK((a * CVector::Unit(d, 0)).norm() == 0.0);
    CHECK((a * CVector::Unit(d, 2) - std::sqrt(2.0) * CVector::Unit(d, 1)).norm() <=
          1e-15);
    CHECK((creation_op(d) - a.adjoint()).norm() == 0.0);
    CHECK((a.adjoint() * a - number_op(d)).norm() <= 1e-13);
    CHECK(hermiticity_residual(position_op(d)) <= 1e-15);
    CHECK(hermiticity_residual(momentum_op(d)) <= 1e-15);
    // [q, p] = -2i away from the cut with p = i(a - a†).
    const CMatrix comm = position_op(d) * momentum_op(d) - momentum_op(d) * position_op(d);
    CHECK(std::abs(comm(0, 0) - Complex(0, -2)) <= 1e-14);
}

TEST_CASE("chain example: trivial specialization") {
    // Zero gauge term, one active coupling: N = I, M = L = iG, K = -G^2/2.
    Rng rng(60);
    const CMatrix g = random_hermitian(rng, 2);
    const CMatrix zero = CMatrix::Zero(2, 2);
    const ExampleBundle bundle = spin_chain(zero, g, zero, zero, zero);
    const Complex i1(0, 1);
    CHECK((bundle.expected.N[0][0] - CMatrix::Identity(2, 2)).norm() <= 1e-13);
    CHECK((bundle.expected.M[0] - i1 * g).norm() <= 1e-13);
    CHECK((bundle.expected.L[0] - i1 * g).norm() <= 1e-13);
    CHECK((bundle.expected.K + 0.5 * g * g).norm() <= 1e-13);
}

TEST_CASE("chain example: pipeline equals closed form and passes the identities") {
    const ExampleBundle bundle = builtin_example("spin_chain");
    CHECK(validate(bundle.model).pass);
    CHECK(coefficient_distance(limit_coefficients(bundle.model), bundle.expected) <=
          1e-12);
    CHECK(hp_check(bundle.expected, 1e-10).pass);
}

TEST_CASE("fock-noise example: trivial specialization at zero gauge term") {
    Rng rng(61);
    const CMatrix g = random_matrix(rng, 2, 2);
    const CMatrix zero = CMatrix::Zero(2, 2);
    const ExampleBundle bundle = holevo_truncated(zero, g, zero, 6);
    const Complex i1(0, 1);
    CHECK((bundle.expected.N[0][0] - CMatrix::Identity(2, 2)).norm() <= 1e-13);
    CHECK((bundle.expected.M[0] - i1 * g).norm() <= 1e-13);
    CHECK((bundle.expected.L[0] - i1 * g.adjoint()).norm() <= 1e-13);
    CHECK((bundle.expected.K + 0.5 * g.adjoint() * g).norm() <= 1e-13);
}

TEST_CASE("fock-noise example: pipeline equals closed form for cuts above 3") {
    const ExampleBundle bundle = builtin_example("holevo_truncated");
    CHECK(validate(bundle.model).pass);
    CHECK(coefficient_distance(limit_coefficients(bundle.model), bundle.expected) <=
          1e-10);
    CHECK(hp_check(bundle.expected, 1e-10).pass);

    // The coefficient sandwiches only touch the two lowest noise levels, so
    // the cut does not move the coefficients, from the minimal cut upward.
    const HolevoParams params = default_holevo_params();
    for (Eigen::Index cut : {Eigen::Index(3), Eigen::Index(12)}) {
        HolevoParams resized = params;
        resized.fock_cut = cut;
        const ExampleBundle swept = make_bundle(resized);
        CHECK(coefficient_distance(bundle.expected, swept.expected) <= 1e-12);
        CHECK(coefficient_distance(limit_coefficients(swept.model), swept.expected) <=
              1e-10);
    }
}

TEST_CASE("oscillator example: pipeline equals closed form exactly") {
    const ExampleBundle small = make_bundle(LinearSystemParams{
        Complex(0.3, 0.1), Complex(-0.2, 0.15), {0.3, 0.1, 0.2, 0.05, -0.1, 0.0}, 10});
    CHECK(validate(small.model).pass);
    CHECK(coefficient_distance(limit_coefficients(small.model), small.expected) <=
          1e-12);
}

TEST_CASE("oscillator example: drift identity holds exactly for truncated factors") {
    const ExampleBundle bundle = make_bundle(LinearSystemParams{
        Complex(0.3, 0.1), Complex(-0.2, 0.15), {0.3, 0.1, 0.2, 0.05, -0.1, 0.0}, 12});
    const CMatrix drift = bundle.expected.K + bundle.expected.K.adjoint();
    const CMatrix lhs = -bundle.expected.L[0] * bundle.expected.L[0].adjoint();
    CHECK((drift - lhs).norm() <= 1e-12);
    // Full unitarity identities follow since N = I and L = -M†.
    CHECK(hp_check(bundle.expected, 1e-10).pass);
}

TEST_CASE("oscillator example: step Hamiltonian matches the direct display") {
    const LinearSystemParams p{Complex(0.25, -0.1), Complex(0.1, 0.2),
                               {0.2, 0.0, 0.1, 0.0, 0.05, 0.1}, 9};
    const ExampleBundle bundle = make_bundle(p);
    const Eigen::Index d = p.osc_cut;
    const CMatrix a = annihilation_op(d);
    const Complex i1(0, 1);
    const int k = 4;
    const CMatrix h = build_hamiltonian(bundle.model, k);
    const CMatrix q = position_op(d);
    const CMatrix pm = momentum_op(d);
    const CMatrix ham = p.ks[0] * pm * pm + p.ks[1] * (pm * q + q * pm) +
                        p.ks[2] * q * q + p.ks[3] * pm + p.ks[4] * q +
                        p.ks[5] * CMatrix::Identity(d, d);
    const CMatrix m1 = p.m * pm + p.mp * q;
    const CMatrix l1 = -std::conj(p.m) * pm - std::conj(p.mp) * q;
    const CMatrix expected =
        kron(ham, CMatrix::Identity(d, d)) -
        i1 * std::sqrt(std::ldexp(1.0, k)) *
            (kron(m1, a.adjoint()) + kron(l1, a));
    CHECK((h - expected).norm() <= 1e-11);
}

TEST_CASE("oscillator example: drift-only instance decays at first order") {
    const ExampleBundle bundle = make_bundle(LinearSystemParams{
        Complex(0, 0), Complex(0, 0), {0.3, 0.1, 0.2, 0.05, -0.1, 0.0}, 16});
    Rng rng(62);
    CVector u = CVector::Zero(16);
    u.head(4) = random_unit_vector(rng, 4);
    std::vector<int> ks;
    std::vector<double> residuals;
    for (int k = 6; k <= 12; k += 2) {
        ks.push_back(k);
        residuals.push_back(generator_residual(bundle.model, bundle.expected,
                                               cvec1(0), cvec1(0), u, k));
    }
    for (std::size_t i = 1; i < residuals.size(); ++i) {
        CHECK(residuals[i] < residuals[i - 1]);
    }
    const RateFit fit = fit_rate(ks, residuals);
    REQUIRE(fit.reliable);
    CHECK(fit.slope >= -1.3);
    CHECK(fit.slope <= -0.7);
}

TEST_CASE("fock-noise example: residual decays and the rate is at least half order") {
    const ExampleBundle bundle = builtin_example("holevo_truncated");
    Rng rng(65);
    const CVector u = random_unit_vector(rng, 2);
    std::vector<int> ks;
    std::vector<double> residuals;
    for (int k = 6; k <= 12; ++k) {
        ks.push_back(k);
        residuals.push_back(generator_residual(bundle.model, bundle.expected,
                                               cvec1(Complex(1, 0)),
                                               cvec1(Complex(0, 1)), u, k));
    }
    for (std::size_t i = 1; i < residuals.size(); ++i) {
        CHECK(residuals[i] < residuals[i - 1]);
    }
    const RateFit fit = fit_rate(ks, residuals);
    REQUIRE(fit.reliable);
    CHECK(fit.slope <= -0.3);
}

TEST_CASE("growing-initial-space example: projected model family") {
    const ExampleBundle bundle = builtin_example("finite_dim_approx");
    REQUIRE(bundle.model_at);
    REQUIRE(bundle.project_u);

    // Full-dimension member reduces to the reference model.
    const ModelSpec full = bundle.model_at(16);
    CHECK((full.G_list[0] - bundle.model.G_list[0]).norm() <= 1e-14);

    // Small members act on a genuinely projected block.
    const ModelSpec small = bundle.model_at(3);
    CHECK(small.H_list[0].block(3, 3, 13, 13).norm() == 0.0);
    CHECK(validate(small).pass);

    // Projection hook truncates test vectors.
    CVector u = CVector::Ones(16);
    const CVector u3 = bundle.project_u(u, 3);
    CHECK(u3.head(3).norm() == doctest::Approx(std::sqrt(3.0)));
    CHECK(u3.tail(13).norm() == 0.0);
}

TEST_CASE("growing-initial-space example: expected coefficients pass and match") {
    const ExampleBundle bundle = builtin_example("finite_dim_approx");
    CHECK(hp_check(bundle.expected, 1e-10).pass);
    // At full growth the pipeline on the projected model reproduces the limit.
    const LimitCoefficients pipeline = limit_coefficients(bundle.model_at(16));
    CHECK(coefficient_distance(pipeline, bundle.expected) <= 1e-12);
}

TEST_CASE("growing-initial-space example: residuals shrink as both scales refine") {
    const ExampleBundle bundle = builtin_example("finite_dim_approx");
    const CVector u = CVector::Constant(16, Complex(0.25, 0.0));  // uniform tail
    std::vector<double> residuals;
    for (int k : {6, 10, 14, 16}) {
        residuals.push_back(generator_residual(bundle.model_at(k), bundle.expected,
                                               cvec1(Complex(1, 0)), cvec1(Complex(0, 1)),
                                               bundle.project_u(u, k), k));
    }
    int increases = 0;
    for (std::size_t i = 1; i < residuals.size(); ++i) {
        if (!(residuals[i] < residuals[i - 1])) ++increases;
    }
    CHECK(increases <= 1);
    CHECK(residuals.back() < 0.25 * residuals.front());
}

TEST_CASE("bundles reject malformed parameters") {
    Rng rng(64);
    const CMatrix h = random_hermitian(rng, 2);
    const CMatrix nonherm = h + CMatrix::Constant(2, 2, Complex(0, 0.5));
    const CMatrix zero = CMatrix::Zero(2, 2);
    CHECK_THROWS_AS((void)spin_chain(nonherm, zero, zero, zero, zero),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)holevo_truncated(h, h, h, 2), std::invalid_argument);
    CHECK_THROWS_AS((void)linear_system(Complex(0, 0), Complex(0, 0),
                                        {0, 0, 0, 0, 0, 0}, 4),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)builtin_example("nonexistent"), std::invalid_argument);
}

}  // TEST_SUITE
