#include <doctest.h>

#include <cmath>

#include "rqi/examples.hpp"
#include "rqi/model.hpp"
#include "test_support.hpp"

using namespace rqi;

TEST_SUITE("model") {

TEST_CASE("builtin two-level chain model passes every validation check") {
    const ExampleBundle bundle = builtin_example("spin_chain");
    const ValidationReport report = validate(bundle.model);
    CHECK(report.pass);
    for (const ValidationCheck& c : report.checks) {
        INFO(c.name);
        CHECK(c.passed);
    }
}

TEST_CASE("violating <chi0, mu chi0> = 0 fails the matching check with residual 1") {
    ModelSpec model = builtin_example("spin_chain").model;
    model.mu_list[0] = CMatrix::Identity(2, 2);  // <chi0, mu chi0> = 1
    const ValidationReport report = validate(model);
    CHECK_FALSE(report.pass);
    bool found = false;
    for (const ValidationCheck& c : report.checks) {
        if (c.name.find("<chi0, mu[0]") != std::string::npos) {
            found = true;
            CHECK(c.residual == doctest::Approx(1.0).epsilon(1e-12));
            CHECK_FALSE(c.passed);
        }
    }
    CHECK(found);
}

TEST_CASE("violating lambda chi0 = 0 fails the matching check") {
    ModelSpec model = builtin_example("spin_chain").model;
    model.lambda_list[0] = CMatrix::Identity(2, 2);  // lambda chi0 = chi0
    const ValidationReport report = validate(model);
    CHECK_FALSE(report.pass);
    bool found = false;
    for (const ValidationCheck& c : report.checks) {
        if (c.name.find("lambda[0]*chi0") != std::string::npos) {
            found = true;
            CHECK_FALSE(c.passed);
        }
    }
    CHECK(found);
}

TEST_CASE("structural mismatches throw before numeric checks") {
    ModelSpec model = builtin_example("spin_chain").model;
    model.lambda_list.clear();
    CHECK_THROWS_AS((void)validate(model), std::invalid_argument);

    ModelSpec bad_dim = builtin_example("spin_chain").model;
    bad_dim.F_list[0] = CMatrix::Identity(3, 3);
    CHECK_THROWS_AS((void)validate(bad_dim), std::invalid_argument);
}

TEST_CASE("validation is pure: same report twice") {
    const ModelSpec model = builtin_example("spin_chain").model;
    const ValidationReport r1 = validate(model);
    const ValidationReport r2 = validate(model);
    REQUIRE(r1.checks.size() == r2.checks.size());
    for (std::size_t i = 0; i < r1.checks.size(); ++i) {
        CHECK(r1.checks[i].residual == r2.checks[i].residual);
    }
}

TEST_CASE("coherent_slice norms and special values") {
    const ModelSpec model = builtin_example("spin_chain").model;

    CVector zero(1);
    zero << Complex(0, 0);
    CHECK((coherent_slice(model, zero, 5) - model.chi[0]).norm() == 0.0);

    CVector one(1);
    one << Complex(1, 0);
    const CVector s0 = coherent_slice(model, one, 0);
    CHECK((s0 - (model.chi[0] + model.chi[1])).norm() <= 1e-15);
    CHECK(s0.squaredNorm() == doctest::Approx(2.0).epsilon(1e-14));

    CVector two_i(1);
    two_i << Complex(0, 2);
    CHECK(coherent_slice(model, two_i, 3).squaredNorm() ==
          doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("coherent_slice is linear in the drive after subtracting chi0") {
    Rng rng(11);
    const ModelSpec model =
        testing::random_span_model(rng, 2, 5, 3);
    const CVector a = random_vector(rng, 3);
    const CVector b = random_vector(rng, 3);
    const Complex w = rng.cnormal();
    const int k = 4;
    const CVector lhs = coherent_slice(model, a + w * b, k) - model.chi[0];
    const CVector rhs = (coherent_slice(model, a, k) - model.chi[0]) +
                        w * (coherent_slice(model, b, k) - model.chi[0]);
    CHECK((lhs - rhs).norm() <= 1e-14);
}

TEST_CASE("coherent_slice rejects a wrong-length drive") {
    const ModelSpec model = builtin_example("spin_chain").model;
    CHECK_THROWS_AS((void)coherent_slice(model, CVector::Zero(2), 3),
                    std::invalid_argument);
}

TEST_CASE("overlap error: zero drive, frozen value, monotone decay") {
    CVector zero(1);
    zero << Complex(0, 0);
    for (int k = 0; k <= 8; ++k) CHECK(exp_vector_overlap_error(zero, k) == 0.0);

    CVector one(1);
    one << Complex(1, 0);
    // e − 1.125^8, evaluated independently.
    const double expected = std::exp(1.0) - std::pow(1.125, 8);
    CHECK(exp_vector_overlap_error(one, 3) ==
          doctest::Approx(expected).epsilon(1e-14));
    CHECK(exp_vector_overlap_error(one, 3) == doctest::Approx(0.1524973).epsilon(1e-6));

    double prev = exp_vector_overlap_error(one, 0);
    for (int k = 1; k <= 20; ++k) {
        const double cur = exp_vector_overlap_error(one, k);
        CHECK(cur >= 0.0);
        CHECK(cur < prev);
        prev = cur;
    }
    CHECK(prev < 2e-6);
}

TEST_CASE("overlap error is nonnegative and decreasing over a drive grid") {
    for (double mag : {0.25, 0.5, 1.0, 2.0}) {
        CVector alpha(2);
        alpha << Complex(mag, 0), Complex(0, mag);
        double prev = exp_vector_overlap_error(alpha, 0);
        CHECK(prev >= 0.0);
        for (int k = 1; k <= 16; ++k) {
            const double cur = exp_vector_overlap_error(alpha, k);
            CHECK(cur >= 0.0);
            CHECK(cur <= prev);
            prev = cur;
        }
    }
}

}  // TEST_SUITE
