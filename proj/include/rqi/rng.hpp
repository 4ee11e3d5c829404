// rng.hpp — Seeded, reproducible random vectors and matrices. Gaussian draws
// use an explicit Box-Muller so output does not depend on the standard
// library's distribution implementation.

#pragma once

#include <cstdint>
#include <random>

#include "rqi/linalg.hpp"

namespace rqi {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() {  // in [0, 1)
        return std::ldexp(double(engine_() >> 11), -53);
    }

    double normal();
    Complex cnormal() { return Complex(normal(), normal()); }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

CVector random_vector(Rng& rng, Eigen::Index n);
CVector random_unit_vector(Rng& rng, Eigen::Index n);
CMatrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols);
CMatrix random_hermitian(Rng& rng, Eigen::Index n);

}  // namespace rqi
