// semigroup.hpp — Drive-dependent limit generators, their contraction
// semigroups, and ordered products over piecewise-constant drives.

#pragma once

#include <cstdint>

#include "rqi/linalg.hpp"
#include "rqi/model.hpp"

namespace rqi {

struct Generator {
    CVector alpha;
    CVector beta;
    CMatrix matrix;  // on the initial space
};

// Σ_ij ᾱ_i N_ij β_j + Σ_i ᾱ_i M_i + Σ_i L_i β_i + K − ((|α|²+|β|²)/2)·I.
Generator generator(const LimitCoefficients& coeffs, const CVector& alpha,
                    const CVector& beta);

// exp(t·gen). Always the Padé route: the generator is non-normal in general.
CMatrix evolve(const Generator& gen, double t);

// Piecewise-constant drive on [0, N] with exact dyadic breakpoints: breakpoint
// j sits at breaks[j]·2^{-level}. One (alpha, beta) pair per interval.
struct PiecewiseDrive {
    int level = 0;
    std::vector<std::int64_t> breaks;  // ascending, breaks.front() == 0
    std::vector<CVector> alphas;       // breaks.size() − 1 entries
    std::vector<CVector> betas;

    double time_at(std::size_t j) const { return std::ldexp(double(breaks.at(j)), -level); }
    double horizon() const { return time_at(breaks.size() - 1); }
};

void check_drive(const PiecewiseDrive& drive, int channels);

// Ordered product T_{t1−t0}(α_0β_0)·T_{t2−t1}(α_1β_1)···T_{t−t_j}(α_jβ_j)
// for t inside interval j. Throws for t outside [0, horizon].
CMatrix piecewise_evolve(const LimitCoefficients& coeffs,
                         const PiecewiseDrive& drive, double t);

}  // namespace rqi
