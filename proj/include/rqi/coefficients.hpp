// coefficients.hpp — Closed-form limit coefficients of the interaction class,
// Hudson-Parthasarathy residual checks, the spin-chain closed form, and the
// gauge/subspace diagnostics.

#pragma once

#include "rqi/linalg.hpp"
#include "rqi/model.hpp"

namespace rqi {

// f(x) = (e^{ix}−1)/x and g(x) = (e^{ix}−ix−1)/x², extended continuously with
// f(0) = i, g(0) = −1/2. Below |x| = 1e-4 a truncated Taylor series avoids the
// cancellation in the quotient; the switch is continuous to 1e-14.
Complex scalar_f(double x);
Complex scalar_g(double x);

// Σ_j F_j⊗λ_j: the 2^k-scaled (gauge) part of the step Hamiltonian.
CMatrix gauge_coupling(const ModelSpec& model,
                       const Tolerances& tol = default_tolerances());

// Limit coefficients of the model: with Fg = gauge_coupling and w_i = μ_i·chi0,
//   N_pq = (I⊗chi_p)† e^{iFg} (I⊗chi_q),
//   M_p  = Σ_i [(I⊗chi_p)† f(Fg) (I⊗w_i)]·G_i,
//   L_p  = Σ_i G_i·[(I⊗w_i)† f(Fg) (I⊗chi_p)],
//   K    = i Σ_j <chi0,ν_j chi0>·H_j + Σ_ij G_i·[(I⊗w_i)† g(Fg) (I⊗w_j)]·G_j.
// One eigendecomposition of Fg is reused for all blocks; the empty-F case is
// evaluated in closed form (f(0) = i, g(0) = −1/2).
LimitCoefficients limit_coefficients(const ModelSpec& model,
                                     const Tolerances& tol = default_tolerances());

// Single-channel closed form for the two-level noise model:
//   N = e^{iF}, M = f(F)(G1−iG2), L = (G1+iG2)f(F),
//   K = iH + i·hk_expect·I + (G1+iG2)·g(F)·(G1−iG2).
LimitCoefficients spin_coefficients(const CMatrix& F, const CMatrix& G1,
                                    const CMatrix& G2, const CMatrix& H,
                                    Complex hk_expect,
                                    const Tolerances& tol = default_tolerances());

// Frobenius residuals of the algebraic unitarity conditions on (N, M, L, K).
struct CheckedCoefficients {
    LimitCoefficients coeffs;
    double isometry = 0.0;    // ‖N†N − I‖_F on the stacked block matrix
    double coisometry = 0.0;  // ‖NN† − I‖_F
    double drift = 0.0;       // ‖K + K† + Σ_i L_i L_i†‖_F
    double m_relation = 0.0;  // ‖M_p + Σ_j N_pj L_j†‖_F stacked over p
    double tolerance = 0.0;
    bool pass = false;
};

CheckedCoefficients hp_check(const LimitCoefficients& coeffs,
                             double tol = default_tolerances().hp);

// Max blockwise Frobenius distance between two coefficient families.
double coefficient_distance(const LimitCoefficients& a, const LimitCoefficients& b);

// Max blockwise change of the limit coefficients when every chi_j is rotated
// by the same global phase. Zero in exact arithmetic.
double gauge_invariance_defect(const ModelSpec& model, double phase,
                               const Tolerances& tol = default_tolerances());

// Sufficient conditions for the limit coefficients to pass hp_check: each
// μ_j·chi0 lies in S = span{chi_1..chi_n} and each λ_j leaves S invariant.
struct SpanConditionReport {
    std::vector<double> mu_defects;      // ‖(I−P_S)·μ_j·chi0‖ per j
    std::vector<double> lambda_defects;  // ‖(I−P_S)·λ_j·P_S‖_F per j
    double tolerance = 0.0;
    bool pass = false;
};

SpanConditionReport span_condition_check(const ModelSpec& model,
                                         double tol = 1e-12);

}  // namespace rqi
