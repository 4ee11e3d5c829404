// examples.hpp — Built-in model families with their analytically expected
// limit coefficients: two-level chain noise, truncated Fock noise driving
// time-ordered exponentials, a truncated oscillator with quadratic dynamics,
// and a model whose initial space grows with the resolution.

#pragma once

#include <array>
#include <functional>
#include <string>

#include "rqi/linalg.hpp"
#include "rqi/model.hpp"

namespace rqi {

struct ExampleBundle {
    std::string name;
    ModelSpec model;              // reference model (k-independent unless noted)
    LimitCoefficients expected;   // closed-form limit coefficients
    std::string notes;

    // Per-resolution hooks; unset means the reference model and plain u.
    std::function<ModelSpec(int)> model_at;
    std::function<CVector(const CVector&, int)> project_u;

    // Basis size for the default harness test vectors (capped at dim_initial).
    Eigen::Index u_basis_count = 0;
};

// Single-channel spin chain: two-level noise with number-type gauge coupling
// and quadrature couplings. Expected coefficients are the closed form
// N = e^{iF}, M = f(F)(G1−iG2), L = (G1+iG2)f(F),
// K = iH + i<chi0,HK chi0> + (G1+iG2)g(F)(G1−iG2).
ExampleBundle spin_chain(const CMatrix& F, const CMatrix& G1, const CMatrix& G2,
                         const CMatrix& H, const CMatrix& HK);

// Discrete noise built from a truncated Fock space (dim fock_cut ≥ 3) with the
// gauge coupling through the number operator and quadrature couplings split
// from an arbitrary bounded G. Expected: N = e^{iF}, M = f(F)G, L = G†f(F),
// K = iH + G†g(F)G.
ExampleBundle holevo_truncated(const CMatrix& F, const CMatrix& G,
                               const CMatrix& H, Eigen::Index fock_cut);

// Truncated oscillator on both factors (dim osc_cut), quadratic Hamiltonian
// H = k1 p² + k2(pq+qp) + k3 q² + k4 p + k5 q + k6, linear noise couplings
// M1 = m·p + m'·q, L1 = −m̄·p − m̄'·q. Expected: N = I, M = M1, L = L1,
// K = iH + ½L1M1.
ExampleBundle linear_system(Complex m, Complex mp, const std::array<double, 6>& ks,
                            Eigen::Index osc_cut);

// Two-level noise with the initial space compressed to the leading growth(k)
// basis vectors at resolution k; the expected coefficients are the full-space
// limit N = I, M1 = M, L1 = −M†, K = iH − ½M†M, and test vectors are
// projected along with the model.
ExampleBundle finite_dim_approx(const CMatrix& H, const CMatrix& M,
                                std::function<Eigen::Index(int)> growth);

// Parameter records for the built-in instances, with deterministic defaults;
// the command-line runner overrides individual fields from the config.
struct SpinChainParams {
    CMatrix F, G1, G2, H, HK;
};
struct HolevoParams {
    CMatrix F, G, H;
    Eigen::Index fock_cut = 8;
};
struct LinearSystemParams {
    Complex m, mp;
    std::array<double, 6> ks{};
    Eigen::Index osc_cut = 40;
};
struct FiniteDimParams {
    CMatrix H, M;
    Eigen::Index growth_cap = 16;  // growth(k) = min(max(k,1), growth_cap)
};

SpinChainParams default_spin_chain_params();
HolevoParams default_holevo_params();
LinearSystemParams default_linear_system_params();
FiniteDimParams default_finite_dim_params();

ExampleBundle make_bundle(const SpinChainParams& p);
ExampleBundle make_bundle(const HolevoParams& p);
ExampleBundle make_bundle(const LinearSystemParams& p);
ExampleBundle make_bundle(const FiniteDimParams& p);

// Default instance of a named example.
ExampleBundle builtin_example(const std::string& name);
std::vector<std::string> builtin_example_names();

}  // namespace rqi
