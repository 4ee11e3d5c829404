// discrete.hpp — The scaled step Hamiltonian, the single-step unitary, its
// compression between fixed noise vectors, powers of the compressed step, and
// the exact repeated-interaction evolution on a truncated chain.

#pragma once

#include "rqi/linalg.hpp"
#include "rqi/model.hpp"

namespace rqi {

struct StepUnitary {
    int k = 0;
    CMatrix matrix;  // on initial⊗noise, unitary
};

// The contraction on the initial space obtained by sandwiching the step
// between fixed noise-slice vectors: (I⊗psi)†·R·(I⊗phi)/(‖psi‖‖phi‖).
struct CompressedStep {
    int k = 0;
    CMatrix matrix;
    CVector psi;
    CVector phi;
};

// State of the initial system joined to `slices` consecutive noise slices,
// flattened with the initial index major and slice 1 the next-fastest:
// flat = ((i·dK + p_1)·dK + p_2)·dK + ...
struct ChainState {
    int k = 0;
    int slices = 0;
    CVector vector;
};

// 2^k Σ F_j⊗λ_j + 2^{k/2} Σ G_j⊗μ_j + Σ H_j⊗ν_j, dense on initial⊗noise.
CMatrix build_hamiltonian(const ModelSpec& model, int k,
                          const Tolerances& tol = default_tolerances());

// exp(i·2^{-k}·H_k); unitarity is checked against Tolerances::unitarity.
StepUnitary build_step(const ModelSpec& model, int k,
                       const Tolerances& tol = default_tolerances());

CompressedStep compress(const StepUnitary& step, const CVector& psi,
                        const CVector& phi,
                        const Tolerances& tol = default_tolerances());

// matrix^⌊t·2^k⌋ by binary exponentiation; t = 0 gives the identity.
CMatrix power(const CompressedStep& step, double t);

ChainState make_chain_state(const ModelSpec& model, int k, int slices,
                            const CVector& system, const CVector& slice,
                            const Tolerances& tol = default_tolerances());

// Applies the adjoint step to (initial, slice ℓ) for ℓ = 1..steps: the result
// is the Schrödinger-picture evolution of the state (adjoint convention).
ChainState chain_evolve(const ModelSpec& model, int k, int steps,
                        ChainState state,
                        const Tolerances& tol = default_tolerances());

// One adjoint step applied in place at a given slice (1-based).
void apply_adjoint_step(const CMatrix& step, Eigen::Index dim_initial,
                        Eigen::Index dim_noise, int slice, ChainState& state);

// <state, v ⊗ slice^{⊗m}> with m = state.slices.
Complex chain_overlap(const ChainState& state, const CVector& v,
                      const CVector& slice);

// Kronecker-term representation of i·2^{-k}·H_k, for exponential actions on
// vectors when the dense step would be too large.
KronOperator step_exponent_action(const ModelSpec& model, int k);

// (I⊗psi)†·exp(i·2^{-k}·H_k)·(u⊗phi)/(‖psi‖‖phi‖) without forming the step.
CVector compressed_apply(const ModelSpec& model, int k, const CVector& psi,
                         const CVector& phi, const CVector& u);

// Compressed step through the dense route when initial⊗noise is at most
// `dense_limit`, otherwise column-by-column through exponential actions.
CompressedStep build_compressed(const ModelSpec& model, int k, const CVector& psi,
                                const CVector& phi,
                                const Tolerances& tol = default_tolerances(),
                                Eigen::Index dense_limit = 512);

}  // namespace rqi
