// model.hpp — Declaration and validation of discrete interaction models on
// finite-dimensional initial and noise spaces, plus the limit-coefficient
// value type they converge to.

#pragma once

#include <string>
#include <vector>

#include "rqi/linalg.hpp"

namespace rqi {

// A repeated-interaction model. The single-step Hamiltonian at resolution k is
//   H_k = 2^k Σ_j F_j⊗λ_j + 2^{k/2} Σ_j G_j⊗μ_j + Σ_j H_j⊗ν_j,
// with F/G/H Hermitian on the initial space and λ/μ/ν Hermitian on the noise
// space. chi[0..channels] is an orthonormal family of noise vectors; the
// coherent slice chi[0] + 2^{-k/2}·Σ_j α_j·chi[j] carries the drive amplitudes.
struct ModelSpec {
    Eigen::Index dim_initial = 0;
    Eigen::Index dim_noise = 0;
    int channels = 0;
    std::vector<CMatrix> F_list;       // paired with lambda_list
    std::vector<CMatrix> G_list;       // paired with mu_list
    std::vector<CMatrix> H_list;       // paired with nu_list
    std::vector<CMatrix> lambda_list;
    std::vector<CMatrix> mu_list;
    std::vector<CMatrix> nu_list;
    std::vector<CVector> chi;          // channels+1 vectors on the noise space
};

// Limit equation coefficients: N is a channels×channels block family, M and L
// are per-channel blocks, K is the drift; all blocks act on the initial space.
struct LimitCoefficients {
    int channels = 0;
    std::vector<std::vector<CMatrix>> N;
    std::vector<CMatrix> M;
    std::vector<CMatrix> L;
    CMatrix K;
};

struct ValidationCheck {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    bool structural = false;  // holds by construction in finite dimensions
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool pass = false;
};

// Runs every numerically checkable model condition (Hermiticity of all listed
// operators, orthonormality of the chi family, λ_j·chi0 = 0, <chi0,μ_j chi0> = 0)
// and reports the domain-type conditions as structural. Dimension or pairing
// mismatches throw before any numeric check runs.
ValidationReport validate(const ModelSpec& model,
                          const Tolerances& tol = default_tolerances());

// Throws unless the lists pair up and every operator/vector has the declared
// dimensions and finite entries. Shared by validate and the model consumers.
void check_structure(const ModelSpec& model);

// Throws unless every block is square with the drift's dimension and the
// block counts match the channel count.
void check_coefficients(const LimitCoefficients& coeffs);

// chi0 + 2^{-k/2}·Σ_j alpha_j·chi_j (unnormalized); ‖result‖² = 1 + 2^{-k}|α|².
CVector coherent_slice(const ModelSpec& model, const CVector& alpha, int k);

// Squared embedding error e^{|α|²} − (1 + |α|²2^{-k})^{2^k} of the discrete
// coherent chain against the continuum coherent state.
double exp_vector_overlap_error(const CVector& alpha, int k);

}  // namespace rqi
