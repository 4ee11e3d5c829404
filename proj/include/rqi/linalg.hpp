// linalg.hpp — Dense complex kernel: Kronecker products, Hermitian spectra,
// scalar functions of Hermitian matrices, matrix exponentials, norms.

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace rqi {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Central numeric tolerances and the dense-capacity guard. All defaults are
// load-bearing: tests and the acceptance suite pin against these values.
struct Tolerances {
    double spectral = 1e-12;        // eigendecomposition reconstruction (relative)
    double hermiticity = 1e-12;     // relative Hermiticity residual
    double unitarity = 1e-11;       // ‖R†R − I‖_F for step unitaries
    double orthonormality = 1e-12;  // chi-family Gram defect (entrywise)
    double contraction = 1e-10;     // compressed-step operator-norm headroom
    double hp = 1e-10;              // Hudson-Parthasarathy residuals
    double identity = 1e-10;        // chain-vs-compressed defects
    std::size_t max_entries = std::size_t{1} << 22;  // dense matrix/state capacity
};

const Tolerances& default_tolerances();

// Thrown when a requested dense object would exceed the capacity guard.
// The chain simulator grows exponentially; fail fast with the offending dims.
struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check_capacity(std::size_t rows, std::size_t cols, std::size_t max_entries,
                    const char* what);

bool all_finite(const CMatrix& a);
bool all_finite(const CVector& v);

// ‖a − a†‖_F / max(1, ‖a‖_F); defined for square a only.
double hermiticity_residual(const CMatrix& a);

double fro_norm(const CMatrix& a);

// Largest singular value, computed from the top eigenvalue of a†a.
double op_norm(const CMatrix& a);

// Kronecker product, initial factor major: entry[(i·br+p),(j·bc+q)] = a(i,j)·b(p,q).
CMatrix kron(const CMatrix& a, const CMatrix& b,
             std::size_t max_entries = default_tolerances().max_entries);

// Tensor product of vectors with the same index convention as kron.
CVector kron_vec(const CVector& a, const CVector& b,
                 std::size_t max_entries = default_tolerances().max_entries);

struct Spectrum {
    Eigen::VectorXd eigenvalues;  // ascending
    CMatrix eigenvectors;         // unitary; column i pairs with eigenvalues[i]
};

// Spectral decomposition of a Hermitian matrix. Rejects inputs whose
// Hermiticity residual exceeds the tolerance (the residual is reported).
Spectrum hermitian_eig(const CMatrix& a,
                       const Tolerances& tol = default_tolerances());

// V·diag(fn(e_i))·V† from an existing decomposition.
CMatrix spectrum_apply(const Spectrum& s, const std::function<Complex(double)>& fn);

// fn applied to a Hermitian matrix through its spectrum.
CMatrix apply_scalar_function(const CMatrix& a, const std::function<Complex(double)>& fn,
                              const Tolerances& tol = default_tolerances());

// Matrix exponential by Padé(13) scaling-and-squaring, no spectral shortcuts.
CMatrix expm_pade(const CMatrix& a);

// Matrix exponential. Hermitian and skew-Hermitian inputs are detected and
// routed through the spectral path (semigroup powers amplify unitarity drift);
// everything else goes through expm_pade.
CMatrix expm(const CMatrix& a, const Tolerances& tol = default_tolerances());

// (I⊗psi)† · X · (I⊗phi) for X on a two-factor space with the kron index
// convention above; dim_left is the size of the initial (left) factor.
CMatrix sandwich_second_factor(const CMatrix& x, const CVector& psi,
                               const CVector& phi, Eigen::Index dim_left);

// Sum of Kronecker-structured terms Σ_j c_j·A_j⊗B_j applied to vectors on the
// two-factor space without materializing the product matrices.
struct KronTerm {
    Complex coeff;
    CMatrix left;   // on the initial factor
    CMatrix right;  // on the noise factor
};

struct KronOperator {
    std::vector<KronTerm> terms;
    Eigen::Index dim_left = 0;
    Eigen::Index dim_right = 0;

    CVector apply(const CVector& v) const;
    double norm_bound() const;  // Σ |c_j|·‖A_j‖·‖B_j‖ (operator norms)
};

// e^{op}·v by uniform substepping and truncated Taylor summation; substep
// count is driven by norm_bound so each substep has norm ≤ 1.
CVector expm_multiply(const KronOperator& op, const CVector& v);

}  // namespace rqi
