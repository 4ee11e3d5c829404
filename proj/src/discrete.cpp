#include "rqi/discrete.hpp"

#include <cmath>
#include <sstream>

namespace rqi {

CMatrix build_hamiltonian(const ModelSpec& model, int k, const Tolerances& tol) {
    check_structure(model);
    if (k < 0) throw std::invalid_argument("build_hamiltonian: k must be >= 0");
    const std::size_t dim =
        std::size_t(model.dim_initial) * std::size_t(model.dim_noise);
    check_capacity(dim, dim, tol.max_entries, "build_hamiltonian");

    CMatrix h = CMatrix::Zero(dim, dim);
    const double f_scale = std::ldexp(1.0, k);
    const double g_scale = std::sqrt(std::ldexp(1.0, k));
    for (std::size_t j = 0; j < model.F_list.size(); ++j) {
        h += f_scale * kron(model.F_list[j], model.lambda_list[j], tol.max_entries);
    }
    for (std::size_t j = 0; j < model.G_list.size(); ++j) {
        h += g_scale * kron(model.G_list[j], model.mu_list[j], tol.max_entries);
    }
    for (std::size_t j = 0; j < model.H_list.size(); ++j) {
        h += kron(model.H_list[j], model.nu_list[j], tol.max_entries);
    }
    return h;
}

StepUnitary build_step(const ModelSpec& model, int k, const Tolerances& tol) {
    const CMatrix h = build_hamiltonian(model, k, tol);
    const CMatrix r =
        expm(Complex(0.0, std::ldexp(1.0, -k)) * h, tol);
    const double udef =
        (r.adjoint() * r - CMatrix::Identity(r.rows(), r.cols())).norm();
    if (udef > tol.unitarity) {
        std::ostringstream msg;
        msg << "build_step: step not unitary (defect " << udef << " > "
            << tol.unitarity << "); check Hermiticity of the model operators";
        throw std::runtime_error(msg.str());
    }
    return StepUnitary{k, r};
}

CompressedStep compress(const StepUnitary& step, const CVector& psi,
                        const CVector& phi, const Tolerances& tol) {
    const double npsi = psi.norm();
    const double nphi = phi.norm();
    if (npsi == 0.0 || nphi == 0.0) {
        throw std::invalid_argument("compress: noise vectors must be nonzero");
    }
    if (step.matrix.rows() % psi.size() != 0 || psi.size() != phi.size()) {
        throw std::invalid_argument("compress: noise vector dimension mismatch");
    }
    const Eigen::Index dim_left = step.matrix.rows() / psi.size();
    CMatrix m = sandwich_second_factor(step.matrix, psi, phi, dim_left);
    m /= npsi * nphi;
    const double nrm = op_norm(m);
    if (nrm > 1.0 + tol.contraction) {
        std::ostringstream msg;
        msg << "compress: compressed step is not a contraction (norm " << nrm
            << "); the step matrix is not unitary";
        throw std::runtime_error(msg.str());
    }
    return CompressedStep{step.k, std::move(m), psi, phi};
}

CMatrix power(const CompressedStep& step, double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw std::invalid_argument("power: t must be finite and >= 0");
    }
    long long e = (long long)(std::floor(t * std::ldexp(1.0, step.k)));
    CMatrix result = CMatrix::Identity(step.matrix.rows(), step.matrix.cols());
    CMatrix base = step.matrix;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

ChainState make_chain_state(const ModelSpec& model, int k, int slices,
                            const CVector& system, const CVector& slice,
                            const Tolerances& tol) {
    if (slices < 0) throw std::invalid_argument("make_chain_state: slices < 0");
    if (system.size() != model.dim_initial || slice.size() != model.dim_noise) {
        throw std::invalid_argument("make_chain_state: dimension mismatch");
    }
    std::size_t dim = std::size_t(model.dim_initial);
    for (int i = 0; i < slices; ++i) {
        check_capacity(dim, std::size_t(model.dim_noise), tol.max_entries,
                       "make_chain_state");
        dim *= std::size_t(model.dim_noise);
    }
    CVector v = system;
    for (int i = 0; i < slices; ++i) v = kron_vec(v, slice, tol.max_entries);
    return ChainState{k, slices, std::move(v)};
}

void apply_adjoint_step(const CMatrix& step, Eigen::Index dim_initial,
                        Eigen::Index dim_noise, int slice, ChainState& state) {
    const Eigen::Index local = dim_initial * dim_noise;
    if (step.rows() != local || step.cols() != local) {
        throw std::invalid_argument("apply_adjoint_step: step dimension mismatch");
    }
    if (slice < 1 || slice > state.slices) {
        throw std::invalid_argument("apply_adjoint_step: slice out of range");
    }
    const CMatrix adj = step.adjoint();

    // Strides in the flattened state: the initial index is outermost, slices
    // follow in order, so slice ℓ has stride dK^{m−ℓ}.
    std::size_t suffix = 1;
    for (int s = slice; s < state.slices; ++s) suffix *= std::size_t(dim_noise);
    std::size_t prefix = 1;
    for (int s = 1; s < slice; ++s) prefix *= std::size_t(dim_noise);
    const std::size_t sys_stride = prefix * std::size_t(dim_noise) * suffix;

    CVector scratch(local);
    for (std::size_t a = 0; a < prefix; ++a) {
        for (std::size_t b = 0; b < suffix; ++b) {
            const std::size_t base = a * std::size_t(dim_noise) * suffix + b;
            for (Eigen::Index i = 0; i < dim_initial; ++i) {
                for (Eigen::Index p = 0; p < dim_noise; ++p) {
                    scratch(i * dim_noise + p) =
                        state.vector(base + std::size_t(i) * sys_stride +
                                     std::size_t(p) * suffix);
                }
            }
            const CVector out = adj * scratch;
            for (Eigen::Index i = 0; i < dim_initial; ++i) {
                for (Eigen::Index p = 0; p < dim_noise; ++p) {
                    state.vector(base + std::size_t(i) * sys_stride +
                                 std::size_t(p) * suffix) = out(i * dim_noise + p);
                }
            }
        }
    }
}

ChainState chain_evolve(const ModelSpec& model, int k, int steps,
                        ChainState state, const Tolerances& tol) {
    if (steps < 0 || steps > state.slices) {
        throw std::invalid_argument(
            "chain_evolve: step count must lie in [0, slices]");
    }
    if (steps == 0) return state;
    const StepUnitary step = build_step(model, k, tol);
    for (int l = 1; l <= steps; ++l) {
        apply_adjoint_step(step.matrix, model.dim_initial, model.dim_noise, l,
                           state);
    }
    return state;
}

Complex chain_overlap(const ChainState& state, const CVector& v,
                      const CVector& slice) {
    CVector w = v;
    for (int i = 0; i < state.slices; ++i) {
        w = kron_vec(w, slice, std::size_t(state.vector.size()));
    }
    if (w.size() != state.vector.size()) {
        throw std::invalid_argument("chain_overlap: dimension mismatch");
    }
    return state.vector.dot(w);
}

KronOperator step_exponent_action(const ModelSpec& model, int k) {
    check_structure(model);
    KronOperator op;
    op.dim_left = model.dim_initial;
    op.dim_right = model.dim_noise;
    const Complex i_dt(0.0, std::ldexp(1.0, -k));
    const double f_scale = std::ldexp(1.0, k);
    const double g_scale = std::sqrt(std::ldexp(1.0, k));
    for (std::size_t j = 0; j < model.F_list.size(); ++j) {
        op.terms.push_back({i_dt * f_scale, model.F_list[j], model.lambda_list[j]});
    }
    for (std::size_t j = 0; j < model.G_list.size(); ++j) {
        op.terms.push_back({i_dt * g_scale, model.G_list[j], model.mu_list[j]});
    }
    for (std::size_t j = 0; j < model.H_list.size(); ++j) {
        op.terms.push_back({i_dt, model.H_list[j], model.nu_list[j]});
    }
    return op;
}

CVector compressed_apply(const ModelSpec& model, int k, const CVector& psi,
                         const CVector& phi, const CVector& u) {
    const double npsi = psi.norm();
    const double nphi = phi.norm();
    if (npsi == 0.0 || nphi == 0.0) {
        throw std::invalid_argument("compressed_apply: noise vectors must be nonzero");
    }
    if (u.size() != model.dim_initial || psi.size() != model.dim_noise ||
        phi.size() != model.dim_noise) {
        throw std::invalid_argument("compressed_apply: dimension mismatch");
    }
    const KronOperator op = step_exponent_action(model, k);
    const CVector w = expm_multiply(op, kron_vec(u, phi));
    // Contract the noise factor against psi.
    CVector out = CVector::Zero(model.dim_initial);
    for (Eigen::Index i = 0; i < model.dim_initial; ++i) {
        Complex acc(0.0, 0.0);
        for (Eigen::Index p = 0; p < model.dim_noise; ++p) {
            acc += std::conj(psi(p)) * w(i * model.dim_noise + p);
        }
        out(i) = acc;
    }
    return out / (npsi * nphi);
}

CompressedStep build_compressed(const ModelSpec& model, int k, const CVector& psi,
                                const CVector& phi, const Tolerances& tol,
                                Eigen::Index dense_limit) {
    const Eigen::Index joint = model.dim_initial * model.dim_noise;
    if (joint <= dense_limit) {
        return compress(build_step(model, k, tol), psi, phi, tol);
    }
    CMatrix m(model.dim_initial, model.dim_initial);
    for (Eigen::Index j = 0; j < model.dim_initial; ++j) {
        m.col(j) = compressed_apply(model, k, psi, phi,
                                    CVector::Unit(model.dim_initial, j));
    }
    const double nrm = op_norm(m);
    if (nrm > 1.0 + tol.contraction) {
        std::ostringstream msg;
        msg << "build_compressed: compressed step is not a contraction (norm "
            << nrm << "); exponential action accuracy is insufficient";
        throw std::runtime_error(msg.str());
    }
    return CompressedStep{k, std::move(m), psi, phi};
}

}  // namespace rqi
