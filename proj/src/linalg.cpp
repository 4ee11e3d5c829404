#include "rqi/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rqi {

const Tolerances& default_tolerances() {
    static const Tolerances tol{};
    return tol;
}

void check_capacity(std::size_t rows, std::size_t cols, std::size_t max_entries,
                    const char* what) {
    if (rows != 0 && cols > max_entries / rows) {
        std::ostringstream msg;
        msg << what << ": requested " << rows << "x" << cols
            << " exceeds the capacity guard of " << max_entries
            << " entries; raise Tolerances::max_entries to override";
        throw capacity_error(msg.str());
    }
}

bool all_finite(const CMatrix& a) {
    return a.allFinite();
}

bool all_finite(const CVector& v) {
    return v.allFinite();
}

double hermiticity_residual(const CMatrix& a) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("hermiticity_residual: matrix not square");
    }
    const double scale = std::max(1.0, a.norm());
    return (a - a.adjoint()).norm() / scale;
}

double fro_norm(const CMatrix& a) {
    return a.norm();
}

double op_norm(const CMatrix& a) {
    if (a.size() == 0) return 0.0;
    const CMatrix gram = a.adjoint() * a;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (gram + gram.adjoint()),
                                              Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("op_norm: eigensolver failed");
    }
    const double top = es.eigenvalues().maxCoeff();
    return std::sqrt(std::max(0.0, top));
}

CMatrix kron(const CMatrix& a, const CMatrix& b, std::size_t max_entries) {
    const std::size_t rows = std::size_t(a.rows()) * std::size_t(b.rows());
    const std::size_t cols = std::size_t(a.cols()) * std::size_t(b.cols());
    check_capacity(rows, cols, max_entries, "kron");
    CMatrix out(rows, cols);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

CVector kron_vec(const CVector& a, const CVector& b, std::size_t max_entries) {
    check_capacity(std::size_t(a.size()), std::size_t(b.size()), max_entries,
                   "kron_vec");
    CVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

Spectrum hermitian_eig(const CMatrix& a, const Tolerances& tol) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("hermitian_eig: matrix not square");
    }
    const double res = hermiticity_residual(a);
    if (res > tol.hermiticity) {
        std::ostringstream msg;
        msg << "hermitian_eig: input not Hermitian (relative residual " << res
            << " > " << tol.hermiticity << ")";
        throw std::invalid_argument(msg.str());
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (a + a.adjoint()));
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("hermitian_eig: eigensolver failed");
    }
    return Spectrum{es.eigenvalues(), es.eigenvectors()};
}

CMatrix spectrum_apply(const Spectrum& s, const std::function<Complex(double)>& fn) {
    CVector fvals(s.eigenvalues.size());
    for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
        const Complex v = fn(s.eigenvalues[i]);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            std::ostringstream msg;
            msg << "spectrum_apply: scalar function returned a non-finite value at "
                   "eigenvalue "
                << s.eigenvalues[i];
            throw std::runtime_error(msg.str());
        }
        fvals(i) = v;
    }
    return s.eigenvectors * fvals.asDiagonal() * s.eigenvectors.adjoint();
}

CMatrix apply_scalar_function(const CMatrix& a, const std::function<Complex(double)>& fn,
                              const Tolerances& tol) {
    return spectrum_apply(hermitian_eig(a, tol), fn);
}

namespace {

// Padé(13) numerator coefficients (Higham 2005); theta13 bounds the scaled
// 1-norm for double precision.
constexpr double kPade13[] = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0,  129060195264000.0,   10559470521600.0,
    670442572800.0,      33522128640.0,       1323241920.0,
    40840800.0,          960960.0,            16380.0,
    182.0,               1.0};
constexpr double kTheta13 = 5.371920351148152;

double one_norm(const CMatrix& a) {
    double best = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        best = std::max(best, a.col(j).cwiseAbs().sum());
    }
    return best;
}

}  // namespace

CMatrix expm_pade(const CMatrix& a) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("expm_pade: matrix not square");
    }
    const Eigen::Index n = a.rows();
    const CMatrix id = CMatrix::Identity(n, n);
    if (n == 0) return a;

    const double nrm = one_norm(a);
    if (nrm == 0.0) return id;
    int squarings = 0;
    if (nrm > kTheta13) {
        squarings = std::max(0, int(std::ceil(std::log2(nrm / kTheta13))));
    }
    const CMatrix as = a * std::ldexp(1.0, -squarings);

    const CMatrix a2 = as * as;
    const CMatrix a4 = a2 * a2;
    const CMatrix a6 = a2 * a4;
    const CMatrix u =
        as * (a6 * (kPade13[13] * a6 + kPade13[11] * a4 + kPade13[9] * a2) +
              kPade13[7] * a6 + kPade13[5] * a4 + kPade13[3] * a2 + kPade13[1] * id);
    const CMatrix v =
        a6 * (kPade13[12] * a6 + kPade13[10] * a4 + kPade13[8] * a2) +
        kPade13[6] * a6 + kPade13[4] * a4 + kPade13[2] * a2 + kPade13[0] * id;

    CMatrix r = (v - u).partialPivLu().solve(v + u);
    for (int i = 0; i < squarings; ++i) r = r * r;
    return r;
}

CMatrix expm(const CMatrix& a, const Tolerances& tol) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("expm: matrix not square");
    }
    const double scale = std::max(1.0, a.norm());
    if ((a - a.adjoint()).norm() / scale <= tol.hermiticity) {
        return apply_scalar_function(
            a, [](double x) { return Complex(std::exp(x), 0.0); }, tol);
    }
    if ((a + a.adjoint()).norm() / scale <= tol.hermiticity) {
        // a = i·b with b Hermitian; exp(a) = e^{ib} through the spectrum of b.
        const CMatrix b = Complex(0.0, -1.0) * a;
        return apply_scalar_function(
            b, [](double x) { return std::polar(1.0, x); }, tol);
    }
    return expm_pade(a);
}

CMatrix sandwich_second_factor(const CMatrix& x, const CVector& psi,
                               const CVector& phi, Eigen::Index dim_left) {
    if (dim_left <= 0 || x.rows() != x.cols()) {
        throw std::invalid_argument("sandwich_second_factor: bad dimensions");
    }
    if (x.rows() % dim_left != 0) {
        throw std::invalid_argument(
            "sandwich_second_factor: matrix size not divisible by dim_left");
    }
    const Eigen::Index dk = x.rows() / dim_left;
    if (psi.size() != dk || phi.size() != dk) {
        throw std::invalid_argument(
            "sandwich_second_factor: noise vector size mismatch");
    }
    CMatrix out = CMatrix::Zero(dim_left, dim_left);
    for (Eigen::Index p = 0; p < dk; ++p) {
        for (Eigen::Index q = 0; q < dk; ++q) {
            const Complex w = std::conj(psi(p)) * phi(q);
            if (w == Complex(0.0, 0.0)) continue;
            for (Eigen::Index i = 0; i < dim_left; ++i) {
                for (Eigen::Index j = 0; j < dim_left; ++j) {
                    out(i, j) += w * x(i * dk + p, j * dk + q);
                }
            }
        }
    }
    return out;
}

CVector KronOperator::apply(const CVector& v) const {
    if (v.size() != dim_left * dim_right) {
        throw std::invalid_argument("KronOperator::apply: vector size mismatch");
    }
    for (const KronTerm& t : terms) {
        if (t.left.rows() != dim_left || t.left.cols() != dim_left ||
            t.right.rows() != dim_right || t.right.cols() != dim_right) {
            throw std::invalid_argument("KronOperator::apply: term dimension mismatch");
        }
    }
    using RowMajor =
        Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Eigen::Map<const RowMajor> vm(v.data(), dim_left, dim_right);
    RowMajor acc = RowMajor::Zero(dim_left, dim_right);
    for (const KronTerm& t : terms) {
        acc.noalias() += t.coeff * (t.left * vm * t.right.transpose());
    }
    return Eigen::Map<const CVector>(acc.data(), v.size());
}

double KronOperator::norm_bound() const {
    double bound = 0.0;
    for (const KronTerm& t : terms) {
        bound += std::abs(t.coeff) * op_norm(t.left) * op_norm(t.right);
    }
    return bound;
}

CVector expm_multiply(const KronOperator& op, const CVector& v) {
    const int substeps = std::max(1, int(std::ceil(op.norm_bound())));
    const double inv = 1.0 / double(substeps);
    constexpr int kMaxTerms = 64;

    CVector state = v;
    for (int s = 0; s < substeps; ++s) {
        CVector acc = state;
        CVector term = state;
        for (int j = 1; j <= kMaxTerms; ++j) {
            term = op.apply(term) * (inv / double(j));
            acc += term;
            if (term.norm() <= 1e-16 * acc.norm()) break;
        }
        state = acc;
    }
    return state;
}

}  // namespace rqi
