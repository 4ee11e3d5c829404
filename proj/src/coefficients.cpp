#include "rqi/coefficients.hpp"

#include <cmath>

namespace rqi {

namespace {

constexpr double kSeriesRadius = 1e-4;
constexpr int kSeriesTerms = 10;

// Σ_{j≥0} (ix)^j/(j+shift)!, the common tail of both quotients.
Complex tail_series(double x, int shift) {
    double fact = 1.0;
    for (int j = 1; j <= shift; ++j) fact *= j;
    Complex term(1.0 / fact, 0.0);
    Complex acc = term;
    const Complex ix(0.0, x);
    for (int j = 1; j < kSeriesTerms; ++j) {
        term *= ix / double(j + shift);
        acc += term;
    }
    return acc;
}

// sin(x) − x without the cancellation of the direct subtraction near zero.
double sin_minus_x(double x) {
    if (std::abs(x) >= 0.7) return std::sin(x) - x;
    double term = -x * x * x / 6.0;
    double acc = term;
    for (int j = 2; j < 12; ++j) {
        term *= -x * x / double((2 * j) * (2 * j + 1));
        acc += term;
    }
    return acc;
}

}  // namespace

Complex scalar_f(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("scalar_f: non-finite x");
    if (std::abs(x) < kSeriesRadius) {
        return Complex(0.0, 1.0) * tail_series(x, 1);
    }
    // (e^{ix} − 1)/x with the real part as −2sin²(x/2): no cancellation.
    const double half = std::sin(0.5 * x);
    return Complex(-2.0 * half * half / x, std::sin(x) / x);
}

Complex scalar_g(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("scalar_g: non-finite x");
    if (std::abs(x) < kSeriesRadius) {
        return -tail_series(x, 2);
    }
    // (e^{ix} − ix − 1)/x²: real part via −2sin²(x/2), imaginary part via the
    // cancellation-free sin(x) − x.
    const double half = std::sin(0.5 * x);
    return Complex(-2.0 * half * half / (x * x), sin_minus_x(x) / (x * x));
}

CMatrix gauge_coupling(const ModelSpec& model, const Tolerances& tol) {
    check_structure(model);
    const std::size_t dim =
        std::size_t(model.dim_initial) * std::size_t(model.dim_noise);
    check_capacity(dim, dim, tol.max_entries, "gauge_coupling");
    CMatrix f = CMatrix::Zero(dim, dim);
    for (std::size_t j = 0; j < model.F_list.size(); ++j) {
        f += kron(model.F_list[j], model.lambda_list[j], tol.max_entries);
    }
    return f;
}

LimitCoefficients limit_coefficients(const ModelSpec& model, const Tolerances& tol) {
    check_structure(model);
    const Eigen::Index dh = model.dim_initial;
    const int n = model.channels;
    const std::size_t m = model.G_list.size();
    const CMatrix id = CMatrix::Identity(dh, dh);

    std::vector<CVector> mu_chi0(m);
    for (std::size_t i = 0; i < m; ++i) mu_chi0[i] = model.mu_list[i] * model.chi[0];

    // Blocks of e^{i·}, f(·), g(·) of the gauge coupling between noise vectors.
    std::vector<std::vector<CMatrix>> Z(n, std::vector<CMatrix>(n));
    std::vector<std::vector<CMatrix>> X(m, std::vector<CMatrix>(n));
    std::vector<std::vector<CMatrix>> Y(m, std::vector<CMatrix>(n));
    std::vector<std::vector<CMatrix>> W(m, std::vector<CMatrix>(m));

    if (model.F_list.empty()) {
        // Gauge coupling vanishes: e^{i·0} = I, f(0) = i, g(0) = −1/2, and every
        // sandwich reduces to an inner product times the identity.
        for (int p = 0; p < n; ++p) {
            for (int q = 0; q < n; ++q) {
                Z[p][q] = model.chi[p + 1].dot(model.chi[q + 1]) * id;
            }
        }
        for (std::size_t i = 0; i < m; ++i) {
            for (int p = 0; p < n; ++p) {
                X[i][p] = Complex(0.0, 1.0) * model.chi[p + 1].dot(mu_chi0[i]) * id;
                Y[i][p] = Complex(0.0, 1.0) * mu_chi0[i].dot(model.chi[p + 1]) * id;
            }
            for (std::size_t j = 0; j < m; ++j) {
                W[i][j] = -0.5 * mu_chi0[i].dot(mu_chi0[j]) * id;
            }
        }
    } else {
        const Spectrum spec = hermitian_eig(gauge_coupling(model, tol), tol);
        const CMatrix eF =
            spectrum_apply(spec, [](double x) { return std::polar(1.0, x); });
        const CMatrix fF = spectrum_apply(spec, scalar_f);
        const CMatrix gF = spectrum_apply(spec, scalar_g);
        for (int p = 0; p < n; ++p) {
            for (int q = 0; q < n; ++q) {
                Z[p][q] =
                    sandwich_second_factor(eF, model.chi[p + 1], model.chi[q + 1], dh);
            }
        }
        for (std::size_t i = 0; i < m; ++i) {
            for (int p = 0; p < n; ++p) {
                X[i][p] = sandwich_second_factor(fF, model.chi[p + 1], mu_chi0[i], dh);
                Y[i][p] = sandwich_second_factor(fF, mu_chi0[i], model.chi[p + 1], dh);
            }
            for (std::size_t j = 0; j < m; ++j) {
                W[i][j] = sandwich_second_factor(gF, mu_chi0[i], mu_chi0[j], dh);
            }
        }
    }

    LimitCoefficients out;
    out.channels = n;
    out.N.assign(n, std::vector<CMatrix>(n));
    out.M.assign(n, CMatrix::Zero(dh, dh));
    out.L.assign(n, CMatrix::Zero(dh, dh));
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) out.N[p][q] = Z[p][q];
        for (std::size_t i = 0; i < m; ++i) {
            out.M[p] += X[i][p] * model.G_list[i];
            out.L[p] += model.G_list[i] * Y[i][p];
        }
    }
    out.K = CMatrix::Zero(dh, dh);
    for (std::size_t j = 0; j < model.H_list.size(); ++j) {
        const Complex weight = model.chi[0].dot(model.nu_list[j] * model.chi[0]);
        out.K += Complex(0.0, 1.0) * weight * model.H_list[j];
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            out.K += model.G_list[i] * W[i][j] * model.G_list[j];
        }
    }
    return out;
}

LimitCoefficients spin_coefficients(const CMatrix& F, const CMatrix& G1,
                                    const CMatrix& G2, const CMatrix& H,
                                    Complex hk_expect, const Tolerances& tol) {
    const Eigen::Index dh = F.rows();
    for (const CMatrix* op : {&F, &G1, &G2, &H}) {
        if (op->rows() != dh || op->cols() != dh) {
            throw std::invalid_argument("spin_coefficients: dimension mismatch");
        }
        if (hermiticity_residual(*op) > tol.hermiticity) {
            throw std::invalid_argument("spin_coefficients: inputs must be Hermitian");
        }
    }
    const Spectrum spec = hermitian_eig(F, tol);
    const CMatrix eF =
        spectrum_apply(spec, [](double x) { return std::polar(1.0, x); });
    const CMatrix fF = spectrum_apply(spec, scalar_f);
    const CMatrix gF = spectrum_apply(spec, scalar_g);
    const CMatrix raise = G1 + Complex(0.0, 1.0) * G2;
    const CMatrix lower = G1 - Complex(0.0, 1.0) * G2;

    LimitCoefficients out;
    out.channels = 1;
    out.N = {{eF}};
    out.M = {fF * lower};
    out.L = {raise * fF};
    out.K = Complex(0.0, 1.0) * H +
            Complex(0.0, 1.0) * hk_expect * CMatrix::Identity(dh, dh) +
            raise * gF * lower;
    return out;
}

CheckedCoefficients hp_check(const LimitCoefficients& coeffs, double tol) {
    check_coefficients(coeffs);
    const int n = coeffs.channels;
    const Eigen::Index dh = coeffs.K.rows();
    CMatrix big = CMatrix::Zero(n * dh, n * dh);
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
            big.block(p * dh, q * dh, dh, dh) = coeffs.N[p][q];
        }
    }
    const CMatrix eye = CMatrix::Identity(n * dh, n * dh);

    CheckedCoefficients out;
    out.coeffs = coeffs;
    out.tolerance = tol;
    out.isometry = (big.adjoint() * big - eye).norm();
    out.coisometry = (big * big.adjoint() - eye).norm();

    CMatrix drift = coeffs.K + coeffs.K.adjoint();
    for (int i = 0; i < n; ++i) drift += coeffs.L[i] * coeffs.L[i].adjoint();
    out.drift = drift.norm();

    double m_sq = 0.0;
    for (int p = 0; p < n; ++p) {
        CMatrix defect = coeffs.M[p];
        for (int j = 0; j < n; ++j) defect += coeffs.N[p][j] * coeffs.L[j].adjoint();
        m_sq += defect.squaredNorm();
    }
    out.m_relation = std::sqrt(m_sq);

    out.pass = out.isometry <= tol && out.coisometry <= tol && out.drift <= tol &&
               out.m_relation <= tol;
    return out;
}

double coefficient_distance(const LimitCoefficients& a, const LimitCoefficients& b) {
    if (a.channels != b.channels || a.K.rows() != b.K.rows()) {
        throw std::invalid_argument("coefficient_distance: shape mismatch");
    }
    double best = (a.K - b.K).norm();
    for (int p = 0; p < a.channels; ++p) {
        best = std::max(best, (a.M[p] - b.M[p]).norm());
        best = std::max(best, (a.L[p] - b.L[p]).norm());
        for (int q = 0; q < a.channels; ++q) {
            best = std::max(best, (a.N[p][q] - b.N[p][q]).norm());
        }
    }
    return best;
}

double gauge_invariance_defect(const ModelSpec& model, double phase,
                               const Tolerances& tol) {
    ModelSpec rotated = model;
    const Complex factor = std::polar(1.0, phase);
    for (CVector& chi : rotated.chi) chi *= factor;
    return coefficient_distance(limit_coefficients(model, tol),
                                limit_coefficients(rotated, tol));
}

SpanConditionReport span_condition_check(const ModelSpec& model, double tol) {
    check_structure(model);
    const Eigen::Index dk = model.dim_noise;
    CMatrix proj = CMatrix::Zero(dk, dk);
    for (int j = 1; j <= model.channels; ++j) {
        proj += model.chi[j] * model.chi[j].adjoint();
    }
    const CMatrix comp = CMatrix::Identity(dk, dk) - proj;

    SpanConditionReport out;
    out.tolerance = tol;
    out.pass = true;
    for (const CMatrix& mu : model.mu_list) {
        const double defect = (comp * (mu * model.chi[0])).norm();
        out.mu_defects.push_back(defect);
        out.pass = out.pass && defect <= tol;
    }
    for (const CMatrix& lambda : model.lambda_list) {
        const double defect = (comp * lambda * proj).norm();
        out.lambda_defects.push_back(defect);
        out.pass = out.pass && defect <= tol;
    }
    return out;
}

}  // namespace rqi
