#include "rqi/semigroup.hpp"

#include <cmath>

namespace rqi {

Generator generator(const LimitCoefficients& coeffs, const CVector& alpha,
                    const CVector& beta) {
    check_coefficients(coeffs);
    const int n = coeffs.channels;
    if (alpha.size() != n || beta.size() != n) {
        throw std::invalid_argument(
            "generator: drive vectors must match the channel count");
    }
    const Eigen::Index dh = coeffs.K.rows();
    CMatrix m = coeffs.K;
    for (int i = 0; i < n; ++i) {
        m += std::conj(alpha(i)) * coeffs.M[i];
        m += coeffs.L[i] * beta(i);
        for (int j = 0; j < n; ++j) {
            m += std::conj(alpha(i)) * beta(j) * coeffs.N[i][j];
        }
    }
    m -= 0.5 * (alpha.squaredNorm() + beta.squaredNorm()) *
         CMatrix::Identity(dh, dh);
    return Generator{alpha, beta, std::move(m)};
}

CMatrix evolve(const Generator& gen, double t) {
    if (!std::isfinite(t) || t < 0.0) {
        throw std::invalid_argument("evolve: t must be finite and >= 0");
    }
    return expm_pade(t * gen.matrix);
}

void check_drive(const PiecewiseDrive& drive, int channels) {
    if (drive.level < 0) throw std::invalid_argument("drive: negative level");
    if (drive.breaks.size() < 2 || drive.breaks.front() != 0) {
        throw std::invalid_argument("drive: breakpoints must start at 0");
    }
    for (std::size_t j = 1; j < drive.breaks.size(); ++j) {
        if (drive.breaks[j] <= drive.breaks[j - 1]) {
            throw std::invalid_argument("drive: breakpoints must be ascending");
        }
    }
    const std::size_t intervals = drive.breaks.size() - 1;
    if (drive.alphas.size() != intervals || drive.betas.size() != intervals) {
        throw std::invalid_argument("drive: one (alpha, beta) pair per interval");
    }
    for (std::size_t j = 0; j < intervals; ++j) {
        if (drive.alphas[j].size() != channels || drive.betas[j].size() != channels) {
            throw std::invalid_argument("drive: drive vector channel mismatch");
        }
    }
}

CMatrix piecewise_evolve(const LimitCoefficients& coeffs,
                         const PiecewiseDrive& drive, double t) {
    check_drive(drive, coeffs.channels);
    if (!(t >= 0.0) || t > drive.horizon()) {
        throw std::invalid_argument("piecewise_evolve: t outside [0, horizon]");
    }
    const Eigen::Index dh = coeffs.K.rows();
    CMatrix product = CMatrix::Identity(dh, dh);
    for (std::size_t j = 0; j + 1 < drive.breaks.size(); ++j) {
        const double t0 = drive.time_at(j);
        const double t1 = drive.time_at(j + 1);
        const double span = std::min(t, t1) - t0;
        if (span <= 0.0) break;
        product = product *
                  evolve(generator(coeffs, drive.alphas[j], drive.betas[j]), span);
        if (t <= t1) break;
    }
    return product;
}

}  // namespace rqi
