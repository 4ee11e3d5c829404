#include "rqi/rng.hpp"

#include <cmath>

namespace rqi {

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
}

CVector random_vector(Rng& rng, Eigen::Index n) {
    CVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.cnormal();
    return v;
}

CVector random_unit_vector(Rng& rng, Eigen::Index n) {
    CVector v = random_vector(rng, n);
    const double nrm = v.norm();
    return nrm > 0.0 ? CVector(v / nrm) : random_unit_vector(rng, n);
}

CMatrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
    CMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.cnormal();
    }
    return m;
}

CMatrix random_hermitian(Rng& rng, Eigen::Index n) {
    const CMatrix m = random_matrix(rng, n, n);
    return 0.5 * (m + m.adjoint());
}

}  // namespace rqi
