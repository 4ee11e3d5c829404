#include "rqi/fock.hpp"

#include <cmath>

namespace rqi {

CMatrix annihilation_op(Eigen::Index dim) {
    if (dim <= 0) throw std::invalid_argument("annihilation_op: dim must be > 0");
    CMatrix a = CMatrix::Zero(dim, dim);
    for (Eigen::Index n = 1; n < dim; ++n) {
        a(n - 1, n) = std::sqrt(double(n));
    }
    return a;
}

CMatrix creation_op(Eigen::Index dim) {
    return annihilation_op(dim).adjoint();
}

CMatrix number_op(Eigen::Index dim) {
    if (dim <= 0) throw std::invalid_argument("number_op: dim must be > 0");
    CMatrix n = CMatrix::Zero(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) n(j, j) = double(j);
    return n;
}

CMatrix position_op(Eigen::Index dim) {
    const CMatrix a = annihilation_op(dim);
    return a + a.adjoint();
}

CMatrix momentum_op(Eigen::Index dim) {
    const CMatrix a = annihilation_op(dim);
    return Complex(0.0, 1.0) * (a - a.adjoint());
}

}  // namespace rqi
