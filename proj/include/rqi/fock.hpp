// fock.hpp — Truncated bosonic ladder operators. Hard cut at level dim−1: the
// raised state from the top level is dropped, and quadratures are formed after
// truncation so every operator stays Hermitian.

#pragma once

#include "rqi/linalg.hpp"

namespace rqi {

CMatrix annihilation_op(Eigen::Index dim);
CMatrix creation_op(Eigen::Index dim);
CMatrix number_op(Eigen::Index dim);
CMatrix position_op(Eigen::Index dim);  // a + a†
CMatrix momentum_op(Eigen::Index dim);  // i(a − a†)

}  // namespace rqi
