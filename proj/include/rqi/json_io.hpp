// json_io.hpp — JSON encoding of complex scalars, vectors and matrices.
// Complex numbers are always [re, im] pairs; matrices are arrays of rows.

#pragma once

#include <json.hpp>

#include "rqi/config.hpp"
#include "rqi/linalg.hpp"
#include "rqi/model.hpp"

namespace rqi {

nlohmann::json complex_to_json(const Complex& z);
nlohmann::json vector_to_json(const CVector& v);
nlohmann::json matrix_to_json(const CMatrix& m);

Complex complex_from_json(const nlohmann::json& j, const std::string& path);
CVector vector_from_json(const nlohmann::json& j, const std::string& path);
CMatrix matrix_from_json(const nlohmann::json& j, const std::string& path);

nlohmann::json coefficients_to_json(const LimitCoefficients& coeffs);

}  // namespace rqi
