#pragma once

#include "bcwp/geometry/fields.hpp"

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace bcwp::geometry {

/// CSV with columns i0..i{d-1}, x0..x{d-1}, then one column per named field (all on one grid).
void write_fields_csv(std::ostream& out, const std::vector<std::pair<std::string, const ScalarField*>>& fields);

/// Components T_ij for i <= j of a symmetric tensor as columns "name_ij".
void write_tensor_csv(std::ostream& out, const std::string& name, const TensorField2& t);

}  // namespace bcwp::geometry
