#pragma once

#include <string>
#include <string_view>

#include "multiwise/feature_model.hpp"

namespace multiwise {

/// Reads DIMACS CNF with feature names given as `c <var> <name>` comments
/// before the `p cnf <vars> <clauses>` header. Named variables must form the
/// contiguous prefix 1..k; the remaining variables are auxiliary.
FeatureModel parse_dimacs(std::string_view text);

/// Canonical DIMACS writer: one name comment per feature, header, one clause
/// per line. write_dimacs(parse_dimacs(x)) == x up to whitespace.
std::string write_dimacs(const FeatureModel& model);

}  // namespace multiwise
