#pragma once

#include <string>
#include <string_view>

#include "multiwise/feature_tree.hpp"

namespace multiwise {

/// Parses the UVL subset understood by this project.
///
/// The format is indentation based (spaces only, one node per line):
///
///     features
///         Car
///             mandatory
///                 Carbody
///             optional
///                 Radio
///     constraints
///         Radio => Carbody
///
/// `mandatory` / `optional` blocks list and-children with the corresponding
/// flag; an `or` / `alternative` block turns its feature into an or/alternative
/// group and must be the only block under that feature. Constraint expressions
/// use `!`, `&`, `|`, `=>`, `<=>` and parentheses.
///
/// Throws ParseError with line/column information on malformed input,
/// duplicate feature names, empty groups, or constraints over unknown
/// features.
FeatureTree parse_uvl(std::string_view text);

/// Canonical printer for the same subset; parse_uvl(write_uvl(t)) == t.
std::string write_uvl(const FeatureTree& tree);

/// Parses a single constraint expression (used by parse_uvl and tests).
Formula::Ptr parse_constraint(std::string_view text, int line_number = 0);

std::string format_constraint(const Formula::Ptr& formula);

}  // namespace multiwise
