#pragma once

#include <cstdint>

#include "multiwise/feature_model.hpp"
#include "multiwise/feature_tree.hpp"

namespace multiwise {

/// Parameters for seeded random feature trees. Cross-tree constraints are
/// generated against a hidden witness configuration, so the resulting model
/// is satisfiable by construction at any constraint count.
struct SyntheticConfig {
    int feature_count = 50;
    int constraint_count = 0;
    double or_ratio = 0.15;        // share of internal nodes that become or-groups
    double alt_ratio = 0.15;       // share that become alternative groups
    double mandatory_prob = 0.25;  // chance an and-child is mandatory
    std::uint64_t seed = 1;
};

/// Deterministic per (config, seed). Feature names are F1..Fn with F1 the root.
FeatureTree synthetic_tree(const SyntheticConfig& config);

/// synthetic_tree + compile_to_cnf.
FeatureModel synthetic_model(const SyntheticConfig& config);

}  // namespace multiwise
