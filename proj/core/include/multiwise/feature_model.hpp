#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "multiwise/feature_tree.hpp"

namespace multiwise {

/// A clause is a disjunction of literals. Literal +v means variable v is
/// selected, -v deselected; variables are 1-based.
using Clause = std::vector<int>;

/// A feature model in CNF form: named feature variables 1..n in document
/// order, optional auxiliary variables n+1..n+aux introduced by constraint
/// encoding, and a clause set over both.
class FeatureModel {
public:
    FeatureModel(std::vector<std::string> features, std::vector<Clause> clauses,
                 int aux_var_count = 0);

    int feature_count() const noexcept { return static_cast<int>(features_.size()); }
    int aux_var_count() const noexcept { return aux_var_count_; }
    int variable_count() const noexcept { return feature_count() + aux_var_count_; }

    const std::vector<std::string>& features() const noexcept { return features_; }
    const std::vector<Clause>& clauses() const noexcept { return clauses_; }

    /// 1-based variable for a feature name, or nullopt if unknown.
    std::optional<int> var_of(const std::string& name) const;

    /// Same, but throws UnknownFeatureError.
    int require_var(const std::string& name) const;

    const std::string& feature_name(int var) const;

    bool is_feature_var(int var) const noexcept {
        return var >= 1 && var <= feature_count();
    }

private:
    std::vector<std::string> features_;
    std::unordered_map<std::string, int> var_of_;
    std::vector<Clause> clauses_;
    int aux_var_count_;
};

enum class ConstraintEncoding {
    /// Equivalence-preserving distribution; no auxiliary variables.
    Distributive,
    /// Tseitin encoding; introduces auxiliary variables for subformulas.
    Tseitin,
};

struct CompileOptions {
    ConstraintEncoding encoding = ConstraintEncoding::Distributive;
};

/// Compiles tree semantics to CNF:
///   - unit clause for the root
///   - child => parent for every child
///   - parent => child for mandatory and-children
///   - parent => (c1 | ... | ck) for or/alternative groups
///   - pairwise mutual exclusion for alternative groups
///   - cross-tree constraints via the selected encoding
FeatureModel compile_to_cnf(const FeatureTree& tree, const CompileOptions& options = {});

}  // namespace multiwise
