#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace multiwise {

/// Propositional formula over feature names, used for cross-tree constraints.
class Formula {
public:
    enum class Op { Var, Not, And, Or, Implies, Iff };

    using Ptr = std::shared_ptr<const Formula>;

    static Ptr var(std::string name);
    static Ptr negation(Ptr f);
    static Ptr conjunction(Ptr lhs, Ptr rhs);
    static Ptr disjunction(Ptr lhs, Ptr rhs);
    static Ptr implies(Ptr lhs, Ptr rhs);
    static Ptr iff(Ptr lhs, Ptr rhs);

    Op op() const noexcept { return op_; }
    const std::string& name() const noexcept { return name_; }
    const Ptr& lhs() const noexcept { return lhs_; }
    const Ptr& rhs() const noexcept { return rhs_; }

    bool evaluate(const std::function<bool(const std::string&)>& selected) const;

    /// Collects every referenced feature name (with repeats) into `out`.
    void collect_names(std::vector<std::string>& out) const;

    friend bool operator==(const Formula& a, const Formula& b);

private:
    Formula(Op op, std::string name, Ptr lhs, Ptr rhs)
        : op_(op), name_(std::move(name)), lhs_(std::move(lhs)), rhs_(std::move(rhs)) {}

    Op op_;
    std::string name_;
    Ptr lhs_;
    Ptr rhs_;
};

bool equal(const Formula::Ptr& a, const Formula::Ptr& b);

/// How the children of a feature relate to their parent.
///   And: children are individually mandatory or optional
///   Or:  at least one child when the parent is selected
///   Alt: exactly one child when the parent is selected
enum class GroupKind { And, Or, Alt };

struct FeatureNode {
    std::string name;
    GroupKind kind = GroupKind::And;
    /// Whether this feature is mandatory under its parent; meaningful only
    /// when the parent is an And node. The root carries no flag.
    bool mandatory = false;
    std::vector<FeatureNode> children;

    bool leaf() const noexcept { return children.empty(); }
};

bool operator==(const FeatureNode& a, const FeatureNode& b);

/// A feature diagram: a rooted tree plus cross-tree constraints.
struct FeatureTree {
    FeatureNode root;
    std::vector<Formula::Ptr> constraints;

    /// Feature names in document (preorder) order.
    std::vector<std::string> feature_names() const;

    std::size_t feature_count() const { return feature_names().size(); }
};

bool operator==(const FeatureTree& a, const FeatureTree& b);

}  // namespace multiwise
