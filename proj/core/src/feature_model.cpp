#include "multiwise/feature_model.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <utility>

#include "multiwise/errors.hpp"

namespace multiwise {

FeatureModel::FeatureModel(std::vector<std::string> features, std::vector<Clause> clauses,
                           int aux_var_count)
    : features_(std::move(features)), clauses_(std::move(clauses)),
      aux_var_count_(aux_var_count) {
    if (features_.empty()) throw ModelError("model has no features");
    if (aux_var_count_ < 0) throw ModelError("negative auxiliary variable count");

    for (std::size_t i = 0; i < features_.size(); ++i) {
        if (features_[i].empty()) throw ModelError("empty feature name");
        auto [it, inserted] = var_of_.emplace(features_[i], static_cast<int>(i) + 1);
        if (!inserted) throw ModelError("duplicate feature name '" + features_[i] + "'");
    }

    int max_var = variable_count();
    for (const Clause& clause : clauses_) {
        if (clause.empty()) throw ModelError("empty clause");
        std::set<int> seen;
        for (int lit : clause) {
            int var = std::abs(lit);
            if (lit == 0 || var > max_var) {
                throw ModelError("literal " + std::to_string(lit) + " out of range 1.." +
                                 std::to_string(max_var));
            }
            if (seen.count(-lit)) {
                throw ModelError("clause contains both a variable and its negation");
            }
            seen.insert(lit);
        }
    }
}

std::optional<int> FeatureModel::var_of(const std::string& name) const {
    auto it = var_of_.find(name);
    if (it == var_of_.end()) return std::nullopt;
    return it->second;
}

int FeatureModel::require_var(const std::string& name) const {
    auto var = var_of(name);
    if (!var) throw UnknownFeatureError(name);
    return *var;
}

const std::string& FeatureModel::feature_name(int var) const {
    return features_.at(static_cast<std::size_t>(var) - 1);
}

// ---------------------------------------------------------------------------
// Tree compilation

namespace {

// Guard against pathological distributive blow-up.
constexpr std::size_t kMaxClausesPerConstraint = 1u << 20;

struct Nnf {
    // A literal node has var != 0; otherwise op is And/Or over children.
    int literal = 0;
    bool conj = false;
    std::vector<Nnf> children;
};

using VarLookup = std::function<int(const std::string&)>;

Nnf to_nnf(const Formula& f, bool negate, const VarLookup& var) {
    switch (f.op()) {
    case Formula::Op::Var: {
        Nnf n;
        n.literal = negate ? -var(f.name()) : var(f.name());
        return n;
    }
    case Formula::Op::Not:
        return to_nnf(*f.lhs(), !negate, var);
    case Formula::Op::And:
    case Formula::Op::Or: {
        bool conj = (f.op() == Formula::Op::And) != negate;
        Nnf n;
        n.conj = conj;
        n.children.push_back(to_nnf(*f.lhs(), negate, var));
        n.children.push_back(to_nnf(*f.rhs(), negate, var));
        return n;
    }
    case Formula::Op::Implies: {
        // a => b  ===  !a | b
        Nnf n;
        n.conj = negate;  // !(a => b) === a & !b
        n.children.push_back(to_nnf(*f.lhs(), !negate, var));
        n.children.push_back(to_nnf(*f.rhs(), negate, var));
        return n;
    }
    case Formula::Op::Iff: {
        // a <=> b === (!a | b) & (!b | a); negation flips one side.
        Nnf n;
        n.conj = !negate;
        Nnf left;
        left.conj = negate;
        left.children.push_back(to_nnf(*f.lhs(), true, var));
        left.children.push_back(to_nnf(*f.rhs(), negate, var));
        Nnf right;
        right.conj = negate;
        right.children.push_back(to_nnf(*f.lhs(), false, var));
        right.children.push_back(to_nnf(*f.rhs(), !negate, var));
        n.children.push_back(std::move(left));
        n.children.push_back(std::move(right));
        return n;
    }
    }
    throw ModelError("unreachable formula op");
}

// Distributes the NNF into clauses. Tautologies are dropped, duplicate
// literals within a clause collapsed.
std::vector<Clause> distribute(const Nnf& n) {
    if (n.literal != 0) return {{n.literal}};
    if (n.conj) {
        std::vector<Clause> out;
        for (const Nnf& child : n.children) {
            std::vector<Clause> sub = distribute(child);
            out.insert(out.end(), std::make_move_iterator(sub.begin()),
                       std::make_move_iterator(sub.end()));
            if (out.size() > kMaxClausesPerConstraint) {
                throw ModelError("constraint too large for distributive CNF conversion; "
                                 "use the Tseitin encoding");
            }
        }
        return out;
    }
    // Disjunction: cross product of the children's clause sets.
    std::vector<Clause> acc = {{}};
    for (const Nnf& child : n.children) {
        std::vector<Clause> sub = distribute(child);
        std::vector<Clause> next;
        next.reserve(acc.size() * sub.size());
        for (const Clause& a : acc) {
            for (const Clause& b : sub) {
                Clause merged = a;
                merged.insert(merged.end(), b.begin(), b.end());
                next.push_back(std::move(merged));
            }
        }
        if (next.size() > kMaxClausesPerConstraint) {
            throw ModelError("constraint too large for distributive CNF conversion; "
                             "use the Tseitin encoding");
        }
        acc = std::move(next);
    }
    return acc;
}

// Sorts/dedupes literals, drops tautologies and duplicate clauses.
void normalize_into(std::vector<Clause>&& raw, std::vector<Clause>& out) {
    std::set<Clause> seen;
    for (Clause& clause : raw) {
        std::sort(clause.begin(), clause.end(),
                  [](int a, int b) { return std::abs(a) != std::abs(b)
                                                ? std::abs(a) < std::abs(b)
                                                : a > b; });
        clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
        bool tautology = false;
        for (std::size_t i = 0; i + 1 < clause.size(); ++i) {
            if (clause[i] == -clause[i + 1]) {
                tautology = true;
                break;
            }
        }
        if (tautology) continue;
        if (seen.insert(clause).second) out.push_back(clause);
    }
}

// Tseitin encoding: one auxiliary variable per compound subformula, sharing
// feature literals directly. Appends the defining clauses plus a unit clause
// asserting the constraint.
class TseitinEncoder {
public:
    TseitinEncoder(const VarLookup& var, int& next_var, std::vector<Clause>& out)
        : var_(var), next_var_(next_var), out_(out) {}

    void encode(const Formula& f) { out_.push_back({encode_node(f, false)}); }

private:
    int encode_node(const Formula& f, bool negate) {
        switch (f.op()) {
        case Formula::Op::Var:
            return negate ? -var_(f.name()) : var_(f.name());
        case Formula::Op::Not:
            return encode_node(*f.lhs(), !negate);
        case Formula::Op::And:
        case Formula::Op::Or: {
            int a = encode_node(*f.lhs(), false);
            int b = encode_node(*f.rhs(), false);
            int g = next_var_++;
            if (f.op() == Formula::Op::And) {
                out_.push_back({-g, a});
                out_.push_back({-g, b});
                out_.push_back({g, -a, -b});
            } else {
                out_.push_back({-g, a, b});
                out_.push_back({g, -a});
                out_.push_back({g, -b});
            }
            return negate ? -g : g;
        }
        case Formula::Op::Implies: {
            int a = encode_node(*f.lhs(), true);
            int b = encode_node(*f.rhs(), false);
            int g = next_var_++;
            out_.push_back({-g, a, b});
            out_.push_back({g, -a});
            out_.push_back({g, -b});
            return negate ? -g : g;
        }
        case Formula::Op::Iff: {
            int a = encode_node(*f.lhs(), false);
            int b = encode_node(*f.rhs(), false);
            int g = next_var_++;
            out_.push_back({-g, a, -b});
            out_.push_back({-g, -a, b});
            out_.push_back({g, a, b});
            out_.push_back({g, -a, -b});
            return negate ? -g : g;
        }
        }
        throw ModelError("unreachable formula op");
    }

    const VarLookup& var_;
    int& next_var_;
    std::vector<Clause>& out_;
};

void emit_tree_clauses(const FeatureNode& node, const VarLookup& var,
                       std::vector<Clause>& out) {
    int parent = var(node.name);
    for (const auto& child : node.children) {
        int c = var(child.name);
        out.push_back({-c, parent});
        if (node.kind == GroupKind::And && child.mandatory) {
            out.push_back({-parent, c});
        }
    }
    if (!node.children.empty() &&
        (node.kind == GroupKind::Or || node.kind == GroupKind::Alt)) {
        Clause group{-parent};
        for (const auto& child : node.children) group.push_back(var(child.name));
        out.push_back(std::move(group));
        if (node.kind == GroupKind::Alt) {
            for (std::size_t i = 0; i < node.children.size(); ++i) {
                for (std::size_t j = i + 1; j < node.children.size(); ++j) {
                    Clause mutex{-var(node.children[i].name), -var(node.children[j].name)};
                    out.push_back(std::move(mutex));
                }
            }
        }
    }
    for (const auto& child : node.children) emit_tree_clauses(child, var, out);
}

}  // namespace

FeatureModel compile_to_cnf(const FeatureTree& tree, const CompileOptions& options) {
    std::vector<std::string> features = tree.feature_names();
    std::unordered_map<std::string, int> index;
    for (std::size_t i = 0; i < features.size(); ++i) {
        index.emplace(features[i], static_cast<int>(i) + 1);
    }
    VarLookup var = [&index](const std::string& name) {
        auto it = index.find(name);
        if (it == index.end()) throw UnknownFeatureError(name);
        return it->second;
    };

    std::vector<Clause> clauses;
    clauses.push_back({var(tree.root.name)});
    emit_tree_clauses(tree.root, var, clauses);

    int next_var = static_cast<int>(features.size()) + 1;
    for (const auto& constraint : tree.constraints) {
        std::vector<Clause> raw;
        if (options.encoding == ConstraintEncoding::Distributive) {
            raw = distribute(to_nnf(*constraint, false, var));
        } else {
            TseitinEncoder(var, next_var, raw).encode(*constraint);
        }
        normalize_into(std::move(raw), clauses);
    }
    int aux = next_var - static_cast<int>(features.size()) - 1;
    return FeatureModel(std::move(features), std::move(clauses), aux);
}

}  // namespace multiwise
