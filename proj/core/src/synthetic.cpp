#include "multiwise/synthetic.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "multiwise/rng.hpp"

namespace multiwise {

namespace {

struct TreeDraft {
    std::vector<int> parent;                 // node index -> parent index, root = 0
    std::vector<std::vector<int>> children;  // node index -> child indices
    std::vector<GroupKind> kind;
    std::vector<bool> mandatory;  // per node, meaningful under And parents
};

FeatureNode build_node(const TreeDraft& draft, int index) {
    FeatureNode node;
    node.name = "F" + std::to_string(index + 1);
    node.kind = draft.kind[static_cast<std::size_t>(index)];
    node.mandatory = draft.mandatory[static_cast<std::size_t>(index)];
    for (int child : draft.children[static_cast<std::size_t>(index)]) {
        node.children.push_back(build_node(draft, child));
    }
    return node;
}

// A configuration consistent with the tree rules, drawn top-down. Used as a
// witness so that generated constraints never make the model void.
void draw_witness(const TreeDraft& draft, int index, bool selected, Rng& rng,
                  std::vector<bool>& witness) {
    witness[static_cast<std::size_t>(index)] = selected;
    const auto& children = draft.children[static_cast<std::size_t>(index)];
    if (!selected) {
        for (int child : children) draw_witness(draft, child, false, rng, witness);
        return;
    }
    switch (draft.kind[static_cast<std::size_t>(index)]) {
    case GroupKind::And:
        for (int child : children) {
            bool on = draft.mandatory[static_cast<std::size_t>(child)] || rng.chance(0.5);
            draw_witness(draft, child, on, rng, witness);
        }
        break;
    case GroupKind::Or: {
        int forced = static_cast<int>(rng.below(children.size()));
        for (std::size_t i = 0; i < children.size(); ++i) {
            bool on = static_cast<int>(i) == forced || rng.chance(0.4);
            draw_witness(draft, children[i], on, rng, witness);
        }
        break;
    }
    case GroupKind::Alt: {
        int chosen = static_cast<int>(rng.below(children.size()));
        for (std::size_t i = 0; i < children.size(); ++i) {
            draw_witness(draft, children[i], static_cast<int>(i) == chosen, rng, witness);
        }
        break;
    }
    }
}

// Candidate constraints are kept only when they hold under every witness,
// which biases generation toward broadly-true dependencies and keeps the
// configuration space from collapsing even at high constraint counts.
Formula::Ptr random_constraint(int feature_count, Rng& rng,
                               const std::vector<std::vector<bool>>& witnesses) {
    auto name = [](int index) { return "F" + std::to_string(index + 1); };

    auto literal = [&](int index, bool negate) {
        Formula::Ptr f = Formula::var(name(index));
        return negate ? Formula::negation(f) : f;
    };
    auto holds_everywhere = [&](const Formula::Ptr& candidate) {
        for (const auto& witness : witnesses) {
            auto selected = [&](const std::string& n) {
                return witness[static_cast<std::size_t>(std::stoi(n.substr(1)) - 1)];
            };
            if (!candidate->evaluate(selected)) return false;
        }
        return true;
    };
    auto distinct_pick = [&](int count, int* out) {
        for (int i = 0; i < count; ++i) {
            bool fresh = false;
            while (!fresh) {
                out[i] = static_cast<int>(rng.below(static_cast<std::uint64_t>(feature_count)));
                fresh = true;
                for (int j = 0; j < i; ++j) fresh = fresh && out[j] != out[i];
            }
        }
    };

    for (int attempt = 0; attempt < 200; ++attempt) {
        int picked[3];
        Formula::Ptr candidate;
        switch (rng.below(10)) {
        case 0:  // biconditional, rare: very restrictive
            distinct_pick(2, picked);
            candidate = Formula::iff(literal(picked[0], rng.chance(0.5)),
                                     literal(picked[1], rng.chance(0.5)));
            break;
        case 1:
        case 2:
        case 3:
        case 4:  // requires/excludes style implication
            distinct_pick(2, picked);
            candidate = Formula::implies(literal(picked[0], rng.chance(0.5)),
                                         literal(picked[1], rng.chance(0.5)));
            break;
        default:  // three-literal disjunction
            distinct_pick(3, picked);
            candidate = Formula::disjunction(
                Formula::disjunction(literal(picked[0], rng.chance(0.5)),
                                     literal(picked[1], rng.chance(0.5))),
                literal(picked[2], rng.chance(0.5)));
            break;
        }
        if (holds_everywhere(candidate)) return candidate;
    }
    // Fallback: a unit constraint the first witness satisfies.
    int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(feature_count)));
    return literal(a, !witnesses.front()[static_cast<std::size_t>(a)]);
}

}  // namespace

FeatureTree synthetic_tree(const SyntheticConfig& config) {
    int n = config.feature_count;
    if (n < 1) throw std::invalid_argument("feature_count must be >= 1");
    Rng rng(derive_seed(config.seed, 0x5e7a));

    TreeDraft draft;
    draft.parent.assign(static_cast<std::size_t>(n), 0);
    draft.children.assign(static_cast<std::size_t>(n), {});
    draft.kind.assign(static_cast<std::size_t>(n), GroupKind::And);
    draft.mandatory.assign(static_cast<std::size_t>(n), false);

    for (int i = 1; i < n; ++i) {
        int parent = static_cast<int>(rng.below(static_cast<std::uint64_t>(i)));
        draft.parent[static_cast<std::size_t>(i)] = parent;
        draft.children[static_cast<std::size_t>(parent)].push_back(i);
    }
    for (int i = 0; i < n; ++i) {
        if (draft.children[static_cast<std::size_t>(i)].empty()) continue;
        double roll = rng.unit();
        if (roll < config.or_ratio) {
            draft.kind[static_cast<std::size_t>(i)] = GroupKind::Or;
        } else if (roll < config.or_ratio + config.alt_ratio) {
            draft.kind[static_cast<std::size_t>(i)] = GroupKind::Alt;
        } else {
            for (int child : draft.children[static_cast<std::size_t>(i)]) {
                draft.mandatory[static_cast<std::size_t>(child)] =
                    rng.chance(config.mandatory_prob);
            }
        }
    }

    FeatureTree tree;
    tree.root = build_node(draft, 0);

    if (config.constraint_count > 0) {
        std::vector<std::vector<bool>> witnesses(8);
        for (auto& witness : witnesses) {
            witness.assign(static_cast<std::size_t>(n), false);
            draw_witness(draft, 0, true, rng, witness);
        }
        for (int i = 0; i < config.constraint_count; ++i) {
            tree.constraints.push_back(random_constraint(n, rng, witnesses));
        }
    }
    return tree;
}

FeatureModel synthetic_model(const SyntheticConfig& config) {
    return compile_to_cnf(synthetic_tree(config));
}

}  // namespace multiwise
