#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "multiwise/configuration.hpp"
#include "multiwise/feature_model.hpp"

namespace multiwise {

/// How undecided features are decided when completing a configuration.
/// Features are always decided in ascending variable order with unit
/// propagation after each decision; the policy picks the preferred phase.
/// PreferDeselect yields the minimal-selection completion.
struct CompletionPolicy {
    enum class Kind { PreferDeselect, PreferSelect, SeededRandom };

    Kind kind = Kind::PreferDeselect;
    std::uint64_t seed = 0;

    static CompletionPolicy prefer_deselect() { return {}; }
    static CompletionPolicy prefer_select() { return {Kind::PreferSelect, 0}; }
    static CompletionPolicy seeded_random(std::uint64_t seed) {
        return {Kind::SeededRandom, seed};
    }
};

namespace detail {

/// Plain DPLL with two watched literals and chronological backtracking.
/// Decisions follow ascending variable order with a phase policy, so the
/// first model found is the lexicographically minimal one under that
/// preference. Deterministic by construction.
class DpllSolver {
public:
    DpllSolver(int variable_count, const std::vector<Clause>& clauses);

    /// Full assignment (index var-1, true = selected) extending the given
    /// assumption literals, or nullopt when none exists.
    std::optional<std::vector<bool>> solve(const std::vector<int>& assumptions,
                                           const CompletionPolicy& policy = {});

    /// Enumerates every assignment of variables 1..project_count that can be
    /// extended over the remaining (auxiliary) variables, in lexicographic
    /// order with the deselected branch first. Stops when the callback
    /// returns false.
    void for_each_model(int project_count,
                        const std::function<bool(const std::vector<bool>&)>& on_model);

    int variable_count() const noexcept { return variable_count_; }

private:
    struct WatchedClause {
        std::vector<int> literals;  // watched literals at positions 0 and 1
    };

    bool value_true(int lit) const;
    bool value_false(int lit) const;
    void assign(int lit);
    bool propagate();
    void undo_to(std::size_t trail_mark);

    int variable_count_;
    bool root_conflict_ = false;
    std::vector<int> units_;
    std::vector<WatchedClause> clauses_;
    std::vector<std::vector<int>> watchers_;  // indexed by 2*var + (negative?1:0)
    std::vector<std::int8_t> values_;         // 0 unknown, 1 true, -1 false
    std::vector<int> trail_;
    std::size_t queue_head_ = 0;
};

}  // namespace detail

/// Satisfiability queries against one feature model. Instances are stateful
/// (solution cache) and meant to be used from a single thread; create one
/// engine per concurrent task. The referenced model must outlive the engine.
class SatEngine {
public:
    explicit SatEngine(const FeatureModel& model);

    const FeatureModel& model() const noexcept { return *model_; }

    /// True iff some complete configuration extends the decided part of
    /// `assumptions` (auxiliary variables are existentially quantified).
    bool is_satisfiable(const PartialConfiguration& assumptions);

    /// Same query with assumption literals over feature variables.
    bool is_satisfiable_literals(const std::vector<int>& assumptions);

    /// Feature projection of a satisfying assignment, or nullopt.
    std::optional<Configuration> solve(const std::vector<int>& assumptions,
                                       const CompletionPolicy& policy = {});

    bool is_void();

    /// Core features are selected in every valid configuration, dead
    /// features in none. Computed with 2 * |features| assumption queries,
    /// pruned by every model found along the way. Throws VoidModelError on
    /// void models. Results are cached.
    std::pair<std::vector<int>, std::vector<int>> core_dead_features();

    /// Completes `partial` to a valid configuration without overriding any
    /// decided entry. Throws UnsatisfiablePartialError when impossible.
    Configuration complete(const PartialConfiguration& partial,
                           const CompletionPolicy& policy = {});

    /// All distinct valid configurations projected onto feature variables,
    /// in deterministic (lexicographic, deselected-first) order. Throws
    /// CapExceededError when more than `cap` exist.
    std::vector<Configuration> enumerate_all(std::uint64_t cap);

private:
    std::vector<int> to_literals(const PartialConfiguration& partial) const;

    const FeatureModel* model_;
    detail::DpllSolver solver_;
    std::optional<std::pair<std::vector<int>, std::vector<int>>> core_dead_cache_;
    std::optional<bool> void_cache_;
};

// One-shot conveniences; each constructs a fresh engine.

bool is_satisfiable(const FeatureModel& model, const PartialConfiguration& assumptions);

std::pair<std::vector<int>, std::vector<int>> core_dead_features(const FeatureModel& model);

Configuration complete_configuration(const FeatureModel& model,
                                     const PartialConfiguration& partial,
                                     const CompletionPolicy& policy = {});

std::vector<Configuration> enumerate_all_configurations(const FeatureModel& model,
                                                        std::uint64_t cap);

}  // namespace multiwise
