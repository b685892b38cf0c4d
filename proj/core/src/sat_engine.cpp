#include "multiwise/sat_engine.hpp"

#include <algorithm>
#include <cstdlib>

#include "multiwise/errors.hpp"
#include "multiwise/rng.hpp"

namespace multiwise {
namespace detail {

namespace {

std::size_t watch_index(int lit) {
    return 2 * static_cast<std::size_t>(std::abs(lit)) + (lit < 0 ? 1 : 0);
}

}  // namespace

DpllSolver::DpllSolver(int variable_count, const std::vector<Clause>& clauses)
    : variable_count_(variable_count) {
    watchers_.resize(2 * static_cast<std::size_t>(variable_count) + 2);
    values_.assign(static_cast<std::size_t>(variable_count) + 1, 0);

    for (const Clause& clause : clauses) {
        // Dedupe literals and drop tautologies; the solver works on a
        // normalized copy so that watched literals are distinct.
        Clause copy = clause;
        std::sort(copy.begin(), copy.end(),
                  [](int a, int b) { return std::abs(a) != std::abs(b)
                                                ? std::abs(a) < std::abs(b)
                                                : a > b; });
        copy.erase(std::unique(copy.begin(), copy.end()), copy.end());
        bool tautology = false;
        for (std::size_t i = 0; i + 1 < copy.size(); ++i) {
            if (copy[i] == -copy[i + 1]) {
                tautology = true;
                break;
            }
        }
        if (tautology) continue;
        if (copy.size() == 1) {
            units_.push_back(copy[0]);
            continue;
        }
        int id = static_cast<int>(clauses_.size());
        clauses_.push_back({std::move(copy)});
        watchers_[watch_index(clauses_.back().literals[0])].push_back(id);
        watchers_[watch_index(clauses_.back().literals[1])].push_back(id);
    }

    for (std::size_t i = 0; i + 1 < units_.size() && !root_conflict_; ++i) {
        for (std::size_t j = i + 1; j < units_.size(); ++j) {
            if (units_[i] == -units_[j]) root_conflict_ = true;
        }
    }
}

bool DpllSolver::value_true(int lit) const {
    return values_[static_cast<std::size_t>(std::abs(lit))] == (lit > 0 ? 1 : -1);
}

bool DpllSolver::value_false(int lit) const {
    return values_[static_cast<std::size_t>(std::abs(lit))] == (lit > 0 ? -1 : 1);
}

void DpllSolver::assign(int lit) {
    values_[static_cast<std::size_t>(std::abs(lit))] = lit > 0 ? 1 : -1;
    trail_.push_back(lit);
}

void DpllSolver::undo_to(std::size_t trail_mark) {
    while (trail_.size() > trail_mark) {
        values_[static_cast<std::size_t>(std::abs(trail_.back()))] = 0;
        trail_.pop_back();
    }
    queue_head_ = trail_mark;
}

bool DpllSolver::propagate() {
    while (queue_head_ < trail_.size()) {
        int lit = trail_[queue_head_++];
        std::vector<int>& watch_list = watchers_[watch_index(-lit)];
        std::size_t keep = 0;
        for (std::size_t i = 0; i < watch_list.size(); ++i) {
            int clause_id = watch_list[i];
            std::vector<int>& lits = clauses_[static_cast<std::size_t>(clause_id)].literals;
            if (lits[0] == -lit) std::swap(lits[0], lits[1]);
            if (value_true(lits[0])) {
                watch_list[keep++] = clause_id;
                continue;
            }
            bool moved = false;
            for (std::size_t j = 2; j < lits.size(); ++j) {
                if (!value_false(lits[j])) {
                    std::swap(lits[1], lits[j]);
                    watchers_[watch_index(lits[1])].push_back(clause_id);
                    moved = true;
                    break;
                }
            }
            if (moved) continue;
            watch_list[keep++] = clause_id;
            if (value_false(lits[0])) {
                // Conflict: keep the remaining watch entries before bailing.
                for (std::size_t j = i + 1; j < watch_list.size(); ++j) {
                    watch_list[keep++] = watch_list[j];
                }
                watch_list.resize(keep);
                return false;
            }
            assign(lits[0]);
        }
        watch_list.resize(keep);
    }
    return true;
}

namespace {

struct SearchDecision {
    int lit;
    std::size_t trail_mark;
    bool flipped;     // both phases explored (or must not be flipped)
    bool assumption;  // never flipped; conflict below means unsat
};

class PhaseChooser {
public:
    explicit PhaseChooser(const CompletionPolicy& policy)
        : policy_(policy), rng_(policy.seed) {}

    int preferred(int var) {
        switch (policy_.kind) {
        case CompletionPolicy::Kind::PreferDeselect:
            return -var;
        case CompletionPolicy::Kind::PreferSelect:
            return var;
        case CompletionPolicy::Kind::SeededRandom:
            return rng_.next() & 1 ? var : -var;
        }
        return -var;
    }

private:
    CompletionPolicy policy_;
    Rng rng_;
};

}  // namespace

std::optional<std::vector<bool>> DpllSolver::solve(const std::vector<int>& assumptions,
                                                   const CompletionPolicy& policy) {
    undo_to(0);
    if (root_conflict_) return std::nullopt;
    for (int unit : units_) {
        if (value_false(unit)) return std::nullopt;
        if (!value_true(unit)) assign(unit);
    }
    if (!propagate()) return std::nullopt;

    std::vector<SearchDecision> decisions;
    for (int lit : assumptions) {
        if (value_true(lit)) continue;
        if (value_false(lit)) return std::nullopt;
        decisions.push_back({lit, trail_.size(), true, true});
        assign(lit);
        if (!propagate()) return std::nullopt;
    }

    PhaseChooser phase(policy);
    while (true) {
        int var = 0;
        for (int v = 1; v <= variable_count_; ++v) {
            if (values_[static_cast<std::size_t>(v)] == 0) {
                var = v;
                break;
            }
        }
        if (var == 0) {
            std::vector<bool> model(static_cast<std::size_t>(variable_count_));
            for (int v = 1; v <= variable_count_; ++v) {
                model[static_cast<std::size_t>(v - 1)] =
                    values_[static_cast<std::size_t>(v)] > 0;
            }
            return model;
        }
        decisions.push_back({phase.preferred(var), trail_.size(), false, false});
        assign(decisions.back().lit);
        while (!propagate()) {
            while (!decisions.empty() && (decisions.back().flipped)) {
                if (decisions.back().assumption) return std::nullopt;
                decisions.pop_back();
            }
            if (decisions.empty()) return std::nullopt;
            SearchDecision& d = decisions.back();
            undo_to(d.trail_mark);
            d.lit = -d.lit;
            d.flipped = true;
            assign(d.lit);
        }
    }
}

void DpllSolver::for_each_model(
    int project_count, const std::function<bool(const std::vector<bool>&)>& on_model) {
    undo_to(0);
    if (root_conflict_) return;
    for (int unit : units_) {
        if (value_false(unit)) return;
        if (!value_true(unit)) assign(unit);
    }
    if (!propagate()) return;

    std::vector<SearchDecision> decisions;
    std::vector<bool> projection(static_cast<std::size_t>(project_count));

    // Backtracks to the deepest unflipped decision over a projected
    // variable (or any variable when after_model is false, i.e. on a
    // conflict inside the auxiliary region). Returns false when the search
    // space is exhausted.
    auto advance = [&](bool projected_only) -> bool {
        while (!decisions.empty() &&
               (decisions.back().flipped ||
                (projected_only && std::abs(decisions.back().lit) > project_count))) {
            decisions.pop_back();
        }
        if (decisions.empty()) return false;
        SearchDecision& d = decisions.back();
        undo_to(d.trail_mark);
        d.lit = -d.lit;
        d.flipped = true;
        assign(d.lit);
        return true;
    };

    while (true) {
        int var = 0;
        for (int v = 1; v <= variable_count_; ++v) {
            if (values_[static_cast<std::size_t>(v)] == 0) {
                var = v;
                break;
            }
        }
        if (var == 0) {
            for (int v = 1; v <= project_count; ++v) {
                projection[static_cast<std::size_t>(v - 1)] =
                    values_[static_cast<std::size_t>(v)] > 0;
            }
            if (!on_model(projection)) return;
            if (!advance(true)) return;
        } else {
            decisions.push_back({-var, trail_.size(), false, false});
            assign(-var);
        }
        while (!propagate()) {
            if (!advance(false)) return;
        }
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// SatEngine

SatEngine::SatEngine(const FeatureModel& model)
    : model_(&model), solver_(model.variable_count(), model.clauses()) {}

std::vector<int> SatEngine::to_literals(const PartialConfiguration& partial) const {
    std::vector<int> literals;
    for (int v = 1; v <= partial.feature_count(); ++v) {
        switch (partial.at(v)) {
        case Decision::Selected:
            literals.push_back(v);
            break;
        case Decision::Deselected:
            literals.push_back(-v);
            break;
        case Decision::Undecided:
            break;
        }
    }
    return literals;
}

bool SatEngine::is_satisfiable(const PartialConfiguration& assumptions) {
    return is_satisfiable_literals(to_literals(assumptions));
}

bool SatEngine::is_satisfiable_literals(const std::vector<int>& assumptions) {
    return solver_.solve(assumptions).has_value();
}

std::optional<Configuration> SatEngine::solve(const std::vector<int>& assumptions,
                                              const CompletionPolicy& policy) {
    auto model = solver_.solve(assumptions, policy);
    if (!model) return std::nullopt;
    model->resize(static_cast<std::size_t>(model_->feature_count()));
    return Configuration(std::move(*model));
}

bool SatEngine::is_void() {
    if (!void_cache_) void_cache_ = !solver_.solve({}).has_value();
    return *void_cache_;
}

std::pair<std::vector<int>, std::vector<int>> SatEngine::core_dead_features() {
    if (core_dead_cache_) return *core_dead_cache_;

    auto first = solve({});
    if (!first) throw VoidModelError("model has no valid configuration");

    int n = model_->feature_count();
    std::vector<bool> maybe_core(static_cast<std::size_t>(n) + 1);
    std::vector<bool> maybe_dead(static_cast<std::size_t>(n) + 1);
    for (int v = 1; v <= n; ++v) {
        maybe_core[static_cast<std::size_t>(v)] = first->selected(v);
        maybe_dead[static_cast<std::size_t>(v)] = !first->selected(v);
    }
    auto prune = [&](const Configuration& witness) {
        for (int v = 1; v <= n; ++v) {
            if (witness.selected(v)) {
                maybe_dead[static_cast<std::size_t>(v)] = false;
            } else {
                maybe_core[static_cast<std::size_t>(v)] = false;
            }
        }
    };

    std::vector<int> core;
    std::vector<int> dead;
    for (int v = 1; v <= n; ++v) {
        if (maybe_core[static_cast<std::size_t>(v)]) {
            if (auto witness = solve({-v})) {
                prune(*witness);
            } else {
                core.push_back(v);
            }
        } else if (maybe_dead[static_cast<std::size_t>(v)]) {
            if (auto witness = solve({v})) {
                prune(*witness);
            } else {
                dead.push_back(v);
            }
        }
    }
    core_dead_cache_ = {std::move(core), std::move(dead)};
    return *core_dead_cache_;
}

Configuration SatEngine::complete(const PartialConfiguration& partial,
                                  const CompletionPolicy& policy) {
    auto config = solve(to_literals(partial), policy);
    if (!config) {
        throw UnsatisfiablePartialError("partial configuration has no valid completion");
    }
    return *config;
}

std::vector<Configuration> SatEngine::enumerate_all(std::uint64_t cap) {
    std::vector<Configuration> out;
    bool exceeded = false;
    solver_.for_each_model(model_->feature_count(), [&](const std::vector<bool>& model) {
        if (static_cast<std::uint64_t>(out.size()) >= cap) {
            exceeded = true;
            return false;
        }
        out.emplace_back(model);
        return true;
    });
    if (exceeded) throw CapExceededError(cap);
    return out;
}

bool is_satisfiable(const FeatureModel& model, const PartialConfiguration& assumptions) {
    SatEngine engine(model);
    return engine.is_satisfiable(assumptions);
}

std::pair<std::vector<int>, std::vector<int>> core_dead_features(const FeatureModel& model) {
    SatEngine engine(model);
    return engine.core_dead_features();
}

Configuration complete_configuration(const FeatureModel& model,
                                     const PartialConfiguration& partial,
                                     const CompletionPolicy& policy) {
    SatEngine engine(model);
    return engine.complete(partial, policy);
}

std::vector<Configuration> enumerate_all_configurations(const FeatureModel& model,
                                                        std::uint64_t cap) {
    SatEngine engine(model);
    return engine.enumerate_all(cap);
}

}  // namespace multiwise
