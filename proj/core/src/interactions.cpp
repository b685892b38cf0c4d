#include "multiwise/interactions.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <stdexcept>

#include "multiwise/errors.hpp"
#include "multiwise/sampler.hpp"

namespace multiwise {

InteractionTuple::InteractionTuple(std::vector<int> literals)
    : literals_(std::move(literals)) {
    if (literals_.empty()) throw std::invalid_argument("interaction tuple needs t >= 1");
    std::sort(literals_.begin(), literals_.end(),
              [](int a, int b) { return std::abs(a) < std::abs(b); });
    for (std::size_t i = 0; i + 1 < literals_.size(); ++i) {
        if (std::abs(literals_[i]) == std::abs(literals_[i + 1])) {
            throw std::invalid_argument("interaction tuple repeats a feature");
        }
    }
}

std::string InteractionTuple::to_string(const FeatureModel& model) const {
    std::string out = "(";
    for (std::size_t i = 0; i < literals_.size(); ++i) {
        if (i > 0) out += ", ";
        if (literals_[i] < 0) out += '!';
        out += model.feature_name(std::abs(literals_[i]));
    }
    return out + ")";
}

namespace {

// Recent satisfying configurations; most checks against consecutive tuples
// hit one of these and skip the solver.
class ModelCache {
public:
    bool covers_any(const std::vector<int>& literals) const {
        for (const Configuration& config : entries_) {
            bool all = true;
            for (int lit : literals) {
                if (!config.agrees(lit)) {
                    all = false;
                    break;
                }
            }
            if (all) return true;
        }
        return false;
    }

    void add(Configuration config) {
        if (entries_.size() >= kCapacity) entries_.pop_back();
        entries_.push_front(std::move(config));
    }

private:
    static constexpr std::size_t kCapacity = 32;
    std::deque<Configuration> entries_;
};

std::vector<int> canonical_scope(std::vector<int> scope, const FeatureModel& model) {
    std::sort(scope.begin(), scope.end());
    scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
    for (int var : scope) {
        if (!model.is_feature_var(var)) {
            throw UnknownFeatureError("variable " + std::to_string(var));
        }
    }
    return scope;
}

}  // namespace

TupleSet enumerate_valid_interactions(SatEngine& engine, std::vector<int> scope, int t,
                                      const EnumerationOptions& options) {
    const FeatureModel& model = engine.model();
    TupleSet set;
    set.t = t;
    set.scope = canonical_scope(std::move(scope), model);

    if (t < 0) throw std::invalid_argument("negative interaction strength");
    if (t > 62) throw std::invalid_argument("interaction strength too large");
    if (t == 0) return set;
    if (static_cast<std::size_t>(t) > set.scope.size()) {
        if (options.warn) {
            options.warn("t=" + std::to_string(t) + " exceeds scope size " +
                         std::to_string(set.scope.size()) + "; no interactions to cover");
        }
        return set;
    }
    if (engine.is_void()) return set;  // no valid configurations, no valid tuples

    std::vector<bool> is_core(static_cast<std::size_t>(model.feature_count()) + 1);
    std::vector<bool> is_dead(static_cast<std::size_t>(model.feature_count()) + 1);
    if (options.core_dead_prefilter) {
        auto [core, dead] = engine.core_dead_features();
        for (int v : core) is_core[static_cast<std::size_t>(v)] = true;
        for (int v : dead) is_dead[static_cast<std::size_t>(v)] = true;
    }

    ModelCache cache;
    std::vector<int> literals(static_cast<std::size_t>(t));

    // Combinations in ascending index order; within one combination all
    // 2^t sign patterns, positive before negative per position.
    std::vector<std::size_t> combo(static_cast<std::size_t>(t));
    for (int i = 0; i < t; ++i) combo[static_cast<std::size_t>(i)] = static_cast<std::size_t>(i);

    while (true) {
        for (std::uint64_t mask = 0; mask < (1ULL << t); ++mask) {
            bool refuted = false;
            for (int i = 0; i < t; ++i) {
                int var = set.scope[combo[static_cast<std::size_t>(i)]];
                bool negative = (mask >> (t - 1 - i)) & 1;
                int lit = negative ? -var : var;
                literals[static_cast<std::size_t>(i)] = lit;
                if (options.core_dead_prefilter &&
                    ((negative && is_core[static_cast<std::size_t>(var)]) ||
                     (!negative && is_dead[static_cast<std::size_t>(var)]))) {
                    refuted = true;
                }
            }
            if (refuted) continue;
            if (!cache.covers_any(literals)) {
                auto witness = engine.solve(literals);
                if (!witness) continue;
                cache.add(std::move(*witness));
            }
            set.tuples.emplace_back(literals);
        }

        // Next combination.
        int pos = t - 1;
        while (pos >= 0 &&
               combo[static_cast<std::size_t>(pos)] ==
                   set.scope.size() - static_cast<std::size_t>(t - pos)) {
            --pos;
        }
        if (pos < 0) break;
        ++combo[static_cast<std::size_t>(pos)];
        for (int i = pos + 1; i < t; ++i) {
            combo[static_cast<std::size_t>(i)] = combo[static_cast<std::size_t>(i - 1)] + 1;
        }
    }
    return set;
}

TupleSet enumerate_valid_interactions(SatEngine& engine,
                                      const std::vector<std::string>& scope_names, int t,
                                      const EnumerationOptions& options) {
    std::vector<int> scope;
    scope.reserve(scope_names.size());
    for (const std::string& name : scope_names) {
        scope.push_back(engine.model().require_var(name));
    }
    return enumerate_valid_interactions(engine, std::move(scope), t, options);
}

bool tuple_covered(const Configuration& config, const InteractionTuple& tuple) {
    for (int lit : tuple.literals()) {
        if (!config.agrees(lit)) return false;
    }
    return true;
}

bool tuple_covered(const PartialConfiguration& config, const InteractionTuple& tuple) {
    for (int lit : tuple.literals()) {
        if (!config.agrees(lit)) return false;
    }
    return true;
}

namespace {

bool covered_by_sample(const Sample& sample, const InteractionTuple& tuple) {
    for (const PartialConfiguration& config : sample.configurations) {
        if (tuple_covered(config, tuple)) return true;
    }
    return false;
}

}  // namespace

TupleSet uncovered_tuples(const TupleSet& set, const Sample& sample) {
    TupleSet out;
    out.t = set.t;
    out.scope = set.scope;
    for (const InteractionTuple& tuple : set.tuples) {
        if (!covered_by_sample(sample, tuple)) out.tuples.push_back(tuple);
    }
    return out;
}

Coverage coverage_of(const TupleSet& set, const Sample& sample) {
    Coverage coverage;
    coverage.valid = set.tuples.size();
    for (const InteractionTuple& tuple : set.tuples) {
        if (covered_by_sample(sample, tuple)) ++coverage.covered;
    }
    return coverage;
}

Coverage coverage_ratio(SatEngine& engine, const Sample& sample, int t,
                        std::vector<int> scope, const EnumerationOptions& options) {
    return coverage_of(enumerate_valid_interactions(engine, std::move(scope), t, options),
                       sample);
}

Coverage coverage_ratio(const FeatureModel& model, const Sample& sample, int t,
                        std::vector<int> scope, const EnumerationOptions& options) {
    SatEngine engine(model);
    return coverage_ratio(engine, sample, t, std::move(scope), options);
}

std::vector<int> full_scope(const FeatureModel& model) {
    std::vector<int> scope(static_cast<std::size_t>(model.feature_count()));
    for (int v = 1; v <= model.feature_count(); ++v) {
        scope[static_cast<std::size_t>(v - 1)] = v;
    }
    return scope;
}

}  // namespace multiwise
