#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "multiwise/configuration.hpp"
#include "multiwise/sat_engine.hpp"

namespace multiwise {

class Sample;

/// A t-wise interaction: t literals over pairwise-distinct features, kept
/// sorted by variable so equality is structural.
class InteractionTuple {
public:
    InteractionTuple() = default;

    /// Sorts the literals by variable. Throws std::invalid_argument if a
    /// feature repeats (same or opposite sign) or t < 1.
    explicit InteractionTuple(std::vector<int> literals);

    int strength() const noexcept { return static_cast<int>(literals_.size()); }
    const std::vector<int>& literals() const noexcept { return literals_; }

    friend bool operator==(const InteractionTuple&, const InteractionTuple&) = default;
    friend bool operator<(const InteractionTuple& a, const InteractionTuple& b) {
        return a.literals_ < b.literals_;
    }

    std::string to_string(const FeatureModel& model) const;

private:
    std::vector<int> literals_;
};

/// The valid t-wise interactions of one scope, in canonical enumeration
/// order: feature combinations ascending, positive sign before negative.
struct TupleSet {
    int t = 0;
    std::vector<int> scope;  // sorted feature variables
    std::vector<InteractionTuple> tuples;

    std::size_t size() const noexcept { return tuples.size(); }
    bool empty() const noexcept { return tuples.empty(); }
};

struct EnumerationOptions {
    /// Skip solver calls for tuples refuted by core/dead analysis. Never
    /// changes the result set, only the number of solver calls.
    bool core_dead_prefilter = true;

    /// Receives human-readable warnings (e.g. t larger than the scope).
    std::function<void(const std::string&)> warn;
};

/// Enumerates all valid t-wise interactions over `scope` (sorted, distinct
/// feature variables). t = 0 and t > |scope| yield an empty set; the latter
/// also emits a warning. Throws UnknownFeatureError for out-of-range scope
/// entries.
TupleSet enumerate_valid_interactions(SatEngine& engine, std::vector<int> scope, int t,
                                      const EnumerationOptions& options = {});

/// Name-based convenience wrapper.
TupleSet enumerate_valid_interactions(SatEngine& engine,
                                      const std::vector<std::string>& scope_names, int t,
                                      const EnumerationOptions& options = {});

/// True iff every literal of the tuple agrees with the configuration.
bool tuple_covered(const Configuration& config, const InteractionTuple& tuple);

/// Partial configurations cover a tuple only through decided entries.
bool tuple_covered(const PartialConfiguration& config, const InteractionTuple& tuple);

/// The tuples of `set` covered by no configuration of the sample.
TupleSet uncovered_tuples(const TupleSet& set, const Sample& sample);

/// Coverage as an exact fraction. An empty tuple set counts as fully
/// covered (ratio 1).
struct Coverage {
    std::uint64_t valid = 0;
    std::uint64_t covered = 0;

    double ratio() const noexcept {
        return valid == 0 ? 1.0 : static_cast<double>(covered) / static_cast<double>(valid);
    }

    friend bool operator==(const Coverage&, const Coverage&) = default;
};

Coverage coverage_of(const TupleSet& set, const Sample& sample);

/// Ratio of covered valid t-wise interactions over `scope`, per the
/// covering criterion. Enumerates the valid tuples internally.
Coverage coverage_ratio(SatEngine& engine, const Sample& sample, int t,
                        std::vector<int> scope, const EnumerationOptions& options = {});

Coverage coverage_ratio(const FeatureModel& model, const Sample& sample, int t,
                        std::vector<int> scope, const EnumerationOptions& options = {});

/// All feature variables of a model, 1..n.
std::vector<int> full_scope(const FeatureModel& model);

}  // namespace multiwise
