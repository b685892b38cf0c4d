#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "multiwise/configuration.hpp"
#include "multiwise/interactions.hpp"
#include "multiwise/sat_engine.hpp"

namespace multiwise {

inline constexpr int kDefaultMaxStrength = 6;

/// A named set of features sampled at its own interaction strength.
struct FeatureGroup {
    std::string name;
    int t = 0;
    std::vector<std::string> members;
};

/// Ordered feature groups plus the strength of the implicit default group,
/// which collects every feature not contained in any listed group.
struct GroupSpec {
    std::vector<FeatureGroup> groups;
    int default_t = 0;
};

/// A group resolved against a model: members as sorted feature variables.
struct ResolvedGroup {
    std::string name;
    int t = 0;
    std::vector<int> members;
};

/// Materializes the default group (when non-empty) and validates names and
/// strengths. After resolution the union of all groups covers every feature.
std::vector<ResolvedGroup> resolve_groups(const FeatureModel& model, const GroupSpec& spec,
                                          int max_t = kDefaultMaxStrength);

struct GroupRunStats {
    std::string group_name;
    int t = 0;
    std::uint64_t valid_tuples = 0;
    double duration_ms = 0.0;
};

struct SampleStats {
    std::vector<GroupRunStats> groups;
    double total_ms = 0.0;
};

/// An ordered, duplicate-free list of configurations. Entries are partial
/// while sampling is in progress; a finished sample is fully decided.
class Sample {
public:
    std::vector<PartialConfiguration> configurations;
    SampleStats stats;

    std::size_t size() const noexcept { return configurations.size(); }
    bool empty() const noexcept { return configurations.empty(); }
    bool all_complete() const;
    bool contains(const PartialConfiguration& config) const;

    /// Complete views of all configurations; throws if any is partial.
    std::vector<Configuration> complete_configurations() const;
};

enum class GroupOrder { Spec, AscendingT, DescendingT };

struct SamplingOptions {
    GroupOrder order = GroupOrder::Spec;

    /// Keep configurations partial across groups and complete once at the
    /// end instead of after every group.
    bool defer_completion = false;

    CompletionPolicy completion = {};

    /// Shuffle tuple processing order per group (greedy results depend on
    /// it). Off by default: canonical order, reproducible without a seed.
    bool shuffle_tuples = false;

    std::uint64_t seed = 0;

    int max_t = kDefaultMaxStrength;

    bool core_dead_prefilter = true;

    std::function<void(const std::string&)> warn;
};

/// Greedy covering pass for one feature set at one strength: walks the valid
/// tuples, merges each uncovered tuple into the first configuration that
/// stays satisfiable, appends a new configuration otherwise, then completes
/// everything (unless deferred). The returned sample covers every valid
/// t-wise interaction of `members`.
Sample covering_strategy(SatEngine& engine, std::vector<int> members, int t,
                         Sample seed_sample, const SamplingOptions& options = {});

Sample covering_strategy(const FeatureModel& model, std::vector<int> members, int t,
                         Sample seed_sample, const SamplingOptions& options = {});

/// Multi-strength sampling driver: applies the covering strategy per group
/// in processing order, threading the accumulated sample through, and
/// deduplicates on merge. The result reaches full coverage for every group
/// at that group's strength.
Sample multiwise_sample(const FeatureModel& model, const GroupSpec& spec,
                        const SamplingOptions& options = {});

Sample multiwise_sample(SatEngine& engine, const GroupSpec& spec,
                        const SamplingOptions& options = {});

}  // namespace multiwise
