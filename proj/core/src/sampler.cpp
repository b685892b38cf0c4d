#include "multiwise/sampler.hpp"

#include <algorithm>
#include <chrono>
#include <utility>

#include "multiwise/errors.hpp"
#include "multiwise/rng.hpp"

namespace multiwise {

bool Sample::all_complete() const {
    return std::all_of(configurations.begin(), configurations.end(),
                       [](const PartialConfiguration& c) { return c.complete(); });
}

bool Sample::contains(const PartialConfiguration& config) const {
    return std::find(configurations.begin(), configurations.end(), config) !=
           configurations.end();
}

std::vector<Configuration> Sample::complete_configurations() const {
    std::vector<Configuration> out;
    out.reserve(configurations.size());
    for (const PartialConfiguration& config : configurations) {
        out.push_back(Configuration::from_partial(config));
    }
    return out;
}

std::vector<ResolvedGroup> resolve_groups(const FeatureModel& model, const GroupSpec& spec,
                                          int max_t) {
    std::vector<ResolvedGroup> resolved;
    std::vector<bool> grouped(static_cast<std::size_t>(model.feature_count()) + 1);

    for (const FeatureGroup& group : spec.groups) {
        if (group.t < 0 || group.t > max_t) {
            throw GroupSpecError("group '" + group.name + "' has t=" +
                                 std::to_string(group.t) + " outside 0.." +
                                 std::to_string(max_t));
        }
        ResolvedGroup r;
        r.name = group.name;
        r.t = group.t;
        for (const std::string& member : group.members) {
            int var = model.require_var(member);
            r.members.push_back(var);
            grouped[static_cast<std::size_t>(var)] = true;
        }
        std::sort(r.members.begin(), r.members.end());
        r.members.erase(std::unique(r.members.begin(), r.members.end()), r.members.end());
        resolved.push_back(std::move(r));
    }

    if (spec.default_t < 0 || spec.default_t > max_t) {
        throw GroupSpecError("default group has t=" + std::to_string(spec.default_t) +
                             " outside 0.." + std::to_string(max_t));
    }
    ResolvedGroup rest;
    rest.name = "default";
    rest.t = spec.default_t;
    for (int v = 1; v <= model.feature_count(); ++v) {
        if (!grouped[static_cast<std::size_t>(v)]) rest.members.push_back(v);
    }
    if (!rest.members.empty()) resolved.push_back(std::move(rest));
    return resolved;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// First configuration (in sample order) that the tuple merges into while the
// merged partial stays satisfiable; extends it in place. False if none.
bool merge_into_first_fit(SatEngine& engine, Sample& sample, const InteractionTuple& tuple) {
    for (PartialConfiguration& config : sample.configurations) {
        bool clash = false;
        for (int lit : tuple.literals()) {
            if (config.conflicts(lit)) {
                clash = true;
                break;
            }
        }
        if (clash) continue;

        PartialConfiguration merged = config;
        for (int lit : tuple.literals()) {
            merged.set(lit > 0 ? lit : -lit,
                       lit > 0 ? Decision::Selected : Decision::Deselected);
        }
        if (engine.is_satisfiable(merged)) {
            config = std::move(merged);
            return true;
        }
    }
    return false;
}

void complete_all(SatEngine& engine, Sample& sample, const CompletionPolicy& policy) {
    for (PartialConfiguration& config : sample.configurations) {
        if (!config.complete()) {
            config = engine.complete(config, policy).to_partial();
        }
    }
    // Completion can collapse two partials onto the same assignment; keep
    // the first occurrence.
    std::vector<PartialConfiguration> unique;
    unique.reserve(sample.configurations.size());
    for (PartialConfiguration& config : sample.configurations) {
        if (std::find(unique.begin(), unique.end(), config) == unique.end()) {
            unique.push_back(std::move(config));
        }
    }
    sample.configurations = std::move(unique);
}

Sample run_covering(SatEngine& engine, std::vector<int> members, int t, Sample sample,
                    const SamplingOptions& options, std::uint64_t shuffle_seed,
                    const std::string& group_name) {
    if (engine.is_void()) throw VoidModelError("model has no valid configuration");

    auto start = Clock::now();
    EnumerationOptions enum_options;
    enum_options.core_dead_prefilter = options.core_dead_prefilter;
    enum_options.warn = options.warn;
    TupleSet tuples = enumerate_valid_interactions(engine, std::move(members), t,
                                                   enum_options);

    std::vector<InteractionTuple> order = tuples.tuples;
    if (options.shuffle_tuples) {
        Rng rng(shuffle_seed);
        rng.shuffle(order);
    }

    int feature_count = engine.model().feature_count();
    for (const InteractionTuple& tuple : order) {
        bool covered = false;
        for (const PartialConfiguration& config : sample.configurations) {
            if (tuple_covered(config, tuple)) {
                covered = true;
                break;
            }
        }
        if (covered) continue;
        if (merge_into_first_fit(engine, sample, tuple)) continue;

        // Every valid tuple is itself a satisfiable partial configuration.
        PartialConfiguration fresh(feature_count);
        for (int lit : tuple.literals()) {
            fresh.set(lit > 0 ? lit : -lit,
                      lit > 0 ? Decision::Selected : Decision::Deselected);
        }
        sample.configurations.push_back(std::move(fresh));
    }

    if (!options.defer_completion) {
        complete_all(engine, sample, options.completion);
    }

    GroupRunStats stats;
    stats.group_name = group_name;
    stats.t = t;
    stats.valid_tuples = tuples.size();
    stats.duration_ms = ms_since(start);
    sample.stats.groups.push_back(std::move(stats));
    sample.stats.total_ms += sample.stats.groups.back().duration_ms;
    return sample;
}

std::vector<ResolvedGroup> order_groups(std::vector<ResolvedGroup> groups,
                                        GroupOrder order) {
    switch (order) {
    case GroupOrder::Spec:
        break;
    case GroupOrder::AscendingT:
        std::stable_sort(groups.begin(), groups.end(),
                         [](const ResolvedGroup& a, const ResolvedGroup& b) {
                             return a.t < b.t;
                         });
        break;
    case GroupOrder::DescendingT:
        std::stable_sort(groups.begin(), groups.end(),
                         [](const ResolvedGroup& a, const ResolvedGroup& b) {
                             return a.t > b.t;
                         });
        break;
    }
    return groups;
}

}  // namespace

Sample covering_strategy(SatEngine& engine, std::vector<int> members, int t,
                         Sample seed_sample, const SamplingOptions& options) {
    return run_covering(engine, std::move(members), t, std::move(seed_sample), options,
                        derive_seed(options.seed, 0), "covering");
}

Sample covering_strategy(const FeatureModel& model, std::vector<int> members, int t,
                         Sample seed_sample, const SamplingOptions& options) {
    SatEngine engine(model);
    return covering_strategy(engine, std::move(members), t, std::move(seed_sample), options);
}

Sample multiwise_sample(SatEngine& engine, const GroupSpec& spec,
                        const SamplingOptions& options) {
    if (engine.is_void()) throw VoidModelError("model has no valid configuration");

    std::vector<ResolvedGroup> groups =
        order_groups(resolve_groups(engine.model(), spec, options.max_t), options.order);

    Sample sample;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        // One sub-seed per group index, so adding a group leaves the
        // randomness of earlier groups untouched.
        sample = run_covering(engine, groups[i].members, groups[i].t, std::move(sample),
                              options, derive_seed(options.seed, i), groups[i].name);
    }
    if (options.defer_completion) {
        auto start = Clock::now();
        complete_all(engine, sample, options.completion);
        sample.stats.total_ms += ms_since(start);
    }
    return sample;
}

Sample multiwise_sample(const FeatureModel& model, const GroupSpec& spec,
                        const SamplingOptions& options) {
    SatEngine engine(model);
    return multiwise_sample(engine, spec, options);
}

}  // namespace multiwise
