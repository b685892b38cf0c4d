#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "multiwise/feature_model.hpp"
#include "multiwise/sampler.hpp"

namespace multiwise {

/// One row of the experiment grid: either a single-group baseline at a fixed
/// strength, or a random two-way split where pct_t2 percent of the features
/// are sampled pair-wise and the rest three-wise.
struct ExperimentSetup {
    enum class Kind { Baseline, Split };

    std::string id;
    Kind kind = Kind::Baseline;
    int baseline_t = 2;  // Baseline only
    int pct_t2 = 0;      // Split only; pct_t3 = 100 - pct_t2
    int pct_t3 = 0;

    /// The full Exp1..Exp7 grid: pair-wise baseline, splits 100/0, 75/25,
    /// 50/50, 25/75, 0/100, three-wise baseline.
    static const std::array<ExperimentSetup, 7>& standard();

    static std::optional<ExperimentSetup> by_id(const std::string& id);
};

struct RunRecord {
    std::string experiment_id;
    std::string model_name;
    int repetition = 0;  // 1-based
    std::uint64_t seed = 0;
    std::uint64_t sample_size = 0;
    double time_ms = 0.0;  // sampling only: tuple enumeration + covering
    double cov_t2 = 0.0;   // over all features
    double cov_t3 = 0.0;
    std::uint64_t tuples_enumerated = 0;  // across all groups of the run
};

/// Builds the group spec for one run. Split setups cut a seeded uniform
/// permutation of the features so that round(pct_t2/100 * n) features go to
/// the pair-wise group (round half up) and the rest to the three-wise group;
/// the partition is disjoint and exhaustive and the default strength is 0.
GroupSpec build_setup(const ExperimentSetup& setup, const FeatureModel& model,
                      std::uint64_t seed);

struct RunOptions {
    int threads = 1;

    /// When false, time_ms is recorded as 0 so that result files depend only
    /// on the root seed.
    bool measure_time = true;

    SamplingOptions sampling;
};

/// Runs repetitions x setups, one derived seed per (setup, repetition) slot.
/// Records come back in (setup, repetition) order regardless of scheduling.
/// Coverage is measured over all features at t = 2 and t = 3.
std::vector<RunRecord> run_experiments(const FeatureModel& model,
                                       const std::string& model_name,
                                       const std::vector<ExperimentSetup>& setups,
                                       int repetitions, std::uint64_t root_seed,
                                       const RunOptions& options = {});

/// Order statistics use the lower-median convention: for sorted values v,
/// median = v[(n-1)/2], q1 = v[(n-1)/4], q3 = v[3*(n-1)/4].
struct MetricSummary {
    std::string metric;
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    double min = 0.0;
    double max = 0.0;
};

struct SetupSummary {
    std::string experiment_id;
    std::string model_name;
    std::vector<MetricSummary> metrics;  // sample_size, time_ms, cov_t2, cov_t3
};

/// Per-setup statistics in first-appearance order. Throws
/// std::invalid_argument on an empty record list.
std::vector<SetupSummary> summarize(const std::vector<RunRecord>& records);

/// CSV with header experiment,model,repetition,seed,sample_size,time_ms,cov_t2,cov_t3.
std::string results_csv(const std::vector<RunRecord>& records);

/// CSV with header experiment,model,metric,median,q1,q3,min,max.
std::string summary_csv(const std::vector<SetupSummary>& summaries);

}  // namespace multiwise
