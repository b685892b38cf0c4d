#include "multiwise/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "multiwise/interactions.hpp"
#include "multiwise/io.hpp"
#include "multiwise/rng.hpp"

namespace multiwise {

const std::array<ExperimentSetup, 7>& ExperimentSetup::standard() {
    static const std::array<ExperimentSetup, 7> setups = {{
        {"Exp1", Kind::Baseline, 2, 0, 0},
        {"Exp2", Kind::Split, 0, 100, 0},
        {"Exp3", Kind::Split, 0, 75, 25},
        {"Exp4", Kind::Split, 0, 50, 50},
        {"Exp5", Kind::Split, 0, 25, 75},
        {"Exp6", Kind::Split, 0, 0, 100},
        {"Exp7", Kind::Baseline, 3, 0, 0},
    }};
    return setups;
}

std::optional<ExperimentSetup> ExperimentSetup::by_id(const std::string& id) {
    for (const ExperimentSetup& setup : standard()) {
        if (setup.id == id) return setup;
    }
    return std::nullopt;
}

GroupSpec build_setup(const ExperimentSetup& setup, const FeatureModel& model,
                      std::uint64_t seed) {
    GroupSpec spec;
    spec.default_t = 0;

    if (setup.kind == ExperimentSetup::Kind::Baseline) {
        FeatureGroup all;
        all.name = "all";
        all.t = setup.baseline_t;
        all.members = model.features();
        spec.groups.push_back(std::move(all));
        return spec;
    }

    // Seeded uniform permutation, cut at round(pct_t2/100 * n), half up.
    std::vector<std::string> order = model.features();
    Rng rng(derive_seed(seed, 0x9a57));
    rng.shuffle(order);

    std::size_t n = order.size();
    std::size_t t2_count =
        (n * static_cast<std::size_t>(setup.pct_t2) + 50) / 100;

    FeatureGroup t2;
    t2.name = "t2";
    t2.t = 2;
    t2.members.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(t2_count));
    FeatureGroup t3;
    t3.name = "t3";
    t3.t = 3;
    t3.members.assign(order.begin() + static_cast<std::ptrdiff_t>(t2_count), order.end());
    spec.groups.push_back(std::move(t2));
    spec.groups.push_back(std::move(t3));
    return spec;
}

namespace {

RunRecord run_single(const FeatureModel& model, const std::string& model_name,
                     const ExperimentSetup& setup, int repetition, std::uint64_t seed,
                     const RunOptions& options) {
    RunRecord record;
    record.experiment_id = setup.id;
    record.model_name = model_name;
    record.repetition = repetition;
    record.seed = seed;

    GroupSpec spec = build_setup(setup, model, seed);

    SamplingOptions sampling = options.sampling;
    sampling.seed = seed;

    SatEngine engine(model);
    Sample sample = multiwise_sample(engine, spec, sampling);

    record.sample_size = sample.size();
    record.time_ms = options.measure_time ? sample.stats.total_ms : 0.0;
    for (const GroupRunStats& stats : sample.stats.groups) {
        record.tuples_enumerated += stats.valid_tuples;
    }

    record.cov_t2 = coverage_ratio(engine, sample, 2, full_scope(model)).ratio();
    record.cov_t3 = coverage_ratio(engine, sample, 3, full_scope(model)).ratio();
    return record;
}

}  // namespace

std::vector<RunRecord> run_experiments(const FeatureModel& model,
                                       const std::string& model_name,
                                       const std::vector<ExperimentSetup>& setups,
                                       int repetitions, std::uint64_t root_seed,
                                       const RunOptions& options) {
    if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");

    struct Slot {
        std::size_t setup_index;
        int repetition;
    };
    std::vector<Slot> slots;
    for (std::size_t s = 0; s < setups.size(); ++s) {
        for (int r = 1; r <= repetitions; ++r) slots.push_back({s, r});
    }

    std::vector<RunRecord> records(slots.size());
    std::vector<std::string> failures(slots.size());

    auto work = [&](std::size_t slot_index) {
        const Slot& slot = slots[slot_index];
        const ExperimentSetup& setup = setups[slot.setup_index];
        std::uint64_t seed =
            derive_seed(root_seed, slot.setup_index + 1,
                        static_cast<std::uint64_t>(slot.repetition));
        try {
            records[slot_index] =
                run_single(model, model_name, setup, slot.repetition, seed, options);
        } catch (const std::exception& e) {
            failures[slot_index] =
                setup.id + " repetition " + std::to_string(slot.repetition) + ": " + e.what();
        }
    };

    int threads = std::max(1, options.threads);
    if (threads == 1 || slots.size() <= 1) {
        for (std::size_t i = 0; i < slots.size(); ++i) work(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        int count = std::min<int>(threads, static_cast<int>(slots.size()));
        for (int i = 0; i < count; ++i) {
            pool.emplace_back([&] {
                while (true) {
                    std::size_t slot_index = next.fetch_add(1);
                    if (slot_index >= slots.size()) break;
                    work(slot_index);
                }
            });
        }
        for (std::thread& t : pool) t.join();
    }

    for (const std::string& failure : failures) {
        if (!failure.empty()) throw std::runtime_error("experiment failed: " + failure);
    }
    return records;
}

namespace {

// Lower-median order statistics; values need not be pre-sorted.
MetricSummary summarize_metric(const std::string& name, std::vector<double> values) {
    std::sort(values.begin(), values.end());
    std::size_t n = values.size();
    MetricSummary summary;
    summary.metric = name;
    summary.median = values[(n - 1) / 2];
    summary.q1 = values[(n - 1) / 4];
    summary.q3 = values[3 * (n - 1) / 4];
    summary.min = values.front();
    summary.max = values.back();
    return summary;
}

}  // namespace

std::vector<SetupSummary> summarize(const std::vector<RunRecord>& records) {
    if (records.empty()) throw std::invalid_argument("no records to summarize");

    std::vector<std::pair<std::string, std::string>> keys;  // (experiment, model)
    for (const RunRecord& record : records) {
        std::pair<std::string, std::string> key{record.experiment_id, record.model_name};
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
    }

    std::vector<SetupSummary> out;
    for (const auto& [experiment, model_name] : keys) {
        std::vector<double> sizes, times, cov2, cov3;
        for (const RunRecord& record : records) {
            if (record.experiment_id != experiment || record.model_name != model_name) {
                continue;
            }
            sizes.push_back(static_cast<double>(record.sample_size));
            times.push_back(record.time_ms);
            cov2.push_back(record.cov_t2);
            cov3.push_back(record.cov_t3);
        }
        SetupSummary summary;
        summary.experiment_id = experiment;
        summary.model_name = model_name;
        summary.metrics.push_back(summarize_metric("sample_size", std::move(sizes)));
        summary.metrics.push_back(summarize_metric("time_ms", std::move(times)));
        summary.metrics.push_back(summarize_metric("cov_t2", std::move(cov2)));
        summary.metrics.push_back(summarize_metric("cov_t3", std::move(cov3)));
        out.push_back(std::move(summary));
    }
    return out;
}

namespace {

std::string format_time(double ms) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(3);
    out << ms;
    return out.str();
}

std::string format_metric(const std::string& metric, double value) {
    if (metric == "sample_size") {
        return std::to_string(static_cast<long long>(value));
    }
    if (metric == "time_ms") {
        return format_time(value);
    }
    return format_ratio(value);
}

}  // namespace

std::string results_csv(const std::vector<RunRecord>& records) {
    std::ostringstream out;
    out << "experiment,model,repetition,seed,sample_size,time_ms,cov_t2,cov_t3\n";
    for (const RunRecord& record : records) {
        out << record.experiment_id << ',' << record.model_name << ','
            << record.repetition << ',' << record.seed << ',' << record.sample_size << ','
            << format_time(record.time_ms) << ',' << format_ratio(record.cov_t2) << ','
            << format_ratio(record.cov_t3) << '\n';
    }
    return out.str();
}

std::string summary_csv(const std::vector<SetupSummary>& summaries) {
    std::ostringstream out;
    out << "experiment,model,metric,median,q1,q3,min,max\n";
    for (const SetupSummary& summary : summaries) {
        for (const MetricSummary& metric : summary.metrics) {
            out << summary.experiment_id << ',' << summary.model_name << ','
                << metric.metric << ',' << format_metric(metric.metric, metric.median)
                << ',' << format_metric(metric.metric, metric.q1) << ','
                << format_metric(metric.metric, metric.q3) << ','
                << format_metric(metric.metric, metric.min) << ','
                << format_metric(metric.metric, metric.max) << '\n';
        }
    }
    return out.str();
}

}  // namespace multiwise
