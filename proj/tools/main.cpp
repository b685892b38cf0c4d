// Command-line front end: sampling, coverage measurement, experiment
// replay, format conversion, and model inspection.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "multiwise/dimacs.hpp"
#include "multiwise/errors.hpp"
#include "multiwise/experiments.hpp"
#include "multiwise/interactions.hpp"
#include "multiwise/io.hpp"
#include "multiwise/sampler.hpp"
#include "multiwise/sat_engine.hpp"
#include "multiwise/uvl.hpp"

namespace {

namespace fs = std::filesystem;
using namespace multiwise;

// Exit codes: 0 ok, 1 usage, 2 parse error, 3 void model / unsatisfiable,
// 4 model/file inconsistency (unknown features, t out of range).
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitUnsat = 3;
constexpr int kExitInconsistent = 4;

int max_strength_from_env() {
    if (const char* raw = std::getenv("MULTIWISE_MAX_T")) {
        char* end = nullptr;
        long value = std::strtol(raw, &end, 10);
        if (end && *end == '\0' && value >= 0 && value <= 62) {
            return static_cast<int>(value);
        }
        std::cerr << "warning: ignoring invalid MULTIWISE_MAX_T='" << raw << "'\n";
    }
    return kDefaultMaxStrength;
}

std::string model_stem(const fs::path& path) { return path.stem().string(); }

FeatureModel load_checked(const fs::path& path) {
    if (!fs::exists(path)) {
        throw std::runtime_error("no such file: " + path.string());
    }
    return load_model(path);
}

GroupOrder parse_order(const std::string& text) {
    if (text == "spec") return GroupOrder::Spec;
    if (text == "ascending-t") return GroupOrder::AscendingT;
    if (text == "descending-t") return GroupOrder::DescendingT;
    throw CLI::ValidationError("--order", "expected spec|ascending-t|descending-t");
}

void warn_to_stderr(const std::string& message) {
    std::cerr << "warning: " << message << '\n';
}

struct SampleArgs {
    std::string model_path;
    std::string groups_path;
    std::optional<int> uniform_t;
    std::uint64_t seed = 0;
    std::string order = "spec";
    bool defer_completion = false;
    std::string out_path;
};

int cmd_sample(const SampleArgs& args) {
    FeatureModel model = load_checked(args.model_path);

    GroupSpec spec;
    if (!args.groups_path.empty()) {
        spec = parse_group_spec_json(read_file(args.groups_path));
    } else if (args.uniform_t) {
        FeatureGroup all;
        all.name = "all";
        all.t = *args.uniform_t;
        all.members = model.features();
        spec.groups.push_back(std::move(all));
    } else {
        std::cerr << "error: need --groups FILE or --t N\n";
        return kExitUsage;
    }

    SamplingOptions options;
    options.order = parse_order(args.order);
    options.defer_completion = args.defer_completion;
    options.seed = args.seed;
    options.max_t = max_strength_from_env();
    options.warn = warn_to_stderr;

    Sample sample = multiwise_sample(model, spec, options);

    fs::path out = args.out_path.empty()
                       ? fs::path(model_stem(args.model_path) + ".sample")
                       : fs::path(args.out_path);
    write_file(out, write_sample(sample, model, model_stem(args.model_path), args.seed));
    std::cout << "size=" << sample.size() << " time_ms="
              << static_cast<long long>(sample.stats.total_ms + 0.5) << '\n';
    return kExitOk;
}

struct CoverageArgs {
    std::string model_path;
    std::string sample_path;
    std::optional<int> t;
    std::string scope = "all";
    std::string csv_out;
};

int cmd_coverage(const CoverageArgs& args) {
    FeatureModel model = load_checked(args.model_path);
    Sample sample = read_sample(read_file(args.sample_path), model);

    SatEngine engine(model);
    std::vector<CoverageRow> rows;
    if (args.scope == "all") {
        if (!args.t) {
            std::cerr << "error: --t is required with --scope all\n";
            return kExitUsage;
        }
        Coverage coverage = coverage_ratio(engine, sample, *args.t, full_scope(model));
        rows.push_back({"all", *args.t, coverage});
        std::cout << "valid=" << coverage.valid << " covered=" << coverage.covered
                  << " ratio=" << format_ratio(coverage.ratio()) << '\n';
    } else {
        GroupSpec spec = parse_group_spec_json(read_file(args.scope));
        for (const ResolvedGroup& group :
             resolve_groups(model, spec, max_strength_from_env())) {
            int t = args.t.value_or(group.t);
            Coverage coverage = coverage_ratio(engine, sample, t, group.members);
            rows.push_back({group.name, t, coverage});
            std::cout << "scope=" << group.name << " t=" << t << " valid=" << coverage.valid
                      << " covered=" << coverage.covered
                      << " ratio=" << format_ratio(coverage.ratio()) << '\n';
        }
    }
    if (!args.csv_out.empty()) {
        write_file(args.csv_out, coverage_csv(rows));
    }
    return kExitOk;
}

struct ExperimentArgs {
    std::string model_path;
    std::vector<std::string> setup_ids;
    int repetitions = 10;
    std::uint64_t seed = 1;
    std::string out_dir = ".";
    int threads = 1;
    std::string timing = "wall";
};

int cmd_experiment(const ExperimentArgs& args) {
    FeatureModel model = load_checked(args.model_path);
    if (SatEngine(model).is_void()) {
        throw VoidModelError("model has no valid configuration");
    }

    std::vector<ExperimentSetup> setups;
    if (args.setup_ids.empty()) {
        const auto& all = ExperimentSetup::standard();
        setups.assign(all.begin(), all.end());
    } else {
        for (const std::string& id : args.setup_ids) {
            auto setup = ExperimentSetup::by_id(id);
            if (!setup) {
                std::cerr << "error: unknown setup '" << id << "' (expected Exp1..Exp7)\n";
                return kExitUsage;
            }
            setups.push_back(*setup);
        }
    }

    RunOptions options;
    options.threads = args.threads;
    options.measure_time = args.timing != "none";
    options.sampling.max_t = max_strength_from_env();

    std::vector<RunRecord> records = run_experiments(
        model, model_stem(args.model_path), setups, args.repetitions, args.seed, options);

    fs::path dir(args.out_dir);
    fs::create_directories(dir);
    fs::path results_path = dir / "results.csv";
    fs::path summary_path = dir / "summary.csv";
    write_file(results_path, results_csv(records));
    write_file(summary_path, summary_csv(summarize(records)));
    std::cout << "records=" << records.size() << " results=" << results_path.string()
              << " summary=" << summary_path.string() << '\n';
    return kExitOk;
}

int cmd_convert(const std::string& in_path, const std::string& out_path) {
    fs::path in(in_path);
    fs::path out(out_path);
    std::string from = in.extension().string();
    std::string to = out.extension().string();

    if (from == ".uvl" && to == ".uvl") {
        write_file(out, write_uvl(parse_uvl(read_file(in))));
    } else if (from == ".uvl" && to == ".dimacs") {
        write_file(out, write_dimacs(compile_to_cnf(parse_uvl(read_file(in)))));
    } else if (from == ".dimacs" && to == ".dimacs") {
        write_file(out, write_dimacs(parse_dimacs(read_file(in))));
    } else {
        std::cerr << "error: unsupported conversion " << from << " -> " << to << '\n';
        return kExitUsage;
    }
    return kExitOk;
}

int cmd_inspect(const std::string& model_path, std::uint64_t count_cap) {
    FeatureModel model = load_checked(model_path);
    std::cout << "features=" << model.feature_count() << '\n'
              << "clauses=" << model.clauses().size() << '\n'
              << "aux_vars=" << model.aux_var_count() << '\n';

    SatEngine engine(model);
    if (engine.is_void()) {
        std::cout << "void=true\n";
        std::cerr << "error: model has no valid configuration\n";
        return kExitUnsat;
    }

    auto [core, dead] = engine.core_dead_features();
    auto print_list = [&](const char* label, const std::vector<int>& vars) {
        std::cout << label << '=';
        for (std::size_t i = 0; i < vars.size(); ++i) {
            if (i > 0) std::cout << ',';
            std::cout << model.feature_name(vars[i]);
        }
        std::cout << '\n';
    };
    print_list("core", core);
    print_list("dead", dead);

    try {
        std::cout << "configurations=" << engine.enumerate_all(count_cap).size() << '\n';
    } catch (const CapExceededError&) {
        std::cout << "configurations=>" << count_cap << '\n';
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Feature-model sampling with per-group interaction strengths"};
    app.require_subcommand(1);

    SampleArgs sample_args;
    CLI::App* sample = app.add_subcommand(
        "sample", "Generate a covering sample for a model and group spec");
    sample->add_option("model", sample_args.model_path, "Model file (.uvl or .dimacs)")
        ->required();
    sample->add_option("--groups", sample_args.groups_path, "Group-spec JSON file");
    sample->add_option("--t", sample_args.uniform_t,
                       "Single all-features group at this strength");
    sample->add_option("--seed", sample_args.seed, "Root seed");
    sample->add_option("--order", sample_args.order,
                       "Group processing order: spec|ascending-t|descending-t");
    sample->add_flag("--defer-completion", sample_args.defer_completion,
                     "Complete configurations once after the last group");
    sample->add_option("--out", sample_args.out_path,
                       "Sample output path (default <model>.sample)");

    CoverageArgs coverage_args;
    CLI::App* coverage = app.add_subcommand(
        "coverage", "Measure t-wise interaction coverage of a sample");
    coverage->add_option("model", coverage_args.model_path, "Model file")->required();
    coverage->add_option("sample", coverage_args.sample_path, "Sample file")->required();
    coverage->add_option("--t", coverage_args.t, "Interaction strength");
    coverage->add_option("--scope", coverage_args.scope,
                         "'all' or a group-spec JSON file (per-group strengths)");
    coverage->add_option("--out", coverage_args.csv_out, "Write a coverage CSV here");

    ExperimentArgs experiment_args;
    CLI::App* experiment = app.add_subcommand(
        "experiment", "Run the Exp1..Exp7 grid with repetitions and emit CSVs");
    experiment->add_option("model", experiment_args.model_path, "Model file")->required();
    experiment->add_option("--setups", experiment_args.setup_ids,
                           "Subset of Exp1..Exp7 (default: all)")
        ->delimiter(',');
    experiment->add_option("--reps", experiment_args.repetitions, "Repetitions per setup")
        ->check(CLI::PositiveNumber);
    experiment->add_option("--seed", experiment_args.seed, "Root seed");
    experiment->add_option("--out-dir", experiment_args.out_dir, "Output directory");
    experiment->add_option("--threads", experiment_args.threads,
                           "Concurrent repetitions (results are order-stable)")
        ->check(CLI::PositiveNumber);
    experiment->add_option("--timing", experiment_args.timing,
                           "wall: measured time_ms; none: zeros, byte-reproducible CSVs")
        ->check(CLI::IsMember({"wall", "none"}));

    std::string convert_in, convert_out;
    CLI::App* convert = app.add_subcommand("convert", "Convert between .uvl and .dimacs");
    convert->add_option("input", convert_in, "Input file")->required();
    convert->add_option("output", convert_out, "Output file")->required();

    std::string inspect_path;
    std::uint64_t inspect_cap = 100000;
    CLI::App* inspect = app.add_subcommand(
        "inspect", "Print feature/clause counts, core and dead features");
    inspect->add_option("model", inspect_path, "Model file")->required();
    inspect->add_option("--count-cap", inspect_cap,
                        "Skip configuration counting above this many");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (sample->parsed()) return cmd_sample(sample_args);
        if (coverage->parsed()) return cmd_coverage(coverage_args);
        if (experiment->parsed()) return cmd_experiment(experiment_args);
        if (convert->parsed()) return cmd_convert(convert_in, convert_out);
        if (inspect->parsed()) return cmd_inspect(inspect_path, inspect_cap);
    } catch (const UnknownFeatureError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInconsistent;
    } catch (const GroupSpecError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInconsistent;
    } catch (const VoidModelError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUnsat;
    } catch (const UnsatisfiablePartialError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUnsat;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const ModelError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    }
    return kExitOk;
}
