#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "multiwise/feature_model.hpp"
#include "multiwise/interactions.hpp"
#include "multiwise/sampler.hpp"

namespace multiwise {

/// Loads a model by extension: .uvl is parsed and compiled, .dimacs read
/// directly. Throws ParseError / std::runtime_error on unreadable input.
FeatureModel load_model(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

/// Sample file format: a `# model=<name> seed=<seed>` header line, then one
/// configuration per line as semicolon-separated entries, `Name` for
/// selected and `!Name` for deselected, covering every feature.
std::string write_sample(const Sample& sample, const FeatureModel& model,
                         const std::string& model_name, std::uint64_t seed);

/// Inverse of write_sample. Throws ParseError on malformed lines or
/// incomplete configurations and UnknownFeatureError for names not in the
/// model.
Sample read_sample(std::string_view text, const FeatureModel& model);

/// Group-spec JSON:
///   {"groups":[{"name":"g1","t":2,"features":["A","B"]},...],"default_t":0}
GroupSpec parse_group_spec_json(std::string_view text);

std::string write_group_spec_json(const GroupSpec& spec);

/// One coverage report row; serialized as scope,t,valid_tuples,covered_tuples,ratio.
struct CoverageRow {
    std::string scope;
    int t = 0;
    Coverage coverage;
};

std::string coverage_csv(const std::vector<CoverageRow>& rows);

/// Fixed-point decimal with six fractional digits, as used in all CSVs.
std::string format_ratio(double value);

}  // namespace multiwise
