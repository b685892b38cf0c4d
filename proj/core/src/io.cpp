#include "multiwise/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "multiwise/dimacs.hpp"
#include "multiwise/errors.hpp"
#include "multiwise/uvl.hpp"

namespace multiwise {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

FeatureModel load_model(const std::filesystem::path& path) {
    std::string extension = path.extension().string();
    if (extension == ".uvl") {
        return compile_to_cnf(parse_uvl(read_file(path)));
    }
    if (extension == ".dimacs") {
        return parse_dimacs(read_file(path));
    }
    throw std::runtime_error("unsupported model format '" + extension +
                             "' (expected .uvl or .dimacs): " + path.string());
}

// ---------------------------------------------------------------------------
// Sample files

std::string write_sample(const Sample& sample, const FeatureModel& model,
                         const std::string& model_name, std::uint64_t seed) {
    std::ostringstream out;
    out << "# model=" << model_name << " seed=" << seed << '\n';
    for (const PartialConfiguration& config : sample.configurations) {
        for (int v = 1; v <= model.feature_count(); ++v) {
            if (v > 1) out << ';';
            switch (config.at(v)) {
            case Decision::Selected:
                out << model.feature_name(v);
                break;
            case Decision::Deselected:
                out << '!' << model.feature_name(v);
                break;
            case Decision::Undecided:
                throw std::invalid_argument("cannot serialize a partial configuration");
            }
        }
        out << '\n';
    }
    return out.str();
}

Sample read_sample(std::string_view text, const FeatureModel& model) {
    std::istringstream in{std::string(text)};
    std::string line;
    int line_number = 0;
    bool header_seen = false;

    Sample sample;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line_number == 1) header_seen = true;
            continue;
        }

        PartialConfiguration config(model.feature_count());
        std::istringstream entries(line);
        std::string entry;
        while (std::getline(entries, entry, ';')) {
            if (entry.empty()) {
                throw ParseError("empty entry in configuration", line_number);
            }
            bool negated = entry[0] == '!';
            std::string name = negated ? entry.substr(1) : entry;
            auto var = model.var_of(name);
            if (!var) throw UnknownFeatureError(name);
            if (config.decided(*var)) {
                throw ParseError("feature '" + name + "' decided twice", line_number);
            }
            config.set(*var, negated ? Decision::Deselected : Decision::Selected);
        }
        if (!config.complete()) {
            for (int v = 1; v <= model.feature_count(); ++v) {
                if (!config.decided(v)) {
                    throw ParseError("configuration does not decide feature '" +
                                         model.feature_name(v) + "'",
                                     line_number);
                }
            }
        }
        sample.configurations.push_back(std::move(config));
    }
    if (!header_seen) {
        throw ParseError("missing '# model=... seed=...' header", 1);
    }
    return sample;
}

// ---------------------------------------------------------------------------
// Group-spec JSON

GroupSpec parse_group_spec_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("groups") || !doc["groups"].is_array()) {
        throw ParseError("group spec must be an object with a \"groups\" array");
    }

    GroupSpec spec;
    for (const auto& entry : doc["groups"]) {
        if (!entry.is_object() || !entry.contains("name") || !entry.contains("t") ||
            !entry.contains("features") || !entry["name"].is_string() ||
            !entry["t"].is_number_integer() || !entry["features"].is_array()) {
            throw ParseError(
                "each group needs \"name\" (string), \"t\" (integer), \"features\" (array)");
        }
        FeatureGroup group;
        group.name = entry["name"].get<std::string>();
        group.t = entry["t"].get<int>();
        for (const auto& feature : entry["features"]) {
            if (!feature.is_string()) {
                throw ParseError("group \"" + group.name + "\" has a non-string feature");
            }
            group.members.push_back(feature.get<std::string>());
        }
        spec.groups.push_back(std::move(group));
    }
    if (doc.contains("default_t")) {
        if (!doc["default_t"].is_number_integer()) {
            throw ParseError("\"default_t\" must be an integer");
        }
        spec.default_t = doc["default_t"].get<int>();
    }
    return spec;
}

std::string write_group_spec_json(const GroupSpec& spec) {
    nlohmann::json doc;
    doc["groups"] = nlohmann::json::array();
    for (const FeatureGroup& group : spec.groups) {
        doc["groups"].push_back(
            {{"name", group.name}, {"t", group.t}, {"features", group.members}});
    }
    doc["default_t"] = spec.default_t;
    return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// CSV

std::string format_ratio(double value) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(6);
    out << value;
    return out.str();
}

std::string coverage_csv(const std::vector<CoverageRow>& rows) {
    std::ostringstream out;
    out << "scope,t,valid_tuples,covered_tuples,ratio\n";
    for (const CoverageRow& row : rows) {
        out << row.scope << ',' << row.t << ',' << row.coverage.valid << ','
            << row.coverage.covered << ',' << format_ratio(row.coverage.ratio()) << '\n';
    }
    return out.str();
}

}  // namespace multiwise
