#include "multiwise/dimacs.hpp"

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "multiwise/errors.hpp"

namespace multiwise {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string token;
    while (in >> token) tokens.push_back(token);
    return tokens;
}

bool parse_int(const std::string& token, long long& out) {
    if (token.empty()) return false;
    char* end = nullptr;
    out = std::strtoll(token.c_str(), &end, 10);
    return end == token.c_str() + token.size();
}

}  // namespace

FeatureModel parse_dimacs(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int line_number = 0;

    // Name comments and header.
    std::vector<std::pair<long long, std::string>> names;
    long long var_count = -1;
    long long clause_count = -1;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<std::string> tokens = tokenize(line);
        if (tokens.empty()) continue;
        if (tokens[0] == "c") {
            long long var = 0;
            if (tokens.size() == 3 && parse_int(tokens[1], var) && var > 0) {
                names.emplace_back(var, tokens[2]);
            }
            continue;  // other comments are ignored
        }
        if (tokens[0] == "p") {
            if (tokens.size() != 4 || tokens[1] != "cnf" ||
                !parse_int(tokens[2], var_count) || !parse_int(tokens[3], clause_count) ||
                var_count < 1 || clause_count < 0) {
                throw ParseError("malformed DIMACS header", line_number);
            }
            break;
        }
        throw ParseError("expected comment or 'p cnf' header", line_number);
    }
    if (var_count < 0) throw ParseError("missing 'p cnf' header", line_number);

    // Named variables must be exactly 1..k so that features precede
    // auxiliary variables.
    std::vector<std::string> features(static_cast<std::size_t>(var_count));
    long long named = 0;
    for (const auto& [var, name] : names) {
        if (var > var_count) {
            throw ParseError("name comment for variable " + std::to_string(var) +
                             " exceeds variable count " + std::to_string(var_count));
        }
        if (!features[static_cast<std::size_t>(var - 1)].empty()) {
            throw ParseError("variable " + std::to_string(var) + " named twice");
        }
        features[static_cast<std::size_t>(var - 1)] = name;
        ++named;
    }
    for (long long v = 1; v <= named; ++v) {
        if (features[static_cast<std::size_t>(v - 1)].empty()) {
            throw ParseError("feature variables must form the contiguous prefix 1.." +
                             std::to_string(named) + "; variable " + std::to_string(v) +
                             " is unnamed");
        }
    }
    if (named == 0) {
        throw ParseError("no feature names; expected 'c <var> <name>' comments");
    }
    features.resize(static_cast<std::size_t>(named));

    // Clauses: whitespace-separated literals, zero-terminated.
    std::vector<Clause> clauses;
    Clause current;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<std::string> tokens = tokenize(line);
        if (!tokens.empty() && tokens[0] == "c") continue;
        for (const std::string& token : tokens) {
            long long lit = 0;
            if (!parse_int(token, lit)) {
                throw ParseError("invalid literal '" + token + "'", line_number);
            }
            if (lit == 0) {
                if (current.empty()) {
                    throw ParseError("empty clause", line_number);
                }
                clauses.push_back(std::move(current));
                current.clear();
            } else {
                if (std::abs(lit) > var_count) {
                    throw ParseError("literal " + std::to_string(lit) +
                                         " out of range for " + std::to_string(var_count) +
                                         " variables",
                                     line_number);
                }
                current.push_back(static_cast<int>(lit));
            }
        }
    }
    if (!current.empty()) {
        throw ParseError("clause not zero-terminated", line_number);
    }
    if (static_cast<long long>(clauses.size()) != clause_count) {
        throw ParseError("header declares " + std::to_string(clause_count) +
                         " clauses but " + std::to_string(clauses.size()) + " were read");
    }

    return FeatureModel(std::move(features), std::move(clauses),
                        static_cast<int>(var_count - named));
}

std::string write_dimacs(const FeatureModel& model) {
    std::ostringstream out;
    for (int v = 1; v <= model.feature_count(); ++v) {
        out << "c " << v << ' ' << model.feature_name(v) << '\n';
    }
    out << "p cnf " << model.variable_count() << ' ' << model.clauses().size() << '\n';
    for (const Clause& clause : model.clauses()) {
        for (int lit : clause) out << lit << ' ';
        out << "0\n";
    }
    return out.str();
}

}  // namespace multiwise
