#pragma once

#include <stdexcept>
#include <string>

namespace multiwise {

/// Error while reading a textual input (UVL, DIMACS, sample files, ...).
/// Carries a 1-based line/column when the failing location is known;
/// 0 means "not applicable".
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, int line = 0, int column = 0)
        : std::runtime_error(line > 0 ? format(message, line, column) : message),
          line_(line),
          column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    static std::string format(const std::string& message, int line, int column) {
        std::string out = "line " + std::to_string(line);
        if (column > 0) {
            out += ", column " + std::to_string(column);
        }
        return out + ": " + message;
    }

    int line_;
    int column_;
};

/// A constructed model violates a structural invariant (empty clause,
/// literal out of range, duplicate feature, ...).
class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The model admits no valid configuration at all.
class VoidModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A partial configuration has no valid completion.
class UnsatisfiablePartialError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Configuration enumeration found more configurations than the caller's cap.
class CapExceededError : public std::runtime_error {
public:
    explicit CapExceededError(std::uint64_t cap)
        : std::runtime_error("configuration count exceeds cap " + std::to_string(cap)),
          cap_(cap) {}

    std::uint64_t cap() const noexcept { return cap_; }

private:
    std::uint64_t cap_;
};

/// A feature name does not exist in the model at hand.
class UnknownFeatureError : public std::runtime_error {
public:
    explicit UnknownFeatureError(const std::string& name)
        : std::runtime_error("unknown feature: " + name), name_(name) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

/// A group specification is malformed (t out of range, bad structure, ...).
class GroupSpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace multiwise
