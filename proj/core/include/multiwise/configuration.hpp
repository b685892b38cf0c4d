#pragma once

#include <cstdint>
#include <vector>

#include "multiwise/feature_model.hpp"

namespace multiwise {

enum class Decision : std::uint8_t { Undecided = 0, Selected = 1, Deselected = 2 };

/// Three-valued assignment over the feature variables of one model.
/// Auxiliary variables never appear here.
class PartialConfiguration {
public:
    PartialConfiguration() = default;
    explicit PartialConfiguration(int feature_count)
        : decisions_(static_cast<std::size_t>(feature_count), Decision::Undecided) {}

    int feature_count() const noexcept { return static_cast<int>(decisions_.size()); }

    Decision at(int var) const { return decisions_[static_cast<std::size_t>(var - 1)]; }
    void set(int var, Decision d) { decisions_[static_cast<std::size_t>(var - 1)] = d; }

    void select(int var) { set(var, Decision::Selected); }
    void deselect(int var) { set(var, Decision::Deselected); }

    bool decided(int var) const { return at(var) != Decision::Undecided; }

    /// True when the decision agrees with literal `lit` (+v selected, -v
    /// deselected). Undecided never agrees.
    bool agrees(int lit) const {
        Decision d = at(lit > 0 ? lit : -lit);
        return lit > 0 ? d == Decision::Selected : d == Decision::Deselected;
    }

    /// True when the decision is the opposite of literal `lit`.
    bool conflicts(int lit) const {
        Decision d = at(lit > 0 ? lit : -lit);
        return lit > 0 ? d == Decision::Deselected : d == Decision::Selected;
    }

    bool complete() const;
    int undecided_count() const;

    friend bool operator==(const PartialConfiguration&, const PartialConfiguration&) = default;

private:
    std::vector<Decision> decisions_;
};

/// A fully decided configuration. Validity against a model is checked with
/// satisfies(); code paths that promise valid output (solver completion,
/// sampling) produce satisfying configurations by construction.
class Configuration {
public:
    Configuration() = default;
    explicit Configuration(std::vector<bool> selected) : selected_(std::move(selected)) {}

    /// Throws std::invalid_argument if `partial` has undecided features.
    static Configuration from_partial(const PartialConfiguration& partial);

    int feature_count() const noexcept { return static_cast<int>(selected_.size()); }

    bool selected(int var) const { return selected_[static_cast<std::size_t>(var - 1)]; }

    bool agrees(int lit) const {
        bool s = selected(lit > 0 ? lit : -lit);
        return lit > 0 ? s : !s;
    }

    PartialConfiguration to_partial() const;

    /// True when every clause of the model is satisfied. Clauses over
    /// auxiliary variables cannot be checked feature-locally and make this
    /// throw; use SatEngine::is_satisfiable for such models.
    bool satisfies(const FeatureModel& model) const;

    friend bool operator==(const Configuration&, const Configuration&) = default;

private:
    std::vector<bool> selected_;
};

}  // namespace multiwise
