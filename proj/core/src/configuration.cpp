#include "multiwise/configuration.hpp"

#include <algorithm>
#include <stdexcept>

namespace multiwise {

bool PartialConfiguration::complete() const {
    return std::none_of(decisions_.begin(), decisions_.end(),
                        [](Decision d) { return d == Decision::Undecided; });
}

int PartialConfiguration::undecided_count() const {
    return static_cast<int>(std::count(decisions_.begin(), decisions_.end(),
                                       Decision::Undecided));
}

Configuration Configuration::from_partial(const PartialConfiguration& partial) {
    std::vector<bool> selected(static_cast<std::size_t>(partial.feature_count()));
    for (int v = 1; v <= partial.feature_count(); ++v) {
        switch (partial.at(v)) {
        case Decision::Selected:
            selected[static_cast<std::size_t>(v - 1)] = true;
            break;
        case Decision::Deselected:
            break;
        case Decision::Undecided:
            throw std::invalid_argument("configuration is not complete");
        }
    }
    return Configuration(std::move(selected));
}

PartialConfiguration Configuration::to_partial() const {
    PartialConfiguration partial(feature_count());
    for (int v = 1; v <= feature_count(); ++v) {
        partial.set(v, selected(v) ? Decision::Selected : Decision::Deselected);
    }
    return partial;
}

bool Configuration::satisfies(const FeatureModel& model) const {
    if (model.aux_var_count() > 0) {
        throw std::invalid_argument(
            "clause validity over auxiliary variables needs a solver query");
    }
    for (const Clause& clause : model.clauses()) {
        bool any = false;
        for (int lit : clause) {
            if (agrees(lit)) {
                any = true;
                break;
            }
        }
        if (!any) return false;
    }
    return true;
}

}  // namespace multiwise
