#include <algorithm>
#include <string>
#include <vector>

#include "doctest.h"

#include "fixtures.hpp"
#include "multiwise/errors.hpp"
#include "multiwise/interactions.hpp"
#include "multiwise/rng.hpp"
#include "multiwise/sampler.hpp"
#include "multiwise/synthetic.hpp"

using namespace multiwise;

namespace {

void check_finished_sample(const FeatureModel& model, const Sample& sample) {
    CHECK(sample.all_complete());
    for (std::size_t i = 0; i < sample.configurations.size(); ++i) {
        Configuration config = Configuration::from_partial(sample.configurations[i]);
        CHECK(config.satisfies(model));
        for (std::size_t j = i + 1; j < sample.configurations.size(); ++j) {
            CHECK_FALSE(sample.configurations[i] == sample.configurations[j]);
        }
    }
}

GroupSpec random_spec(const FeatureModel& model, std::uint64_t seed) {
    Rng rng(seed);
    GroupSpec spec;
    int group_count = 1 + static_cast<int>(rng.below(3));
    for (int g = 0; g < group_count; ++g) {
        FeatureGroup group;
        group.name = "g" + std::to_string(g + 1);
        group.t = static_cast<int>(rng.below(4));  // 0..3
        for (const std::string& feature : model.features()) {
            if (rng.chance(0.35)) group.members.push_back(feature);
        }
        if (group.members.empty()) {
            group.members.push_back(model.features()[rng.below(
                static_cast<std::uint64_t>(model.features().size()))]);
        }
        spec.groups.push_back(std::move(group));
    }
    spec.default_t = static_cast<int>(rng.below(2));
    return spec;
}

}  // namespace

TEST_CASE("covering strategy on the single-strength group") {
    FeatureModel model = fixtures::car_model();
    SatEngine engine(model);

    Sample sample = covering_strategy(
        engine, fixtures::vars_of(model, {"Car", "Radio", "Gearbox"}), 1, Sample{});

    CHECK(sample.size() == 2);
    check_finished_sample(model, sample);

    int radio = model.require_var("Radio");
    bool radio_selected = false;
    bool radio_deselected = false;
    for (const PartialConfiguration& config : sample.configurations) {
        (config.at(radio) == Decision::Selected ? radio_selected : radio_deselected) = true;
    }
    CHECK(radio_selected);
    CHECK(radio_deselected);

    Coverage c = coverage_ratio(engine, sample, 1,
                                fixtures::vars_of(model, {"Car", "Radio", "Gearbox"}));
    CHECK(c.valid == 4);
    CHECK(c.covered == 4);
}

TEST_CASE("strength zero returns the seed sample unchanged") {
    FeatureModel model = fixtures::car_model();
    SatEngine engine(model);
    Sample seed = fixtures::worked_example_pair(model);
    Sample result = covering_strategy(engine, full_scope(model), 0, seed);
    CHECK(result.configurations == seed.configurations);
}

TEST_CASE("an already-covering seed sample is returned untouched") {
    FeatureModel model = fixtures::car_model();
    SatEngine engine(model);

    Sample seed;
    for (const Configuration& config : engine.enumerate_all(1000)) {
        seed.configurations.push_back(config.to_partial());
    }
    Sample result = covering_strategy(engine, full_scope(model), 2, seed);
    CHECK(result.configurations == seed.configurations);
}

TEST_CASE("the multi-group driver reproduces the worked example") {
    FeatureModel model = fixtures::car_model();
    SatEngine engine(model);
    Sample sample = multiwise_sample(engine, fixtures::car_groups());

    CHECK(sample.size() >= 2);
    CHECK(sample.size() <= 3);
    check_finished_sample(model, sample);

    CHECK(coverage_ratio(engine, sample, 1,
                         fixtures::vars_of(model, {"Car", "Radio", "Gearbox"}))
              .ratio() == 1.0);
    CHECK(coverage_ratio(engine, sample, 2,
                         fixtures::vars_of(model, {"Carbody", "Manual", "Automatic"}))
              .ratio() == 1.0);

    // stats: one entry per group including the default group, with the
    // frozen tuple counts 4 / 6 / 0
    REQUIRE(sample.stats.groups.size() == 3);
    CHECK(sample.stats.groups[0].group_name == "g1");
    CHECK(sample.stats.groups[0].valid_tuples == 4);
    CHECK(sample.stats.groups[1].valid_tuples == 6);
    CHECK(sample.stats.groups[2].group_name == "default");
    CHECK(sample.stats.groups[2].valid_tuples == 0);
}

TEST_CASE("a single all-features group equals the plain covering strategy") {
    FeatureModel model = fixtures::car_model();

    GroupSpec spec;
    spec.groups.push_back({"all", 2, model.features()});
    Sample via_driver = multiwise_sample(model, spec);
    Sample direct = covering_strategy(model, full_scope(model), 2, Sample{});
    CHECK(via_driver.configurations == direct.configurations);

    SamplingOptions shuffled;
    shuffled.shuffle_tuples = true;
    shuffled.seed = 321;
    Sample driver_shuffled = multiwise_sample(model, spec, shuffled);
    Sample direct_shuffled =
        covering_strategy(model, full_scope(model), 2, Sample{}, shuffled);
    CHECK(driver_shuffled.configurations == direct_shuffled.configurations);
}

TEST_CASE("zero groups with default strength zero yields an empty sample") {
    FeatureModel model = fixtures::car_model();
    Sample sample = multiwise_sample(model, GroupSpec{});
    CHECK(sample.empty());
}

TEST_CASE("group resolution") {
    FeatureModel model = fixtures::car_model();

    SUBCASE("default group collects ungrouped features") {
        auto groups = resolve_groups(model, fixtures::car_groups());
        REQUIRE(groups.size() == 3);
        CHECK(groups[2].name == "default");
        CHECK(groups[2].members ==
              fixtures::vars_of(model, {"Ports", "USB", "CD", "Navigation", "Bluetooth"}));

        std::vector<bool> seen(static_cast<std::size_t>(model.feature_count()) + 1);
        for (const auto& group : groups) {
            for (int v : group.members) seen[static_cast<std::size_t>(v)] = true;
        }
        CHECK(std::count(seen.begin() + 1, seen.end(), false) == 0);
    }
    SUBCASE("no default group when everything is grouped") {
        GroupSpec spec;
        spec.groups.push_back({"all", 1, model.features()});
        CHECK(resolve_groups(model, spec).size() == 1);
    }
    SUBCASE("unknown members fail") {
        GroupSpec spec;
        spec.groups.push_back({"g", 1, {"Rocket"}});
        CHECK_THROWS_AS(resolve_groups(model, spec), UnknownFeatureError);
    }
    SUBCASE("strengths above the ceiling fail") {
        GroupSpec spec;
        spec.groups.push_back({"g", 7, {"Car"}});
        CHECK_THROWS_AS(resolve_groups(model, spec), GroupSpecError);
        CHECK_NOTHROW(resolve_groups(model, spec, 8));
    }
}

TEST_CASE("void models are rejected") {
    FeatureModel model({"X", "Y"}, {{1}, {-1}});
    GroupSpec spec;
    spec.groups.push_back({"g", 1, {"X"}});
    CHECK_THROWS_AS(multiwise_sample(model, spec), VoidModelError);
    CHECK_THROWS_AS(covering_strategy(model, {1}, 1, Sample{}), VoidModelError);
}

TEST_CASE("every group reaches full coverage at its own strength") {
    int checked = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SyntheticConfig config;
        config.feature_count = 12;
        config.constraint_count = 4;
        config.seed = seed;
        FeatureModel model = synthetic_model(config);
        GroupSpec spec = random_spec(model, seed * 131);

        for (bool defer : {false, true}) {
            SamplingOptions options;
            options.defer_completion = defer;
            SatEngine engine(model);
            Sample sample = multiwise_sample(engine, spec, options);
            check_finished_sample(model, sample);
            for (const ResolvedGroup& group : resolve_groups(model, spec)) {
                CAPTURE(seed);
                CAPTURE(defer);
                CAPTURE(group.name);
                CHECK(coverage_ratio(engine, sample, group.t, group.members).ratio() == 1.0);
                ++checked;
            }
        }
    }
    CHECK(checked > 20);
}

TEST_CASE("later groups never lose earlier coverage") {
    SyntheticConfig config;
    config.feature_count = 14;
    config.constraint_count = 5;
    config.seed = 3;
    FeatureModel model = synthetic_model(config);
    SatEngine engine(model);

    GroupSpec spec = random_spec(model, 99);
    auto resolved = resolve_groups(model, spec);

    Sample sample;
    std::vector<std::pair<std::vector<int>, int>> done;  // (members, t) already covered
    for (const ResolvedGroup& group : resolved) {
        sample = covering_strategy(engine, group.members, group.t, std::move(sample));
        done.emplace_back(group.members, group.t);
        for (const auto& [members, t] : done) {
            CHECK(coverage_ratio(engine, sample, t, members).ratio() == 1.0);
        }
    }
}

TEST_CASE("sampling is deterministic") {
    SyntheticConfig config;
    config.feature_count = 16;
    config.constraint_count = 6;
    config.seed = 5;
    FeatureModel model = synthetic_model(config);
    GroupSpec spec = random_spec(model, 17);

    SamplingOptions options;
    options.seed = 1234;
    options.shuffle_tuples = true;
    Sample a = multiwise_sample(model, spec, options);
    Sample b = multiwise_sample(model, spec, options);
    CHECK(a.configurations == b.configurations);

    options.seed = 4321;
    Sample c = multiwise_sample(model, spec, options);
    // a different shuffle seed still reaches full coverage for every group
    SatEngine engine(model);
    for (const ResolvedGroup& group : resolve_groups(model, spec)) {
        CHECK(coverage_ratio(engine, c, group.t, group.members).ratio() == 1.0);
    }
}

TEST_CASE("group processing order options") {
    FeatureModel model = fixtures::car_model();
    GroupSpec spec = fixtures::car_groups();

    for (GroupOrder order :
         {GroupOrder::Spec, GroupOrder::AscendingT, GroupOrder::DescendingT}) {
        SamplingOptions options;
        options.order = order;
        SatEngine engine(model);
        Sample sample = multiwise_sample(engine, spec, options);
        check_finished_sample(model, sample);
        for (const ResolvedGroup& group : resolve_groups(model, spec)) {
            CHECK(coverage_ratio(engine, sample, group.t, group.members).ratio() == 1.0);
        }
    }
}

TEST_CASE("deferred completion can only shrink the worked-example sample") {
    FeatureModel model = fixtures::car_model();
    SamplingOptions defer;
    defer.defer_completion = true;
    Sample deferred = multiwise_sample(model, fixtures::car_groups(), defer);
    Sample eager = multiwise_sample(model, fixtures::car_groups());
    CHECK(deferred.size() <= eager.size());
    check_finished_sample(model, deferred);
}
