#include "doctest.h"

#include "fixtures.hpp"
#include "multiwise/errors.hpp"
#include "multiwise/synthetic.hpp"
#include "multiwise/uvl.hpp"

using namespace multiwise;

TEST_CASE("car document parses to the expected tree") {
    FeatureTree tree = fixtures::car_tree();

    auto names = tree.feature_names();
    CHECK(names.size() == 11);
    CHECK(tree.root.name == "Car");
    CHECK(tree.constraints.empty());

    REQUIRE(tree.root.children.size() == 3);
    CHECK(tree.root.children[0].name == "Carbody");
    CHECK(tree.root.children[0].mandatory);
    CHECK(tree.root.children[1].name == "Radio");
    CHECK_FALSE(tree.root.children[1].mandatory);
    CHECK(tree.root.children[2].name == "Gearbox");
    CHECK(tree.root.children[2].mandatory);

    const FeatureNode& gearbox = tree.root.children[2];
    CHECK(gearbox.kind == GroupKind::Alt);
    REQUIRE(gearbox.children.size() == 2);
    CHECK(gearbox.children[0].name == "Manual");
    CHECK(gearbox.children[1].name == "Automatic");

    const FeatureNode& ports = tree.root.children[1].children[0];
    CHECK(ports.name == "Ports");
    CHECK(ports.kind == GroupKind::Or);
    REQUIRE(ports.children.size() == 2);
    CHECK(ports.children[0].name == "USB");
    CHECK(ports.children[1].name == "CD");
}

TEST_CASE("minimal document: one root feature") {
    FeatureTree tree = parse_uvl("features\n  Root\n");
    CHECK(tree.root.name == "Root");
    CHECK(tree.root.children.empty());
    CHECK(tree.constraints.empty());
    CHECK(tree.feature_count() == 1);
}

TEST_CASE("duplicate feature names are rejected") {
    const char* doc =
        "features\n"
        "  Car\n"
        "    optional\n"
        "      Radio\n"
        "      Radio\n";
    CHECK_THROWS_WITH_AS(parse_uvl(doc), doctest::Contains("duplicate feature name"),
                         ParseError);
}

TEST_CASE("parse errors carry line information") {
    SUBCASE("missing features keyword") {
        CHECK_THROWS_AS(parse_uvl("Car\n"), ParseError);
    }
    SUBCASE("tabs are rejected") {
        try {
            parse_uvl("features\n\tCar\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
        }
    }
    SUBCASE("empty group block") {
        const char* doc =
            "features\n"
            "  Car\n"
            "    or\n";
        CHECK_THROWS_WITH_AS(parse_uvl(doc), doctest::Contains("empty 'or' block"),
                             ParseError);
    }
    SUBCASE("inconsistent indentation") {
        const char* doc =
            "features\n"
            "  Car\n"
            "      optional\n"
            "        Radio\n"
            "    optional\n"
            "        Ports\n";
        try {
            parse_uvl(doc);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 5);
        }
    }
    SUBCASE("keyword under group block") {
        const char* doc =
            "features\n"
            "  Car\n"
            "    or\n"
            "      optional\n"
            "        A\n";
        CHECK_THROWS_AS(parse_uvl(doc), ParseError);
    }
    SUBCASE("or group mixed with optional block") {
        const char* doc =
            "features\n"
            "  Car\n"
            "    or\n"
            "      A\n"
            "    optional\n"
            "      B\n";
        CHECK_THROWS_AS(parse_uvl(doc), ParseError);
    }
}

TEST_CASE("constraints parse with precedence and unknown names fail") {
    const char* doc =
        "features\n"
        "  Car\n"
        "    optional\n"
        "      A\n"
        "      B\n"
        "      C\n"
        "constraints\n"
        "  A => B | C\n"
        "  !A & B <=> C\n";
    FeatureTree tree = parse_uvl(doc);
    REQUIRE(tree.constraints.size() == 2);
    // a => (b | c)
    CHECK(tree.constraints[0]->op() == Formula::Op::Implies);
    CHECK(tree.constraints[0]->rhs()->op() == Formula::Op::Or);
    // (!a & b) <=> c
    CHECK(tree.constraints[1]->op() == Formula::Op::Iff);
    CHECK(tree.constraints[1]->lhs()->op() == Formula::Op::And);

    const char* bad =
        "features\n"
        "  Car\n"
        "constraints\n"
        "  Car => Rocket\n";
    CHECK_THROWS_WITH_AS(parse_uvl(bad), doctest::Contains("unknown feature"), ParseError);
}

TEST_CASE("constraint syntax errors report line and column") {
    const char* doc =
        "features\n"
        "  Car\n"
        "constraints\n"
        "  Car => => Car\n";
    try {
        parse_uvl(doc);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 4);
        CHECK(e.column() > 0);
    }
}

TEST_CASE("printing and reparsing is the identity on trees") {
    SUBCASE("car model") {
        FeatureTree tree = fixtures::car_tree();
        CHECK(parse_uvl(write_uvl(tree)) == tree);
    }
    SUBCASE("tree with constraints") {
        const char* doc =
            "features\n"
            "  Car\n"
            "    optional\n"
            "      A\n"
            "      B\n"
            "      C\n"
            "constraints\n"
            "  A => B | C\n"
            "  !(A & B) <=> !C\n"
            "  A => B => C\n";
        FeatureTree tree = parse_uvl(doc);
        FeatureTree reparsed = parse_uvl(write_uvl(tree));
        CHECK(reparsed == tree);
    }
    SUBCASE("seeded synthetic trees") {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            SyntheticConfig config;
            config.feature_count = 18;
            config.constraint_count = 6;
            config.seed = seed;
            FeatureTree tree = synthetic_tree(config);
            CAPTURE(seed);
            CHECK(parse_uvl(write_uvl(tree)) == tree);
        }
    }
}

TEST_CASE("feature order is document order and stable across reparses") {
    FeatureTree tree = fixtures::car_tree();
    auto names = tree.feature_names();
    std::vector<std::string> expected = {"Car",        "Carbody",   "Radio",  "Ports",
                                         "USB",        "CD",        "Navigation",
                                         "Bluetooth",  "Gearbox",   "Manual", "Automatic"};
    CHECK(names == expected);
    CHECK(parse_uvl(fixtures::kCarUvl).feature_names() == names);
}

TEST_CASE("bare feature children act as optional and-children") {
    const char* doc =
        "features\n"
        "  Root\n"
        "    A\n"
        "    B\n";
    FeatureTree tree = parse_uvl(doc);
    REQUIRE(tree.root.children.size() == 2);
    CHECK(tree.root.kind == GroupKind::And);
    CHECK_FALSE(tree.root.children[0].mandatory);
    CHECK_FALSE(tree.root.children[1].mandatory);
}
