// End-to-end tests driving the installed binary through a shell.

#include <string>

#include "doctest.h"

#include "fixtures.hpp"
#include "multiwise/io.hpp"

using fixtures::run_cli;

namespace {

std::string car_uvl_path() { return (fixtures::data_dir() / "car.uvl").string(); }
std::string car_groups_path() {
    return (fixtures::data_dir() / "car_groups.json").string();
}

}  // namespace

TEST_CASE("sample command produces a covering sample") {
    fixtures::TempDir dir;
    std::string out = (dir.path() / "car.sample").string();

    auto result = run_cli("sample " + car_uvl_path() + " --groups " + car_groups_path() +
                          " --seed 7 --out " + out);
    REQUIRE(result.exit_code == 0);
    CHECK(result.output.find("size=") == 0);
    CHECK(result.output.find("time_ms=") != std::string::npos);

    // sample size in the documented 2..3 band
    std::string text = fixtures::slurp(out);
    int lines = 0;
    for (char c : text) lines += c == '\n';
    CHECK(lines >= 3);  // header + 2..3 configurations
    CHECK(lines <= 4);

    // its own coverage checks pass with ratio 1 per group
    auto coverage = run_cli("coverage " + car_uvl_path() + " " + out + " --scope " +
                            car_groups_path());
    REQUIRE(coverage.exit_code == 0);
    CHECK(coverage.output.find("scope=g1 t=1 valid=4 covered=4 ratio=1.000000") !=
          std::string::npos);
    CHECK(coverage.output.find("scope=g2 t=2 valid=6 covered=6 ratio=1.000000") !=
          std::string::npos);
}

TEST_CASE("sample with strength zero writes an empty sample") {
    fixtures::TempDir dir;
    std::string out = (dir.path() / "empty.sample").string();
    auto result = run_cli("sample " + car_uvl_path() + " --t 0 --out " + out);
    REQUIRE(result.exit_code == 0);
    CHECK(result.output.find("size=0") == 0);
    CHECK(fixtures::slurp(out).find("# model=car") == 0);
}

TEST_CASE("void models exit with the dedicated code") {
    fixtures::TempDir dir;
    std::string path = (dir.path() / "void.dimacs").string();
    multiwise::write_file(path, "c 1 X\np cnf 1 2\n1 0\n-1 0\n");

    CHECK(run_cli("sample " + path + " --t 2").exit_code == 3);
    CHECK(run_cli("inspect " + path).exit_code == 3);
    CHECK(run_cli("experiment " + path + " --reps 1").exit_code == 3);
}

TEST_CASE("sample output is deterministic for a fixed seed") {
    fixtures::TempDir dir;
    std::string a = (dir.path() / "a.sample").string();
    std::string b = (dir.path() / "b.sample").string();
    std::string args = " --groups " + car_groups_path() + " --seed 11 --order ascending-t";
    REQUIRE(run_cli("sample " + car_uvl_path() + args + " --out " + a).exit_code == 0);
    REQUIRE(run_cli("sample " + car_uvl_path() + args + " --out " + b).exit_code == 0);
    CHECK(fixtures::slurp(a) == fixtures::slurp(b));
}

TEST_CASE("coverage command can emit a CSV report") {
    fixtures::TempDir dir;
    std::string sample_path = (dir.path() / "pair.sample").string();
    std::string csv_path = (dir.path() / "report.csv").string();
    multiwise::FeatureModel model = fixtures::car_model();
    multiwise::write_file(
        sample_path,
        multiwise::write_sample(fixtures::worked_example_pair(model), model, "car", 0));

    auto result = run_cli("coverage " + car_uvl_path() + " " + sample_path + " --scope " +
                          car_groups_path() + " --out " + csv_path);
    REQUIRE(result.exit_code == 0);
    std::string csv = fixtures::slurp(csv_path);
    CHECK(csv.find("scope,t,valid_tuples,covered_tuples,ratio\n") == 0);
    CHECK(csv.find("g1,1,4,4,1.000000\n") != std::string::npos);
    CHECK(csv.find("g2,2,6,") != std::string::npos);
}

TEST_CASE("coverage command matches the frozen brute-force ratio") {
    fixtures::TempDir dir;
    std::string sample_path = (dir.path() / "pair.sample").string();
    multiwise::FeatureModel model = fixtures::car_model();
    multiwise::write_file(
        sample_path,
        multiwise::write_sample(fixtures::worked_example_pair(model), model, "car", 0));

    auto all = run_cli("coverage " + car_uvl_path() + " " + sample_path + " --t 2");
    REQUIRE(all.exit_code == 0);
    CHECK(all.output == "valid=154 covered=82 ratio=0.532468\n");

    auto empty = run_cli("coverage " + car_uvl_path() + " " + sample_path + " --t 0");
    CHECK(empty.output == "valid=0 covered=0 ratio=1.000000\n");
}

TEST_CASE("coverage exit codes distinguish malformed from inconsistent samples") {
    fixtures::TempDir dir;
    std::string bad = (dir.path() / "bad.sample").string();
    multiwise::write_file(bad, "# model=car seed=0\nCar;Carbody\n");
    CHECK(run_cli("coverage " + car_uvl_path() + " " + bad + " --t 1").exit_code == 2);

    std::string alien = (dir.path() / "alien.sample").string();
    multiwise::write_file(alien, "# model=other seed=0\nRocket\n");
    CHECK(run_cli("coverage " + car_uvl_path() + " " + alien + " --t 1").exit_code == 4);
}

TEST_CASE("convert round trips are byte stable") {
    fixtures::TempDir dir;
    std::string first = (dir.path() / "car.dimacs").string();
    std::string second = (dir.path() / "back.dimacs").string();

    REQUIRE(run_cli("convert " + car_uvl_path() + " " + first).exit_code == 0);
    REQUIRE(run_cli("convert " + first + " " + second).exit_code == 0);
    CHECK(fixtures::slurp(first) == fixtures::slurp(second));
    CHECK(fixtures::slurp(first).find("p cnf 11 16\n") != std::string::npos);

    CHECK(run_cli("convert " + first + " out.uvl").exit_code == 1);
}

TEST_CASE("inspect reports the model facts") {
    auto result = run_cli("inspect " + car_uvl_path());
    REQUIRE(result.exit_code == 0);
    CHECK(result.output.find("features=11\n") != std::string::npos);
    CHECK(result.output.find("clauses=16\n") != std::string::npos);
    CHECK(result.output.find("core=Car,Carbody,Gearbox\n") != std::string::npos);
    CHECK(result.output.find("dead=\n") != std::string::npos);
    CHECK(result.output.find("configurations=34\n") != std::string::npos);
}

TEST_CASE("experiment command writes the CSV pair") {
    fixtures::TempDir dir;
    auto result = run_cli("experiment " + car_uvl_path() +
                          " --setups Exp1,Exp2 --reps 3 --seed 1 --out-dir " +
                          dir.path().string() + " --timing none");
    REQUIRE(result.exit_code == 0);

    std::string results = fixtures::slurp(dir.path() / "results.csv");
    CHECK(results.find("experiment,model,repetition,seed,sample_size,time_ms,cov_t2,cov_t3\n") == 0);
    int rows = -1;  // header
    for (char c : results) rows += c == '\n';
    CHECK(rows == 6);

    std::string summary = fixtures::slurp(dir.path() / "summary.csv");
    CHECK(summary.find("Exp1,car,sample_size,") != std::string::npos);
    CHECK(summary.find("Exp2,car,sample_size,") != std::string::npos);
}

TEST_CASE("usage errors exit with code 1") {
    CHECK(run_cli("no-such-command").exit_code == 1);
    CHECK(run_cli("sample").exit_code == 1);
    CHECK(run_cli("sample model.uvl --bogus-flag").exit_code == 1);
    CHECK(run_cli("experiment " + car_uvl_path() + " --setups Exp9").exit_code == 1);
}

TEST_CASE("parse errors exit with code 2") {
    fixtures::TempDir dir;
    std::string bad = (dir.path() / "bad.uvl").string();
    multiwise::write_file(bad, "features\n\tTabbed\n");
    CHECK(run_cli("sample " + bad + " --t 1").exit_code == 2);
    CHECK(run_cli("inspect " + (dir.path() / "missing.uvl").string()).exit_code == 2);
}

TEST_CASE("unknown features in a group spec exit with code 4") {
    fixtures::TempDir dir;
    std::string groups = (dir.path() / "groups.json").string();
    multiwise::write_file(
        groups, R"({"groups":[{"name":"g","t":1,"features":["Rocket"]}],"default_t":0})");
    CHECK(run_cli("sample " + car_uvl_path() + " --groups " + groups).exit_code == 4);
}

TEST_CASE("the strength ceiling is configurable through the environment") {
    fixtures::TempDir dir;
    std::string groups = (dir.path() / "groups.json").string();
    multiwise::write_file(
        groups, R"({"groups":[{"name":"g","t":7,"features":["Car"]}],"default_t":0})");

    CHECK(run_cli("sample " + car_uvl_path() + " --groups " + groups).exit_code == 4);

    std::string out = (dir.path() / "high.sample").string();
    auto raised = fixtures::run_raw("MULTIWISE_MAX_T=8 \"" + fixtures::cli_path() +
                                    "\" sample " + car_uvl_path() + " --groups " + groups +
                                    " --out " + out);
    CHECK(raised.exit_code == 0);
}
