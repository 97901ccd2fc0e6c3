#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "rbyhj/experiments.hpp"

using namespace rbyhj;
using nlohmann::json;

namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& p) {
    std::ifstream in(p);
    REQUIRE(in);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("experiment registry lists the full set") {
    const auto& xs = list_experiments();
    CHECK(xs.size() >= 7);
    bool have_opt = false, have_feller = false;
    for (const auto& x : xs) {
        if (x.name == "optimality") have_opt = true;
        if (x.name == "feller_table") have_feller = true;
    }
    CHECK(have_opt);
    CHECK(have_feller);
}

TEST_CASE("config validation failures exit with code 2") {
    auto bad1 = run_experiment(json{{"foo", 1}}, "exp_test_out/bad1", false, {});
    CHECK(bad1.exit_code == 2);
    auto bad2 = run_experiment(json{{"experiment", "nope"}}, "exp_test_out/bad2", false, {});
    CHECK(bad2.exit_code == 2);
    auto bad3 = run_experiment(
        json{{"experiment", "holder_diag"},
             {"rows", json::array({json{{"drift", {{"kind", "power"}}}, {"alpha", 0.5}}})}},
        "exp_test_out/bad3", false, {});
    CHECK(bad3.exit_code == 2);  // power drift needs its exponent
}

TEST_CASE("feller table experiment with expected classifications") {
    json cfg{{"experiment", "feller_table"},
             {"rows",
              json::array({json{{"drift", {{"kind", "inverse"}, {"c", 0.5}}},
                                {"sigma", 1.0},
                                {"expect_kind", "Exit"},
                                {"expect_I_plus", 0.25}},
                           json{{"drift", {{"kind", "zero"}}},
                                {"sigma", 1.0},
                                {"expect_kind", "Regular"},
                                {"expect_I_plus", 0.5},
                                {"expect_I_minus", 0.5}}})}};
    auto out = run_experiment(cfg, "exp_test_out/feller", false, {});
    CHECK(out.exit_code == 0);
    CHECK(out.pass);
    CHECK(fs::exists("exp_test_out/feller/feller_table.csv"));
    CHECK(fs::exists("exp_test_out/feller/meta.json"));
    // the +infinity sentinel serializes as the string "inf"
    const std::string rep = slurp("exp_test_out/feller/report.json");
    CHECK(rep.find("\"inf\"") != std::string::npos);
}

TEST_CASE("holder table experiment") {
    json cfg{{"experiment", "holder_diag"},
             {"rows", json::array({json{{"drift", {{"kind", "constant"}, {"c", 0.5}}},
                                        {"alpha", 1.0},
                                        {"expect", "Inconclusive"}},
                                   json{{"drift", {{"kind", "power"}, {"c", 1.0}, {"q", -1.5}}},
                                        {"alpha", 0.5},
                                        {"expect", "Repelling"}}})}};
    auto out = run_experiment(cfg, "exp_test_out/holder", false, {});
    CHECK(out.exit_code == 0);
}

TEST_CASE("burgers experiment is reproducible byte for byte") {
    json cfg{{"experiment", "burgers"},
             {"grid", {{"n_nodes", 256}}},
             {"path", {{"kind", "brownian"}, {"sigma", 1.0}, {"T", 0.5}, {"n_steps", 256}, {"seed", 3}}},
             {"cells", 256},
             {"snapshot_every", 32}};
    auto a = run_experiment(cfg, "exp_test_out/rep_a", false, {});
    auto b = run_experiment(cfg, "exp_test_out/rep_b", false, {});
    CHECK(a.exit_code == 0);
    CHECK(b.exit_code == 0);
    CHECK(slurp("exp_test_out/rep_a/bound_seed3.csv") == slurp("exp_test_out/rep_b/bound_seed3.csv"));
    CHECK(slurp("exp_test_out/rep_a/snapshots/final_seed3.csv") ==
          slurp("exp_test_out/rep_b/snapshots/final_seed3.csv"));
    CHECK(slurp("exp_test_out/rep_a/report.json") == slurp("exp_test_out/rep_b/report.json"));
}

TEST_CASE("seed override replaces the configured seeds") {
    json cfg{{"experiment", "burgers"},
             {"grid", {{"n_nodes", 128}}},
             {"path", {{"kind", "brownian"}, {"T", 0.25}, {"n_steps", 128}, {"seeds", {5, 6}}}},
             {"cells", 128},
             {"snapshot_every", 64}};
    auto out = run_experiment(cfg, "exp_test_out/ovr", false, 11);
    CHECK(out.exit_code == 0);
    CHECK(fs::exists("exp_test_out/ovr/bound_seed11.csv"));
    CHECK_FALSE(fs::exists("exp_test_out/ovr/bound_seed5.csv"));
}

TEST_CASE("optimality tracking run emits and passes on the silent path") {
    json cfg{{"experiment", "optimality"},
             {"beta", 1.0},
             {"grid", {{"n_nodes", 256}}},
             {"cells", 1024},
             {"path", {{"kind", "zero"}, {"T", 0.115}, {"n_steps", 1024}}}};
    auto out = run_experiment(cfg, "exp_test_out/opt", true, {});
    CHECK(out.exit_code == 0);
    CHECK(fs::exists("exp_test_out/opt/tracking.csv"));
    CHECK(fs::exists("exp_test_out/opt/tracking.svg"));
}

TEST_CASE("cleanup") { fs::remove_all("exp_test_out"); }
