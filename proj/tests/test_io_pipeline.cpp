#include <cstdio>
#include <fstream>

#include "doctest.h"

#include "densify/model_io.hpp"
#include "densify/pipeline.hpp"
#include "densify/reports.hpp"
#include "densify/sat_oracle.hpp"
#include "support/generators.hpp"

using namespace densify;
using densify::testing::m1;
using densify::testing::Rng;
using nlohmann::json;

TEST_CASE("model json round trips") {
    SUBCASE("canonical save is stable under reload") {
        Rng rng(densify::testing::harness_seed() ^ 0x71);
        for (int i = 0; i < 40; ++i) {
            const PointedModel m = densify::testing::random_rooted_model(rng, 5, {"p", "q"});
            const std::string text = model_to_string(m);
            const PointedModel back = model_from_json(json::parse(text));
            CHECK(model_to_string(back) == text);
        }
    }

    SUBCASE("field errors") {
        CHECK_THROWS_AS(model_from_json(json::parse(R"({"worlds":["r"]})")), IoError);
        CHECK_THROWS_AS(
            model_from_json(json::parse(R"({"worlds":["r"],"root":"r","extra":1})")), IoError);
        CHECK_THROWS_AS(
            model_from_json(json::parse(R"({"worlds":["r"],"root":"x"})")), IoError);
        CHECK_THROWS_AS(
            model_from_json(json::parse(R"({"worlds":["r"],"root":"r","edges":[["r","z"]]})")),
            IoError);
        CHECK_THROWS_AS(
            model_from_json(json::parse(R"({"worlds":["r","r"],"root":"r"})")), IoError);
        CHECK_THROWS_AS(
            model_from_json(json::parse(R"({"worlds":["r"],"root":"r","valuation":{"p":["z"]}})")),
            IoError);
    }

    SUBCASE("morphism maps round trip") {
        const PointedModel m = m1();
        const Unraveling u = unravel(m, 2);
        const PMorphism f = unravel_pmorphism(u, m);
        const json doc = map_to_json(f);
        const PMorphism back = map_from_json(doc, f.source, f.target);
        CHECK(back.map == f.map);
        CHECK_THROWS_AS(map_from_json(json::parse(R"({"map":{}})"), f.source, f.target), IoError);
    }
}

TEST_CASE("sat_oracle") {
    const AxiomSet phi = parse_axiom_set("2>3");

    SUBCASE("a bare variable needs one world") {
        const auto m = sat_oracle(parse_formula("p"), phi, 1);
        REQUIRE(m.has_value());
        CHECK(m->size() == 1);
        CHECK(m->edge_count() == 0);
        CHECK(m->holds("p", 0));
    }

    SUBCASE("a two-step-free successor demand yields a short chain") {
        const auto m = sat_oracle(parse_formula("<>~false & ~<><>~false"), phi, 2);
        REQUIRE(m.has_value());
        CHECK(m->size() == 2);
        CHECK(k_step(*m, 2).empty());
        CHECK(model_check(*m, m->root(), parse_formula("<>~false & ~<><>~false")));
    }

    SUBCASE("falsum is unsatisfiable at every size") {
        CHECK_FALSE(sat_oracle(Formula::falsum(), phi, 3).has_value());
    }

    SUBCASE("whatever comes back satisfies the axioms and the formula") {
        Rng rng(densify::testing::harness_seed() ^ 0x72);
        const std::vector<std::string> vars{"p", "q"};
        for (int i = 0; i < 30; ++i) {
            const Formula f = densify::testing::random_formula(rng, vars, 2, 7);
            const auto m = sat_oracle(f, phi, 3);
            if (!m) continue;
            CHECK(satisfies_axioms(*m, phi));
            CHECK(is_rooted(*m));
            CHECK(model_check(*m, m->root(), f));
        }
    }

    CHECK_THROWS_AS(sat_oracle(Formula::falsum(), phi, 6), DomainError);
}

TEST_CASE("run_pipeline") {
    const AxiomSet phi = parse_axiom_set("2>3");

    SUBCASE("graded short tree goes all the way through") {
        Rng rng(densify::testing::harness_seed() ^ 0x73);
        const PointedModel tree = densify::testing::graded_tree(rng, 1, 3, {"p"});
        PipelineOptions opts;
        const PipelineReport report = run_pipeline(tree, parse_formula("<>p | <>~p"), phi, opts);
        CHECK(report.exit_code == kExitOk);
        const auto& summary = report.summary;
        CHECK(summary["root_satisfaction"]["input"] == summary["root_satisfaction"]["quotient"]);
        const PointedModel quotient = model_from_json(summary["quotient"]);
        CHECK(satisfies_axioms(quotient, phi));
    }

    SUBCASE("truncation is reported as exit 2, violation-free") {
        const PointedModel loop({"w"}, "w", {{"w", "w"}});
        PipelineOptions opts;
        opts.budget = 2;
        opts.max_steps = 25;
        const PipelineReport report = run_pipeline(loop, parse_formula("<><>p"), phi, opts);
        CHECK(report.exit_code == kExitTruncated);
        bool saw_truncated_repair = false;
        for (const auto& stage : report.stages)
            if (stage["stage"] == "repair") saw_truncated_repair = stage["outcome"] == "truncated";
        CHECK(saw_truncated_repair);
    }

    SUBCASE("non-Phi-frames are flagged unless saturation is requested") {
        PipelineOptions opts;
        const PipelineReport report = run_pipeline(m1(), parse_formula("<>p"), phi, opts);
        CHECK(report.exit_code == kExitViolation);

        PipelineOptions with_sat;
        with_sat.saturate = true;
        const PipelineReport report2 = run_pipeline(m1(), parse_formula("<>p"), phi, with_sat);
        CHECK(report2.exit_code == kExitOk);
        CHECK(report2.summary["root_satisfaction"]["input"] ==
              report2.summary["root_satisfaction"]["quotient"]);
    }

    SUBCASE("reports are byte-identical across runs, timings aside") {
        Rng rng(densify::testing::harness_seed() ^ 0x74);
        const PointedModel tree = densify::testing::graded_tree(rng, 1, 3, {"p"});
        PipelineOptions opts;
        opts.unravel = true;
        const PipelineReport a = run_pipeline(tree, parse_formula("<>p"), phi, opts);
        const PipelineReport b = run_pipeline(tree, parse_formula("<>p"), phi, opts);
        CHECK(a.to_json(false).dump() == b.to_json(false).dump());
    }
}

TEST_CASE("load_model reports parse positions") {
    const std::string path = "densify_test_bad.json";
    {
        std::ofstream out(path);
        out << "{\"worlds\": [\"r\"], \"root\": }";
    }
    try {
        load_model(path);
        REQUIRE(false);
    } catch (const IoError& e) {
        const std::string what = e.what();
        CHECK(what.find("parse error") != std::string::npos);
    }
    std::remove(path.c_str());
}
