#include <algorithm>

#include "doctest.h"

#include "densify/filtration.hpp"
#include "densify/pipeline.hpp"
#include "support/generators.hpp"

using namespace densify;
using densify::testing::m1;
using densify::testing::Rng;

namespace {

PointedModel three_successor_tree() {
    return PointedModel({"r", "s1", "s2", "s3"}, "r",
                        {{"r", "s1"}, {"r", "s2"}, {"r", "s3"}}, {{"p", {"s1", "s3"}}});
}

bool all_verifiers_ok(const FiltrationResult& f, const AxiomSet& axioms) {
    return verify_representative_independence(f).ok() && verify_quotient_frame(f, axioms).ok() &&
           verify_homomorphism(f).ok() && verify_truth_lemma(f).ok();
}

}  // namespace

TEST_CASE("stratified_equiv") {
    SUBCASE("propositional formulas leave only the root") {
        const Partition p = stratified_equiv(m1(), parse_formula("~p"));
        REQUIRE(p.classes.size() == 1);
        CHECK(p.classes[0] == std::vector<int>{0});
        CHECK(p.class_of[1] == -1);
    }

    SUBCASE("m1 under md-2 formulas splits by depth") {
        const Partition p = stratified_equiv(m1(), parse_formula("<><>p"));
        CHECK(p.classes.size() == 3);
    }

    SUBCASE("siblings with identical subtrees share a class") {
        const PointedModel m({"r", "a", "b", "c1", "c2"}, "r",
                             {{"r", "a"}, {"r", "b"}, {"a", "c1"}, {"b", "c2"}},
                             {{"p", {"c1", "c2"}}});
        const Partition p = stratified_equiv(m, parse_formula("<><>p"));
        REQUIRE(p.classes.size() == 3);
        CHECK(p.class_of[static_cast<std::size_t>(m.index("a"))] ==
              p.class_of[static_cast<std::size_t>(m.index("b"))]);
        CHECK(p.class_of[static_cast<std::size_t>(m.index("c1"))] ==
              p.class_of[static_cast<std::size_t>(m.index("c2"))]);
    }
}

TEST_CASE("build_filtration") {
    const AxiomSet phi = parse_axiom_set("2>3");

    SUBCASE("k=0 produces the single-class self-loop quotient") {
        const FiltrationResult f = build_filtration(m1(), parse_formula("~p"), phi);
        CHECK(f.quotient.size() == 1);
        CHECK(f.quotient.has_edge(0, 0));
        CHECK(f.quotient.edge_count() == 1);
        CHECK(model_check(f.quotient, 0, parse_formula("~p")));
        CHECK(all_verifiers_ok(f, phi));
    }

    SUBCASE("graded height-1 tree under diamond-p") {
        const PointedModel m = three_successor_tree();
        const FiltrationResult f = build_filtration(m, parse_formula("<>p"), phi);
        REQUIRE(f.quotient.size() == 3);  // {r}, {s1,s3}, {s2}
        CHECK(f.class_depth[0] == 0);
        const int c_p = f.classes.class_of[static_cast<std::size_t>(m.index("s1"))];
        CHECK(c_p == f.classes.class_of[static_cast<std::size_t>(m.index("s3"))]);
        // depth-k classes relate to every class
        for (int b = 0; b < f.quotient.size(); ++b) CHECK(f.quotient.has_edge(c_p, b));
        CHECK(verify_quotient_frame(f, phi).ok());
        CHECK(model_check(f.quotient, f.quotient.root(), parse_formula("<>p")));
        CHECK(all_verifiers_ok(f, phi));
    }

    SUBCASE("precondition violations name the witnesses") {
        try {
            build_filtration(m1(), parse_formula("<><>p"), phi);
            REQUIRE(false);
        } catch (const FiltrationPreconditionError& e) {
            REQUIRE(e.report().cond3.size() == 1);
            CHECK(e.report().cond3[0].x == 0);
            CHECK(e.report().cond3[0].z == 2);
            CHECK(std::string(e.what()).find("(3)@(r,b,2>3)") != std::string::npos);
        }
    }

    SUBCASE("non-rooted inputs are rejected") {
        const PointedModel bad({"r", "z"}, "r", {});
        CHECK_THROWS_AS(build_filtration(bad, parse_formula("p"), phi), DomainError);
    }
}

TEST_CASE("filtration invariants on generated instances") {
    Rng rng(densify::testing::harness_seed() ^ 0x61);
    const AxiomSet phi = parse_axiom_set("2>3");
    const std::vector<std::string> vars{"p", "q"};
    const std::vector<std::string> texts{"<>p", "<>p & <>~q", "<>(p -> q)", "~<>p | q"};

    for (int i = 0; i < 25; ++i) {
        // budget-1 repair outputs always meet the k=1 preconditions
        const PointedModel base =
            saturate_to_phi_frame(densify::testing::random_rooted_model(rng, 4, vars), phi);
        const RepairRun run = run_repair(base, phi, 1, 500);
        REQUIRE(run.status == RepairStatus::Saturated);
        const PointedModel repaired =
            pullback_model(PMorphism{run.state.current, run.state.base, run.state.f});

        const Formula formula = parse_formula(texts[static_cast<std::size_t>(rng.below(
            static_cast<int>(texts.size())))]);
        const FiltrationResult f = build_filtration(repaired, formula, phi);
        CHECK(all_verifiers_ok(f, phi));

        // depth bound on R^f
        for (int a = 0; a < f.quotient.size(); ++a)
            for (int b = 0; b < f.quotient.size(); ++b)
                if (f.quotient.has_edge(a, b))
                    CHECK(f.class_depth[static_cast<std::size_t>(b)] <=
                          f.class_depth[static_cast<std::size_t>(a)] + 1);

        // Fact 2 finiteness bound, recomputed independently
        std::size_t bound = 0;
        for (int d = 0; d <= f.k; ++d)
            bound += classes_mod_k_bisim(repaired, f.vars, f.k - d).classes.size();
        CHECK(f.classes.classes.size() <= bound);

        // preservation at the root
        CHECK(model_check(repaired, repaired.root(), formula) ==
              model_check(f.quotient, f.quotient.root(), formula));
    }
}

TEST_CASE("mutation controls trip the verifiers") {
    const AxiomSet phi = parse_axiom_set("2>3");
    const PointedModel m = three_successor_tree();
    const FiltrationResult valid = build_filtration(m, parse_formula("<>p"), phi);
    REQUIRE(all_verifiers_ok(valid, phi));

    SUBCASE("corrupting V^f breaks the truth lemma") {
        FiltrationResult f = valid;
        std::set<int> flipped;
        for (int c = 0; c < f.quotient.size(); ++c)
            if (!f.quotient.holds("p", c)) flipped.insert(c);
        f.quotient.set_valuation("p", flipped);
        CHECK_FALSE(verify_truth_lemma(f).ok());
    }

    SUBCASE("corrupting R^f breaks representative independence") {
        FiltrationResult f = valid;
        if (f.quotient.has_edge(0, 0)) f.quotient.remove_edge(0, 0);
        else f.quotient.add_edge(0, 0);
        CHECK_FALSE(verify_representative_independence(f).ok());
    }

    SUBCASE("corrupting the class map breaks homogeneity") {
        FiltrationResult f = valid;
        const int from = f.classes.class_of[static_cast<std::size_t>(m.index("s2"))];
        const int to = f.classes.class_of[static_cast<std::size_t>(m.index("s1"))];
        REQUIRE(from != to);
        auto& fc = f.classes.classes[static_cast<std::size_t>(from)];
        fc.erase(std::find(fc.begin(), fc.end(), m.index("s2")));
        f.classes.classes[static_cast<std::size_t>(to)].push_back(m.index("s2"));
        f.classes.class_of[static_cast<std::size_t>(m.index("s2"))] = to;
        CHECK_FALSE(verify_representative_independence(f).ok());
    }
}
