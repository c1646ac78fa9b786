#include "doctest.h"

#include "densify/bisim.hpp"
#include "densify/morphism.hpp"
#include "support/generators.hpp"

using namespace densify;
using densify::testing::m1;
using densify::testing::Rng;

namespace {

// every level is an equivalence, levels shrink, full bisim refines them all
void check_fact2_laws(const PointedModel& m, const std::set<std::string>& vars, int max_k) {
    const KBisimTable t = k_bisim_table(m, m, vars, max_k);
    const BisimMatrix full = full_bisim(m, m);
    for (int k = 0; k <= max_k; ++k) {
        const BisimMatrix& rel = t.level(k);
        for (int i = 0; i < m.size(); ++i) {
            CHECK(rel.at(i, i));
            for (int j = 0; j < m.size(); ++j) {
                CHECK(rel.at(i, j) == rel.at(j, i));
                if (k > 0 && t.level(k).at(i, j)) CHECK(t.level(k - 1).at(i, j));
                // full bisimilarity agrees on every supported variable, so it
                // refines ~k for any X
                if (full.at(i, j)) CHECK(rel.at(i, j));
                if (rel.at(i, j))
                    for (int l = 0; l < m.size(); ++l)
                        if (rel.at(j, l)) CHECK(rel.at(i, l));
            }
        }
    }
}

}  // namespace

TEST_CASE("k_bisim_table basics") {
    SUBCASE("isolated points with equal valuations are k-bisimilar for all k") {
        const PointedModel a({"w"}, "w", {}, {{"p", {"w"}}});
        const PointedModel b({"v"}, "v", {}, {{"p", {"v"}}});
        const KBisimTable t = k_bisim_table(a, b, {"p"}, 3);
        for (int k = 0; k <= 3; ++k) CHECK(t.level(k).at(0, 0));
    }

    SUBCASE("a missing successor splits at level 1") {
        const PointedModel withp({"w", "s"}, "w", {{"w", "s"}}, {{"p", {"s"}}});
        const PointedModel bare({"v"}, "v", {});
        const KBisimTable t = k_bisim_table(withp, bare, {"p"}, 2);
        CHECK(t.level(0).at(0, 0));        // both falsify p
        CHECK_FALSE(t.level(1).at(0, 0));  // clause (b) fails
    }

    SUBCASE("level 0 is plain variable agreement") {
        const PointedModel m = m1();
        const KBisimTable t = k_bisim_table(m, m, {"p"}, 1);
        CHECK_FALSE(t.level(0).at(m.index("b"), m.index("a")));
        CHECK(t.level(0).at(m.index("r"), m.index("a")));
    }
}

TEST_CASE("full_bisim") {
    SUBCASE("contains the identity") {
        const PointedModel m = m1();
        const BisimMatrix z = full_bisim(m, m);
        for (int w = 0; w < m.size(); ++w) CHECK(z.at(w, w));
    }

    SUBCASE("two-chain vs three-chain, empty valuations") {
        const PointedModel two({"w", "v"}, "w", {{"w", "v"}});
        const PointedModel three({"w2", "v2", "z2"}, "w2", {{"w2", "v2"}, {"v2", "z2"}});
        const BisimMatrix z = full_bisim(two, three);
        CHECK_FALSE(z.at(two.index("v"), three.index("v2")));
        CHECK_FALSE(z.at(two.index("w"), three.index("w2")));
        // both one step away from a dead end
        CHECK(z.at(two.index("w"), three.index("v2")));
        CHECK(z.at(two.index("v"), three.index("z2")));
    }

    SUBCASE("complete unravelings of DAGs are pointwise bisimilar to their image") {
        Rng rng(densify::testing::harness_seed() ^ 0x31);
        for (int i = 0; i < 25; ++i) {
            const PointedModel m = densify::testing::graded_tree(rng, 1 + rng.below(3), 2, {"p"});
            const Unraveling u = unravel(m, m.size());
            const BisimMatrix z = full_bisim(u.tree, m);
            for (int t = 0; t < u.tree.size(); ++t)
                CHECK(z.at(t, u.image[static_cast<std::size_t>(t)]));
            // cross-check against the bounded approximation
            const KBisimTable kt = k_bisim_table(u.tree, m, {"p"}, 8);
            for (int t = 0; t < u.tree.size(); ++t)
                CHECK(kt.level(8).at(t, u.image[static_cast<std::size_t>(t)]));
        }
    }
}

TEST_CASE("classes_mod_k_bisim") {
    const PointedModel m = m1();

    SUBCASE("no variables, level 0: one class") {
        const Partition p = classes_mod_k_bisim(m, {}, 0);
        CHECK(p.classes.size() == 1);
        CHECK(p.classes[0].size() == 3);
    }

    SUBCASE("m1 over {p}") {
        const Partition p0 = classes_mod_k_bisim(m, {"p"}, 0);
        REQUIRE(p0.classes.size() == 2);
        CHECK(p0.class_of[static_cast<std::size_t>(m.index("r"))] ==
              p0.class_of[static_cast<std::size_t>(m.index("a"))]);

        const Partition p1 = classes_mod_k_bisim(m, {"p"}, 1);
        CHECK(p1.classes.size() == 3);
    }
}

TEST_CASE("Fact 2 laws on small models") {
    SUBCASE("exhaustive on two worlds") {
        const std::vector<std::string> vars{"p", "q"};
        for (int size = 1; size <= 2; ++size)
            densify::testing::for_each_model(size, vars, false, [&](const PointedModel& m) {
                check_fact2_laws(m, {"p", "q"}, 3);
                check_fact2_laws(m, {"p"}, 2);
            });
    }

    SUBCASE("sampled on three and four worlds") {
        Rng rng(densify::testing::harness_seed() ^ 0x32);
        for (int i = 0; i < 150; ++i) {
            const PointedModel m = densify::testing::random_rooted_model(rng, 4, {"p", "q"});
            check_fact2_laws(m, {"p", "q"}, 3);
            check_fact2_laws(m, {}, 2);
        }
    }
}

TEST_CASE("k-bisimilar worlds agree on shallow formulas") {
    Rng rng(densify::testing::harness_seed() ^ 0x33);
    const std::vector<std::string> vars{"p", "q"};
    for (int i = 0; i < 25; ++i) {
        const PointedModel m = densify::testing::random_rooted_model(rng, 4, vars);
        const KBisimTable t = k_bisim_table(m, m, {"p", "q"}, 3);
        for (int j = 0; j < 200; ++j) {
            const int k = rng.below(4);
            const Formula f = densify::testing::random_formula(rng, vars, k, 8);
            const auto sat = satisfying_worlds(m, f);
            for (int a = 0; a < m.size(); ++a)
                for (int b = 0; b < m.size(); ++b)
                    if (t.level(k).at(a, b))
                        CHECK(sat[static_cast<std::size_t>(a)] == sat[static_cast<std::size_t>(b)]);
        }
    }
}
