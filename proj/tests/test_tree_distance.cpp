#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "patmat/tree_distance.hpp"
#include "test_util.hpp"

using namespace patmat;

static const CostFunction kUnit = CostFunction::unit();

TEST_CASE("oracle basics") {
    LabeledTree t = parse_tree("f(d(a,c(b)),e)");
    CHECK(edit_distance_oracle(t, t, kUnit) == 0.0);
    LabeledTree empty;
    CHECK(edit_distance_oracle(empty, parse_tree("a(b,c)"), kUnit) == 3.0);
    CHECK(edit_distance_oracle(parse_tree("a(b,c)"), empty, kUnit) == 3.0);
    CHECK(edit_distance_oracle(empty, empty, kUnit) == 0.0);
}

TEST_CASE("transform fixture has distance at most 4 and oracle pins it") {
    LabeledTree t1 = parse_tree("f(d(a,c(b)),e)");
    LabeledTree t2 = parse_tree("a(c(d(a,b)),d)");
    double v = edit_distance_oracle(t1, t2, kUnit);
    CHECK(v <= 4.0);
    CHECK(v >= 1.0);
    CHECK(zhang_shasha(t1, t2, kUnit) == v);
}

TEST_CASE("single-node relabel") {
    CHECK(zhang_shasha(parse_tree("a"), parse_tree("b"), kUnit) == 1.0);
    CHECK(zhang_shasha(parse_tree("a"), parse_tree("a"), kUnit) == 0.0);
}

TEST_CASE("zhang_shasha equals oracle exhaustively on small trees") {
    auto small = testutil::all_trees(1, {"a", "b"});
    for (int n = 2; n <= 4; ++n)
        for (auto& t : testutil::all_trees(n, {"a", "b"})) small.push_back(t);
    for (const auto& t1 : small)
        for (const auto& t2 : small) {
            double o = edit_distance_oracle(t1, t2, kUnit);
            double z = zhang_shasha(t1, t2, kUnit);
            if (o != z) {
                CAPTURE(serialize(t1));
                CAPTURE(serialize(t2));
                REQUIRE(o == z);
            }
        }
}

TEST_CASE("zhang_shasha equals oracle on random pairs, custom costs too") {
    std::mt19937 rng(4242);
    CostFunction table = CostFunction::from_table({
        {"a", "b", 0.5},
        {"a", "-", 2.0},
        {"b", "-", 1.5},
        {"c", "-", 1.0},
    });
    for (int iter = 0; iter < 500; ++iter) {
        int n1 = 1 + static_cast<int>(rng() % 12);
        int n2 = 1 + static_cast<int>(rng() % 12);
        LabeledTree t1 = testutil::random_tree(rng, n1, {"a", "b", "c"});
        LabeledTree t2 = testutil::random_tree(rng, n2, {"a", "b", "c"});
        const CostFunction& c = (iter % 3 == 0) ? table : kUnit;
        double o = edit_distance_oracle(t1, t2, c);
        double z = zhang_shasha(t1, t2, c);
        if (o != doctest::Approx(z)) {
            CAPTURE(serialize(t1));
            CAPTURE(serialize(t2));
        }
        REQUIRE(o == doctest::Approx(z));
    }
}

TEST_CASE("unit-cost distance behaves like a metric on samples") {
    std::mt19937 rng(99);
    for (int iter = 0; iter < 60; ++iter) {
        LabeledTree a = testutil::random_tree(rng, 1 + rng() % 8, {"a", "b"});
        LabeledTree b = testutil::random_tree(rng, 1 + rng() % 8, {"a", "b"});
        LabeledTree c = testutil::random_tree(rng, 1 + rng() % 8, {"a", "b"});
        double ab = zhang_shasha(a, b, kUnit);
        double ba = zhang_shasha(b, a, kUnit);
        double bc = zhang_shasha(b, c, kUnit);
        double ac = zhang_shasha(a, c, kUnit);
        CHECK(ab == ba);
        CHECK(ac <= ab + bc + 1e-9);
        CHECK(zhang_shasha(a, a, kUnit) == 0.0);
    }
}

TEST_CASE("non-metric cost functions are rejected") {
    CostFunction bad = CostFunction::from_table({{"a", "a", 1.0}});
    CHECK_THROWS_AS(
        zhang_shasha(parse_tree("a"), parse_tree("a(a)"), bad),
        std::invalid_argument);
    CostFunction bad_triangle = CostFunction::from_table({
        {"a", "b", 10.0}, {"a", "c", 1.0}, {"b", "c", 1.0}});
    CHECK_THROWS_AS(
        edit_distance_oracle(parse_tree("a(b)"), parse_tree("c"), bad_triangle),
        std::invalid_argument);
}

TEST_CASE("alignment fixture values") {
    LabeledTree t1 = parse_tree("a(e(b,c),d)");
    LabeledTree t2 = parse_tree("a(b,f(c,d))");
    CHECK(alignment_distance(t1, t2, kUnit) == 4.0);
    CHECK(zhang_shasha(t1, t2, kUnit) == 2.0);
    CHECK(alignment_distance(t1, t1, kUnit) == 0.0);
    CHECK(alignment_distance(t2, t2, kUnit) == 0.0);
}

TEST_CASE("alignment triangle failure reproduced") {
    // T3 is T1 with the node labeled e deleted (children spliced in place)
    LabeledTree t1 = parse_tree("a(e(b,c),d)");
    LabeledTree t2 = parse_tree("a(b,f(c,d))");
    LabeledTree t3 = parse_tree("a(b,c,d)");
    double s = alignment_distance(t1, t3, kUnit) + alignment_distance(t3, t2, kUnit);
    CHECK(s == 2.0);
    CHECK(alignment_distance(t1, t2, kUnit) == 4.0);
}

TEST_CASE("edit distance lower-bounds alignment distance") {
    std::mt19937 rng(31337);
    for (int iter = 0; iter < 300; ++iter) {
        LabeledTree t1 = testutil::random_tree(rng, 1 + rng() % 10, {"a", "b", "c"});
        LabeledTree t2 = testutil::random_tree(rng, 1 + rng() % 10, {"a", "b", "c"});
        double d = zhang_shasha(t1, t2, kUnit);
        double a = alignment_distance(t1, t2, kUnit);
        if (!(d <= a + 1e-9)) {
            CAPTURE(serialize(t1));
            CAPTURE(serialize(t2));
        }
        REQUIRE(d <= a + 1e-9);
        CHECK(a == alignment_distance(t2, t1, kUnit));
    }
}

TEST_CASE("alignment equals edit distance on sequences (chains)") {
    // On chain trees an alignment is a sequence alignment, which matches the
    // string edit distance of the label sequences.
    std::mt19937 rng(5);
    for (int iter = 0; iter < 50; ++iter) {
        int n1 = 1 + rng() % 6, n2 = 1 + rng() % 6;
        std::string s1 = testutil::random_string(rng, n1, 2);
        std::string s2 = testutil::random_string(rng, n2, 2);
        LabeledTree t1, t2;
        int p = -1;
        for (char ch : s1) p = t1.add_node(std::string(1, ch), p);
        p = -1;
        for (char ch : s2) p = t2.add_node(std::string(1, ch), p);
        // classic string edit distance
        std::vector<std::vector<double>> d(n1 + 1, std::vector<double>(n2 + 1, 0));
        for (int i = 0; i <= n1; ++i) d[i][0] = i;
        for (int j = 0; j <= n2; ++j) d[0][j] = j;
        for (int i = 1; i <= n1; ++i)
            for (int j = 1; j <= n2; ++j)
                d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                                    d[i - 1][j - 1] + (s1[i - 1] != s2[j - 1])});
        CHECK(alignment_distance(t1, t2, kUnit) == d[n1][n2]);
    }
}
