#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "patmat/tree_inclusion.hpp"
#include "test_util.hpp"

using namespace patmat;

namespace {

// Minimum ordered pairs straight from the definition: minimal spanning pairs
// of tuples x1 ◁ ... ◁ xk drawn from the given deep sets.
NodePairList mop_bruteforce(const TreeIndex& t, const std::vector<NodeList>& sets) {
    std::vector<std::vector<int>> tuples;
    std::vector<int> cur;
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == sets.size()) {
            tuples.push_back(cur);
            return;
        }
        for (int v : sets[i]) {
            if (!cur.empty() && !t.left_of(cur.back(), v)) continue;
            cur.push_back(v);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    NodePairList out;
    for (const auto& a : tuples) {
        int x1 = a.front(), xk = a.back();
        bool minimal = true;
        for (const auto& b : tuples) {
            int z1 = b.front(), zk = b.back();
            bool inner1 = t.left_of(x1, z1) && t.left_or_related(zk, xk);
            bool inner2 = t.left_or_related(x1, z1) && t.left_of(zk, xk);
            if (inner1 || inner2) {
                minimal = false;
                break;
            }
        }
        if (minimal) out.emplace_back(x1, xk);
    }
    std::sort(out.begin(), out.end(),
              [&](auto& p, auto& q) { return t.pre(p.first) < t.pre(q.first); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

NodeList random_deep_set(std::mt19937& rng, const TreeIndex& t) {
    NodeList x;
    for (int v = 0; v < t.n(); ++v)
        if (rng() % 3 == 0) x.push_back(v);
    std::sort(x.begin(), x.end(), [&](int a, int b) { return t.pre(a) < t.pre(b); });
    return deep(t, x);
}

// first ancestor of v (inclusive) labeled a, or -1
int fl_walkup(const LabeledTree& t, int v, const std::string& a) {
    for (int u = v; u != -1; u = t.parent(u))
        if (t.label(u) == a) return u;
    return -1;
}

LabeledTree subtree_copy(const LabeledTree& t, int root) {
    LabeledTree out;
    std::function<void(int, int)> rec = [&](int v, int parent) {
        int id = out.add_node(t.label(v), parent);
        for (int c : t.children(v)) rec(c, id);
    };
    rec(root, -1);
    return out;
}

}  // namespace

TEST_CASE("mop trivial cases") {
    LabeledTree t = parse_tree("r(a,b,c)");
    TreeIndex ti(t);
    int a = t.children(t.root)[0], b = t.children(t.root)[1], c = t.children(t.root)[2];
    // all of y left of every x element: single pair (last y, first x)
    NodePairList y = {{a, a}};
    CHECK(mop(ti, y, {b, c}) == NodePairList{{a, b}});
    CHECK(mop(ti, {{a, a}, {b, b}}, {c}) == NodePairList{{b, c}});
    CHECK(mop(ti, y, {}).empty());
    CHECK(mop(ti, {}, {b}).empty());
    // no x right of y: empty
    CHECK(mop(ti, {{c, c}}, {a, b}).empty());
}

TEST_CASE("mop equals the definition on random deep sets") {
    std::mt19937 rng(2024);
    for (int iter = 0; iter < 400; ++iter) {
        int n = 4 + static_cast<int>(rng() % 12);
        LabeledTree t = testutil::random_tree(rng, n, {"a", "b"});
        TreeIndex ti(t);
        int k = 2 + static_cast<int>(rng() % 3);
        std::vector<NodeList> sets;
        bool empty = false;
        for (int i = 0; i < k; ++i) {
            sets.push_back(random_deep_set(rng, ti));
            if (sets.back().empty()) empty = true;
        }
        if (empty) continue;
        // iterative composition, as Emb uses it
        NodePairList u;
        for (int v : sets[0]) u.emplace_back(v, v);
        for (int i = 1; i < k && !u.empty(); ++i) u = mop(ti, u, sets[i]);
        NodePairList expect = mop_bruteforce(ti, sets);
        CHECK(u == expect);
        // output ordered in both coordinates
        for (size_t i = 0; i + 1 < u.size(); ++i) {
            CHECK(ti.left_of(u[i].first, u[i + 1].first));
            CHECK(ti.left_of(u[i].second, u[i + 1].second));
        }
    }
}

TEST_CASE("fl basics") {
    LabeledTree t = parse_tree("a(b(c),d)");
    TreeIndex ti(t);
    int b = t.children(t.root)[0], c = t.children(b)[0];
    CHECK(fl(ti, {c}, "c") == NodeList{c});       // own label: stop immediately
    CHECK(fl(ti, {c}, "b") == NodeList{b});
    CHECK(fl(ti, {c}, "a") == NodeList{t.root});
    CHECK(fl(ti, {c}, "z").empty());              // label absent
}

TEST_CASE("fl equals walk-up oracle and respects the touch budget") {
    std::mt19937 rng(555);
    for (int iter = 0; iter < 400; ++iter) {
        int n = 1 + static_cast<int>(rng() % 25);
        LabeledTree t = testutil::random_tree(rng, n, {"a", "b", "c"});
        TreeIndex ti(t);
        NodeList x = random_deep_set(rng, ti);
        std::string a(1, static_cast<char>('a' + rng() % 3));
        FlStats stats;
        NodeList got = fl(ti, x, a, &stats);
        NodeList expect;
        for (int v : x) {
            int u = fl_walkup(t, v, a);
            if (u != -1) expect.push_back(u);
        }
        std::sort(expect.begin(), expect.end(),
                  [&](int p, int q) { return ti.pre(p) < ti.pre(q); });
        expect = deep(ti, expect);
        CHECK(got == expect);
        CHECK(is_ordered(ti, got));
        // worklist accounting: amortized two touches per tree node plus the
        // initial elements
        CHECK(stats.touches <= 2 * (n + static_cast<long long>(x.size())));
    }
}

TEST_CASE("km_oracle fixtures") {
    CHECK(km_oracle(parse_tree("f(b,e)"), parse_tree("f(d(a,c(b)),e)")));
    LabeledTree t = parse_tree("f(d(a,c(b)),e)");
    CHECK(km_oracle(t, t));
    CHECK(!km_oracle(parse_tree("a(b)"), parse_tree("b(a)")));
    CHECK(km_oracle(parse_tree("a"), parse_tree("b(a)")));
    CHECK(!km_oracle(parse_tree("a(a,a)"), parse_tree("a(a)")));
    // order matters for ordered inclusion
    CHECK(km_oracle(parse_tree("a(b,c)"), parse_tree("a(x(b),y(c))")));
    CHECK(!km_oracle(parse_tree("a(c,b)"), parse_tree("a(x(b),y(c))")));
}

TEST_CASE("emb fixture: deep occurrence at the root only") {
    LabeledTree p = parse_tree("a(b(a),a)");
    LabeledTree t = parse_tree("a(b(a),b(a,b(a)),a(a,b))");
    NodeList r = emb(p, t);
    REQUIRE(r.size() == 1);
    CHECK(r[0] == t.root);
}

TEST_CASE("emb of a single node is the deep set of its label occurrences") {
    LabeledTree t = parse_tree("a(b(a),b(a,b(a)),a(a,b))");
    TreeIndex ti(t);
    NodeList r = emb(parse_tree("a"), t);
    NodeList expect;
    for (int pr = 0; pr < ti.n(); ++pr) {
        int v = ti.node_at_pre(pr);
        if (t.label(v) == "a") expect.push_back(v);
    }
    expect = deep(ti, expect);
    CHECK(r == expect);
}

TEST_CASE("emb nonempty iff km_oracle, exhaustively on small size-sums") {
    std::vector<std::vector<LabeledTree>> by_size(9);
    for (int n = 1; n <= 7; ++n) by_size[n] = testutil::all_trees(n, {"a", "b"});
    long long checked = 0;
    for (int np = 1; np <= 4; ++np)
        for (int nt = 1; np + nt <= 8; ++nt)
            for (const auto& p : by_size[np])
                for (const auto& t : by_size[nt]) {
                    bool e = !emb(p, t).empty();
                    bool k = km_oracle(p, t);
                    if (e != k) {
                        CAPTURE(serialize(p));
                        CAPTURE(serialize(t));
                        REQUIRE(e == k);
                    }
                    ++checked;
                }
    CHECK(checked > 50000);
}

TEST_CASE("emb vs km_oracle on random larger instances") {
    std::mt19937 rng(31415);
    for (int iter = 0; iter < 2000; ++iter) {
        LabeledTree p = testutil::random_tree(rng, 1 + rng() % 4, {"a", "b"});
        LabeledTree t = testutil::random_tree(rng, 1 + rng() % 8, {"a", "b"});
        bool e = !emb(p, t).empty();
        bool k = km_oracle(p, t);
        if (e != k) {
            CAPTURE(serialize(p));
            CAPTURE(serialize(t));
        }
        REQUIRE(e == k);
    }
}

TEST_CASE("emb results are deep and their subtrees include the pattern") {
    std::mt19937 rng(9000);
    for (int iter = 0; iter < 300; ++iter) {
        LabeledTree p = testutil::random_tree(rng, 1 + rng() % 4, {"a", "b"});
        LabeledTree t = testutil::random_tree(rng, 1 + rng() % 10, {"a", "b"});
        NodeList r = emb(p, t);
        TreeIndex ti(t);
        CHECK(is_ordered(ti, r));
        CHECK(deep(ti, r) == r);
        for (int v : r) CHECK(km_oracle(p, subtree_copy(t, v)));
    }
}

TEST_CASE("including_subtrees") {
    LabeledTree p = parse_tree("a(b(a),a)");
    LabeledTree t = parse_tree("a(b(a),b(a,b(a)),a(a,b))");
    CHECK(including_subtrees(p, t) == NodeList{t.root});

    std::mt19937 rng(271828);
    for (int iter = 0; iter < 200; ++iter) {
        LabeledTree pp = testutil::random_tree(rng, 1 + rng() % 4, {"a", "b"});
        LabeledTree tt = testutil::random_tree(rng, 1 + rng() % 8, {"a", "b"});
        NodeList inc = including_subtrees(pp, tt);
        std::set<int> inc_set(inc.begin(), inc.end());
        for (int u = 0; u < tt.size(); ++u) {
            bool expect = km_oracle(pp, subtree_copy(tt, u));
            CHECK(inc_set.count(u) == static_cast<size_t>(expect));
        }
        TreeIndex ti(tt);
        for (size_t i = 0; i + 1 < inc.size(); ++i)
            CHECK(ti.pre(inc[i]) < ti.pre(inc[i + 1]));
    }
}
