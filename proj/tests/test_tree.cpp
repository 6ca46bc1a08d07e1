#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "patmat/tree.hpp"
#include "test_util.hpp"

using namespace patmat;

TEST_CASE("parse and serialize round-trip") {
    for (const char* s : {"a", "f(b,e)", "a(b(c))", "f(d(a,c(b)),e)",
                          "a(b,c,d)", "x(y(z(q)),w,v(u,t))"}) {
        LabeledTree t = parse_tree(s);
        CHECK(serialize(t) == s);
        LabeledTree t2 = parse_tree(serialize(t));
        CHECK(serialize(t2) == s);
    }
}

TEST_CASE("parse fixture tree structure") {
    LabeledTree t = parse_tree("f(d(a,c(b)),e)");
    CHECK(t.size() == 6);
    CHECK(t.label(t.root) == "f");
    REQUIRE(t.children(t.root).size() == 2);
    int d = t.children(t.root)[0], e = t.children(t.root)[1];
    CHECK(t.label(d) == "d");
    CHECK(t.label(e) == "e");
    REQUIRE(t.children(d).size() == 2);
    CHECK(t.label(t.children(d)[0]) == "a");
    CHECK(t.label(t.children(d)[1]) == "c");
}

TEST_CASE("parse errors carry byte offsets") {
    CHECK_THROWS_AS(parse_tree(""), ParseError);
    CHECK_THROWS_AS(parse_tree("   "), ParseError);
    CHECK_THROWS_AS(parse_tree("a(b,)"), ParseError);
    CHECK_THROWS_AS(parse_tree("a(b"), ParseError);
    CHECK_THROWS_AS(parse_tree("a)b"), ParseError);
    CHECK_THROWS_AS(parse_tree("a b"), ParseError);
    try {
        parse_tree("a(b,)");
        FAIL("expected throw");
    } catch (const ParseError& e) {
        CHECK(e.offset == 4);
    }
}

TEST_CASE("quoted labels") {
    LabeledTree t;
    int r = t.add_node("has space");
    t.add_node("a,b", r);
    t.add_node("", r);
    std::string s = serialize(t);
    LabeledTree u = parse_tree(s);
    CHECK(u.size() == 3);
    CHECK(u.label(u.root) == "has space");
    CHECK(u.label(u.children(u.root)[0]) == "a,b");
    CHECK(u.label(u.children(u.root)[1]) == "");
}

TEST_CASE("index on chain and star") {
    LabeledTree chain = parse_tree("a(b(c))");
    TreeIndex ci(chain);
    int a = chain.root, b = chain.children(a)[0], c = chain.children(b)[0];
    CHECK(ci.nca(b, c) == b);
    CHECK(ci.depth(c) == 2);
    CHECK(ci.size(a) == 3);

    LabeledTree star = parse_tree("a(b,c,d)");
    TreeIndex si(star);
    CHECK(si.pre(star.root) == 0);
    std::vector<std::string> pre_labels, post_labels;
    for (int p = 0; p < 4; ++p) {
        pre_labels.push_back(star.label(si.node_at_pre(p)));
        post_labels.push_back(star.label(si.node_at_post(p)));
    }
    CHECK(pre_labels == std::vector<std::string>{"a", "b", "c", "d"});
    CHECK(post_labels == std::vector<std::string>{"b", "c", "d", "a"});
}

TEST_CASE("nca fixture") {
    LabeledTree t = parse_tree("f(d(a,c(b)),e)");
    TreeIndex idx(t);
    int b = -1, e = -1;
    for (int v = 0; v < t.size(); ++v) {
        if (t.label(v) == "b") b = v;
        if (t.label(v) == "e") e = v;
    }
    CHECK(t.label(idx.nca(b, e)) == "f");
}

namespace {

int nca_oracle(const LabeledTree& t, int v, int w) {
    std::vector<char> on_path(t.size(), 0);
    for (int x = v; x != -1; x = t.parent(x)) on_path[x] = 1;
    for (int x = w; x != -1; x = t.parent(x))
        if (on_path[x]) return x;
    return -1;
}

bool ancestor_oracle(const LabeledTree& t, int v, int w) {
    for (int x = w; x != -1; x = t.parent(x))
        if (x == v) return true;
    return false;
}

}  // namespace

TEST_CASE("index properties vs walk-up oracles on random trees") {
    std::mt19937 rng(12345);
    for (int iter = 0; iter < 60; ++iter) {
        int n = 1 + static_cast<int>(rng() % 30);
        LabeledTree t = testutil::random_tree(rng, n, {"a", "b", "c"});
        TreeIndex idx(t);

        std::vector<char> seen_pre(n, 0), seen_post(n, 0);
        for (int v = 0; v < n; ++v) {
            CHECK(idx.pre(v) >= 0);
            CHECK(idx.pre(v) < n);
            seen_pre[idx.pre(v)] = 1;
            seen_post[idx.post(v)] = 1;
        }
        CHECK(std::count(seen_pre.begin(), seen_pre.end(), 1) == n);
        CHECK(std::count(seen_post.begin(), seen_post.end(), 1) == n);

        for (int v = 0; v < n; ++v)
            for (int w = 0; w < n; ++w) {
                CHECK(idx.is_ancestor(v, w) == ancestor_oracle(t, v, w));
                CHECK(idx.nca(v, w) == nca_oracle(t, v, w));
            }
    }
}

TEST_CASE("nca is the deepest common ancestor") {
    std::mt19937 rng(777);
    LabeledTree t = testutil::random_tree(rng, 60, {"a"});
    TreeIndex idx(t);
    for (int trial = 0; trial < 500; ++trial) {
        int v = rng() % 60, w = rng() % 60;
        int u = idx.nca(v, w);
        CHECK(idx.is_ancestor(u, v));
        CHECK(idx.is_ancestor(u, w));
        for (int x = 0; x < 60; ++x)
            if (idx.is_ancestor(x, v) && idx.is_ancestor(x, w))
                CHECK(idx.depth(x) <= idx.depth(u));
    }
}

namespace {

patmat::NodeList deep_oracle(const TreeIndex& idx, patmat::NodeList x) {
    std::sort(x.begin(), x.end(), [&](int a, int b) { return idx.pre(a) < idx.pre(b); });
    x.erase(std::unique(x.begin(), x.end()), x.end());
    patmat::NodeList out;
    for (int v : x) {
        bool has_desc = false;
        for (int w : x)
            if (w != v && idx.is_proper_ancestor(v, w)) has_desc = true;
        if (!has_desc) out.push_back(v);
    }
    return out;
}

}  // namespace

TEST_CASE("deep basics") {
    LabeledTree t = parse_tree("a(b(c),d)");
    TreeIndex idx(t);
    CHECK(deep(idx, {t.root}) == NodeList{t.root});
    int b = t.children(t.root)[0], c = t.children(b)[0];
    // a parent together with its child: only the child is deep
    NodeList r = deep(idx, {b, c});
    CHECK(r == NodeList{c});
}

TEST_CASE("deep equals brute-force antichain filter, is idempotent") {
    std::mt19937 rng(999);
    for (int iter = 0; iter < 300; ++iter) {
        int n = 1 + static_cast<int>(rng() % 12);
        LabeledTree t = testutil::random_tree(rng, n, {"a", "b"});
        TreeIndex idx(t);
        NodeList x;
        int k = static_cast<int>(rng() % (n + 1));
        for (int i = 0; i < k; ++i) x.push_back(rng() % n);
        // deep() accepts any multiset; order input by preorder so it is
        // semiordered as the contract requires
        std::sort(x.begin(), x.end(),
                  [&](int a, int b) { return idx.pre(a) < idx.pre(b); });
        REQUIRE(is_semiordered(idx, x));
        NodeList got = deep(idx, x);
        CHECK(got == deep_oracle(idx, x));
        CHECK(is_ordered(idx, got));
        CHECK(deep(idx, got) == got);
        // every removed node has a proper descendant in x
        for (int v : x) {
            if (std::find(got.begin(), got.end(), v) != got.end()) continue;
            bool has = false;
            for (int w : x)
                if (idx.is_proper_ancestor(v, w)) has = true;
            CHECK(has);
        }
    }
}
