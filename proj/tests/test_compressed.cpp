#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "patmat/approx.hpp"
#include "patmat/compressed_search.hpp"
#include "patmat/regex.hpp"
#include "patmat/zl.hpp"

using namespace patmat;

namespace {

std::string random_text(std::mt19937& rng, int len, int sigma) {
    std::string s(len, '\0');
    for (char& c : s)
        c = static_cast<char>(
            'a' + std::uniform_int_distribution<int>(0, sigma - 1)(rng));
    return s;
}

RegexAst random_ast(std::mt19937& rng, int leaves, int star_budget) {
    RegexAst ast;
    std::function<int(int, int&)> gen = [&](int n, int& stars) -> int {
        if (n == 1) {
            int pick = std::uniform_int_distribution<int>(0, 5)(rng);
            if (pick == 0) return ast.add(RegexAst::Empty);
            return ast.add(RegexAst::Literal, 'a' + pick % 3);
        }
        int choice = std::uniform_int_distribution<int>(0, 2)(rng);
        if (choice == 2 && stars > 0) {
            --stars;
            return ast.add(RegexAst::Star, -1, gen(n, stars));
        }
        int l = std::uniform_int_distribution<int>(1, n - 1)(rng);
        int a = gen(l, stars);
        int b = gen(n - l, stars);
        return ast.add(choice == 0 ? RegexAst::Concat : RegexAst::Union, -1, a, b);
    };
    int stars = star_budget;
    ast.root = gen(leaves, stars);
    return ast;
}

std::string phrase_of(const CompressedText& z, int v) {
    std::string s;
    append_phrase(z, v, s);
    return s;
}

std::vector<int> taus_for(const CompressedText& z) {
    int n = std::max<int>(1, z.n_nodes() - 1);
    std::vector<int> taus = {1, 2, 4};
    if (16 < n) taus.push_back(16);
    taus.push_back(n);
    return taus;
}

}  // namespace

TEST_CASE("description table for a small text") {
    CompressedText z = zl_compress("ananasbananer", ZlScheme::ZL78);
    struct Row {
        int u, l;
        std::string rpre, rsuf;
        std::vector<int> mi, mo, matches;
    };
    std::vector<Row> expect = {
        {1, 1, "a", "a", {}, {}, {}},
        {2, 1, "n", "an", {}, {}, {}},
        {3, 2, "an", "anan", {}, {}, {}},
        {5, 2, "as", "ananas", {2}, {6}, {6}},
        {7, 1, "b", "nanasb", {}, {6, 7}, {7}},
        {8, 3, "ana", "asbana", {}, {5, 6, 7, 8, 9}, {8, 9, 10}},
        {11, 2, "ne", "banane", {}, {2, 3, 4, 5, 6, 8}, {12}},
        {13, 1, "r", "ananer", {}, {2, 3, 4, 6}, {}},
    };
    for (int tau : {1, 2, 4, 8}) {
        CAPTURE(tau);
        auto table = describe_elements(z, "base", 2, tau);
        REQUIRE(table.size() == expect.size());
        for (size_t i = 0; i < expect.size(); ++i) {
            CAPTURE(i);
            CHECK(table[i].index == static_cast<int>(i));
            CHECK(table[i].u == expect[i].u);
            CHECK(table[i].l == expect[i].l);
            CHECK(table[i].rpre == expect[i].rpre);
            CHECK(table[i].rsuf == expect[i].rsuf);
            CHECK(table[i].mi == expect[i].mi);
            CHECK(table[i].mo == expect[i].mo);
            CHECK(table[i].matches == expect[i].matches);
        }
        CHECK(capprox_search(z, "base", 2, tau) ==
              std::vector<int>{6, 7, 8, 9, 10, 12});
    }
}

TEST_CASE("description invariants") {
    std::mt19937 rng(301);
    for (int iter = 0; iter < 60; ++iter) {
        ZlScheme scheme = iter % 2 ? ZlScheme::ZLW : ZlScheme::ZL78;
        std::string q = iter % 5 == 0 ? std::string(20 + iter * 9, 'a')
                                      : random_text(rng, 20 + iter * 13, 3);
        CompressedText z = zl_compress(q, scheme);
        int m = 2 + iter % 4;
        int k = iter % m;
        std::string p = random_text(rng, m, 3);
        int h = m + k;
        auto table = describe_elements(z, p, k, 1 + iter % 5);
        int u = 1;
        std::string text = zl_decompress(z);
        for (const auto& d : table) {
            CAPTURE(d.index);
            CHECK(d.u == u);
            CHECK(d.l == z.depth(z.phrases[d.index]));
            // the relevant prefix and suffix are slices of the text
            int pre = std::min(h, d.l);
            CHECK(d.rpre == text.substr(u - 1, pre));
            int end = u - 1 + d.l;
            int suf = std::min(h, end);
            CHECK(d.rsuf == text.substr(end - suf, suf));
            // internal matches are phrase-relative and sorted
            CHECK(std::is_sorted(d.mi.begin(), d.mi.end()));
            for (int j : d.mi) {
                CHECK(j >= 1);
                CHECK(j <= d.l);
            }
            // the overlap window is short, so its match list is too
            CHECK(static_cast<int>(d.mo.size()) <= 2 * h);
            // reported positions stay inside the phrase and are distinct
            CHECK(std::is_sorted(d.matches.begin(), d.matches.end()));
            CHECK(std::adjacent_find(d.matches.begin(), d.matches.end()) ==
                  d.matches.end());
            for (int j : d.matches) {
                CHECK(j >= u);
                CHECK(j <= u + d.l - 1);
            }
            u += d.l;
        }
    }
}

TEST_CASE("approximate search equals decompress-then-scan") {
    std::mt19937 rng(302);
    for (int iter = 0; iter < 500; ++iter) {
        ZlScheme scheme = iter % 2 ? ZlScheme::ZLW : ZlScheme::ZL78;
        int len = 1 + iter % 120;
        std::string q = iter % 7 == 0 ? std::string(len, 'a')
                                      : random_text(rng, len, iter % 3 + 2);
        CompressedText z = zl_compress(q, scheme);
        int m = 1 + iter % 5;
        int k = iter % m;
        std::string p;
        if (iter % 4 == 0 && len > m) {
            // a planted pattern so matches are common
            int at = std::uniform_int_distribution<int>(0, len - m)(rng);
            p = q.substr(at, m);
        } else {
            p = random_text(rng, m, 3);
        }
        auto expect = approx_positions(p, q, k);
        for (int tau : taus_for(z)) {
            CAPTURE(iter);
            CAPTURE(tau);
            CHECK(capprox_search(z, p, k, tau) == expect);
        }
    }
}

TEST_CASE("threshold at least the pattern length is rejected") {
    CompressedText z = zl_compress("abcabc", ZlScheme::ZL78);
    CHECK_THROWS_AS(capprox_search(z, "ab", 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(describe_elements(z, "ab", 3, 1), std::invalid_argument);
    CHECK_THROWS_AS(capprox_search(z, "ab", -1, 1), std::invalid_argument);
    CHECK_THROWS_AS(capprox_search(z, "ab", 1, 0), std::invalid_argument);
}

TEST_CASE("transition sets match direct simulation") {
    std::mt19937 rng(303);
    for (int iter = 0; iter < 40; ++iter) {
        ZlScheme scheme = iter % 2 ? ZlScheme::ZLW : ZlScheme::ZL78;
        std::string q = iter % 4 == 0 ? std::string(10 + iter * 5, 'a')
                                      : random_text(rng, 10 + iter * 7, 3);
        CompressedText z = zl_compress(q, scheme);
        RegexAst ast = random_ast(rng, 1 + iter % 8, 2);
        Tnfa a = thompson(ast);
        SpecialSet c = select_special(z, 1 + iter % 4);
        auto tsets = transition_sets_at(c, z, a);
        REQUIRE(tsets.size() == c.members.size());
        for (const auto& [y, sets] : tsets) {
            REQUIRE(c.contains(y));
            REQUIRE(static_cast<int>(sets.size()) == a.n_states);
            std::string w = phrase_of(z, y);
            for (int s = 0; s < a.n_states; ++s) {
                SparseStateSet direct = close_set(a, {s, a.start});
                for (char ch : w) {
                    direct.insert(a.start);
                    direct = close_set(
                        a, move_set(a, close_set(a, direct),
                                    static_cast<unsigned char>(ch)));
                }
                CHECK(sets[s] == direct);
            }
        }
    }
}

TEST_CASE("regex search equals decompress-then-scan") {
    std::mt19937 rng(304);
    int with_matches = 0;
    for (int iter = 0; iter < 500; ++iter) {
        ZlScheme scheme = iter % 2 ? ZlScheme::ZLW : ZlScheme::ZL78;
        int len = 1 + iter % 90;
        std::string q = iter % 6 == 0 ? std::string(len, 'a')
                                      : random_text(rng, len, iter % 2 + 2);
        CompressedText z = zl_compress(q, scheme);
        RegexAst ast = random_ast(rng, 1 + iter % 8, 2);
        Tnfa a = thompson(ast);
        auto expect = find_matches(a, q);
        with_matches += !expect.empty();
        for (int tau : taus_for(z)) {
            CAPTURE(iter);
            CAPTURE(tau);
            CHECK(cregex_search(z, ast, tau) == expect);
        }
    }
    CHECK(with_matches > 100);
}

TEST_CASE("regex reports carry verifiable provenance") {
    std::mt19937 rng(305);
    for (int iter = 0; iter < 60; ++iter) {
        ZlScheme scheme = iter % 2 ? ZlScheme::ZLW : ZlScheme::ZL78;
        std::string q = random_text(rng, 10 + iter * 3, 2);
        CompressedText z = zl_compress(q, scheme);
        RegexAst ast = random_ast(rng, 2 + iter % 6, 2);
        Tnfa a = thompson(ast);
        SparseStateSet start_closure = close_set(a, {a.start});
        if (start_closure.count(a.accept)) continue;

        std::vector<CregexReport> trace;
        auto got = cregex_search(z, ast, 2, &trace);
        REQUIRE(trace.size() == got.size());

        // boundary state sets by plain simulation over the decompressed text
        std::vector<int> start_of(z.phrases.size());
        std::vector<SparseStateSet> before(z.phrases.size());
        SparseStateSet s = start_closure;
        int u = 1;
        size_t next = 0;
        std::string text = zl_decompress(z);
        for (int j = 0; j <= static_cast<int>(text.size()); ++j) {
            while (next < z.phrases.size() && u == j + 1) {
                start_of[next] = u;
                before[next] = s;
                u += z.depth(z.phrases[next]);
                ++next;
            }
            if (j == static_cast<int>(text.size())) break;
            s.insert(a.start);
            s = close_set(a, move_set(a, close_set(a, s),
                                      static_cast<unsigned char>(text[j])));
        }

        for (size_t t = 0; t < trace.size(); ++t) {
            const CregexReport& rep = trace[t];
            CHECK(rep.pos == got[t]);
            REQUIRE(rep.elem >= 0);
            REQUIRE(rep.elem < static_cast<int>(z.phrases.size()));
            CHECK(rep.pos == start_of[rep.elem] + z.depth(rep.node) - 1);
            // the chain state was live at the phrase boundary
            bool live = rep.state == a.start ||
                        before[rep.elem].count(rep.state) > 0;
            CHECK(live);
            // reading the node's phrase from that state reaches acceptance
            SparseStateSet sim = close_set(a, {rep.state, a.start});
            for (char ch : phrase_of(z, rep.node)) {
                sim.insert(start_closure.begin(), start_closure.end());
                sim = close_set(a, move_set(a, sim,
                                            static_cast<unsigned char>(ch)));
            }
            CHECK(sim.count(a.accept) == 1);
        }
    }
}

TEST_CASE("empty-matching expressions report every position") {
    CompressedText z = zl_compress("ababab", ZlScheme::ZL78);
    RegexAst ast = parse_regex("(ab)*");
    CHECK(cregex_search(z, ast, 2) == std::vector<int>{0, 1, 2, 3, 4, 5, 6});
}

TEST_CASE("live storage shrinks with the spacing parameter") {
    std::mt19937 rng(306);
    std::string q = random_text(rng, 200000, 4);
    CompressedText z = zl_compress(q, ZlScheme::ZL78);
    std::string p = random_text(rng, 8, 4);
    CapproxStats tight, loose;
    auto a = capprox_search(z, p, 1, 1, &tight);
    auto b = capprox_search(z, p, 1, 16, &loose);
    CHECK(a == b);
    CHECK(loose.peak_live > 0);
    CHECK(tight.peak_live >= 4 * loose.peak_live);
}
