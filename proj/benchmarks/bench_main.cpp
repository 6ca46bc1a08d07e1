#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "patmat/approx.hpp"
#include "patmat/compressed_search.hpp"
#include "patmat/regex_engines.hpp"
#include "patmat/subseq.hpp"
#include "patmat/tps.hpp"
#include "patmat/tree_distance.hpp"
#include "patmat/zl.hpp"
#include "../tests/test_util.hpp"

using namespace patmat;

namespace {

std::string random_text(size_t len, int sigma, unsigned seed = 1) {
    std::mt19937 rng(seed);
    std::string s(len, '\0');
    for (char& c : s)
        c = static_cast<char>(
            'a' + std::uniform_int_distribution<int>(0, sigma - 1)(rng));
    return s;
}

RegexAst literal_chain(int m) {
    // (abc)* concatenated with itself until the automaton has ~m states
    RegexAst ast;
    std::mt19937 rng(7);
    int root = ast.add(RegexAst::Literal, 'a');
    for (int i = 1; i < m / 2; ++i) {
        int leaf = ast.add(RegexAst::Literal, 'a' + static_cast<int>(rng() % 3));
        if (i % 5 == 0) leaf = ast.add(RegexAst::Star, -1, leaf);
        root = ast.add(RegexAst::Concat, -1, root, leaf);
    }
    ast.root = root;
    return ast;
}

void bm_regex(benchmark::State& state, RegexEngine engine) {
    RegexAst ast = literal_chain(static_cast<int>(state.range(0)));
    std::string q = random_text(1 << 17, 3);
    EngineOptions opt;
    opt.engine = engine;
    for (auto _ : state)
        benchmark::DoNotOptimize(regex_search(ast, q, opt));
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(q.size()));
}

void bm_zl_compress(benchmark::State& state) {
    std::string q = random_text(1 << 21, static_cast<int>(state.range(0)));
    ZlScheme scheme = state.range(1) ? ZlScheme::ZLW : ZlScheme::ZL78;
    for (auto _ : state)
        benchmark::DoNotOptimize(zl_compress(q, scheme));
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(q.size()));
}

void bm_zl_decompress(benchmark::State& state) {
    std::string q = random_text(1 << 21, static_cast<int>(state.range(0)));
    CompressedText z = zl_compress(q, ZlScheme::ZL78);
    for (auto _ : state)
        benchmark::DoNotOptimize(zl_decompress(z));
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(q.size()));
}

void bm_capprox(benchmark::State& state) {
    std::string q = random_text(1 << 21, 4);
    CompressedText z = zl_compress(q, ZlScheme::ZL78);
    std::string p = random_text(8, 4, 99);
    int tau = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(capprox_search(z, p, 1, tau));
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(q.size()));
}

void bm_cregex(benchmark::State& state) {
    std::string q = random_text(1 << 19, 4);
    CompressedText z = zl_compress(q, ZlScheme::ZL78);
    RegexAst ast;
    // (ab|c)*d
    int a = ast.add(RegexAst::Literal, 'a');
    int b = ast.add(RegexAst::Literal, 'b');
    int ab = ast.add(RegexAst::Concat, -1, a, b);
    int c = ast.add(RegexAst::Literal, 'c');
    int u = ast.add(RegexAst::Union, -1, ab, c);
    int st = ast.add(RegexAst::Star, -1, u);
    int d = ast.add(RegexAst::Literal, 'd');
    ast.root = ast.add(RegexAst::Concat, -1, st, d);
    int tau = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(cregex_search(z, ast, tau));
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(q.size()));
}

void bm_edit_distance(benchmark::State& state) {
    std::string s = random_text(state.range(0), 26, 3);
    std::string t = random_text(state.range(0), 26, 4);
    for (auto _ : state)
        benchmark::DoNotOptimize(edit_distance(s, t));
}

void bm_edit_distance_fr(benchmark::State& state) {
    std::string s = random_text(state.range(0), 26, 3);
    std::string t = random_text(state.range(0), 26, 4);
    for (auto _ : state)
        benchmark::DoNotOptimize(edit_distance_fr(s, t, 3, 64));
}

void bm_tree_distance(benchmark::State& state) {
    std::mt19937 rng(11);
    LabeledTree t1 = testutil::random_tree(rng, static_cast<int>(state.range(0)),
                                           {"a", "b", "c"});
    LabeledTree t2 = testutil::random_tree(rng, static_cast<int>(state.range(0)),
                                           {"a", "b", "c"});
    for (auto _ : state)
        benchmark::DoNotOptimize(zhang_shasha(t1, t2, CostFunction::unit()));
}

void bm_tps(benchmark::State& state, bool fast) {
    std::mt19937 rng(13);
    LabeledTree p = testutil::random_tree(rng, 12, {"a", "b"});
    LabeledTree t =
        testutil::random_tree(rng, static_cast<int>(state.range(0)), {"a", "b"});
    for (auto _ : state) {
        if (fast)
            benchmark::DoNotOptimize(tps_fast(p, t, 4));
        else
            benchmark::DoNotOptimize(tps_simple(p, t));
    }
}

void bm_subseq_query(benchmark::State& state) {
    std::string text = random_text(1 << 20, static_cast<int>(state.range(0)));
    SubseqIndex ix = build_index(text);
    std::string p = random_text(64, static_cast<int>(state.range(0)), 21);
    for (auto _ : state)
        benchmark::DoNotOptimize(is_subsequence(ix, p));
}

BENCHMARK_CAPTURE(bm_regex, classic, RegexEngine::Classic)->Arg(16)->Arg(48);
BENCHMARK_CAPTURE(bm_regex, bitpar, RegexEngine::Simple)->Arg(16)->Arg(48);
BENCHMARK_CAPTURE(bm_regex, separator, RegexEngine::Separator)->Arg(16)->Arg(48);
BENCHMARK_CAPTURE(bm_regex, tabulated, RegexEngine::FourRussians)
    ->Arg(16)
    ->Arg(48);
BENCHMARK_CAPTURE(bm_regex, nested, RegexEngine::Nested)->Arg(16)->Arg(48)->Arg(120);
BENCHMARK(bm_zl_compress)->Args({2, 0})->Args({26, 0})->Args({26, 1});
BENCHMARK(bm_zl_decompress)->Arg(2)->Arg(26);
BENCHMARK(bm_capprox)->Arg(1)->Arg(4)->Arg(16);
BENCHMARK(bm_cregex)->Arg(1)->Arg(4)->Arg(16);
BENCHMARK(bm_edit_distance)->Arg(1000)->Arg(3000);
BENCHMARK(bm_edit_distance_fr)->Arg(1000)->Arg(3000);
BENCHMARK(bm_tree_distance)->Arg(50)->Arg(150);
BENCHMARK_CAPTURE(bm_tps, simple, false)->Arg(200)->Arg(1000);
BENCHMARK_CAPTURE(bm_tps, micro, true)->Arg(200)->Arg(1000);
BENCHMARK(bm_subseq_query)->Arg(4)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
