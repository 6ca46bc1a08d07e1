#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <string_view>
#include <vector>

#include "patmat/bitstring.hpp"
#include "patmat/regex.hpp"

namespace patmat {

// A simulation data structure: the four state-set operations restricted to one
// (sub)automaton. Tables are immutable after construction; the current
// state-set is held in the object, so use one instance per concurrent search.
class SimulationDs {
public:
    virtual ~SimulationDs() = default;
    virtual void clear() = 0;
    virtual void insert(int state) = 0;
    virtual bool member(int state) const = 0;
    virtual void move(int symbol) = 0;  // S := Move_A(S, symbol)
    virtual void close() = 0;           // S := Close_A(S)
};

// Reference implementation by breadth-first search; also the fallback.
class ClassicDs : public SimulationDs {
public:
    explicit ClassicDs(const Tnfa& a) : a_(&a), set_(a.n_states, 0) {}
    void clear() override { std::fill(set_.begin(), set_.end(), 0); }
    void insert(int state) override { set_[state] = 1; }
    bool member(int state) const override { return set_[state]; }
    void move(int symbol) override;
    void close() override;

private:
    const Tnfa* a_;
    std::vector<char> set_;
};

// Bit-parallel structure with the m(m+1)-bit epsilon-reachability string; one
// close() is a constant number of arithmetic passes over that string.
class SimpleDs : public SimulationDs {
public:
    explicit SimpleDs(const Tnfa& a);
    void clear() override;
    void insert(int state) override;
    bool member(int state) const override;
    void move(int symbol) override;
    void close() override;

    // the two structured-constant products, exposed for the carry-free checks
    BitString times_x(const BitString& s) const;
    BitString times_c(const BitString& z) const;
    std::vector<int> x_shifts() const { return x_shifts_; }
    std::vector<int> c_shifts() const { return c_shifts_; }

private:
    int m_;
    BitString s_;                   // current set, state rank i at position i+1
    BitString e_, i_;               // width m(m+1)
    std::vector<BitString> d_;      // per symbol, width m
    std::vector<int> x_shifts_, c_shifts_;
};

struct SeparatorStats {
    // (depth, state count) per separator-tree node
    std::vector<std::pair<int, int>> nodes;
    int depth = 0;
};

// Separator-tree structure: states mapped into [1, 3*2^d]; close() runs one
// bit-parallel pass per separator-tree level.
class SeparatorDs : public SimulationDs {
public:
    SeparatorDs(const Tnfa& a, const RegexAst& ast, SeparatorStats* stats = nullptr);
    void clear() override;
    void insert(int state) override;
    bool member(int state) const override;
    void move(int symbol) override;
    void close() override;

    int interval_length() const { return l_; }

private:
    int l_ = 0, depth_ = 0;
    std::vector<int> pos_;  // state -> mapped position (1-based)
    BitString s_;
    std::vector<BitString> xt_, et_, xf_, ef_, ik_;  // per level, width l
    std::vector<BitString> d_;                       // per symbol, width l
    std::vector<int> lit_symbols_;                   // symbols with a d_ mask
};

// Tabulated successor/closure tables shared between subautomata whose parse
// trees are label-stripped isomorphic.
struct FrShapeTables {
    std::vector<uint64_t> succ;
    std::vector<uint64_t> close;
};

class FourRussiansDs : public SimulationDs {
public:
    // Tables capped at `budget` entries per table; beyond that (or beyond 64
    // states) the structure answers by BFS and reports used_fallback().
    FourRussiansDs(const Tnfa& a, const RegexAst& ast, long long budget);
    void clear() override { s_ = 0; }
    void insert(int state) override { s_ |= 1ull << state; }
    bool member(int state) const override { return (s_ >> state) & 1; }
    void move(int symbol) override;
    void close() override;

    bool used_fallback() const { return fallback_; }
    const FrShapeTables* tables() const { return tables_.get(); }

private:
    uint64_t succ_bfs(uint64_t s) const;
    uint64_t close_bfs(uint64_t s) const;

    const Tnfa* a_;
    bool fallback_ = false;
    uint64_t s_ = 0;
    std::shared_ptr<const FrShapeTables> tables_;
    std::map<int, uint64_t> eq_;
};

// Nested decomposition of N(R) into subautomata over the alphabet extended
// with the pseudo-symbol beta, mirroring a node-disjoint cluster partition of
// the parse tree.
struct NestedDecomposition {
    struct Sub {
        RegexAst ast;  // cluster expression; pseudo-leaves are beta literals
        Tnfa tnfa;
        int parent = -1;
        std::vector<int> children;  // ordered topologically by start state
        // child i's shared (theta, phi), as states of *this* subautomaton
        std::vector<std::pair<int, int>> child_states;
        std::vector<int> global_state;  // local state -> state of N(R)
    };
    std::vector<Sub> subs;  // subs[0] is the root automaton
    int x = 0;
};

NestedDecomposition nested_decompose(const RegexAst& ast, int x);

enum class RegexEngine { Classic, Simple, Separator, FourRussians, Nested, Auto };

struct EngineOptions {
    RegexEngine engine = RegexEngine::Auto;
    int word_bits = 64;
    bool no_empty = false;
    long long fr_budget = 1 << 16;  // table entries per shape
    int nested_x = 0;               // 0 = derive from word_bits
    RegexEngine nested_backing = RegexEngine::Separator;
};

RegexEngine select_engine(int n_states, int word_bits);

std::vector<int> regex_search(const RegexAst& ast, std::string_view text,
                              const EngineOptions& opt = {});

// Driver for a nested decomposition with per-subautomaton structures; equals
// find_matches on the underlying expression.
std::vector<int> run_decomposed(const NestedDecomposition& d, std::string_view text,
                                const EngineOptions& opt);

}  // namespace patmat
