#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string_view>
#include <vector>

#include "patmat/regex.hpp"
#include "patmat/regex_engines.hpp"

namespace patmat {

// Unit-cost string edit distance, row-compressed dynamic program.
int edit_distance(std::string_view s, std::string_view t);

// Alphabet-independent code vectors for a pair of substrings: an entry is the
// rank of the character among those occurring in both strings, or 0 for a
// character private to one of them. Two positions hold equal characters of the
// shared alphabet iff their codes are equal and positive.
std::pair<std::vector<int>, std::vector<int>> shared_rank_codes(
    std::string_view a, std::string_view b);

// Edit distance evaluated cell-wise: the matrix is cut into x-by-x cells,
// grouped into macro cells of y-by-y cells for code-vector computation, and
// each cell interior is memoized keyed by its code vectors and boundary
// deltas. Falls back to the plain dynamic program (reported through
// `used_fallback`) when the cell encoding does not fit `word_bits`.
int edit_distance_fr(std::string_view s, std::string_view t, int x, int y,
                     bool* used_fallback = nullptr, int word_bits = 64);

// All ending positions j (1-based) with min_i gamma(p, q[i..j]) <= k, from the
// zero-top-row dynamic program. Requires k < |p|.
std::vector<int> approx_positions(std::string_view p, std::string_view q, int k);

// Two-pass dynamic program over the automaton of a regular expression,
// evaluated chunk-wise on a nested decomposition. Values saturate at d+1.
class ApproxRegexSim {
public:
    ApproxRegexSim(const RegexAst& ast, int d, int x = 16,
                   long long memo_budget = 1 << 16);

    // ending positions j (0..n) with a substring match within distance d
    std::vector<int> substring_matches(std::string_view q);
    // whole-string: q within distance d of some string in the language
    bool accepts_within(std::string_view q);

    const NestedDecomposition& decomposition() const { return dec_; }
    // per-state chunk index within a subautomaton, or -1 for the start state
    // and the accepting states of children
    const std::vector<int>& chunk_index(int sub) const {
        return eval_[sub].chunk_of;
    }
    int n_chunks(int sub) const {
        return static_cast<int>(eval_[sub].after.size());
    }
    bool memo_enabled() const { return memo_enabled_; }

private:
    struct SubEval {
        // chunk i covers the state interval (after[i], upto[i]]
        std::vector<int> after, upto;
        std::vector<int> chunk_of;
        std::vector<std::vector<int>> fwd_pre;   // forward eps predecessors
        std::vector<std::vector<int>> back_pre;  // back-edge predecessors
    };

    void init_values();
    int next1(int sub, int b, int symbol);
    int next2(int sub, int b);
    void pass1_chunk(int sub, int chunk, int symbol);
    void pass2_chunk(int sub, int chunk);
    void step1(int sub, int v, int symbol);
    void step2(int sub, int v);
    uint64_t pack(const std::vector<int>& v) const;
    void unpack(uint64_t r, std::vector<int>& v) const;
    std::vector<int> run(std::string_view q, bool substring);

    NestedDecomposition dec_;
    int d_;
    int bits_ = 0;
    bool memo_enabled_ = false;
    std::vector<SubEval> eval_;
    std::vector<std::vector<int>> val_;  // current values per sub
    std::vector<std::vector<int>> old_;  // values at the previous position
    std::map<std::array<uint64_t, 3>, uint64_t> memo1_, memo2_;
};

std::vector<int> approx_regex(const RegexAst& ast, std::string_view q, int d);
bool approx_regex_accepts(const RegexAst& ast, std::string_view q, int d);

}  // namespace patmat
