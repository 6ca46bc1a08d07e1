#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace patmat {

// Symbols are bytes 0..255; kBeta is the reserved pseudo-symbol used when an
// automaton is cut into nested subautomata.
inline constexpr int kBeta = 256;
inline constexpr int kEpsilon = -1;

struct RegexParseError : std::runtime_error {
    size_t offset;
    RegexParseError(const std::string& msg, size_t off)
        : std::runtime_error(msg + " at byte " + std::to_string(off)), offset(off) {}
};

// Binary parse tree over {literal, concat, union, star}. Sugar (classes, +, ?)
// is expanded by the parser; the empty-string leaf backs `?`.
struct RegexAst {
    enum Kind : uint8_t { Literal, Empty, Concat, Union, Star };
    struct Node {
        Kind kind;
        int symbol = -1;  // for Literal (byte value or kBeta)
        int left = -1, right = -1;
    };
    std::vector<Node> nodes;
    int root = -1;

    int size() const { return static_cast<int>(nodes.size()); }

    int add(Kind kind, int symbol = -1, int left = -1, int right = -1) {
        nodes.push_back({kind, symbol, left, right});
        return size() - 1;
    }
};

RegexAst parse_regex(const std::string& text);

// Thompson automaton. States are numbered in topological order ignoring back
// transitions; the endpoints of every symbol transition are consecutive.
struct Tnfa {
    struct Transition {
        int from, to;
        int symbol;  // kEpsilon or a symbol value
        bool back;
    };

    int n_states = 0;
    int start = -1, accept = -1;
    std::vector<Transition> transitions;
    std::vector<int> state_symbol;  // incoming-transition label per state, or kEpsilon
    // (theta, phi) state pair per parse-tree node of the source AST
    std::vector<std::pair<int, int>> node_states;

    std::vector<std::vector<int>> eps_out;   // epsilon adjacency by state
    std::vector<int> symbol_source;          // for symbol-states: the single source
};

Tnfa thompson(const RegexAst& ast);

// Classic state-set simulation; the correctness oracle for all other engines.
using SparseStateSet = std::set<int>;

SparseStateSet move_set(const Tnfa& a, const SparseStateSet& s, int symbol);
SparseStateSet close_set(const Tnfa& a, const SparseStateSet& s);
SparseStateSet step(const Tnfa& a, const SparseStateSet& s, int symbol);

bool accepts(const Tnfa& a, std::string_view q);

// End positions (0..n) of substrings of q matching the expression. Position j
// is reported when some q[i..j-1] with i <= j is in the language; with
// no_empty, the empty substring does not count.
std::vector<int> find_matches(const Tnfa& a, std::string_view q,
                              bool no_empty = false);

}  // namespace patmat
