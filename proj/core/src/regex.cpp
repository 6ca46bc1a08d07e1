#include "patmat/regex.hpp"

#include <algorithm>

namespace patmat {

namespace {

struct Parser {
    const std::string& text;
    size_t pos = 0;
    RegexAst ast;

    explicit Parser(const std::string& t) : text(t) {}

    [[noreturn]] void fail(const std::string& msg) { throw RegexParseError(msg, pos); }

    bool done() const { return pos == text.size(); }
    char peek() const { return text[pos]; }

    int parse() {
        int r = parse_union();
        if (!done()) fail("unexpected character");
        return r;
    }

    int parse_union() {
        int left = parse_concat();
        while (!done() && peek() == '|') {
            ++pos;
            int right = parse_concat();
            left = ast.add(RegexAst::Union, -1, left, right);
        }
        return left;
    }

    int parse_concat() {
        int left = parse_repeat();
        while (!done() && peek() != '|' && peek() != ')') {
            int right = parse_repeat();
            left = ast.add(RegexAst::Concat, -1, left, right);
        }
        return left;
    }

    int parse_repeat() {
        int node = parse_atom();
        while (!done() && (peek() == '*' || peek() == '+' || peek() == '?')) {
            char op = text[pos++];
            if (op == '*') {
                node = ast.add(RegexAst::Star, -1, node);
            } else if (op == '+') {  // XX*
                int copy = duplicate(node);
                int star = ast.add(RegexAst::Star, -1, copy);
                node = ast.add(RegexAst::Concat, -1, node, star);
            } else {  // X|empty
                int empty = ast.add(RegexAst::Empty);
                node = ast.add(RegexAst::Union, -1, node, empty);
            }
        }
        return node;
    }

    int parse_atom() {
        if (done()) fail("expected expression");
        char c = peek();
        switch (c) {
            case '|':
                fail("empty union branch");
            case '*':
            case '+':
            case '?':
                fail("dangling repetition operator");
            case ')':
                fail("unmatched ')'");
            case '(': {
                ++pos;
                int inner = parse_union();
                if (done() || peek() != ')') fail("missing ')'");
                ++pos;
                return inner;
            }
            case '[':
                return parse_class();
            case '\\': {
                ++pos;
                if (done()) fail("trailing backslash");
                return ast.add(RegexAst::Literal,
                               static_cast<unsigned char>(text[pos++]));
            }
            default:
                ++pos;
                return ast.add(RegexAst::Literal, static_cast<unsigned char>(c));
        }
    }

    int parse_class() {
        ++pos;  // '['
        bool negate = false;
        if (!done() && peek() == '^') {
            negate = true;
            ++pos;
        }
        std::vector<bool> in(256, false);
        bool empty = true;
        while (!done() && peek() != ']') {
            unsigned char lo = text[pos++];
            if (lo == '\\') {
                if (done()) fail("trailing backslash in class");
                lo = text[pos++];
            }
            unsigned char hi = lo;
            if (!done() && peek() == '-' && pos + 1 < text.size() &&
                text[pos + 1] != ']') {
                pos += 1;
                hi = text[pos++];
                if (hi == '\\') {
                    if (done()) fail("trailing backslash in class");
                    hi = text[pos++];
                }
                if (hi < lo) fail("inverted range in class");
            }
            for (int b = lo; b <= hi; ++b) in[b] = true;
            empty = false;
        }
        if (done()) fail("missing ']'");
        ++pos;  // ']'
        if (empty && !negate) fail("empty character class");
        if (negate) in.flip();
        int node = -1;
        for (int b = 0; b < 256; ++b) {
            if (!in[b]) continue;
            int leaf = ast.add(RegexAst::Literal, b);
            node = node < 0 ? leaf : ast.add(RegexAst::Union, -1, node, leaf);
        }
        if (node < 0) fail("class matches nothing");
        return node;
    }

    int duplicate(int node) {
        const auto n = ast.nodes[node];
        int l = n.left >= 0 ? duplicate(n.left) : -1;
        int r = n.right >= 0 ? duplicate(n.right) : -1;
        return ast.add(n.kind, n.symbol, l, r);
    }
};

}  // namespace

RegexAst parse_regex(const std::string& text) {
    if (text.empty()) throw RegexParseError("empty expression", 0);
    Parser p(text);
    p.ast.root = p.parse();
    return p.ast;
}

namespace {

struct Builder {
    const RegexAst& ast;
    Tnfa a;

    explicit Builder(const RegexAst& t) : ast(t) {
        a.node_states.assign(ast.size(), {-1, -1});
    }

    int new_state(int symbol) {
        a.state_symbol.push_back(symbol);
        return a.n_states++;
    }

    void edge(int from, int to, int symbol, bool back = false) {
        a.transitions.push_back({from, to, symbol, back});
    }

    // returns (theta, phi); states are emitted in topological order
    std::pair<int, int> build(int v) {
        const auto& node = ast.nodes[v];
        std::pair<int, int> r;
        switch (node.kind) {
            case RegexAst::Literal: {
                int t = new_state(kEpsilon);
                int f = new_state(node.symbol);
                edge(t, f, node.symbol);
                r = {t, f};
                break;
            }
            case RegexAst::Empty: {
                int t = new_state(kEpsilon);
                int f = new_state(kEpsilon);
                edge(t, f, kEpsilon);
                r = {t, f};
                break;
            }
            case RegexAst::Concat: {
                int t = new_state(kEpsilon);
                auto s = build(node.left);
                auto u = build(node.right);
                int f = new_state(kEpsilon);
                edge(t, s.first, kEpsilon);
                edge(s.second, u.first, kEpsilon);
                edge(u.second, f, kEpsilon);
                r = {t, f};
                break;
            }
            case RegexAst::Union: {
                int t = new_state(kEpsilon);
                auto s = build(node.left);
                auto u = build(node.right);
                int f = new_state(kEpsilon);
                edge(t, s.first, kEpsilon);
                edge(t, u.first, kEpsilon);
                edge(s.second, f, kEpsilon);
                edge(u.second, f, kEpsilon);
                r = {t, f};
                break;
            }
            case RegexAst::Star: {
                int t = new_state(kEpsilon);
                auto s = build(node.left);
                int f = new_state(kEpsilon);
                edge(t, s.first, kEpsilon);
                edge(t, f, kEpsilon);
                edge(s.second, f, kEpsilon);
                edge(s.second, s.first, kEpsilon, true);
                r = {t, f};
                break;
            }
        }
        a.node_states[v] = r;
        return r;
    }
};

}  // namespace

Tnfa thompson(const RegexAst& ast) {
    Builder b(ast);
    auto [theta, phi] = b.build(ast.root);
    Tnfa a = std::move(b.a);
    a.start = theta;
    a.accept = phi;
    a.eps_out.assign(a.n_states, {});
    a.symbol_source.assign(a.n_states, -1);
    for (const auto& t : a.transitions) {
        if (t.symbol == kEpsilon)
            a.eps_out[t.from].push_back(t.to);
        else
            a.symbol_source[t.to] = t.from;
    }
    return a;
}

namespace {

void close_inplace(const Tnfa& a, std::vector<char>& s) {
    std::vector<int> work;
    for (int v = 0; v < a.n_states; ++v)
        if (s[v]) work.push_back(v);
    while (!work.empty()) {
        int v = work.back();
        work.pop_back();
        for (int u : a.eps_out[v])
            if (!s[u]) {
                s[u] = 1;
                work.push_back(u);
            }
    }
}

std::vector<char> move_dense(const Tnfa& a, const std::vector<char>& s, int symbol) {
    std::vector<char> r(a.n_states, 0);
    for (int v = 0; v < a.n_states; ++v)
        if (a.state_symbol[v] == symbol && s[a.symbol_source[v]]) r[v] = 1;
    return r;
}

}  // namespace

SparseStateSet move_set(const Tnfa& a, const SparseStateSet& s, int symbol) {
    SparseStateSet r;
    for (int v = 0; v < a.n_states; ++v)
        if (a.state_symbol[v] == symbol && s.count(a.symbol_source[v])) r.insert(v);
    return r;
}

SparseStateSet close_set(const Tnfa& a, const SparseStateSet& s) {
    std::vector<char> dense(a.n_states, 0);
    for (int v : s) dense[v] = 1;
    close_inplace(a, dense);
    SparseStateSet r;
    for (int v = 0; v < a.n_states; ++v)
        if (dense[v]) r.insert(v);
    return r;
}

SparseStateSet step(const Tnfa& a, const SparseStateSet& s, int symbol) {
    return close_set(a, move_set(a, s, symbol));
}

bool accepts(const Tnfa& a, std::string_view q) {
    std::vector<char> s(a.n_states, 0);
    s[a.start] = 1;
    close_inplace(a, s);
    for (char c : q) {
        s = move_dense(a, s, static_cast<unsigned char>(c));
        close_inplace(a, s);
    }
    return s[a.accept];
}

std::vector<int> find_matches(const Tnfa& a, std::string_view q, bool no_empty) {
    std::vector<char> theta_closure(a.n_states, 0);
    theta_closure[a.start] = 1;
    close_inplace(a, theta_closure);
    bool empty_matches = theta_closure[a.accept] && !no_empty;

    std::vector<int> out;
    if (empty_matches) out.push_back(0);
    std::vector<char> s = theta_closure;
    for (size_t j = 0; j < q.size(); ++j) {
        s = move_dense(a, s, static_cast<unsigned char>(q[j]));
        close_inplace(a, s);
        if (s[a.accept] || empty_matches) out.push_back(static_cast<int>(j) + 1);
        for (int v = 0; v < a.n_states; ++v)
            if (theta_closure[v]) s[v] = 1;
    }
    return out;
}

}  // namespace patmat
