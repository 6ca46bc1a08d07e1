#include "patmat/tree.hpp"

#include <algorithm>
#include <cctype>

namespace patmat {

int LabeledTree::add_node(std::string label, int parent) {
    int id = static_cast<int>(nodes.size());
    Node n;
    n.label = std::move(label);
    n.parent = parent;
    nodes.push_back(std::move(n));
    if (parent < 0) {
        if (root >= 0) throw std::invalid_argument("tree already has a root");
        root = id;
    } else {
        nodes[parent].children.push_back(id);
    }
    return id;
}

void LabeledTree::validate() const {
    if (nodes.empty()) {
        if (root != -1) throw std::invalid_argument("empty tree with a root");
        return;
    }
    if (root < 0 || root >= size() || nodes[root].parent != -1)
        throw std::invalid_argument("bad root");
    int seen = 0;
    std::vector<int> stack = {root};
    std::vector<char> visited(nodes.size(), 0);
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (visited[v]) throw std::invalid_argument("cycle or shared node");
        visited[v] = 1;
        ++seen;
        for (int c : nodes[v].children) {
            if (c < 0 || c >= size() || nodes[c].parent != v)
                throw std::invalid_argument("inconsistent parent link");
            stack.push_back(c);
        }
    }
    if (seen != size()) throw std::invalid_argument("unreachable nodes");
}

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos); }

    std::string parse_label() {
        skip_ws();
        if (pos >= s.size()) fail("expected label, got end of input");
        if (s[pos] == '"') {
            size_t start = pos++;
            std::string out;
            while (pos < s.size() && s[pos] != '"') {
                if (s[pos] == '\\') {
                    if (pos + 1 >= s.size()) fail("unterminated escape");
                    ++pos;
                }
                out += s[pos++];
            }
            if (pos >= s.size()) {
                pos = start;
                fail("unterminated quoted label");
            }
            ++pos;  // closing quote
            return out;
        }
        size_t start = pos;
        while (pos < s.size() && s[pos] != '(' && s[pos] != ')' && s[pos] != ',' &&
               s[pos] != '"' && !std::isspace(static_cast<unsigned char>(s[pos])))
            ++pos;
        if (pos == start) fail("expected label");
        return s.substr(start, pos - start);
    }

    int parse_node(LabeledTree& t, int parent) {
        std::string label = parse_label();
        int id = t.add_node(std::move(label), parent);
        skip_ws();
        if (pos < s.size() && s[pos] == '(') {
            ++pos;
            parse_node(t, id);
            skip_ws();
            while (pos < s.size() && s[pos] == ',') {
                ++pos;
                parse_node(t, id);
                skip_ws();
            }
            if (pos >= s.size() || s[pos] != ')') fail("expected ',' or ')'");
            ++pos;
        }
        return id;
    }
};

bool label_needs_quoting(const std::string& label) {
    if (label.empty()) return true;
    for (char c : label)
        if (c == '(' || c == ')' || c == ',' || c == '"' || c == '\\' ||
            std::isspace(static_cast<unsigned char>(c)))
            return true;
    return false;
}

void serialize_node(const LabeledTree& t, int v, std::string& out) {
    const std::string& label = t.label(v);
    if (label_needs_quoting(label)) {
        out += '"';
        for (char c : label) {
            if (c == '"' || c == '\\') out += '\\';
            out += c;
        }
        out += '"';
    } else {
        out += label;
    }
    if (!t.children(v).empty()) {
        out += '(';
        bool first = true;
        for (int c : t.children(v)) {
            if (!first) out += ',';
            first = false;
            serialize_node(t, c, out);
        }
        out += ')';
    }
}

}  // namespace

LabeledTree parse_tree(const std::string& text) {
    Parser p(text);
    p.skip_ws();
    if (p.pos >= text.size()) throw ParseError("empty input", 0);
    LabeledTree t;
    p.parse_node(t, -1);
    p.skip_ws();
    if (p.pos < text.size()) p.fail("trailing input after tree");
    return t;
}

std::string serialize(const LabeledTree& t) {
    if (t.empty()) return "";
    std::string out;
    serialize_node(t, t.root, out);
    return out;
}

TreeIndex::TreeIndex(const LabeledTree& t) : t_(&t), n_(t.size()) {
    t.validate();
    pre_.assign(n_, -1);
    post_.assign(n_, -1);
    depth_.assign(n_, 0);
    size_.assign(n_, 1);
    pre_to_node_.assign(n_, -1);
    post_to_node_.assign(n_, -1);
    if (n_ == 0) return;

    int pre_counter = 0, post_counter = 0;
    // Iterative DFS: (node, next-child-index).
    std::vector<std::pair<int, size_t>> stack;
    stack.emplace_back(t.root, 0);
    pre_[t.root] = pre_counter++;
    pre_to_node_[pre_[t.root]] = t.root;
    while (!stack.empty()) {
        auto& [v, ci] = stack.back();
        if (ci < t.children(v).size()) {
            int c = t.children(v)[ci++];
            depth_[c] = depth_[v] + 1;
            pre_[c] = pre_counter++;
            pre_to_node_[pre_[c]] = c;
            stack.emplace_back(c, 0);
        } else {
            post_[v] = post_counter++;
            post_to_node_[post_[v]] = v;
            if (t.parent(v) >= 0) size_[t.parent(v)] += size_[v];
            stack.pop_back();
        }
    }

    int levels = 1;
    while ((1 << levels) < n_) ++levels;
    up_.assign(levels, std::vector<int>(n_, -1));
    for (int v = 0; v < n_; ++v) up_[0][v] = t.parent(v);
    for (int k = 1; k < levels; ++k)
        for (int v = 0; v < n_; ++v)
            up_[k][v] = up_[k - 1][v] < 0 ? -1 : up_[k - 1][up_[k - 1][v]];
}

int TreeIndex::ancestor_at(int v, int k) const {
    for (int bit = 0; k != 0 && v >= 0; ++bit, k >>= 1)
        if (k & 1) v = bit < static_cast<int>(up_.size()) ? up_[bit][v] : -1;
    return v;
}

int TreeIndex::nca(int v, int w) const {
    if (is_ancestor(v, w)) return v;
    if (is_ancestor(w, v)) return w;
    // Lift v to just below the common ancestor.
    for (int k = static_cast<int>(up_.size()) - 1; k >= 0; --k) {
        int u = up_[k][v];
        if (u >= 0 && !is_ancestor(u, w)) v = u;
    }
    return up_[0][v];
}

bool is_ordered(const TreeIndex& idx, const NodeList& x) {
    for (size_t i = 0; i + 1 < x.size(); ++i)
        if (!idx.left_of(x[i], x[i + 1])) return false;
    return true;
}

bool is_semiordered(const TreeIndex& idx, const NodeList& x) {
    for (size_t i = 0; i + 1 < x.size(); ++i)
        if (!idx.left_or_related(x[i], x[i + 1])) return false;
    return true;
}

NodeList deep(const TreeIndex& idx, const NodeList& x) {
    NodeList sorted = x;
    std::sort(sorted.begin(), sorted.end(),
              [&](int a, int b) { return idx.pre(a) < idx.pre(b); });
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    NodeList out;
    for (int v : sorted) {
        while (!out.empty() && idx.is_proper_ancestor(out.back(), v)) out.pop_back();
        out.push_back(v);
    }
    return out;
}

}  // namespace patmat
