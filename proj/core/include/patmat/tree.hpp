#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace patmat {

// Rooted, ordered, labeled tree. Node ids are stable indices into `nodes`;
// children order defines the left-to-right order of the tree.
struct LabeledTree {
    struct Node {
        std::string label;
        int parent = -1;
        std::vector<int> children;
    };

    std::vector<Node> nodes;
    int root = -1;

    int size() const { return static_cast<int>(nodes.size()); }
    bool empty() const { return nodes.empty(); }
    const std::string& label(int v) const { return nodes[v].label; }
    int parent(int v) const { return nodes[v].parent; }
    const std::vector<int>& children(int v) const { return nodes[v].children; }
    bool is_leaf(int v) const { return nodes[v].children.empty(); }

    // Builder helpers; parent == -1 creates the root (must be the first node).
    int add_node(std::string label, int parent = -1);

    void validate() const;  // throws std::invalid_argument on broken links
};

struct ParseError : std::runtime_error {
    size_t offset;
    ParseError(const std::string& msg, size_t off)
        : std::runtime_error(msg + " at byte " + std::to_string(off)), offset(off) {}
};

LabeledTree parse_tree(const std::string& text);
std::string serialize(const LabeledTree& t);

// Traversal numbering and ancestor machinery. pre/post are 0-based counts of
// nodes preceding the node in the respective traversal.
class TreeIndex {
public:
    explicit TreeIndex(const LabeledTree& t);

    const LabeledTree& tree() const { return *t_; }
    int n() const { return n_; }

    int pre(int v) const { return pre_[v]; }
    int post(int v) const { return post_[v]; }
    int depth(int v) const { return depth_[v]; }
    int size(int v) const { return size_[v]; }
    int node_at_pre(int p) const { return pre_to_node_[p]; }
    int node_at_post(int p) const { return post_to_node_[p]; }

    // v is an ancestor of w (inclusive: is_ancestor(v,v) holds).
    bool is_ancestor(int v, int w) const {
        return pre_[v] <= pre_[w] && post_[v] >= post_[w];
    }
    bool is_proper_ancestor(int v, int w) const { return v != w && is_ancestor(v, w); }

    // v ⊲ w: v is strictly to the left of w (neither is an ancestor of the other).
    bool left_of(int v, int w) const { return pre_[v] < pre_[w] && post_[v] < post_[w]; }
    // v ⊴ w: left of, or related by ancestry.
    bool left_or_related(int v, int w) const {
        return left_of(v, w) || is_ancestor(v, w) || is_ancestor(w, v);
    }

    int nca(int v, int w) const;  // O(log n) via ancestor doubling

    // k-th ancestor (0 = the node itself), or -1 when walking past the root.
    int ancestor_at(int v, int k) const;

private:
    const LabeledTree* t_;
    int n_;
    std::vector<int> pre_, post_, depth_, size_, pre_to_node_, post_to_node_;
    std::vector<std::vector<int>> up_;  // up_[k][v] = 2^k-th ancestor or -1
};

// Node lists. A list is "ordered" when strictly left-to-right (an antichain),
// "semiordered" when consecutive elements are left-of or related by ancestry.
using NodeList = std::vector<int>;

bool is_ordered(const TreeIndex& idx, const NodeList& x);
bool is_semiordered(const TreeIndex& idx, const NodeList& x);

// Deepest-node filter: keeps the elements of x with no proper descendant in x,
// left-to-right, duplicates removed. Requires x semiordered.
NodeList deep(const TreeIndex& idx, const NodeList& x);

}  // namespace patmat
