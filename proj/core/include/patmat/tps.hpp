#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "patmat/tree.hpp"

namespace patmat {

// Reserved sentinel label for pseudo-leaves; never matches a text label.
inline const std::string kPseudoLabel = "\x01" "leaf";

// Pattern extended with one pseudo-leaf below every original leaf. Pattern
// paths are numbered 1..n_paths left-to-right; pseudo-leaf i marks path i.
struct TpsPattern {
    LabeledTree ext;
    std::vector<int> path_of;  // ext node id -> path number, 0 if not a pseudo-leaf
    int n_paths = 0;

    static TpsPattern build(const LabeledTree& p);
};

// One Down step on a plain state set (reference implementation): nodes whose
// label matches the text label are replaced by their children, the rest stay.
std::set<int> down(const LabeledTree& p, const std::set<int>& x,
                   const std::string& text_label);

// (pattern path, text leaf) pairs, both numbered 1.. left-to-right.
using TpsPairs = std::set<std::pair<int, int>>;

// Node-dictionary state: the current set X^c as per-label intrusive bucket
// lists, plus per-text-node parking lists X^p holding nodes removed at that
// text node, so up() can undo the matching down().
class TpsDictState {
public:
    TpsDictState(const LabeledTree& extended_pattern, int text_nodes);

    void down(int y, const std::string& text_label);
    void up(int y);

    // pattern nodes in the current state with the given label
    template <typename F>
    void for_each_with_label(const std::string& label, F&& f) const {
        auto it = label_id_.find(label);
        if (it == label_id_.end()) return;
        for (int v = head_[it->second]; v != -1; v = nxt_[v]) f(v);
    }

    std::set<int> current() const;                // X^c contents
    std::vector<std::set<int>> parked() const;    // X^p per text node

private:
    void insert(int v);
    void remove(int v);

    const LabeledTree* p_;
    std::map<std::string, int> label_id_;
    std::vector<int> node_label_;
    std::vector<int> head_, nxt_, prv_;
    std::vector<std::vector<int>> parked_;
};

TpsPairs tps_simple(const LabeledTree& p, const LabeledTree& t);

struct MicroTree {
    int root = -1;
    std::vector<int> nodes;  // root first; bit i in masks refers to nodes[i]
};

// Connected subtrees of ≤ s nodes covering the pattern, overlapping only at
// roots. States are one machine word per micro tree.
struct MicroTreeDecomposition {
    int s = 0;
    const LabeledTree* tree = nullptr;
    std::vector<MicroTree> micro;
    // every node has one home micro tree (the one where it is a non-root
    // member, or the micro it roots if it is the pattern root); micro-tree
    // roots additionally appear in other micro trees
    std::vector<std::pair<int, int>> home;                    // node -> (micro, bit)
    std::vector<std::vector<std::pair<int, int>>> member_of;  // node -> all (micro, bit)

    std::vector<std::vector<uint64_t>> child_bits;  // per micro, bit -> children mask
    std::vector<int> shape_of;                      // micro -> table index, -1 = direct
    std::vector<std::vector<uint64_t>> shape_tables;
    std::vector<std::map<std::string, uint64_t>> eq;  // label -> node mask
    std::vector<uint64_t> leaf_mask;                  // pseudo-leaf bits

    uint64_t child_mask(int m, uint64_t subset) const;
    uint64_t child_mask_direct(int m, uint64_t subset) const;
};

MicroTreeDecomposition micro_decompose(const LabeledTree& p, int s);

struct TpsFastStats {
    int max_live_states = 0;
    int micro_count = 0;
};

// Heavy-path traversal with micro-tree bit states; identical output to
// tps_simple. s = 0 picks the default micro-tree size.
TpsPairs tps_fast(const LabeledTree& p, const LabeledTree& t, int s = 0,
                  TpsFastStats* stats = nullptr);

}  // namespace patmat
