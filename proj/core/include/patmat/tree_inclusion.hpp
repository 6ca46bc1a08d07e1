#pragma once

#include <string>
#include <utility>
#include <vector>

#include "patmat/tree.hpp"

namespace patmat {

using NodePairList = std::vector<std::pair<int, int>>;

// Minimum ordered pairs step: for (y1,y2) in y, (y1,x') is reported iff
// (y2,x') is a minimum ordered pair of (projections of y, x). Inputs must be
// ordered (deep); output is ordered.
NodePairList mop(const TreeIndex& t, const NodePairList& y, const NodeList& x);

struct FlStats {
    long long touches = 0;  // worklist element visits, all iterations
};

// First label-a ancestor (inclusive) of every node in x, deepened; nodes whose
// every ancestor misses the label are dropped. x must be ordered. Duplicate
// first-ancestors collapse via the Deep pass the worklist performs.
NodeList fl(const TreeIndex& t, const NodeList& x, const std::string& a,
            FlStats* stats = nullptr);

// Deep occurrences of p in t: the nodes f(root(p)) over deep embeddings f.
// Empty result means p is not included in t.
NodeList emb(const LabeledTree& p, const LabeledTree& t);

// Kilpeläinen–Mannila dynamic program; true iff p is included in t.
bool km_oracle(const LabeledTree& p, const LabeledTree& t);

// All nodes u of t with p included in t(u): the ancestor closure of emb(p,t).
// Sorted by preorder.
NodeList including_subtrees(const LabeledTree& p, const LabeledTree& t);

}  // namespace patmat
