#include "patmat/tree_inclusion.hpp"

#include <algorithm>
#include <cassert>

namespace patmat {

NodePairList mop(const TreeIndex& t, const NodePairList& y, const NodeList& x) {
    assert(is_ordered(t, x));
    NodePairList r;
    if (y.empty() || x.empty()) return r;
    // find the first x element right of y[0].second
    size_t h = 0;
    while (h < x.size() && !t.left_of(y[0].second, x[h])) ++h;
    if (h == x.size()) return r;
    int cur_y = y[0].first;
    int cur_x = x[h];
    for (size_t i = 1; i < y.size(); ++i) {
        while (h < x.size() && !t.left_of(y[i].second, x[h])) ++h;
        if (h == x.size()) break;
        if (t.left_of(cur_x, x[h])) {
            r.emplace_back(cur_y, cur_x);
            cur_y = y[i].first;
            cur_x = x[h];
        } else {
            // same x element; the later y pair supersedes the potential pair
            cur_y = y[i].first;
        }
    }
    r.emplace_back(cur_y, cur_x);
    return r;
}

NodeList fl(const TreeIndex& t, const NodeList& x, const std::string& a,
            FlStats* stats) {
    assert(is_ordered(t, x));
    if (x.empty()) return {};
    const LabeledTree& tree = t.tree();
    int k = static_cast<int>(x.size());

    // One doubly linked list (pred/succ) holds Z and R together; slots keep
    // their list position for the whole run. A second chain (zprev/znext)
    // threads only the slots still in Z, playing the role of the Next
    // pointers: slots not on it are in R.
    std::vector<int> node(k), pred(k), succ(k), zprev(k), znext(k);
    std::vector<char> in_r(k, 0);
    for (int i = 0; i < k; ++i) {
        node[i] = x[i];
        pred[i] = zprev[i] = i - 1;
        succ[i] = znext[i] = i + 1 < k ? i + 1 : -1;
    }
    int z_head = 0;

    auto leave_z = [&](int s) {  // unlink from the Z chain only
        if (zprev[s] >= 0)
            znext[zprev[s]] = znext[s];
        else
            z_head = znext[s];
        if (znext[s] >= 0) zprev[znext[s]] = zprev[s];
    };
    auto remove_entirely = [&](int s) {
        leave_z(s);
        if (pred[s] >= 0) succ[pred[s]] = succ[s];
        if (succ[s] >= 0) pred[succ[s]] = pred[s];
    };

    while (z_head != -1) {
        // pass over Z: matching labels move to R, others become their parent
        for (int s = z_head, nx; s != -1; s = nx) {
            nx = znext[s];
            if (stats) stats->touches++;
            if (tree.label(node[s]) == a) {
                in_r[s] = 1;
                leave_z(s);
            } else {
                int par = tree.parent(node[s]);
                if (par < 0)
                    remove_entirely(s);
                else
                    node[s] = par;
            }
        }
        // Deep over Z (the list is semiordered): compare adjacent Z slots
        int s = z_head;
        while (s != -1 && znext[s] != -1) {
            int u = node[s], v = node[znext[s]];
            if (t.left_of(u, v)) {
                s = znext[s];
            } else if (t.is_ancestor(u, v)) {  // u not deep (or duplicate)
                int nx = znext[s];
                remove_entirely(s);
                s = nx;
            } else {  // v is a proper ancestor of u
                remove_entirely(znext[s]);
            }
        }
        // Deep*(S, R): drop Z slots with a descendant (or copy) next door in R
        for (int u = z_head, nx; u != -1; u = nx) {
            nx = znext[u];
            int p = pred[u], q = succ[u];
            bool kill = (p >= 0 && in_r[p] && t.is_ancestor(node[u], node[p])) ||
                        (q >= 0 && in_r[q] && t.is_ancestor(node[u], node[q]));
            if (kill) remove_entirely(u);
        }
    }

    NodeList out;
    for (int s = 0; s < k; ++s)
        if (in_r[s]) out.push_back(node[s]);
    return out;
}

namespace {

NodeList leaves_left_to_right(const TreeIndex& t) {
    NodeList out;
    for (int p = 0; p < t.n(); ++p) {
        int v = t.node_at_pre(p);
        if (t.tree().is_leaf(v)) out.push_back(v);
    }
    return out;
}

struct EmbCtx {
    const LabeledTree& p;
    const TreeIndex& ti;
    bool failed = false;

    NodeList run(int v) {
        if (failed) return {};
        const auto& ch = p.children(v);
        NodeList r;
        if (ch.empty()) {
            r = deep(ti, fl(ti, leaves_left_to_right(ti), p.label(v)));
        } else if (ch.size() == 1) {
            NodeList r1 = run(ch[0]);
            if (failed) return {};
            NodeList parents;
            for (int u : r1)
                if (ti.tree().parent(u) >= 0) parents.push_back(ti.tree().parent(u));
            r = deep(ti, fl(ti, deep(ti, parents), p.label(v)));
        } else {
            NodeList r1 = run(ch[0]);
            if (failed) return {};
            NodePairList u;
            for (int x : r1) u.emplace_back(x, x);
            for (size_t i = 1; i < ch.size(); ++i) {
                NodeList ri = run(ch[i]);
                if (failed) return {};
                u = mop(ti, u, ri);
                if (u.empty()) {
                    failed = true;
                    return {};
                }
            }
            NodeList ncas;
            for (auto& [a, b] : u) ncas.push_back(ti.nca(a, b));
            r = deep(ti, fl(ti, deep(ti, ncas), p.label(v)));
        }
        if (r.empty()) failed = true;
        return r;
    }
};

}  // namespace

NodeList emb(const LabeledTree& p, const LabeledTree& t) {
    if (p.empty() || t.empty()) return {};
    TreeIndex ti(t);
    EmbCtx ctx{p, ti};
    NodeList r = ctx.run(p.root);
    return ctx.failed ? NodeList{} : r;
}

namespace {

// Per pattern node, the post-sorted list of text nodes admitting a
// root-preserving embedding of that pattern subtree.
struct KmCtx {
    const LabeledTree& p;
    const LabeledTree& t;
    const TreeIndex& ti;
    std::vector<NodeList> emb_list;  // by pattern node, sorted by post(t)

    // closest right relative of q (by postorder) in list, or -1; q == -1
    // stands for ⊥ (before everything)
    int rho(const NodeList& list, int q) const {
        if (q < 0) return list.empty() ? -1 : list[0];
        auto it = std::upper_bound(list.begin(), list.end(), ti.post(q),
                                   [&](int post, int v) { return post < ti.post(v); });
        for (; it != list.end(); ++it)
            if (ti.pre(*it) > ti.pre(q)) return *it;  // skip ancestors of q
        return -1;
    }

    void compute(int v) {
        for (int c : p.children(v)) compute(c);
        NodeList& out = emb_list[v];
        for (int post = 0; post < ti.n(); ++post) {
            int w = ti.node_at_post(post);
            if (t.label(w) != p.label(v)) continue;
            if (p.children(v).empty()) {
                out.push_back(w);
                continue;
            }
            // greedy chain across the children, per the closest right
            // relative characterization
            int below = ti.post(w) - ti.size(w);  // post of max left relative
            int q = below >= 0 ? ti.node_at_post(below) : -1;
            bool ok = true;
            for (int c : p.children(v)) {
                q = rho(emb_list[c], q);
                if (q < 0 || ti.post(q) >= ti.post(w)) {
                    ok = false;
                    break;
                }
            }
            // all chain nodes must lie inside T(w); the chain is post-
            // increasing, so checking the last one suffices
            if (ok && ti.is_ancestor(w, q)) out.push_back(w);
        }
    }
};

}  // namespace

bool km_oracle(const LabeledTree& p, const LabeledTree& t) {
    if (p.empty()) return true;
    if (t.empty()) return false;
    TreeIndex ti(t);
    KmCtx ctx{p, t, ti, std::vector<NodeList>(p.size())};
    ctx.compute(p.root);
    return !ctx.emb_list[p.root].empty();
}

NodeList including_subtrees(const LabeledTree& p, const LabeledTree& t) {
    NodeList occ = emb(p, t);
    if (occ.empty()) return {};
    TreeIndex ti(t);
    std::vector<char> mark(t.size(), 0);
    for (int v : occ)
        for (int u = v; u != -1 && !mark[u]; u = t.parent(u)) mark[u] = 1;
    NodeList out;
    for (int pr = 0; pr < ti.n(); ++pr) {
        int v = ti.node_at_pre(pr);
        if (mark[v]) out.push_back(v);
    }
    return out;
}

}  // namespace patmat
