#include "patmat/tps.hpp"

#include <algorithm>
#include <stdexcept>

namespace patmat {

TpsPattern TpsPattern::build(const LabeledTree& p) {
    TpsPattern out;
    out.ext = p;
    TreeIndex idx(p);
    std::vector<int> leaves;
    for (int pr = 0; pr < idx.n(); ++pr) {
        int v = idx.node_at_pre(pr);
        if (p.is_leaf(v)) leaves.push_back(v);
    }
    out.path_of.assign(p.size() + leaves.size(), 0);
    for (int v : leaves) {
        int id = out.ext.add_node(kPseudoLabel, v);
        out.path_of[id] = ++out.n_paths;
    }
    return out;
}

std::set<int> down(const LabeledTree& p, const std::set<int>& x,
                   const std::string& text_label) {
    std::set<int> r;
    for (int v : x) {
        if (p.label(v) == text_label)
            for (int c : p.children(v)) r.insert(c);
        else
            r.insert(v);
    }
    return r;
}

namespace {

// leaf ordinals 1.. left-to-right, 0 for internal nodes
std::vector<int> leaf_numbers(const LabeledTree& t) {
    TreeIndex idx(t);
    std::vector<int> num(t.size(), 0);
    int k = 0;
    for (int pr = 0; pr < idx.n(); ++pr) {
        int v = idx.node_at_pre(pr);
        if (t.is_leaf(v)) num[v] = ++k;
    }
    return num;
}

}  // namespace

TpsDictState::TpsDictState(const LabeledTree& extended_pattern, int text_nodes)
    : p_(&extended_pattern) {
    node_label_.resize(p_->size());
    for (int v = 0; v < p_->size(); ++v) {
        auto [it, fresh] =
            label_id_.try_emplace(p_->label(v), static_cast<int>(label_id_.size()));
        (void)fresh;
        node_label_[v] = it->second;
    }
    head_.assign(label_id_.size(), -1);
    nxt_.assign(p_->size(), -1);
    prv_.assign(p_->size(), -1);
    parked_.resize(text_nodes);
    insert(p_->root);
}

void TpsDictState::insert(int v) {
    int l = node_label_[v];
    nxt_[v] = head_[l];
    prv_[v] = -1;
    if (head_[l] >= 0) prv_[head_[l]] = v;
    head_[l] = v;
}

void TpsDictState::remove(int v) {
    int l = node_label_[v];
    if (prv_[v] >= 0)
        nxt_[prv_[v]] = nxt_[v];
    else
        head_[l] = nxt_[v];
    if (nxt_[v] >= 0) prv_[nxt_[v]] = prv_[v];
}

void TpsDictState::down(int y, const std::string& text_label) {
    auto it = label_id_.find(text_label);
    if (it == label_id_.end()) return;
    int v = head_[it->second];
    head_[it->second] = -1;
    for (; v != -1; v = nxt_[v]) {
        parked_[y].push_back(v);
        for (int c : p_->children(v)) insert(c);
    }
}

void TpsDictState::up(int y) {
    for (int v : parked_[y]) {
        for (int c : p_->children(v)) remove(c);
        insert(v);
    }
    parked_[y].clear();
}

std::set<int> TpsDictState::current() const {
    std::set<int> out;
    for (int h : head_)
        for (int v = h; v != -1; v = nxt_[v]) out.insert(v);
    return out;
}

std::vector<std::set<int>> TpsDictState::parked() const {
    std::vector<std::set<int>> out(parked_.size());
    for (size_t y = 0; y < parked_.size(); ++y)
        out[y] = {parked_[y].begin(), parked_[y].end()};
    return out;
}

TpsPairs tps_simple(const LabeledTree& p, const LabeledTree& t) {
    if (p.empty() || t.empty()) return {};
    TpsPattern pat = TpsPattern::build(p);
    std::vector<int> tnum = leaf_numbers(t);
    TpsDictState st(pat.ext, t.size());

    TpsPairs out;
    // iterative DFS with enter/exit events so Up undoes Down
    std::vector<std::pair<int, bool>> stack = {{t.root, false}};
    while (!stack.empty()) {
        auto [y, leaving] = stack.back();
        stack.pop_back();
        if (leaving) {
            st.up(y);
            continue;
        }
        st.down(y, t.label(y));
        if (t.is_leaf(y)) {
            st.for_each_with_label(
                kPseudoLabel, [&](int v) { out.emplace(pat.path_of[v], tnum[y]); });
            st.up(y);
            continue;
        }
        stack.emplace_back(y, true);
        const auto& ch = t.children(y);
        for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.emplace_back(*it, false);
    }
    return out;
}

uint64_t MicroTreeDecomposition::child_mask_direct(int m, uint64_t subset) const {
    uint64_t r = 0;
    const auto& cb = child_bits[m];
    while (subset) {
        int i = __builtin_ctzll(subset);
        subset &= subset - 1;
        r |= cb[i];
    }
    return r;
}

uint64_t MicroTreeDecomposition::child_mask(int m, uint64_t subset) const {
    if (shape_of[m] >= 0) return shape_tables[shape_of[m]][subset];
    return child_mask_direct(m, subset);
}

MicroTreeDecomposition micro_decompose(const LabeledTree& p, int s) {
    if (s < 1 || s > 64) throw std::invalid_argument("micro tree size out of range");
    MicroTreeDecomposition d;
    d.s = s;
    d.tree = &p;
    d.member_of.resize(p.size());
    d.home.assign(p.size(), {-1, -1});

    auto emit = [&](int root, std::vector<int>& nodes) {
        // order nodes root-first in preorder-within-micro
        std::sort(nodes.begin(), nodes.end());
        std::vector<char> in(p.size(), 0);
        for (int v : nodes) in[v] = 1;
        std::vector<int> ordered;
        std::vector<int> st = {root};
        while (!st.empty()) {
            int v = st.back();
            st.pop_back();
            ordered.push_back(v);
            const auto& ch = p.children(v);
            for (auto it = ch.rbegin(); it != ch.rend(); ++it)
                if (in[*it]) st.push_back(*it);
        }
        int m = static_cast<int>(d.micro.size());
        d.micro.push_back({root, ordered});
        for (size_t i = 0; i < ordered.size(); ++i) {
            int v = ordered[i];
            d.member_of[v].emplace_back(m, static_cast<int>(i));
            if (v != root) d.home[v] = {m, static_cast<int>(i)};
        }
    };

    if (s == 1) {
        for (int v = 0; v < p.size(); ++v) {
            std::vector<int> one = {v};
            emit(v, one);
            d.home[v] = {static_cast<int>(d.micro.size()) - 1, 0};
        }
    } else {
        int t = s / 2;
        // bottom-up pending sets; emit when a merge exceeds t nodes
        std::vector<std::vector<int>> pend(p.size());
        std::vector<std::pair<int, size_t>> st;
        st.emplace_back(p.root, 0);
        while (!st.empty()) {
            auto& top = st.back();
            int v = top.first;
            if (top.second == 0) pend[v] = {v};
            if (top.second < p.children(v).size()) {
                st.emplace_back(p.children(v)[top.second++], 0);
                continue;
            }
            // children done; their pends were merged on exit below
            st.pop_back();
            if (st.empty()) {
                emit(v, pend[v]);
                if (d.home[v].first < 0)
                    d.home[v] = {static_cast<int>(d.micro.size()) - 1, 0};
            } else {
                int parent = st.back().first;
                auto& ps = pend[parent];
                ps.insert(ps.end(), pend[v].begin(), pend[v].end());
                pend[v].clear();
                pend[v].shrink_to_fit();
                if (static_cast<int>(ps.size()) > t) {
                    emit(parent, ps);
                    ps = {parent};
                }
            }
        }
    }

    // per-micro child masks, label masks, pseudo-leaf mask, shape tables
    int n_micro = static_cast<int>(d.micro.size());
    d.child_bits.resize(n_micro);
    d.shape_of.assign(n_micro, -1);
    d.eq.resize(n_micro);
    d.leaf_mask.assign(n_micro, 0);
    std::map<std::string, int> shape_index;
    for (int m = 0; m < n_micro; ++m) {
        const auto& nodes = d.micro[m].nodes;
        int k = static_cast<int>(nodes.size());
        std::vector<int> bit_of(p.size(), -1);
        for (int i = 0; i < k; ++i) bit_of[nodes[i]] = i;
        d.child_bits[m].assign(k, 0);
        std::string shape;
        for (int i = 0; i < k; ++i) {
            int v = nodes[i];
            d.eq[m][p.label(v)] |= 1ull << i;
            if (p.label(v) == kPseudoLabel) d.leaf_mask[m] |= 1ull << i;
            int par = p.parent(v);
            int pb = (v != d.micro[m].root && par >= 0) ? bit_of[par] : -1;
            if (pb >= 0) d.child_bits[m][pb] |= 1ull << i;
            shape += std::to_string(pb) + ",";
        }
        if (k <= 16) {
            auto [it, fresh] = shape_index.try_emplace(
                shape, static_cast<int>(d.shape_tables.size()));
            if (fresh) {
                std::vector<uint64_t> table(1ull << k, 0);
                for (uint64_t sub = 1; sub < (1ull << k); ++sub) {
                    uint64_t low = sub & (~sub + 1);
                    table[sub] = table[sub ^ low] | d.child_bits[m][__builtin_ctzll(low)];
                }
                d.shape_tables.push_back(std::move(table));
            }
            d.shape_of[m] = it->second;
        }
    }
    return d;
}

namespace {

struct FastRun {
    const TpsPattern& pat;
    const LabeledTree& t;
    const MicroTreeDecomposition& d;
    const std::vector<int>& tnum;
    const std::vector<int>& heavy;  // text node -> heavy child or -1
    TpsPairs out;
    int live = 1;
    int max_live = 1;

    using State = std::vector<uint64_t>;

    void down_masks(State& st, const std::string& label) {
        const LabeledTree& p = pat.ext;
        int n_micro = static_cast<int>(d.micro.size());
        // cross-boundary insert flags from the pre-update snapshot
        std::vector<char> b(n_micro, 0);
        for (int m = 0; m < n_micro; ++m) {
            int r = d.micro[m].root;
            if (r == p.root) continue;
            int q = p.parent(r);
            auto [hm, hb] = d.home[q];
            b[m] = ((st[hm] >> hb) & 1) && p.label(q) == label;
        }
        for (int m = 0; m < n_micro; ++m) {
            uint64_t eqmask = 0;
            auto it = d.eq[m].find(label);
            if (it != d.eq[m].end()) eqmask = it->second;
            uint64_t cur = st[m];
            uint64_t matched = cur & eqmask;
            st[m] = d.child_mask(m, matched) | (cur & ~eqmask) | (b[m] ? 1ull : 0ull);
        }
    }

    void report(const State& st, int leaf_ordinal) {
        for (size_t m = 0; m < d.micro.size(); ++m) {
            uint64_t bits = st[m] & d.leaf_mask[m];
            while (bits) {
                int i = __builtin_ctzll(bits);
                bits &= bits - 1;
                out.emplace(pat.path_of[d.micro[m].nodes[i]], leaf_ordinal);
            }
        }
    }

    void walk(int y, State st) {
        while (true) {
            down_masks(st, t.label(y));
            if (t.is_leaf(y)) {
                report(st, tnum[y]);
                return;
            }
            int h = heavy[y];
            for (int c : t.children(y)) {
                if (c == h) continue;
                State copy = st;
                ++live;
                max_live = std::max(max_live, live);
                walk(c, std::move(copy));
                --live;
            }
            y = h;
        }
    }
};

}  // namespace

TpsPairs tps_fast(const LabeledTree& p, const LabeledTree& t, int s,
                  TpsFastStats* stats) {
    if (p.empty() || t.empty()) return {};
    if (s == 0) s = 16;
    TpsPattern pat = TpsPattern::build(p);
    MicroTreeDecomposition d = micro_decompose(pat.ext, s);
    std::vector<int> tnum = leaf_numbers(t);

    TreeIndex ti(t);
    std::vector<int> heavy(t.size(), -1);
    for (int v = 0; v < t.size(); ++v) {
        int best = -1;
        for (int c : t.children(v))
            if (best < 0 || ti.size(c) > ti.size(best)) best = c;
        heavy[v] = best;
    }

    FastRun run{pat, t, d, tnum, heavy};
    FastRun::State init(d.micro.size(), 0);
    for (auto [m, bit] : d.member_of[pat.ext.root]) init[m] |= 1ull << bit;
    run.walk(t.root, std::move(init));
    if (stats) {
        stats->max_live_states = run.max_live;
        stats->micro_count = static_cast<int>(d.micro.size());
    }
    return run.out;
}

}  // namespace patmat
