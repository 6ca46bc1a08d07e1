#include "patmat/regex_engines.hpp"

#include <cmath>
#include <functional>
#include <mutex>
#include <stdexcept>

namespace patmat {

void ClassicDs::move(int symbol) {
    std::vector<char> r(a_->n_states, 0);
    for (int v = 0; v < a_->n_states; ++v)
        if (a_->state_symbol[v] == symbol && set_[a_->symbol_source[v]]) r[v] = 1;
    set_ = std::move(r);
}

void ClassicDs::close() {
    std::vector<int> work;
    for (int v = 0; v < a_->n_states; ++v)
        if (set_[v]) work.push_back(v);
    while (!work.empty()) {
        int v = work.back();
        work.pop_back();
        for (int u : a_->eps_out[v])
            if (!set_[u]) {
                set_[u] = 1;
                work.push_back(u);
            }
    }
}

namespace {

// epsilon reachability closure matrices restricted to a state subset
std::vector<std::vector<char>> eps_reach(const Tnfa& a, const std::vector<int>& states) {
    int k = static_cast<int>(states.size());
    std::vector<int> index(a.n_states, -1);
    for (int i = 0; i < k; ++i) index[states[i]] = i;
    std::vector<std::vector<int>> adj(k);
    for (const auto& t : a.transitions)
        if (t.symbol == kEpsilon && index[t.from] >= 0 && index[t.to] >= 0)
            adj[index[t.from]].push_back(index[t.to]);
    std::vector<std::vector<char>> reach(k, std::vector<char>(k, 0));
    for (int s = 0; s < k; ++s) {
        std::vector<int> work = {s};
        reach[s][s] = 1;
        while (!work.empty()) {
            int v = work.back();
            work.pop_back();
            for (int u : adj[v])
                if (!reach[s][u]) {
                    reach[s][u] = 1;
                    work.push_back(u);
                }
        }
    }
    return reach;
}

}  // namespace

SimpleDs::SimpleDs(const Tnfa& a) : m_(a.n_states), s_(a.n_states) {
    int L1 = m_ * (m_ + 1);
    std::vector<int> all(m_);
    for (int i = 0; i < m_; ++i) all[i] = i;
    auto reach = eps_reach(a, all);

    e_ = BitString(L1);
    i_ = BitString(L1);
    for (int i = 1; i <= m_; ++i) {
        i_.set_at((i - 1) * (m_ + 1) + 1, true);
        for (int j = 1; j <= m_; ++j)
            if (reach[j - 1][i - 1])  // state i reachable from j (1-based ranks)
                e_.set_at((i - 1) * (m_ + 1) + 1 + j, true);
    }
    d_.assign(257, BitString());
    for (int v = 0; v < m_; ++v) {
        int sym = a.state_symbol[v];
        if (sym == kEpsilon) continue;
        if (d_[sym].width() == 0) d_[sym] = BitString(m_);
        d_[sym].set_at(v + 1, true);
    }
    for (int j = 0; j < m_; ++j) {
        x_shifts_.push_back(j * (m_ + 1));
        c_shifts_.push_back(j * m_);
    }
}

void SimpleDs::clear() { s_ = BitString(m_); }
void SimpleDs::insert(int state) { s_.set_at(state + 1, true); }
bool SimpleDs::member(int state) const { return s_.at(state + 1); }

void SimpleDs::move(int symbol) {
    if (d_[symbol].width() == 0) {
        s_ = BitString(m_);
        return;
    }
    s_ = (s_ >> 1) & d_[symbol];
}

BitString SimpleDs::times_x(const BitString& s) const {
    return s.shifted_sum(x_shifts_, m_ * (m_ + 1));
}

BitString SimpleDs::times_c(const BitString& z) const {
    return z.shifted_sum(c_shifts_, 2 * m_ * m_);
}

void SimpleDs::close() {
    BitString y = times_x(s_) & e_;
    BitString z = ((y | i_) - (i_ >> m_)) & i_;
    BitString p = times_c(z);
    s_ = (p >> (m_ * m_)).resized(m_);
}

namespace {

// Separator-tree construction over parse-tree clusters. A cluster is a
// connected set of parse-tree nodes; its pTNFA is the subgraph induced by the
// theta/phi pairs of its members.
struct SepNode {
    std::vector<int> cluster;
    int root;
    int inner_root = -1;  // parse node whose pair is X(v); -1 for leaves
    int left = -1, right = -1;
    int depth = 0;
    int base = 0, len = 0;  // mapped interval [base, base+len-1], 1-based
};

struct SepBuilder {
    const Tnfa& a;
    const RegexAst& ast;
    std::vector<SepNode> nodes;
    int depth = 0;

    int build(std::vector<int> cluster, int root, int d) {
        depth = std::max(depth, d);
        int id = static_cast<int>(nodes.size());
        nodes.push_back({});
        SepNode n;
        n.cluster = cluster;
        n.root = root;
        n.depth = d;
        if (cluster.size() > 1) {
            std::vector<char> in(ast.size(), 0);
            for (int v : cluster) in[v] = 1;
            // within-cluster subtree sizes
            std::map<int, int> size;
            for (auto it = cluster.rbegin(); it != cluster.rend(); ++it) {
                // cluster vectors are built in preorder, so reverse is bottom-up
                int v = *it;
                int s = 1;
                for (int c : {ast.nodes[v].left, ast.nodes[v].right})
                    if (c >= 0 && in[c]) s += size[c];
                size[v] = s;
            }
            int t = static_cast<int>(cluster.size());
            int best = -1, best_max = t + 1;
            for (int v : cluster) {
                if (v == root) continue;
                int big = std::max(size[v], t - size[v]);
                if (big < best_max || (big == best_max && best >= 0 &&
                                       size[v] > size[best])) {
                    best = v;
                    best_max = big;
                }
            }
            // split into the inner subtree of `best` and the rest
            std::vector<char> in_inner(ast.size(), 0);
            std::vector<int> stack = {best};
            std::vector<int> inner, outer;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                in_inner[v] = 1;
                for (int c : {ast.nodes[v].left, ast.nodes[v].right})
                    if (c >= 0 && in[c]) stack.push_back(c);
            }
            for (int v : cluster) (in_inner[v] ? inner : outer).push_back(v);
            n.inner_root = best;
            n.left = build(outer, root, d + 1);
            n.right = build(inner, best, d + 1);
        }
        nodes[id] = std::move(n);
        return id;
    }

    void assign(int id, int base, int len, std::vector<int>& pos) {
        SepNode& n = nodes[id];
        n.base = base;
        n.len = len;
        if (n.left < 0) {
            auto [theta, phi] = a.node_states[n.root];
            pos[theta] = base + 1;
            pos[phi] = base + 2;
        } else {
            assign(n.left, base, len / 2, pos);
            assign(n.right, base + len / 2, len / 2, pos);
        }
    }
};

std::vector<int> preorder_cluster(const RegexAst& ast, int root) {
    std::vector<int> out, stack = {root};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        out.push_back(v);
        if (ast.nodes[v].right >= 0) stack.push_back(ast.nodes[v].right);
        if (ast.nodes[v].left >= 0) stack.push_back(ast.nodes[v].left);
    }
    return out;
}

}  // namespace

SeparatorDs::SeparatorDs(const Tnfa& a, const RegexAst& ast, SeparatorStats* stats) {
    SepBuilder b{a, ast, {}, 0};
    int root = b.build(preorder_cluster(ast, ast.root), ast.root, 0);
    depth_ = b.depth;
    l_ = 3 << depth_;
    pos_.assign(a.n_states, 0);
    b.assign(root, 1, l_, pos_);
    s_ = BitString(l_);

    if (stats) {
        stats->depth = depth_;
        for (const auto& n : b.nodes)
            stats->nodes.emplace_back(n.depth, 2 * static_cast<int>(n.cluster.size()));
    }

    xt_.assign(depth_ + 1, BitString(l_));
    et_.assign(depth_ + 1, BitString(l_));
    xf_.assign(depth_ + 1, BitString(l_));
    ef_.assign(depth_ + 1, BitString(l_));
    ik_.assign(depth_ + 1, BitString(l_));
    for (int k = 0; k <= depth_; ++k) {
        int len = l_ >> k;
        for (int i = 0; i * len < l_; ++i) ik_[k].set_at(i * len + 1, true);
    }
    for (const auto& n : b.nodes) {
        // pTNFA state list and its epsilon-reachability
        std::vector<int> states;
        for (int v : n.cluster) {
            states.push_back(a.node_states[v].first);
            states.push_back(a.node_states[v].second);
        }
        auto reach = eps_reach(a, states);
        int xv = n.inner_root >= 0 ? n.inner_root : n.root;
        auto [theta_v, phi_v] = a.node_states[xv];
        int ti = -1, fi = -1;
        for (size_t i = 0; i < states.size(); ++i) {
            if (states[i] == theta_v) ti = static_cast<int>(i);
            if (states[i] == phi_v) fi = static_cast<int>(i);
        }
        int k = n.depth;
        for (size_t j = 0; j < states.size(); ++j) {
            int p = pos_[states[j]];
            if (reach[j][ti]) xt_[k].set_at(p, true);
            if (reach[ti][j]) et_[k].set_at(p, true);
            if (reach[j][fi]) xf_[k].set_at(p, true);
            if (reach[fi][j]) ef_[k].set_at(p, true);
        }
    }

    d_.assign(257, BitString());
    for (int v = 0; v < a.n_states; ++v) {
        int sym = a.state_symbol[v];
        if (sym == kEpsilon) continue;
        if (d_[sym].width() == 0) {
            d_[sym] = BitString(l_);
            lit_symbols_.push_back(sym);
        }
        d_[sym].set_at(pos_[v], true);
    }
}

void SeparatorDs::clear() { s_ = BitString(l_); }
void SeparatorDs::insert(int state) { s_.set_at(pos_[state], true); }
bool SeparatorDs::member(int state) const { return s_.at(pos_[state]); }

void SeparatorDs::move(int symbol) {
    if (d_[symbol].width() == 0) {
        s_ = BitString(l_);
        return;
    }
    s_ = (s_ >> 1) & d_[symbol];
}

void SeparatorDs::close() {
    for (int k = 0; k <= depth_; ++k) {
        int t = (l_ >> k) - 1;
        BitString yt = s_ & xt_[k];
        BitString zt = ((yt | ik_[k]) - (ik_[k] >> t)) & ik_[k];
        BitString gt = (zt - (zt >> t)) & et_[k];
        BitString yf = s_ & xf_[k];
        BitString zf = ((yf | ik_[k]) - (ik_[k] >> t)) & ik_[k];
        BitString gf = (zf - (zf >> t)) & ef_[k];
        s_ |= gt;
        s_ |= gf;
    }
}

namespace {

std::string shape_key(const RegexAst& ast, int v) {
    const auto& n = ast.nodes[v];
    switch (n.kind) {
        case RegexAst::Literal:
            return "L";
        case RegexAst::Empty:
            return "E";
        case RegexAst::Concat:
            return "(C" + shape_key(ast, n.left) + shape_key(ast, n.right) + ")";
        case RegexAst::Union:
            return "(U" + shape_key(ast, n.left) + shape_key(ast, n.right) + ")";
        case RegexAst::Star:
            return "(S" + shape_key(ast, n.left) + ")";
    }
    return "";
}

std::mutex fr_registry_mutex;
std::map<std::string, std::shared_ptr<const FrShapeTables>>& fr_registry() {
    static std::map<std::string, std::shared_ptr<const FrShapeTables>> r;
    return r;
}

std::shared_ptr<const FrShapeTables> fr_tables_for(const Tnfa& a,
                                                   const std::string& key) {
    std::lock_guard<std::mutex> lock(fr_registry_mutex);
    auto it = fr_registry().find(key);
    if (it != fr_registry().end()) return it->second;

    int x = a.n_states;
    auto t = std::make_shared<FrShapeTables>();
    std::vector<uint64_t> succ1(x, 0), close1(x, 0);
    for (const auto& tr : a.transitions) succ1[tr.from] |= 1ull << tr.to;
    std::vector<int> all(x);
    for (int i = 0; i < x; ++i) all[i] = i;
    auto reach = eps_reach(a, all);
    for (int s = 0; s < x; ++s)
        for (int u = 0; u < x; ++u)
            if (reach[s][u]) close1[s] |= 1ull << u;

    t->succ.assign(1ull << x, 0);
    t->close.assign(1ull << x, 0);
    for (uint64_t s = 1; s < (1ull << x); ++s) {
        uint64_t low = s & (~s + 1);
        int b = __builtin_ctzll(low);
        t->succ[s] = t->succ[s ^ low] | succ1[b];
        t->close[s] = t->close[s ^ low] | close1[b];
    }
    auto shared = std::shared_ptr<const FrShapeTables>(std::move(t));
    fr_registry()[key] = shared;
    return shared;
}

}  // namespace

FourRussiansDs::FourRussiansDs(const Tnfa& a, const RegexAst& ast, long long budget)
    : a_(&a) {
    int x = a.n_states;
    if (x > 62 || (1ll << x) > budget) {
        fallback_ = true;
    } else {
        tables_ = fr_tables_for(a, shape_key(ast, ast.root));
    }
    for (int v = 0; v < x; ++v)
        if (a.state_symbol[v] != kEpsilon) eq_[a.state_symbol[v]] |= 1ull << v;
}

uint64_t FourRussiansDs::succ_bfs(uint64_t s) const {
    uint64_t r = 0;
    for (const auto& t : a_->transitions)
        if ((s >> t.from) & 1) r |= 1ull << t.to;
    return r;
}

uint64_t FourRussiansDs::close_bfs(uint64_t s) const {
    uint64_t r = s;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& t : a_->transitions)
            if (t.symbol == kEpsilon && ((r >> t.from) & 1) && !((r >> t.to) & 1)) {
                r |= 1ull << t.to;
                changed = true;
            }
    }
    return r;
}

void FourRussiansDs::move(int symbol) {
    uint64_t succ = tables_ ? tables_->succ[s_] : succ_bfs(s_);
    auto it = eq_.find(symbol);
    s_ = it == eq_.end() ? 0 : succ & it->second;
}

void FourRussiansDs::close() { s_ = tables_ ? tables_->close[s_] : close_bfs(s_); }

namespace {

struct ClusterPartition {
    std::vector<std::vector<int>> clusters;  // parse nodes; [i][0] is the root
    std::vector<int> cluster_of;
};

ClusterPartition cluster_parse_tree(const RegexAst& ast, int y) {
    ClusterPartition cp;
    cp.cluster_of.assign(ast.size(), -1);
    // bottom-up pending connected sets, each rooted at its first element
    std::vector<std::vector<int>> pend(ast.size());
    auto emit = [&](std::vector<int>&& c) {
        for (int v : c) cp.cluster_of[v] = static_cast<int>(cp.clusters.size());
        cp.clusters.push_back(std::move(c));
    };
    std::vector<std::pair<int, int>> stack = {{ast.root, 0}};
    while (!stack.empty()) {
        auto& top = stack.back();
        int v = top.first;
        const auto& n = ast.nodes[v];
        std::vector<int> kids;
        if (n.left >= 0) kids.push_back(n.left);
        if (n.right >= 0) kids.push_back(n.right);
        if (top.second < static_cast<int>(kids.size())) {
            stack.emplace_back(kids[top.second++], 0);
            continue;
        }
        stack.pop_back();
        std::vector<int> mine = {v};
        std::vector<std::vector<int>*> parts;
        for (int c : kids)
            if (!pend[c].empty()) parts.push_back(&pend[c]);
        std::sort(parts.begin(), parts.end(),
                  [](auto* a, auto* b) { return a->size() < b->size(); });
        // merge children smallest-first while the cluster stays within budget
        for (auto* p : parts) {
            if (static_cast<int>(mine.size() + p->size()) <= y)
                mine.insert(mine.end(), p->begin(), p->end());
            else
                emit(std::move(*p));
            p->clear();
        }
        if (stack.empty())
            emit(std::move(mine));
        else
            pend[v] = std::move(mine);
    }
    return cp;
}

}  // namespace

NestedDecomposition nested_decompose(const RegexAst& ast, int x) {
    if (x < 2) throw std::invalid_argument("subautomaton size must be at least 2");
    int x_eff = std::max(x, 6);
    int y = std::max(1, (x_eff - 2) / 4);
    ClusterPartition cp = cluster_parse_tree(ast, y);
    int k = static_cast<int>(cp.clusters.size());

    Tnfa global = thompson(ast);

    // macro-tree parents
    std::vector<int> parent(k, -1);
    int root_cluster = cp.cluster_of[ast.root];
    std::vector<std::vector<int>> macro_children(k);
    // parse-node parents
    std::vector<int> ast_parent(ast.size(), -1);
    for (int v = 0; v < ast.size(); ++v)
        for (int c : {ast.nodes[v].left, ast.nodes[v].right})
            if (c >= 0) ast_parent[c] = v;
    for (int i = 0; i < k; ++i) {
        int r = cp.clusters[i][0];
        if (ast_parent[r] >= 0) {
            parent[i] = cp.cluster_of[ast_parent[r]];
            macro_children[parent[i]].push_back(i);
        }
    }

    // preorder numbering of clusters, root first
    std::vector<int> order, new_id(k, -1);
    std::vector<int> st = {root_cluster};
    while (!st.empty()) {
        int c = st.back();
        st.pop_back();
        new_id[c] = static_cast<int>(order.size());
        order.push_back(c);
        for (auto it = macro_children[c].rbegin(); it != macro_children[c].rend(); ++it)
            st.push_back(*it);
    }

    NestedDecomposition d;
    d.x = x_eff;
    d.subs.resize(k);
    for (int oi = 0; oi < k; ++oi) {
        int ci = order[oi];
        auto& sub = d.subs[oi];
        sub.parent = parent[ci] >= 0 ? new_id[parent[ci]] : -1;

        std::vector<char> in(ast.size(), 0);
        for (int v : cp.clusters[ci]) in[v] = 1;
        // copy the cluster's parse structure; out-of-cluster children become
        // beta pseudo-leaves
        std::vector<int> pseudo_for;  // sub-ast node -> original child root, or -1
        std::vector<int> orig_of;     // sub-ast node -> original node, or -1
        std::function<int(int)> copy = [&](int v) -> int {
            if (!in[v]) {
                int leaf = sub.ast.add(RegexAst::Literal, kBeta);
                pseudo_for.resize(sub.ast.size(), -1);
                orig_of.resize(sub.ast.size(), -1);
                pseudo_for[leaf] = v;
                return leaf;
            }
            const auto& n = ast.nodes[v];
            int l = n.left >= 0 ? copy(n.left) : -1;
            int r = n.right >= 0 ? copy(n.right) : -1;
            int id = sub.ast.add(n.kind, n.symbol, l, r);
            pseudo_for.resize(sub.ast.size(), -1);
            orig_of.resize(sub.ast.size(), -1);
            orig_of[id] = v;
            return id;
        };
        sub.ast.root = copy(cp.clusters[ci][0]);
        sub.tnfa = thompson(sub.ast);

        sub.global_state.assign(sub.tnfa.n_states, -1);
        std::vector<std::pair<int, std::pair<int, int>>> child_links;  // (sub id, states)
        for (int v = 0; v < sub.ast.size(); ++v) {
            auto [lt, lf] = sub.tnfa.node_states[v];
            int orig = orig_of[v] >= 0 ? orig_of[v] : pseudo_for[v];
            auto [gt, gf] = global.node_states[orig];
            sub.global_state[lt] = gt;
            sub.global_state[lf] = gf;
            if (pseudo_for[v] >= 0)
                child_links.push_back({new_id[cp.cluster_of[pseudo_for[v]]], {lt, lf}});
        }
        std::sort(child_links.begin(), child_links.end(),
                  [](const auto& a, const auto& b) {
                      return a.second.first < b.second.first;
                  });
        for (auto& [cid, states] : child_links) {
            sub.children.push_back(cid);
            sub.child_states.push_back(states);
        }
    }
    return d;
}

namespace {

std::unique_ptr<SimulationDs> make_ds(RegexEngine kind, const Tnfa& a,
                                      const RegexAst& ast, const EngineOptions& opt) {
    switch (kind) {
        case RegexEngine::Simple:
            return std::make_unique<SimpleDs>(a);
        case RegexEngine::Separator:
            return std::make_unique<SeparatorDs>(a, ast);
        case RegexEngine::FourRussians:
            return std::make_unique<FourRussiansDs>(a, ast, opt.fr_budget);
        default:
            return std::make_unique<ClassicDs>(a);
    }
}

struct NestedRunner {
    const NestedDecomposition& d;
    std::vector<std::unique_ptr<SimulationDs>> ds;

    void move_as(int i, int symbol) {
        const auto& sub = d.subs[i];
        ds[i]->move(symbol);
        for (size_t c = 0; c < sub.children.size(); ++c) {
            int j = sub.children[c];
            move_as(j, symbol);
            if (ds[j]->member(d.subs[j].tnfa.accept))
                ds[i]->insert(sub.child_states[c].second);
        }
    }

    void close_as(int i) {
        const auto& sub = d.subs[i];
        ds[i]->close();
        for (size_t c = 0; c < sub.children.size(); ++c) {
            int j = sub.children[c];
            if (ds[i]->member(sub.child_states[c].first))
                ds[j]->insert(d.subs[j].tnfa.start);
            close_as(j);
            if (ds[j]->member(d.subs[j].tnfa.accept))
                ds[i]->insert(sub.child_states[c].second);
            ds[i]->close();
        }
    }

    void full_close() {
        close_as(0);
        close_as(0);
    }
};

std::vector<int> run_standalone(SimulationDs& ds, const Tnfa& a,
                                std::string_view text, bool no_empty) {
    ds.clear();
    ds.insert(a.start);
    ds.close();
    bool empty_matches = ds.member(a.accept) && !no_empty;
    std::vector<int> out;
    if (empty_matches) out.push_back(0);
    for (size_t j = 0; j < text.size(); ++j) {
        ds.move(static_cast<unsigned char>(text[j]));
        ds.close();
        if (ds.member(a.accept) || empty_matches)
            out.push_back(static_cast<int>(j) + 1);
        ds.insert(a.start);
        ds.close();
    }
    return out;
}

}  // namespace

std::vector<int> run_decomposed(const NestedDecomposition& d, std::string_view text,
                                const EngineOptions& opt) {
    NestedRunner r{d, {}};
    for (const auto& sub : d.subs)
        r.ds.push_back(make_ds(opt.nested_backing, sub.tnfa, sub.ast, opt));

    int start = d.subs[0].tnfa.start;
    int accept = d.subs[0].tnfa.accept;
    for (auto& p : r.ds) p->clear();
    r.ds[0]->insert(start);
    r.full_close();
    bool empty_matches = r.ds[0]->member(accept) && !opt.no_empty;
    std::vector<int> out;
    if (empty_matches) out.push_back(0);
    for (size_t j = 0; j < text.size(); ++j) {
        r.move_as(0, static_cast<unsigned char>(text[j]));
        r.full_close();
        if (r.ds[0]->member(accept) || empty_matches)
            out.push_back(static_cast<int>(j) + 1);
        r.ds[0]->insert(start);
        r.full_close();
    }
    return out;
}

RegexEngine select_engine(int n_states, int word_bits) {
    if (n_states * n_states <= word_bits) return RegexEngine::Simple;
    if (n_states <= word_bits) return RegexEngine::Separator;
    return RegexEngine::Nested;
}

std::vector<int> regex_search(const RegexAst& ast, std::string_view text,
                              const EngineOptions& opt) {
    Tnfa a = thompson(ast);
    RegexEngine engine = opt.engine;
    if (engine == RegexEngine::Auto) engine = select_engine(a.n_states, opt.word_bits);

    switch (engine) {
        case RegexEngine::Classic:
            return find_matches(a, text, opt.no_empty);
        case RegexEngine::Simple: {
            SimpleDs ds(a);
            return run_standalone(ds, a, text, opt.no_empty);
        }
        case RegexEngine::Separator: {
            SeparatorDs ds(a, ast);
            return run_standalone(ds, a, text, opt.no_empty);
        }
        case RegexEngine::FourRussians: {
            if (a.n_states <= 62 && (1ll << a.n_states) <= opt.fr_budget) {
                FourRussiansDs ds(a, ast, opt.fr_budget);
                return run_standalone(ds, a, text, opt.no_empty);
            }
            int x = 6;
            while ((1ll << (x + 1)) <= opt.fr_budget && x < 16) ++x;
            EngineOptions sub = opt;
            sub.nested_backing = RegexEngine::FourRussians;
            return run_decomposed(nested_decompose(ast, x), text, sub);
        }
        case RegexEngine::Nested: {
            int x = opt.nested_x > 0 ? opt.nested_x : std::max(6, opt.word_bits);
            return run_decomposed(nested_decompose(ast, x), text, opt);
        }
        case RegexEngine::Auto:
            break;
    }
    return find_matches(a, text, opt.no_empty);
}

}  // namespace patmat
