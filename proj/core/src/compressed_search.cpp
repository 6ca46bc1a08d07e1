#include "patmat/compressed_search.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "patmat/approx.hpp"

namespace patmat {

namespace {

// last h characters of phrase(v)
std::string phrase_suffix(const CompressedText& z, int v, int h) {
    std::string s;
    while (v != 0 && static_cast<int>(s.size()) < h) {
        if (z.label(v) >= 0) s.push_back(static_cast<char>(z.label(v)));
        v = z.parent(v);
    }
    std::reverse(s.begin(), s.end());
    return s;
}

// last min(h, end_pos) characters of the text up to the end of phrase `elem`,
// assembled right to left across phrase boundaries
std::string relevant_suffix(const CompressedText& z, int elem, int h,
                            int end_pos) {
    int l = std::min(h, end_pos);
    std::string s;
    int t = elem;
    while (l > 0) {
        int w = z.phrases[t];
        int r = std::min(l, z.depth(w));
        for (int need = r; need > 0; w = z.parent(w))
            if (z.label(w) >= 0) {
                s.push_back(static_cast<char>(z.label(w)));
                --need;
            }
        l -= r;
        --t;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

class ApproxScanner {
public:
    ApproxScanner(const CompressedText& z, std::string_view p, int k, int tau)
        : z_(z), p_(p), k_(k), h_(static_cast<int>(p.size()) + k),
          cache_all_(z.scheme == ZlScheme::ZLW), c_(select_special(z, tau)) {
        for (auto [y, len] : c_.members)
            if (len > h_) {
                int w = y;
                while (z_.depth(w) != h_) w = z_.parent(w);
                shortcut_[y] = w;
            }
    }

    template <typename F>
    void run(CapproxStats* stats, F&& emit) {
        int u = 1;
        std::string prev_rsuf;
        for (size_t i = 0; i < z_.phrases.size(); ++i) {
            int v = z_.phrases[i];
            int l = z_.depth(v);
            ApproxDescription d;
            d.index = static_cast<int>(i);
            d.u = u;
            d.l = l;
            append_phrase(z_, prefix_node(v, l), d.rpre);
            d.rsuf = relevant_suffix(z_, static_cast<int>(i), h_, u - 1 + l);
            d.mi = mi_of(v);
            std::string window = prev_rsuf + d.rpre;
            d.mo = approx_positions(p_, window, k_);
            int off = u - 1 - static_cast<int>(prev_rsuf.size());
            std::vector<int> from_mo;
            for (int j : d.mo)
                if (j + off >= u && j + off <= u + l - 1)
                    from_mo.push_back(j + off);
            std::vector<int> from_mi(d.mi.size());
            for (size_t t = 0; t < d.mi.size(); ++t)
                from_mi[t] = d.mi[t] + u - 1;
            std::merge(from_mi.begin(), from_mi.end(), from_mo.begin(),
                       from_mo.end(), std::back_inserter(d.matches));
            d.matches.erase(std::unique(d.matches.begin(), d.matches.end()),
                            d.matches.end());
            emit(d);
            if (stats)
                stats->peak_live =
                    std::max(stats->peak_live, c_.members.size() +
                                                   shortcut_.size() +
                                                   mi_store_.size() +
                                                   mi_empty_.size());
            prev_rsuf = std::move(d.rsuf);
            u += l;
        }
    }

private:
    // trie node spelling the first min(h, l) characters of phrase(v)
    int prefix_node(int v, int l) {
        if (l <= h_) return v;
        int w = v;
        while (z_.depth(w) != h_ && !c_.contains(w)) w = z_.parent(w);
        return z_.depth(w) == h_ ? w : shortcut_.at(w);
    }

    // phrase-relative ending positions of approximate matches inside
    // phrase(v); grows along the parent chain, so only the last character's
    // window has to be examined per node
    std::vector<int> mi_of(int v) {
        std::vector<int> chain;
        int w = v;
        while (w != 0 && !mi_store_.count(w) &&
               !(cache_all_ && mi_empty_.count(w))) {
            chain.push_back(w);
            w = z_.parent(w);
        }
        std::vector<int> cur;
        if (auto it = mi_store_.find(w); it != mi_store_.end())
            cur = it->second;
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
            int x = *it;
            if (z_.label(x) >= 0) {
                std::string sfx = phrase_suffix(z_, x, h_);
                auto ends = approx_positions(p_, sfx, k_);
                if (std::binary_search(ends.begin(), ends.end(),
                                       static_cast<int>(sfx.size())))
                    cur.push_back(z_.depth(x));
            }
            if (!cur.empty())
                mi_store_[x] = cur;
            else if (cache_all_)
                mi_empty_.insert(x);
        }
        return cur;
    }

    const CompressedText& z_;
    std::string_view p_;
    int k_, h_;
    bool cache_all_;
    SpecialSet c_;
    std::unordered_map<int, int> shortcut_;
    std::unordered_map<int, std::vector<int>> mi_store_;
    std::unordered_set<int> mi_empty_;
};

void validate(std::string_view p, int k, int tau) {
    if (k < 0) throw std::invalid_argument("negative error threshold");
    if (k >= static_cast<int>(p.size()))
        throw std::invalid_argument(
            "error threshold must be below the pattern length");
    if (tau < 1) throw std::invalid_argument("spacing must be positive");
}

}  // namespace

std::vector<int> capprox_search(const CompressedText& z, std::string_view p,
                                int k, int tau, CapproxStats* stats) {
    validate(p, k, tau);
    std::vector<int> out;
    ApproxScanner scan(z, p, k, tau);
    scan.run(stats, [&](const ApproxDescription& d) {
        out.insert(out.end(), d.matches.begin(), d.matches.end());
    });
    return out;
}

std::vector<ApproxDescription> describe_elements(const CompressedText& z,
                                                 std::string_view p, int k,
                                                 int tau) {
    validate(p, k, tau);
    std::vector<ApproxDescription> out;
    ApproxScanner scan(z, p, k, tau);
    scan.run(nullptr, [&](const ApproxDescription& d) { out.push_back(d); });
    return out;
}

namespace {

// one simulation step with the start state (and everything reachable from it
// for free) injected before reading the symbol, as in substring matching
SparseStateSet dstep(const Tnfa& a, const SparseStateSet& s,
                     const SparseStateSet& start_closure, int symbol) {
    SparseStateSet t = s;
    t.insert(start_closure.begin(), start_closure.end());
    return close_set(a, move_set(a, t, symbol));
}

}  // namespace

std::map<int, std::vector<SparseStateSet>> transition_sets_at(
    const SpecialSet& c, const CompressedText& z, const Tnfa& a) {
    SparseStateSet start_closure = close_set(a, {a.start});
    std::map<int, std::vector<SparseStateSet>> out;
    std::vector<int> ids;
    ids.reserve(c.members.size());
    for (auto [v, len] : c.members) ids.push_back(v);
    std::sort(ids.begin(), ids.end());
    for (int y : ids) {
        auto& sets = out[y];
        sets.resize(a.n_states);
        if (y == 0) {
            for (int s = 0; s < a.n_states; ++s)
                sets[s] = close_set(a, {s, a.start});
            continue;
        }
        std::string path;
        int w = y;
        do {
            if (z.label(w) >= 0) path.push_back(static_cast<char>(z.label(w)));
            w = z.parent(w);
        } while (w != 0 && !c.contains(w));
        std::reverse(path.begin(), path.end());
        const auto& base = out.at(w);
        for (int s = 0; s < a.n_states; ++s) {
            SparseStateSet cur = base[s];
            for (char ch : path)
                cur = dstep(a, cur, start_closure,
                            static_cast<unsigned char>(ch));
            sets[s] = std::move(cur);
        }
    }
    return out;
}

namespace {

struct ChainItem {
    int pos, node, state;
    bool operator<(const ChainItem& o) const { return pos < o.pos; }
};

}  // namespace

std::vector<int> cregex_search(const CompressedText& z, const RegexAst& r,
                               int tau,
                               std::vector<CregexReport>* trace) {
    if (tau < 1) throw std::invalid_argument("spacing must be positive");
    Tnfa a = thompson(r);
    SparseStateSet start_closure = close_set(a, {a.start});
    int n = static_cast<int>(z.original_length);
    if (start_closure.count(a.accept)) {
        // the empty string matches, so every position does
        std::vector<int> all(n + 1);
        std::iota(all.begin(), all.end(), 0);
        return all;
    }
    if (z.phrases.empty()) return {};

    int m = a.n_states;
    auto trie = build_trie(z);
    // per node and starting state, the deepest prefix of its phrase whose end
    // is a match end (0: none); computed along a depth-first walk that keeps
    // the state sets of the current root path only
    std::vector<std::vector<int>> lastmatch(z.n_nodes());
    lastmatch[0].assign(m, 0);
    {
        struct Frame {
            int node;
            std::map<int, int>::const_iterator it, end;
        };
        std::vector<Frame> stack;
        std::vector<std::vector<SparseStateSet>> dsets;
        dsets.emplace_back(m);
        for (int s = 0; s < m; ++s)
            dsets[0][s] = close_set(a, {s, a.start});
        stack.push_back({0, trie[0].begin(), trie[0].end()});
        while (!stack.empty()) {
            if (stack.back().it == stack.back().end) {
                stack.pop_back();
                dsets.pop_back();
                continue;
            }
            int parent = stack.back().node;
            auto [label, child] = *stack.back().it;
            ++stack.back().it;
            const auto& pd = dsets.back();
            std::vector<SparseStateSet> cd(m);
            auto& lm = lastmatch[child];
            lm.resize(m);
            for (int s = 0; s < m; ++s) {
                cd[s] = dstep(a, pd[s], start_closure, label);
                lm[s] = cd[s].count(a.accept) ? child : lastmatch[parent][s];
            }
            stack.push_back({child, trie[child].begin(), trie[child].end()});
            dsets.push_back(std::move(cd));
        }
    }
    for (int v = 1; v < z.n_nodes(); ++v)
        if (z.label(v) < 0) lastmatch[v] = lastmatch[z.parent(v)];

    SpecialSet c = select_special(z, tau);
    auto tsets = transition_sets_at(c, z, a);

    std::vector<int> out;
    SparseStateSet boundary = start_closure;
    int u = 1;
    for (size_t i = 0; i < z.phrases.size(); ++i) {
        int v = z.phrases[i];
        int l = z.depth(v);
        SparseStateSet roots = boundary;
        roots.insert(a.start);

        // walk the match chains of all live states in parallel, deepest
        // position first, dropping duplicates
        std::priority_queue<ChainItem> heap;
        for (int s : roots) {
            int x = lastmatch[v][s];
            if (x != 0) heap.push({u + z.depth(x) - 1, x, s});
        }
        std::vector<int> local;
        std::vector<CregexReport> local_trace;
        int last_emitted = -1;
        while (!heap.empty()) {
            ChainItem item = heap.top();
            heap.pop();
            if (item.pos != last_emitted) {
                local.push_back(item.pos);
                if (trace)
                    local_trace.push_back({item.pos, static_cast<int>(i),
                                           item.node, item.state});
                last_emitted = item.pos;
            }
            int nx = lastmatch[z.parent(item.node)][item.state];
            if (nx != 0) heap.push({u + z.depth(nx) - 1, nx, item.state});
        }
        std::reverse(local.begin(), local.end());
        out.insert(out.end(), local.begin(), local.end());
        if (trace)
            trace->insert(trace->end(), local_trace.rbegin(),
                          local_trace.rend());

        // advance the boundary set past this phrase: the precomputed sets of
        // the nearest special ancestor, then the leftover path characters
        std::string path;
        int w = v;
        while (w != 0 && !c.contains(w)) {
            if (z.label(w) >= 0) path.push_back(static_cast<char>(z.label(w)));
            w = z.parent(w);
        }
        std::reverse(path.begin(), path.end());
        const auto& base = tsets.at(w);
        SparseStateSet next;
        for (int s : roots) next.insert(base[s].begin(), base[s].end());
        for (char ch : path)
            next = dstep(a, next, start_closure, static_cast<unsigned char>(ch));
        boundary = std::move(next);
        u += l;
    }
    return out;
}

}  // namespace patmat
