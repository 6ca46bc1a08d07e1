#include "patmat/approx.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <string>

namespace patmat {

int edit_distance(std::string_view s, std::string_view t) {
    if (s.size() < t.size()) std::swap(s, t);  // row over the shorter string
    int m = static_cast<int>(t.size()), n = static_cast<int>(s.size());
    std::vector<int> row(m + 1);
    for (int i = 0; i <= m; ++i) row[i] = i;
    for (int j = 1; j <= n; ++j) {
        int diag = row[0];
        row[0] = j;
        for (int i = 1; i <= m; ++i) {
            int next_diag = row[i];
            row[i] = std::min({diag + (t[i - 1] == s[j - 1] ? 0 : 1), row[i] + 1,
                               row[i - 1] + 1});
            diag = next_diag;
        }
    }
    return row[m];
}

std::pair<std::vector<int>, std::vector<int>> shared_rank_codes(
    std::string_view a, std::string_view b) {
    std::set<char> in_a(a.begin(), a.end()), in_b(b.begin(), b.end());
    std::map<char, int> rank;
    for (char c : in_a)
        if (in_b.count(c)) rank.emplace(c, static_cast<int>(rank.size()) + 1);
    auto codes = [&](std::string_view s) {
        std::vector<int> v(s.size(), 0);
        for (size_t i = 0; i < s.size(); ++i) {
            auto it = rank.find(s[i]);
            if (it != rank.end()) v[i] = it->second;
        }
        return v;
    };
    return {codes(a), codes(b)};
}

namespace {

// cell interior relative to its top-left corner: boundary deltas in, boundary
// deltas out
struct CellResult {
    std::vector<int> bottom;  // along the bottom row, left to right
    std::vector<int> right;   // along the right column, top to bottom
};

CellResult eval_cell(const std::vector<int>& sv, const std::vector<int>& tv,
                     const std::vector<int>& dtop, const std::vector<int>& dleft) {
    int x = static_cast<int>(sv.size());
    std::vector<std::vector<int>> g(x + 1, std::vector<int>(x + 1));
    g[0][0] = 0;
    for (int j = 1; j <= x; ++j) g[0][j] = g[0][j - 1] + dtop[j - 1];
    for (int i = 1; i <= x; ++i) {
        g[i][0] = g[i - 1][0] + dleft[i - 1];
        for (int j = 1; j <= x; ++j) {
            int lam = !(sv[i - 1] == tv[j - 1] && sv[i - 1] > 0);
            g[i][j] = std::min(
                {g[i - 1][j - 1] + lam, g[i - 1][j] + 1, g[i][j - 1] + 1});
        }
    }
    CellResult r;
    for (int j = 1; j <= x; ++j) r.bottom.push_back(g[x][j] - g[x][j - 1]);
    for (int i = 1; i <= x; ++i) r.right.push_back(g[i][x] - g[i - 1][x]);
    return r;
}

}  // namespace

int edit_distance_fr(std::string_view s, std::string_view t, int x, int y,
                     bool* used_fallback, int word_bits) {
    if (used_fallback) *used_fallback = false;
    int bits = 1;
    while ((1ll << bits) < static_cast<long long>(x) * y + 1) ++bits;
    if (x < 1 || y < 1 || 2 * x * bits > word_bits) {
        if (used_fallback) *used_fallback = true;
        return edit_distance(s, t);
    }

    int m = static_cast<int>(s.size()), n = static_cast<int>(t.size());
    int M = (m / x) * x, N = (n / x) * x;

    // cell region: rows 1..M, columns 1..N, processed in bands of x rows
    std::vector<int> top(N + 1);  // current band's top boundary row
    for (int j = 0; j <= N; ++j) top[j] = j;
    std::vector<int> colN(M + 1);  // column N of the region
    colN[0] = N;

    std::map<std::string, CellResult> memo;
    int xy = x * y;
    std::pair<int, int> cached_macro = {-1, -1};
    std::pair<std::vector<int>, std::vector<int>> macro_codes;

    for (int r0 = 0; r0 + x <= M; r0 += x) {
        std::vector<int> bot(N + 1);
        bot[0] = r0 + x;
        std::vector<int> left(x);  // D[r0+1 .. r0+x][c0]
        for (int i = 0; i < x; ++i) left[i] = r0 + 1 + i;
        for (int c0 = 0; c0 + x <= N; c0 += x) {
            std::pair<int, int> mc = {r0 / xy, c0 / xy};
            if (mc != cached_macro) {
                cached_macro = mc;
                macro_codes = shared_rank_codes(
                    s.substr(mc.first * xy, std::min(xy, m - mc.first * xy)),
                    t.substr(mc.second * xy, std::min(xy, n - mc.second * xy)));
            }
            int soff = r0 - mc.first * xy, toff = c0 - mc.second * xy;
            std::vector<int> sv(macro_codes.first.begin() + soff,
                                macro_codes.first.begin() + soff + x);
            std::vector<int> tv(macro_codes.second.begin() + toff,
                                macro_codes.second.begin() + toff + x);
            std::vector<int> dtop(x), dleft(x);
            for (int j = 0; j < x; ++j) dtop[j] = top[c0 + j + 1] - top[c0 + j];
            dleft[0] = left[0] - top[c0];
            for (int i = 1; i < x; ++i) dleft[i] = left[i] - left[i - 1];

            std::string key;
            key.reserve(6 * x);
            for (int v : sv) {
                key += static_cast<char>(v & 0xff);
                key += static_cast<char>(v >> 8);
            }
            for (int v : tv) {
                key += static_cast<char>(v & 0xff);
                key += static_cast<char>(v >> 8);
            }
            for (int v : dtop) key += static_cast<char>(v + 1);
            for (int v : dleft) key += static_cast<char>(v + 1);
            auto it = memo.find(key);
            if (it == memo.end())
                it = memo.emplace(key, eval_cell(sv, tv, dtop, dleft)).first;
            const CellResult& cell = it->second;

            int run = top[c0 + x];  // walks the right column
            for (int i = 0; i < x; ++i) {
                run += cell.right[i];
                left[i] = run;
            }
            run = left[x - 1];  // D[r0+x][c0+x], walks back along the bottom
            for (int j = x - 1; j >= 0; --j) {
                bot[c0 + j + 1] = run;
                run -= cell.bottom[j];
            }
        }
        for (int i = 0; i < x; ++i) colN[r0 + 1 + i] = N >= x ? left[i] : r0 + 1 + i;
        top = bot;
    }

    // region to the right of the cells: rows 1..M, columns N..n
    std::vector<int> right_row(n - N + 1);
    for (int j = 0; j <= n - N; ++j) right_row[j] = N + j;
    for (int r = 1; r <= M; ++r) {
        std::vector<int> cur(n - N + 1);
        cur[0] = colN[r];
        for (int j = 1; j <= n - N; ++j)
            cur[j] = std::min({right_row[j - 1] + (s[r - 1] == t[N + j - 1] ? 0 : 1),
                               right_row[j] + 1, cur[j - 1] + 1});
        right_row = std::move(cur);
    }

    // assemble row M over all columns, then finish rows M+1..m plainly
    std::vector<int> row(n + 1);
    for (int j = 0; j <= N; ++j) row[j] = M > 0 ? top[j] : j;
    for (int j = N; j <= n; ++j) row[j] = right_row[j - N];
    for (int r = M + 1; r <= m; ++r) {
        int diag = row[0];
        row[0] = r;
        for (int j = 1; j <= n; ++j) {
            int next_diag = row[j];
            row[j] = std::min({diag + (s[r - 1] == t[j - 1] ? 0 : 1), row[j] + 1,
                               row[j - 1] + 1});
            diag = next_diag;
        }
    }
    return row[n];
}

std::vector<int> approx_positions(std::string_view p, std::string_view q, int k) {
    int m = static_cast<int>(p.size()), n = static_cast<int>(q.size());
    if (k < 0) throw std::invalid_argument("negative error threshold");
    if (k >= m)
        throw std::invalid_argument(
            "error threshold must be below the pattern length");
    std::vector<int> col(m + 1), out;
    for (int i = 0; i <= m; ++i) col[i] = i;
    for (int j = 1; j <= n; ++j) {
        std::vector<int> cur(m + 1);
        cur[0] = 0;
        for (int i = 1; i <= m; ++i)
            cur[i] = std::min({col[i - 1] + (p[i - 1] == q[j - 1] ? 0 : 1),
                               col[i] + 1, cur[i - 1] + 1});
        col = std::move(cur);
        if (col[m] <= k) out.push_back(j);
    }
    return out;
}

ApproxRegexSim::ApproxRegexSim(const RegexAst& ast, int d, int x,
                               long long memo_budget)
    : dec_(nested_decompose(ast, x)), d_(d) {
    eval_.resize(dec_.subs.size());
    val_.resize(dec_.subs.size());
    old_.resize(dec_.subs.size());
    int max_states = 0;
    for (size_t i = 0; i < dec_.subs.size(); ++i) {
        const auto& sub = dec_.subs[i];
        int ns = sub.tnfa.n_states;
        max_states = std::max(max_states, ns);
        SubEval& e = eval_[i];
        e.fwd_pre.resize(ns);
        e.back_pre.resize(ns);
        for (const auto& t : sub.tnfa.transitions)
            if (t.symbol == kEpsilon)
                (t.back ? e.back_pre : e.fwd_pre)[t.to].push_back(t.from);
        int prev = 0;
        for (auto [theta, phi] : sub.child_states) {
            e.after.push_back(prev);
            e.upto.push_back(theta);
            prev = phi;
        }
        e.after.push_back(prev);
        e.upto.push_back(ns - 1);
        e.chunk_of.assign(ns, -1);
        for (size_t c = 0; c < e.after.size(); ++c)
            for (int v = e.after[c] + 1; v <= e.upto[c]; ++v)
                e.chunk_of[v] = static_cast<int>(c);
        val_[i].assign(ns, d + 1);
        old_[i].assign(ns, d + 1);
    }
    bits_ = 1;
    while ((1ll << bits_) < static_cast<long long>(d) + 2) ++bits_;
    memo_enabled_ =
        max_states * bits_ <= 64 && max_states <= 32 &&
        std::pow(static_cast<double>(d) + 2, max_states) <=
            static_cast<double>(memo_budget);
}

uint64_t ApproxRegexSim::pack(const std::vector<int>& v) const {
    uint64_t r = 0;
    for (size_t i = 0; i < v.size(); ++i)
        r |= static_cast<uint64_t>(v[i]) << (i * bits_);
    return r;
}

void ApproxRegexSim::unpack(uint64_t r, std::vector<int>& v) const {
    uint64_t mask = (1ull << bits_) - 1;
    for (size_t i = 0; i < v.size(); ++i)
        v[i] = static_cast<int>((r >> (i * bits_)) & mask);
}

void ApproxRegexSim::init_values() {
    // forward-only values against the empty prefix
    std::function<int(int, int)> init_sub = [&](int sub, int b) -> int {
        const auto& e = eval_[sub];
        const auto& tnfa = dec_.subs[sub].tnfa;
        auto& val = val_[sub];
        std::fill(val.begin(), val.end(), d_ + 1);
        val[0] = std::min(b, d_ + 1);
        for (size_t c = 0; c < e.after.size(); ++c) {
            for (int v = e.after[c] + 1; v <= e.upto[c]; ++v) {
                int sym = tnfa.state_symbol[v];
                if (sym >= 0 && sym != kBeta) {
                    val[v] = std::min(val[tnfa.symbol_source[v]] + 1, d_ + 1);
                } else {
                    int best = d_ + 1;
                    for (int w : e.fwd_pre[v]) best = std::min(best, val[w]);
                    val[v] = best;
                }
            }
            if (c < dec_.subs[sub].children.size()) {
                auto [theta, phi] = dec_.subs[sub].child_states[c];
                val[phi] = init_sub(dec_.subs[sub].children[c], val[theta]);
            }
        }
        return val[tnfa.accept];
    };
    init_sub(0, 0);
}

void ApproxRegexSim::pass1_chunk(int sub, int chunk, int symbol) {
    const auto& e = eval_[sub];
    const auto& tnfa = dec_.subs[sub].tnfa;
    auto& val = val_[sub];
    const auto& old = old_[sub];

    uint64_t eq = 0;
    if (memo_enabled_) {
        for (int v = e.after[chunk] + 1; v <= e.upto[chunk]; ++v)
            if (tnfa.state_symbol[v] == symbol) eq |= 1ull << v;
        std::array<uint64_t, 3> key = {
            pack(val), pack(old),
            (static_cast<uint64_t>(sub) << 40) |
                (static_cast<uint64_t>(chunk) << 32) | eq};
        auto it = memo1_.find(key);
        if (it != memo1_.end()) {
            unpack(it->second, val);
            return;
        }
        for (int v = e.after[chunk] + 1; v <= e.upto[chunk]; ++v)
            step1(sub, v, symbol);
        memo1_.emplace(key, pack(val));
        return;
    }
    for (int v = e.after[chunk] + 1; v <= e.upto[chunk]; ++v) step1(sub, v, symbol);
}

void ApproxRegexSim::step1(int sub, int v, int symbol) {
    const auto& e = eval_[sub];
    const auto& tnfa = dec_.subs[sub].tnfa;
    auto& val = val_[sub];
    const auto& old = old_[sub];
    int sym = tnfa.state_symbol[v];
    if (sym >= 0 && sym != kBeta) {
        int pred = tnfa.symbol_source[v];
        int nv = std::min(
            {old[v] + 1, old[pred] + (sym == symbol ? 0 : 1), val[pred] + 1});
        val[v] = std::min(nv, d_ + 1);
    } else {
        int best = d_ + 1;
        for (int w : e.fwd_pre[v]) best = std::min(best, val[w]);
        val[v] = best;
    }
}

void ApproxRegexSim::step2(int sub, int v) {
    const auto& e = eval_[sub];
    const auto& tnfa = dec_.subs[sub].tnfa;
    auto& val = val_[sub];
    int sym = tnfa.state_symbol[v];
    if (sym >= 0 && sym != kBeta) {
        int pred = tnfa.symbol_source[v];
        val[v] = std::min(val[v], std::min(val[pred] + 1, d_ + 1));
    } else {
        int best = val[v];
        for (int w : e.fwd_pre[v]) best = std::min(best, val[w]);
        for (int w : e.back_pre[v]) best = std::min(best, val[w]);
        val[v] = best;
    }
}

void ApproxRegexSim::pass2_chunk(int sub, int chunk) {
    const auto& e = eval_[sub];
    auto& val = val_[sub];
    if (memo_enabled_) {
        std::array<uint64_t, 3> key = {
            pack(val), 0,
            (static_cast<uint64_t>(sub) << 40) |
                (static_cast<uint64_t>(chunk) << 32)};
        auto it = memo2_.find(key);
        if (it != memo2_.end()) {
            unpack(it->second, val);
            return;
        }
        for (int v = e.after[chunk] + 1; v <= e.upto[chunk]; ++v) step2(sub, v);
        memo2_.emplace(key, pack(val));
        return;
    }
    for (int v = e.after[chunk] + 1; v <= e.upto[chunk]; ++v) step2(sub, v);
}

int ApproxRegexSim::next1(int sub, int b, int symbol) {
    auto& val = val_[sub];
    val[0] = std::min(b, d_ + 1);
    const auto& e = eval_[sub];
    for (size_t c = 0; c < e.after.size(); ++c) {
        pass1_chunk(sub, static_cast<int>(c), symbol);
        if (c < dec_.subs[sub].children.size()) {
            auto [theta, phi] = dec_.subs[sub].child_states[c];
            val[phi] = next1(dec_.subs[sub].children[c], val[theta], symbol);
        }
    }
    return val[dec_.subs[sub].tnfa.accept];
}

int ApproxRegexSim::next2(int sub, int b) {
    auto& val = val_[sub];
    val[0] = std::min(b, d_ + 1);
    const auto& e = eval_[sub];
    for (size_t c = 0; c < e.after.size(); ++c) {
        pass2_chunk(sub, static_cast<int>(c));
        if (c < dec_.subs[sub].children.size()) {
            auto [theta, phi] = dec_.subs[sub].child_states[c];
            val[phi] = next2(dec_.subs[sub].children[c], val[theta]);
        }
    }
    return val[dec_.subs[sub].tnfa.accept];
}

std::vector<int> ApproxRegexSim::run(std::string_view q, bool substring) {
    init_values();
    int accept = dec_.subs[0].tnfa.accept;
    std::vector<int> out;
    if (val_[0][accept] <= d_) out.push_back(0);
    for (size_t j = 1; j <= q.size(); ++j) {
        old_ = val_;
        int b = substring ? 0 : std::min(static_cast<int>(j), d_ + 1);
        next1(0, b, static_cast<unsigned char>(q[j - 1]));
        next2(0, b);
        if (val_[0][accept] <= d_) out.push_back(static_cast<int>(j));
    }
    return out;
}

std::vector<int> ApproxRegexSim::substring_matches(std::string_view q) {
    return run(q, true);
}

bool ApproxRegexSim::accepts_within(std::string_view q) {
    std::vector<int> ends = run(q, false);
    return !ends.empty() && ends.back() == static_cast<int>(q.size());
}

std::vector<int> approx_regex(const RegexAst& ast, std::string_view q, int d) {
    ApproxRegexSim sim(ast, d);
    return sim.substring_matches(q);
}

bool approx_regex_accepts(const RegexAst& ast, std::string_view q, int d) {
    ApproxRegexSim sim(ast, d);
    return sim.accepts_within(q);
}

}  // namespace patmat
