#include "patmat/tree_distance.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <set>
#include <unordered_map>

namespace patmat {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

CostFunction CostFunction::unit() { return CostFunction(); }

CostFunction CostFunction::from_table(
    const std::vector<std::tuple<std::string, std::string, double>>& entries) {
    CostFunction c;
    for (const auto& [a, b, cost] : entries) {
        c.table_[{a, b}] = cost;
        c.table_[{b, a}] = cost;
    }
    return c;
}

double CostFunction::operator()(const Sym& a, const Sym& b) const {
    if (!table_.empty()) {
        auto it = table_.find({key(a), key(b)});
        if (it != table_.end()) return it->second;
    }
    return a == b ? 0.0 : 1.0;
}

void CostFunction::validate_metric(const std::vector<std::string>& alphabet) const {
    std::set<std::string> uniq(alphabet.begin(), alphabet.end());
    std::vector<Sym> syms = {std::nullopt};
    for (const auto& s : uniq) {
        syms.emplace_back(s);
        if (syms.size() >= 41) break;
    }
    const CostFunction& c = *this;
    for (const auto& a : syms) {
        if (c(a, a) != 0.0)
            throw std::invalid_argument("cost function violates identity");
        for (const auto& b : syms) {
            double ab = c(a, b);
            if (ab < 0.0) throw std::invalid_argument("negative cost");
            if (a != b && ab == 0.0)
                throw std::invalid_argument("zero cost between distinct labels");
            if (ab != c(b, a)) throw std::invalid_argument("cost function not symmetric");
            for (const auto& d : syms)
                if (c(a, d) > ab + c(b, d) + 1e-12)
                    throw std::invalid_argument("cost function violates triangle inequality");
        }
    }
}

namespace {

std::vector<std::string> labels_of(const LabeledTree& t1, const LabeledTree& t2) {
    std::vector<std::string> out;
    for (const auto& n : t1.nodes) out.push_back(n.label);
    for (const auto& n : t2.nodes) out.push_back(n.label);
    return out;
}

// Forest edit distance over postorder intervals. A forest is the interval
// [i, j] of postorder numbers; removing the rightmost root is [i, j-1] and the
// rightmost root's subtree starts at ll[j] = j - size + 1.
struct OracleCtx {
    const TreeIndex& x1;
    const TreeIndex& x2;
    const CostFunction& c;
    std::vector<int> ll1, ll2;
    std::unordered_map<uint64_t, double> memo;

    OracleCtx(const TreeIndex& a, const TreeIndex& b, const CostFunction& cost)
        : x1(a), x2(b), c(cost) {
        ll1.resize(a.n());
        ll2.resize(b.n());
        for (int v = 0; v < a.n(); ++v) ll1[a.post(v)] = a.post(v) - a.size(v) + 1;
        for (int v = 0; v < b.n(); ++v) ll2[b.post(v)] = b.post(v) - b.size(v) + 1;
    }

    CostFunction::Sym sym1(int post) const {
        return x1.tree().label(x1.node_at_post(post));
    }
    CostFunction::Sym sym2(int post) const {
        return x2.tree().label(x2.node_at_post(post));
    }

    double dist(int i1, int j1, int i2, int j2) {
        bool e1 = i1 > j1, e2 = i2 > j2;
        if (e1 && e2) return 0.0;
        uint64_t key = ((uint64_t)(i1 + 1) << 48) | ((uint64_t)(j1 + 1) << 32) |
                       ((uint64_t)(i2 + 1) << 16) | (uint64_t)(j2 + 1);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        double r;
        if (e2) {
            r = dist(i1, j1 - 1, i2, j2) + c(sym1(j1), std::nullopt);
        } else if (e1) {
            r = dist(i1, j1, i2, j2 - 1) + c(std::nullopt, sym2(j2));
        } else {
            double del = dist(i1, j1 - 1, i2, j2) + c(sym1(j1), std::nullopt);
            double ins = dist(i1, j1, i2, j2 - 1) + c(std::nullopt, sym2(j2));
            double rel = dist(i1, ll1[j1] - 1, i2, ll2[j2] - 1) +
                         dist(ll1[j1], j1 - 1, ll2[j2], j2 - 1) + c(sym1(j1), sym2(j2));
            r = std::min({del, ins, rel});
        }
        memo.emplace(key, r);
        return r;
    }
};

}  // namespace

double edit_distance_oracle(const LabeledTree& t1, const LabeledTree& t2,
                            const CostFunction& c) {
    c.validate_metric(labels_of(t1, t2));
    if (t1.empty() && t2.empty()) return 0.0;
    if (t1.empty()) {
        double s = 0;
        for (const auto& n : t2.nodes) s += c(std::nullopt, n.label);
        return s;
    }
    if (t2.empty()) {
        double s = 0;
        for (const auto& n : t1.nodes) s += c(n.label, std::nullopt);
        return s;
    }
    TreeIndex x1(t1), x2(t2);
    OracleCtx ctx(x1, x2, c);
    return ctx.dist(0, x1.n() - 1, 0, x2.n() - 1);
}

double zhang_shasha(const LabeledTree& t1, const LabeledTree& t2,
                    const CostFunction& c) {
    c.validate_metric(labels_of(t1, t2));
    if (t1.empty() || t2.empty()) return edit_distance_oracle(t1, t2, c);

    TreeIndex x1(t1), x2(t2);
    int n1 = x1.n(), n2 = x2.n();
    // Everything below is indexed by postorder number.
    std::vector<int> ll1(n1), ll2(n2);
    std::vector<CostFunction::Sym> lab1(n1), lab2(n2);
    for (int v = 0; v < n1; ++v) {
        ll1[x1.post(v)] = x1.post(v) - x1.size(v) + 1;
        lab1[x1.post(v)] = t1.label(v);
    }
    for (int v = 0; v < n2; ++v) {
        ll2[x2.post(v)] = x2.post(v) - x2.size(v) + 1;
        lab2[x2.post(v)] = t2.label(v);
    }
    // Keyroots: the root plus every node with a left sibling; equivalently the
    // highest node of each distinct leftmost-leaf path.
    auto keyroots = [](const std::vector<int>& ll) {
        int n = static_cast<int>(ll.size());
        std::vector<int> last(n, -1);
        for (int p = 0; p < n; ++p) last[ll[p]] = p;
        std::vector<int> kr;
        for (int p = 0; p < n; ++p)
            if (last[ll[p]] == p) kr.push_back(p);
        return kr;  // ascending postorder
    };
    std::vector<int> kr1 = keyroots(ll1), kr2 = keyroots(ll2);

    std::vector<std::vector<double>> td(n1, std::vector<double>(n2, 0.0));
    std::vector<std::vector<double>> fd(n1 + 1, std::vector<double>(n2 + 1, 0.0));

    for (int i : kr1) {
        for (int j : kr2) {
            int li = ll1[i], lj = ll2[j];
            fd[li][lj] = 0.0;
            for (int p = li; p <= i; ++p)
                fd[p + 1][lj] = fd[p][lj] + c(lab1[p], std::nullopt);
            for (int q = lj; q <= j; ++q)
                fd[li][q + 1] = fd[li][q] + c(std::nullopt, lab2[q]);
            for (int p = li; p <= i; ++p) {
                for (int q = lj; q <= j; ++q) {
                    double del = fd[p][q + 1] + c(lab1[p], std::nullopt);
                    double ins = fd[p + 1][q] + c(std::nullopt, lab2[q]);
                    if (ll1[p] == li && ll2[q] == lj) {
                        double rel = fd[p][q] + c(lab1[p], lab2[q]);
                        fd[p + 1][q + 1] = std::min({del, ins, rel});
                        td[p][q] = fd[p + 1][q + 1];
                    } else {
                        double sub = fd[ll1[p]][ll2[q]] + td[p][q];
                        fd[p + 1][q + 1] = std::min({del, ins, sub});
                    }
                }
            }
        }
    }
    return td[n1 - 1][n2 - 1];
}

namespace {

// Jiang–Wang–Zhang alignment. Forests are half-open child ranges [a, b) of a
// parent node; cross-parent pairs arise when a run of subtrees is aligned
// under a spaced-out node.
struct AlignCtx {
    const LabeledTree& t1;
    const LabeledTree& t2;
    const CostFunction& c;
    std::vector<double> sub1, sub2;  // cost of aligning T(v) with θ
    std::vector<std::vector<double>> at_memo;
    std::map<std::array<int, 6>, double> af_memo;

    AlignCtx(const LabeledTree& a, const LabeledTree& b, const CostFunction& cost)
        : t1(a), t2(b), c(cost) {
        sub1 = subtree_costs(t1, true);
        sub2 = subtree_costs(t2, false);
        at_memo.assign(t1.size(), std::vector<double>(t2.size(), -1.0));
    }

    std::vector<double> subtree_costs(const LabeledTree& t, bool first) {
        std::vector<double> s(t.size(), 0.0);
        // children have larger ids than parents is not guaranteed; recurse.
        std::vector<int> order;
        std::vector<int> stack = {t.root};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            order.push_back(v);
            for (int ch : t.children(v)) stack.push_back(ch);
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            int v = *it;
            s[v] = first ? c(t.label(v), std::nullopt) : c(std::nullopt, t.label(v));
            for (int ch : t.children(v)) s[v] += s[ch];
        }
        return s;
    }

    double at(int v, int w) {
        double& m = at_memo[v][w];
        if (m >= 0.0) return m;
        int dv = static_cast<int>(t1.children(v).size());
        int dw = static_cast<int>(t2.children(w).size());
        double best = af(v, 0, dv, w, 0, dw) + c(t1.label(v), t2.label(w));
        for (int r = 0; r < dw; ++r) {
            int wr = t2.children(w)[r];
            best = std::min(best, sub2[w] + at(v, wr) - sub2[wr]);
        }
        for (int r = 0; r < dv; ++r) {
            int vr = t1.children(v)[r];
            best = std::min(best, sub1[v] + at(vr, w) - sub1[vr]);
        }
        return m = best;
    }

    double af(int p1, int a, int b, int p2, int cc, int d) {
        if (a == b && cc == d) return 0.0;
        if (a == b) {
            double s = 0;
            for (int q = cc; q < d; ++q) s += sub2[t2.children(p2)[q]];
            return s;
        }
        if (cc == d) {
            double s = 0;
            for (int q = a; q < b; ++q) s += sub1[t1.children(p1)[q]];
            return s;
        }
        std::array<int, 6> key = {p1, a, b, p2, cc, d};
        auto it = af_memo.find(key);
        if (it != af_memo.end()) return it->second;

        int vs = t1.children(p1)[b - 1];
        int wt = t2.children(p2)[d - 1];
        double best = af(p1, a, b - 1, p2, cc, d - 1) + at(vs, wt);
        best = std::min(best, af(p1, a, b - 1, p2, cc, d) + sub1[vs]);
        best = std::min(best, af(p1, a, b, p2, cc, d - 1) + sub2[wt]);
        // A run of at least two subtrees of F1 goes below the spaced node
        // opposing w_t; the run aligns with w_t's children forest.
        int dwt = static_cast<int>(t2.children(wt).size());
        for (int k = a; k + 1 < b; ++k) {
            double cand = c(std::nullopt, t2.label(wt)) + af(p1, a, k, p2, cc, d - 1) +
                          af(p1, k, b, wt, 0, dwt);
            best = std::min(best, cand);
        }
        int dvs = static_cast<int>(t1.children(vs).size());
        for (int k = cc; k + 1 < d; ++k) {
            double cand = c(t1.label(vs), std::nullopt) + af(p1, a, b - 1, p2, cc, k) +
                          af(vs, 0, dvs, p2, k, d);
            best = std::min(best, cand);
        }
        af_memo.emplace(key, best);
        return best;
    }
};

}  // namespace

double alignment_distance(const LabeledTree& t1, const LabeledTree& t2,
                          const CostFunction& c) {
    c.validate_metric(labels_of(t1, t2));
    if (t1.empty() && t2.empty()) return 0.0;
    if (t1.empty() || t2.empty()) return edit_distance_oracle(t1, t2, c);
    AlignCtx ctx(t1, t2, c);
    return ctx.at(t1.root, t2.root);
}

}  // namespace patmat
