#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "patmat/tree.hpp"

namespace patmat {

// Cost of relabeling/inserting/deleting; λ (the blank) is passed as nullopt.
// Must be a metric; validated by sampling over the labels actually in use.
class CostFunction {
public:
    using Sym = std::optional<std::string>;

    static CostFunction unit();
    // Entries are (a, b, cost) with λ spelled "-". Symmetric closure is applied;
    // pairs not listed fall back to unit cost.
    static CostFunction from_table(
        const std::vector<std::tuple<std::string, std::string, double>>& entries);

    double operator()(const Sym& a, const Sym& b) const;

    // Throws std::invalid_argument when identity/symmetry/triangle fails on the
    // sampled alphabet (λ is always included in the sample).
    void validate_metric(const std::vector<std::string>& alphabet) const;

private:
    std::map<std::pair<std::string, std::string>, double> table_;
    static std::string key(const Sym& s) { return s ? *s : "-"; }
};

// Forest-recursion edit distance, memoized over deleted-subforest pairs.
// Exact but up to O(n1^2 n2^2) subproblems; intended as a test oracle.
double edit_distance_oracle(const LabeledTree& t1, const LabeledTree& t2,
                            const CostFunction& c);

double zhang_shasha(const LabeledTree& t1, const LabeledTree& t2,
                    const CostFunction& c);

double alignment_distance(const LabeledTree& t1, const LabeledTree& t2,
                          const CostFunction& c);

}  // namespace patmat
