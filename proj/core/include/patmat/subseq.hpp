#pragma once

#include <iosfwd>
#include <string_view>
#include <vector>

#include "patmat/container.hpp"

namespace patmat {

// Subsequence-query index over a fixed text: positions 1..n are cut into
// blocks of sigma (the number of distinct symbols present); a query walks the
// text by per-block successor searches and, when the current block has no
// further occurrence, one precomputed long jump.
struct SubseqIndex {
    int n = 0;
    int sigma = 0;
    std::vector<unsigned char> symbols;       // distinct symbols, ascending
    std::vector<std::vector<int>> positions;  // per symbol: 1-based, ascending
    // per block, per symbol: first occurrence after the block's last
    // position, or 0
    std::vector<std::vector<int>> long_jump;

    int n_blocks() const { return static_cast<int>(long_jump.size()); }
    int symbol_code(unsigned char c) const;  // index into symbols, or -1
};

struct SubseqQueryStats {
    int in_block_searches = 0;
    int long_jumps = 0;
};

SubseqIndex build_index(std::string_view text);

bool is_subsequence(const SubseqIndex& ix, std::string_view p,
                    SubseqQueryStats* stats = nullptr);

// "PMSQ1" container: little-endian block table and per-symbol position arrays.
void save_index(const SubseqIndex& ix, std::ostream& os);
SubseqIndex load_index(std::istream& is);  // throws ContainerError

}  // namespace patmat
