#include "patmat/subseq.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

namespace patmat {

int SubseqIndex::symbol_code(unsigned char c) const {
    auto it = std::lower_bound(symbols.begin(), symbols.end(), c);
    if (it == symbols.end() || *it != c) return -1;
    return static_cast<int>(it - symbols.begin());
}

SubseqIndex build_index(std::string_view text) {
    SubseqIndex ix;
    ix.n = static_cast<int>(text.size());
    bool present[256] = {};
    for (unsigned char c : text) present[c] = true;
    for (int c = 0; c < 256; ++c)
        if (present[c]) ix.symbols.push_back(static_cast<unsigned char>(c));
    ix.sigma = static_cast<int>(ix.symbols.size());

    ix.positions.resize(ix.sigma);
    for (int i = 0; i < ix.n; ++i)
        ix.positions[ix.symbol_code(text[i])].push_back(i + 1);

    if (ix.sigma == 0) return ix;
    int blocks = (ix.n + ix.sigma - 1) / ix.sigma;
    ix.long_jump.assign(blocks, std::vector<int>(ix.sigma, 0));
    std::vector<int> next_occ(ix.sigma, 0);
    int pos = ix.n;
    for (int b = blocks - 1; b >= 0; --b) {
        int block_end = std::min(ix.n, (b + 1) * ix.sigma);
        while (pos > block_end) {
            next_occ[ix.symbol_code(text[pos - 1])] = pos;
            --pos;
        }
        ix.long_jump[b] = next_occ;
    }
    return ix;
}

bool is_subsequence(const SubseqIndex& ix, std::string_view p,
                    SubseqQueryStats* stats) {
    int cur = 0;  // last matched position, 1-based; 0 before the text
    for (unsigned char c : p) {
        int code = ix.symbol_code(c);
        if (code < 0 || cur >= ix.n) return false;
        int b = cur / ix.sigma;
        int block_end = std::min(ix.n, (b + 1) * ix.sigma);
        const std::vector<int>& occ = ix.positions[code];
        auto it = std::upper_bound(occ.begin(), occ.end(), cur);
        if (stats) ++stats->in_block_searches;
        if (it != occ.end() && *it <= block_end) {
            cur = *it;
            continue;
        }
        int jump = ix.long_jump[b][code];
        if (stats) ++stats->long_jumps;
        if (jump == 0) return false;
        cur = jump;
    }
    return true;
}

void save_index(const SubseqIndex& ix, std::ostream& os) {
    os.write("PMSQ1", 5);
    io::put_u64(os, static_cast<uint64_t>(ix.n));
    io::put_u32(os, static_cast<uint32_t>(ix.sigma));
    for (unsigned char c : ix.symbols) os.put(static_cast<char>(c));
    for (const auto& row : ix.long_jump)
        for (int v : row) io::put_u64(os, static_cast<uint64_t>(v));
    for (const auto& occ : ix.positions) {
        io::put_u64(os, occ.size());
        for (int v : occ) io::put_u64(os, static_cast<uint64_t>(v));
    }
}

SubseqIndex load_index(std::istream& is) {
    io::expect_magic(is, "PMSQ1");
    SubseqIndex ix;
    uint64_t n = io::get_u64(is);
    uint32_t sigma = io::get_u32(is);
    if (n > (1ull << 40) || sigma > 256 || (sigma == 0 && n != 0))
        throw ContainerError("implausible header");
    ix.n = static_cast<int>(n);
    ix.sigma = static_cast<int>(sigma);
    for (uint32_t i = 0; i < sigma; ++i) {
        int c = is.get();
        if (c == EOF) throw ContainerError("truncated symbol table");
        if (!ix.symbols.empty() && c <= ix.symbols.back())
            throw ContainerError("symbol table not ascending");
        ix.symbols.push_back(static_cast<unsigned char>(c));
    }
    int blocks = sigma == 0 ? 0 : (ix.n + ix.sigma - 1) / ix.sigma;
    ix.long_jump.assign(blocks, std::vector<int>(ix.sigma, 0));
    for (auto& row : ix.long_jump)
        for (int& v : row) {
            uint64_t j = io::get_u64(is);
            if (j > n) throw ContainerError("long jump out of range");
            v = static_cast<int>(j);
        }
    ix.positions.resize(ix.sigma);
    uint64_t total = 0;
    for (auto& occ : ix.positions) {
        uint64_t count = io::get_u64(is);
        if (count > n) throw ContainerError("position count out of range");
        total += count;
        int prev = 0;
        for (uint64_t i = 0; i < count; ++i) {
            uint64_t p = io::get_u64(is);
            if (p <= static_cast<uint64_t>(prev) || p > n)
                throw ContainerError("positions not strictly ascending");
            prev = static_cast<int>(p);
            occ.push_back(prev);
        }
    }
    if (total != n) throw ContainerError("positions do not cover the text");
    return ix;
}

}  // namespace patmat
