#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "patmat/container.hpp"

namespace patmat {

enum class ZlScheme { ZL78, ZLW };

// A dictionary-trie node: the phrase it spells is phrase(ref) followed by the
// label. A label of -1 contributes no character (the ZL78 end-marker element
// and the final ZLW entry, whose label would be defined by a phrase that
// never comes).
struct ZlElement {
    int ref = 0;
    int label = -1;
};

// Element sequence plus the dictionary trie it defines. Node 0 is the root
// (empty phrase); node v > 0 is elements[v-1]. For ZL78 the text phrases are
// exactly nodes 1..n in order; for ZLW nodes 1..256 are the preloaded single
// bytes and the text phrases are arbitrary existing nodes.
struct CompressedText {
    ZlScheme scheme = ZlScheme::ZL78;
    uint64_t original_length = 0;
    std::vector<ZlElement> elements;
    std::vector<int> phrases;      // per text phrase, the node spelling it
    std::vector<int> phrase_len;   // per node (0..), characters in its phrase

    int n_nodes() const { return static_cast<int>(elements.size()) + 1; }
    int parent(int v) const { return elements[v - 1].ref; }
    int label(int v) const { return elements[v - 1].label; }
    int depth(int v) const { return phrase_len[v]; }
};

CompressedText zl_compress(std::string_view q, ZlScheme scheme);
std::string zl_decompress(const CompressedText& z);  // throws ContainerError

// appends phrase(v), cheapest from the right; used by the search modules to
// decode path labels without touching the whole text
void append_phrase(const CompressedText& z, int v, std::string& out);

// trie adjacency, children keyed by edge label
std::vector<std::map<int, int>> build_trie(const CompressedText& z);

// tau-spaced subset of the trie nodes: every node has an ancestor-path
// element of C within distance 2*tau, and |C| <= 2*N/tau + 1.
struct SpecialSet {
    int tau = 1;
    std::unordered_map<int, int> members;  // node -> phrase length
    bool contains(int v) const { return members.count(v) > 0; }
};

SpecialSet select_special(const CompressedText& z, int tau);

// "PMZL1" container: magic, scheme byte (78|87), varint element count, varint
// original length, then per element a varint reference (plus one label byte
// for ZL78; the trailing no-label element carries a zero marker byte).
void zl_save(const CompressedText& z, std::ostream& os);
CompressedText zl_load(std::istream& is);  // throws ContainerError

}  // namespace patmat
