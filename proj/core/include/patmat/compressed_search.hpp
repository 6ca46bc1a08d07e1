#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "patmat/regex.hpp"
#include "patmat/zl.hpp"

namespace patmat {

// Per-element summary carried through the left-to-right scan: everything a
// step needs from the past is the previous element's relevant suffix plus the
// sparse store of internal-match sets.
struct ApproxDescription {
    int index = 0;  // position in the element sequence, 0-based
    int u = 0;      // phrase start in the text, 1-based
    int l = 0;      // phrase length
    std::string rpre, rsuf;
    std::vector<int> mi;       // internal matches, phrase-relative
    std::vector<int> mo;       // matches in rsuf(prev) . rpre(this)
    std::vector<int> matches;  // absolute text positions reported here
};

struct CapproxStats {
    size_t peak_live = 0;  // special members + shortcuts + stored match sets
};

// All approximate occurrences of p (error threshold k) in the text that z
// represents, without decompressing it. Requires k < |p|.
std::vector<int> capprox_search(const CompressedText& z, std::string_view p,
                                int k, int tau, CapproxStats* stats = nullptr);

std::vector<ApproxDescription> describe_elements(const CompressedText& z,
                                                 std::string_view p, int k,
                                                 int tau);

// For each special element, the state-set reached from every single state by
// reading its phrase (with the start state injected before each character;
// the empty phrase contributes the closure of {s, theta}).
std::map<int, std::vector<SparseStateSet>> transition_sets_at(
    const SpecialSet& c, const CompressedText& z, const Tnfa& a);

struct CregexReport {
    int pos = 0;    // reported text position
    int elem = 0;   // element index it was reported at
    int node = 0;   // trie node x with pos = u + depth(x) - 1
    int state = 0;  // state of the previous boundary set the chain came from
};

// All ending positions of substrings of the represented text matching the
// expression; equals find_matches on the decompressed text.
std::vector<int> cregex_search(const CompressedText& z, const RegexAst& r,
                               int tau, std::vector<CregexReport>* trace = nullptr);

}  // namespace patmat
