#include "patmat/zl.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

namespace patmat {

namespace {

int add_node(CompressedText& z, int ref, int label) {
    z.elements.push_back({ref, label});
    z.phrase_len.push_back(z.phrase_len[ref] + (label >= 0 ? 1 : 0));
    return static_cast<int>(z.elements.size());
}

CompressedText compress78(std::string_view q) {
    CompressedText z;
    z.scheme = ZlScheme::ZL78;
    z.original_length = q.size();
    z.phrase_len.push_back(0);
    std::map<std::pair<int, int>, int> child;
    size_t pos = 0;
    while (pos < q.size()) {
        int v = 0;
        while (pos < q.size()) {
            auto it = child.find({v, static_cast<unsigned char>(q[pos])});
            if (it == child.end()) break;
            v = it->second;
            ++pos;
        }
        if (pos < q.size()) {
            int c = static_cast<unsigned char>(q[pos++]);
            int w = add_node(z, v, c);
            child[{v, c}] = w;
            z.phrases.push_back(w);
        } else {
            // the input ends inside an existing phrase: emit it with the
            // no-label end marker
            z.phrases.push_back(add_node(z, v, -1));
        }
    }
    return z;
}

CompressedText compressW(std::string_view q) {
    CompressedText z;
    z.scheme = ZlScheme::ZLW;
    z.original_length = q.size();
    z.phrase_len.push_back(0);
    std::map<std::pair<int, int>, int> child;
    for (int c = 0; c < 256; ++c) child[{0, c}] = add_node(z, 0, c);
    size_t pos = 0;
    while (pos < q.size()) {
        int v = 0;
        while (pos < q.size()) {
            auto it = child.find({v, static_cast<unsigned char>(q[pos])});
            if (it == child.end()) break;
            v = it->second;
            ++pos;
        }
        z.phrases.push_back(v);
        if (pos < q.size()) {
            // the walk stopped on the first character of the next phrase,
            // which becomes this entry's label
            int c = static_cast<unsigned char>(q[pos]);
            child[{v, c}] = add_node(z, v, c);
        }
    }
    return z;
}

}  // namespace

CompressedText zl_compress(std::string_view q, ZlScheme scheme) {
    return scheme == ZlScheme::ZL78 ? compress78(q) : compressW(q);
}

void append_phrase(const CompressedText& z, int v, std::string& out) {
    size_t mark = out.size();
    while (v != 0) {
        if (z.label(v) >= 0) out.push_back(static_cast<char>(z.label(v)));
        v = z.parent(v);
    }
    std::reverse(out.begin() + mark, out.end());
}

std::string zl_decompress(const CompressedText& z) {
    std::string out;
    out.reserve(z.original_length);
    for (int v : z.phrases) append_phrase(z, v, out);
    if (out.size() != z.original_length)
        throw ContainerError("decompressed length mismatch");
    return out;
}

std::vector<std::map<int, int>> build_trie(const CompressedText& z) {
    std::vector<std::map<int, int>> children(z.n_nodes());
    for (int v = 1; v < z.n_nodes(); ++v)
        if (z.label(v) >= 0) children[z.parent(v)][z.label(v)] = v;
    return children;
}

SpecialSet select_special(const CompressedText& z, int tau) {
    SpecialSet c;
    c.tau = tau;
    c.members[0] = 0;
    std::vector<int> path;
    for (int v = 1; v < z.n_nodes(); ++v) {
        path.clear();
        int w = v;
        while (!c.contains(w) && static_cast<int>(path.size()) < 2 * tau) {
            path.push_back(w);
            w = z.parent(w);
        }
        if (!c.contains(w)) {
            int pick = path[tau - 1];
            c.members[pick] = z.depth(pick);
        }
    }
    return c;
}

void zl_save(const CompressedText& z, std::ostream& os) {
    os.write("PMZL1", 5);
    os.put(z.scheme == ZlScheme::ZL78 ? 78 : 87);
    if (z.scheme == ZlScheme::ZL78) {
        io::put_varint(os, z.elements.size());
        io::put_varint(os, z.original_length);
        for (const ZlElement& e : z.elements) {
            io::put_varint(os, static_cast<uint64_t>(e.ref));
            os.put(e.label >= 0 ? static_cast<char>(e.label) : '\0');
        }
    } else {
        io::put_varint(os, z.phrases.size());
        io::put_varint(os, z.original_length);
        for (int v : z.phrases) io::put_varint(os, static_cast<uint64_t>(v));
    }
}

namespace {

CompressedText load78(std::istream& is) {
    CompressedText z;
    z.scheme = ZlScheme::ZL78;
    uint64_t n = io::get_varint(is);
    z.original_length = io::get_varint(is);
    z.phrase_len.push_back(0);
    uint64_t total = 0;
    for (uint64_t i = 1; i <= n; ++i) {
        uint64_t ref = io::get_varint(is);
        int c = is.get();
        if (c == EOF) throw ContainerError("element " + std::to_string(i) +
                                           ": truncated");
        if (ref >= i)
            throw ContainerError("element " + std::to_string(i) +
                                 ": forward or self reference");
        z.phrases.push_back(add_node(z, static_cast<int>(ref), c));
        total += z.phrase_len.back();
    }
    if (total == z.original_length + 1 && n > 0) {
        // trailing no-label element: drop the marker byte's character
        if (z.elements.back().label != 0)
            throw ContainerError("bad end marker on final element");
        z.elements.back().label = -1;
        z.phrase_len.back() -= 1;
    } else if (total != z.original_length) {
        throw ContainerError("phrase lengths do not sum to the original length");
    }
    return z;
}

CompressedText loadW(std::istream& is) {
    CompressedText z;
    z.scheme = ZlScheme::ZLW;
    uint64_t n = io::get_varint(is);
    z.original_length = io::get_varint(is);
    z.phrase_len.push_back(0);
    for (int c = 0; c < 256; ++c) add_node(z, 0, c);
    std::vector<int> first_char(257, -1);
    for (int v = 1; v <= 256; ++v) first_char[v] = z.label(v);
    uint64_t total = 0;
    int prev = 0;
    for (uint64_t i = 1; i <= n; ++i) {
        uint64_t code = io::get_varint(is);
        int limit = 256 + static_cast<int>(i) - 2;  // highest completed entry
        int v;
        if (i == 1) {
            if (code < 1 || code > 256)
                throw ContainerError("element 1: not a single-character code");
            v = static_cast<int>(code);
        } else if (code >= 1 && code <= static_cast<uint64_t>(limit)) {
            v = static_cast<int>(code);
            add_node(z, prev, first_char[v]);
            first_char.push_back(prev == 0 ? first_char[v]
                                           : first_char[prev]);
        } else if (code == static_cast<uint64_t>(limit) + 1) {
            // the code names the entry being completed: its label is the
            // first character of the previous phrase
            int f = first_char[prev];
            v = add_node(z, prev, f);
            first_char.push_back(prev == 0 ? f : first_char[prev]);
        } else {
            throw ContainerError("element " + std::to_string(i) +
                                 ": reference out of range");
        }
        total += z.phrase_len[v];
        z.phrases.push_back(v);
        prev = v;
    }
    if (total != z.original_length)
        throw ContainerError("phrase lengths do not sum to the original length");
    return z;
}

}  // namespace

CompressedText zl_load(std::istream& is) {
    io::expect_magic(is, "PMZL1");
    int scheme = is.get();
    if (scheme == 78) return load78(is);
    if (scheme == 87) return loadW(is);
    throw ContainerError("unknown scheme byte");
}

}  // namespace patmat
