#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace patmat {

// Raised when an on-disk container fails validation (bad magic, truncated
// data, out-of-range references).
struct ContainerError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace io {

inline void put_u32(std::ostream& os, uint32_t v) {
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    os.write(b, 4);
}

inline void put_u64(std::ostream& os, uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    os.write(b, 8);
}

inline uint32_t get_u32(std::istream& is) {
    char b[4];
    if (!is.read(b, 4)) throw ContainerError("truncated container");
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
        v |= static_cast<uint32_t>(static_cast<unsigned char>(b[i])) << (8 * i);
    return v;
}

inline uint64_t get_u64(std::istream& is) {
    char b[8];
    if (!is.read(b, 8)) throw ContainerError("truncated container");
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v |= static_cast<uint64_t>(static_cast<unsigned char>(b[i])) << (8 * i);
    return v;
}

inline void put_varint(std::ostream& os, uint64_t v) {
    while (v >= 0x80) {
        os.put(static_cast<char>((v & 0x7f) | 0x80));
        v >>= 7;
    }
    os.put(static_cast<char>(v));
}

inline uint64_t get_varint(std::istream& is) {
    uint64_t v = 0;
    for (int shift = 0; shift < 64; shift += 7) {
        int c = is.get();
        if (c == EOF) throw ContainerError("truncated varint");
        v |= static_cast<uint64_t>(c & 0x7f) << shift;
        if (!(c & 0x80)) return v;
    }
    throw ContainerError("overlong varint");
}

inline void expect_magic(std::istream& is, const char* magic) {
    std::string got(std::char_traits<char>::length(magic), '\0');
    if (!is.read(got.data(), static_cast<std::streamsize>(got.size())) || got != magic)
        throw ContainerError(std::string("bad magic, expected ") + magic);
}

}  // namespace io
}  // namespace patmat
