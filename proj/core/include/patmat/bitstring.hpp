#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace patmat {

// Fixed-width unsigned big integer viewed as a bit string b_1 b_2 ... b_L
// (b_1 leftmost = most significant). Shifts, bitwise operations, and
// subtraction behave like C operators on an L-bit unsigned word, which is the
// convention the bit-parallel simulations are written in.
class BitString {
public:
    BitString() = default;
    explicit BitString(int width);

    // parses "0"/"1" characters, most significant first; width = length
    static BitString from_binary(const std::string& bits);

    int width() const { return width_; }

    // bit index from the least significant end (0 = rightmost)
    bool bit(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set_bit(int i, bool value);

    // string position p (1-based, from the left)
    bool at(int p) const { return bit(width_ - p); }
    void set_at(int p, bool value) { set_bit(width_ - p, value); }

    bool any() const;
    bool operator==(const BitString& o) const;
    bool operator!=(const BitString& o) const { return !(*this == o); }

    BitString& operator&=(const BitString& o);
    BitString& operator|=(const BitString& o);
    BitString& operator^=(const BitString& o);
    friend BitString operator&(BitString a, const BitString& b) { return a &= b; }
    friend BitString operator|(BitString a, const BitString& b) { return a |= b; }
    friend BitString operator^(BitString a, const BitString& b) { return a ^= b; }

    BitString operator<<(int k) const;
    BitString operator>>(int k) const;
    BitString operator-(const BitString& o) const;  // mod 2^width
    BitString operator+(const BitString& o) const;  // mod 2^width

    // this value resized to a new width (truncating or zero-extending)
    BitString resized(int new_width) const;

    // Multiplication by a sparse constant whose set bits are the given shift
    // amounts: sum of (*this << k), and the carry-free variant using or.
    BitString shifted_sum(const std::vector<int>& shifts, int result_width) const;
    BitString shifted_or(const std::vector<int>& shifts, int result_width) const;

    std::string to_binary() const;

private:
    void trim();

    int width_ = 0;
    std::vector<uint64_t> words_;
};

}  // namespace patmat
