#include "patmat/bitstring.hpp"

#include <stdexcept>

namespace patmat {

BitString::BitString(int width) : width_(width) {
    if (width < 0) throw std::invalid_argument("negative bit string width");
    words_.assign((width + 63) / 64, 0);
}

BitString BitString::from_binary(const std::string& bits) {
    BitString r(static_cast<int>(bits.size()));
    for (size_t p = 0; p < bits.size(); ++p) {
        if (bits[p] != '0' && bits[p] != '1')
            throw std::invalid_argument("bit string must consist of 0s and 1s");
        if (bits[p] == '1') r.set_at(static_cast<int>(p) + 1, true);
    }
    return r;
}

void BitString::set_bit(int i, bool value) {
    if (value)
        words_[i >> 6] |= 1ull << (i & 63);
    else
        words_[i >> 6] &= ~(1ull << (i & 63));
}

void BitString::trim() {
    if (width_ & 63) words_.back() &= ~0ull >> (64 - (width_ & 63));
}

bool BitString::any() const {
    for (uint64_t w : words_)
        if (w) return true;
    return false;
}

bool BitString::operator==(const BitString& o) const {
    return width_ == o.width_ && words_ == o.words_;
}

BitString& BitString::operator&=(const BitString& o) {
    for (size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
}

BitString& BitString::operator|=(const BitString& o) {
    for (size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
}

BitString& BitString::operator^=(const BitString& o) {
    for (size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
}

BitString BitString::operator<<(int k) const {
    BitString r(width_);
    if (k >= width_) return r;
    int wk = k >> 6, bk = k & 63;
    for (int i = static_cast<int>(words_.size()) - 1; i >= wk; --i) {
        uint64_t w = words_[i - wk] << bk;
        if (bk && i - wk - 1 >= 0) w |= words_[i - wk - 1] >> (64 - bk);
        r.words_[i] = w;
    }
    r.trim();
    return r;
}

BitString BitString::operator>>(int k) const {
    BitString r(width_);
    if (k >= width_) return r;
    int wk = k >> 6, bk = k & 63;
    for (size_t i = 0; i + wk < words_.size(); ++i) {
        uint64_t w = words_[i + wk] >> bk;
        if (bk && i + wk + 1 < words_.size()) w |= words_[i + wk + 1] << (64 - bk);
        r.words_[i] = w;
    }
    return r;
}

BitString BitString::operator-(const BitString& o) const {
    BitString r(width_);
    uint64_t borrow = 0;
    for (size_t i = 0; i < words_.size(); ++i) {
        uint64_t a = words_[i], b = o.words_[i];
        uint64_t d = a - b;
        uint64_t borrow_out = (a < b) || (d < borrow);
        r.words_[i] = d - borrow;
        borrow = borrow_out;
    }
    r.trim();
    return r;
}

BitString BitString::operator+(const BitString& o) const {
    BitString r(width_);
    uint64_t carry = 0;
    for (size_t i = 0; i < words_.size(); ++i) {
        uint64_t s = words_[i] + o.words_[i];
        uint64_t carry_out = s < words_[i];
        r.words_[i] = s + carry;
        carry = carry_out | (r.words_[i] < s);
    }
    r.trim();
    return r;
}

BitString BitString::resized(int new_width) const {
    BitString r(new_width);
    for (size_t i = 0; i < r.words_.size() && i < words_.size(); ++i)
        r.words_[i] = words_[i];
    r.trim();
    return r;
}

BitString BitString::shifted_sum(const std::vector<int>& shifts,
                                 int result_width) const {
    BitString acc(result_width);
    BitString base = resized(result_width);
    int nw = static_cast<int>(acc.words_.size());
    for (int k : shifts) {
        if (k >= result_width) continue;
        int wk = k >> 6, bk = k & 63;
        uint64_t carry = 0;
        for (int i = wk; i < nw; ++i) {
            uint64_t w = base.words_[i - wk] << bk;
            if (bk && i - wk - 1 >= 0) w |= base.words_[i - wk - 1] >> (64 - bk);
            uint64_t s = acc.words_[i] + w;
            uint64_t carry_out = s < w;
            acc.words_[i] = s + carry;
            carry = carry_out | (acc.words_[i] < s);
        }
    }
    acc.trim();
    return acc;
}

BitString BitString::shifted_or(const std::vector<int>& shifts,
                                int result_width) const {
    BitString acc(result_width);
    BitString base = resized(result_width);
    for (int k : shifts) acc |= base << k;
    return acc;
}

std::string BitString::to_binary() const {
    std::string s(width_, '0');
    for (int p = 1; p <= width_; ++p)
        if (at(p)) s[p - 1] = '1';
    return s;
}

}  // namespace patmat
