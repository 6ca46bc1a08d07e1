#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "patmat/bitstring.hpp"

using namespace patmat;

namespace {

BitString random_bits(std::mt19937& rng, int width, double density = 0.5) {
    BitString b(width);
    std::bernoulli_distribution coin(density);
    for (int i = 0; i < width; ++i)
        if (coin(rng)) b.set_bit(i, true);
    return b;
}

uint64_t as_u64(const BitString& b) {
    uint64_t v = 0;
    for (int i = 0; i < b.width() && i < 64; ++i)
        if (b.bit(i)) v |= 1ull << i;
    return v;
}

}  // namespace

TEST_CASE("binary round-trip and indexing conventions") {
    BitString b = BitString::from_binary("10110");
    CHECK(b.width() == 5);
    CHECK(b.to_binary() == "10110");
    // position 1 is the leftmost character, bit 0 the rightmost
    CHECK(b.at(1));
    CHECK(!b.at(2));
    CHECK(b.at(3));
    CHECK(b.at(4));
    CHECK(!b.at(5));
    CHECK(!b.bit(0));
    CHECK(b.bit(1));
    CHECK(as_u64(b) == 0b10110u);
}

TEST_CASE("shifts match C unsigned semantics across word boundaries") {
    std::mt19937 rng(7);
    for (int width : {1, 5, 63, 64, 65, 130, 200}) {
        for (int iter = 0; iter < 50; ++iter) {
            BitString b = random_bits(rng, width);
            int k = std::uniform_int_distribution<int>(0, width + 3)(rng);
            BitString l = b << k, r = b >> k;
            for (int i = 0; i < width; ++i) {
                bool lexp = (i - k >= 0) && b.bit(i - k);
                bool rexp = (i + k < width) && b.bit(i + k);
                CHECK(l.bit(i) == lexp);
                CHECK(r.bit(i) == rexp);
            }
        }
    }
}

TEST_CASE("addition and subtraction mod 2^width") {
    std::mt19937 rng(11);
    for (int width : {4, 17, 60, 64})
        for (int iter = 0; iter < 200; ++iter) {
            BitString a = random_bits(rng, width), b = random_bits(rng, width);
            uint64_t mask = width == 64 ? ~0ull : (1ull << width) - 1;
            CHECK(as_u64(a + b) == ((as_u64(a) + as_u64(b)) & mask));
            CHECK(as_u64(a - b) == ((as_u64(a) - as_u64(b)) & mask));
        }
    // borrow propagation across many words
    BitString zero(256), one(256);
    one.set_bit(0, true);
    BitString minus_one = zero - one;
    for (int i = 0; i < 256; ++i) CHECK(minus_one.bit(i));
    CHECK((minus_one + one) == zero);
}

TEST_CASE("carry chains across word boundaries") {
    BitString a(192), b(192);
    for (int i = 0; i < 150; ++i) a.set_bit(i, true);
    b.set_bit(0, true);
    BitString s = a + b;
    for (int i = 0; i < 150; ++i) CHECK(!s.bit(i));
    CHECK(s.bit(150));
}

TEST_CASE("resize truncates or zero-extends") {
    BitString b = BitString::from_binary("1011");
    CHECK(b.resized(8).to_binary() == "00001011");
    CHECK(b.resized(2).to_binary() == "11");
    CHECK(b.resized(8).resized(4) == b);
}

TEST_CASE("shifted_sum equals multiplication by the sparse constant") {
    std::mt19937 rng(23);
    for (int iter = 0; iter < 100; ++iter) {
        BitString b = random_bits(rng, 10);
        std::vector<int> shifts;
        uint64_t c = 0;
        for (int k = 0; k < 40; k += std::uniform_int_distribution<int>(1, 9)(rng)) {
            shifts.push_back(k);
            c |= 1ull << k;
        }
        unsigned __int128 prod =
            static_cast<unsigned __int128>(as_u64(b)) * c;
        BitString s = b.shifted_sum(shifts, 60);
        for (int i = 0; i < 60; ++i)
            CHECK(s.bit(i) == static_cast<bool>((prod >> i) & 1));
    }
}

TEST_CASE("shifted_or equals shifted_sum when copies cannot collide") {
    std::mt19937 rng(31);
    for (int iter = 0; iter < 200; ++iter) {
        int w = std::uniform_int_distribution<int>(1, 12)(rng);
        BitString b = random_bits(rng, w);
        std::vector<int> shifts;
        for (int j = 0; j < 5; ++j) shifts.push_back(j * w);
        CHECK(b.shifted_sum(shifts, 6 * w) == b.shifted_or(shifts, 6 * w));
    }
}
