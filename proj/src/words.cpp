#include "cyldom/words.hpp"

#include <algorithm>
#include <array>
#include <bit>

namespace cyldom {

namespace {

void check_length(int r) {
    if (r < 1 || r > kMaxWordLength) {
        throw bounds_error("word length must be in [1, " +
                           std::to_string(kMaxWordLength) + "], got " +
                           std::to_string(r));
    }
}

bool forbidden_pair(std::uint8_t a, std::uint8_t b) {
    return (a == 0 && b == 2) || (a == 2 && b == 0);
}

} // namespace

CorrectWord CorrectWord::from_digits(const std::vector<std::uint8_t>& digits) {
    check_length(static_cast<int>(digits.size()));
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (digits[i] > 2) {
            throw encoding_error("word digit out of {0,1,2} at row " +
                                 std::to_string(i));
        }
        if (i > 0 && forbidden_pair(digits[i - 1], digits[i])) {
            throw encoding_error("forbidden 02/20 factor at rows " +
                                 std::to_string(i - 1) + "," + std::to_string(i));
        }
        key = (key << 2) | digits[i];
    }
    return CorrectWord(key, static_cast<int>(digits.size()));
}

CorrectWord CorrectWord::from_string(std::string_view text) {
    std::vector<std::uint8_t> digits;
    digits.reserve(text.size());
    for (char c : text) {
        if (c < '0' || c > '2') {
            throw encoding_error(std::string("word digit must be 0, 1 or 2, got '") +
                                 c + "'");
        }
        digits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return from_digits(digits);
}

int CorrectWord::zeros() const {
    // A digit is zero iff both of its bits are clear.
    std::uint64_t bits = key();
    std::uint64_t nonzero = (bits | (bits >> 1)) & 0x5555555555555555ull;
    return length() - std::popcount(nonzero);
}

std::string CorrectWord::str() const {
    std::string out(static_cast<std::size_t>(length()), '0');
    for (int i = 0; i < length(); ++i) out[i] = static_cast<char>('0' + digit(i));
    return out;
}

int word_zeros(const CorrectWord& w) { return w.zeros(); }

std::uint64_t count_correct_words(int r) {
    if (r < 1) throw bounds_error("word length must be >= 1");
    if (r > 50) throw bounds_error("correct-word count overflows 64 bits beyond r = 50");
    std::uint64_t prev = 1, cur = 3; // a(0), a(1)
    for (int i = 2; i <= r; ++i) {
        std::uint64_t next = 2 * cur + prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

std::size_t WordTable::index(const CorrectWord& w) const {
    if (w.length() != r_) {
        throw dimension_error("word length " + std::to_string(w.length()) +
                              " does not match table length " + std::to_string(r_));
    }
    auto it = std::lower_bound(words_.begin(), words_.end(), w);
    if (it == words_.end() || !(*it == w)) {
        throw encoding_error("word " + w.str() + " is not a correct word");
    }
    return static_cast<std::size_t>(it - words_.begin());
}

WordTable enumerate_correct_words(int r) {
    check_length(r);
    WordTable table;
    table.r_ = r;
    table.words_.reserve(count_correct_words(r));

    // Depth-first in digit order 0,1,2 yields lexicographic output directly.
    std::array<std::uint8_t, kMaxWordLength> stack{};
    std::uint64_t key = 0;
    int depth = 0;
    stack[0] = 0;
    while (depth >= 0) {
        std::uint8_t d = stack[depth];
        if (d > 2) {
            --depth;
            key >>= 2;
            if (depth >= 0) ++stack[depth];
            continue;
        }
        if (depth > 0) {
            std::uint8_t prev = static_cast<std::uint8_t>(key & 3u);
            if (forbidden_pair(prev, d)) {
                ++stack[depth];
                continue;
            }
        }
        key = (key << 2) | d;
        if (depth + 1 == r) {
            table.words_.push_back(CorrectWord(key, r));
            key >>= 2;
            ++stack[depth];
        } else {
            ++depth;
            stack[depth] = 0;
        }
    }
    return table;
}

} // namespace cyldom
