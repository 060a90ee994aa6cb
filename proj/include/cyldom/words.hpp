#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cyldom/errors.hpp"

namespace cyldom {

// Longest word length the enumeration accepts. alpha(20) = 54,608,393 states;
// anything beyond that is useless for a dense transfer matrix anyway.
inline constexpr int kMaxWordLength = 20;

class WordTable;

// A column state: a word over {0,1,2} that never puts a 0 next to a 2.
// Digit i is row i, row 0 on top. Packed two bits per digit with row 0 in the
// most significant position, so for a fixed length the packed key orders
// exactly like the digit string.
class CorrectWord {
public:
    CorrectWord() = default;

    static CorrectWord from_digits(const std::vector<std::uint8_t>& digits);
    static CorrectWord from_string(std::string_view text);

    int length() const { return static_cast<int>(raw_ >> 56); }
    std::uint8_t digit(int row) const {
        return static_cast<std::uint8_t>((raw_ >> (2 * (length() - 1 - row))) & 3u);
    }
    int zeros() const;
    std::string str() const;

    // Packed key; only comparable between words of equal length.
    std::uint64_t key() const { return raw_ & ((std::uint64_t(1) << 56) - 1); }

    bool operator==(const CorrectWord&) const = default;
    auto operator<=>(const CorrectWord&) const = default;

private:
    CorrectWord(std::uint64_t key, int len)
        : raw_(key | (std::uint64_t(len) << 56)) {}

    // bits 0..39: packed digits, bits 56..63: length
    std::uint64_t raw_ = 0;

    friend class WordTable;
    friend WordTable enumerate_correct_words(int r);
};

// Number of zero digits (the column's members of the vertex set).
int word_zeros(const CorrectWord& w);

// alpha(r) by the integer recurrence a(r) = 2 a(r-1) + a(r-2), a(0)=1, a(1)=3.
// Exact up to r = 50; beyond that the count no longer fits 64 bits.
std::uint64_t count_correct_words(int r);

// The canonical indexed enumeration of all correct words of length r,
// in strict lexicographic order with 0 < 1 < 2.
class WordTable {
public:
    int length() const { return r_; }
    std::size_t size() const { return words_.size(); }
    const CorrectWord& word(std::size_t i) const { return words_[i]; }
    const std::vector<CorrectWord>& words() const { return words_; }

    // Position of w in the table; throws if w has the wrong length.
    std::size_t index(const CorrectWord& w) const;

private:
    friend WordTable enumerate_correct_words(int r);
    int r_ = 0;
    std::vector<CorrectWord> words_;
};

// Enumerates every correct word of length r (1 <= r <= kMaxWordLength).
WordTable enumerate_correct_words(int r);

} // namespace cyldom
