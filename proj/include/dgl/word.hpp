#pragma once

// Letters are the generators Z_I, I a nonempty subset of {1..6}.  A letter is
// stored as a code 1..63: its rank among all such subsets in lexicographic
// order of the increasing index sequence, so that comparing codes compares
// index sequences.  Words pack up to kMaxWordLetters codes into 64 bits with the
// length in the top nibble; integer order is length-lexicographic.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace dgl {

inline constexpr int kMaxN = 6;
inline constexpr int kMaxWordLetters = 10;
inline constexpr int kNumLetters = 63;

using Letter = std::uint8_t;

struct LetterTable {
    std::array<std::uint8_t, 64> mask{};      // code -> bitmask (bit k = index k+1)
    std::array<std::uint8_t, 64> code{};      // bitmask -> code
    std::array<std::uint8_t, 64> size{};      // code -> |I|
    std::array<std::int8_t, 64> degree{};     // code -> 1 - |I|
    std::array<std::uint8_t, 64> max_index{}; // code -> largest index in I
    LetterTable();
};

const LetterTable& letters();

inline std::uint8_t letter_mask(Letter c) { return letters().mask[c]; }
inline int letter_size(Letter c) { return letters().size[c]; }
inline int letter_degree(Letter c) { return letters().degree[c]; }
inline bool letter_fits(Letter c, int n) { return letters().max_index[c] <= n; }

Letter letter_from_indices(const std::vector<int>& I);  // I strictly increasing, 1-based
Letter letter_from_mask(std::uint8_t mask);
std::vector<int> letter_indices(Letter c);
std::string letter_name(Letter c);  // "Z12"

// All letters usable for dimension n, in code order.
std::vector<Letter> alphabet(int n);

class Word {
public:
    constexpr Word() = default;
    static Word from_bits(std::uint64_t b) { Word w; w.bits_ = b; return w; }
    static Word single(Letter c) { Word w; w.push_back(c); return w; }
    static Word from_letters(const std::vector<Letter>& ls);

    int size() const { return static_cast<int>(bits_ >> 60); }
    bool empty() const { return size() == 0; }
    Letter operator[](int k) const
    {
        return static_cast<Letter>((bits_ >> (54 - 6 * k)) & 63u);
    }
    void push_back(Letter c)
    {
        int s = size();
        bits_ = (bits_ & ((1ull << 60) - 1)) | (static_cast<std::uint64_t>(s + 1) << 60);
        bits_ |= static_cast<std::uint64_t>(c) << (54 - 6 * s);
    }
    std::uint64_t bits() const { return bits_; }

    // Concatenation; caller guarantees size() + b.size() <= kMaxWordLetters.
    Word concat(Word b) const
    {
        int s = size(), t = b.size();
        std::uint64_t body = (bits_ & ((1ull << 60) - 1)) |
                             ((b.bits_ & ((1ull << 60) - 1)) >> (6 * s));
        return from_bits(body | (static_cast<std::uint64_t>(s + t) << 60));
    }
    Word prefix(int k) const;
    Word suffix_from(int k) const;
    // Replace letter k by the word r.
    Word splice(int k, Word r) const { return prefix(k).concat(r).concat(suffix_from(k + 1)); }

    int degree() const;
    std::vector<Letter> letters() const;
    std::string str() const;  // "Z1Z12", "1" for empty

    friend bool operator==(Word a, Word b) { return a.bits_ == b.bits_; }
    friend bool operator!=(Word a, Word b) { return a.bits_ != b.bits_; }
    friend bool operator<(Word a, Word b) { return a.bits_ < b.bits_; }

private:
    std::uint64_t bits_ = 0;
};

struct WordHash {
    std::size_t operator()(Word w) const noexcept
    {
        std::uint64_t x = w.bits();
        x ^= x >> 33;
        x *= 0xff51afd7ed558ccdULL;
        x ^= x >> 33;
        return static_cast<std::size_t>(x);
    }
};

// Index content: how often each index 1..6 occurs among the letters.
using Content = std::array<std::uint8_t, kMaxN>;
Content word_content(Word w);

}  // namespace dgl
