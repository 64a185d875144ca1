#include "dgl/word.hpp"

#include <algorithm>
#include <stdexcept>

namespace dgl {

LetterTable::LetterTable()
{
    std::vector<std::vector<int>> subsets;
    for (unsigned m = 1; m < 64; ++m) {
        std::vector<int> s;
        for (int k = 0; k < kMaxN; ++k)
            if (m & (1u << k)) s.push_back(k + 1);
        subsets.push_back(s);
    }
    std::sort(subsets.begin(), subsets.end());
    for (std::size_t r = 0; r < subsets.size(); ++r) {
        unsigned m = 0;
        for (int i : subsets[r]) m |= 1u << (i - 1);
        auto c = static_cast<std::uint8_t>(r + 1);
        mask[c] = static_cast<std::uint8_t>(m);
        code[m] = c;
        size[c] = static_cast<std::uint8_t>(subsets[r].size());
        degree[c] = static_cast<std::int8_t>(1 - static_cast<int>(subsets[r].size()));
        max_index[c] = static_cast<std::uint8_t>(subsets[r].back());
    }
}

const LetterTable& letters()
{
    static const LetterTable t;
    return t;
}

Letter letter_from_mask(std::uint8_t mask)
{
    if (mask == 0 || mask >= 64) throw std::invalid_argument("letter: empty or out-of-range index set");
    return letters().code[mask];
}

Letter letter_from_indices(const std::vector<int>& I)
{
    if (I.empty()) throw std::invalid_argument("letter: empty index set");
    unsigned m = 0;
    int prev = 0;
    for (int i : I) {
        if (i <= prev || i > kMaxN) throw std::invalid_argument("letter: index set must be strictly increasing in 1..6");
        m |= 1u << (i - 1);
        prev = i;
    }
    return letter_from_mask(static_cast<std::uint8_t>(m));
}

std::vector<int> letter_indices(Letter c)
{
    std::vector<int> r;
    unsigned m = letter_mask(c);
    for (int k = 0; k < kMaxN; ++k)
        if (m & (1u << k)) r.push_back(k + 1);
    return r;
}

std::string letter_name(Letter c)
{
    std::string s = "Z";
    for (int i : letter_indices(c)) s += std::to_string(i);
    return s;
}

std::vector<Letter> alphabet(int n)
{
    std::vector<Letter> r;
    for (int c = 1; c <= kNumLetters; ++c)
        if (letter_fits(static_cast<Letter>(c), n)) r.push_back(static_cast<Letter>(c));
    return r;
}

Word Word::from_letters(const std::vector<Letter>& ls)
{
    if (static_cast<int>(ls.size()) > kMaxWordLetters) throw std::length_error("word too long");
    Word w;
    for (Letter c : ls) w.push_back(c);
    return w;
}

Word Word::prefix(int k) const
{
    if (k <= 0) return Word{};
    std::uint64_t keep = k >= 10 ? ((1ull << 60) - 1) : (((1ull << (6 * k)) - 1) << (60 - 6 * k));
    return from_bits((bits_ & keep) | (static_cast<std::uint64_t>(k) << 60));
}

Word Word::suffix_from(int k) const
{
    int s = size();
    if (k >= s) return Word{};
    std::uint64_t body = ((bits_ & ((1ull << 60) - 1)) << (6 * k)) & ((1ull << 60) - 1);
    return from_bits(body | (static_cast<std::uint64_t>(s - k) << 60));
}

int Word::degree() const
{
    int d = 0;
    for (int k = 0; k < size(); ++k) d += letter_degree((*this)[k]);
    return d;
}

std::vector<Letter> Word::letters() const
{
    std::vector<Letter> r(size());
    for (int k = 0; k < size(); ++k) r[k] = (*this)[k];
    return r;
}

std::string Word::str() const
{
    if (empty()) return "1";
    std::string s;
    for (int k = 0; k < size(); ++k) s += letter_name((*this)[k]);
    return s;
}

Content word_content(Word w)
{
    Content c{};
    for (int k = 0; k < w.size(); ++k) {
        unsigned m = letter_mask(w[k]);
        for (int i = 0; i < kMaxN; ++i)
            if (m & (1u << i)) ++c[i];
    }
    return c;
}

}  // namespace dgl
