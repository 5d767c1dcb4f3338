#include <cstdint>
#include <stdexcept>

#include "csa/oracle.hpp"

namespace csa {
namespace oracle {

namespace {

bool all_are(const Word& w, std::size_t from, std::size_t to, const Symbol& s) {
    for (std::size_t i = from; i < to; ++i)
        if (w[i] != s) return false;
    return true;
}

// a^i b^m with i >= 1, m >= 1 and i dividing m.
bool divides(const Word& w) {
    std::size_t i = 0;
    while (i < w.size() && w[i] == "a") ++i;
    std::size_t m = 0;
    while (i + m < w.size() && w[i + m] == "b") ++m;
    if (i + m != w.size()) return false;
    return i >= 1 && m >= 1 && m % i == 0;
}

// a^i b^j c^m with i*j = m.
bool product(const Word& w) {
    std::size_t i = 0, j = 0, m = 0, pos = 0;
    while (pos < w.size() && w[pos] == "a") ++pos, ++i;
    while (pos < w.size() && w[pos] == "b") ++pos, ++j;
    while (pos < w.size() && w[pos] == "c") ++pos, ++m;
    return pos == w.size() && i * j == m;
}

// x # x^R with x over {a,b}.
bool marked_palindrome(const Word& w) {
    if (w.size() % 2 == 0) return false;
    const std::size_t mid = w.size() / 2;
    if (w[mid] != "#") return false;
    for (std::size_t i = 0; i < mid; ++i) {
        if (w[i] == "#" || w[i] != w[w.size() - 1 - i]) return false;
    }
    return true;
}

// (a^n #)^n for n >= 1.
bool grid(const Word& w) {
    if (w.empty() || w.back() != "#") return false;
    std::size_t n = 0;
    while (n < w.size() && w[n] == "a") ++n;
    if (n == 0) return false;
    const std::size_t seg = n + 1;
    if (w.size() != seg * n) return false;
    for (std::size_t s = 0; s < n; ++s) {
        if (!all_are(w, s * seg, s * seg + n, "a")) return false;
        if (w[s * seg + n] != "#") return false;
    }
    return true;
}

std::vector<Word> split_blocks(const Word& w) {
    // Blocks are #-terminated; anything after the last # makes the word
    // malformed and is signalled by an empty result.
    std::vector<Word> blocks;
    Word cur;
    for (const auto& s : w) {
        if (s == "#") {
            blocks.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(s);
        }
    }
    if (!cur.empty()) return {};
    return blocks;
}

std::optional<std::uint64_t> block_value(const Word& b) {
    // Least significant bit on the left; primed bits count as their value.
    std::uint64_t v = 0;
    for (std::size_t p = 0; p < b.size(); ++p) {
        std::uint64_t bit;
        if (b[p] == "0" || b[p] == "0'") bit = 0;
        else if (b[p] == "1" || b[p] == "1'") bit = 1;
        else return std::nullopt;
        v |= bit << p;
    }
    return v;
}

bool counter_word(const Word& w, int k, bool marked) {
    if (w.empty()) return false;
    const auto blocks = split_blocks(w);
    if (blocks.empty()) return false;

    std::size_t m = 0;
    if (marked) {
        // Exactly one primed symbol, in block 1; its position is m.
        const Word& b0 = blocks[0];
        std::size_t mark_pos = 0, marks = 0;
        for (std::size_t p = 0; p < b0.size(); ++p) {
            if (b0[p] == "0'" || b0[p] == "1'") {
                mark_pos = p + 1;
                ++marks;
            }
        }
        if (marks != 1 || b0[mark_pos - 1] != "0'") return false;
        m = mark_pos;
        for (std::size_t i = 1; i < blocks.size(); ++i)
            for (const auto& s : blocks[i])
                if (s == "0'" || s == "1'") return false;
    } else {
        m = blocks[0].size();
        for (const auto& b : blocks)
            for (const auto& s : b)
                if (s != "0" && s != "1") return false;
    }
    if (m < 1) return false;

    std::size_t width = m;
    for (int e = 1; e < k; ++e) width *= m;
    if (width > 60) return false;  // beyond any testable length

    std::uint64_t expected = 0;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (blocks[i].size() != width) return false;
        auto v = block_value(blocks[i]);
        if (!v || *v != expected) return false;
        ++expected;
    }
    const std::uint64_t top = width >= 64 ? ~0ULL : (1ULL << width) - 1;
    return expected == top + 1;  // last block was 1^width
}

}  // namespace

bool predicate(const std::string& name, const Word& word) {
    if (name == "divides") return divides(word);
    if (name == "product") return product(word);
    if (name == "marked_palindrome") return marked_palindrome(word);
    if (name == "grid") return grid(word);
    if (name == "binary_counter") return counter_word(word, 1, false);
    if (name == "l_1") return counter_word(word, 1, true);
    if (name == "l_2") return counter_word(word, 2, true);
    throw std::invalid_argument("unknown predicate '" + name + "'");
}

std::vector<Symbol> predicate_alphabet(const std::string& name) {
    if (name == "divides") return {"a", "b"};
    if (name == "product") return {"a", "b", "c"};
    if (name == "marked_palindrome") return {"a", "b", "#"};
    if (name == "grid") return {"a", "#"};
    if (name == "binary_counter") return {"0", "1", "#"};
    if (name == "l_1" || name == "l_2") return {"0", "1", "#", "0'", "1'"};
    throw std::invalid_argument("unknown predicate '" + name + "'");
}

}  // namespace oracle
}  // namespace csa
