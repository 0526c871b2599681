#pragma once

// Juggling words, integer partitions and set partitions, with the maps
// between them used by the juggling chains.
//
// Ordering contract (every matrix in the library indexes against it):
//   - words: lexicographic with 'b' < 'o';
//   - set partitions: lexicographic on the restricted-growth string;
//   - box partitions Par_{k,l}: lexicographic on the zero-padded part list;
//   - letter words over {1..L}: lexicographic.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "scalar.hpp"

namespace juggling {

enum class Letter : std::uint8_t { Ball = 0, Empty = 1 };

/// A juggling state: word over {Ball, Empty}, printed with 'b' and 'o'.
class JugglingWord {
public:
    JugglingWord() = default;
    explicit JugglingWord(std::vector<Letter> letters) : letters_(std::move(letters)) {}

    static JugglingWord parse(std::string_view text)
    {
        std::vector<Letter> letters;
        letters.reserve(text.size());
        for (char c : text) {
            if (c == 'b')
                letters.push_back(Letter::Ball);
            else if (c == 'o')
                letters.push_back(Letter::Empty);
            else
                throw DomainError("juggling word '" + std::string(text) + "' must use only 'b' and 'o'");
        }
        return JugglingWord(std::move(letters));
    }

    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    Letter operator[](std::size_t i) const { return letters_[i]; }
    const std::vector<Letter>& letters() const { return letters_; }

    std::size_t empties() const
    {
        return static_cast<std::size_t>(std::count(letters_.begin(), letters_.end(), Letter::Empty));
    }
    std::size_t balls() const { return size() - empties(); }

    /// The word a_2 ... a_h followed by one Empty.
    JugglingWord shifted() const
    {
        std::vector<Letter> out;
        if (!letters_.empty())
            out.assign(letters_.begin() + 1, letters_.end());
        out.push_back(Letter::Empty);
        return JugglingWord(std::move(out));
    }

    JugglingWord appended(Letter letter) const
    {
        auto out = letters_;
        out.push_back(letter);
        return JugglingWord(std::move(out));
    }

    std::string str() const
    {
        std::string s;
        s.reserve(letters_.size());
        for (auto l : letters_)
            s.push_back(l == Letter::Ball ? 'b' : 'o');
        return s;
    }

    auto operator<=>(const JugglingWord&) const = default;

private:
    std::vector<Letter> letters_;
};

/// Nonincreasing sequence of positive parts; trailing zeros are dropped.
class IntegerPartition {
public:
    IntegerPartition() = default;
    explicit IntegerPartition(std::vector<int> parts) : parts_(std::move(parts))
    {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] < 0)
                throw DomainError("partition parts must be nonnegative");
            if (i > 0 && parts_[i] > parts_[i - 1])
                throw DomainError("partition parts must be nonincreasing");
        }
        while (!parts_.empty() && parts_.back() == 0)
            parts_.pop_back();
    }

    static IntegerPartition parse(std::string_view text)
    {
        std::string s(text);
        s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
        if (s.size() < 2 || s.front() != '[' || s.back() != ']')
            throw DomainError("partition '" + std::string(text) + "' must look like [5,4,2]");
        s = s.substr(1, s.size() - 2);
        std::vector<int> parts;
        std::size_t start = 0;
        while (!s.empty() && start <= s.size()) {
            auto end = s.find(',', start);
            if (end == std::string::npos)
                end = s.size();
            auto token = s.substr(start, end - start);
            if (token.empty() || !std::all_of(token.begin(), token.end(), [](unsigned char c) { return std::isdigit(c); }))
                throw DomainError("malformed partition '" + std::string(text) + "'");
            parts.push_back(std::stoi(token));
            start = end + 1;
        }
        return IntegerPartition(std::move(parts));
    }

    /// Number of nonzero parts.
    std::size_t length() const { return parts_.size(); }
    bool empty() const { return parts_.empty(); }
    const std::vector<int>& parts() const { return parts_; }

    /// lambda_i with 1-based i; zero beyond the last part.
    int part(std::size_t i) const { return i >= 1 && i <= parts_.size() ? parts_[i - 1] : 0; }

    int largest() const { return parts_.empty() ? 0 : parts_.front(); }

    int size() const
    {
        int total = 0;
        for (int p : parts_)
            total += p;
        return total;
    }

    /// Membership in Par_{k,l}: at most l parts, each at most k.
    bool fits(int k, int l) const { return static_cast<int>(length()) <= l && largest() <= k; }

    /// Parts padded with zeros to exactly n entries (n >= length()).
    std::vector<int> padded(std::size_t n) const
    {
        auto out = parts_;
        out.resize(std::max(n, out.size()), 0);
        return out;
    }

    std::string str() const
    {
        std::string s = "[";
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i)
                s += ',';
            s += std::to_string(parts_[i]);
        }
        return s + "]";
    }

    auto operator<=>(const IntegerPartition&) const = default;

private:
    std::vector<int> parts_;
};

/// Partition of {1..H} into nonempty blocks. Blocks are kept sorted
/// internally and ordered by ascending maxima.
class SetPartition {
public:
    SetPartition() = default;

    static SetPartition from_blocks(int ground, std::vector<std::vector<int>> blocks)
    {
        if (ground < 0)
            throw DomainError("negative ground set size");
        std::vector<int> seen(static_cast<std::size_t>(ground) + 1, 0);
        for (auto& block : blocks) {
            if (block.empty())
                throw DomainError("set partition has an empty block");
            for (int e : block) {
                if (e < 1 || e > ground)
                    throw DomainError("element " + std::to_string(e) + " outside {1.." + std::to_string(ground) + "}");
                if (seen[e]++)
                    throw DomainError("element " + std::to_string(e) + " appears twice");
            }
        }
        for (int e = 1; e <= ground; ++e) {
            if (!seen[e])
                throw DomainError("element " + std::to_string(e) + " missing from set partition");
        }
        SetPartition p;
        p.ground_ = ground;
        p.blocks_ = std::move(blocks);
        p.canonicalize();
        return p;
    }

    /// Restricted growth string a_1..a_H with a_1 = 0 and a_j <= 1 + max(a_1..a_{j-1}).
    static SetPartition from_rgs(const std::vector<int>& rgs)
    {
        std::vector<std::vector<int>> blocks;
        for (std::size_t j = 0; j < rgs.size(); ++j) {
            auto b = static_cast<std::size_t>(rgs[j]);
            if (rgs[j] < 0 || b > blocks.size())
                throw DomainError("not a restricted growth string");
            if (b == blocks.size())
                blocks.emplace_back();
            blocks[b].push_back(static_cast<int>(j) + 1);
        }
        return from_blocks(static_cast<int>(rgs.size()), std::move(blocks));
    }

    /// Parses "3,5|2,6,7|1,4,8" (any block order); "{}" is the empty partition.
    static SetPartition parse(std::string_view text)
    {
        std::string s;
        for (char c : text) {
            if (!std::isspace(static_cast<unsigned char>(c)))
                s.push_back(c);
        }
        if (s == "{}" || s.empty())
            return SetPartition();
        std::vector<std::vector<int>> blocks(1);
        std::string number;
        int ground = 0;
        auto flush = [&] {
            if (number.empty())
                throw DomainError("malformed set partition '" + std::string(text) + "'");
            int e = std::stoi(number);
            blocks.back().push_back(e);
            ground = std::max(ground, e);
            number.clear();
        };
        for (char c : s) {
            if (std::isdigit(static_cast<unsigned char>(c))) {
                number.push_back(c);
            } else if (c == ',') {
                flush();
            } else if (c == '|') {
                flush();
                blocks.emplace_back();
            } else {
                throw DomainError("malformed set partition '" + std::string(text) + "'");
            }
        }
        flush();
        return from_blocks(ground, std::move(blocks));
    }

    int ground_size() const { return ground_; }
    std::size_t block_count() const { return blocks_.size(); }
    const std::vector<std::vector<int>>& blocks() const { return blocks_; }

    /// Index (in ascending-maxima order) of the block holding e.
    std::size_t block_of(int e) const
    {
        for (std::size_t b = 0; b < blocks_.size(); ++b) {
            if (std::binary_search(blocks_[b].begin(), blocks_[b].end(), e))
                return b;
        }
        throw DomainError("element " + std::to_string(e) + " not in set partition");
    }

    bool is_block_max(int e) const { return blocks_[block_of(e)].back() == e; }

    bool is_singleton(int e) const { return blocks_[block_of(e)].size() == 1; }

    std::vector<int> rgs() const
    {
        std::vector<int> label(static_cast<std::size_t>(ground_) + 1, -1);
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(ground_));
        int next = 0;
        std::vector<int> block_label(blocks_.size(), -1);
        for (int e = 1; e <= ground_; ++e) {
            auto b = block_of(e);
            if (block_label[b] < 0)
                block_label[b] = next++;
            out.push_back(block_label[b]);
        }
        return out;
    }

    std::string str() const
    {
        if (blocks_.empty())
            return "{}";
        std::string s;
        for (std::size_t b = 0; b < blocks_.size(); ++b) {
            if (b)
                s += '|';
            for (std::size_t i = 0; i < blocks_[b].size(); ++i) {
                if (i)
                    s += ',';
                s += std::to_string(blocks_[b][i]);
            }
        }
        return s;
    }

    bool operator==(const SetPartition&) const = default;
    auto operator<=>(const SetPartition& other) const
    {
        if (auto c = ground_ <=> other.ground_; c != 0)
            return c;
        return rgs() <=> other.rgs();
    }

private:
    void canonicalize()
    {
        for (auto& block : blocks_)
            std::sort(block.begin(), block.end());
        std::sort(blocks_.begin(), blocks_.end(), [](const auto& a, const auto& b) { return a.back() < b.back(); });
    }

    int ground_ = 0;
    std::vector<std::vector<int>> blocks_;
};

/// Consecutive pair (s,t) of one block, with the number of blocks meeting {s..t}.
struct Arch {
    int s = 0;
    int t = 0;
    int cover_count = 0;
    bool operator==(const Arch&) const = default;
};

// ---------------------------------------------------------------------------
// Enumeration

/// St_{h,k}: words of length h with exactly k Empty letters, lexicographic.
inline std::vector<JugglingWord> enumerate_words(int h, int k)
{
    if (h < 0 || k < 0 || k > h)
        throw DomainError("enumerate_words requires 0 <= k <= h");
    std::vector<Letter> letters(static_cast<std::size_t>(h), Letter::Ball);
    std::fill(letters.end() - k, letters.end(), Letter::Empty);
    std::vector<JugglingWord> out;
    do {
        out.emplace_back(letters);
    } while (std::next_permutation(letters.begin(), letters.end()));
    return out;
}

/// St_h: all 2^h words, lexicographic.
inline std::vector<JugglingWord> enumerate_all_words(int h)
{
    if (h < 0 || h > 24)
        throw DomainError("enumerate_all_words requires 0 <= h <= 24");
    std::vector<JugglingWord> out;
    const std::uint32_t n = 1u << h;
    out.reserve(n);
    for (std::uint32_t code = 0; code < n; ++code) {
        std::vector<Letter> letters(static_cast<std::size_t>(h));
        for (int i = 0; i < h; ++i)
            letters[i] = (code >> (h - 1 - i)) & 1u ? Letter::Empty : Letter::Ball;
        out.emplace_back(std::move(letters));
    }
    return out;
}

/// Par_{k,l}: partitions with at most l parts each at most k, lexicographic on padded parts.
inline std::vector<IntegerPartition> enumerate_box_partitions(int k, int l)
{
    if (k < 0 || l < 0)
        throw DomainError("enumerate_box_partitions requires k, l >= 0");
    std::vector<IntegerPartition> out;
    std::vector<int> parts(static_cast<std::size_t>(l), 0);
    std::function<void(int, int)> rec = [&](int i, int bound) {
        if (i == l) {
            out.emplace_back(parts);
            return;
        }
        for (int v = 0; v <= bound; ++v) {
            parts[i] = v;
            rec(i + 1, v);
        }
    };
    // Lexicographic on (p_1, ..., p_l) requires p_1 outermost and ascending.
    rec(0, k);
    return out;
}

/// All partitions with |lambda| <= max_size, ordered by size then lexicographically.
inline std::vector<IntegerPartition> enumerate_partitions_up_to(int max_size)
{
    std::vector<IntegerPartition> out;
    std::vector<int> parts;
    std::function<void(int, int)> rec = [&](int remaining, int bound) {
        if (remaining == 0) {
            out.emplace_back(parts);
            return;
        }
        for (int v = std::min(bound, remaining); v >= 1; --v) {
            parts.push_back(v);
            rec(remaining - v, v);
            parts.pop_back();
        }
    };
    for (int n = 0; n <= max_size; ++n)
        rec(n, n);
    return out;
}

namespace detail {

inline void rgs_walk(int H, int K, std::vector<int>& a, int pos, int blocks, std::vector<SetPartition>& out)
{
    if (pos == H) {
        if (K < 0 || blocks == K)
            out.push_back(SetPartition::from_rgs(a));
        return;
    }
    for (int v = 0; v <= blocks; ++v) {
        int nb = std::max(blocks, v + 1);
        if (K >= 0 && (nb > K || nb + (H - pos - 1) < K))
            continue;
        a[pos] = v;
        rgs_walk(H, K, a, pos + 1, nb, out);
    }
}

} // namespace detail

/// S(H,K) in restricted-growth-string lexicographic order; count is Stirling2(H,K).
inline std::vector<SetPartition> enumerate_set_partitions(int H, int K)
{
    if (H < 0 || K < 0 || K > H || (K == 0 && H > 0))
        throw DomainError("enumerate_set_partitions requires 1 <= K <= H");
    std::vector<SetPartition> out;
    if (H == 0) {
        out.emplace_back();
        return out;
    }
    std::vector<int> a(static_cast<std::size_t>(H), 0);
    detail::rgs_walk(H, K, a, 0, 0, out);
    return out;
}

/// S(H): all set partitions of {1..H}; count is Bell(H).
inline std::vector<SetPartition> enumerate_all_set_partitions(int H)
{
    if (H < 0)
        throw DomainError("negative ground set size");
    std::vector<SetPartition> out;
    if (H == 0) {
        out.emplace_back();
        return out;
    }
    std::vector<int> a(static_cast<std::size_t>(H), 0);
    detail::rgs_walk(H, -1, a, 0, 0, out);
    return out;
}

/// Words over {1..alphabet} of the given length, lexicographic.
using LetterWord = std::vector<int>;

inline std::vector<LetterWord> enumerate_letter_words(int length, int alphabet)
{
    if (length < 0 || alphabet < 1)
        throw DomainError("letter words need length >= 0 and alphabet >= 1");
    std::vector<LetterWord> out;
    LetterWord w(static_cast<std::size_t>(length), 1);
    while (true) {
        out.push_back(w);
        int i = length - 1;
        while (i >= 0 && w[i] == alphabet) {
            w[i] = 1;
            --i;
        }
        if (i < 0)
            break;
        ++w[i];
    }
    return out;
}

inline std::string letter_word_str(const LetterWord& w)
{
    bool wide = std::any_of(w.begin(), w.end(), [](int c) { return c > 9; });
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (wide && i)
            s += '.';
        s += std::to_string(w[i]);
    }
    return s;
}

inline LetterWord parse_letter_word(std::string_view text)
{
    LetterWord w;
    if (text.find('.') != std::string_view::npos) {
        std::size_t start = 0;
        while (start <= text.size()) {
            auto end = text.find('.', start);
            if (end == std::string_view::npos)
                end = text.size();
            w.push_back(std::stoi(std::string(text.substr(start, end - start))));
            start = end + 1;
        }
    } else {
        for (char c : text) {
            if (c < '1' || c > '9')
                throw DomainError("malformed letter word '" + std::string(text) + "'");
            w.push_back(c - '0');
        }
    }
    return w;
}

// ---------------------------------------------------------------------------
// Words <-> partitions

/// Ball positions s_1 < ... < s_l map to (s_l - l, ..., s_1 - 1).
inline IntegerPartition word_to_partition(const JugglingWord& w)
{
    std::vector<int> positions;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] == Letter::Ball)
            positions.push_back(static_cast<int>(i) + 1);
    }
    const int l = static_cast<int>(positions.size());
    std::vector<int> parts(positions.size());
    for (int j = 0; j < l; ++j)
        parts[j] = positions[l - 1 - j] - (l - j);
    return IntegerPartition(std::move(parts));
}

inline JugglingWord partition_to_word(const IntegerPartition& p, int k, int l)
{
    if (k < 0 || l < 0)
        throw DomainError("partition_to_word requires k, l >= 0");
    if (!p.fits(k, l))
        throw DomainError("partition " + p.str() + " does not fit in a " + std::to_string(k) + "x" + std::to_string(l) + " box");
    std::vector<Letter> letters(static_cast<std::size_t>(k + l), Letter::Empty);
    for (int i = 1; i <= l; ++i) {
        int s = p.part(static_cast<std::size_t>(l + 1 - i)) + i;
        letters[static_cast<std::size_t>(s - 1)] = Letter::Ball;
    }
    return JugglingWord(std::move(letters));
}

// ---------------------------------------------------------------------------
// Set partition maps

/// Letter i is Empty iff i is the largest element of its block (1 <= i <= H-1).
inline JugglingWord psi(const SetPartition& s)
{
    const int H = s.ground_size();
    std::vector<Letter> letters;
    if (H == 0)
        return JugglingWord();
    letters.reserve(static_cast<std::size_t>(H - 1));
    std::vector<bool> is_max(static_cast<std::size_t>(H) + 1, false);
    for (const auto& block : s.blocks())
        is_max[block.back()] = true;
    for (int i = 1; i < H; ++i)
        letters.push_back(is_max[i] ? Letter::Empty : Letter::Ball);
    return JugglingWord(std::move(letters));
}

/// Remove 1 and shift the remaining elements down by one.
inline SetPartition down_shift(const SetPartition& s)
{
    if (s.ground_size() == 0)
        throw DomainError("down_shift of the empty set partition");
    std::vector<std::vector<int>> blocks;
    for (const auto& block : s.blocks()) {
        std::vector<int> shifted;
        for (int e : block) {
            if (e != 1)
                shifted.push_back(e - 1);
        }
        if (!shifted.empty())
            blocks.push_back(std::move(shifted));
    }
    return SetPartition::from_blocks(s.ground_size() - 1, std::move(blocks));
}

/// Adds the singleton {H+1} to a partition of {1..H}.
inline SetPartition with_new_singleton(const SetPartition& t)
{
    auto blocks = t.blocks();
    blocks.push_back({t.ground_size() + 1});
    return SetPartition::from_blocks(t.ground_size() + 1, std::move(blocks));
}

/// I_i: insert h+1 into the (i+1)-th block, blocks by ascending maxima.
inline SetPartition insert_I(const SetPartition& t, int i)
{
    if (i < 0 || static_cast<std::size_t>(i) >= t.block_count())
        throw DomainError("insert_I index " + std::to_string(i) + " out of range for " + std::to_string(t.block_count()) + " blocks");
    auto blocks = t.blocks();
    blocks[static_cast<std::size_t>(i)].push_back(t.ground_size() + 1);
    return SetPartition::from_blocks(t.ground_size() + 1, std::move(blocks));
}

/// J_i: insert h+1 into the i-th block by decreasing maxima; a new singleton
/// when i = 0 or i exceeds the block count.
inline SetPartition insert_J(const SetPartition& t, int i)
{
    const int K = static_cast<int>(t.block_count());
    if (i >= 1 && i <= K)
        return insert_I(t, K - i);
    return with_new_singleton(t);
}

/// T_i: replace the (i+1)-th Empty from the left by a Ball.
inline JugglingWord replace_T(const JugglingWord& w, int i)
{
    if (i < 0)
        throw DomainError("replace_T index must be nonnegative");
    auto letters = w.letters();
    int seen = 0;
    for (auto& l : letters) {
        if (l == Letter::Empty && seen++ == i) {
            l = Letter::Ball;
            return JugglingWord(std::move(letters));
        }
    }
    throw DomainError("replace_T index " + std::to_string(i) + " out of range for " + std::to_string(w.empties()) + " empties");
}

/// S_i: replace the i-th Empty from the right by a Ball; identity when
/// i = 0 or i exceeds the Empty count.
inline JugglingWord replace_S(const JugglingWord& w, int i)
{
    if (i <= 0)
        return w;
    auto letters = w.letters();
    int seen = 0;
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
        if (*it == Letter::Empty && ++seen == i) {
            *it = Letter::Ball;
            return JugglingWord(std::move(letters));
        }
    }
    return w;
}

// ---------------------------------------------------------------------------
// Statistics

/// E_i: Empties strictly left of position i (0-based index into the result).
inline std::vector<int> empties_left(const JugglingWord& w)
{
    std::vector<int> out(w.size());
    int count = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        out[i] = count;
        if (w[i] == Letter::Empty)
            ++count;
    }
    return out;
}

/// psi_i: Empties strictly right of position i.
inline std::vector<int> empties_right(const JugglingWord& w)
{
    std::vector<int> out(w.size());
    int count = 0;
    for (std::size_t i = w.size(); i-- > 0;) {
        out[i] = count;
        if (w[i] == Letter::Empty)
            ++count;
    }
    return out;
}

/// C_sigma(s,t): number of blocks meeting {s..t}.
inline int cover_count(const SetPartition& sigma, int s, int t)
{
    int count = 0;
    for (std::size_t b = 0; b < sigma.block_count(); ++b) {
        const auto& block = sigma.blocks()[b];
        auto it = std::lower_bound(block.begin(), block.end(), s);
        if (it != block.end() && *it <= t)
            ++count;
    }
    return count;
}

inline std::vector<Arch> arches(const SetPartition& sigma)
{
    std::vector<Arch> out;
    for (const auto& block : sigma.blocks()) {
        for (std::size_t i = 1; i < block.size(); ++i)
            out.push_back({block[i - 1], block[i], cover_count(sigma, block[i - 1], block[i])});
    }
    std::sort(out.begin(), out.end(), [](const Arch& a, const Arch& b) { return a.s < b.s; });
    return out;
}

/// N(sigma): sum over arches of (cover count - 1).
inline int mahonian_N(const SetPartition& sigma)
{
    int total = 0;
    for (const auto& arch : arches(sigma))
        total += arch.cover_count - 1;
    return total;
}

} // namespace juggling
