#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "juggling/combinat.hpp"

using namespace juggling;

namespace {

// Brute-force oracles: bitmask words, all maps [H] -> [H] up to relabelling.

std::set<std::string> oracle_words(int h, int k)
{
    std::set<std::string> out;
    for (unsigned m = 0; m < (1u << h); ++m) {
        if (__builtin_popcount(m) != k)
            continue;
        std::string w;
        for (int i = 0; i < h; ++i)
            w += (m >> i) & 1u ? 'o' : 'b';
        out.insert(w);
    }
    return out;
}

std::set<std::vector<std::vector<int>>> oracle_set_partitions(int H)
{
    std::set<std::vector<std::vector<int>>> out;
    std::vector<int> f(static_cast<std::size_t>(H), 0);
    while (true) {
        std::vector<std::vector<int>> blocks(static_cast<std::size_t>(H));
        for (int e = 1; e <= H; ++e)
            blocks[static_cast<std::size_t>(f[e - 1])].push_back(e);
        std::vector<std::vector<int>> nonempty;
        for (auto& b : blocks)
            if (!b.empty())
                nonempty.push_back(b);
        std::sort(nonempty.begin(), nonempty.end());
        out.insert(nonempty);
        int pos = 0;
        while (pos < H && ++f[pos] == H)
            f[pos++] = 0;
        if (pos == H)
            break;
    }
    return out;
}

std::vector<std::vector<int>> sorted_blocks(const SetPartition& s)
{
    auto b = s.blocks();
    std::sort(b.begin(), b.end());
    return b;
}

/// Position i < H is Empty iff i is the largest element of its block.
std::string oracle_psi(const std::vector<std::vector<int>>& blocks, int H)
{
    std::string w(static_cast<std::size_t>(H - 1), 'b');
    for (const auto& b : blocks)
        if (b.back() < H)
            w[static_cast<std::size_t>(b.back() - 1)] = 'o';
    return w;
}

} // namespace

TEST(JugglingWord, ParsePrintAndShift)
{
    const auto w = JugglingWord::parse("bobo");
    EXPECT_EQ(w.str(), "bobo");
    EXPECT_EQ(w.empties(), 2u);
    EXPECT_EQ(w.balls(), 2u);
    EXPECT_EQ(w.shifted().str(), "oboo");
    EXPECT_THROW(JugglingWord::parse("bx"), DomainError);
}

TEST(Enumerate, WordsSpecExamples)
{
    auto labels = [](int h, int k) {
        std::vector<std::string> out;
        for (const auto& w : enumerate_words(h, k))
            out.push_back(w.str());
        return out;
    };
    EXPECT_EQ(labels(2, 1), (std::vector<std::string>{"bo", "ob"}));
    EXPECT_EQ(labels(4, 2), (std::vector<std::string>{"bboo", "bobo", "boob", "obbo", "obob", "oobb"}));
    EXPECT_EQ(labels(3, 3), (std::vector<std::string>{"ooo"}));
    EXPECT_THROW(enumerate_words(2, 3), DomainError);
    EXPECT_THROW(enumerate_words(-1, 0), DomainError);
}

TEST(Enumerate, WordsMatchBitmaskOracle)
{
    for (int h = 0; h <= 10; ++h) {
        std::size_t total = 0;
        for (int k = 0; k <= h; ++k) {
            const auto words = enumerate_words(h, k);
            std::set<std::string> got;
            for (const auto& w : words)
                got.insert(w.str());
            EXPECT_EQ(got, oracle_words(h, k)) << h << ',' << k;
            EXPECT_TRUE(std::is_sorted(words.begin(), words.end()));
            total += words.size();
        }
        EXPECT_EQ(enumerate_all_words(h).size(), total);
        EXPECT_EQ(total, std::size_t{1} << h);
    }
}

TEST(Enumerate, SetPartitionsMatchBruteForce)
{
    for (int H = 1; H <= 6; ++H) {
        std::set<std::vector<std::vector<int>>> got;
        std::size_t total = 0;
        for (int K = 1; K <= H; ++K) {
            for (const auto& s : enumerate_set_partitions(H, K)) {
                EXPECT_EQ(s.block_count(), static_cast<std::size_t>(K));
                got.insert(sorted_blocks(s));
                ++total;
            }
        }
        EXPECT_EQ(total, got.size());
        EXPECT_EQ(got, oracle_set_partitions(H)) << H;
        EXPECT_EQ(enumerate_all_set_partitions(H).size(), total);
    }
}

TEST(Enumerate, SetPartitionCounts)
{
    const auto s32 = enumerate_set_partitions(3, 2);
    std::set<std::string> labels;
    for (const auto& s : s32)
        labels.insert(s.str());
    EXPECT_EQ(labels, (std::set<std::string>{"1|2,3", "2|1,3", "1,2|3"}));
    EXPECT_EQ(enumerate_set_partitions(4, 2).size(), 7u);
    EXPECT_EQ(enumerate_all_set_partitions(4).size(), 15u);
    EXPECT_THROW(enumerate_set_partitions(2, 3), DomainError);
}

TEST(Enumerate, SetPartitionsInRgsOrder)
{
    const auto all = enumerate_all_set_partitions(5);
    for (std::size_t i = 1; i < all.size(); ++i)
        EXPECT_LT(all[i - 1].rgs(), all[i].rgs());
    for (const auto& s : all)
        EXPECT_EQ(SetPartition::from_rgs(s.rgs()), s);
}

TEST(SetPartition, CanonicalTextUsesAscendingMaxima)
{
    const auto s = SetPartition::parse("1,4,8|3,5|2,6,7");
    EXPECT_EQ(s.str(), "3,5|2,6,7|1,4,8");
    EXPECT_EQ(s.ground_size(), 8);
    EXPECT_TRUE(s.is_block_max(5));
    EXPECT_FALSE(s.is_block_max(4));
    EXPECT_EQ(SetPartition::parse("3|1,2"), SetPartition::parse("1,2|3"));
    EXPECT_THROW(SetPartition::parse("1,2|2"), DomainError);
    EXPECT_THROW(SetPartition::parse("1|3"), DomainError);
}

TEST(Bijection, FigureTwoPartition)
{
    const IntegerPartition lambda({5, 4, 4, 3, 3, 2});
    const auto w = partition_to_word(lambda, 5, 6);
    EXPECT_EQ(w.size(), 11u);
    EXPECT_EQ(w.empties(), 5u);
    EXPECT_EQ(word_to_partition(w), lambda);
    EXPECT_EQ(lambda.str(), "[5,4,4,3,3,2]");
}

TEST(Bijection, SpecExamples)
{
    EXPECT_EQ(word_to_partition(JugglingWord::parse("bbbooo")), IntegerPartition());
    EXPECT_EQ(word_to_partition(JugglingWord::parse("oobb")), IntegerPartition({2, 2}));
    EXPECT_EQ(partition_to_word(IntegerPartition({2, 2}), 2, 2).str(), "oobb");
    EXPECT_EQ(partition_to_word(IntegerPartition(), 2, 2).str(), "bboo");
    EXPECT_THROW(partition_to_word(IntegerPartition({3}), 2, 2), DomainError);
    EXPECT_THROW(partition_to_word(IntegerPartition({1, 1, 1}), 2, 2), DomainError);
}

TEST(Bijection, PartsCountEmptiesLeftOfEachBall)
{
    // lambda_r is the number of Empties before the r-th Ball from the right.
    for (int h = 0; h <= 10; ++h) {
        for (int k = 0; k <= h; ++k) {
            for (const auto& w : enumerate_words(h, k)) {
                const auto lambda = word_to_partition(w);
                std::vector<int> parts;
                int empties = 0;
                for (std::size_t i = 0; i < w.size(); ++i) {
                    if (w[i] == Letter::Empty)
                        ++empties;
                    else
                        parts.push_back(empties);
                }
                std::reverse(parts.begin(), parts.end());
                EXPECT_EQ(lambda.padded(static_cast<std::size_t>(h - k)), parts);
                EXPECT_EQ(partition_to_word(lambda, k, h - k), w);
            }
        }
    }
}

TEST(Psi, SpecExamples)
{
    EXPECT_EQ(psi(SetPartition::parse("1|3,5,6|2,4,7,8")).str(), "obbbbob");
    EXPECT_EQ(psi(SetPartition::parse("1,2|3")).str(), "bo");
    EXPECT_EQ(psi(SetPartition::parse("1|2|3|4|5")).str(), "oooo");
}

TEST(Psi, MatchesBlockMaximaOracleAndIsOnto)
{
    for (int H = 1; H <= 7; ++H) {
        for (int K = 1; K <= H; ++K) {
            std::set<std::string> image;
            for (const auto& s : enumerate_set_partitions(H, K)) {
                const auto w = psi(s).str();
                EXPECT_EQ(w, oracle_psi(s.blocks(), H));
                image.insert(w);
            }
            EXPECT_EQ(image, oracle_words(H - 1, K - 1));
        }
    }
}

TEST(DownShift, SpecExamples)
{
    EXPECT_EQ(down_shift(SetPartition::parse("3,5|2,6,7|1,4,8")).str(), "2,4|1,5,6|3,7");
    EXPECT_EQ(down_shift(SetPartition::parse("1|2,3")).str(), "1,2");
    EXPECT_EQ(down_shift(SetPartition::parse("1,2,3,4")).str(), "1,2,3");
}

TEST(Insert, SpecExamples)
{
    const auto t = SetPartition::parse("2,4|1,5,6|3,7");
    EXPECT_EQ(insert_I(t, 0).str(), "1,5,6|3,7|2,4,8");
    EXPECT_EQ(insert_I(t, 2).str(), "2,4|1,5,6|3,7,8");
    EXPECT_EQ(insert_I(SetPartition::parse("1|2"), 1).str(), "1|2,3");
    EXPECT_THROW(insert_I(t, 3), DomainError);
    EXPECT_EQ(insert_J(SetPartition::parse("1|2"), 3).str(), "1|2|3");
    EXPECT_EQ(insert_J(SetPartition::parse("1|2"), 1).str(), "1|2,3");
    EXPECT_EQ(insert_J(SetPartition::parse("1,2"), 1).str(), "1,2,3");
    EXPECT_EQ(with_new_singleton(SetPartition::parse("1,2")).str(), "1,2|3");
}

TEST(Replace, SpecExamples)
{
    const auto w = JugglingWord::parse("oob");
    EXPECT_EQ(replace_T(w, 0).str(), "bob");
    EXPECT_EQ(replace_S(w, 1).str(), "obb");
    EXPECT_EQ(replace_S(w, 5).str(), "oob");
    EXPECT_THROW(replace_T(w, 2), DomainError);
}

TEST(Projection, JCommutesWithPsi)
{
    for (int h = 1; h <= 6; ++h) {
        for (const auto& tau : enumerate_all_set_partitions(h)) {
            const auto K = static_cast<int>(tau.block_count());
            for (int i = 1; i <= K; ++i)
                EXPECT_EQ(psi(insert_J(tau, i)), replace_S(psi(tau).appended(Letter::Empty), i)) << tau.str() << ' ' << i;
        }
    }
}

TEST(Projection, JCommutesWithDownShift)
{
    for (int h = 2; h <= 6; ++h) {
        for (const auto& tau : enumerate_all_set_partitions(h)) {
            for (int i = 0; i <= static_cast<int>(tau.block_count()) + 1; ++i)
                EXPECT_EQ(down_shift(insert_J(tau, i)), insert_J(down_shift(tau), i)) << tau.str() << ' ' << i;
        }
    }
}

TEST(Statistics, EmptiesLeftAndRight)
{
    const auto w = JugglingWord::parse("bobo");
    const auto e = empties_left(w);
    EXPECT_EQ(e[0], 0);
    EXPECT_EQ(e[2], 1);
    const auto r = empties_right(w);
    EXPECT_EQ(r[0], 2);
    EXPECT_EQ(r[2], 1);
}

TEST(Statistics, ArchesAndCoverCounts)
{
    for (int H = 1; H <= 7; ++H) {
        for (int K = 1; K <= H; ++K) {
            for (const auto& s : enumerate_set_partitions(H, K)) {
                const auto a = arches(s);
                EXPECT_EQ(static_cast<int>(a.size()), H - K);
                int n = 0;
                for (const auto& arch : a) {
                    EXPECT_GE(arch.cover_count, 1);
                    EXPECT_LE(arch.cover_count, K);
                    // Oracle: blocks with an element in {s..t}, by linear scan.
                    int c = 0;
                    for (const auto& b : s.blocks())
                        c += std::any_of(b.begin(), b.end(), [&](int e) { return e >= arch.s && e <= arch.t; });
                    EXPECT_EQ(arch.cover_count, c) << s.str();
                    n += arch.cover_count - 1;
                }
                EXPECT_EQ(mahonian_N(s), n);
            }
        }
    }
    EXPECT_EQ(mahonian_N(SetPartition::parse("1|2|3|4")), 0);
}
