#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <vector>

#include "juggling/chains.hpp"
#include "juggling/infinite.hpp"
#include "partition_oracles.hpp"

using namespace juggling;
using namespace juggling::oracles;

namespace {

Rational R(long n, long d = 1)
{
    Rational r(n, d);
    r.canonicalize();
    return r;
}

const std::vector<Rational> kQs{R(1, 4), R(1, 3), R(1, 2)};

/// p(n) by the pentagonal recurrence.
std::vector<double> partition_numbers(int n)
{
    std::vector<double> p(static_cast<std::size_t>(n) + 1, 0.0);
    p[0] = 1;
    for (int m = 1; m <= n; ++m)
        for (int k = 1;; ++k) {
            const int g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
            if (g1 > m)
                break;
            const double s = k % 2 ? 1.0 : -1.0;
            p[m] += s * p[m - g1];
            if (g2 <= m)
                p[m] += s * p[m - g2];
        }
    return p;
}

} // namespace

TEST(TailParams, Families)
{
    const auto g = TailParams<Rational>::geometric(R(1, 3));
    EXPECT_EQ(g.x(2), R(2, 27));
    EXPECT_EQ(g.y(2), R(1, 9));
    EXPECT_EQ(g.y(0), 1);
    EXPECT_EQ(g.truncated(2), (std::vector<Rational>{R(2, 3), R(2, 9), R(1, 9)}));
    const auto f = TailParams<Rational>::finite({R(1, 2), R(1, 3), R(1, 6)});
    EXPECT_EQ(f.y(1), R(1, 2));
    EXPECT_EQ(f.y(3), 0);
    EXPECT_EQ(f.support_max(), 2);
    EXPECT_THROW(TailParams<Rational>::geometric(R(1)), DomainError);
    const auto c = TailParams<Rational>::custom([](int i) { return i == 0 ? Rational(1) : Rational(0); }, R(1), R(1));
    EXPECT_THROW(c.tail_sum_bound(3), DomainError);
}

TEST(Maya, WindowMarksBallSites)
{
    EXPECT_EQ(maya_window(IntegerPartition(), -3, 3), "bbbooo");
    EXPECT_EQ(maya_window(IntegerPartition({2}), -3, 3), "bboobo");
    EXPECT_EQ(maya_window(IntegerPartition({1, 1}), -4, 2), "bbobbo");
    // Balls minus Empties balance to zero on a window containing the profile.
    for (const auto& p : enumerate_partitions_up_to(6)) {
        const auto w = maya_window(p, -10, 10);
        EXPECT_EQ(std::count(w.begin(), w.end(), 'b'), 10) << p.str();
    }
}

TEST(Umjmc, InvarianceOnCappedSets)
{
    for (const auto& q : kQs)
        for (int l = 0; l <= 3; ++l) {
            const auto params = TailParams<Rational>::geometric(q);
            EXPECT_TRUE(verify_umjmc_invariance(l, params, 6));
            // Independent inflow: expand every mu with parts <= cap+1 by the oracle step.
            const int cap = 5;
            std::map<std::vector<int>, Rational> inflow;
            for (const auto& mu : oracle_box(cap + 1, l))
                for (const auto& [nu, i] : oracle_step(mu, cap))
                    inflow[nu] += weight(mu, q) * (i < 0 ? Rational(1) : params.x(i));
            for (const auto& lambda : oracle_box(cap, l))
                EXPECT_EQ(inflow[lambda], weight(lambda, q));
        }
}

TEST(Umjmc, WeightIsProductOfTails)
{
    const auto params = TailParams<Rational>::geometric(R(1, 2));
    EXPECT_EQ(umjmc_weight(IntegerPartition({3, 1}), params), R(1, 16));
}

TEST(Umjmc, MassConvergesFromBelowWithinBound)
{
    for (const auto& q : kQs)
        for (int l = 0; l <= 3; ++l) {
            const auto params = TailParams<Rational>::geometric(q);
            const auto r = umjmc_mass(l, params, 1e-9);
            EXPECT_TRUE(r.converged);
            EXPECT_LE(r.bound, 1e-9);
            // h_l(1, q, q^2, ..) = 1 / ((1-q)(1-q^2)..(1-q^l)).
            Rational exact = 1;
            for (int i = 1; i <= l; ++i)
                exact /= 1 - power(q, static_cast<unsigned>(i));
            EXPECT_EQ(geometric_umjmc_mass(l, q), exact);
            const Rational gap = exact - r.value;
            EXPECT_GE(gap, 0);
            EXPECT_LE(gap.get_d(), r.bound + 1e-15);
            // Z_{k+l,k} at the tail-lumped parameters is nondecreasing in k.
            Rational prev = 0;
            for (int k = 0; k <= 12; ++k) {
                const auto z = z_mjmc(k + l, k, params.truncated(k));
                EXPECT_GE(z, prev);
                EXPECT_LE(z, exact);
                prev = z;
            }
        }
}

TEST(Umjmc, FiniteSupportMassIsExact)
{
    const std::vector<Rational> xs{R(1, 2), R(1, 3), R(1, 6)};
    for (int l = 0; l <= 4; ++l) {
        const auto r = umjmc_mass(l, TailParams<Rational>::finite(xs), 1e-12);
        EXPECT_EQ(r.value, z_mjmc(2 + l, 2, xs));
        EXPECT_EQ(r.bound, 0.0);
    }
}

TEST(Imjmc, StepExamples)
{
    EXPECT_EQ(imjmc_step(IntegerPartition({3, 1}), 2), IntegerPartition({2, 2, 1}));
    EXPECT_EQ(imjmc_step(IntegerPartition({3, 1}), 0), IntegerPartition({2}));
    EXPECT_EQ(imjmc_step(IntegerPartition(), 3), IntegerPartition({3}));
    EXPECT_EQ(imjmc_step(IntegerPartition({2, 2}), 5), IntegerPartition({5, 2, 2}));
}

TEST(Imjmc, InvarianceWithExplicitTailRemainder)
{
    for (const auto& q : kQs) {
        const auto params = TailParams<Rational>::geometric(q);
        EXPECT_TRUE(verify_imjmc_invariance(params, 5));
        // Brute-force inflow over all mu of size <= N; the missing predecessors
        // are exactly (lambda+1, 1^t) with t beyond the cap, a geometric remainder.
        const int N = 13;
        const auto mus = oracle_partitions(N);
        for (const auto& lambda : oracle_partitions(4)) {
            const IntegerPartition target(lambda);
            Rational in = 0;
            for (const auto& mu : mus)
                for (int i = 0; i <= 4; ++i)
                    if (imjmc_step(IntegerPartition(mu), i) == target)
                        in += weight(mu, q) * params.x(i);
            std::vector<int> lifted;
            int size = 0;
            for (int p : lambda) {
                lifted.push_back(p + 1);
                size += p + 1;
            }
            const int t_max = N - size;
            const Rational y1 = params.y(1);
            const Rational missing = weight(lifted, q) * params.x(0) * power(y1, static_cast<unsigned>(t_max + 1)) / (1 - y1);
            EXPECT_EQ(in + missing, weight(lambda, q)) << target.str();
        }
    }
}

TEST(Imjmc, MassMatchesPartitionGeneratingFunction)
{
    const auto pn = partition_numbers(400);
    for (const auto& q : kQs) {
        const auto r = imjmc_mass(TailParams<Rational>::geometric(q), 1e-10);
        double series = 0.0;
        for (int n = 400; n >= 0; --n)
            series = series * q.get_d() + pn[static_cast<std::size_t>(n)];
        EXPECT_LE(r.value.get_d(), series * (1 + 1e-14));
        EXPECT_LE(series - r.value.get_d(), r.bound + 1e-12);
    }
}

TEST(Imjmc, FixedCutoffBound)
{
    const auto params = TailParams<Rational>::geometric(R(1, 2));
    const auto a = imjmc_mass_at(params, 5);
    const auto b = imjmc_mass_at(params, 40);
    EXPECT_LT(a.value, b.value);
    EXPECT_LE(Rational(b.value - a.value).get_d(), a.bound);
}

TEST(LIndependence, TStepLawsAgree)
{
    const std::vector<Rational> xs{R(1, 2), R(1, 4), R(1, 8), R(1, 8)};
    for (int t = 0; t <= 3; ++t)
        for (const auto& nu : enumerate_partitions_up_to(3)) {
            const int need = static_cast<int>(nu.length()) + t;
            EXPECT_TRUE(verify_l_to_infinity<Rational>(t, nu, {need, need + 1, need + 3, std::nullopt}, xs)) << t << ' ' << nu.str();
        }
    EXPECT_TRUE(verify_l_to_infinity<Rational>(1, IntegerPartition({1}), {2, std::nullopt}, xs));
    EXPECT_THROW(verify_l_to_infinity<Rational>(2, IntegerPartition({1}), {2, std::nullopt}, xs), DomainError);
}

TEST(LIndependence, LawsAreProbabilityVectors)
{
    const std::vector<Rational> xs{R(1, 3), R(1, 3), R(1, 3)};
    for (int t = 0; t <= 3; ++t) {
        Rational total = 0;
        for (const auto& [lambda, p] : t_step_law<Rational>(t, IntegerPartition({2}), std::nullopt, xs))
            total += p;
        EXPECT_EQ(total, 1);
    }
}
