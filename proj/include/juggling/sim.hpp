#pragma once

// Seeded Monte-Carlo simulation of the finite chains and of the UMJMC.
//
// Generator: std::mt19937_64, seeded per replica with splitmix64(seed, replica),
// so every replica is an independent, reproducible substream. Uniforms are
// (bits >> 11) * 2^-53; successors are drawn by inverse CDF over each row,
// converted to double once per row with the last CDF entry pinned to 1.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "combinat.hpp"
#include "infinite.hpp"
#include "kernel.hpp"
#include "linalg.hpp"
#include "scalar.hpp"

namespace juggling {

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class ReplicaRng {
public:
    ReplicaRng(std::uint64_t seed, std::uint64_t replica) : engine_(splitmix64(splitmix64(seed) ^ replica)) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

struct SimConfig {
    std::uint64_t seed = 0;
    /// Samples are recorded at times burn_in, burn_in+1, .., burn_in+steps.
    int steps = 0;
    int burn_in = 0;
    int replicas = 1;
    /// Start state label; the first state of the ordering when empty.
    std::optional<std::string> initial;

    void validate() const
    {
        if (steps < 0 || burn_in < 0)
            throw DomainError("steps and burn_in must be nonnegative");
        if (replicas < 1)
            throw DomainError("replicas must be at least 1");
    }
};

struct EmpiricalDistribution {
    std::vector<std::string> labels;
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;

    std::vector<double> frequencies() const
    {
        std::vector<double> f(counts.size(), 0.0);
        for (std::size_t i = 0; i < counts.size(); ++i)
            f[i] = total ? static_cast<double>(counts[i]) / static_cast<double>(total) : 0.0;
        return f;
    }

    bool operator==(const EmpiricalDistribution&) const = default;
};

/// Inverse-CDF sampler over the rows of a kernel.
class RowSampler {
public:
    template <typename T>
    explicit RowSampler(const SparseKernel<T>& k) : targets_(k.size()), cdfs_(k.size())
    {
        for (std::size_t i = 0; i < k.size(); ++i) {
            double acc = 0.0;
            for (const auto& e : k.row(i)) {
                acc += ScalarTraits<T>::to_double(e.p);
                targets_[i].push_back(e.col);
                cdfs_[i].push_back(acc);
            }
            if (cdfs_[i].empty())
                throw DomainError("kernel row '" + k.label(i) + "' is empty");
            cdfs_[i].back() = 1.0;
        }
    }

    std::size_t next(std::size_t state, double u) const
    {
        const auto& cdf = cdfs_[state];
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end())
            --it;
        return targets_[state][static_cast<std::size_t>(it - cdf.begin())];
    }

    std::size_t size() const { return targets_.size(); }

private:
    std::vector<std::vector<std::size_t>> targets_;
    std::vector<std::vector<double>> cdfs_;
};

template <typename T>
EmpiricalDistribution run(const SparseKernel<T>& k, const SimConfig& cfg)
{
    cfg.validate();
    const RowSampler sampler(k);
    const std::size_t start = cfg.initial ? k.index_of(*cfg.initial) : 0;
    EmpiricalDistribution out{k.labels(), std::vector<std::uint64_t>(k.size(), 0), 0};
    for (int r = 0; r < cfg.replicas; ++r) {
        ReplicaRng rng(cfg.seed, static_cast<std::uint64_t>(r));
        std::size_t s = start;
        for (int t = 0; t < cfg.burn_in; ++t)
            s = sampler.next(s, rng.uniform());
        ++out.counts[s];
        for (int t = 0; t < cfg.steps; ++t) {
            s = sampler.next(s, rng.uniform());
            ++out.counts[s];
        }
        out.total += static_cast<std::uint64_t>(cfg.steps) + 1;
    }
    return out;
}

/// (1/2) sum |a_i - b_i|.
template <typename T>
double tv_distance(const EmpiricalDistribution& a, const Distribution<T>& b)
{
    if (a.labels != b.labels)
        throw DomainError("tv_distance: state spaces differ");
    const auto f = a.frequencies();
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        s += std::abs(f[i] - ScalarTraits<T>::to_double(b.weights[i]));
    return s / 2.0;
}

template <typename T>
double tv_distance(const Distribution<T>& a, const Distribution<T>& b)
{
    if (a.labels != b.labels)
        throw DomainError("tv_distance: state spaces differ");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += std::abs(ScalarTraits<T>::to_double(a.weights[i]) - ScalarTraits<T>::to_double(b.weights[i]));
    return s / 2.0;
}

inline double tv_distance(const EmpiricalDistribution& a, const EmpiricalDistribution& b)
{
    if (a.labels != b.labels)
        throw DomainError("tv_distance: state spaces differ");
    const auto fa = a.frequencies();
    const auto fb = b.frequencies();
    double s = 0.0;
    for (std::size_t i = 0; i < fa.size(); ++i)
        s += std::abs(fa[i] - fb[i]);
    return s / 2.0;
}

/// 3 sqrt(n_states / samples).
inline double tv_error_bound(std::size_t states, std::uint64_t samples)
{
    return 3.0 * std::sqrt(static_cast<double>(states) / static_cast<double>(samples));
}

// ---------------------------------------------------------------------------

struct StartResult {
    std::string start;
    double tv = 0.0;
};

struct StrongStationaryReport {
    int horizon = 0;
    /// Every row of P^horizon equals the stationary vector (exact).
    bool exact_rows_match = false;
    /// Rows of P^horizon all coincide, whatever they equal.
    bool exact_rows_equal = false;
    std::vector<StartResult> starts;
    double tv_bound = 0.0;
    bool empirical_ok = false;

    bool passed() const { return exact_rows_match && empirical_ok; }
};

/// From each start (all states when there are at most max_starts, otherwise an
/// evenly spaced subset), run `trials` replicas for exactly `horizon` steps and
/// compare the law at that time with the stationary vector; the exact
/// counterpart compares every row of P^horizon.
template <typename T>
StrongStationaryReport strong_stationary_check(const SparseKernel<T>& k, const Distribution<T>& stationary, int horizon,
                                               int trials, std::uint64_t seed, std::size_t max_starts = 64)
{
    if (horizon < 0 || trials < 1)
        throw DomainError("strong_stationary_check needs horizon >= 0 and trials >= 1");
    if (stationary.labels != k.labels())
        throw DomainError("stationary vector is not over the kernel's state space");
    StrongStationaryReport rep;
    rep.horizon = horizon;
    const auto Ph = matpow(k, horizon);
    rep.exact_rows_equal = rows_all_equal(Ph);
    rep.exact_rows_match = rows_all_equal_to(Ph, stationary.weights);

    std::vector<std::size_t> starts;
    if (k.size() <= max_starts) {
        for (std::size_t i = 0; i < k.size(); ++i)
            starts.push_back(i);
    } else {
        for (std::size_t j = 0; j < max_starts; ++j)
            starts.push_back(j * (k.size() - 1) / (max_starts - 1));
    }
    rep.tv_bound = tv_error_bound(k.size(), static_cast<std::uint64_t>(trials));
    rep.empirical_ok = true;
    for (std::size_t idx = 0; idx < starts.size(); ++idx) {
        SimConfig cfg;
        cfg.seed = seed + idx;
        cfg.burn_in = horizon;
        cfg.steps = 0;
        cfg.replicas = trials;
        cfg.initial = k.label(starts[idx]);
        const auto emp = run(k, cfg);
        const double tv = tv_distance(emp, stationary);
        rep.starts.push_back({k.label(starts[idx]), tv});
        if (!(tv < rep.tv_bound))
            rep.empirical_ok = false;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// UMJMC on partitions with l parts

/// Insertion index drawn by inverse CDF: directly for the geometric family,
/// by scanning x_0, x_1, .. otherwise.
template <typename T>
int sample_insertion(const TailParams<T>& params, double u)
{
    if (params.is_geometric()) {
        const double q = ScalarTraits<T>::to_double(params.q());
        if (q == 0.0)
            return 0;
        // P(I >= i) = q^i.
        return static_cast<int>(std::floor(std::log1p(-u) / std::log(q)));
    }
    double acc = 0.0;
    const auto top = params.support_max();
    for (int i = 0;; ++i) {
        acc += ScalarTraits<T>::to_double(params.x(i));
        if (u < acc || (top && i >= *top))
            return i;
        if (i > 1000000)
            throw DomainError("insertion sampling did not terminate");
    }
}

/// Visit counts of the UMJMC with l parts from the empty partition.
template <typename T>
std::map<IntegerPartition, std::uint64_t> simulate_umjmc(int l, const TailParams<T>& params, const SimConfig& cfg)
{
    cfg.validate();
    if (l < 0)
        throw DomainError("l must be nonnegative");
    std::map<IntegerPartition, std::uint64_t> counts;
    const auto L = static_cast<std::size_t>(l);
    for (int r = 0; r < cfg.replicas; ++r) {
        ReplicaRng rng(cfg.seed, static_cast<std::uint64_t>(r));
        std::vector<int> p(L, 0);
        auto step = [&] {
            if (L == 0)
                return;
            if (p[L - 1] != 0) {
                for (auto& part : p)
                    --part;
                return;
            }
            const int i = sample_insertion(params, rng.uniform());
            std::size_t j = 0;
            while (p[j] > i)
                ++j;
            for (std::size_t s = L - 1; s > j; --s)
                p[s] = p[s - 1];
            for (std::size_t s = 0; s < j; ++s)
                --p[s];
            p[j] = i;
        };
        for (int t = 0; t < cfg.burn_in; ++t)
            step();
        ++counts[IntegerPartition(p)];
        for (int t = 0; t < cfg.steps; ++t) {
            step();
            ++counts[IntegerPartition(p)];
        }
    }
    return counts;
}

} // namespace juggling
