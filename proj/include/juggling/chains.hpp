#pragma once

// Transition kernels of the juggling chains, their product-form stationary
// measures, and the projections relating them.
//
// State spaces and their orders:
//   mjmc                 St_{h,k}          enumerate_words
//   mjmc partition form  Par_{k,l}         enumerate_box_partitions
//   enriched             S(H,K)            enumerate_set_partitions
//   add-drop/annihilation St_h             enumerate_all_words
//   enriched variants    S(H)              enumerate_all_set_partitions
//   doubly enriched      {1..L}^h          enumerate_letter_words

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "combinat.hpp"
#include "kernel.hpp"
#include "scalar.hpp"
#include "symfun.hpp"

namespace juggling {

struct BuildOptions {
    /// Accept x_0 = 0 (resp. a = 0), where the closed class may not be unique.
    bool allow_reducible = false;
    /// Accept parameters that do not sum to 1; rows then need not be stochastic.
    bool allow_unnormalized = false;
};

namespace detail {

template <typename T>
void check_probabilities(const std::vector<T>& ps, const BuildOptions& opts, const std::string& what)
{
    T total = T(0);
    for (const auto& p : ps) {
        if (p < 0)
            throw DomainError(what + " must be nonnegative");
        total += p;
    }
    if (!opts.allow_unnormalized && !ScalarTraits<T>::equal(total, T(1)))
        throw DomainError(what + " must sum to 1 (got " + to_string(total) + ")");
}

template <typename T>
void check_mjmc_params(int k, const std::vector<T>& xs, const BuildOptions& opts)
{
    if (k < 0)
        throw DomainError("k must be nonnegative");
    if (xs.size() != static_cast<std::size_t>(k) + 1)
        throw DomainError("expected k+1 = " + std::to_string(k + 1) + " insertion probabilities, got " + std::to_string(xs.size()));
    check_probabilities(xs, opts, "insertion probabilities");
    if (!opts.allow_reducible && xs[0] == 0)
        throw DomainError("x_0 = 0: the chain may have several closed classes (pass allow_reducible)");
}

template <typename T>
void check_adddrop_params(int h, const AddDropParams<T>& p, const BuildOptions& opts)
{
    if (h < 0)
        throw DomainError("h must be nonnegative");
    if (p.zs.size() < static_cast<std::size_t>(h))
        throw DomainError("add-drop model needs z_1..z_h");
    if (!p.nonnegative())
        throw DomainError("add-drop parameters must be nonnegative");
    if (!opts.allow_reducible && p.a == 0)
        throw DomainError("a = 0: the chain may have several closed classes (pass allow_reducible)");
}

template <typename T>
void check_letters(const std::vector<T>& zs, const BuildOptions& opts)
{
    if (zs.empty())
        throw DomainError("letter alphabet must be nonempty");
    check_probabilities(zs, opts, "letter probabilities");
}

template <typename State>
std::vector<std::string> labels_of(const std::vector<State>& states)
{
    std::vector<std::string> out;
    out.reserve(states.size());
    for (const auto& s : states)
        out.push_back(s.str());
    return out;
}

inline std::vector<std::string> labels_of(const std::vector<LetterWord>& words)
{
    std::vector<std::string> out;
    out.reserve(words.size());
    for (const auto& w : words)
        out.push_back(letter_word_str(w));
    return out;
}

template <typename State>
std::map<State, std::size_t> index_map(const std::vector<State>& states)
{
    std::map<State, std::size_t> out;
    for (std::size_t i = 0; i < states.size(); ++i)
        out.emplace(states[i], i);
    return out;
}

template <typename T>
[[noreturn]] void refuse_non_unique(const std::string& which)
{
    throw DomainError("stationary distribution may be non-unique (" + which + " = 0); use the linear solver");
}

/// z_1 + ... + z_m with z_j = 0 beyond the alphabet.
template <typename T>
T letter_prefix(const std::vector<T>& zs, std::size_t m)
{
    T s = T(0);
    for (std::size_t j = 1; j <= std::min(m, zs.size()); ++j)
        s += zs[j - 1];
    return s;
}

/// z_from + ... + z_L.
template <typename T>
T letter_suffix(const std::vector<T>& zs, std::size_t from)
{
    T s = T(0);
    for (std::size_t j = from; j <= zs.size(); ++j)
        s += zs[j - 1];
    return s;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Multivariate juggling chain

/// Leading Empty: shift. Leading Ball: shift, then T_i with probability x_i.
template <typename T>
SparseKernel<T> build_mjmc(int h, int k, const std::vector<T>& xs, const BuildOptions& opts = {})
{
    detail::check_mjmc_params(k, xs, opts);
    const auto states = enumerate_words(h, k);
    const auto index = detail::index_map(states);
    KernelBuilder<T> b(detail::labels_of(states));
    for (std::size_t s = 0; s < states.size(); ++s) {
        const auto& A = states[s];
        if (h == 0) {
            b.add(s, s, T(1));
            continue;
        }
        const auto C = A.shifted();
        if (A[0] == Letter::Empty) {
            b.add(s, index.at(C), T(1));
            continue;
        }
        for (int i = 0; i <= k; ++i)
            b.add(s, index.at(replace_T(C, i)), xs[static_cast<std::size_t>(i)]);
    }
    return std::move(b).finish();
}

/// The same chain on Par_{k,l}: lambda_l > 0 shifts every part down; otherwise
/// part i is inserted at the first j with lambda_j <= i, earlier parts decremented.
template <typename T>
SparseKernel<T> build_mjmc_partition_form(int k, int l, const std::vector<T>& xs, const BuildOptions& opts = {})
{
    detail::check_mjmc_params(k, xs, opts);
    if (l < 0)
        throw DomainError("l must be nonnegative");
    const auto states = enumerate_box_partitions(k, l);
    const auto index = detail::index_map(states);
    KernelBuilder<T> b(detail::labels_of(states));
    const auto L = static_cast<std::size_t>(l);
    for (std::size_t s = 0; s < states.size(); ++s) {
        if (l == 0) {
            b.add(s, s, T(1));
            continue;
        }
        const auto p = states[s].padded(L);
        if (p[L - 1] != 0) {
            std::vector<int> mu(p);
            for (auto& part : mu)
                --part;
            b.add(s, index.at(IntegerPartition(mu)), T(1));
            continue;
        }
        for (int i = 0; i <= k; ++i) {
            std::size_t j = 0;
            while (p[j] > i)
                ++j;
            std::vector<int> mu;
            for (std::size_t r = 0; r < j; ++r)
                mu.push_back(p[r] - 1);
            mu.push_back(i);
            for (std::size_t r = j; r + 1 < L; ++r)
                mu.push_back(p[r]);
            b.add(s, index.at(IntegerPartition(mu)), xs[static_cast<std::size_t>(i)]);
        }
    }
    return std::move(b).finish();
}

/// Enriched chain on S(H,K): a singleton {1} moves to sigma_down + {H};
/// otherwise H joins the (i+1)-th block of sigma_down with probability x_i.
template <typename T>
SparseKernel<T> build_enriched(int H, int K, const std::vector<T>& xs, const BuildOptions& opts = {})
{
    if (H < 1 || K < 1)
        throw DomainError("enriched chain needs H, K >= 1");
    detail::check_mjmc_params(K - 1, xs, opts);
    const auto states = enumerate_set_partitions(H, K);
    const auto index = detail::index_map(states);
    KernelBuilder<T> b(detail::labels_of(states));
    for (std::size_t s = 0; s < states.size(); ++s) {
        const auto& sigma = states[s];
        const auto down = down_shift(sigma);
        if (sigma.is_singleton(1)) {
            b.add(s, index.at(with_new_singleton(down)), T(1));
            continue;
        }
        for (int i = 0; i < K; ++i)
            b.add(s, index.at(insert_I(down, i)), xs[static_cast<std::size_t>(i)]);
    }
    return std::move(b).finish();
}

/// Unnormalized w(B) = product over Ball positions of y_{E_i(B)}.
template <typename T>
T mjmc_weight(const JugglingWord& B, const std::vector<T>& ys)
{
    const auto e = empties_left(B);
    T w = T(1);
    for (std::size_t i = 0; i < B.size(); ++i) {
        if (B[i] == Letter::Ball)
            w *= ys.at(static_cast<std::size_t>(e[i]));
    }
    return w;
}

template <typename T>
Distribution<T> mjmc_weights(int h, int k, const std::vector<T>& xs)
{
    detail::check_mjmc_params(k, xs, BuildOptions{true, true});
    const auto ys = ParamVector<T>{xs}.tails();
    const auto states = enumerate_words(h, k);
    Distribution<T> d{detail::labels_of(states), {}, false};
    for (const auto& B : states)
        d.weights.push_back(mjmc_weight(B, ys));
    return d;
}

template <typename T>
Distribution<T> stationary_mjmc(int h, int k, const std::vector<T>& xs)
{
    detail::check_mjmc_params(k, xs, BuildOptions{true, false});
    if (xs[0] == 0)
        detail::refuse_non_unique<T>("x_0");
    auto d = mjmc_weights(h, k, xs);
    const T Z = z_mjmc(h, k, xs);
    for (auto& w : d.weights)
        w /= Z;
    d.normalized = true;
    return d;
}

/// w(lambda) = product of y_{lambda_i} over the l zero-padded parts.
template <typename T>
T partition_weight(const IntegerPartition& lambda, int l, const std::vector<T>& ys)
{
    T w = T(1);
    for (int part : lambda.padded(static_cast<std::size_t>(l)))
        w *= ys.at(static_cast<std::size_t>(part));
    return w;
}

template <typename T>
Distribution<T> stationary_mjmc_partition_form(int k, int l, const std::vector<T>& xs)
{
    detail::check_mjmc_params(k, xs, BuildOptions{true, false});
    if (xs[0] == 0)
        detail::refuse_non_unique<T>("x_0");
    const auto ys = ParamVector<T>{xs}.tails();
    const auto states = enumerate_box_partitions(k, l);
    const T Z = z_mjmc(k + l, k, xs);
    Distribution<T> d{detail::labels_of(states), {}, true};
    for (const auto& lambda : states)
        d.weights.push_back(partition_weight(lambda, l, ys) / Z);
    return d;
}

/// w~(sigma) = product over arches of x_{K - C_sigma(s,t)}.
template <typename T>
T enriched_weight(const SetPartition& sigma, const std::vector<T>& xs)
{
    const auto K = static_cast<int>(sigma.block_count());
    T w = T(1);
    for (const auto& arch : arches(sigma))
        w *= xs.at(static_cast<std::size_t>(K - arch.cover_count));
    return w;
}

template <typename T>
Distribution<T> enriched_weights(int H, int K, const std::vector<T>& xs)
{
    if (H < 1 || K < 1)
        throw DomainError("enriched chain needs H, K >= 1");
    detail::check_mjmc_params(K - 1, xs, BuildOptions{true, true});
    const auto states = enumerate_set_partitions(H, K);
    Distribution<T> d{detail::labels_of(states), {}, false};
    for (const auto& sigma : states)
        d.weights.push_back(enriched_weight(sigma, xs));
    return d;
}

template <typename T>
Distribution<T> stationary_enriched(int H, int K, const std::vector<T>& xs)
{
    if (H < 1 || K < 1)
        throw DomainError("enriched chain needs H, K >= 1");
    detail::check_mjmc_params(K - 1, xs, BuildOptions{true, false});
    if (xs[0] == 0)
        detail::refuse_non_unique<T>("x_0");
    auto d = enriched_weights(H, K, xs);
    const T Z = z_mjmc(H - 1, K - 1, xs);
    for (auto& w : d.weights)
        w /= Z;
    d.normalized = true;
    return d;
}

/// pi({lambda_j = n}) = y_n h_{j-1}(y_n..y_k) h_{l-j}(y_0..y_n) / h_l(y_0..y_k).
template <typename T>
T marginal_part(int j, int n, int k, int l, const std::vector<T>& xs)
{
    detail::check_mjmc_params(k, xs, BuildOptions{true, false});
    if (j < 1 || j > l || n < 0 || n > k)
        throw DomainError("marginal_part needs 1 <= j <= l and 0 <= n <= k");
    const auto ys = ParamVector<T>{xs}.tails();
    std::vector<T> upper(ys.begin() + n, ys.end());
    std::vector<T> lower(ys.begin(), ys.begin() + n + 1);
    return ys[static_cast<std::size_t>(n)] * complete_homogeneous(j - 1, upper) * complete_homogeneous(l - j, lower) /
           complete_homogeneous(l, ys);
}

/// Joint law of parts lambda_{j_s} = n_s, given as (j_s, n_s) with j strictly
/// increasing and n nonincreasing.
template <typename T>
T joint_parts(const std::vector<std::pair<int, int>>& constraints, int k, int l, const std::vector<T>& xs)
{
    detail::check_mjmc_params(k, xs, BuildOptions{true, false});
    std::vector<std::pair<int, int>> c;
    c.emplace_back(0, k);
    for (const auto& jn : constraints) {
        if (jn.first <= c.back().first || jn.first > l || jn.second < 0 || jn.second > c.back().second)
            throw DomainError("joint_parts constraints must have increasing j in 1..l and nonincreasing n in 0..k");
        c.push_back(jn);
    }
    c.emplace_back(l + 1, 0);
    const auto ys = ParamVector<T>{xs}.tails();
    T num = T(1);
    for (std::size_t s = 1; s < c.size(); ++s) {
        const auto [j, n] = c[s];
        const auto [jp, np] = c[s - 1];
        std::vector<T> window(ys.begin() + n, ys.begin() + np + 1);
        num *= ys[static_cast<std::size_t>(n)] * complete_homogeneous(j - jp - 1, window);
    }
    return num / complete_homogeneous(l, ys);
}

// ---------------------------------------------------------------------------
// Add-drop model

/// From A, with C = a_2..a_h o holding k Empties: S_i(C) with probability z_i / (z_0 + .. + z_k).
template <typename T>
SparseKernel<T> build_adddrop(int h, const AddDropParams<T>& p, const BuildOptions& opts = {})
{
    detail::check_adddrop_params(h, p, opts);
    const auto states = enumerate_all_words(h);
    const auto index = detail::index_map(states);
    KernelBuilder<T> b(detail::labels_of(states));
    for (std::size_t s = 0; s < states.size(); ++s) {
        if (h == 0) {
            b.add(s, s, T(1));
            continue;
        }
        const auto C = states[s].shifted();
        const auto k = C.empties();
        T denom = T(0);
        for (std::size_t i = 0; i <= k; ++i)
            denom += p.z(i);
        if (denom == 0)
            throw DomainError("add-drop row '" + states[s].str() + "' has zero total weight");
        for (std::size_t i = 0; i <= k; ++i)
            b.add(s, index.at(replace_S(C, static_cast<int>(i))), p.z(i) / denom);
    }
    return std::move(b).finish();
}

/// Enriched add-drop on S(H): J_i(sigma_down) with probability z_i / (z_0 + .. + z_k),
/// k the block count of sigma_down.
template <typename T>
SparseKernel<T> build_enriched_adddrop(int H, const AddDropParams<T>& p, const BuildOptions& opts = {})
{
    if (H < 1)
        throw DomainError("enriched add-drop needs H >= 1");
    detail::check_adddrop_params(H - 1, p, opts);
    const auto states = enumerate_all_set_partitions(H);
    const auto index = detail::index_map(states);
    KernelBuilder<T> b(detail::labels_of(states));
    for (std::size_t s = 0; s < states.size(); ++s) {
        const auto down = down_shift(states[s]);
        const auto k = down.block_count();
        T denom = T(0);
        for (std::size_t i = 0; i <= k; ++i)
            denom += p.z(i);
        if (denom == 0)
            throw DomainError("add-drop row '" + states[s].str() + "' has zero total weight");
        for (std::size_t i = 0; i <= k; ++i)
            b.add(s, index.at(insert_J(down, static_cast<int>(i))), p.z(i) / denom);
    }
    return std::move(b).finish();
}

/// W(B) = a^k prod over Balls of (z_1 + .. + z_{psi_i(B)+1}).
template <typename T>
Distribution<T> adddrop_weights(int h, const AddDropParams<T>& p)
{
    detail::check_adddrop_params(h, p, BuildOptions{true, true});
    const auto states = enumerate_all_words(h);
    Distribution<T> d{detail::labels_of(states), {}, false};
    for (const auto& B : states) {
        const auto psi_r = empties_right(B);
        T w = power(p.a, static_cast<unsigned>(B.empties()));
        for (std::size_t i = 0; i < B.size(); ++i) {
            if (B[i] != Letter::Ball)
                continue;
            T s = T(0);
            for (int j = 1; j <= psi_r[i] + 1; ++j)
                s += p.z(static_cast<std::size_t>(j));
            w *= s;
        }
        d.weights.push_back(std::move(w));
    }
    return d;
}

template <typename T>
Distribution<T> stationary_adddrop(int h, const AddDropParams<T>& p)
{
    detail::check_adddrop_params(h, p, BuildOptions{true, true});
    if (p.a == 0)
        detail::refuse_non_unique<T>("a");
    auto d = adddrop_weights(h, p);
    const T Z = z_adddrop(h, p);
    for (auto& w : d.weights)
        w /= Z;
    d.normalized = true;
    return d;
}

/// W~(sigma) = a^{K-1} prod over arches of z_{C_sigma(s,t)}.
template <typename T>
Distribution<T> enriched_adddrop_weights(int H, const AddDropParams<T>& p)
{
    if (H < 1)
        throw DomainError("enriched add-drop needs H >= 1");
    detail::check_adddrop_params(H - 1, p, BuildOptions{true, true});
    const auto states = enumerate_all_set_partitions(H);
    Distribution<T> d{detail::labels_of(states), {}, false};
    for (const auto& sigma : states) {
        T w = power(p.a, static_cast<unsigned>(sigma.block_count() - 1));
        for (const auto& arch : arches(sigma))
            w *= p.z(static_cast<std::size_t>(arch.cover_count));
        d.weights.push_back(std::move(w));
    }
    return d;
}

template <typename T>
Distribution<T> stationary_enriched_adddrop(int H, const AddDropParams<T>& p)
{
    if (H < 1)
        throw DomainError("enriched add-drop needs H >= 1");
    detail::check_adddrop_params(H - 1, p, BuildOptions{true, true});
    if (p.a == 0)
        detail::refuse_non_unique<T>("a");
    auto d = enriched_adddrop_weights(H, p);
    const T Z = z_adddrop(H - 1, p);
    for (auto& w : d.weights)
        w /= Z;
    d.normalized = true;
    return d;
}

// ---------------------------------------------------------------------------
// Annihilation family. Parameters are letter probabilities z_1..z_L; the
// standard model has L = h+1 with z_{h+1} = a.

/// (z_1, .., z_h, a).
template <typename T>
std::vector<T> annihilation_letters(int h, const AddDropParams<T>& p)
{
    if (h < 0 || p.zs.size() < static_cast<std::size_t>(h))
        throw DomainError("annihilation model needs z_1..z_h");
    std::vector<T> out(p.zs.begin(), p.zs.begin() + h);
    out.push_back(p.a);
    return out;
}

/// P_{A,B} = sum of z_i over i in 1..L with B = S_i(a_2..a_h o).
template <typename T>
SparseKernel<T> build_annihilation(int h, const std::vector<T>& zs, const BuildOptions& opts = {})
{
    if (h < 0)
        throw DomainError("h must be nonnegative");
    detail::check_letters(zs, opts);
    const auto states = enumerate_all_words(h);
    const auto index = detail::index_map(states);
    KernelBuilder<T> b(detail::labels_of(states));
    for (std::size_t s = 0; s < states.size(); ++s) {
        if (h == 0) {
            b.add(s, s, detail::letter_suffix(zs, 1));
            continue;
        }
        const auto C = states[s].shifted();
        for (std::size_t i = 1; i <= zs.size(); ++i)
            b.add(s, index.at(replace_S(C, static_cast<int>(i))), zs[i - 1]);
    }
    return std::move(b).finish();
}

/// P~_{sigma,tau} = sum of z_i over i in 1..L with tau = J_i(sigma_down).
template <typename T>
SparseKernel<T> build_enriched_annihilation(int H, const std::vector<T>& zs, const BuildOptions& opts = {})
{
    if (H < 1)
        throw DomainError("enriched annihilation needs H >= 1");
    detail::check_letters(zs, opts);
    const auto states = enumerate_all_set_partitions(H);
    const auto index = detail::index_map(states);
    KernelBuilder<T> b(detail::labels_of(states));
    for (std::size_t s = 0; s < states.size(); ++s) {
        const auto down = down_shift(states[s]);
        for (std::size_t i = 1; i <= zs.size(); ++i)
            b.add(s, index.at(insert_J(down, static_cast<int>(i))), zs[i - 1]);
    }
    return std::move(b).finish();
}

/// Sliding window on {1..L}^h: w_1..w_h moves to w_2..w_h i with probability z_i.
template <typename T>
SparseKernel<T> build_doubly_enriched(int h, const std::vector<T>& zs, const BuildOptions& opts = {})
{
    if (h < 0)
        throw DomainError("h must be nonnegative");
    detail::check_letters(zs, opts);
    const auto L = zs.size();
    const auto states = enumerate_letter_words(h, static_cast<int>(L));
    KernelBuilder<T> b(detail::labels_of(states));
    const std::size_t tail = states.size() / L; // L^{h-1} when h >= 1
    for (std::size_t s = 0; s < states.size(); ++s) {
        if (h == 0) {
            b.add(s, s, detail::letter_suffix(zs, 1));
            continue;
        }
        // Lexicographic index of w_2..w_h i is (s mod L^{h-1}) L + (i-1).
        for (std::size_t i = 1; i <= L; ++i)
            b.add(s, (s % tail) * L + (i - 1), zs[i - 1]);
    }
    return std::move(b).finish();
}

/// Pi(B) = prod over Balls of (z_1 + .. + z_{psi_i+1}) times prod_{j=1}^k (z_{j+1} + .. + z_L);
/// zero when k >= L.
template <typename T>
Distribution<T> annihilation_weights(int h, const std::vector<T>& zs)
{
    detail::check_letters(zs, BuildOptions{true, true});
    const auto states = enumerate_all_words(h);
    Distribution<T> d{detail::labels_of(states), {}, false};
    for (const auto& B : states) {
        const auto k = B.empties();
        if (k >= zs.size()) {
            d.weights.push_back(T(0));
            continue;
        }
        const auto psi_r = empties_right(B);
        T w = T(1);
        for (std::size_t i = 0; i < B.size(); ++i) {
            if (B[i] == Letter::Ball)
                w *= detail::letter_prefix(zs, static_cast<std::size_t>(psi_r[i]) + 1);
        }
        for (std::size_t j = 1; j <= k; ++j)
            w *= detail::letter_suffix(zs, j + 1);
        d.weights.push_back(std::move(w));
    }
    return d;
}

/// Pi~(sigma) = prod over arches of z_C times prod_{i=1}^{K-1} (z_{i+1} + .. + z_L); zero when K > L.
template <typename T>
Distribution<T> enriched_annihilation_weights(int H, const std::vector<T>& zs)
{
    if (H < 1)
        throw DomainError("enriched annihilation needs H >= 1");
    detail::check_letters(zs, BuildOptions{true, true});
    const auto states = enumerate_all_set_partitions(H);
    Distribution<T> d{detail::labels_of(states), {}, false};
    for (const auto& sigma : states) {
        const auto K = sigma.block_count();
        if (K > zs.size()) {
            d.weights.push_back(T(0));
            continue;
        }
        T w = T(1);
        for (const auto& arch : arches(sigma))
            w *= zs[static_cast<std::size_t>(arch.cover_count) - 1];
        for (std::size_t i = 1; i < K; ++i)
            w *= detail::letter_suffix(zs, i + 1);
        d.weights.push_back(std::move(w));
    }
    return d;
}

/// Pi^(W) = z_{w_1} .. z_{w_h}.
template <typename T>
Distribution<T> doubly_enriched_weights(int h, const std::vector<T>& zs)
{
    detail::check_letters(zs, BuildOptions{true, true});
    const auto states = enumerate_letter_words(h, static_cast<int>(zs.size()));
    Distribution<T> d{detail::labels_of(states), {}, false};
    for (const auto& W : states) {
        T w = T(1);
        for (int letter : W)
            w *= zs[static_cast<std::size_t>(letter) - 1];
        d.weights.push_back(std::move(w));
    }
    return d;
}

namespace detail {

/// The annihilation measures carry no normalizer: the total must already be 1.
template <typename T>
Distribution<T> assert_unit_mass(Distribution<T> d)
{
    if (!ScalarTraits<T>::equal(d.total(), T(1)))
        throw std::logic_error("annihilation stationary weights sum to " + to_string(d.total()) + ", not 1");
    d.normalized = true;
    return d;
}

} // namespace detail

template <typename T>
Distribution<T> stationary_annihilation(int h, const std::vector<T>& zs)
{
    detail::check_letters(zs, BuildOptions{});
    return detail::assert_unit_mass(annihilation_weights(h, zs));
}

template <typename T>
Distribution<T> stationary_enriched_annihilation(int H, const std::vector<T>& zs)
{
    detail::check_letters(zs, BuildOptions{});
    return detail::assert_unit_mass(enriched_annihilation_weights(H, zs));
}

template <typename T>
Distribution<T> stationary_doubly_enriched(int h, const std::vector<T>& zs)
{
    detail::check_letters(zs, BuildOptions{});
    return detail::assert_unit_mass(doubly_enriched_weights(h, zs));
}

// ---------------------------------------------------------------------------
// Projections

/// phi(w_1..w_j) = S_{w_j}(phi(w_1..w_{j-1}) o), seeded with the empty word.
inline JugglingWord phi(const LetterWord& w)
{
    JugglingWord B;
    for (int letter : w) {
        if (letter < 1)
            throw DomainError("letters must be positive");
        B = replace_S(B.appended(Letter::Empty), letter);
    }
    return B;
}

/// phi~(w_1..w_j) = J_{w_j}(phi~(w_1..w_{j-1})), seeded with {{1}}.
inline SetPartition phi_tilde(const LetterWord& w)
{
    auto sigma = SetPartition::from_blocks(1, {{1}});
    for (int letter : w) {
        if (letter < 1)
            throw DomainError("letters must be positive");
        sigma = insert_J(sigma, letter);
    }
    return sigma;
}

/// psi: S(H,K) -> St_{H-1,K-1}.
inline LumpingMap lumping_psi(int H, int K)
{
    if (H < 1 || K < 1)
        throw DomainError("lumping_psi needs H, K >= 1");
    const auto sources = enumerate_set_partitions(H, K);
    return make_lumping_map(sources, detail::labels_of(sources), detail::labels_of(enumerate_words(H - 1, K - 1)),
                            [](const SetPartition& s) { return psi(s).str(); });
}

/// psi: S(H) -> St_{H-1}.
inline LumpingMap lumping_psi_all(int H)
{
    if (H < 1)
        throw DomainError("lumping_psi needs H >= 1");
    const auto sources = enumerate_all_set_partitions(H);
    return make_lumping_map(sources, detail::labels_of(sources), detail::labels_of(enumerate_all_words(H - 1)),
                            [](const SetPartition& s) { return psi(s).str(); });
}

/// phi: {1..L}^h -> St_h.
inline LumpingMap phi_map(int h, int L)
{
    const auto sources = enumerate_letter_words(h, L);
    return make_lumping_map(sources, detail::labels_of(sources), detail::labels_of(enumerate_all_words(h)),
                            [](const LetterWord& w) { return phi(w).str(); });
}

/// phi~: {1..L}^h -> S(h+1).
inline LumpingMap phi_tilde_map(int h, int L)
{
    const auto sources = enumerate_letter_words(h, L);
    return make_lumping_map(sources, detail::labels_of(sources), detail::labels_of(enumerate_all_set_partitions(h + 1)),
                            [](const LetterWord& w) { return phi_tilde(w).str(); });
}

/// The bijection St_{k+l,k} -> Par_{k,l}.
inline LumpingMap word_partition_map(int k, int l)
{
    const auto sources = enumerate_words(k + l, k);
    return make_lumping_map(sources, detail::labels_of(sources), detail::labels_of(enumerate_box_partitions(k, l)),
                            [](const JugglingWord& w) { return word_to_partition(w).str(); });
}

} // namespace juggling
