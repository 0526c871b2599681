#pragma once

// Normalization factors of the juggling chains: complete homogeneous
// symmetric polynomials in the tail sums, Stirling numbers and their
// q-analogues.

#include <span>
#include <string>
#include <vector>

#include "combinat.hpp"
#include "scalar.hpp"

namespace juggling {

/// Insertion probabilities x_0..x_k. Normalization is checked on demand only.
template <typename T = Rational>
struct ParamVector {
    std::vector<T> xs;

    std::size_t size() const { return xs.size(); }

    /// Number of empty sites k = size() - 1.
    int k() const { return static_cast<int>(xs.size()) - 1; }

    const T& x(std::size_t i) const { return xs.at(i); }

    /// Tail sums y_m = x_m + ... + x_k for m = 0..k.
    std::vector<T> tails() const
    {
        std::vector<T> ys(xs.size());
        T acc = T(0);
        for (std::size_t m = xs.size(); m-- > 0;) {
            acc += xs[m];
            ys[m] = acc;
        }
        return ys;
    }

    /// z_i = x_{K-i}, i = 1..K, K = size().
    T z(std::size_t i) const { return xs.at(xs.size() - i); }

    T total() const
    {
        T s = T(0);
        for (const auto& x : xs)
            s += x;
        return s;
    }

    bool nonnegative() const
    {
        for (const auto& x : xs) {
            if (x < 0)
                return false;
        }
        return true;
    }

    bool normalized() const { return ScalarTraits<T>::equal(total(), T(1)); }
};

/// Fugacity a = z_0 and weights z_1..z_n for the add-drop and annihilation models.
template <typename T = Rational>
struct AddDropParams {
    T a = T(1);
    std::vector<T> zs;

    /// z_0 = a; zero beyond the stored weights.
    T z(std::size_t i) const
    {
        if (i == 0)
            return a;
        return i <= zs.size() ? zs[i - 1] : T(0);
    }

    bool nonnegative() const
    {
        if (a < 0)
            return false;
        for (const auto& z : zs) {
            if (z < 0)
                return false;
        }
        return true;
    }
};

// ---------------------------------------------------------------------------

/// h_l(y_0..y_k) via h_l(y_0..y_j) = h_l(y_0..y_{j-1}) + y_j h_{l-1}(y_0..y_j).
template <typename T>
T complete_homogeneous(int l, std::span<const T> ys)
{
    if (l < 0)
        throw DomainError("complete_homogeneous degree must be nonnegative");
    std::vector<T> h(static_cast<std::size_t>(l) + 1, T(0));
    h[0] = T(1);
    for (const auto& y : ys) {
        for (int d = 1; d <= l; ++d)
            h[d] += y * h[d - 1];
    }
    return h[static_cast<std::size_t>(l)];
}

template <typename T>
T complete_homogeneous(int l, const std::vector<T>& ys)
{
    return complete_homogeneous<T>(l, std::span<const T>(ys));
}

namespace detail {

template <typename T>
void check_mjmc_sizes(int h, int k, const std::vector<T>& xs)
{
    if (h < 0 || k < 0)
        throw DomainError("Z_{h,k} requires h, k >= 0");
    if (xs.size() != static_cast<std::size_t>(k) + 1)
        throw DomainError("Z_{h,k} expects k+1 = " + std::to_string(k + 1) + " parameters, got " + std::to_string(xs.size()));
}

} // namespace detail

/// Z_{h,k}(x_0..x_k) = h_{h-k}(y_0..y_k); zero when h < k.
template <typename T>
T z_mjmc(int h, int k, const std::vector<T>& xs)
{
    detail::check_mjmc_sizes(h, k, xs);
    if (h < k)
        return T(0);
    return complete_homogeneous<T>(h - k, ParamVector<T>{xs}.tails());
}

/// Word-sum form: sum over B in St_{h,k} of the product over Balls of y_{E_i(B)}.
template <typename T>
T z_mjmc_word_sum(int h, int k, const std::vector<T>& xs)
{
    detail::check_mjmc_sizes(h, k, xs);
    if (h < k)
        return T(0);
    const auto ys = ParamVector<T>{xs}.tails();
    T total = T(0);
    for (const auto& word : enumerate_words(h, k)) {
        const auto e = empties_left(word);
        T term = T(1);
        for (std::size_t i = 0; i < word.size(); ++i) {
            if (word[i] == Letter::Ball)
                term *= ys[static_cast<std::size_t>(e[i])];
        }
        total += term;
    }
    return total;
}

/// Recursion removing x_0: Z_{h,k}(x_0..x_k) = Z_{h-1,k-1}(x_1..x_k) + (x_0+..+x_k) Z_{h-1,k}.
/// Boundary: Z = delta_{h,k} when h = -1 or k = -1.
template <typename T>
T z_mjmc_by_first_recursion(int h, int k, std::span<const T> xs)
{
    if (h == -1 || k == -1)
        return (h == k) ? T(1) : T(0);
    T total = T(0);
    for (const auto& x : xs)
        total += x;
    T rest = z_mjmc_by_first_recursion<T>(h - 1, k - 1, xs.subspan(1));
    T same = z_mjmc_by_first_recursion<T>(h - 1, k, xs);
    return rest + total * same;
}

/// Recursion removing x_k: Z_{h,k} = sum_{n=0}^{h-k} C(h,n) x_k^n Z_{h-n-1,k-1}(x_0..x_{k-1}).
template <typename T>
T z_mjmc_by_last_recursion(int h, int k, std::span<const T> xs)
{
    if (h == -1 || k == -1)
        return (h == k) ? T(1) : T(0);
    const T& last = xs[static_cast<std::size_t>(k)];
    T total = T(0);
    T binom = T(1); // C(h, n)
    T last_pow = T(1);
    for (int n = 0; n <= h - k; ++n) {
        total += binom * last_pow * z_mjmc_by_last_recursion<T>(h - n - 1, k - 1, xs.first(static_cast<std::size_t>(k)));
        binom = binom * T(h - n) / T(n + 1);
        last_pow *= last;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Classical numbers

template <typename T = Rational>
T binomial(int n, int k)
{
    if (k < 0 || n < 0 || k > n)
        return T(0);
    T b = T(1);
    for (int i = 0; i < k; ++i)
        b = b * T(n - i) / T(i + 1);
    return b;
}

/// Stirling numbers of the second kind by S(n,k) = S(n-1,k-1) + k S(n-1,k).
template <typename T = Rational>
T stirling2(int n, int k)
{
    if (n < 0 || k < 0)
        throw DomainError("stirling2 requires nonnegative indices");
    std::vector<std::vector<T>> s(static_cast<std::size_t>(n) + 1, std::vector<T>(static_cast<std::size_t>(k) + 1, T(0)));
    s[0][0] = T(1);
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= k; ++j)
            s[i][j] = s[i - 1][j - 1] + T(j) * s[i - 1][j];
    }
    return s[n][k];
}

template <typename T = Rational>
T bell(int n)
{
    T total = T(0);
    for (int k = 0; k <= n; ++k)
        total += stirling2<T>(n, k);
    return total;
}

/// [n]_q = 1 + q + ... + q^{n-1}.
template <typename T>
T q_int(int n, const T& q)
{
    if (n < 0)
        throw DomainError("q_int requires n >= 0");
    T total = T(0);
    T p = T(1);
    for (int i = 0; i < n; ++i) {
        total += p;
        p *= q;
    }
    return total;
}

/// q-Stirling numbers: S_q(n,k) = S_q(n-1,k-1) + [k]_q S_q(n-1,k).
template <typename T>
T q_stirling2(int n, int k, const T& q)
{
    if (n < 0 || k < 0)
        throw DomainError("q_stirling2 requires nonnegative indices");
    std::vector<std::vector<T>> s(static_cast<std::size_t>(n) + 1, std::vector<T>(static_cast<std::size_t>(k) + 1, T(0)));
    s[0][0] = T(1);
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= k; ++j)
            s[i][j] = s[i - 1][j - 1] + q_int(j, q) * s[i - 1][j];
    }
    return s[n][k];
}

/// Gaussian binomial by the q-Pascal rule [n,k] = [n-1,k-1] + q^k [n-1,k].
template <typename T>
T q_binomial(int n, int k, const T& q)
{
    if (n < 0 || k < 0)
        throw DomainError("q_binomial requires nonnegative indices");
    if (k > n)
        return T(0);
    std::vector<std::vector<T>> b(static_cast<std::size_t>(n) + 1, std::vector<T>(static_cast<std::size_t>(k) + 1, T(0)));
    for (int i = 0; i <= n; ++i) {
        b[i][0] = T(1);
        for (int j = 1; j <= std::min(i, k); ++j)
            b[i][j] = b[i - 1][j - 1] + power(q, static_cast<unsigned>(j)) * b[i - 1][j];
    }
    return b[n][k];
}

// ---------------------------------------------------------------------------
// Parameter families

template <typename T = Rational>
std::vector<T> uniform_params(int k)
{
    return std::vector<T>(static_cast<std::size_t>(k) + 1, T(1) / T(k + 1));
}

/// x_i = (1-q) q^i for i < k and x_k = q^k.
template <typename T>
std::vector<T> truncated_geometric_params(int k, const T& q)
{
    std::vector<T> xs;
    for (int i = 0; i < k; ++i)
        xs.push_back((T(1) - q) * power(q, static_cast<unsigned>(i)));
    xs.push_back(power(q, static_cast<unsigned>(k)));
    return xs;
}

/// x_i = (1-q) q^i / (1 - q^{k+1}), a geometric law conditioned on i <= k.
template <typename T>
std::vector<T> bounded_geometric_params(int k, const T& q)
{
    if (q == T(1))
        return uniform_params<T>(k);
    T norm = T(1) - power(q, static_cast<unsigned>(k + 1));
    std::vector<T> xs;
    for (int i = 0; i <= k; ++i)
        xs.push_back((T(1) - q) * power(q, static_cast<unsigned>(i)) / norm);
    return xs;
}

/// Z_h = sum_k a^k h_{h-k}(z_1, z_1+z_2, ..., z_1+...+z_{k+1}).
template <typename T>
T z_adddrop(int h, const AddDropParams<T>& p)
{
    if (h < 0)
        throw DomainError("Z_h requires h >= 0");
    if (p.zs.size() < static_cast<std::size_t>(h))
        throw DomainError("add-drop normalization needs z_1..z_h");
    T total = T(0);
    for (int k = 0; k <= h; ++k) {
        std::vector<T> prefix;
        T acc = T(0);
        for (int j = 1; j <= k + 1; ++j) {
            acc += p.z(static_cast<std::size_t>(j));
            prefix.push_back(acc);
        }
        total += power(p.a, static_cast<unsigned>(k)) * complete_homogeneous<T>(h - k, prefix);
    }
    return total;
}

// ---------------------------------------------------------------------------

template <typename T>
struct IdentityCheck {
    std::string name;
    T lhs;
    T rhs;
    bool holds() const { return ScalarTraits<T>::equal(lhs, rhs); }
};

/// The four classical specializations of Z_{h,k} at a given q (q != 0).
template <typename T>
std::vector<IdentityCheck<T>> z_specializations(int h, int k, const T& q)
{
    if (q == T(0))
        throw DomainError("specializations need q != 0");
    std::vector<IdentityCheck<T>> out;
    std::vector<T> ones(static_cast<std::size_t>(k) + 1, T(1));
    out.push_back({"Z(1,...,1) = S(h+1,k+1)", z_mjmc(h, k, ones), stirling2<T>(h + 1, k + 1)});

    std::vector<T> desc, asc;
    for (int i = 0; i <= k; ++i) {
        desc.push_back(power(q, static_cast<unsigned>(k - i)));
        asc.push_back(power(q, static_cast<unsigned>(i)));
    }
    out.push_back({"Z(q^k,...,1) = S_q(h+1,k+1)", z_mjmc(h, k, desc), q_stirling2(h + 1, k + 1, q)});
    out.push_back({"Z(1,...,q^k) = q^{k(h-k)} S_{1/q}(h+1,k+1)", z_mjmc(h, k, asc),
                   power(q, static_cast<unsigned>(k * std::max(h - k, 0))) * q_stirling2(h + 1, k + 1, T(T(1) / q))});
    out.push_back({"Z(truncated geometric) = [h choose k]_q", z_mjmc(h, k, truncated_geometric_params(k, q)), q_binomial(h, k, q)});
    return out;
}

} // namespace juggling
