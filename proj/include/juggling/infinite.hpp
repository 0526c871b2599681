#pragma once

// Unbounded-height (UMJMC, l balls on infinitely many sites) and
// infinite-ball (IMJMC) chains on integer partitions: product-form invariant
// measures, truncated masses with certified tail bounds, and exact balance checks.

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "combinat.hpp"
#include "scalar.hpp"
#include "symfun.hpp"

namespace juggling {

/// Insertion law x_0, x_1, ... with a machine-checkable tail.
///   geometric: x_i = (1-q) q^i, y_m = q^m;
///   finite:    x_0..x_k, zero beyond;
///   custom:    x_i = fn(i) with the caller's bound x_i <= C r^i.
template <typename T = Rational>
class TailParams {
public:
    struct Geometric {
        T q;
    };
    struct Finite {
        std::vector<T> xs;
    };
    struct Custom {
        std::function<T(int)> fn;
        T bound_c;
        T bound_r;
    };

    static TailParams geometric(T q)
    {
        if (q < 0 || q >= 1)
            throw DomainError("geometric family needs 0 <= q < 1");
        return TailParams(Geometric{std::move(q)});
    }

    static TailParams finite(std::vector<T> xs)
    {
        if (xs.empty())
            throw DomainError("finite family needs at least x_0");
        for (const auto& x : xs) {
            if (x < 0)
                throw DomainError("insertion probabilities must be nonnegative");
        }
        return TailParams(Finite{std::move(xs)});
    }

    static TailParams custom(std::function<T(int)> fn, T bound_c, T bound_r)
    {
        return TailParams(Custom{std::move(fn), std::move(bound_c), std::move(bound_r)});
    }

    bool is_geometric() const { return std::holds_alternative<Geometric>(family_); }
    bool is_finite() const { return std::holds_alternative<Finite>(family_); }
    const T& q() const { return std::get<Geometric>(family_).q; }

    /// Largest index with possibly nonzero x_i; nullopt for infinite support.
    std::optional<int> support_max() const
    {
        if (const auto* f = std::get_if<Finite>(&family_))
            return static_cast<int>(f->xs.size()) - 1;
        return std::nullopt;
    }

    T x(int i) const
    {
        if (i < 0)
            return T(0);
        if (const auto* g = std::get_if<Geometric>(&family_))
            return (T(1) - g->q) * power(g->q, static_cast<unsigned>(i));
        if (const auto* f = std::get_if<Finite>(&family_))
            return static_cast<std::size_t>(i) < f->xs.size() ? f->xs[static_cast<std::size_t>(i)] : T(0);
        return std::get<Custom>(family_).fn(i);
    }

    /// y_m = sum_{j >= m} x_j.
    T y(int m) const
    {
        if (m <= 0)
            return head_total();
        if (const auto* g = std::get_if<Geometric>(&family_))
            return power(g->q, static_cast<unsigned>(m));
        if (const auto* f = std::get_if<Finite>(&family_)) {
            T s = T(0);
            for (std::size_t j = static_cast<std::size_t>(m); j < f->xs.size(); ++j)
                s += f->xs[j];
            return s;
        }
        T s = T(1);
        for (int j = 0; j < m; ++j)
            s -= x(j);
        return s;
    }

    /// Upper bound on sum_{m > K} y_m; throws when the family has no certificate.
    T tail_sum_bound(int K) const
    {
        if (const auto* g = std::get_if<Geometric>(&family_))
            return power(g->q, static_cast<unsigned>(K + 1)) / (T(1) - g->q);
        if (const auto* f = std::get_if<Finite>(&family_)) {
            T s = T(0);
            for (int m = K + 1; m < static_cast<int>(f->xs.size()); ++m)
                s += y(m);
            return s;
        }
        const auto& c = std::get<Custom>(family_);
        if (c.bound_r >= 1 || c.bound_r < 0 || c.bound_c < 0)
            throw DomainError("finiteness not certified: custom family needs x_i <= C r^i with r < 1");
        const T one_minus = T(1) - c.bound_r;
        return c.bound_c * power(c.bound_r, static_cast<unsigned>(K + 1)) / (one_minus * one_minus);
    }

    /// Upper bound on y_m for m >= K+1.
    T tail_value_bound(int K) const
    {
        if (is_geometric() || is_finite())
            return y(K + 1);
        const auto& c = std::get<Custom>(family_);
        tail_sum_bound(K);
        return c.bound_c * power(c.bound_r, static_cast<unsigned>(K + 1)) / (T(1) - c.bound_r);
    }

    /// x_0..x_{k-1} followed by the lumped tail y_k.
    std::vector<T> truncated(int k) const
    {
        std::vector<T> out;
        for (int i = 0; i < k; ++i)
            out.push_back(x(i));
        out.push_back(y(k));
        return out;
    }

private:
    explicit TailParams(std::variant<Geometric, Finite, Custom> f) : family_(std::move(f)) {}

    T head_total() const
    {
        if (const auto* f = std::get_if<Finite>(&family_)) {
            T s = T(0);
            for (const auto& x : f->xs)
                s += x;
            return s;
        }
        return T(1);
    }

    std::variant<Geometric, Finite, Custom> family_;
};

/// Bi-infinite word with a Ball at site i iff i = lambda_r - r for some r >= 1.
using MayaState = IntegerPartition;

/// The sites from..to-1 of the Maya diagram, as 'b'/'o'.
inline std::string maya_window(const MayaState& lambda, int from, int to)
{
    std::set<int> balls;
    const int n = static_cast<int>(lambda.length());
    for (int r = 1; r <= n + std::max(0, -from) + 1; ++r)
        balls.insert(lambda.part(static_cast<std::size_t>(r)) - r);
    std::string out;
    for (int i = from; i < to; ++i)
        out += balls.count(i) ? 'b' : 'o';
    return out;
}

// ---------------------------------------------------------------------------
// UMJMC

/// w(lambda) = product of y_{lambda_i} (y_0 = 1 contributes nothing).
template <typename T>
T umjmc_weight(const IntegerPartition& lambda, const TailParams<T>& params)
{
    T w = T(1);
    for (int part : lambda.parts())
        w *= params.y(part);
    return w;
}

template <typename T>
struct MassReport {
    T value = T(0);     ///< truncated sum or product
    int cutoff = 0;     ///< last index kept
    double bound = 0.0; ///< certified upper bound on (true mass - value)
    bool converged = false;
};

/// Z^(l) = h_l(y_0, y_1, ...) truncated to y_0..y_K with K grown until
/// T_K (y_0 + .. + y_K + T_K)^{l-1} < tol, where T_K bounds sum_{m>K} y_m.
template <typename T>
MassReport<T> umjmc_mass(int l, const TailParams<T>& params, double tol, int max_cutoff = 100000)
{
    if (l < 0)
        throw DomainError("l must be nonnegative");
    MassReport<T> r;
    if (l == 0) {
        r.value = T(1);
        r.converged = true;
        return r;
    }
    std::vector<T> ys;
    T head = T(0);
    for (int K = 0; K <= max_cutoff; ++K) {
        ys.push_back(params.y(K));
        head += ys.back();
        const T tail = params.tail_sum_bound(K);
        const double bound = ScalarTraits<T>::to_double(tail) * std::pow(ScalarTraits<T>::to_double(head + tail), l - 1);
        if (bound < tol || tail == 0) {
            r.value = complete_homogeneous(l, ys);
            r.cutoff = K;
            r.bound = bound;
            r.converged = true;
            return r;
        }
    }
    throw DomainError("umjmc_mass did not reach the tolerance within the cutoff limit");
}

/// Exact h_l(1, q, q^2, ...) from Newton's identities with p_m = 1/(1-q^m).
template <typename T>
T geometric_umjmc_mass(int l, const T& q)
{
    if (q < 0 || q >= 1)
        throw DomainError("geometric family needs 0 <= q < 1");
    std::vector<T> h{T(1)};
    for (int n = 1; n <= l; ++n) {
        T s = T(0);
        for (int m = 1; m <= n; ++m)
            s += h[static_cast<std::size_t>(n - m)] / (T(1) - power(q, static_cast<unsigned>(m)));
        h.push_back(s / T(n));
    }
    return h[static_cast<std::size_t>(l)];
}

// ---------------------------------------------------------------------------
// IMJMC

/// lambda^(i): decrement the parts before the first j with lambda_j <= i, insert i there.
inline IntegerPartition imjmc_step(const IntegerPartition& lambda, int i)
{
    if (i < 0)
        throw DomainError("insertion index must be nonnegative");
    std::vector<int> out;
    std::size_t j = 0;
    const auto& p = lambda.parts();
    while (j < p.size() && p[j] > i)
        out.push_back(p[j++] - 1);
    out.push_back(i);
    out.insert(out.end(), p.begin() + static_cast<std::ptrdiff_t>(j), p.end());
    return IntegerPartition(out);
}

/// Product of y over the nonzero parts; same formula as the UMJMC weight.
template <typename T>
T imjmc_weight(const IntegerPartition& lambda, const TailParams<T>& params)
{
    return umjmc_weight(lambda, params);
}

/// Z = prod_{m >= 1} 1/(1 - y_m), truncated at M with
/// Z - Z_M <= Z_M (exp(T_M / (1 - y_{M+1})) - 1).
template <typename T>
MassReport<T> imjmc_mass(const TailParams<T>& params, double tol, int max_cutoff = 100000)
{
    if (!(params.y(1) < 1))
        throw DomainError("IMJMC mass needs x_0 > 0");
    MassReport<T> r;
    r.value = T(1);
    for (int M = 0; M <= max_cutoff; ++M) {
        if (M >= 1)
            r.value /= T(1) - params.y(M);
        const T tail = params.tail_sum_bound(M);
        const T next = params.tail_value_bound(M);
        if (!(next < 1))
            continue;
        const double bound = ScalarTraits<T>::to_double(r.value) *
                             std::expm1(ScalarTraits<T>::to_double(tail) / (1.0 - ScalarTraits<T>::to_double(next)));
        if (bound < tol || tail == 0) {
            r.cutoff = M;
            r.bound = bound;
            r.converged = true;
            return r;
        }
    }
    throw DomainError("imjmc_mass did not reach the tolerance within the cutoff limit");
}

/// The same mass truncated at a fixed cutoff M, with its bound.
template <typename T>
MassReport<T> imjmc_mass_at(const TailParams<T>& params, int M)
{
    if (!(params.y(1) < 1))
        throw DomainError("IMJMC mass needs x_0 > 0");
    MassReport<T> r;
    r.value = T(1);
    for (int m = 1; m <= M; ++m)
        r.value /= T(1) - params.y(m);
    r.cutoff = M;
    const double next = ScalarTraits<T>::to_double(params.tail_value_bound(M));
    r.bound = next < 1.0 ? ScalarTraits<T>::to_double(r.value) *
                               std::expm1(ScalarTraits<T>::to_double(params.tail_sum_bound(M)) / (1.0 - next))
                         : std::numeric_limits<double>::infinity();
    r.converged = std::isfinite(r.bound);
    return r;
}

// ---------------------------------------------------------------------------
// Balance checks

namespace detail {

template <typename T>
bool balance_equal(const T& a, const T& b)
{
    if constexpr (ScalarTraits<T>::exact)
        return a == b;
    else
        return std::abs(a - b) <= 1e-10 * std::max({1.0, std::abs(a), std::abs(b)});
}

/// One UMJMC step on l zero-padded parts, insertion indices 0..max_index.
inline std::vector<std::pair<IntegerPartition, int>> umjmc_successors(const IntegerPartition& mu, int l, int max_index)
{
    const auto L = static_cast<std::size_t>(l);
    const auto p = mu.padded(L);
    std::vector<std::pair<IntegerPartition, int>> out;
    if (l == 0) {
        out.emplace_back(mu, -1);
        return out;
    }
    if (p[L - 1] != 0) {
        std::vector<int> down(p);
        for (auto& part : down)
            --part;
        out.emplace_back(IntegerPartition(down), -1);
        return out;
    }
    for (int i = 0; i <= max_index; ++i) {
        std::size_t j = 0;
        while (p[j] > i)
            ++j;
        std::vector<int> nu;
        for (std::size_t r = 0; r < j; ++r)
            nu.push_back(p[r] - 1);
        nu.push_back(i);
        for (std::size_t r = j; r + 1 < L; ++r)
            nu.push_back(p[r]);
        out.emplace_back(IntegerPartition(nu), i);
    }
    return out;
}

} // namespace detail

/// Checks w(lambda) = sum_mu w(mu) P_{mu,lambda} for every lambda in Par_{cap,l}.
/// Every predecessor of such lambda has parts <= cap+1, so the inflow is
/// accumulated by expanding all of Par_{cap+1,l} forward.
template <typename T>
bool verify_umjmc_invariance(int l, const TailParams<T>& params, int cap)
{
    if (l < 0 || cap < 0)
        throw DomainError("verify_umjmc_invariance needs l, cap >= 0");
    std::map<IntegerPartition, T> inflow;
    for (const auto& lambda : enumerate_box_partitions(cap, l))
        inflow.emplace(lambda, T(0));
    for (const auto& mu : enumerate_box_partitions(cap + 1, l)) {
        const T w = umjmc_weight(mu, params);
        for (const auto& [nu, i] : detail::umjmc_successors(mu, l, cap)) {
            auto it = inflow.find(nu);
            if (it != inflow.end())
                it->second += w * (i < 0 ? T(1) : params.x(i));
        }
    }
    for (const auto& [lambda, in] : inflow) {
        if (!detail::balance_equal(in, umjmc_weight(lambda, params)))
            return false;
    }
    return true;
}

/// Checks the IMJMC balance equation for every partition of size <= size_cap.
/// Predecessors (mu, i) of lambda: for j = 1..len(lambda),
/// mu = (lambda_1+1, .., lambda_{j-1}+1, lambda_{j+1}, ..) with i = lambda_j, and the
/// infinite family (lambda_1+1, .., lambda_len+1, 1^t), t >= 0, with i = 0, summed
/// in closed form as w(lambda+1) x_0 / (1 - y_1). The predecessor list is
/// cross-checked against imjmc_step by forward enumeration.
template <typename T>
bool verify_imjmc_invariance(const TailParams<T>& params, int size_cap)
{
    if (size_cap < 0)
        throw DomainError("size_cap must be nonnegative");
    const T y1 = params.y(1);
    if (!(y1 < 1))
        throw DomainError("IMJMC invariance needs x_0 > 0");
    const auto targets = enumerate_partitions_up_to(size_cap);
    std::set<IntegerPartition> target_set(targets.begin(), targets.end());

    std::map<IntegerPartition, std::set<std::pair<IntegerPartition, int>>> structural;
    for (const auto& lambda : targets) {
        const auto& p = lambda.parts();
        auto& preds = structural[lambda];
        for (std::size_t j = 0; j < p.size(); ++j) {
            std::vector<int> mu;
            for (std::size_t r = 0; r < j; ++r)
                mu.push_back(p[r] + 1);
            mu.insert(mu.end(), p.begin() + static_cast<std::ptrdiff_t>(j) + 1, p.end());
            preds.emplace(IntegerPartition(mu), p[j]);
        }
    }

    auto is_tail_member = [](const IntegerPartition& lambda, const IntegerPartition& mu) {
        const auto& p = lambda.parts();
        const auto& m = mu.parts();
        if (m.size() < p.size())
            return false;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (m[r] != (r < p.size() ? p[r] + 1 : 1))
                return false;
        }
        return true;
    };

    // Every structural predecessor maps to lambda.
    for (const auto& [lambda, preds] : structural) {
        for (const auto& [mu, i] : preds) {
            if (imjmc_step(mu, i) != lambda)
                return false;
        }
    }
    // Every (mu, i) hitting a target is structural or in the tail family.
    const int mu_cap = 2 * size_cap + 2;
    for (const auto& mu : enumerate_partitions_up_to(mu_cap)) {
        for (int i = 0; i <= size_cap; ++i) {
            const auto lambda = imjmc_step(mu, i);
            if (!target_set.count(lambda))
                continue;
            if (structural[lambda].count({mu, i}))
                continue;
            if (i == 0 && is_tail_member(lambda, mu))
                continue;
            return false;
        }
    }

    const T x0 = params.x(0);
    for (const auto& lambda : targets) {
        T in = T(0);
        for (const auto& [mu, i] : structural[lambda])
            in += imjmc_weight(mu, params) * params.x(i);
        std::vector<int> lifted;
        for (int part : lambda.parts())
            lifted.push_back(part + 1);
        in += imjmc_weight(IntegerPartition(lifted), params) * x0 / (T(1) - y1);
        if (!detail::balance_equal(in, imjmc_weight(lambda, params)))
            return false;
    }
    return true;
}

/// Number of parts; an infinite l is encoded as nullopt.
using PartCount = std::optional<int>;

/// Law after t steps from the point mass at nu, with l parts (UMJMC) or
/// infinitely many (IMJMC), under finite-support insertion probabilities.
template <typename T>
std::map<IntegerPartition, T> t_step_law(int t, const IntegerPartition& nu, PartCount l, const std::vector<T>& xs)
{
    if (xs.empty())
        throw DomainError("insertion probabilities must be nonempty");
    if (l && static_cast<int>(nu.length()) > *l)
        throw DomainError("start partition has more parts than l");
    const int k = static_cast<int>(xs.size()) - 1;
    std::map<IntegerPartition, T> law{{nu, T(1)}};
    for (int s = 0; s < t; ++s) {
        std::map<IntegerPartition, T> next;
        for (const auto& [lambda, p] : law) {
            if (l) {
                for (const auto& [mu, i] : detail::umjmc_successors(lambda, *l, k))
                    next[mu] += p * (i < 0 ? T(1) : xs[static_cast<std::size_t>(i)]);
            } else {
                for (int i = 0; i <= k; ++i)
                    next[imjmc_step(lambda, i)] += p * xs[static_cast<std::size_t>(i)];
            }
        }
        std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
        law = std::move(next);
    }
    return law;
}

/// The t-step laws from nu agree for every supplied l (nullopt = infinity).
/// Each finite l must satisfy l >= parts(nu) + t.
template <typename T>
bool verify_l_to_infinity(int t, const IntegerPartition& nu, const std::vector<PartCount>& l_values, const std::vector<T>& xs)
{
    if (t < 0)
        throw DomainError("t must be nonnegative");
    const int needed = static_cast<int>(nu.length()) + t;
    for (const auto& l : l_values) {
        if (l && *l < needed)
            throw DomainError("l = " + std::to_string(*l) + " is below parts(nu) + t = " + std::to_string(needed));
    }
    std::optional<std::map<IntegerPartition, T>> reference;
    for (const auto& l : l_values) {
        auto law = t_step_law(t, nu, l, xs);
        if (!reference)
            reference = std::move(law);
        else if (law != *reference)
            return false;
    }
    return true;
}

} // namespace juggling
