#pragma once

// Exact linear algebra used as an independent oracle: stationary vectors by
// sparse Gaussian elimination, communicating classes, dense matrix powers.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "kernel.hpp"
#include "scalar.hpp"

namespace juggling {

template <typename T = Rational>
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    static RationalMatrix identity(std::size_t n)
    {
        RationalMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = T(1);
        return m;
    }

    static RationalMatrix from_kernel(const SparseKernel<T>& k)
    {
        RationalMatrix m(k.size(), k.size());
        for (std::size_t i = 0; i < k.size(); ++i) {
            for (const auto& e : k.row(i))
                m(i, e.col) = e.p;
        }
        return m;
    }

    /// The 0/1 matrix of a lumping map.
    static RationalMatrix from_map(const LumpingMap& map)
    {
        RationalMatrix m(map.source.size(), map.target.size());
        for (std::size_t i = 0; i < map.image.size(); ++i)
            m(i, map.image[i]) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<T> row(std::size_t i) const
    {
        return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                              data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }

    bool operator==(const RationalMatrix& other) const
    {
        if (rows_ != other.rows_ || cols_ != other.cols_)
            return false;
        for (std::size_t i = 0; i < data_.size(); ++i) {
            if (!ScalarTraits<T>::equal(data_[i], other.data_[i]))
                return false;
        }
        return true;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

template <typename T>
RationalMatrix<T> matmul(const RationalMatrix<T>& a, const RationalMatrix<T>& b)
{
    if (a.cols() != b.rows())
        throw DomainError("matmul dimension mismatch");
    RationalMatrix<T> out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t l = 0; l < a.cols(); ++l) {
            const T& x = a(i, l);
            if (x == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                if (b(l, j) != 0)
                    out(i, j) += x * b(l, j);
            }
        }
    }
    return out;
}

/// P^n, each row computed as e_i P^n by sparse propagation.
template <typename T>
RationalMatrix<T> matpow(const SparseKernel<T>& k, int n)
{
    if (n < 0)
        throw DomainError("matpow exponent must be nonnegative");
    const auto size = k.size();
    RationalMatrix<T> out(size, size);
    for (std::size_t i = 0; i < size; ++i) {
        std::map<std::size_t, T> cur{{i, T(1)}};
        for (int step = 0; step < n; ++step) {
            std::map<std::size_t, T> next;
            for (const auto& [j, w] : cur) {
                for (const auto& e : k.row(j))
                    next[e.col] += w * e.p;
            }
            cur = std::move(next);
        }
        for (const auto& [j, w] : cur)
            out(i, j) = w;
    }
    return out;
}

template <typename T>
bool rows_all_equal(const RationalMatrix<T>& m)
{
    for (std::size_t i = 1; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (!ScalarTraits<T>::equal(m(i, j), m(0, j)))
                return false;
        }
    }
    return true;
}

/// Every row of m equals v.
template <typename T>
bool rows_all_equal_to(const RationalMatrix<T>& m, const std::vector<T>& v)
{
    if (v.size() != m.cols())
        return false;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (!ScalarTraits<T>::equal(m(i, j), v[j]))
                return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Communicating classes

struct CommunicatingClass {
    std::vector<std::size_t> states; // ascending
    bool closed = false;
};

/// Strongly connected components of the positive-probability digraph
/// (iterative Tarjan), ordered by smallest member.
template <typename T>
std::vector<CommunicatingClass> communicating_classes(const SparseKernel<T>& k)
{
    const std::size_t n = k.size();
    constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, unvisited), low(n, 0), comp(n, unvisited);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> components;
    std::size_t counter = 0;

    struct Frame {
        std::size_t v;
        std::size_t edge;
    };
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != unvisited)
            continue;
        std::vector<Frame> call{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            auto& f = call.back();
            const auto& row = k.row(f.v);
            if (f.edge < row.size()) {
                const auto w = row[f.edge++].col;
                if (index[w] == unvisited) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            const auto v = f.v;
            if (low[v] == index[v]) {
                std::vector<std::size_t> members;
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = components.size();
                    members.push_back(w);
                } while (w != v);
                components.push_back(std::move(members));
            }
            call.pop_back();
            if (!call.empty())
                low[call.back().v] = std::min(low[call.back().v], low[v]);
        }
    }

    std::vector<CommunicatingClass> out;
    for (std::size_t c = 0; c < components.size(); ++c) {
        CommunicatingClass cls;
        cls.states = components[c];
        std::sort(cls.states.begin(), cls.states.end());
        cls.closed = true;
        for (auto v : cls.states) {
            for (const auto& e : k.row(v)) {
                if (comp[e.col] != c)
                    cls.closed = false;
            }
        }
        out.push_back(std::move(cls));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.states.front() < b.states.front(); });
    return out;
}

template <typename T>
std::vector<CommunicatingClass> closed_classes(const SparseKernel<T>& k)
{
    auto all = communicating_classes(k);
    std::erase_if(all, [](const auto& c) { return !c.closed; });
    return all;
}

/// A state of the class with a self-loop, which makes the class aperiodic.
template <typename T>
std::optional<std::size_t> self_loop_in(const SparseKernel<T>& k, const CommunicatingClass& cls)
{
    for (auto v : cls.states) {
        if (k.entry(v, v) != 0)
            return v;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Stationary solver

struct NonUniqueStationary {
    std::size_t nullity = 0;
    std::vector<CommunicatingClass> closed;
};

template <typename T>
using StationaryResult = std::variant<Distribution<T>, NonUniqueStationary>;

namespace detail {

template <typename T>
std::size_t pivot_cost(const T& v)
{
    if constexpr (std::is_same_v<T, Rational>)
        return bit_size(v);
    else
        return 0;
}

/// Sparse Gaussian elimination on P^T - I. Pivots: fewest nonzeros in the row,
/// then smallest bit size. Returns the solution for nullity 1, else the nullity.
template <typename T>
std::variant<std::vector<T>, std::size_t> eliminate_stationary(const SparseKernel<T>& k)
{
    const std::size_t n = k.size();
    std::vector<std::map<std::size_t, T>> rows(n); // rows[j] = row j of P^T - I
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& e : k.row(i))
            rows[e.col][i] += e.p;
    }
    for (std::size_t j = 0; j < n; ++j) {
        rows[j][j] -= T(1);
        if (rows[j][j] == 0)
            rows[j].erase(j);
    }
    std::vector<std::set<std::size_t>> col_rows(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (const auto& [c, v] : rows[r])
            col_rows[c].insert(r);
    }

    std::vector<bool> used(n, false);
    std::vector<std::pair<std::size_t, std::size_t>> pivots; // (column, row) in processing order
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t best = n;
        std::pair<std::size_t, std::size_t> best_cost{};
        for (auto r : col_rows[c]) {
            if (used[r])
                continue;
            std::pair<std::size_t, std::size_t> cost{rows[r].size(), pivot_cost(rows[r].at(c))};
            if (best == n || cost < best_cost) {
                best = r;
                best_cost = cost;
            }
        }
        if (best == n) {
            free_cols.push_back(c);
            continue;
        }
        used[best] = true;
        pivots.emplace_back(c, best);
        const auto pivot_row = rows[best];
        const T pivot = pivot_row.at(c);
        const std::vector<std::size_t> targets(col_rows[c].begin(), col_rows[c].end());
        for (auto r : targets) {
            if (used[r])
                continue;
            const T factor = rows[r].at(c) / pivot;
            for (const auto& [cc, v] : pivot_row) {
                auto [it, inserted] = rows[r].emplace(cc, T(0));
                it->second -= factor * v;
                if (it->second == 0) {
                    rows[r].erase(it);
                    col_rows[cc].erase(r);
                } else if (inserted) {
                    col_rows[cc].insert(r);
                }
            }
        }
    }
    if (free_cols.size() != 1)
        return free_cols.size();

    std::vector<T> pi(n, T(0));
    pi[free_cols[0]] = T(1);
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
        const auto [c, r] = *it;
        T acc = T(0);
        for (const auto& [cc, v] : rows[r]) {
            if (cc != c)
                acc += v * pi[cc];
        }
        pi[c] = -acc / rows[r].at(c);
    }
    return pi;
}

/// Exact propagation from a point mass; succeeds when a fixed point appears.
template <typename T>
std::optional<std::vector<T>> propagate_to_fixed_point(const SparseKernel<T>& k, std::size_t start, int max_steps)
{
    std::vector<T> eta(k.size(), T(0));
    eta[start] = T(1);
    for (int step = 0; step <= max_steps; ++step) {
        auto next = k.left_apply(eta);
        if (next == eta)
            return eta;
        eta = std::move(next);
    }
    return std::nullopt;
}

} // namespace detail

/// Kernels above this size first try exact propagation to a fixed point.
inline constexpr std::size_t kPropagationThreshold = 512;

/// Solves pi P = pi, sum pi = 1 exactly, or reports every closed class when
/// the solution space has dimension > 1.
template <typename T>
StationaryResult<T> solve_stationary(const SparseKernel<T>& k)
{
    k.require_stochastic();
    Distribution<T> out{k.labels(), {}, true};
    if (k.size() > kPropagationThreshold) {
        auto closed = closed_classes(k);
        if (closed.size() > 1)
            return NonUniqueStationary{closed.size(), std::move(closed)};
        if (auto pi = detail::propagate_to_fixed_point(k, closed.front().states.front(), 64)) {
            out.weights = std::move(*pi);
            return out;
        }
    }
    auto solved = detail::eliminate_stationary(k);
    if (auto* nullity = std::get_if<std::size_t>(&solved))
        return NonUniqueStationary{*nullity, closed_classes(k)};
    auto pi = std::get<std::vector<T>>(std::move(solved));
    T total = T(0);
    for (const auto& v : pi)
        total += v;
    for (auto& v : pi)
        v /= total;
    out.weights = std::move(pi);
    return out;
}

} // namespace juggling
