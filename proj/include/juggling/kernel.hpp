#pragma once

// Sparse row-stochastic kernels, distributions over labelled state spaces,
// and lumping maps between state spaces.

#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "scalar.hpp"

namespace juggling {

template <typename T = Rational>
struct KernelEntry {
    std::size_t col = 0;
    T p = T(0);
    bool operator==(const KernelEntry&) const = default;
};

/// Rows are sorted by column with parallel edges merged and zeros dropped.
template <typename T = Rational>
class SparseKernel {
public:
    using Row = std::vector<KernelEntry<T>>;

    SparseKernel() = default;

    SparseKernel(std::vector<std::string> labels, std::vector<Row> rows) : labels_(std::move(labels)), rows_(std::move(rows))
    {
        if (labels_.size() != rows_.size())
            throw DomainError("kernel label count does not match row count");
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            if (!index_.emplace(labels_[i], i).second)
                throw DomainError("duplicate state label '" + labels_[i] + "'");
        }
        for (auto& row : rows_) {
            for (const auto& e : row) {
                if (e.col >= rows_.size())
                    throw DomainError("kernel column index out of range");
            }
        }
    }

    std::size_t size() const { return rows_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    const std::vector<Row>& rows() const { return rows_; }
    const Row& row(std::size_t i) const { return rows_.at(i); }

    std::size_t index_of(const std::string& label) const
    {
        auto it = index_.find(label);
        if (it == index_.end())
            throw DomainError("unknown state '" + label + "'");
        return it->second;
    }

    bool contains(const std::string& label) const { return index_.count(label) != 0; }

    T entry(std::size_t i, std::size_t j) const
    {
        for (const auto& e : rows_.at(i)) {
            if (e.col == j)
                return e.p;
        }
        return T(0);
    }

    T entry(const std::string& from, const std::string& to) const { return entry(index_of(from), index_of(to)); }

    std::size_t nonzeros() const
    {
        std::size_t n = 0;
        for (const auto& row : rows_)
            n += row.size();
        return n;
    }

    /// Index of the first row that is negative or does not sum to 1, or size().
    std::size_t first_non_stochastic_row() const
    {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            T sum = T(0);
            for (const auto& e : rows_[i]) {
                if (e.p < 0)
                    return i;
                sum += e.p;
            }
            if (!ScalarTraits<T>::equal(sum, T(1)))
                return i;
        }
        return rows_.size();
    }

    bool stochastic() const { return first_non_stochastic_row() == rows_.size(); }

    void require_stochastic() const
    {
        auto bad = first_non_stochastic_row();
        if (bad != rows_.size())
            throw DomainError("kernel row '" + labels_[bad] + "' is not a probability vector");
    }

    /// eta P.
    std::vector<T> left_apply(const std::vector<T>& eta) const
    {
        if (eta.size() != rows_.size())
            throw DomainError("vector length does not match kernel size");
        std::vector<T> out(rows_.size(), T(0));
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (eta[i] == 0)
                continue;
            for (const auto& e : rows_[i])
                out[e.col] += eta[i] * e.p;
        }
        return out;
    }

    bool operator==(const SparseKernel& other) const { return labels_ == other.labels_ && rows_ == other.rows_; }

private:
    std::vector<std::string> labels_;
    std::vector<Row> rows_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Accumulates one row at a time; parallel edges are summed.
template <typename T = Rational>
class KernelBuilder {
public:
    explicit KernelBuilder(std::vector<std::string> labels) : labels_(std::move(labels)), pending_(labels_.size()) {}

    void add(std::size_t from, std::size_t to, const T& p)
    {
        if (p == 0)
            return;
        auto [it, inserted] = pending_.at(from).emplace(to, p);
        if (!inserted)
            it->second += p;
    }

    SparseKernel<T> finish() &&
    {
        std::vector<typename SparseKernel<T>::Row> rows(pending_.size());
        for (std::size_t i = 0; i < pending_.size(); ++i) {
            for (auto& [col, p] : pending_[i]) {
                if (p != 0)
                    rows[i].push_back({col, std::move(p)});
            }
        }
        return SparseKernel<T>(std::move(labels_), std::move(rows));
    }

private:
    std::vector<std::string> labels_;
    std::vector<std::map<std::size_t, T>> pending_;
};

template <typename T = Rational>
struct Distribution {
    std::vector<std::string> labels;
    std::vector<T> weights;
    bool normalized = false;

    std::size_t size() const { return weights.size(); }

    T total() const
    {
        T s = T(0);
        for (const auto& w : weights)
            s += w;
        return s;
    }

    const T& at(const std::string& label) const
    {
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] == label)
                return weights[i];
        }
        throw DomainError("unknown state '" + label + "'");
    }

    /// Copy scaled to total mass 1.
    Distribution normalized_copy() const
    {
        T t = total();
        if (t == 0)
            throw DomainError("cannot normalize a zero measure");
        Distribution out = *this;
        for (auto& w : out.weights)
            w /= t;
        out.normalized = true;
        return out;
    }

    bool operator==(const Distribution& other) const
    {
        if (labels != other.labels || weights.size() != other.weights.size())
            return false;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            if (!ScalarTraits<T>::equal(weights[i], other.weights[i]))
                return false;
        }
        return true;
    }
};

/// A total map between two labelled state spaces: the 0/1 matrix with one 1 per row.
struct LumpingMap {
    std::vector<std::string> source;
    std::vector<std::string> target;
    std::vector<std::size_t> image;

    std::size_t operator()(std::size_t i) const { return image.at(i); }

    /// Sizes of the fibers over each target state.
    std::vector<std::size_t> fiber_sizes() const
    {
        std::vector<std::size_t> out(target.size(), 0);
        for (auto j : image)
            ++out.at(j);
        return out;
    }

    bool surjective() const
    {
        for (auto n : fiber_sizes()) {
            if (n == 0)
                return false;
        }
        return true;
    }

    template <typename T>
    Distribution<T> push_forward(const Distribution<T>& d) const
    {
        if (d.labels != source)
            throw DomainError("distribution is not over the map's source space");
        Distribution<T> out{target, std::vector<T>(target.size(), T(0)), d.normalized};
        for (std::size_t i = 0; i < image.size(); ++i)
            out.weights[image[i]] += d.weights[i];
        return out;
    }
};

/// Tabulates f over the source labels, resolving each image in the target list.
template <typename Source, typename F>
LumpingMap make_lumping_map(const std::vector<Source>& sources, std::vector<std::string> source_labels,
                            std::vector<std::string> target_labels, F f)
{
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < target_labels.size(); ++i)
        index.emplace(target_labels[i], i);
    LumpingMap m{std::move(source_labels), std::move(target_labels), {}};
    m.image.reserve(sources.size());
    for (const auto& s : sources) {
        auto label = f(s);
        auto it = index.find(label);
        if (it == index.end())
            throw DomainError("image '" + label + "' is not in the target space");
        m.image.push_back(it->second);
    }
    return m;
}

/// Checks A M = M B entrywise: for every source i and target c,
/// sum over j with M(j) = c of A[i][j] equals B[M(i)][c].
template <typename T>
bool verify_intertwining(const SparseKernel<T>& a, const LumpingMap& m, const SparseKernel<T>& b)
{
    if (a.size() != m.source.size() || b.size() != m.target.size())
        throw DomainError("intertwining dimensions do not match");
    if (a.labels() != m.source || b.labels() != m.target)
        throw DomainError("intertwining state spaces do not match the map");
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::map<std::size_t, T> lhs;
        for (const auto& e : a.row(i))
            lhs[m(e.col)] += e.p;
        std::map<std::size_t, T> rhs;
        for (const auto& e : b.row(m(i)))
            rhs[e.col] += e.p;
        std::erase_if(lhs, [](const auto& kv) { return kv.second == 0; });
        if (lhs.size() != rhs.size())
            return false;
        for (const auto& [c, p] : lhs) {
            auto it = rhs.find(c);
            if (it == rhs.end() || !ScalarTraits<T>::equal(it->second, p))
                return false;
        }
    }
    return true;
}

} // namespace juggling
