#pragma once

// JSON and CSV forms of kernels, distributions and parameter families.
// Exact values are "num/den" strings; float renderings sit alongside.
//
//   kernel:       {"states": [..], "rows": [[[j, "p"], ..], ..]}
//   distribution: {"states": [..], "exact": ["p", ..], "float": [x, ..], "normalized": bool}
//   tail params:  {"family": "geometric", "q": "1/2"} | {"family": "finite", "xs": ["1/2", ..]}

#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "infinite.hpp"
#include "kernel.hpp"
#include "scalar.hpp"
#include "sim.hpp"

namespace juggling {

using Json = nlohmann::json;

inline Json kernel_to_json(const SparseKernel<Rational>& k)
{
    Json rows = Json::array();
    for (const auto& row : k.rows()) {
        Json r = Json::array();
        for (const auto& e : row)
            r.push_back(Json::array({e.col, to_string(e.p)}));
        rows.push_back(std::move(r));
    }
    return Json{{"states", k.labels()}, {"rows", std::move(rows)}};
}

inline SparseKernel<Rational> kernel_from_json(const Json& j)
{
    auto labels = j.at("states").get<std::vector<std::string>>();
    std::vector<SparseKernel<Rational>::Row> rows;
    for (const auto& r : j.at("rows")) {
        SparseKernel<Rational>::Row row;
        for (const auto& e : r) {
            const auto col = e.at(0).get<std::size_t>();
            if (col >= labels.size())
                throw DomainError("kernel column index out of range");
            row.push_back({col, parse_rational(e.at(1).get<std::string>())});
        }
        rows.push_back(std::move(row));
    }
    if (rows.size() != labels.size())
        throw DomainError("kernel row count does not match state count");
    return SparseKernel<Rational>(std::move(labels), std::move(rows));
}

inline Json distribution_to_json(const Distribution<Rational>& d)
{
    Json exact = Json::array();
    Json floats = Json::array();
    for (const auto& w : d.weights) {
        exact.push_back(to_string(w));
        floats.push_back(w.get_d());
    }
    return Json{{"states", d.labels}, {"exact", std::move(exact)}, {"float", std::move(floats)}, {"normalized", d.normalized}};
}

inline Distribution<Rational> distribution_from_json(const Json& j)
{
    Distribution<Rational> d;
    d.labels = j.at("states").get<std::vector<std::string>>();
    for (const auto& s : j.at("exact"))
        d.weights.push_back(parse_rational(s.get<std::string>()));
    d.normalized = j.value("normalized", false);
    if (d.labels.size() != d.weights.size())
        throw DomainError("distribution JSON has mismatched lengths");
    return d;
}

namespace detail {

/// Quotes a CSV field when it contains a separator.
inline std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace detail

inline std::string distribution_to_csv(const Distribution<Rational>& d)
{
    std::ostringstream out;
    out << "state,exact,float\n";
    for (std::size_t i = 0; i < d.size(); ++i)
        out << detail::csv_field(d.labels[i]) << ',' << to_string(d.weights[i]) << ',' << to_string(d.weights[i].get_d()) << '\n';
    return out.str();
}

inline Json empirical_to_json(const EmpiricalDistribution& e)
{
    return Json{{"states", e.labels}, {"counts", e.counts}, {"total", e.total}};
}

inline std::string empirical_to_csv(const EmpiricalDistribution& e)
{
    std::ostringstream out;
    out << "state,count,frequency\n";
    const auto f = e.frequencies();
    for (std::size_t i = 0; i < e.labels.size(); ++i)
        out << detail::csv_field(e.labels[i]) << ',' << e.counts[i] << ',' << to_string(f[i]) << '\n';
    return out.str();
}

inline TailParams<Rational> tail_params_from_json(const Json& j)
{
    const auto family = j.at("family").get<std::string>();
    if (family == "geometric")
        return TailParams<Rational>::geometric(parse_rational(j.at("q").get<std::string>()));
    if (family == "finite") {
        std::vector<Rational> xs;
        for (const auto& s : j.at("xs"))
            xs.push_back(parse_rational(s.get<std::string>()));
        return TailParams<Rational>::finite(std::move(xs));
    }
    throw DomainError("unknown parameter family '" + family + "'");
}

} // namespace juggling
