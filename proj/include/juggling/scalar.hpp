#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include <gmpxx.h>

namespace juggling {

/// Exact arbitrary-precision rational; the default scalar everywhere.
using Rational = mpq_class;

/// Precondition or parameter violation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Arithmetic policy for the two supported scalar kinds.
template <typename T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static bool equal(const Rational& a, const Rational& b) { return a == b; }
    static double to_double(const Rational& v) { return v.get_d(); }
};

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static constexpr double tolerance = 1e-12;
    static bool equal(double a, double b)
    {
        return std::abs(a - b) <= tolerance * std::max({1.0, std::abs(a), std::abs(b)});
    }
    static double to_double(double v) { return v; }
};

template <typename T>
concept Scalar = requires { ScalarTraits<T>::exact; };

/// Parses "p/q", "p" or "-p/q" into a canonical rational.
inline Rational parse_rational(std::string_view text)
{
    std::string s(text);
    if (s.empty())
        throw DomainError("empty rational literal");
    for (char c : s) {
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+'))
            throw DomainError("malformed rational literal '" + s + "'");
    }
    if (s.front() == '+')
        s.erase(s.begin());
    Rational r;
    if (r.set_str(s, 10) != 0)
        throw DomainError("malformed rational literal '" + std::string(text) + "'");
    if (r.get_den() == 0)
        throw DomainError("zero denominator in '" + std::string(text) + "'");
    r.canonicalize();
    return r;
}

/// Canonical "num/den" text; integers print without a denominator.
inline std::string to_string(const Rational& r)
{
    return r.get_str(10);
}

inline std::string to_string(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::vector<Rational> parse_rational_list(std::string_view csv)
{
    std::vector<Rational> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        auto end = csv.find(',', start);
        if (end == std::string_view::npos)
            end = csv.size();
        out.push_back(parse_rational(csv.substr(start, end - start)));
        start = end + 1;
    }
    return out;
}

template <typename T>
T scalar_from_rational(const Rational& r)
{
    if constexpr (std::is_same_v<T, Rational>)
        return r;
    else
        return r.get_d();
}

template <typename T>
T power(const T& base, unsigned exponent)
{
    T result = T(1);
    for (unsigned i = 0; i < exponent; ++i)
        result *= base;
    return result;
}

/// Bit length of numerator plus denominator; pivot-size heuristic.
inline std::size_t bit_size(const Rational& r)
{
    return mpz_sizeinbase(r.get_num_mpz_t(), 2) + mpz_sizeinbase(r.get_den_mpz_t(), 2);
}

} // namespace juggling
