#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace gpot {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Thrown when operands disagree structurally (variable lists, truncation
/// orders, unknown ids). Never used for mathematical verification failures.
class structural_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when two independent computations that must agree do not, or a
/// quantity that must be integral is not.
class consistency_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Integer factorial(unsigned n) {
    Integer r = 1;
    for (unsigned k = 2; k <= n; ++k) r *= k;
    return r;
}

inline Integer binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    Integer r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

/// Row of Pascal's triangle, cached up to the largest n requested.
inline const std::vector<Integer>& binomial_row(unsigned n) {
    thread_local std::vector<std::vector<Integer>> rows{{Integer(1)}};
    while (rows.size() <= n) {
        const auto& prev = rows.back();
        std::vector<Integer> next(prev.size() + 1);
        next.front() = 1;
        next.back() = 1;
        for (std::size_t i = 1; i + 1 < next.size(); ++i) next[i] = prev[i - 1] + prev[i];
        rows.push_back(std::move(next));
    }
    return rows[n];
}

inline bool is_integral(const Rational& q) {
    return boost::multiprecision::denominator(q) == 1;
}

inline Integer to_integer(const Rational& q) {
    if (!is_integral(q)) throw consistency_error("value " + q.str() + " is not an integer");
    return boost::multiprecision::numerator(q);
}

inline bool is_zero(const Integer& v) { return v.is_zero(); }
inline bool is_zero(const Rational& v) { return v.is_zero(); }

} // namespace gpot
