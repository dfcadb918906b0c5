#pragma once

#include <string>
#include <vector>

#include "graph.hpp"
#include "potential.hpp"
#include "running_power.hpp"
#include "tqft.hpp"

namespace gpot {

/// pi_0 .. pi_K with pi_k the constant term of W^k.
struct PeriodSequence {
    int order = 0;
    std::vector<Integer> pi;
    std::string fingerprint; // "g<genus>e<parity>" when computed from a graph

    friend bool operator==(const PeriodSequence& a, const PeriodSequence& b) {
        return a.order == b.order && a.pi == b.pi;
    }
    friend bool operator!=(const PeriodSequence& a, const PeriodSequence& b) { return !(a == b); }
};

/// phat_k = pi_k / k!.
struct LaplaceSequence {
    int order = 0;
    std::vector<Rational> phat;
};

/// Constant terms of p^0 .. p^K by a pruned running product. The
/// coefficients of p must be integers.
inline PeriodSequence periods_bruteforce(const RationalPoly& p, int K, unsigned threads = 1) {
    if (K < 0) throw structural_error("negative order");
    const IntegerPoly w = p.convert<Integer>();
    PeriodSequence s;
    s.order = K;
    s.pi.assign(static_cast<std::size_t>(K) + 1, Integer(0));
    const Exponent origin(w.vars().size(), 0);
    running_powers(w, K, std::vector<bool>(w.vars().size(), true), threads, [&](int k, const TermTable& terms) {
        auto it = terms.find(origin);
        if (it != terms.end()) s.pi[static_cast<std::size_t>(k)] = it->second;
    });
    return s;
}

inline LaplaceSequence inverse_laplace(const PeriodSequence& s) {
    LaplaceSequence l;
    l.order = s.order;
    for (int k = 0; k <= s.order; ++k)
        l.phat.push_back(Rational(s.pi[static_cast<std::size_t>(k)], factorial(static_cast<unsigned>(k))));
    return l;
}

/// k! * phat_k, each required to be an integer.
inline PeriodSequence periods_from_laplace(const ScalarSeries& phat) {
    PeriodSequence s;
    s.order = phat.order();
    for (int k = 0; k <= phat.order(); ++k) {
        const Rational v = phat[k] * factorial(static_cast<unsigned>(k));
        if (!is_integral(v))
            throw consistency_error("k! times the t^" + std::to_string(k) + " coefficient is " + v.str() + ", not an integer");
        s.pi.push_back(boost::multiprecision::numerator(v));
    }
    return s;
}

enum class PeriodMethod { brute, tqft };

inline PeriodSequence periods_of_graph(const ColoredGraph& g, int K, PeriodMethod method, unsigned threads = 1) {
    const Validation v = validate(g);
    if (!v.ok()) require_valid(g);
    const int parity = effective_parity(g);
    PeriodSequence s;
    if (method == PeriodMethod::brute) {
        s = periods_bruteforce(graph_potential(g).potential, K, threads);
    } else {
        if (!g.leaves.empty()) throw structural_error("trace formula needs a leafless graph");
        if (v.components != 1) throw structural_error("trace formula needs a connected graph");
        s = periods_from_laplace(trace_formula(v.genus, parity, K, threads));
    }
    s.fingerprint = "g" + std::to_string(v.genus) + "e" + std::to_string(parity);
    return s;
}

} // namespace gpot
