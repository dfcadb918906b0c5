#pragma once

#include <algorithm>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "laurent.hpp"

namespace gpot {

using TermTable = std::unordered_map<Exponent, Integer, ExponentHash>;

namespace detail {

inline int masked_norm(const Exponent& e, const std::vector<bool>& mask) {
    int n = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
        if (mask[i]) n += std::abs(e[i]);
    return n;
}

inline void multiply_chunk(const std::vector<std::pair<Exponent, Integer>>& cur, std::size_t lo, std::size_t hi,
                           const std::vector<std::pair<Exponent, Integer>>& w, const std::vector<bool>& mask,
                           int limit, TermTable& out) {
    const std::size_t n = w.empty() ? 0 : w.front().first.size();
    Exponent e(n);
    Integer prod;
    for (std::size_t i = lo; i < hi; ++i) {
        const auto& [ce, cc] = cur[i];
        for (const auto& [we, wc] : w) {
            for (std::size_t k = 0; k < n; ++k) e[k] = ce[k] + we[k];
            if (masked_norm(e, mask) > limit) continue;
            prod = cc * wc;
            auto [it, inserted] = out.try_emplace(e, prod);
            if (!inserted) it->second += prod;
        }
    }
}

} // namespace detail

/// Running product W^0, W^1, ..., W^K with integer coefficients. After
/// step k, terms whose norm over the masked variables exceeds
/// (K - k) * (largest masked norm of a monomial of W) are dropped: they can
/// no longer reach zero in those variables by step K. `visit(k, terms)` sees
/// every step. The product stays exact for everything visible at norm zero.
template <class Visit>
void running_powers(const IntegerPoly& w, int K, const std::vector<bool>& mask, unsigned threads, Visit&& visit) {
    if (K < 0) throw structural_error("negative order");
    if (mask.size() != w.vars().size()) throw structural_error("pruning mask does not match the variable list");
    threads = std::max(1u, threads);

    std::vector<std::pair<Exponent, Integer>> wt(w.terms().begin(), w.terms().end());
    int step = 0;
    for (const auto& t : wt) step = std::max(step, detail::masked_norm(t.first, mask));

    TermTable cur;
    cur.emplace(Exponent(w.vars().size(), 0), Integer(1));
    visit(0, static_cast<const TermTable&>(cur));
    for (int k = 1; k <= K; ++k) {
        const int limit = (K - k) * step;
        std::vector<std::pair<Exponent, Integer>> flat(cur.begin(), cur.end());
        TermTable next;
        if (threads == 1 || flat.size() < 256) {
            detail::multiply_chunk(flat, 0, flat.size(), wt, mask, limit, next);
        } else {
            std::vector<TermTable> parts(threads);
            std::vector<std::thread> pool;
            const std::size_t chunk = (flat.size() + threads - 1) / threads;
            for (unsigned t = 0; t < threads; ++t) {
                const std::size_t lo = std::min(flat.size(), t * chunk);
                const std::size_t hi = std::min(flat.size(), lo + chunk);
                pool.emplace_back([&, lo, hi, t] { detail::multiply_chunk(flat, lo, hi, wt, mask, limit, parts[t]); });
            }
            for (auto& th : pool) th.join();
            next = std::move(parts[0]);
            for (unsigned t = 1; t < threads; ++t)
                for (auto& [e, c] : parts[t]) {
                    auto [it, inserted] = next.try_emplace(e, c);
                    if (!inserted) it->second += c;
                }
        }
        std::erase_if(next, [](const auto& kv) { return kv.second.is_zero(); });
        cur = std::move(next);
        visit(k, static_cast<const TermTable&>(cur));
    }
}

} // namespace gpot
