#pragma once

#include <string>
#include <utility>
#include <vector>

#include "laurent.hpp"

namespace gpot {

namespace detail {

inline Rational zero_like(const Rational&) { return Rational(0); }
inline Rational one_like(const Rational&) { return Rational(1); }
inline void require_same_domain(const Rational&, const Rational&) {}

template <class C>
LaurentPoly<C> zero_like(const LaurentPoly<C>& p) { return LaurentPoly<C>(p.vars()); }
template <class C>
LaurentPoly<C> one_like(const LaurentPoly<C>& p) { return LaurentPoly<C>::constant(p.vars(), C(1)); }
template <class C>
void require_same_domain(const LaurentPoly<C>& a, const LaurentPoly<C>& b) {
    if (a.vars() != b.vars()) throw structural_error("series coefficients live over different variable lists");
}

inline bool coeff_is_zero(const Rational& r) { return r.is_zero(); }
template <class C>
bool coeff_is_zero(const LaurentPoly<C>& p) { return p.is_zero(); }

} // namespace detail

/// Power series in t truncated after t^order. Coefficients are either
/// Rational scalars or Laurent polynomials over one shared variable list.
template <class C>
class TSeries {
public:
    TSeries() = default;

    TSeries(int order, std::vector<C> coeffs) : order_(order), coeffs_(std::move(coeffs)) {
        if (order_ < 0) throw structural_error("negative truncation order");
        if (coeffs_.size() != static_cast<std::size_t>(order_) + 1)
            throw structural_error("series needs exactly order+1 coefficients");
        for (std::size_t d = 1; d < coeffs_.size(); ++d) detail::require_same_domain(coeffs_[0], coeffs_[d]);
    }

    /// All-zero series whose coefficients share the domain of `like`.
    static TSeries zero(int order, const C& like) {
        return TSeries(order, std::vector<C>(static_cast<std::size_t>(order) + 1, detail::zero_like(like)));
    }

    static TSeries one(int order, const C& like) {
        TSeries s = zero(order, like);
        s.coeffs_[0] = detail::one_like(like);
        return s;
    }

    int order() const noexcept { return order_; }
    const C& operator[](int d) const { return coeffs_.at(static_cast<std::size_t>(d)); }
    C& operator[](int d) { return coeffs_.at(static_cast<std::size_t>(d)); }
    const std::vector<C>& coeffs() const noexcept { return coeffs_; }

    TSeries& operator+=(const TSeries& o) {
        require_compatible(o);
        for (std::size_t d = 0; d < coeffs_.size(); ++d) coeffs_[d] += o.coeffs_[d];
        return *this;
    }
    TSeries& operator-=(const TSeries& o) {
        require_compatible(o);
        for (std::size_t d = 0; d < coeffs_.size(); ++d) coeffs_[d] -= o.coeffs_[d];
        return *this;
    }
    friend TSeries operator+(TSeries a, const TSeries& b) { return a += b; }
    friend TSeries operator-(TSeries a, const TSeries& b) { return a -= b; }

    /// Truncated Cauchy product; terms past t^order are discarded.
    friend TSeries operator*(const TSeries& a, const TSeries& b) {
        a.require_compatible(b);
        TSeries r = zero(a.order_, a.coeffs_[0]);
        for (int i = 0; i <= a.order_; ++i) {
            const C& ai = a.coeffs_[static_cast<std::size_t>(i)];
            if (detail::coeff_is_zero(ai)) continue;
            for (int j = 0; i + j <= a.order_; ++j) {
                const C& bj = b.coeffs_[static_cast<std::size_t>(j)];
                if (detail::coeff_is_zero(bj)) continue;
                r.coeffs_[static_cast<std::size_t>(i + j)] += ai * bj;
            }
        }
        return r;
    }

    friend bool operator==(const TSeries& a, const TSeries& b) {
        return a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const TSeries& a, const TSeries& b) { return !(a == b); }

private:
    void require_compatible(const TSeries& o) const {
        if (order_ != o.order_) throw structural_error("series truncation orders differ");
        if (!coeffs_.empty()) detail::require_same_domain(coeffs_[0], o.coeffs_[0]);
    }

    int order_ = 0;
    std::vector<C> coeffs_{C{}};
};

using ScalarSeries = TSeries<Rational>;
using PolySeries = TSeries<RationalPoly>;

/// exp(t*w) through t^order: coefficient k is w^k / k!.
inline PolySeries ts_exp(const RationalPoly& w, int order) {
    if (order < 0) throw structural_error("negative truncation order");
    std::vector<RationalPoly> coeffs;
    coeffs.reserve(static_cast<std::size_t>(order) + 1);
    RationalPoly power = RationalPoly::constant(w.vars(), Rational(1));
    Rational fact = 1;
    for (int k = 0; k <= order; ++k) {
        if (k > 0) {
            power = power * w;
            fact *= k;
        }
        coeffs.push_back(power.scaled(Rational(1) / fact));
    }
    return PolySeries(order, std::move(coeffs));
}

/// Hilbert-space pairing of L^2 of the torus in the given variables:
/// <f, g> = [ f(z) g(z^{-1}) ]_{z^0}, degree by degree in t. The paired
/// variables are removed from the result.
inline PolySeries pairing_in_vars(const PolySeries& f, const PolySeries& g, const std::vector<std::string>& vars) {
    if (f.order() != g.order()) throw structural_error("series truncation orders differ");
    const VarList& all = f[0].vars();
    if (g[0].vars() != all) throw structural_error("paired series live over different variable lists");
    VarList rest;
    for (const auto& v : all)
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) rest.push_back(v);
    if (rest.size() + vars.size() != all.size()) throw structural_error("pairing variable missing from series");

    std::vector<RationalPoly> g_flipped;
    for (const auto& c : g.coeffs()) {
        RationalPoly h = c;
        for (const auto& v : vars) h = h.invert_var(v);
        g_flipped.push_back(std::move(h));
    }
    PolySeries out = PolySeries::zero(f.order(), RationalPoly(rest));
    for (int k = 0; k <= f.order(); ++k) {
        RationalPoly acc(all);
        for (int a = 0; a <= k; ++a) {
            if (f[a].is_zero() || g_flipped[static_cast<std::size_t>(k - a)].is_zero()) continue;
            acc += f[a] * g_flipped[static_cast<std::size_t>(k - a)];
        }
        out[k] = acc.constant_term_in(vars);
    }
    return out;
}

inline PolySeries pairing_in_var(const PolySeries& f, const PolySeries& g, const std::string& var) {
    return pairing_in_vars(f, g, {var});
}

} // namespace gpot
