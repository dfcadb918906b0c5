#pragma once

#include <string>
#include <utility>

#include "laurent.hpp"

namespace gpot {

/// Quotient of two Laurent polynomials over a shared variable list.
/// No gcd reduction is attempted; equality is decided by cross-multiplication.
template <class Coeff = Rational>
class RationalExpr {
public:
    using poly_type = LaurentPoly<Coeff>;

    RationalExpr(poly_type numerator, poly_type denominator)
        : num_(std::move(numerator)), den_(std::move(denominator)) {
        if (den_.is_zero()) throw structural_error("rational expression with zero denominator");
        if (num_.vars() != den_.vars()) {
            VarList all = merge_varlists(num_.vars(), den_.vars());
            num_ = num_.extend_vars(all);
            den_ = den_.extend_vars(all);
        }
        absorb_monomial_denominator();
    }

    explicit RationalExpr(poly_type p)
        : RationalExpr(p, poly_type::constant(p.vars(), Coeff(1))) {}

    const poly_type& numerator() const noexcept { return num_; }
    const poly_type& denominator() const noexcept { return den_; }
    const VarList& vars() const noexcept { return num_.vars(); }

    RationalExpr extend_vars(const VarList& target) const {
        return RationalExpr(num_.extend_vars(target), den_.extend_vars(target));
    }

    friend RationalExpr operator+(const RationalExpr& a, const RationalExpr& b) {
        auto [x, y] = aligned(a, b);
        return RationalExpr(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
    }

    friend RationalExpr operator*(const RationalExpr& a, const RationalExpr& b) {
        auto [x, y] = aligned(a, b);
        return RationalExpr(x.num_ * y.num_, x.den_ * y.den_);
    }

    RationalExpr inverse() const {
        if (num_.is_zero()) throw structural_error("inverse of zero rational expression");
        return RationalExpr(den_, num_);
    }

    std::string to_string() const {
        return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
    }

private:
    static std::pair<RationalExpr, RationalExpr> aligned(const RationalExpr& a, const RationalExpr& b) {
        if (a.vars() == b.vars()) return {a, b};
        VarList all = merge_varlists(a.vars(), b.vars());
        return {a.extend_vars(all), b.extend_vars(all)};
    }

    // Monomial-content reduction only: a single-term denominator is folded
    // into the numerator.
    void absorb_monomial_denominator() {
        if (den_.size() != 1) return;
        const auto& [e, c] = *den_.terms().begin();
        Exponent neg = e;
        for (int& v : neg) v = -v;
        if constexpr (std::is_same_v<Coeff, Integer>) {
            if (c != 1 && c != -1) return;
            num_ = num_.shifted(neg).scaled(c);
        } else {
            num_ = num_.shifted(neg).scaled(Coeff(1) / c);
        }
        den_ = poly_type::constant(den_.vars(), Coeff(1));
    }

    poly_type num_;
    poly_type den_;
};

/// p/q == r/s iff p*s == r*q.
template <class Coeff>
bool rexpr_equal(const RationalExpr<Coeff>& f, const RationalExpr<Coeff>& g) {
    VarList all = merge_varlists(f.vars(), g.vars());
    auto lhs = f.numerator().extend_vars(all) * g.denominator().extend_vars(all);
    auto rhs = g.numerator().extend_vars(all) * f.denominator().extend_vars(all);
    return lhs == rhs;
}

/// Substitutes `value` for `var` in `p`. The result lives over the union of
/// both variable lists; `var` stays in the list (the value may mention it).
template <class Coeff>
RationalExpr<Coeff> rexpr_substitute(const LaurentPoly<Coeff>& p, const std::string& var,
                                     const RationalExpr<Coeff>& value) {
    if (!p.has_var(var)) throw structural_error("variable '" + var + "' does not occur in the polynomial's variable list");
    const VarList all = merge_varlists(p.vars(), value.vars());
    const LaurentPoly<Coeff> pp = p.extend_vars(all);
    const LaurentPoly<Coeff> num = value.numerator().extend_vars(all);
    const LaurentPoly<Coeff> den = value.denominator().extend_vars(all);
    const std::size_t k = pp.var_index(var);

    int lo = 0;
    int hi = 0;
    for (const auto& kv : pp.terms()) {
        lo = std::min(lo, kv.first[k]);
        hi = std::max(hi, kv.first[k]);
    }
    if (pp.terms().empty()) return RationalExpr<Coeff>(LaurentPoly<Coeff>(all));
    if (lo < 0 && num.is_zero()) throw structural_error("substituting zero into a negative power");

    // Common denominator num^{-lo} * den^{hi}; term with exponent e gets
    // num^{e-lo} * den^{hi-e}.
    const int span = hi - lo;
    std::vector<LaurentPoly<Coeff>> num_pow(static_cast<std::size_t>(span) + 1);
    std::vector<LaurentPoly<Coeff>> den_pow(static_cast<std::size_t>(span) + 1);
    num_pow[0] = LaurentPoly<Coeff>::constant(all, Coeff(1));
    den_pow[0] = num_pow[0];
    for (int i = 1; i <= span; ++i) {
        num_pow[static_cast<std::size_t>(i)] = num_pow[static_cast<std::size_t>(i - 1)] * num;
        den_pow[static_cast<std::size_t>(i)] = den_pow[static_cast<std::size_t>(i - 1)] * den;
    }

    std::map<int, LaurentPoly<Coeff>> by_power;
    for (const auto& [e, c] : pp.terms()) {
        Exponent rest = e;
        const int d = rest[k];
        rest[k] = 0;
        auto [it, inserted] = by_power.try_emplace(d, all);
        it->second.add_term(std::move(rest), c);
    }
    LaurentPoly<Coeff> total(all);
    for (const auto& [d, coeff] : by_power)
        total += coeff * num_pow[static_cast<std::size_t>(d - lo)] * den_pow[static_cast<std::size_t>(hi - d)];
    LaurentPoly<Coeff> denominator = num_pow[static_cast<std::size_t>(-lo)] * den_pow[static_cast<std::size_t>(hi)];
    return RationalExpr<Coeff>(std::move(total), std::move(denominator));
}

} // namespace gpot
