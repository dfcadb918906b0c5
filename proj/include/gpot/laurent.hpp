#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "number.hpp"

namespace gpot {

/// Dense exponent vector, one slot per variable of the owning VarList.
using Exponent = std::vector<int>;

/// Variable names in canonical (sorted, duplicate-free) order.
using VarList = std::vector<std::string>;

inline VarList make_varlist(std::vector<std::string> names) {
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    return names;
}

inline VarList merge_varlists(const VarList& a, const VarList& b) {
    VarList out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline int l1_norm(const Exponent& e) {
    int n = 0;
    for (int v : e) n += std::abs(v);
    return n;
}

struct ExponentHash {
    std::size_t operator()(const Exponent& e) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (int v : e) {
            h ^= static_cast<std::size_t>(static_cast<unsigned>(v));
            h *= 1099511628211ull;
        }
        return h;
    }
};

namespace detail {

template <class Coeff>
Coeff coeff_pow(const Coeff& c, int e) {
    if (e < 0) {
        if constexpr (std::is_same_v<Coeff, Integer>) {
            if (c != 1 && c != -1)
                throw structural_error("negative power of a non-unit integer coefficient");
            return (-e) % 2 == 0 ? Coeff(1) : c;
        } else {
            if (is_zero(c)) throw structural_error("negative power of zero");
            return coeff_pow(Coeff(1) / c, -e);
        }
    }
    Coeff r = 1;
    for (int i = 0; i < e; ++i) r *= c;
    return r;
}

} // namespace detail

/// Sparse multivariate Laurent polynomial with exact coefficients.
///
/// Terms are keyed by dense exponent vectors over a sorted variable list, so
/// iteration order is lexicographic in the exponents and fully deterministic.
/// Zero coefficients are never stored. Binary operations require both operands
/// to carry the same variable list; use `extend_vars` to embed into a larger
/// list first.
template <class Coeff>
class LaurentPoly {
public:
    using coeff_type = Coeff;
    using term_map = std::map<Exponent, Coeff>;

    LaurentPoly() = default;
    explicit LaurentPoly(VarList vars) : vars_(std::move(vars)) { check_varlist(); }

    static LaurentPoly constant(VarList vars, const Coeff& c) {
        LaurentPoly p(std::move(vars));
        p.add_term(Exponent(p.vars_.size(), 0), c);
        return p;
    }

    static LaurentPoly monomial(VarList vars, Exponent e, const Coeff& c = Coeff(1)) {
        LaurentPoly p(std::move(vars));
        p.add_term(std::move(e), c);
        return p;
    }

    static LaurentPoly variable(VarList vars, const std::string& name, int power = 1) {
        LaurentPoly p(std::move(vars));
        Exponent e(p.vars_.size(), 0);
        e[p.var_index(name)] = power;
        p.add_term(std::move(e), Coeff(1));
        return p;
    }

    static LaurentPoly from_terms(VarList vars, const term_map& terms) {
        LaurentPoly p(std::move(vars));
        for (const auto& [e, c] : terms) p.add_term(e, c);
        return p;
    }

    const VarList& vars() const noexcept { return vars_; }
    const term_map& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    bool has_var(const std::string& name) const {
        return std::binary_search(vars_.begin(), vars_.end(), name);
    }

    std::size_t var_index(const std::string& name) const {
        auto it = std::lower_bound(vars_.begin(), vars_.end(), name);
        if (it == vars_.end() || *it != name)
            throw structural_error("unknown variable '" + name + "'");
        return static_cast<std::size_t>(it - vars_.begin());
    }

    Coeff coefficient(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Coeff(0) : it->second;
    }

    Coeff constant_term() const { return coefficient(Exponent(vars_.size(), 0)); }

    /// Accumulates c into the term with exponent e, pruning if it cancels.
    void add_term(Exponent e, const Coeff& c) {
        if (e.size() != vars_.size())
            throw structural_error("exponent length " + std::to_string(e.size()) +
                                   " does not match " + std::to_string(vars_.size()) + " variables");
        if (gpot::is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(std::move(e), c);
        if (!inserted) {
            it->second += c;
            if (gpot::is_zero(it->second)) terms_.erase(it);
        }
    }

    LaurentPoly operator-() const {
        LaurentPoly r(vars_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        require_same_vars(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }

    LaurentPoly& operator-=(const LaurentPoly& o) {
        require_same_vars(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        a.require_same_vars(b);
        LaurentPoly r(a.vars_);
        const std::size_t n = a.vars_.size();
        Exponent e(n);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }

    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    LaurentPoly scaled(const Coeff& s) const {
        LaurentPoly r(vars_);
        if (gpot::is_zero(s)) return r;
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * s);
        return r;
    }

    friend LaurentPoly operator*(const Coeff& s, const LaurentPoly& p) { return p.scaled(s); }

    /// Multiplies by a single monomial (shift of every exponent).
    LaurentPoly shifted(const Exponent& by) const {
        if (by.size() != vars_.size()) throw structural_error("shift length mismatch");
        LaurentPoly r(vars_);
        for (const auto& [e, c] : terms_) {
            Exponent f = e;
            for (std::size_t i = 0; i < f.size(); ++i) f[i] += by[i];
            r.terms_.emplace(std::move(f), c);
        }
        return r;
    }

    LaurentPoly pow(unsigned k) const {
        LaurentPoly result = constant(vars_, Coeff(1));
        LaurentPoly base = *this;
        while (k) {
            if (k & 1u) result = result * base;
            k >>= 1u;
            if (k) base = base * base;
        }
        return result;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.vars_ == b.vars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    /// Same polynomial viewed over a superset of its variables.
    LaurentPoly extend_vars(const VarList& target) const {
        std::vector<std::size_t> pos(vars_.size());
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            auto it = std::lower_bound(target.begin(), target.end(), vars_[i]);
            if (it == target.end() || *it != vars_[i])
                throw structural_error("variable '" + vars_[i] + "' missing from target list");
            pos[i] = static_cast<std::size_t>(it - target.begin());
        }
        LaurentPoly r(target);
        for (const auto& [e, c] : terms_) {
            Exponent f(target.size(), 0);
            for (std::size_t i = 0; i < e.size(); ++i) f[pos[i]] = e[i];
            r.terms_.emplace(std::move(f), c);
        }
        return r;
    }

    /// Constant term with respect to one variable; the variable is removed.
    LaurentPoly constant_term_in(const std::string& name) const {
        const std::size_t k = var_index(name);
        VarList rest = vars_;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
        LaurentPoly r(std::move(rest));
        for (const auto& [e, c] : terms_) {
            if (e[k] != 0) continue;
            Exponent f = e;
            f.erase(f.begin() + static_cast<std::ptrdiff_t>(k));
            r.terms_.emplace(std::move(f), c);
        }
        return r;
    }

    /// Constant term with respect to every variable in `names`.
    LaurentPoly constant_term_in(const std::vector<std::string>& names) const {
        LaurentPoly r = *this;
        for (const auto& n : names) r = r.constant_term_in(n);
        return r;
    }

    /// Rewrites each variable as a single-term polynomial over `target`.
    /// Every variable of this polynomial must be mapped.
    LaurentPoly substitute_monomial(const std::map<std::string, LaurentPoly>& images,
                                    const VarList& target) const {
        const std::size_t n = vars_.size();
        std::vector<Exponent> img_exp(n);
        std::vector<Coeff> img_coeff(n);
        for (std::size_t i = 0; i < n; ++i) {
            auto it = images.find(vars_[i]);
            if (it == images.end())
                throw structural_error("no image given for variable '" + vars_[i] + "'");
            const LaurentPoly& m = it->second;
            if (m.vars_ != target) throw structural_error("image of '" + vars_[i] + "' is not over the target variables");
            if (m.size() != 1) throw structural_error("image of '" + vars_[i] + "' is not a monomial");
            img_exp[i] = m.terms_.begin()->first;
            img_coeff[i] = m.terms_.begin()->second;
        }
        LaurentPoly r(target);
        for (const auto& [e, c] : terms_) {
            Exponent f(target.size(), 0);
            Coeff coeff = c;
            for (std::size_t i = 0; i < n; ++i) {
                if (e[i] == 0) continue;
                for (std::size_t j = 0; j < f.size(); ++j) f[j] += e[i] * img_exp[i][j];
                if (img_coeff[i] != 1) coeff *= detail::coeff_pow(img_coeff[i], e[i]);
            }
            r.add_term(std::move(f), coeff);
        }
        return r;
    }

    /// x -> x^{-1} for one variable, everything else fixed.
    LaurentPoly invert_var(const std::string& name) const {
        const std::size_t k = var_index(name);
        LaurentPoly r(vars_);
        for (const auto& [e, c] : terms_) {
            Exponent f = e;
            f[k] = -f[k];
            r.terms_.emplace(std::move(f), c);
        }
        return r;
    }

    /// Renames variables (injectively); the result is re-sorted canonically.
    LaurentPoly rename(const std::map<std::string, std::string>& names) const {
        VarList renamed;
        for (const auto& v : vars_) {
            auto it = names.find(v);
            renamed.push_back(it == names.end() ? v : it->second);
        }
        VarList target = make_varlist(renamed);
        if (target.size() != vars_.size()) throw structural_error("rename is not injective");
        std::map<std::string, LaurentPoly> images;
        for (std::size_t i = 0; i < vars_.size(); ++i)
            images.emplace(vars_[i], variable(target, renamed[i]));
        return substitute_monomial(images, target);
    }

    template <class Pred>
    LaurentPoly filter(Pred keep) const {
        LaurentPoly r(vars_);
        for (const auto& [e, c] : terms_)
            if (keep(e, c)) r.terms_.emplace(e, c);
        return r;
    }

    /// Largest 1-norm over the exponent support (0 for the zero polynomial).
    int max_norm() const {
        int m = 0;
        for (const auto& kv : terms_) m = std::max(m, l1_norm(kv.first));
        return m;
    }

    template <class To>
    LaurentPoly<To> convert() const {
        LaurentPoly<To> r(vars_);
        for (const auto& [e, c] : terms_) {
            if constexpr (std::is_same_v<To, Integer> && std::is_same_v<Coeff, Rational>)
                r.add_term(e, to_integer(c));
            else
                r.add_term(e, To(c));
        }
        return r;
    }

    /// Human-readable rendering, terms in lexicographic exponent order,
    /// e.g. `a*b^2 + 4*a^-1`.
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream out;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            Coeff mag = c;
            if (first) {
                if (c < 0) {
                    out << "-";
                    mag = -c;
                }
            } else {
                out << (c < 0 ? " - " : " + ");
                if (c < 0) mag = -c;
            }
            first = false;
            bool any_var = false;
            for (int v : e) any_var |= v != 0;
            bool wrote = false;
            if (mag != 1 || !any_var) {
                out << mag.str();
                wrote = true;
            }
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (wrote) out << "*";
                out << vars_[i];
                if (e[i] != 1) out << "^" << e[i];
                wrote = true;
            }
        }
        return out.str();
    }

private:
    template <class>
    friend class LaurentPoly;

    void check_varlist() const {
        for (std::size_t i = 1; i < vars_.size(); ++i)
            if (!(vars_[i - 1] < vars_[i]))
                throw structural_error("variable list must be sorted and duplicate-free");
    }

    void require_same_vars(const LaurentPoly& o) const {
        if (vars_ != o.vars_) throw structural_error("variable-list mismatch");
    }

    VarList vars_;
    term_map terms_;
};

using RationalPoly = LaurentPoly<Rational>;
using IntegerPoly = LaurentPoly<Integer>;

/// Coefficient of the all-zero exponent.
template <class Coeff>
Coeff lp_constant_term(const LaurentPoly<Coeff>& p) {
    return p.constant_term();
}

/// Sorted exponent support (Newton polytope vertex candidates, no hull).
template <class Coeff>
std::vector<Exponent> newton_support(const LaurentPoly<Coeff>& p) {
    std::vector<Exponent> out;
    out.reserve(p.size());
    for (const auto& kv : p.terms()) out.push_back(kv.first);
    return out;
}

} // namespace gpot
