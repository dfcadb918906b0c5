#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "potential.hpp"
#include "running_power.hpp"
#include "series.hpp"

namespace gpot {

/// B(z) = sum_m z^{2m} / (m!)^2 through z^order.
inline ScalarSeries bessel(int order) {
    if (order < 0) throw structural_error("negative truncation order");
    std::vector<Rational> c(static_cast<std::size_t>(order) + 1, Rational(0));
    for (int m = 0; 2 * m <= order; ++m) {
        Integer f = factorial(static_cast<unsigned>(m));
        c[static_cast<std::size_t>(2 * m)] = Rational(1) / Rational(f * f);
    }
    return ScalarSeries(order, std::move(c));
}

/// Matrix indexed by Fourier modes (i, j) in [-D, D]^2 whose entries are
/// t-series truncated at t^D. Restricting modes to [-D, D] loses nothing
/// for the kernels built here: a mode |i| > d cannot appear at t^d.
class KernelMatrix {
public:
    explicit KernelMatrix(int order = 0)
        : order_(order), side_(2 * order + 1),
          data_(static_cast<std::size_t>(side_) * static_cast<std::size_t>(side_) * static_cast<std::size_t>(order + 1)) {
        if (order < 0) throw structural_error("negative truncation order");
    }

    int order() const noexcept { return order_; }
    int side() const noexcept { return side_; }

    const Rational& coeff(int i, int j, int d) const { return data_[at(i, j, d)]; }
    Rational& coeff(int i, int j, int d) { return data_[at(i, j, d)]; }

    ScalarSeries entry(int i, int j) const {
        std::vector<Rational> c(static_cast<std::size_t>(order_) + 1);
        for (int d = 0; d <= order_; ++d) c[static_cast<std::size_t>(d)] = coeff(i, j, d);
        return ScalarSeries(order_, std::move(c));
    }

    friend bool operator==(const KernelMatrix& a, const KernelMatrix& b) {
        return a.order_ == b.order_ && a.data_ == b.data_;
    }
    friend bool operator!=(const KernelMatrix& a, const KernelMatrix& b) { return !(a == b); }

private:
    std::size_t at(int i, int j, int d) const {
        if (i < -order_ || i > order_ || j < -order_ || j > order_ || d < 0 || d > order_)
            throw structural_error("kernel index out of range");
        return (static_cast<std::size_t>(i + order_) * static_cast<std::size_t>(side_) + static_cast<std::size_t>(j + order_)) *
                   static_cast<std::size_t>(order_ + 1) +
               static_cast<std::size_t>(d);
    }

    int order_;
    int side_;
    std::vector<Rational> data_;
};

namespace detail {

// Kernel with entries stored as d! * coefficient, all integral. Products are
// binomial convolutions, which keeps every kernel built from T1 integral.
struct EgfMatrix {
    int order = 0;
    int side = 1;
    std::vector<Integer> data;
    std::vector<int> low; // lowest nonzero degree per entry, order+1 if zero

    explicit EgfMatrix(int d = 0)
        : order(d), side(2 * d + 1),
          data(static_cast<std::size_t>(side) * static_cast<std::size_t>(side) * static_cast<std::size_t>(d + 1)),
          low(static_cast<std::size_t>(side) * static_cast<std::size_t>(side), d + 1) {}

    std::size_t cell(int i, int j) const {
        return static_cast<std::size_t>(i + order) * static_cast<std::size_t>(side) + static_cast<std::size_t>(j + order);
    }
    Integer* series(int i, int j) { return &data[cell(i, j) * static_cast<std::size_t>(order + 1)]; }
    const Integer* series(int i, int j) const { return &data[cell(i, j) * static_cast<std::size_t>(order + 1)]; }

    void refresh_low() {
        for (int i = -order; i <= order; ++i)
            for (int j = -order; j <= order; ++j) {
                const Integer* s = series(i, j);
                int d = 0;
                while (d <= order && s[d].is_zero()) ++d;
                low[cell(i, j)] = d;
            }
    }
};

inline std::optional<EgfMatrix> to_egf(const KernelMatrix& m) {
    EgfMatrix e(m.order());
    const int D = m.order();
    for (int d = 0; d <= D; ++d) {
        const Integer f = factorial(static_cast<unsigned>(d));
        for (int i = -D; i <= D; ++i)
            for (int j = -D; j <= D; ++j) {
                const Rational v = m.coeff(i, j, d) * f;
                if (!is_integral(v)) return std::nullopt;
                e.series(i, j)[d] = boost::multiprecision::numerator(v);
            }
    }
    e.refresh_low();
    return e;
}

inline KernelMatrix from_egf(const EgfMatrix& e) {
    KernelMatrix m(e.order);
    const int D = e.order;
    for (int d = 0; d <= D; ++d) {
        const Integer f = factorial(static_cast<unsigned>(d));
        for (int i = -D; i <= D; ++i)
            for (int j = -D; j <= D; ++j) {
                const Integer& v = e.series(i, j)[d];
                if (!v.is_zero()) m.coeff(i, j, d) = Rational(v, f);
            }
    }
    return m;
}

inline void egf_rows(const EgfMatrix& p, const EgfMatrix& q, EgfMatrix& r, unsigned stride, unsigned offset) {
    const int D = p.order;
    std::vector<std::vector<Integer>> binom;
    for (int n = 0; n <= D; ++n) binom.push_back(binomial_row(static_cast<unsigned>(n)));
    Integer term;
    for (int i = -D + static_cast<int>(offset); i <= D; i += static_cast<int>(stride)) {
        for (int j = -D; j <= D; ++j) {
            Integer* out = r.series(i, j);
            for (int k = -D; k <= D; ++k) {
                const int lp = p.low[p.cell(i, k)];
                const int lq = q.low[q.cell(k, j)];
                if (lp + lq > D) continue;
                const Integer* a = p.series(i, k);
                const Integer* b = q.series(k, j);
                for (int x = lp; x <= D - lq; ++x) {
                    if (a[x].is_zero()) continue;
                    for (int y = lq; x + y <= D; ++y) {
                        if (b[y].is_zero()) continue;
                        term = a[x] * b[y];
                        term *= binom[static_cast<std::size_t>(x + y)][static_cast<std::size_t>(x)];
                        out[x + y] += term;
                    }
                }
            }
        }
    }
}

inline EgfMatrix egf_multiply(const EgfMatrix& p, const EgfMatrix& q, unsigned threads) {
    if (p.order != q.order) throw structural_error("kernel truncation orders differ");
    EgfMatrix r(p.order);
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(p.side)));
    if (threads == 1) {
        egf_rows(p, q, r, 1, 0);
    } else {
        // Rows are interleaved across workers; each writes only its own rows.
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back([&, t] { egf_rows(p, q, r, threads, t); });
        for (auto& th : pool) th.join();
    }
    r.refresh_low();
    return r;
}

inline std::vector<Rational> rational_rows_product(const KernelMatrix& p, const KernelMatrix& q, int i, int j) {
    const int D = p.order();
    std::vector<Rational> out(static_cast<std::size_t>(D) + 1);
    for (int k = -D; k <= D; ++k)
        for (int x = 0; x <= D; ++x) {
            const Rational& a = p.coeff(i, k, x);
            if (a.is_zero()) continue;
            for (int y = 0; x + y <= D; ++y) {
                const Rational& b = q.coeff(k, j, y);
                if (!b.is_zero()) out[static_cast<std::size_t>(x + y)] += a * b;
            }
        }
    return out;
}

// Series in t with d!-scaled integer coefficients back to plain rationals.
inline ScalarSeries egf_series(const std::vector<Integer>& v) {
    const int D = static_cast<int>(v.size()) - 1;
    std::vector<Rational> c(v.size());
    for (int d = 0; d <= D; ++d) c[static_cast<std::size_t>(d)] = Rational(v[static_cast<std::size_t>(d)], factorial(static_cast<unsigned>(d)));
    return ScalarSeries(D, std::move(c));
}

// Sum of M_{i, s*i} over i: plain trace for s = 1, trace against S for s = -1.
inline std::vector<Integer> egf_trace(const EgfMatrix& m, int s) {
    std::vector<Integer> acc(static_cast<std::size_t>(m.order) + 1);
    for (int i = -m.order; i <= m.order; ++i) {
        const Integer* e = m.series(i, s * i);
        for (int d = 0; d <= m.order; ++d) acc[static_cast<std::size_t>(d)] += e[d];
    }
    return acc;
}

inline EgfMatrix egf_t1(int D) {
    // B(t(x+y)) B(t(1/x+1/y)): the first factor contributes x^a y^{2m-a} with
    // weight (2m)!/(a!(2m-a)! m!^2), the second x^{-c} y^{c-2n} likewise.
    EgfMatrix e(D);
    for (int m = 0; 2 * m <= D; ++m)
        for (int n = 0; 2 * m + 2 * n <= D; ++n) {
            const int d = 2 * m + 2 * n;
            const Integer fd = factorial(static_cast<unsigned>(d));
            const Integer mm = factorial(static_cast<unsigned>(m)) * factorial(static_cast<unsigned>(m));
            const Integer nn = factorial(static_cast<unsigned>(n)) * factorial(static_cast<unsigned>(n));
            for (int a = 0; a <= 2 * m; ++a)
                for (int c = 0; c <= 2 * n; ++c) {
                    // d! (2m)! (2n)! / (a! (2m-a)! c! (2n-c)! m!^2 n!^2), integral.
                    Integer v = fd * binomial(static_cast<unsigned>(2 * m), static_cast<unsigned>(a)) *
                                binomial(static_cast<unsigned>(2 * n), static_cast<unsigned>(c));
                    v /= mm * nn;
                    const int i = a - c;
                    const int j = (2 * m - a) - (2 * n - c);
                    e.series(i, j)[d] += v;
                }
        }
    e.refresh_low();
    return e;
}

inline EgfMatrix egf_flip(const EgfMatrix& m) {
    EgfMatrix r(m.order);
    for (int i = -m.order; i <= m.order; ++i)
        for (int j = -m.order; j <= m.order; ++j)
            std::copy(m.series(i, -j), m.series(i, -j) + m.order + 1, r.series(i, j));
    r.refresh_low();
    return r;
}

} // namespace detail

/// Coefficients of T1(x, y) = B(t(x+y)) B(t(1/x+1/y)) as a mode matrix.
inline KernelMatrix t1_kernel(int order) { return detail::from_egf(detail::egf_t1(order)); }

/// Mode reversal S: f(x) -> f(1/x).
inline KernelMatrix flip_operator(int order) {
    KernelMatrix m(order);
    for (int i = -order; i <= order; ++i) m.coeff(i, -i, 0) = 1;
    return m;
}

inline KernelMatrix identity_kernel(int order) {
    KernelMatrix m(order);
    for (int i = -order; i <= order; ++i) m.coeff(i, i, 0) = 1;
    return m;
}

/// Matrix product with truncated series entries; equivalently the constant
/// term in the shared middle variable of P(x, z) Q(1/z, y).
inline KernelMatrix kernel_compose(const KernelMatrix& p, const KernelMatrix& q, unsigned threads = 1) {
    if (p.order() != q.order()) throw structural_error("kernel truncation orders differ");
    auto ep = detail::to_egf(p);
    auto eq = ep ? detail::to_egf(q) : std::nullopt;
    if (ep && eq) return detail::from_egf(detail::egf_multiply(*ep, *eq, threads));
    const int D = p.order();
    KernelMatrix r(D);
    for (int i = -D; i <= D; ++i)
        for (int j = -D; j <= D; ++j) {
            auto v = detail::rational_rows_product(p, q, i, j);
            for (int d = 0; d <= D; ++d) r.coeff(i, j, d) = v[static_cast<std::size_t>(d)];
        }
    return r;
}

inline ScalarSeries kernel_trace(const KernelMatrix& m) {
    ScalarSeries out = ScalarSeries::zero(m.order(), Rational(0));
    for (int i = -m.order(); i <= m.order(); ++i) out += m.entry(i, i);
    return out;
}

namespace detail {

inline EgfMatrix egf_power(const EgfMatrix& a, int k, unsigned threads) {
    if (k < 0) throw structural_error("negative kernel power");
    EgfMatrix r(a.order);
    for (int i = -a.order; i <= a.order; ++i) r.series(i, i)[0] = 1;
    r.refresh_low();
    for (int s = 0; s < k; ++s) r = egf_multiply(r, a, threads);
    return r;
}

} // namespace detail

/// Matrix of T_k(x, y), the k-fold convolution of T1: A^k S^{k-1}.
inline KernelMatrix tk_kernel(int k, int order, unsigned threads = 1) {
    if (k < 1) throw structural_error("T_k needs k >= 1");
    auto m = detail::egf_power(detail::egf_t1(order), k, threads);
    if ((k - 1) % 2) m = detail::egf_flip(m);
    return detail::from_egf(m);
}

/// Inverse-Laplace period series of a closed genus-g surface with coloring
/// parity eps: tr(A^{g-1} S^{g+eps+1}).
inline ScalarSeries trace_formula(int genus, int parity, int order, unsigned threads = 1) {
    if (genus < 2) throw structural_error("trace formula needs genus >= 2");
    auto m = detail::egf_power(detail::egf_t1(order), genus - 1, threads);
    const int s = (genus + parity + 1) % 2 ? -1 : 1;
    return detail::egf_series(detail::egf_trace(m, s));
}

/// trace_formula for every genus 2..max_genus and both parities, sharing
/// the matrix powers. Keyed by (genus, parity).
inline std::map<std::pair<int, int>, ScalarSeries> trace_table(int max_genus, int order, unsigned threads = 1) {
    std::map<std::pair<int, int>, ScalarSeries> out;
    if (max_genus < 2) return out;
    const auto a = detail::egf_t1(order);
    detail::EgfMatrix m = a;
    for (int g = 2; g <= max_genus; ++g) {
        if (g > 2) m = detail::egf_multiply(m, a, threads);
        for (int eps = 0; eps <= 1; ++eps) {
            const int s = (g + eps + 1) % 2 ? -1 : 1;
            out.emplace(std::make_pair(g, eps), detail::egf_series(detail::egf_trace(m, s)));
        }
    }
    return out;
}

// ------------------------------------------------------------ boundary states

/// Truncated state on the leaves: the t^d coefficient is a Laurent
/// polynomial in the leaf variables.
struct BoundaryState {
    VarList leaf_vars;
    int order = 0;
    PolySeries value;
};

/// Brute-force state of a graph: exp(t W) truncated at t^order with the
/// constant term taken in every internal-edge variable.
inline BoundaryState k_state(const ColoredGraph& g, int order, unsigned threads = 1) {
    const PotentialBundle b = graph_potential(g);
    const VarList& all = b.potential.vars();
    const VarList leaves = make_varlist(g.leaf_ids());
    std::vector<bool> internal(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) internal[i] = g.has_edge(all[i]);
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < all.size(); ++i)
        if (!internal[i]) keep.push_back(i);

    std::vector<RationalPoly> coeffs;
    const IntegerPoly w = b.potential.convert<Integer>();
    running_powers(w, order, internal, threads, [&](int k, const TermTable& terms) {
        RationalPoly c(leaves);
        const Rational inv_fact = Rational(1) / Rational(factorial(static_cast<unsigned>(k)));
        std::vector<std::pair<Exponent, Integer>> hits;
        for (const auto& [e, v] : terms) {
            bool zero = true;
            for (std::size_t i = 0; i < e.size() && zero; ++i) zero = !internal[i] || e[i] == 0;
            if (!zero) continue;
            Exponent f(keep.size());
            for (std::size_t i = 0; i < keep.size(); ++i) f[i] = e[keep[i]];
            c.add_term(std::move(f), Rational(v) * inv_fact);
        }
        coeffs.push_back(std::move(c));
    });
    return {leaves, order, PolySeries(order, std::move(coeffs))};
}

/// Joins two leaves: both variables become one z and the constant term in z
/// is taken, i.e. only modes with e_A + e_B = 0 survive.
inline BoundaryState glue(const BoundaryState& s, const std::string& leaf_a, const std::string& leaf_b) {
    if (leaf_a == leaf_b) throw structural_error("cannot glue a leaf to itself");
    auto pos = [&](const std::string& n) {
        auto it = std::find(s.leaf_vars.begin(), s.leaf_vars.end(), n);
        if (it == s.leaf_vars.end()) throw structural_error("unknown leaf '" + n + "'");
        return static_cast<std::size_t>(it - s.leaf_vars.begin());
    };
    const std::size_t ia = pos(leaf_a);
    const std::size_t ib = pos(leaf_b);
    VarList rest;
    for (const auto& v : s.leaf_vars)
        if (v != leaf_a && v != leaf_b) rest.push_back(v);
    std::vector<RationalPoly> coeffs;
    for (const auto& c : s.value.coeffs()) {
        RationalPoly r(rest);
        for (const auto& [e, v] : c.terms()) {
            if (e[ia] + e[ib] != 0) continue;
            Exponent f;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (i != ia && i != ib) f.push_back(e[i]);
            r.add_term(std::move(f), v);
        }
        coeffs.push_back(std::move(r));
    }
    return {rest, s.order, PolySeries(s.order, std::move(coeffs))};
}

/// Two-leaf state whose (i, j) mode is the kernel entry.
inline BoundaryState kernel_to_state(const KernelMatrix& m, const std::string& x = "x", const std::string& y = "y") {
    if (x == y) throw structural_error("state variables must differ");
    const VarList vars = make_varlist({x, y});
    const bool swapped = vars[0] != x;
    std::vector<RationalPoly> coeffs(static_cast<std::size_t>(m.order()) + 1, RationalPoly(vars));
    const int D = m.order();
    for (int i = -D; i <= D; ++i)
        for (int j = -D; j <= D; ++j)
            for (int d = 0; d <= D; ++d) {
                const Rational& v = m.coeff(i, j, d);
                if (v.is_zero()) continue;
                coeffs[static_cast<std::size_t>(d)].add_term(swapped ? Exponent{j, i} : Exponent{i, j}, v);
            }
    return {vars, D, PolySeries(D, std::move(coeffs))};
}

/// State of the open necklace with `genus` beads, second leaf inverted for
/// odd parity: the matrix A^g S^{g-1+eps}, built from kernel powers.
inline BoundaryState necklace_state(int genus, int parity, int order, unsigned threads = 1,
                                    const std::string& x = "x", const std::string& y = "y") {
    if (genus < 1) throw structural_error("necklace state needs genus >= 1");
    auto m = detail::egf_power(detail::egf_t1(order), genus, threads);
    if ((genus - 1 + parity) % 2) m = detail::egf_flip(m);
    return kernel_to_state(detail::from_egf(m), x, y);
}

// ---------------------------------------------------------------------- WDVV

/// Four-point check for a three-slot potential `w` whose variables are
/// `slots`: M4 pairs the third slot of exp(t w(x1,x2,m)) with that of
/// exp(t w(x3,x4,m)); M4 must be invariant under all 24 permutations of
/// x1..x4 through t^order.
inline bool wdvv_check(const RationalPoly& w, const std::array<std::string, 3>& slots, int order) {
    const VarList vars = make_varlist({"m", "x1", "x2", "x3", "x4"});
    for (const auto& s : slots)
        if (!w.has_var(s)) throw structural_error("potential has no variable '" + s + "'");
    auto place = [&](const std::string& p, const std::string& q) {
        std::map<std::string, RationalPoly> img{{slots[0], RationalPoly::variable(vars, p)},
                                                {slots[1], RationalPoly::variable(vars, q)},
                                                {slots[2], RationalPoly::variable(vars, "m")}};
        return w.substitute_monomial(img, vars);
    };
    const PolySeries f = ts_exp(place("x1", "x2"), order);
    const PolySeries g = ts_exp(place("x3", "x4"), order);
    const PolySeries m4 = pairing_in_var(f, g, "m");

    std::array<std::string, 4> names{"x1", "x2", "x3", "x4"};
    std::array<int, 4> perm{0, 1, 2, 3};
    do {
        std::map<std::string, std::string> ren;
        for (std::size_t i = 0; i < 4; ++i) ren[names[i]] = names[static_cast<std::size_t>(perm[i])];
        for (int d = 0; d <= order; ++d)
            if (m4[d].rename(ren) != m4[d]) return false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return true;
}

inline bool wdvv_check(int parity, int order) {
    return wdvv_check(vertex_potential({"p", "q", "r"}, parity), {"p", "q", "r"}, order);
}

} // namespace gpot
