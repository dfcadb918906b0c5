#include <random>

#include <gtest/gtest.h>

#include "gpot/periods.hpp"
#include "gpot/tqft.hpp"

using namespace gpot;

namespace {

ScalarSeries scalar(const BoundaryState& s) {
    std::vector<Rational> c;
    for (const auto& p : s.value.coeffs()) c.push_back(p.constant_term());
    return ScalarSeries(s.order, std::move(c));
}

bool same_state(const BoundaryState& a, const BoundaryState& b) {
    return a.leaf_vars == b.leaf_vars && a.order == b.order && a.value == b.value;
}

// B(t u) through t^D for a polynomial u.
PolySeries bessel_of(const RationalPoly& u, int D) {
    PolySeries s = PolySeries::zero(D, u);
    const ScalarSeries b = bessel(D);
    RationalPoly power = RationalPoly::constant(u.vars(), 1);
    for (int d = 0; d <= D; ++d) {
        s[d] = power.scaled(b[d]);
        power = power * u;
    }
    return s;
}

KernelMatrix random_kernel(int D, std::mt19937& rng) {
    KernelMatrix m(D);
    for (int i = -D; i <= D; ++i)
        for (int j = -D; j <= D; ++j)
            for (int d = 0; d <= D; ++d)
                m.coeff(i, j, d) = Rational(static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 3) + 1);
    return m;
}

ScalarSeries genus_two_odd(int D) {
    std::vector<Rational> c(static_cast<std::size_t>(D) + 1, Rational(0));
    for (int n = 0; 2 * n <= D; ++n) {
        const Integer f = factorial(static_cast<unsigned>(2 * n)), m = factorial(static_cast<unsigned>(n));
        c[static_cast<std::size_t>(2 * n)] = Rational(f * f, m * m * m * m * m * m);
    }
    return ScalarSeries(D, std::move(c));
}

} // namespace

TEST(Bessel, Coefficients) {
    EXPECT_EQ(bessel(4), ScalarSeries(4, {Rational(1), Rational(0), Rational(1), Rational(0), Rational(1, 4)}));
    EXPECT_EQ(bessel(6)[6], Rational(1, 36));
    EXPECT_EQ(bessel(6)[1], 0);
    EXPECT_EQ(bessel(0), ScalarSeries(0, {Rational(1)}));
    EXPECT_THROW(bessel(-1), structural_error);
}

TEST(T1Kernel, MatchesDirectExpansion) {
    const int D = 8;
    const VarList vars = make_varlist({"x", "y"});
    auto x = [&](int p) { return RationalPoly::variable(vars, "x", p); };
    auto y = [&](int p) { return RationalPoly::variable(vars, "y", p); };
    const PolySeries direct = bessel_of(x(1) + y(1), D) * bessel_of(x(-1) + y(-1), D);
    EXPECT_TRUE(same_state(kernel_to_state(t1_kernel(D)), BoundaryState{vars, D, direct}));
}

TEST(T1Kernel, MatchesOpenNecklaceState) {
    // The one-bead necklace with its second leaf reversed realizes T1(x, 1/y).
    const int D = 6;
    const auto a = t1_kernel(D);
    const auto s = k_state(open_necklace(1, 1), D);
    for (int i = -D; i <= D; ++i)
        for (int j = -D; j <= D; ++j)
            for (int d = 0; d <= D; ++d) EXPECT_EQ(s.value[d].coefficient({i, -j}), a.coeff(i, j, d));
    EXPECT_EQ(a.coeff(0, 0, 2), 0);
    EXPECT_EQ(a.coeff(1, 1, 2), 2);
    EXPECT_EQ(a.coeff(-1, -1, 2), 2);
    EXPECT_EQ(a.coeff(0, 0, 4), 6);
    EXPECT_EQ(a.entry(1, 0), ScalarSeries::zero(D, Rational(0)));
}

TEST(T1Kernel, SupportParitySymmetry) {
    const int D = 12;
    const auto a = t1_kernel(D);
    for (int i = -D; i <= D; ++i)
        for (int j = -D; j <= D; ++j) {
            EXPECT_EQ(a.entry(i, j), a.entry(j, i));
            EXPECT_EQ(a.entry(i, j), a.entry(-i, -j));
            EXPECT_EQ(a.entry(i, -j), a.entry(-i, j));
            for (int d = 0; d <= D; ++d) {
                const bool allowed = std::max(std::abs(i), std::abs(j)) <= d && (i + j) % 2 == 0 && d % 2 == 0;
                if (!allowed) EXPECT_EQ(a.coeff(i, j, d), 0) << i << "," << j << "," << d;
            }
        }
}

TEST(Operators, FlipIdentities) {
    const int D = 8;
    const auto a = t1_kernel(D);
    const auto s = flip_operator(D);
    const auto id = identity_kernel(D);
    EXPECT_EQ(kernel_compose(s, s), id);
    EXPECT_EQ(kernel_compose(a, s), kernel_compose(s, a));
    EXPECT_EQ(kernel_trace(s), ScalarSeries::one(D, Rational(0)));
    EXPECT_EQ(kernel_compose(a, id), a);
    EXPECT_EQ(kernel_compose(id, a), a);
}

TEST(Operators, ComposeIsAssociative) {
    std::mt19937 rng(3);
    const int D = 2;
    const auto p = random_kernel(D, rng), q = random_kernel(D, rng), r = random_kernel(D, rng);
    EXPECT_EQ(kernel_compose(kernel_compose(p, q), r), kernel_compose(p, kernel_compose(q, r)));
    EXPECT_EQ(kernel_compose(p, identity_kernel(D)), p);
    EXPECT_THROW(kernel_compose(p, identity_kernel(3)), structural_error);
}

TEST(Operators, ThreadedComposeMatchesSerial) {
    const auto a = t1_kernel(12);
    EXPECT_EQ(kernel_compose(a, a, 4), kernel_compose(a, a, 1));
    EXPECT_EQ(trace_formula(5, 1, 12, 4), trace_formula(5, 1, 12, 1));
}

TEST(Operators, TkIsConvolutionPower) {
    const int D = 8;
    const auto a = t1_kernel(D);
    const auto s = flip_operator(D);
    EXPECT_EQ(tk_kernel(1, D), a);
    EXPECT_EQ(tk_kernel(2, D), kernel_compose(kernel_compose(a, a), s));
    EXPECT_EQ(tk_kernel(3, D), kernel_compose(tk_kernel(2, D), kernel_compose(s, a)));
}

TEST(TraceFormula, GenusTwoOdd) {
    EXPECT_EQ(trace_formula(2, 1, 12), genus_two_odd(12));
    EXPECT_EQ(kernel_trace(t1_kernel(12)), genus_two_odd(12));
}

TEST(TraceFormula, GenusTwoEven) {
    auto s = periods_from_laplace(trace_formula(2, 0, 12));
    EXPECT_EQ(s.pi[4], 384);
    EXPECT_EQ(s.pi[8], 645120);
    EXPECT_EQ(s.pi[12], 1513881600);
    const auto a = t1_kernel(12);
    EXPECT_EQ(kernel_trace(kernel_compose(a, flip_operator(12))), trace_formula(2, 0, 12));
}

TEST(TraceFormula, MatchesBruteForceGenusThree) {
    const auto g3 = enumerate_trivalent(3);
    for (int parity : {0, 1}) {
        ColoredGraph g = g3.front();
        g.vertices[0].color = parity;
        EXPECT_EQ(trace_formula(3, parity, 8),
                  ScalarSeries(8, inverse_laplace(periods_bruteforce(graph_potential(g).potential, 8)).phat));
    }
}

TEST(TraceFormula, MatchesBruteForceGenusFour) {
    for (int parity : {0, 1}) {
        auto brute = periods_bruteforce(graph_potential(closed_necklace(4, parity)).potential, 6);
        EXPECT_EQ(periods_from_laplace(trace_formula(4, parity, 6)), brute);
    }
}

TEST(TraceFormula, IntegralThroughGenusTen) {
    const auto table = trace_table(10, 16);
    EXPECT_EQ(table.size(), 18u);
    for (const auto& [key, series] : table) {
        EXPECT_NO_THROW(periods_from_laplace(series)) << key.first << "," << key.second;
        EXPECT_EQ(series, trace_formula(key.first, key.second, 16));
    }
    EXPECT_THROW(trace_formula(1, 0, 4), structural_error);
}

TEST(States, LeaflessThetaIsLaplaceSeries) {
    auto s = k_state(theta_graph(0, 1), 12);
    EXPECT_TRUE(s.leaf_vars.empty());
    EXPECT_EQ(scalar(s), genus_two_odd(12));
}

TEST(States, SingleVertexIsExponential) {
    ColoredGraph tripod{{{"v", 0}}, {}, {{"x", "v"}, {"y", "v"}, {"z", "v"}}};
    auto s = k_state(tripod, 3);
    EXPECT_EQ(s.value, ts_exp(vertex_potential({"x", "y", "z"}, 0), 3));
}

TEST(States, NecklaceMatchesBruteForce) {
    for (int genus : {1, 2})
        for (int parity : {0, 1})
            EXPECT_TRUE(same_state(k_state(open_necklace(genus, parity), 6), necklace_state(genus, parity, 6)))
                << genus << "," << parity;
    EXPECT_TRUE(same_state(k_state(open_necklace(3, 1), 4), necklace_state(3, 1, 4)));
}

TEST(States, NecklaceGenusOneOddIsFlippedKernel) {
    const int D = 6;
    EXPECT_TRUE(same_state(necklace_state(1, 1, D), kernel_to_state(kernel_compose(t1_kernel(D), flip_operator(D)))));
    EXPECT_TRUE(same_state(necklace_state(2, 0, D), kernel_to_state(tk_kernel(2, D))));
}

TEST(States, GlueClosesNecklace) {
    for (int parity : {0, 1}) {
        auto glued = glue(k_state(open_necklace(1, parity), 10), "x", "y");
        EXPECT_EQ(scalar(glued), trace_formula(2, parity, 10));
        EXPECT_EQ(scalar(glue(k_state(open_necklace(1, parity), 10), "y", "x")), scalar(glued));
    }
    for (int genus = 2; genus <= 6; ++genus)
        for (int parity : {0, 1})
            EXPECT_EQ(scalar(glue(necklace_state(genus - 1, parity, 10), "x", "y")), trace_formula(genus, parity, 10));
}

TEST(States, GlueIgnoresUnmatchedModes) {
    const VarList vars = make_varlist({"x", "y"});
    std::vector<RationalPoly> c(3, RationalPoly(vars));
    c[1] = RationalPoly::variable(vars, "x") * RationalPoly::variable(vars, "y");
    BoundaryState s{vars, 2, PolySeries(2, c)};
    auto g = glue(s, "x", "y");
    for (const auto& p : g.value.coeffs()) EXPECT_TRUE(p.is_zero());
    EXPECT_THROW(glue(s, "x", "x"), structural_error);
    EXPECT_THROW(glue(s, "x", "q"), structural_error);
}

TEST(States, PartialGlueOfFourLeafState) {
    // Joining one leaf of each of two one-bead necklaces yields the two-bead
    // necklace.
    ColoredGraph g = open_necklace(1, 0);
    ColoredGraph h = open_necklace(1, 0);
    for (auto& v : h.vertices) v.id += "h";
    for (auto& e : h.edges) {
        e.id += "h";
        for (auto& end : e.ends) end += "h";
    }
    for (auto& l : h.leaves) {
        l.id += "h";
        l.vertex += "h";
    }
    h.leaves[0].orientation = Orientation::in;
    ColoredGraph both = g;
    both.vertices.insert(both.vertices.end(), h.vertices.begin(), h.vertices.end());
    both.edges.insert(both.edges.end(), h.edges.begin(), h.edges.end());
    both.leaves.insert(both.leaves.end(), h.leaves.begin(), h.leaves.end());
    auto glued = glue(k_state(both, 6), "y", "xh");
    auto joined = k_state(join_leaves(both, "y", "xh", "bridge"), 6);
    EXPECT_TRUE(same_state(glued, joined));
}

TEST(Wdvv, BothParities) {
    EXPECT_TRUE(wdvv_check(0, 6));
    EXPECT_TRUE(wdvv_check(1, 6));
}

TEST(Wdvv, PerturbedPotentialFails) {
    for (int parity : {0, 1}) {
        RationalPoly w = vertex_potential({"p", "q", "r"}, parity);
        w.add_term(w.terms().begin()->first, Rational(-1));
        ASSERT_EQ(w.size(), 3u);
        EXPECT_FALSE(wdvv_check(w, {"p", "q", "r"}, 4));
    }
}
