#include <map>

#include <gtest/gtest.h>

#include "gpot/periods.hpp"

using namespace gpot;

namespace {

std::vector<Integer> ints(std::initializer_list<long long> v) {
    std::vector<Integer> out;
    for (long long x : v) out.emplace_back(x);
    return out;
}

} // namespace

TEST(BrutePeriods, ThetaOddParity) {
    auto s = periods_bruteforce(graph_potential(theta_graph(0, 1)).potential, 12);
    EXPECT_EQ(s.pi, ints({1, 0, 8, 0, 216, 0, 8000, 0, 343000, 0, 16003008, 0, 788889024}));
}

TEST(BrutePeriods, ThetaEvenParity) {
    auto s = periods_bruteforce(graph_potential(theta_graph(0, 0)).potential, 12);
    EXPECT_EQ(s.pi, ints({1, 0, 0, 0, 384, 0, 0, 0, 645120, 0, 0, 0, 1513881600}));
}

TEST(BrutePeriods, ConstantOne) {
    auto s = periods_bruteforce(RationalPoly::constant(make_varlist({"a"}), 1), 5);
    EXPECT_EQ(s.pi, ints({1, 1, 1, 1, 1, 1}));
    EXPECT_EQ(periods_bruteforce(RationalPoly::constant({}, 1), 3).pi, ints({1, 1, 1, 1}));
    EXPECT_THROW(periods_bruteforce(RationalPoly::constant({}, 1), -1), structural_error);
}

TEST(BrutePeriods, RejectsFractionalCoefficients) {
    EXPECT_ANY_THROW(periods_bruteforce(RationalPoly::constant(make_varlist({"a"}), Rational(1, 2)), 2));
}

TEST(BrutePeriods, CentralBinomialCubes) {
    auto s = periods_bruteforce(graph_potential(dumbbell_graph(0, 1)).potential, 16);
    for (unsigned n = 0; n <= 8; ++n) {
        const Integer c = binomial(2 * n, n);
        EXPECT_EQ(s.pi[2 * n], c * c * c) << n;
    }
}

TEST(BrutePeriods, DumbbellMatchesTheta) {
    for (int parity : {0, 1})
        EXPECT_EQ(periods_bruteforce(graph_potential(dumbbell_graph(0, parity)).potential, 12),
                  periods_bruteforce(graph_potential(theta_graph(0, parity)).potential, 12));
}

TEST(BrutePeriods, ThreadCountDoesNotChangeResult) {
    for (const auto& g : enumerate_trivalent(3)) {
        const auto w = graph_potential(g).potential;
        EXPECT_EQ(periods_bruteforce(w, 8, 1), periods_bruteforce(w, 8, 4));
    }
}

TEST(InverseLaplace, Values) {
    auto l = inverse_laplace(periods_bruteforce(graph_potential(theta_graph(0, 1)).potential, 12));
    EXPECT_EQ(l.phat[0], 1);
    EXPECT_EQ(l.phat[2], 4);
    for (unsigned n = 0; n <= 6; ++n) {
        const Integer f = factorial(2 * n), m = factorial(n);
        EXPECT_EQ(l.phat[2 * n], Rational(f * f, m * m * m * m * m * m));
    }
    for (std::size_t k = 1; k < l.phat.size(); k += 2) EXPECT_EQ(l.phat[k], 0);
    auto back = periods_from_laplace(ScalarSeries(static_cast<int>(l.phat.size()) - 1, l.phat));
    EXPECT_EQ(back.pi, periods_bruteforce(graph_potential(theta_graph(0, 1)).potential, 12).pi);
}

TEST(InverseLaplace, NonIntegralIsAConsistencyError) {
    ScalarSeries s(2, {Rational(1), Rational(0), Rational(1, 3)});
    EXPECT_THROW(periods_from_laplace(s), consistency_error);
}

TEST(GraphPeriods, MethodsAgreeGenusTwo) {
    for (int parity : {0, 1}) {
        auto brute = periods_of_graph(theta_graph(0, parity), 12, PeriodMethod::brute);
        auto tqft = periods_of_graph(theta_graph(0, parity), 12, PeriodMethod::tqft);
        EXPECT_EQ(brute, tqft);
        EXPECT_EQ(brute.fingerprint, "g2e" + std::to_string(parity));
    }
}

TEST(GraphPeriods, MethodsAgreeGenusThree) {
    for (const auto& g0 : enumerate_trivalent(3))
        for (int parity : {0, 1}) {
            ColoredGraph g = g0;
            g.vertices[0].color = parity;
            EXPECT_EQ(periods_of_graph(g, 8, PeriodMethod::brute), periods_of_graph(g, 8, PeriodMethod::tqft));
        }
}

TEST(GraphPeriods, TqftNeedsClosedConnectedGraph) {
    EXPECT_THROW(periods_of_graph(open_necklace(2, 0), 4, PeriodMethod::tqft), structural_error);
    ColoredGraph two = theta_graph();
    two.vertices.push_back({"3", 0});
    two.vertices.push_back({"4", 0});
    for (const char* id : {"d", "e", "f"}) two.edges.push_back({id, {"3", "4"}});
    EXPECT_THROW(periods_of_graph(two, 4, PeriodMethod::tqft), structural_error);
    ColoredGraph bad = theta_graph();
    bad.edges.pop_back();
    EXPECT_THROW(periods_of_graph(bad, 4, PeriodMethod::brute), structural_error);
}

TEST(GraphPeriods, OnlyGenusAndParityMatter) {
    std::map<std::string, PeriodSequence> seen;
    for (int genus : {2, 3})
        for (const auto& g0 : enumerate_trivalent(genus))
            for (int mask = 0; mask < (1 << g0.vertices.size()); ++mask) {
                ColoredGraph g = g0;
                for (std::size_t i = 0; i < g.vertices.size(); ++i) g.vertices[i].color = (mask >> i) & 1;
                auto s = periods_of_graph(g, 8, PeriodMethod::brute);
                auto [it, inserted] = seen.emplace(s.fingerprint, s);
                if (!inserted) EXPECT_EQ(s, it->second) << s.fingerprint;
            }
    EXPECT_EQ(seen.size(), 4u);
}

TEST(GraphPeriods, NonNegativeAndOddVanishing) {
    for (const auto& g0 : enumerate_trivalent(3))
        for (int parity : {0, 1}) {
            ColoredGraph g = g0;
            g.vertices[0].color = parity;
            auto s = periods_of_graph(g, 8, PeriodMethod::brute);
            EXPECT_EQ(s.pi[0], 1);
            for (std::size_t k = 0; k < s.pi.size(); ++k) {
                EXPECT_GE(s.pi[k], 0);
                if (k % 2) EXPECT_EQ(s.pi[k], 0);
            }
        }
}
