#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "laurent.hpp"

namespace gpot {

namespace detail {

struct SlotVar {
    std::size_t index;
    int sign;
};

// Adds the four monomials prod x_i^{s_i * sign_i} with an even (parity 0) or
// odd (parity 1) number of negative s_i. Repeated slots multiply.
inline void add_vertex_terms(RationalPoly& out, const std::array<SlotVar, 3>& slots, int parity) {
    for (int mask = 0; mask < 8; ++mask) {
        if (__builtin_popcount(static_cast<unsigned>(mask)) % 2 != parity % 2) continue;
        Exponent e(out.vars().size(), 0);
        for (int i = 0; i < 3; ++i) {
            const int s = (mask >> i) & 1 ? -1 : 1;
            e[slots[static_cast<std::size_t>(i)].index] += s * slots[static_cast<std::size_t>(i)].sign;
        }
        out.add_term(std::move(e), Rational(1));
    }
}

} // namespace detail

/// Sum over sign triples of x^{±1} y^{±1} z^{±1} with the number of inverses
/// congruent to `parity` mod 2. Repeated names model loops.
inline RationalPoly vertex_potential(const std::array<std::string, 3>& slots, int parity) {
    VarList vars = make_varlist({slots[0], slots[1], slots[2]});
    RationalPoly p(vars);
    detail::add_vertex_terms(p, {detail::SlotVar{p.var_index(slots[0]), 1},
                                 detail::SlotVar{p.var_index(slots[1]), 1},
                                 detail::SlotVar{p.var_index(slots[2]), 1}},
                             parity);
    return p;
}

/// Graph potential together with its per-vertex summands.
struct PotentialBundle {
    ColoredGraph graph;
    RationalPoly potential;
    std::map<std::string, RationalPoly> per_vertex;
};

/// Edge and leaf ids in canonical order.
inline VarList graph_vars(const ColoredGraph& g) {
    std::vector<std::string> names = g.edge_ids();
    for (const auto& l : g.leaves) names.push_back(l.id);
    return make_varlist(std::move(names));
}

inline RationalPoly vertex_potential_in(const ColoredGraph& g, const std::string& v, const VarList& vars) {
    RationalPoly p(vars);
    const int color = g.vertex(v).color;
    auto slots = slots_at(g, v);
    if (slots.size() != 3) throw structural_error("vertex " + v + " is not trivalent");
    std::array<detail::SlotVar, 3> sv{};
    for (std::size_t i = 0; i < 3; ++i) {
        int sign = 1;
        if (slots[i].leaf && g.leaf(slots[i].id).orientation != default_orientation(color)) sign = -1;
        sv[i] = {p.var_index(slots[i].id), sign};
    }
    detail::add_vertex_terms(p, sv, color);
    return p;
}

inline PotentialBundle graph_potential(const ColoredGraph& g) {
    require_valid(g);
    PotentialBundle b{g, RationalPoly(graph_vars(g)), {}};
    for (const auto& v : g.vertices) {
        RationalPoly p = vertex_potential_in(g, v.id, b.potential.vars());
        b.potential += p;
        b.per_vertex.emplace(v.id, std::move(p));
    }
    return b;
}

/// Potential of the quadrivalent vertex left by contracting an edge:
/// F(a,b,c,d) / (abcd)^2 * z^{-1} + z, with F the parity-dependent product.
inline RationalPoly quadrivalent_potential(const std::array<std::string, 4>& slots, const std::string& z, int parity) {
    for (const auto& s : slots)
        if (s == z) throw structural_error("contraction variable '" + z + "' collides with a slot variable");
    VarList vars = make_varlist({slots[0], slots[1], slots[2], slots[3], z});
    auto var = [&](const std::string& n) { return RationalPoly::variable(vars, n); };
    const RationalPoly a = var(slots[0]), b = var(slots[1]), c = var(slots[2]), d = var(slots[3]);
    const RationalPoly one = RationalPoly::constant(vars, 1);
    RationalPoly f(vars);
    if (parity % 2 == 0)
        f = (a * b + c * d) * (a * d + b * c) * (a * c + b * d) * (one + a * b * c * d);
    else
        f = (a + b * c * d) * (b + a * c * d) * (c + a * b * d) * (d + a * b * c);
    Exponent shift(vars.size(), 0);
    for (const auto& s : slots) shift[f.var_index(s)] -= 2;
    shift[f.var_index(z)] -= 1;
    return f.shifted(shift) + var(z);
}

/// tau -> 0 degeneration of tau * W: at each vertex the distinguished slot
/// x becomes tau/x and the other two y, z become y/tau, z/tau; the tau^0
/// part is returned. Requires a connected uncolored genus-0 graph with at
/// least three leaves and a distinguished slot at every vertex.
inline RationalPoly grassmannian_limit(const ColoredGraph& g, const std::map<std::string, std::string>& distinguished) {
    require_valid(g);
    auto v = validate(g);
    if (v.components != 1) throw structural_error("grassmannian limit needs a connected graph");
    if (v.genus != 0) throw structural_error("grassmannian limit needs genus 0, got " + std::to_string(v.genus));
    if (g.leaves.size() < 3) throw structural_error("grassmannian limit needs at least three leaves");
    for (const auto& vx : g.vertices)
        if (vx.color != 0) throw structural_error("grassmannian limit needs all colors 0; vertex " + vx.id + " is colored");

    const VarList base = graph_vars(g);
    std::string tau = "tau";
    while (std::find(base.begin(), base.end(), tau) != base.end()) tau += "_";
    const VarList vars = merge_varlists(base, {tau});
    RationalPoly out(vars);
    const std::size_t ti = out.var_index(tau);

    for (const auto& vx : g.vertices) {
        auto it = distinguished.find(vx.id);
        if (it == distinguished.end()) throw structural_error("no distinguished slot at vertex " + vx.id);
        auto slots = slots_at(g, vx.id);
        bool found = false;
        for (const auto& s : slots) found |= s.id == it->second;
        if (!found) throw structural_error("distinguished slot '" + it->second + "' is not incident to vertex " + vx.id);

        RationalPoly w = vertex_potential_in(g, vx.id, vars);
        const std::size_t xi = w.var_index(it->second);
        RationalPoly sub(vars);
        for (const auto& [e, c] : w.terms()) {
            Exponent f = e;
            int tau_pow = 1;
            for (const auto& s : slots) {
                const std::size_t k = w.var_index(s.id);
                if (k == xi) continue;
                tau_pow -= e[k];
            }
            tau_pow += e[xi];
            f[xi] = -e[xi];
            f[ti] = tau_pow;
            sub.add_term(std::move(f), c);
        }
        out += sub;
    }
    return out.filter([&](const Exponent& e, const Rational&) { return e[ti] == 0; }).constant_term_in(tau);
}

} // namespace gpot
