#pragma once

#include <array>
#include <string>
#include <utility>

#include "graph.hpp"
#include "potential.hpp"
#include "rational_expr.hpp"

namespace gpot {

struct MutationCertificate {
    std::string edge;
    bool colored = false;            // endpoint colors differ
    std::array<std::string, 4> slots; // (a, b | c, d)
    RationalPoly mu, nu, mu_prime, nu_prime;
    RationalExpr<Rational> substitution; // x' = mu' / (nu x)
    bool product_identity_checked = false;

    MutationCertificate() : substitution(RationalPoly::constant({}, 1)) {}
};

/// (part touching the endpoints of `edge`, everything else).
inline std::pair<RationalPoly, RationalPoly> split_potential(const PotentialBundle& b, const std::string& edge) {
    const Edge& x = b.graph.edge(edge);
    if (x.is_loop()) throw structural_error("cannot mutate at a loop");
    RationalPoly mut = b.per_vertex.at(x.ends[0]) + b.per_vertex.at(x.ends[1]);
    RationalPoly frozen(b.potential.vars());
    for (const auto& [v, p] : b.per_vertex)
        if (v != x.ends[0] && v != x.ends[1]) frozen += p;
    return {std::move(mut), std::move(frozen)};
}

/// mu, nu, mu', nu' for the move at `edge`, with the slot monomials read
/// off by the slot convention (a leaf stored against its vertex's default
/// orientation enters inverted).
inline MutationCertificate mu_nu_factors(const PotentialBundle& b, const std::string& edge) {
    const ColoredGraph& g = b.graph;
    const Edge& x = g.edge(edge);
    auto s = mutation_slots(g, edge);
    const VarList& vars = b.potential.vars();
    const int c1 = g.vertex(x.ends[0]).color;
    const int c2 = g.vertex(x.ends[1]).color;

    auto slot_monomial = [&](const Slot& sl, const std::string& v) {
        int pow = 1;
        if (sl.leaf && g.leaf(sl.id).orientation != default_orientation(g.vertex(v).color)) pow = -1;
        return RationalPoly::variable(vars, sl.id, pow);
    };
    const RationalPoly a = slot_monomial(s[0], x.ends[0]);
    const RationalPoly bb = slot_monomial(s[1], x.ends[0]);
    const RationalPoly c = slot_monomial(s[2], x.ends[1]);
    const RationalPoly d = slot_monomial(s[3], x.ends[1]);
    const RationalPoly one = RationalPoly::constant(vars, 1);
    const RationalPoly abcd = a * bb * c * d;
    Exponent inv(vars.size(), 0);
    for (const auto& [e, coeff] : abcd.terms())
        for (std::size_t i = 0; i < e.size(); ++i) inv[i] = -e[i];
    auto over_abcd = [&](const RationalPoly& p) { return p.shifted(inv); };

    MutationCertificate cert;
    cert.edge = edge;
    cert.colored = c1 != c2;
    cert.slots = {s[0].id, s[1].id, s[2].id, s[3].id};
    if (!cert.colored) {
        cert.mu = over_abcd((a * d + bb * c) * (a * c + bb * d));
        cert.nu = over_abcd((one + abcd) * (a * bb + c * d));
        cert.mu_prime = over_abcd((a * bb + c * d) * (a * d + bb * c));
        cert.nu_prime = over_abcd((one + abcd) * (a * c + bb * d));
    } else {
        // Formulas for a colored first endpoint.
        cert.mu = over_abcd((c + a * bb * d) * (d + a * bb * c));
        cert.nu = over_abcd((a + bb * c * d) * (bb + a * c * d));
        cert.mu_prime = over_abcd((bb + a * c * d) * (d + a * bb * c));
        cert.nu_prime = over_abcd((a + bb * c * d) * (c + a * bb * d));
    }
    // Both endpoints colored, or only the second: the roles of x and 1/x swap.
    if ((!cert.colored && c1 == 1) || (cert.colored && c2 == 1)) {
        std::swap(cert.mu, cert.nu);
        std::swap(cert.mu_prime, cert.nu_prime);
    }
    const RationalPoly xv = RationalPoly::variable(vars, edge);
    cert.substitution = RationalExpr<Rational>(cert.mu_prime, cert.nu * xv);
    cert.product_identity_checked =
        rexpr_equal(RationalExpr<Rational>(cert.mu * cert.nu), RationalExpr<Rational>(cert.mu_prime * cert.nu_prime));
    return cert;
}

/// mu / x + nu x as a Laurent polynomial in the variables of mu and nu.
inline RationalPoly laurent_in_edge(const RationalPoly& mu, const RationalPoly& nu, const std::string& x) {
    return mu * RationalPoly::variable(mu.vars(), x, -1) + nu * RationalPoly::variable(mu.vars(), x);
}

/// Checks a certificate against the split potentials of source and target:
/// both mutated parts have the claimed x-expansion, frozen parts agree
/// term by term, mu nu = mu' nu', and x -> mu'/(nu x) carries the target's
/// mutated part onto the source's.
inline bool verify_certificate(const MutationCertificate& cert, const RationalPoly& mut, const RationalPoly& frozen,
                               const RationalPoly& mut_prime, const RationalPoly& frozen_prime) {
    if (frozen != frozen_prime) return false;
    if (mut != laurent_in_edge(cert.mu, cert.nu, cert.edge)) return false;
    if (mut_prime != laurent_in_edge(cert.mu_prime, cert.nu_prime, cert.edge)) return false;
    if (cert.mu * cert.nu != cert.mu_prime * cert.nu_prime) return false;
    const RationalPoly xv = RationalPoly::variable(mut.vars(), cert.edge);
    const RationalExpr<Rational> x_prime(cert.mu_prime, cert.nu * xv);
    const auto pulled_back = rexpr_substitute(mut_prime, cert.edge, x_prime);
    return rexpr_equal(pulled_back, RationalExpr<Rational>(mut));
}

inline bool verify_mutation(const PotentialBundle& b, const std::string& edge) {
    const MutationCertificate cert = mu_nu_factors(b, edge);
    if (!cert.product_identity_checked) return false;
    const PotentialBundle target = graph_potential(elementary_transformation(b.graph, edge));
    auto [mut, frozen] = split_potential(b, edge);
    auto [mut_p, frozen_p] = split_potential(target, edge);
    return verify_certificate(cert, mut, frozen, mut_p, frozen_p);
}

/// Transformed graph's potential plus the certificate; throws
/// consistency_error if the certificate does not verify.
inline std::pair<PotentialBundle, MutationCertificate> mutate(const PotentialBundle& b, const std::string& edge) {
    MutationCertificate cert = mu_nu_factors(b, edge);
    PotentialBundle target = graph_potential(elementary_transformation(b.graph, edge));
    auto [mut, frozen] = split_potential(b, edge);
    auto [mut_p, frozen_p] = split_potential(target, edge);
    if (!cert.product_identity_checked || !verify_certificate(cert, mut, frozen, mut_p, frozen_p))
        throw consistency_error("mutation at '" + edge + "' failed verification");
    return {std::move(target), std::move(cert)};
}

} // namespace gpot
