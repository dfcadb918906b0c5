#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "number.hpp"

namespace gpot {

enum class Orientation { out, in };

struct Vertex {
    std::string id;
    int color = 0;
};

struct Edge {
    std::string id;
    std::array<std::string, 2> ends;
    bool is_loop() const { return ends[0] == ends[1]; }
};

struct Leaf {
    std::string id;
    std::string vertex;
    Orientation orientation = Orientation::out;
};

/// Leaf orientation a vertex of the given color expects; a stored
/// orientation that disagrees inverts the leaf variable in the potential.
inline Orientation default_orientation(int color) {
    return color == 0 ? Orientation::out : Orientation::in;
}

/// Trivalent multigraph with loops, an F2 vertex coloring, internal edges
/// and leaves. Edge and leaf ids double as Laurent variable names.
struct ColoredGraph {
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    std::vector<Leaf> leaves;

    std::size_t vertex_index(const std::string& id) const {
        for (std::size_t i = 0; i < vertices.size(); ++i)
            if (vertices[i].id == id) return i;
        throw structural_error("unknown vertex '" + id + "'");
    }
    const Vertex& vertex(const std::string& id) const { return vertices[vertex_index(id)]; }
    Vertex& vertex(const std::string& id) { return vertices[vertex_index(id)]; }

    std::size_t edge_index(const std::string& id) const {
        for (std::size_t i = 0; i < edges.size(); ++i)
            if (edges[i].id == id) return i;
        throw structural_error("unknown internal edge '" + id + "'");
    }
    const Edge& edge(const std::string& id) const { return edges[edge_index(id)]; }

    std::size_t leaf_index(const std::string& id) const {
        for (std::size_t i = 0; i < leaves.size(); ++i)
            if (leaves[i].id == id) return i;
        throw structural_error("unknown leaf '" + id + "'");
    }
    const Leaf& leaf(const std::string& id) const { return leaves[leaf_index(id)]; }

    bool has_edge(const std::string& id) const {
        return std::any_of(edges.begin(), edges.end(), [&](const Edge& e) { return e.id == id; });
    }

    int color_sum() const {
        int s = 0;
        for (const auto& v : vertices) s += v.color;
        return s % 2;
    }

    std::vector<std::string> edge_ids() const {
        std::vector<std::string> out;
        for (const auto& e : edges) out.push_back(e.id);
        return out;
    }
    std::vector<std::string> leaf_ids() const {
        std::vector<std::string> out;
        for (const auto& l : leaves) out.push_back(l.id);
        return out;
    }
};

/// Parity class of the potential: colors plus leaves stored against their
/// vertex's default orientation. For leafless graphs this is the color parity.
inline int effective_parity(const ColoredGraph& g) {
    int p = g.color_sum();
    for (const auto& l : g.leaves)
        if (l.orientation != default_orientation(g.vertex(l.vertex).color)) ++p;
    return p % 2;
}

// ---------------------------------------------------------------- validation

struct Validation {
    std::vector<std::string> problems;
    int components = 0;
    int genus = 0;
    bool ok() const { return problems.empty(); }
};

namespace detail {

inline std::vector<int> component_labels(const ColoredGraph& g, const std::map<std::string, std::size_t>& index) {
    const std::size_t n = g.vertices.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& e : g.edges) {
        auto a = index.find(e.ends[0]);
        auto b = index.find(e.ends[1]);
        if (a == index.end() || b == index.end()) continue;
        parent[find(a->second)] = find(b->second);
    }
    std::vector<int> label(n, -1);
    std::map<std::size_t, int> roots;
    for (std::size_t i = 0; i < n; ++i) {
        auto [it, inserted] = roots.try_emplace(find(i), static_cast<int>(roots.size()));
        label[i] = it->second;
    }
    return label;
}

} // namespace detail

/// Structural checks; collects every violation instead of throwing.
inline Validation validate(const ColoredGraph& g) {
    Validation r;
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        const auto& v = g.vertices[i];
        if (v.id.empty()) r.problems.push_back("vertex with empty id");
        if (!index.emplace(v.id, i).second) r.problems.push_back("duplicate vertex id '" + v.id + "'");
        if (v.color != 0 && v.color != 1)
            r.problems.push_back("vertex " + v.id + " has color " + std::to_string(v.color) + " outside {0,1}");
    }

    std::set<std::string> names;
    auto claim = [&](const std::string& id, const char* what) {
        if (id.empty()) r.problems.push_back(std::string(what) + " with empty id");
        else if (!names.insert(id).second) r.problems.push_back("duplicate edge/leaf id '" + id + "'");
    };

    std::vector<int> degree(g.vertices.size(), 0);
    for (const auto& e : g.edges) {
        claim(e.id, "edge");
        for (const auto& end : e.ends) {
            auto it = index.find(end);
            if (it == index.end()) r.problems.push_back("edge " + e.id + " ends at unknown vertex '" + end + "'");
            else ++degree[it->second];
        }
    }
    for (const auto& l : g.leaves) {
        claim(l.id, "leaf");
        auto it = index.find(l.vertex);
        if (it == index.end()) r.problems.push_back("leaf " + l.id + " attached to unknown vertex '" + l.vertex + "'");
        else ++degree[it->second];
    }
    for (std::size_t i = 0; i < g.vertices.size(); ++i)
        if (degree[i] != 3)
            r.problems.push_back("vertex " + g.vertices[i].id + " degree " + std::to_string(degree[i]) + " != 3");

    auto label = detail::component_labels(g, index);
    r.components = label.empty() ? 0 : *std::max_element(label.begin(), label.end()) + 1;
    const int nv = static_cast<int>(g.vertices.size());
    const int ne = static_cast<int>(g.edges.size());
    const int nl = static_cast<int>(g.leaves.size());
    r.genus = ne - nv + r.components;
    if (r.problems.empty()) {
        // Summed over components: #V = 2g - 2c + n, #E = 3g - 3c + n.
        if (nv != 2 * r.genus - 2 * r.components + nl)
            r.problems.push_back("vertex count " + std::to_string(nv) + " != 2g-2+n for genus " + std::to_string(r.genus));
        if (ne != 3 * r.genus - 3 * r.components + nl)
            r.problems.push_back("edge count " + std::to_string(ne) + " != 3g-3+n for genus " + std::to_string(r.genus));
    }
    return r;
}

inline void require_valid(const ColoredGraph& g) {
    auto v = validate(g);
    if (v.ok()) return;
    std::string msg = "invalid graph:";
    for (const auto& p : v.problems) msg += "\n  " + p;
    throw structural_error(msg);
}

// ------------------------------------------------------------------ homology

/// (rank H0, rank H1) over F2; only internal edges are 1-cells.
inline std::pair<int, int> homology_ranks_f2(const ColoredGraph& g) {
    const std::size_t nv = g.vertices.size();
    std::vector<std::vector<std::uint8_t>> cols;
    for (const auto& e : g.edges) {
        std::vector<std::uint8_t> col(nv, 0);
        col[g.vertex_index(e.ends[0])] ^= 1;
        col[g.vertex_index(e.ends[1])] ^= 1;
        cols.push_back(std::move(col));
    }
    int rank = 0;
    std::size_t row = 0;
    for (std::size_t r = 0; r < nv && row < cols.size(); ++r) {
        std::size_t pivot = row;
        while (pivot < cols.size() && !cols[pivot][r]) ++pivot;
        if (pivot == cols.size()) continue;
        std::swap(cols[row], cols[pivot]);
        for (std::size_t c = 0; c < cols.size(); ++c)
            if (c != row && cols[c][r])
                for (std::size_t k = 0; k < nv; ++k) cols[c][k] ^= cols[row][k];
        ++row;
        ++rank;
    }
    return {static_cast<int>(nv) - rank, static_cast<int>(g.edges.size()) - rank};
}

// ------------------------------------------------------------------ coloring

/// Adds the boundary of an edge to the coloring: flips both endpoints.
inline ColoredGraph coloring_boundary_move(const ColoredGraph& g, const std::string& edge) {
    const Edge& e = g.edge(edge);
    ColoredGraph out = g;
    out.vertex(e.ends[0]).color ^= 1;
    out.vertex(e.ends[1]).color ^= 1;
    return out;
}

/// Pushes colors along a spanning forest toward the least vertex id of each
/// component. Returns the normalized graph and the edges moved across.
inline std::pair<ColoredGraph, std::vector<std::string>> normalize_coloring(const ColoredGraph& g) {
    ColoredGraph out = g;
    std::vector<std::string> moves;
    const std::size_t n = g.vertices.size();

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return g.vertices[a].id < g.vertices[b].id; });

    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n);
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const Edge& e = g.edges[i];
        if (e.is_loop()) continue;
        std::size_t a = g.vertex_index(e.ends[0]);
        std::size_t b = g.vertex_index(e.ends[1]);
        adj[a].push_back({b, i});
        adj[b].push_back({a, i});
    }
    for (auto& list : adj)
        std::sort(list.begin(), list.end(), [&](const auto& x, const auto& y) {
            return g.edges[x.second].id < g.edges[y.second].id;
        });

    std::vector<bool> seen(n, false);
    for (std::size_t root : order) {
        if (seen[root]) continue;
        std::vector<std::size_t> bfs{root};
        std::vector<std::optional<std::size_t>> via(n);
        seen[root] = true;
        for (std::size_t head = 0; head < bfs.size(); ++head) {
            for (auto [w, ei] : adj[bfs[head]]) {
                if (seen[w]) continue;
                seen[w] = true;
                via[w] = ei;
                bfs.push_back(w);
            }
        }
        for (auto it = bfs.rbegin(); it != bfs.rend(); ++it) {
            if (*it == root || out.vertices[*it].color == 0) continue;
            const Edge& e = g.edges[*via[*it]];
            out = coloring_boundary_move(out, e.id);
            moves.push_back(e.id);
        }
    }
    return {std::move(out), std::move(moves)};
}

// ------------------------------------------------------------- edge weights

/// True iff every weight is a half-integer and each vertex sum is integral
/// (loops count twice at their vertex).
inline bool mgamma_member(const ColoredGraph& g, const std::map<std::string, Rational>& w) {
    std::map<std::string, Rational> sums;
    for (const auto& e : g.edges) {
        auto it = w.find(e.id);
        if (it == w.end()) throw structural_error("no weight for edge '" + e.id + "'");
        if (!is_integral(it->second * 2)) return false;
        sums[e.ends[0]] += it->second;
        sums[e.ends[1]] += it->second;
    }
    for (const auto& [v, s] : sums)
        if (!is_integral(s)) return false;
    return true;
}

// ---------------------------------------------------- elementary transformation

/// One incidence of an edge end or a leaf at a vertex.
struct Slot {
    bool leaf = false;
    std::string id;
    int end = 0;
    friend bool operator<(const Slot& a, const Slot& b) {
        return std::tie(a.id, a.end) < std::tie(b.id, b.end);
    }
    friend bool operator==(const Slot& a, const Slot& b) {
        return a.leaf == b.leaf && a.id == b.id && a.end == b.end;
    }
};

/// Incidences at `v` other than those of `skip_edge`, ordered by (id, end).
inline std::vector<Slot> slots_at(const ColoredGraph& g, const std::string& v, const std::string& skip_edge = {}) {
    std::vector<Slot> out;
    for (const auto& e : g.edges) {
        if (e.id == skip_edge) continue;
        for (int k = 0; k < 2; ++k)
            if (e.ends[static_cast<std::size_t>(k)] == v) out.push_back({false, e.id, k});
    }
    for (const auto& l : g.leaves)
        if (l.vertex == v) out.push_back({true, l.id, 0});
    std::sort(out.begin(), out.end());
    return out;
}

/// The four slots (a, b | c, d) around a non-loop edge: a, b at ends[0],
/// c, d at ends[1].
inline std::array<Slot, 4> mutation_slots(const ColoredGraph& g, const std::string& edge) {
    const Edge& x = g.edge(edge);
    if (x.is_loop()) throw structural_error("cannot mutate at a loop");
    auto s1 = slots_at(g, x.ends[0], edge);
    auto s2 = slots_at(g, x.ends[1], edge);
    if (s1.size() != 2 || s2.size() != 2) throw structural_error("endpoints of '" + edge + "' are not trivalent");
    return {s1[0], s1[1], s2[0], s2[1]};
}

namespace detail {

inline void move_slot(ColoredGraph& g, const Slot& s, const std::string& from, const std::string& to) {
    if (s.leaf) {
        Leaf& l = g.leaves[g.leaf_index(s.id)];
        l.vertex = to;
        // Keep the leaf's variable monomial unchanged across a color change.
        if (g.vertex(from).color != g.vertex(to).color)
            l.orientation = l.orientation == Orientation::out ? Orientation::in : Orientation::out;
    } else {
        g.edges[g.edge_index(s.id)].ends[static_cast<std::size_t>(s.end)] = to;
    }
}

} // namespace detail

/// Re-pairs (a,b | c,d) across `edge` into (a,c | b,d): slot b moves to the
/// second endpoint, slot c to the first. Ids and colors are kept.
inline ColoredGraph elementary_transformation(const ColoredGraph& g, const std::string& edge) {
    auto s = mutation_slots(g, edge);
    const Edge& x = g.edge(edge);
    ColoredGraph out = g;
    detail::move_slot(out, s[1], x.ends[0], x.ends[1]);
    detail::move_slot(out, s[2], x.ends[1], x.ends[0]);
    return out;
}

/// Turns two leaves into one internal edge. Endpoint colors absorb any leaf
/// stored against its default orientation, so the potential of the result
/// is the potential of `g` with both leaf variables set to the new edge's.
inline ColoredGraph join_leaves(const ColoredGraph& g, const std::string& leaf_a, const std::string& leaf_b,
                                const std::string& edge_id) {
    if (leaf_a == leaf_b) throw structural_error("cannot join a leaf to itself");
    const Leaf la = g.leaf(leaf_a);
    const Leaf lb = g.leaf(leaf_b);
    ColoredGraph out = g;
    for (const Leaf* l : {&la, &lb})
        if (l->orientation != default_orientation(g.vertex(l->vertex).color)) out.vertex(l->vertex).color ^= 1;
    std::erase_if(out.leaves, [&](const Leaf& l) { return l.id == leaf_a || l.id == leaf_b; });
    for (const auto& e : out.edges)
        if (e.id == edge_id) throw structural_error("edge id '" + edge_id + "' already in use");
    for (const auto& l : out.leaves)
        if (l.id == edge_id) throw structural_error("edge id '" + edge_id + "' already in use");
    out.edges.push_back({edge_id, {la.vertex, lb.vertex}});
    return out;
}

// ------------------------------------------------------------- isomorphism

/// Lexicographically least description over all vertex relabelings.
/// Encodes colors (optional), the upper-triangular multiplicity matrix with
/// loops on the diagonal, and per-vertex leaf counts. Ids are forgotten.
inline std::vector<int> canonical_form(const ColoredGraph& g, bool with_colors = true) {
    const std::size_t n = g.vertices.size();
    std::vector<std::vector<int>> mult(n, std::vector<int>(n, 0));
    for (const auto& e : g.edges) {
        std::size_t a = g.vertex_index(e.ends[0]);
        std::size_t b = g.vertex_index(e.ends[1]);
        ++mult[a][b];
        if (a != b) ++mult[b][a];
    }
    std::vector<int> leaves(n, 0);
    for (const auto& l : g.leaves) ++leaves[g.vertex_index(l.vertex)];

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::vector<int> best;
    std::vector<int> key;
    do {
        key.clear();
        key.push_back(static_cast<int>(n));
        for (std::size_t i = 0; i < n; ++i) key.push_back(with_colors ? g.vertices[perm[i]].color : 0);
        for (std::size_t i = 0; i < n; ++i) key.push_back(leaves[perm[i]]);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) key.push_back(mult[perm[i]][perm[j]]);
        if (best.empty() || key < best) best = key;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

inline bool is_isomorphic(const ColoredGraph& a, const ColoredGraph& b, bool with_colors = true) {
    return canonical_form(a, with_colors) == canonical_form(b, with_colors);
}

// ------------------------------------------------------------- named graphs

inline std::string edge_name(std::size_t i) {
    std::string s;
    do {
        s.insert(s.begin(), static_cast<char>('a' + i % 26));
        i /= 26;
    } while (i-- > 0);
    return s;
}

inline ColoredGraph theta_graph(int c1 = 0, int c2 = 0) {
    return {{{"1", c1}, {"2", c2}}, {{"a", {"1", "2"}}, {"b", {"1", "2"}}, {"c", {"1", "2"}}}, {}};
}

/// Loop `b` at vertex 1, loop `c` at vertex 2, bridge `a`.
inline ColoredGraph dumbbell_graph(int c1 = 0, int c2 = 0) {
    return {{{"1", c1}, {"2", c2}}, {{"a", {"1", "2"}}, {"b", {"1", "1"}}, {"c", {"2", "2"}}}, {}};
}

/// Chain of `beads` two-vertex circles joined by single edges, with leaf
/// `x` at the first vertex and leaf `y` at the last (genus = beads, 2 leaves).
/// All vertices uncolored; `y` is stored "in" for odd parity.
inline ColoredGraph open_necklace(int beads, int parity) {
    if (beads < 1) throw structural_error("open necklace needs at least one bead");
    ColoredGraph g;
    std::size_t next_edge = 0;
    auto vid = [](int k) { return "v" + std::to_string(k); };
    for (int k = 0; k < 2 * beads; ++k) g.vertices.push_back({vid(k), 0});
    for (int b = 0; b < beads; ++b) {
        g.edges.push_back({"e" + std::to_string(next_edge++), {vid(2 * b), vid(2 * b + 1)}});
        g.edges.push_back({"e" + std::to_string(next_edge++), {vid(2 * b), vid(2 * b + 1)}});
        if (b + 1 < beads) g.edges.push_back({"e" + std::to_string(next_edge++), {vid(2 * b + 1), vid(2 * b + 2)}});
    }
    g.leaves.push_back({"x", vid(0), Orientation::out});
    g.leaves.push_back({"y", vid(2 * beads - 1), parity ? Orientation::in : Orientation::out});
    return g;
}

/// Closed necklace of genus g >= 2: g-1 beads in a ring, vertex 1 colored
/// when parity is odd.
inline ColoredGraph closed_necklace(int genus, int parity) {
    if (genus < 2) throw structural_error("closed necklace needs genus >= 2");
    ColoredGraph g = open_necklace(genus - 1, 0);
    g = join_leaves(g, "x", "y", "e" + std::to_string(g.edges.size()));
    if (parity) g.vertices[0].color = 1;
    return g;
}

// -------------------------------------------------------------- enumeration

namespace detail {

inline void matchings(std::vector<int>& partner, std::vector<std::vector<int>>& out) {
    auto it = std::find(partner.begin(), partner.end(), -1);
    if (it == partner.end()) {
        out.push_back(partner);
        return;
    }
    const int s = static_cast<int>(it - partner.begin());
    for (int t = s + 1; t < static_cast<int>(partner.size()); ++t) {
        if (partner[static_cast<std::size_t>(t)] != -1) continue;
        partner[static_cast<std::size_t>(s)] = t;
        partner[static_cast<std::size_t>(t)] = s;
        matchings(partner, out);
        partner[static_cast<std::size_t>(s)] = -1;
        partner[static_cast<std::size_t>(t)] = -1;
    }
}

} // namespace detail

/// Connected leafless uncolored trivalent graphs of genus 2 or 3, one per
/// isomorphism class, from all perfect matchings of the half-edge stubs.
inline std::vector<ColoredGraph> enumerate_trivalent(int genus) {
    if (genus != 2 && genus != 3) throw structural_error("enumeration supports genus 2 and 3 only");
    const int nv = 2 * genus - 2;
    std::vector<int> partner(static_cast<std::size_t>(3 * nv), -1);
    std::vector<std::vector<int>> all;
    detail::matchings(partner, all);

    std::vector<ColoredGraph> out;
    std::set<std::vector<int>> seen;
    for (const auto& m : all) {
        ColoredGraph g;
        for (int v = 0; v < nv; ++v) g.vertices.push_back({std::to_string(v + 1), 0});
        for (std::size_t s = 0; s < m.size(); ++s) {
            if (static_cast<int>(s) > m[s]) continue;
            g.edges.push_back({edge_name(g.edges.size()),
                               {std::to_string(s / 3 + 1), std::to_string(static_cast<std::size_t>(m[s]) / 3 + 1)}});
        }
        if (homology_ranks_f2(g).first != 1) continue;
        if (seen.insert(canonical_form(g, false)).second) out.push_back(std::move(g));
    }
    return out;
}

} // namespace gpot
