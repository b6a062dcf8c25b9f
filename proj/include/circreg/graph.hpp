#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace circreg {

inline constexpr std::size_t kMaxVertices = 64;

/// A subset of {0, ..., 63} held as a bitmask.
class VertexSet {
  public:
    constexpr VertexSet() = default;
    constexpr explicit VertexSet(std::uint64_t bits) : bits_(bits) {}
    VertexSet(std::initializer_list<std::size_t> vs) {
        for (auto v : vs)
            insert(v);
    }

    static constexpr VertexSet range(std::size_t n) {
        return VertexSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
    }

    constexpr std::uint64_t bits() const noexcept { return bits_; }
    constexpr bool empty() const noexcept { return bits_ == 0; }
    constexpr std::size_t size() const noexcept { return static_cast<std::size_t>(std::popcount(bits_)); }
    constexpr bool contains(std::size_t v) const noexcept { return v < 64 && ((bits_ >> v) & 1U); }
    constexpr bool is_subset_of(VertexSet o) const noexcept { return (bits_ & ~o.bits_) == 0; }

    void insert(std::size_t v) {
        if (v >= kMaxVertices)
            throw capacity_error("VertexSet: vertex index beyond 63");
        bits_ |= std::uint64_t{1} << v;
    }
    void erase(std::size_t v) noexcept {
        if (v < 64)
            bits_ &= ~(std::uint64_t{1} << v);
    }

    std::vector<std::size_t> elements() const {
        std::vector<std::size_t> out;
        for (std::uint64_t b = bits_; b; b &= b - 1)
            out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
        return out;
    }

    friend constexpr VertexSet operator|(VertexSet a, VertexSet b) noexcept { return VertexSet(a.bits_ | b.bits_); }
    friend constexpr VertexSet operator&(VertexSet a, VertexSet b) noexcept { return VertexSet(a.bits_ & b.bits_); }
    friend constexpr VertexSet operator-(VertexSet a, VertexSet b) noexcept { return VertexSet(a.bits_ & ~b.bits_); }
    friend constexpr bool operator==(VertexSet a, VertexSet b) noexcept = default;
    friend constexpr bool operator<(VertexSet a, VertexSet b) noexcept { return a.bits_ < b.bits_; }

  private:
    std::uint64_t bits_ = 0;
};

/**
 * Finite simple graph on vertices 0..n-1 with an explicit loop set.
 *
 * Adjacency is symmetric and irreflexive; a loop at v lives only in loops().
 */
class Graph {
  public:
    Graph() = default;
    explicit Graph(std::size_t n) : n_(n), adj_(n, 0) {
        if (n > kMaxVertices)
            throw capacity_error("Graph: at most 64 vertices supported");
    }

    Graph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) : Graph(n) {
        for (auto [u, v] : edges)
            add_edge(u, v);
    }

    std::size_t n_vertices() const noexcept { return n_; }
    VertexSet vertices() const noexcept { return VertexSet::range(n_); }
    VertexSet loops() const noexcept { return loops_; }
    bool has_loops() const noexcept { return !loops_.empty(); }
    VertexSet neighbors(std::size_t v) const { return VertexSet(adj_.at(v)); }
    std::size_t degree(std::size_t v) const { return neighbors(v).size(); }

    bool has_edge(std::size_t u, std::size_t v) const {
        check(u);
        check(v);
        return u == v ? loops_.contains(u) : ((adj_[u] >> v) & 1U) != 0;
    }

    /// Adds {u, v}; u == v adds a loop.
    void add_edge(std::size_t u, std::size_t v) {
        check(u);
        check(v);
        if (u == v) {
            loops_.insert(u);
            return;
        }
        adj_[u] |= std::uint64_t{1} << v;
        adj_[v] |= std::uint64_t{1} << u;
    }

    /// Non-loop edges as pairs u < v, sorted.
    std::vector<std::pair<std::size_t, std::size_t>> edges() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t u = 0; u < n_; ++u)
            for (std::size_t v : VertexSet(adj_[u] & ~((std::uint64_t{2} << u) - 1)).elements())
                out.emplace_back(u, v);
        return out;
    }

    std::size_t n_edges() const noexcept {
        std::size_t twice = 0;
        for (auto a : adj_)
            twice += static_cast<std::size_t>(std::popcount(a));
        return twice / 2;
    }

    friend bool operator==(const Graph&, const Graph&) = default;

  private:
    void check(std::size_t v) const {
        if (v >= n_)
            throw argument_error("Graph: vertex " + std::to_string(v) + " out of range");
    }

    std::size_t n_ = 0;
    std::vector<std::uint64_t> adj_;
    VertexSet loops_;
};

/// C_m(S): i ~ j iff |i - j| or m - |i - j| lies in S.
inline Graph circulant(std::size_t m, const std::vector<std::size_t>& generators) {
    if (m < 3)
        throw argument_error("circulant: need at least 3 vertices");
    if (generators.empty())
        throw argument_error("circulant: empty generating set");
    for (auto s : generators)
        if (s < 1 || s > m / 2)
            throw argument_error("circulant: generator " + std::to_string(s) + " outside 1.." + std::to_string(m / 2));
    Graph g(m);
    for (std::size_t i = 0; i < m; ++i)
        for (auto s : generators)
            g.add_edge(i, (i + s) % m);
    return g;
}

/// The cubic circulant C_{2n}(a, n).
inline Graph cubic_circulant(std::size_t n, std::size_t a) {
    if (a < 1 || a >= n)
        throw argument_error("cubic_circulant: need 1 <= a < n");
    return circulant(2 * n, {a, n});
}

inline std::vector<VertexSet> connected_components(const Graph& g) {
    std::vector<VertexSet> out;
    VertexSet unseen = g.vertices();
    while (!unseen.empty()) {
        auto start = static_cast<std::size_t>(std::countr_zero(unseen.bits()));
        VertexSet comp{start};
        VertexSet frontier = comp;
        while (!frontier.empty()) {
            VertexSet next;
            for (auto v : frontier.elements())
                next = next | g.neighbors(v);
            frontier = next - comp;
            comp = comp | next;
        }
        out.push_back(comp);
        unseen = unseen - comp;
    }
    return out;
}

inline VertexSet neighborhood(const Graph& g, VertexSet u) {
    VertexSet out;
    for (auto v : u.elements())
        out = out | g.neighbors(v);
    return out;
}

inline VertexSet closed_neighborhood(const Graph& g, VertexSet u) { return u | neighborhood(g, u); }

/// G[U] relabelled to 0..|U|-1; `vertex_map[k]` is the original label of k.
struct InducedSubgraph {
    Graph graph;
    std::vector<std::size_t> vertex_map;
};

inline InducedSubgraph induced_subgraph(const Graph& g, VertexSet u) {
    if (!u.is_subset_of(g.vertices()))
        throw argument_error("induced_subgraph: vertex set not contained in graph");
    auto verts = u.elements();
    std::vector<std::size_t> index(g.n_vertices(), 0);
    for (std::size_t k = 0; k < verts.size(); ++k)
        index[verts[k]] = k;
    Graph h(verts.size());
    for (std::size_t k = 0; k < verts.size(); ++k) {
        for (auto w : (g.neighbors(verts[k]) & u).elements())
            h.add_edge(k, index[w]);
        if (g.loops().contains(verts[k]))
            h.add_edge(k, k);
    }
    return {std::move(h), std::move(verts)};
}

inline InducedSubgraph delete_vertices(const Graph& g, VertexSet u) { return induced_subgraph(g, g.vertices() - u); }

/// Proper 2-colouring exists; any loop rules it out.
inline bool is_bipartite(const Graph& g) {
    if (g.has_loops())
        return false;
    std::vector<int> colour(g.n_vertices(), -1);
    for (std::size_t s = 0; s < g.n_vertices(); ++s) {
        if (colour[s] != -1)
            continue;
        colour[s] = 0;
        std::vector<std::size_t> stack{s};
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            for (auto w : g.neighbors(v).elements()) {
                if (colour[w] == -1) {
                    colour[w] = 1 - colour[v];
                    stack.push_back(w);
                } else if (colour[w] == colour[v]) {
                    return false;
                }
            }
        }
    }
    return true;
}

namespace detail {

struct InducedMatchingSearch {
    const Graph& g;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::size_t best = 0;

    // `blocked` holds every vertex that is an endpoint of, or adjacent to, a
    // chosen edge; an edge is still available iff neither endpoint is blocked.
    void run(std::size_t next, std::size_t chosen, VertexSet blocked) {
        best = std::max(best, chosen);
        // Each further edge consumes two unblocked vertices.
        std::size_t free_vertices = (g.vertices() - blocked).size();
        if (chosen + free_vertices / 2 <= best)
            return;
        std::size_t remaining = 0;
        for (std::size_t k = next; k < edges.size(); ++k)
            if (!blocked.contains(edges[k].first) && !blocked.contains(edges[k].second))
                ++remaining;
        if (chosen + remaining <= best)
            return;
        for (std::size_t k = next; k < edges.size(); ++k) {
            auto [u, v] = edges[k];
            if (blocked.contains(u) || blocked.contains(v))
                continue;
            VertexSet uv{u, v};
            run(k + 1, chosen + 1, blocked | closed_neighborhood(g, uv));
        }
    }
};

} // namespace detail

/// Exact im(G) by branch and bound over the edge list.
inline std::size_t induced_matching_number(const Graph& g) {
    if (g.has_loops())
        throw argument_error("induced_matching_number: graph has loops");
    if (g.n_vertices() > 40)
        throw capacity_error("induced_matching_number: more than 40 vertices");
    detail::InducedMatchingSearch search{g, g.edges()};
    search.run(0, 0, VertexSet{});
    return search.best;
}

/// All maximal independent sets (Bron-Kerbosch with pivoting on the complement).
inline std::vector<VertexSet> maximal_independent_sets(const Graph& g) {
    if (g.n_vertices() > 40)
        throw capacity_error("maximal_independent_sets: more than 40 vertices");
    std::vector<VertexSet> out;
    // Non-neighbours excluding self.
    auto compatible = [&](std::size_t v) { return g.vertices() - g.neighbors(v) - VertexSet{v}; };
    std::function<void(VertexSet, VertexSet, VertexSet)> expand = [&](VertexSet r, VertexSet p, VertexSet x) {
        if (p.empty() && x.empty()) {
            out.push_back(r);
            return;
        }
        VertexSet px = p | x;
        std::size_t pivot = px.elements().front();
        std::size_t best = 0;
        for (auto u : px.elements()) {
            auto c = (p & compatible(u)).size();
            if (c >= best) {
                best = c;
                pivot = u;
            }
        }
        for (auto v : (p - compatible(pivot)).elements()) {
            VertexSet cv = compatible(v);
            expand(r | VertexSet{v}, p & cv, x & cv);
            p.erase(v);
            x.insert(v);
        }
    };
    // Looped vertices are never independent.
    expand(VertexSet{}, g.vertices() - g.loops(), VertexSet{});
    std::sort(out.begin(), out.end());
    return out;
}

/// Inclusion-minimal vertex covers: complements of maximal independent sets.
inline std::vector<VertexSet> minimal_vertex_covers(const Graph& g) {
    if (g.has_loops())
        throw argument_error("minimal_vertex_covers: graph has loops");
    std::vector<VertexSet> out;
    for (auto s : maximal_independent_sets(g))
        out.push_back(g.vertices() - s);
    std::sort(out.begin(), out.end(), [](VertexSet a, VertexSet b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

inline bool is_vertex_cover(const Graph& g, VertexSet c) {
    for (auto [u, v] : g.edges())
        if (!c.contains(u) && !c.contains(v))
            return false;
    return true;
}

/**
 * Every simple odd cycle, reported once as a vertex sequence starting at its
 * smallest vertex, with the second vertex smaller than the last.
 */
inline std::vector<std::vector<std::size_t>> odd_cycles(const Graph& g) {
    if (g.n_vertices() > 20)
        throw capacity_error("odd_cycles: more than 20 vertices");
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> path;
    std::function<void(std::size_t, VertexSet)> extend = [&](std::size_t start, VertexSet used) {
        auto last = path.back();
        for (auto w : g.neighbors(last).elements()) {
            if (w == start && path.size() >= 3 && path.size() % 2 == 1 && path[1] < path.back())
                out.push_back(path);
            if (w <= start || used.contains(w))
                continue;
            path.push_back(w);
            extend(start, used | VertexSet{w});
            path.pop_back();
        }
    };
    for (std::size_t s = 0; s < g.n_vertices(); ++s) {
        path = {s};
        extend(s, VertexSet{s});
    }
    return out;
}

/// k vertex-disjoint copies of g; copy c occupies c*|V|..(c+1)*|V|-1.
inline Graph disjoint_copies(const Graph& g, std::size_t k) {
    const std::size_t n = g.n_vertices();
    Graph out(n * k);
    for (std::size_t c = 0; c < k; ++c) {
        for (auto [u, v] : g.edges())
            out.add_edge(c * n + u, c * n + v);
        for (auto l : g.loops().elements())
            out.add_edge(c * n + l, c * n + l);
    }
    return out;
}

// Fixture format: `n=<k> loops=<comma-list>` then one `u v` line per edge,
// 0-indexed, u < v, sorted.

inline std::string serialize(const Graph& g) {
    std::ostringstream os;
    os << "n=" << g.n_vertices() << " loops=";
    auto loops = g.loops().elements();
    for (std::size_t k = 0; k < loops.size(); ++k)
        os << (k ? "," : "") << loops[k];
    os << '\n';
    for (auto [u, v] : g.edges())
        os << u << ' ' << v << '\n';
    return os.str();
}

inline Graph parse_graph(const std::string& text) {
    std::istringstream is(text);
    std::string header;
    if (!std::getline(is, header) || header.rfind("n=", 0) != 0)
        throw argument_error("parse_graph: malformed header");
    auto sp = header.find(" loops=");
    if (sp == std::string::npos)
        throw argument_error("parse_graph: missing loops field");
    Graph g(std::stoul(header.substr(2, sp - 2)));
    std::string loops = header.substr(sp + 7);
    std::istringstream ls(loops);
    for (std::string tok; std::getline(ls, tok, ',');)
        if (!tok.empty())
            g.add_edge(std::stoul(tok), std::stoul(tok));
    std::size_t u, v;
    while (is >> u >> v) {
        if (u >= v)
            throw argument_error("parse_graph: edge lines must have u < v");
        g.add_edge(u, v);
    }
    return g;
}

} // namespace circreg
