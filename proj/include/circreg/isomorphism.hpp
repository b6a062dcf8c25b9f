#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "graph.hpp"

namespace circreg {

namespace detail {

/// Per-vertex invariant: loop flag, degree, triangles through v, sorted
/// neighbour degrees. Isomorphisms preserve it, so it partitions the search.
inline std::vector<std::uint64_t> vertex_invariants(const Graph& g) {
    const std::size_t n = g.n_vertices();
    std::vector<std::uint64_t> inv(n);
    for (std::size_t v = 0; v < n; ++v) {
        const VertexSet nb = g.neighbors(v);
        std::uint64_t triangles = 0;
        std::vector<std::size_t> nb_degrees;
        for (auto w : nb.elements()) {
            triangles += (g.neighbors(w) & nb).size();
            nb_degrees.push_back(g.degree(w));
        }
        std::sort(nb_degrees.begin(), nb_degrees.end());
        std::uint64_t h = (g.loops().contains(v) ? 1U : 0U);
        h = h * 1315423911ULL + nb.size();
        h = h * 1315423911ULL + triangles / 2;
        for (auto d : nb_degrees)
            h = h * 1315423911ULL + d;
        inv[v] = h;
    }
    return inv;
}

class IsomorphismSearch {
  public:
    IsomorphismSearch(const Graph& g, const Graph& h)
        : g_(g), h_(h), inv_g_(vertex_invariants(g)), inv_h_(vertex_invariants(h)), map_(g.n_vertices(), kUnmapped) {
        // Map G's vertices in BFS order so each new vertex has mapped neighbours.
        std::vector<char> seen(g.n_vertices(), 0);
        for (std::size_t s = 0; s < g.n_vertices(); ++s) {
            if (seen[s])
                continue;
            seen[s] = 1;
            std::vector<std::size_t> queue{s};
            for (std::size_t k = 0; k < queue.size(); ++k) {
                order_.push_back(queue[k]);
                for (auto w : g.neighbors(queue[k]).elements())
                    if (!seen[w]) {
                        seen[w] = 1;
                        queue.push_back(w);
                    }
            }
        }
    }

    bool run() { return extend(0, VertexSet{}); }
    const std::vector<std::size_t>& mapping() const { return map_; }

  private:
    static constexpr std::size_t kUnmapped = static_cast<std::size_t>(-1);

    bool extend(std::size_t depth, VertexSet used) {
        if (depth == order_.size())
            return true;
        const std::size_t v = order_[depth];
        for (std::size_t w = 0; w < h_.n_vertices(); ++w) {
            if (used.contains(w) || inv_g_[v] != inv_h_[w])
                continue;
            if (!consistent(v, w))
                continue;
            map_[v] = w;
            if (extend(depth + 1, used | VertexSet{w}))
                return true;
            map_[v] = kUnmapped;
        }
        return false;
    }

    bool consistent(std::size_t v, std::size_t w) const {
        for (std::size_t u = 0; u < g_.n_vertices(); ++u) {
            if (map_[u] == kUnmapped)
                continue;
            if (g_.has_edge(u, v) != h_.has_edge(map_[u], w))
                return false;
        }
        return true;
    }

    const Graph& g_;
    const Graph& h_;
    std::vector<std::uint64_t> inv_g_, inv_h_;
    std::vector<std::size_t> order_;
    std::vector<std::size_t> map_;
};

} // namespace detail

inline constexpr std::size_t kIsomorphismVertexLimit = 24;

/// Backtracking isomorphism test (adjacency and loops preserved).
inline bool is_isomorphic(const Graph& g, const Graph& h) {
    if (g.n_vertices() > kIsomorphismVertexLimit || h.n_vertices() > kIsomorphismVertexLimit)
        throw capacity_error("is_isomorphic: more than " + std::to_string(kIsomorphismVertexLimit) + " vertices");
    if (g.n_vertices() != h.n_vertices() || g.n_edges() != h.n_edges() || g.loops().size() != h.loops().size())
        return false;
    auto a = detail::vertex_invariants(g);
    auto b = detail::vertex_invariants(h);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b)
        return false;
    return detail::IsomorphismSearch(g, h).run();
}

/// G with every vertex i relabelled to perm[i].
inline Graph relabel(const Graph& g, const std::vector<std::size_t>& perm) {
    if (perm.size() != g.n_vertices())
        throw argument_error("relabel: permutation size mismatch");
    Graph out(g.n_vertices());
    for (auto [u, v] : g.edges())
        out.add_edge(perm[u], perm[v]);
    for (auto l : g.loops().elements())
        out.add_edge(perm[l], perm[l]);
    return out;
}

/// Structure of C_{2n}(a, n) as copies of one connected cubic circulant.
struct DecompositionReport {
    std::size_t n = 0, a = 0;
    std::size_t gcd = 0;           // t = gcd(a, 2n)
    bool even_quotient = false;    // 2n / t even
    std::size_t count = 0;         // number of copies
    std::size_t model_vertices = 0;
    std::vector<std::size_t> model_generators; // circulant generating set of the model
    Graph model;
    std::vector<VertexSet> components;

    std::string model_name() const {
        std::string s = "C_" + std::to_string(model_vertices) + "(";
        for (std::size_t k = 0; k < model_generators.size(); ++k)
            s += (k ? "," : "") + std::to_string(model_generators[k]);
        return s + ")";
    }
};

/**
 * Predicts the copies of C_{2n}(a, n) from t = gcd(a, 2n) and verifies every
 * actual component against the predicted model.
 */
inline DecompositionReport decompose_cubic(std::size_t n, std::size_t a) {
    const Graph g = cubic_circulant(n, a);
    DecompositionReport r;
    r.n = n;
    r.a = a;
    r.gcd = std::gcd(a, 2 * n);
    const std::size_t q = 2 * n / r.gcd;
    r.even_quotient = q % 2 == 0;
    if (r.even_quotient) {
        r.count = r.gcd;
        r.model_vertices = q;
        r.model_generators = {1, q / 2};
    } else {
        r.count = r.gcd / 2;
        r.model_vertices = 4 * n / r.gcd;
        r.model_generators = {2, q};
    }
    r.model = circulant(r.model_vertices, r.model_generators);
    r.components = connected_components(g);
    if (r.components.size() != r.count)
        throw verification_error("decompose_cubic: C_" + std::to_string(2 * n) + "(" + std::to_string(a) + "," +
                                 std::to_string(n) + ") has " + std::to_string(r.components.size()) +
                                 " components, predicted " + std::to_string(r.count));
    for (auto c : r.components)
        if (!is_isomorphic(induced_subgraph(g, c).graph, r.model))
            throw verification_error("decompose_cubic: component not isomorphic to " + r.model_name());
    return r;
}

} // namespace circreg
