#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "monomial_ideal.hpp"

namespace circreg {

using Edge = std::pair<std::size_t, std::size_t>;

inline Edge normalized(Edge e) { return e.first <= e.second ? e : Edge{e.second, e.first}; }

/**
 * An ordered tuple of (possibly repeated) edges of a base graph: the
 * e = (e_1, ..., e_{t-1}) whose product x^e is colon-ed out of I(G)^t.
 */
class EdgeTuple {
  public:
    EdgeTuple() = default;

    EdgeTuple(const Graph& g, std::vector<Edge> edges) : edges_(std::move(edges)) {
        for (auto& e : edges_) {
            e = normalized(e);
            if (e.first == e.second || e.second >= g.n_vertices() || !g.has_edge(e.first, e.second))
                throw argument_error("EdgeTuple: {" + std::to_string(e.first) + "," + std::to_string(e.second) +
                                     "} is not an edge of the base graph");
        }
    }

    const std::vector<Edge>& edges() const noexcept { return edges_; }
    std::size_t size() const noexcept { return edges_.size(); }
    bool empty() const noexcept { return edges_.empty(); }

    /// Distinct edges in order of first appearance, with their counts.
    std::vector<std::pair<Edge, std::size_t>> multiplicities() const {
        std::vector<std::pair<Edge, std::size_t>> out;
        for (auto e : edges_) {
            auto it = std::find_if(out.begin(), out.end(), [&](const auto& p) { return p.first == e; });
            if (it == out.end())
                out.emplace_back(e, 1);
            else
                ++it->second;
        }
        return out;
    }

    /// Same distinct edges, each once.
    EdgeTuple deduplicated() const {
        EdgeTuple out;
        for (auto& [e, c] : multiplicities())
            out.edges_.push_back(e);
        return out;
    }

    /// Drops the last edge.
    EdgeTuple without_last() const {
        EdgeTuple out = *this;
        if (!out.edges_.empty())
            out.edges_.pop_back();
        return out;
    }

    bool has_repeats() const { return multiplicities().size() != edges_.size(); }

    /// x^e = e_1 ... e_{t-1} in `n_vars` variables.
    Monomial monomial(std::size_t n_vars) const {
        Monomial m(n_vars);
        for (auto [u, v] : edges_) {
            m.set(u, m[u] + 1);
            m.set(v, m[v] + 1);
        }
        return m;
    }

    /// `[(u,v),(w,x),...]` with 1-indexed vertices.
    std::string to_string() const {
        std::string s = "[";
        for (std::size_t k = 0; k < edges_.size(); ++k)
            s += (k ? ",(" : "(") + std::to_string(edges_[k].first + 1) + "," + std::to_string(edges_[k].second + 1) +
                 ")";
        return s + "]";
    }

    friend bool operator==(const EdgeTuple&, const EdgeTuple&) = default;

  private:
    std::vector<Edge> edges_;
};

/// Parses `[(u,v),...]` (1-indexed) against `g`.
inline EdgeTuple parse_tuple(const Graph& g, const std::string& text) {
    std::vector<Edge> edges;
    std::size_t pos = 0;
    while ((pos = text.find('(', pos)) != std::string::npos) {
        auto close = text.find(')', pos);
        if (close == std::string::npos)
            throw argument_error("parse_tuple: unbalanced parenthesis");
        auto body = text.substr(pos + 1, close - pos - 1);
        auto comma = body.find(',');
        if (comma == std::string::npos)
            throw argument_error("parse_tuple: expected (u,v)");
        long u = std::stol(body.substr(0, comma));
        long v = std::stol(body.substr(comma + 1));
        if (u < 1 || v < 1)
            throw argument_error("parse_tuple: vertices are 1-indexed");
        edges.emplace_back(static_cast<std::size_t>(u - 1), static_cast<std::size_t>(v - 1));
        pos = close + 1;
    }
    return EdgeTuple(g, std::move(edges));
}

/// I(G): x_i x_j per edge and x_j^2 per loop.
inline MonomialIdeal edge_ideal(const Graph& g) {
    const std::size_t n = g.n_vertices();
    std::vector<Monomial> gens;
    for (auto [u, v] : g.edges())
        gens.push_back(Monomial::squarefree(n, (std::uint64_t{1} << u) | (std::uint64_t{1} << v)));
    for (auto j : g.loops().elements())
        gens.push_back(Monomial::variable(n, j, 2));
    return MonomialIdeal(n, std::move(gens));
}

/**
 * G_e: G plus an edge {u, v} for every pair even-connected with respect to
 * the tuple (u == v gives a loop).
 *
 * A walk p_0 p_1 ... p_{2k+1} alternates a G-edge (even position to odd)
 * with a tuple edge (odd to even), ends on a G-edge, and uses each tuple
 * edge at most as often as it occurs in the tuple. The search runs over
 * states (p_{2l}, residual multiset); any state other than the start has
 * consumed at least one tuple edge, so its G-neighbours are connected to u.
 */
inline Graph even_connection_graph(const Graph& g, const EdgeTuple& e) {
    Graph out = g;
    if (e.empty())
        return out;
    const auto mult = e.multiplicities();
    const std::size_t s = mult.size();
    // Residual multiset as a mixed-radix integer.
    std::vector<std::size_t> stride(s);
    std::size_t n_codes = 1;
    for (std::size_t i = 0; i < s; ++i) {
        stride[i] = n_codes;
        n_codes *= mult[i].second + 1;
    }
    std::size_t full = 0;
    for (std::size_t i = 0; i < s; ++i)
        full += mult[i].second * stride[i];
    auto count = [&](std::size_t code, std::size_t i) { return (code / stride[i]) % (mult[i].second + 1); };

    const std::size_t n = g.n_vertices();
    for (std::size_t u = 0; u < n; ++u) {
        std::vector<char> seen(n * n_codes, 0);
        std::vector<std::pair<std::size_t, std::size_t>> queue{{u, full}};
        seen[u * n_codes + full] = 1;
        VertexSet connected;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            auto [p, code] = queue[head];
            for (auto w : g.neighbors(p).elements()) {
                if (code != full)
                    connected.insert(w);
                for (std::size_t i = 0; i < s; ++i) {
                    if (count(code, i) == 0)
                        continue;
                    auto [a, b] = mult[i].first;
                    if (w != a && w != b)
                        continue;
                    const std::size_t y = (w == a) ? b : a;
                    const std::size_t next = code - stride[i];
                    if (!seen[y * n_codes + next]) {
                        seen[y * n_codes + next] = 1;
                        queue.emplace_back(y, next);
                    }
                }
            }
        }
        for (auto v : connected.elements())
            out.add_edge(u, v);
    }
    return out;
}

/// I(G)^t : x^e with t = |e| + 1, computed directly on monomial ideals.
inline MonomialIdeal colon_by_tuple(const Graph& g, const EdgeTuple& e) {
    const auto I = edge_ideal(g);
    return colon(power(I, static_cast<unsigned>(e.size() + 1)), e.monomial(g.n_vertices()));
}

/// Same, with I(G)^(|e|+1) supplied by the caller.
inline MonomialIdeal colon_by_tuple(const MonomialIdeal& power_t, const EdgeTuple& e) {
    return colon(power_t, e.monomial(power_t.n_vars()));
}

inline bool verify_banerjee(const Graph& g, const EdgeTuple& e) {
    return colon_by_tuple(g, e) == edge_ideal(even_connection_graph(g, e));
}

/// Upper bound on (cover count) x t accepted by symbolic_power.
inline constexpr std::size_t kSymbolicWorkLimit = 4096;

/// I(G)^(t): intersection of (x_C)^t over minimal vertex covers C.
inline MonomialIdeal symbolic_power(const Graph& g, unsigned t) {
    if (t < 1)
        throw argument_error("symbolic_power: t must be at least 1");
    const std::size_t n = g.n_vertices();
    const auto covers = minimal_vertex_covers(g); // sorted by size
    if (covers.size() * t > kSymbolicWorkLimit)
        throw capacity_error("symbolic_power: " + std::to_string(covers.size()) + " covers at t = " +
                             std::to_string(t));
    if (t == 1)
        return edge_ideal(g);
    MonomialIdeal result = MonomialIdeal::unit(n);
    for (auto c : covers) {
        std::vector<Monomial> vars;
        for (auto v : c.elements())
            vars.push_back(Monomial::variable(n, v));
        result = intersect(result, power(MonomialIdeal(n, std::move(vars)), t));
    }
    return result;
}

/// x^a in I(G)^(t) iff its degree on every minimal vertex cover is >= t.
inline bool symbolic_membership(const std::vector<VertexSet>& covers, unsigned t, const Monomial& m) {
    for (auto c : covers) {
        unsigned d = 0;
        for (auto v : c.elements())
            d += m[v];
        if (d < t)
            return false;
    }
    return true;
}

inline bool symbolic_membership(const Graph& g, unsigned t, const Monomial& m) {
    if (m.n_vars() != g.n_vertices())
        throw dimension_error("symbolic_membership: monomial ring does not match graph");
    return symbolic_membership(minimal_vertex_covers(g), t, m);
}

/// Minimal generators of I(G)^(t) that are not already in I(G)^t.
inline std::vector<Monomial> extra_symbolic_generators(const Graph& g, unsigned t) {
    const auto It = power(edge_ideal(g), t);
    const auto sym = symbolic_power(g, t);
    std::vector<Monomial> out;
    for (const auto& f : sym.gens())
        if (!It.contains(f))
            out.push_back(f);
    return out;
}

/// L = I(G)^t + (selected), every selected monomial a minimal generator of I(G)^(t).
inline MonomialIdeal intermediate_ideal(const Graph& g, unsigned t, const std::vector<Monomial>& selected) {
    const auto It = power(edge_ideal(g), t);
    const auto sym = symbolic_power(g, t);
    for (const auto& f : selected)
        if (!std::binary_search(sym.gens().begin(), sym.gens().end(), f))
            throw argument_error("intermediate_ideal: " + f.to_string() + " is not a minimal generator of I^(t)");
    auto L = sum(It, MonomialIdeal(g.n_vertices(), selected));
    if (!sym.contains(L) || !L.contains(It))
        throw verification_error("intermediate_ideal: I^t <= L <= I^(t) violated");
    return L;
}

/// Seeded subset of `pool`; each element kept with probability 1/2.
inline std::vector<Monomial> random_selector(const std::vector<Monomial>& pool, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Monomial> out;
    for (const auto& f : pool)
        if (rng() & 1U)
            out.push_back(f);
    return out;
}

/**
 * sqrt(I^t : m) == sqrt(I^(t) : m). Returns nullopt when m lies in I^(t),
 * where the identity makes no claim.
 */
inline std::optional<bool> radical_colon_check(const MonomialIdeal& power_t, const MonomialIdeal& symbolic_t,
                                               const Monomial& m) {
    if (symbolic_t.contains(m))
        return std::nullopt;
    return radical(colon(power_t, m)) == radical(colon(symbolic_t, m));
}

inline std::optional<bool> radical_colon_check(const Graph& g, unsigned t, const Monomial& m) {
    return radical_colon_check(power(edge_ideal(g), t), symbolic_power(g, t), m);
}

/// Colon by a tuple with repeats equals colon by its distinct edges.
inline bool squarefree_colon_reduction_check(const Graph& g, const EdgeTuple& e) {
    return colon_by_tuple(g, e) == colon_by_tuple(g, e.deduplicated());
}

/// Every loop j of G_e is joined in G_e to every vertex of G.
inline bool loop_dominance_check(const Graph& ge) {
    for (auto j : ge.loops().elements())
        for (std::size_t v = 0; v < ge.n_vertices(); ++v)
            if (!ge.has_edge(j, v))
                return false;
    return true;
}

inline bool loop_dominance_check(const Graph& g, const EdgeTuple& e) {
    return loop_dominance_check(even_connection_graph(g, e));
}

/**
 * For distinct edges e = (e_1..e_s) with e_s = {u, v} and e' = (e_1..e_{s-1}):
 * sqrt(I(G_e)) == sqrt(I(G_e') : x_u) ∩ sqrt(I(G_e') : x_v).
 */
inline bool radical_splitting_check(const Graph& g, const EdgeTuple& e) {
    if (e.empty())
        throw argument_error("radical_splitting_check: tuple must be nonempty");
    if (e.has_repeats())
        throw argument_error("radical_splitting_check: tuple edges must be distinct");
    const std::size_t n = g.n_vertices();
    const auto [u, v] = e.edges().back();
    const auto prev = edge_ideal(even_connection_graph(g, e.without_last()));
    const auto lhs = radical(edge_ideal(even_connection_graph(g, e)));
    const auto rhs = intersect(radical(colon(prev, Monomial::variable(n, u))),
                               radical(colon(prev, Monomial::variable(n, v))));
    return lhs == rhs;
}

/// All tuples of exactly `length` edges of g (ordered, with repetition).
inline std::vector<EdgeTuple> all_tuples(const Graph& g, std::size_t length) {
    const auto edges = g.edges();
    std::vector<EdgeTuple> out;
    std::vector<Edge> cur;
    auto rec = [&](auto&& self) -> void {
        if (cur.size() == length) {
            out.emplace_back(g, cur);
            return;
        }
        for (auto e : edges) {
            cur.push_back(e);
            self(self);
            cur.pop_back();
        }
    };
    rec(rec);
    return out;
}

/// Seeded random tuple of `length` edges drawn with replacement.
inline EdgeTuple random_tuple(const Graph& g, std::size_t length, std::mt19937_64& rng) {
    const auto edges = g.edges();
    std::vector<Edge> pick;
    for (std::size_t k = 0; k < length; ++k)
        pick.push_back(edges[rng() % edges.size()]);
    return EdgeTuple(g, std::move(pick));
}

/// Seeded random tuple of `length` pairwise distinct edges.
inline EdgeTuple random_distinct_tuple(const Graph& g, std::size_t length, std::mt19937_64& rng) {
    auto edges = g.edges();
    if (length > edges.size())
        throw argument_error("random_distinct_tuple: not enough edges");
    for (std::size_t k = 0; k < length; ++k)
        std::swap(edges[k], edges[k + rng() % (edges.size() - k)]);
    edges.resize(length);
    return EdgeTuple(g, std::move(edges));
}

} // namespace circreg
