#pragma once

// Slow, independent reference implementations used only by the tests.

#include <circreg/circreg.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

namespace oracle {

using circreg::Graph;
using circreg::Monomial;
using circreg::MonomialIdeal;

using Exps = std::vector<int>;

inline bool divides(const Exps& a, const Exps& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i])
            return false;
    return true;
}

/// Membership against an arbitrary (non-minimal) generator list.
inline bool member(const std::vector<Exps>& gens, const Exps& m) {
    return std::any_of(gens.begin(), gens.end(), [&](const Exps& g) { return divides(g, m); });
}

inline std::vector<Exps> raw(const MonomialIdeal& I) {
    std::vector<Exps> out;
    for (const auto& g : I.gens())
        out.push_back(g.exponents());
    return out;
}

/// Every exponent vector in [0, bound]^n.
inline void for_each_in_box(std::size_t n, int bound, const std::function<void(const Exps&)>& f) {
    Exps e(n, 0);
    while (true) {
        f(e);
        std::size_t i = 0;
        while (i < n && e[i] == bound)
            e[i++] = 0;
        if (i == n)
            return;
        ++e[i];
    }
}

/// Rank over Z/pZ by plain dense Gaussian elimination.
inline std::size_t dense_rank(std::vector<std::vector<long>> m, long p) {
    std::size_t rank = 0;
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    auto inv = [p](long a) {
        long r = 1, b = a % p, e = p - 2;
        while (e) {
            if (e & 1)
                r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && ((m[piv][c] % p) + p) % p == 0)
            ++piv;
        if (piv == rows)
            continue;
        std::swap(m[piv], m[rank]);
        const long s = inv(((m[rank][c] % p) + p) % p);
        for (auto& x : m[rank])
            x = ((x % p) + p) % p * s % p;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank)
                continue;
            const long f = ((m[r][c] % p) + p) % p;
            if (f == 0)
                continue;
            for (std::size_t k = 0; k < cols; ++k)
                m[r][k] = ((m[r][k] - f * m[rank][k]) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

/// Reduced homology ranks (index d+1) of the complex with the given faces
/// (a downward-closed set of sorted vertex lists). Empty list = void complex.
inline std::vector<std::size_t> homology(const std::set<std::vector<int>>& faces, long p) {
    if (faces.empty())
        return {};
    std::map<int, std::vector<std::vector<int>>> by_dim;
    int top = -1;
    for (const auto& f : faces) {
        const int d = static_cast<int>(f.size()) - 1;
        by_dim[d].push_back(f);
        top = std::max(top, d);
    }
    auto boundary_rank = [&](int d) -> std::size_t { // from dim d to d-1
        if (!by_dim.count(d) || !by_dim.count(d - 1))
            return 0;
        const auto& rows = by_dim[d - 1];
        const auto& cols = by_dim[d];
        std::vector<std::vector<long>> m(rows.size(), std::vector<long>(cols.size(), 0));
        for (std::size_t c = 0; c < cols.size(); ++c)
            for (std::size_t k = 0; k < cols[c].size(); ++k) {
                auto sub = cols[c];
                sub.erase(sub.begin() + static_cast<long>(k));
                const auto r = std::find(rows.begin(), rows.end(), sub) - rows.begin();
                m[static_cast<std::size_t>(r)][c] = (k % 2 == 0) ? 1 : -1;
            }
        return dense_rank(std::move(m), p);
    };
    std::vector<std::size_t> out;
    for (int d = -1; d <= top; ++d) {
        const std::size_t n = by_dim.count(d) ? by_dim[d].size() : 0;
        out.push_back(n - boundary_rank(d) - boundary_rank(d + 1));
    }
    return out;
}

/**
 * Multigraded Betti numbers of a squarefree ideal by Hochster's formula:
 * beta_{i,sigma}(I) = dim H~_{|sigma|-i-2}(Delta restricted to sigma), with
 * Delta the Stanley-Reisner complex (faces F with x_F not in I).
 * Keys are (i, support mask).
 */
inline std::map<std::pair<int, std::uint32_t>, std::size_t> hochster(const MonomialIdeal& I, long p) {
    const std::size_t n = I.n_vars();
    const auto gens = raw(I);
    auto in_ideal = [&](std::uint32_t mask) {
        Exps e(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            e[i] = (mask >> i) & 1U;
        return member(gens, e);
    };
    std::map<std::pair<int, std::uint32_t>, std::size_t> out;
    for (std::uint32_t sigma = 1; sigma < (1U << n); ++sigma) {
        if (!in_ideal(sigma))
            continue; // restriction is a full simplex
        std::set<std::vector<int>> faces;
        for (std::uint32_t f = sigma;; f = (f - 1) & sigma) {
            if (!in_ideal(f)) {
                std::vector<int> v;
                for (std::size_t i = 0; i < n; ++i)
                    if ((f >> i) & 1U)
                        v.push_back(static_cast<int>(i));
                faces.insert(v);
            }
            if (f == 0)
                break;
        }
        const auto h = homology(faces, p);
        const int size = std::popcount(sigma);
        for (std::size_t k = 0; k < h.size(); ++k) {
            const int d = static_cast<int>(k) - 1;
            const int i = size - d - 2;
            if (h[k] != 0 && i >= 0)
                out[{i, sigma}] = h[k];
        }
    }
    return out;
}

/// Squarefree ideal with the same graded Betti numbers (standard polarization).
inline MonomialIdeal polarize(const MonomialIdeal& I) {
    std::vector<int> top(I.n_vars(), 0);
    for (const auto& g : I.gens())
        for (std::size_t i = 0; i < I.n_vars(); ++i)
            top[i] = std::max(top[i], static_cast<int>(g[i]));
    std::vector<std::size_t> offset(I.n_vars() + 1, 0);
    for (std::size_t i = 0; i < I.n_vars(); ++i)
        offset[i + 1] = offset[i] + static_cast<std::size_t>(std::max(top[i], 1));
    const std::size_t m = offset.back();
    std::vector<Monomial> gens;
    for (const auto& g : I.gens()) {
        std::uint64_t mask = 0;
        for (std::size_t i = 0; i < I.n_vars(); ++i)
            for (unsigned k = 0; k < g[i]; ++k)
                mask |= std::uint64_t{1} << (offset[i] + k);
        gens.push_back(Monomial::squarefree(m, mask));
    }
    return MonomialIdeal(m, std::move(gens));
}

/// reg(I) via polarization and Hochster's formula.
inline int regularity(const MonomialIdeal& I, long p = 2) {
    const auto P = I.is_squarefree() ? I : polarize(I);
    int best = -1;
    for (const auto& [key, r] : hochster(P, p))
        best = std::max(best, std::popcount(key.second) - key.first);
    return best;
}

/**
 * Even-connected pairs by explicit walk enumeration: p_0 = u, every step a
 * G-edge, steps p_{2l+1} p_{2l+2} drawn from the tuple within multiplicity,
 * at least one tuple step, ending on a G-step.
 */
inline std::set<std::pair<std::size_t, std::size_t>> even_connected(const Graph& g,
                                                                    const std::vector<std::pair<std::size_t, std::size_t>>& tuple) {
    std::set<std::pair<std::size_t, std::size_t>> out;
    std::map<std::pair<std::size_t, std::size_t>, int> left;
    for (auto [a, b] : tuple)
        ++left[{std::min(a, b), std::max(a, b)}];
    std::vector<std::size_t> walk;
    std::function<void()> extend = [&] {
        // walk has even length: last vertex sits at an odd position p_{2l+1}
        const std::size_t odd = walk.back();
        const std::size_t used = walk.size() / 2 - 1; // tuple steps so far
        if (used >= 1)
            out.insert({std::min(walk.front(), odd), std::max(walk.front(), odd)});
        for (std::size_t y = 0; y < g.n_vertices(); ++y) {
            auto key = std::make_pair(std::min(odd, y), std::max(odd, y));
            auto it = left.find(key);
            if (it == left.end() || it->second == 0)
                continue;
            --it->second;
            for (std::size_t z = 0; z < g.n_vertices(); ++z) {
                if (!g.has_edge(y, z))
                    continue;
                walk.push_back(y);
                walk.push_back(z);
                extend();
                walk.pop_back();
                walk.pop_back();
            }
            ++it->second;
        }
    };
    for (std::size_t u = 0; u < g.n_vertices(); ++u)
        for (std::size_t v = 0; v < g.n_vertices(); ++v)
            if (g.has_edge(u, v)) {
                walk = {u, v};
                extend();
            }
    return out;
}

} // namespace oracle
