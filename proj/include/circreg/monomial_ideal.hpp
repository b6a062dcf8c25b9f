#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "monomial.hpp"

namespace circreg {

/**
 * A monomial ideal held by its minimal generating set.
 *
 * The generator list is a divisibility antichain sorted in the canonical
 * monomial order, so structural equality coincides with ideal equality.
 * The zero ideal has no generators; the unit ideal has the single
 * generator 1.
 */
class MonomialIdeal {
  public:
    MonomialIdeal() = default;

    /// The zero ideal in `n_vars` variables.
    explicit MonomialIdeal(std::size_t n_vars) : n_vars_(n_vars) {
        if (n_vars > kMaxVars)
            throw capacity_error("MonomialIdeal: too many variables");
    }

    /// Minimalizes `gens` into canonical form.
    MonomialIdeal(std::size_t n_vars, std::vector<Monomial> gens);

    static MonomialIdeal zero(std::size_t n_vars) { return MonomialIdeal(n_vars); }
    static MonomialIdeal unit(std::size_t n_vars) { return MonomialIdeal(n_vars, {Monomial::one(n_vars)}); }

    /// The maximal ideal (x_0, ..., x_{n-1}).
    static MonomialIdeal maximal(std::size_t n_vars) {
        std::vector<Monomial> g;
        for (std::size_t i = 0; i < n_vars; ++i)
            g.push_back(Monomial::variable(n_vars, i));
        return MonomialIdeal(n_vars, std::move(g));
    }

    std::size_t n_vars() const noexcept { return n_vars_; }
    const std::vector<Monomial>& gens() const noexcept { return gens_; }
    std::size_t size() const noexcept { return gens_.size(); }
    bool is_zero() const noexcept { return gens_.empty(); }
    bool is_unit() const noexcept { return gens_.size() == 1 && gens_.front().is_one(); }

    bool is_squarefree() const noexcept {
        return std::all_of(gens_.begin(), gens_.end(), [](const Monomial& g) { return g.is_squarefree(); });
    }

    bool contains(const Monomial& m) const {
        check(m);
        return std::any_of(gens_.begin(), gens_.end(),
                           [&](const Monomial& g) { return detail::divides_unchecked(g, m); });
    }

    /// Every generator of `other` lies in this ideal.
    bool contains(const MonomialIdeal& other) const {
        require_same_ring(other);
        return std::all_of(other.gens_.begin(), other.gens_.end(), [&](const Monomial& g) { return contains(g); });
    }

    unsigned max_generator_degree() const noexcept {
        unsigned d = 0;
        for (const auto& g : gens_)
            d = std::max(d, g.degree());
        return d;
    }

    friend bool operator==(const MonomialIdeal& a, const MonomialIdeal& b) noexcept {
        return a.n_vars_ == b.n_vars_ && a.gens_ == b.gens_;
    }

    void require_same_ring(const MonomialIdeal& other) const {
        if (other.n_vars_ != n_vars_)
            throw dimension_error("ideals over " + std::to_string(n_vars_) + " and " +
                                  std::to_string(other.n_vars_) + " variables");
    }

    std::string to_string() const;

  private:
    void check(const Monomial& m) const {
        if (m.n_vars() != n_vars_)
            throw dimension_error("monomial over " + std::to_string(m.n_vars()) + " variables tested against ideal over " +
                                  std::to_string(n_vars_));
    }

    std::size_t n_vars_ = 0;
    std::vector<Monomial> gens_;
};

/// Drops duplicates and non-minimal generators; sorts canonically.
inline std::vector<Monomial> minimal_generators(std::vector<Monomial> gens) {
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    // Sorted by degree, so a proper divisor always precedes its multiple and
    // distinct monomials of equal degree never divide each other.
    std::vector<Monomial> kept;
    kept.reserve(gens.size());
    std::size_t lower_end = 0; // kept[0, lower_end) have degree < current
    for (const auto& g : gens) {
        while (lower_end < kept.size() && kept[lower_end].degree() < g.degree())
            ++lower_end;
        bool redundant = false;
        for (std::size_t k = 0; k < lower_end && !redundant; ++k)
            redundant = detail::divides_unchecked(kept[k], g);
        if (!redundant)
            kept.push_back(g);
    }
    return kept;
}

inline MonomialIdeal::MonomialIdeal(std::size_t n_vars, std::vector<Monomial> gens) : MonomialIdeal(n_vars) {
    for (const auto& g : gens)
        check(g);
    gens_ = minimal_generators(std::move(gens));
}

inline MonomialIdeal minimalize(std::size_t n_vars, std::vector<Monomial> gens) {
    return MonomialIdeal(n_vars, std::move(gens));
}

inline bool contains(const MonomialIdeal& I, const Monomial& m) { return I.contains(m); }
inline bool equals(const MonomialIdeal& I, const MonomialIdeal& J) {
    I.require_same_ring(J);
    return I == J;
}
inline bool is_squarefree(const MonomialIdeal& I) { return I.is_squarefree(); }

inline MonomialIdeal sum(const MonomialIdeal& I, const MonomialIdeal& J) {
    I.require_same_ring(J);
    std::vector<Monomial> g = I.gens();
    g.insert(g.end(), J.gens().begin(), J.gens().end());
    return MonomialIdeal(I.n_vars(), std::move(g));
}

inline MonomialIdeal product(const MonomialIdeal& I, const MonomialIdeal& J) {
    I.require_same_ring(J);
    std::unordered_set<Monomial, MonomialHash> seen;
    std::vector<Monomial> candidates;
    candidates.reserve(I.size() * J.size());
    for (const auto& a : I.gens())
        for (const auto& b : J.gens()) {
            Monomial ab = a * b;
            if (seen.insert(ab).second)
                candidates.push_back(ab);
        }
    return MonomialIdeal(I.n_vars(), std::move(candidates));
}

inline MonomialIdeal power(const MonomialIdeal& I, unsigned t) {
    MonomialIdeal result = MonomialIdeal::unit(I.n_vars());
    for (unsigned k = 0; k < t; ++k)
        result = product(result, I);
    return result;
}

/// I : m, generated by g / gcd(g, m) over the generators of I.
inline MonomialIdeal colon(const MonomialIdeal& I, const Monomial& m) {
    if (m.n_vars() != I.n_vars())
        throw dimension_error("colon: monomial and ideal live in different rings");
    std::vector<Monomial> g;
    g.reserve(I.size());
    for (const auto& f : I.gens())
        g.push_back(colon_mono(f, m));
    return MonomialIdeal(I.n_vars(), std::move(g));
}

inline MonomialIdeal intersect(const MonomialIdeal& I, const MonomialIdeal& J) {
    I.require_same_ring(J);
    std::unordered_set<Monomial, MonomialHash> seen;
    std::vector<Monomial> g;
    for (const auto& a : I.gens())
        for (const auto& b : J.gens()) {
            Monomial l = lcm(a, b);
            if (seen.insert(l).second)
                g.push_back(l);
        }
    return MonomialIdeal(I.n_vars(), std::move(g));
}

inline MonomialIdeal radical(const MonomialIdeal& I) {
    std::vector<Monomial> g;
    g.reserve(I.size());
    for (const auto& f : I.gens())
        g.push_back(squarefree_part(f));
    return MonomialIdeal(I.n_vars(), std::move(g));
}

inline std::string MonomialIdeal::to_string() const {
    if (is_zero())
        return "(0)";
    std::string s = "(";
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        if (i)
            s += ", ";
        s += gens_[i].to_string();
    }
    return s + ")";
}

// Plain-text format: header `n_vars=<k> gens=<g>`, then one generator per
// line as space-separated exponents, in canonical order.

inline void write_ideal(std::ostream& out, const MonomialIdeal& I) {
    out << "n_vars=" << I.n_vars() << " gens=" << I.size() << '\n';
    for (const auto& g : I.gens()) {
        for (std::size_t i = 0; i < I.n_vars(); ++i) {
            if (i)
                out << ' ';
            out << g[i];
        }
        out << '\n';
    }
}

inline std::string serialize(const MonomialIdeal& I) {
    std::ostringstream os;
    write_ideal(os, I);
    return os.str();
}

inline MonomialIdeal read_ideal(std::istream& in) {
    std::string header;
    if (!std::getline(in, header))
        throw argument_error("read_ideal: missing header");
    std::size_t n_vars = 0, n_gens = 0;
    if (std::sscanf(header.c_str(), "n_vars=%zu gens=%zu", &n_vars, &n_gens) != 2)
        throw argument_error("read_ideal: malformed header '" + header + "'");
    std::vector<Monomial> gens;
    std::string line;
    for (std::size_t k = 0; k < n_gens; ++k) {
        if (!std::getline(in, line))
            throw argument_error("read_ideal: expected " + std::to_string(n_gens) + " generators");
        std::istringstream ls(line);
        std::vector<int> e;
        int v;
        while (ls >> v)
            e.push_back(v);
        if (e.size() != n_vars)
            throw dimension_error("read_ideal: generator with " + std::to_string(e.size()) + " exponents");
        gens.push_back(Monomial::from_vector(e));
    }
    return MonomialIdeal(n_vars, std::move(gens));
}

inline MonomialIdeal parse_ideal(const std::string& text) {
    std::istringstream is(text);
    return read_ideal(is);
}

} // namespace circreg
