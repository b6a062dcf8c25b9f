#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "monomial_ideal.hpp"
#include "prime_field.hpp"

namespace circreg {

inline constexpr std::size_t kDefaultLatticeLimit = 2'000'000;
inline constexpr std::uint32_t kDefaultPrime = 2;
inline constexpr std::uint32_t kCheckPrime = 32003;

/**
 * Finite simplicial complex on a labelled vertex set.
 *
 * Faces are bitmasks over local vertex indices 0..k-1; `labels()[i]` is the
 * variable index of local vertex i. The void complex has no faces at all;
 * the irrelevant complex has only the empty face. Faces are kept sorted by
 * (size, mask) and are closed under subsets.
 */
class SimplicialComplex {
  public:
    using face_type = std::uint32_t;

    static constexpr std::size_t kMaxVertices = 24;
    /// Up to this many vertices, face sets are held as dense bitmaps.
    static constexpr int kDenseVertices = 20;

    static SimplicialComplex void_complex(std::vector<std::size_t> labels) {
        SimplicialComplex k;
        k.labels_ = std::move(labels);
        k.check_size();
        return k;
    }

    static SimplicialComplex irrelevant(std::vector<std::size_t> labels) {
        SimplicialComplex k = void_complex(std::move(labels));
        k.faces_ = {0};
        return k;
    }

    /**
     * Complex generated by `facets` (all their subsets). If `max_dim` is
     * given, only faces of dimension <= max_dim are materialised; such a
     * truncated complex still computes homology correctly below max_dim.
     */
    static SimplicialComplex from_facets(std::vector<std::size_t> labels, std::vector<face_type> facets,
                                         std::optional<int> max_dim = std::nullopt) {
        SimplicialComplex k = void_complex(std::move(labels));
        if (facets.empty())
            return k;
        facets = maximal_sets(std::move(facets));
        const int max_size = max_dim ? std::max(*max_dim + 1, 0) : std::numeric_limits<int>::max();
        face_type universe = 0;
        for (auto f : facets)
            universe |= f;
        if (universe >> kDenseVertices == 0) {
            std::vector<char> seen(std::size_t{1} << std::bit_width(universe), 0);
            std::vector<std::vector<face_type>> by_size(static_cast<std::size_t>(std::popcount(universe)) + 1);
            for (auto f : facets) {
                // all submasks of f, including f and 0
                for (face_type sub = f;; sub = (sub - 1) & f) {
                    if (!seen[sub]) {
                        seen[sub] = 1;
                        const int size = std::popcount(sub);
                        if (size <= max_size)
                            by_size[static_cast<std::size_t>(size)].push_back(sub);
                    }
                    if (sub == 0)
                        break;
                }
            }
            for (auto& bucket : by_size) {
                std::sort(bucket.begin(), bucket.end());
                k.faces_.insert(k.faces_.end(), bucket.begin(), bucket.end());
            }
            k.truncated_at_ = max_dim;
            return k;
        }
        std::unordered_set<face_type> faces;
        for (auto f : facets) {
            std::vector<int> bits;
            for (face_type b = f; b; b &= b - 1)
                bits.push_back(std::countr_zero(b));
            const std::size_t top = std::min(static_cast<std::size_t>(max_size), bits.size());
            for (std::size_t s = 0; s <= top; ++s)
                for_each_subset_of_size(bits, s, [&](face_type m) { faces.insert(m); });
        }
        k.faces_.assign(faces.begin(), faces.end());
        std::sort(k.faces_.begin(), k.faces_.end(), face_order);
        k.truncated_at_ = max_dim;
        return k;
    }

    const std::vector<std::size_t>& labels() const noexcept { return labels_; }
    std::size_t n_vertices() const noexcept { return labels_.size(); }
    const std::vector<face_type>& faces() const noexcept { return faces_; }
    bool is_void() const noexcept { return faces_.empty(); }
    bool is_irrelevant() const noexcept { return faces_.size() == 1 && faces_.front() == 0; }
    std::optional<int> truncated_at() const noexcept { return truncated_at_; }

    bool contains(face_type f) const { return std::binary_search(faces_.begin(), faces_.end(), f, face_order); }

    /// Highest face dimension; -1 for the irrelevant complex, -2 for void.
    int dimension() const noexcept {
        return faces_.empty() ? -2 : std::popcount(faces_.back()) - 1;
    }

    /// Faces of dimension d (d = -1 is the empty face).
    std::vector<face_type> faces_of_dim(int d) const {
        std::vector<face_type> out;
        for (auto f : faces_)
            if (std::popcount(f) == d + 1)
                out.push_back(f);
        return out;
    }

    /// f_{-1}, f_0, f_1, ...
    std::vector<std::size_t> f_vector() const {
        std::vector<std::size_t> f;
        for (auto face : faces_) {
            auto idx = static_cast<std::size_t>(std::popcount(face));
            if (f.size() <= idx)
                f.resize(idx + 1, 0);
            ++f[idx];
        }
        return f;
    }

    /// Sum over faces of (-1)^dim, the empty face counting -1; 0 for void.
    long reduced_euler_characteristic() const {
        long chi = 0;
        for (auto face : faces_)
            chi += (std::popcount(face) % 2 == 1) ? 1 : -1;
        return chi;
    }

    /// True iff all subsets of every face are faces.
    bool is_downward_closed() const {
        for (auto f : faces_)
            for (face_type b = f; b; b &= b - 1)
                if (!contains(f & ~(b & (~b + 1))))
                    return false;
        return true;
    }

    static bool face_order(face_type a, face_type b) noexcept {
        const int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa < pb : a < b;
    }

    /// Sets in `sets` not strictly contained in another member; deduplicated.
    static std::vector<face_type> maximal_sets(std::vector<face_type> sets) {
        std::sort(sets.begin(), sets.end(), [](face_type a, face_type b) { return face_order(b, a); });
        sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
        std::vector<face_type> out;
        for (auto s : sets)
            if (std::none_of(out.begin(), out.end(), [&](face_type o) { return (s & ~o) == 0; }))
                out.push_back(s);
        return out;
    }

  private:
    template <class F>
    static void for_each_subset_of_size(const std::vector<int>& bits, std::size_t s, F&& f) {
        if (s > bits.size())
            return;
        std::vector<std::size_t> idx(s);
        for (std::size_t i = 0; i < s; ++i)
            idx[i] = i;
        while (true) {
            face_type m = 0;
            for (auto i : idx)
                m |= face_type{1} << bits[i];
            f(m);
            // next combination
            std::size_t i = s;
            while (i > 0 && idx[i - 1] == bits.size() - s + i - 1)
                --i;
            if (i == 0)
                return;
            ++idx[i - 1];
            for (std::size_t j = i; j < s; ++j)
                idx[j] = idx[j - 1] + 1;
        }
    }

    void check_size() const {
        if (labels_.size() > kMaxVertices)
            throw capacity_error("SimplicialComplex: more than " + std::to_string(kMaxVertices) + " vertices");
    }

    std::vector<std::size_t> labels_;
    std::vector<face_type> faces_;
    std::optional<int> truncated_at_;
};

/**
 * Ranks of reduced homology over Z/pZ, indexed by d + 1 for d = -1, 0, 1, ...
 * up to min(dimension, max_degree). The void complex yields an empty vector
 * (all homology vanishes); the irrelevant complex yields {1}.
 */
inline std::vector<std::size_t> reduced_homology_ranks(const SimplicialComplex& k, std::uint32_t p,
                                                       std::optional<int> max_degree = std::nullopt) {
    if (!is_prime(p))
        throw argument_error("reduced_homology_ranks: " + std::to_string(p) + " is not prime");
    if (k.is_void())
        return {};
    int top = k.dimension();
    if (max_degree)
        top = std::min(top, *max_degree);
    if (auto t = k.truncated_at(); t && (!max_degree || *max_degree > *t - 1))
        throw argument_error("reduced_homology_ranks: truncated complex needs max_degree below its cut");

    // Faces by dimension -1..top+1; faces() is sorted by size already.
    using face_type = SimplicialComplex::face_type;
    std::vector<std::vector<face_type>> by_dim(static_cast<std::size_t>(top + 3));
    face_type universe = 0;
    for (auto f : k.faces()) {
        universe |= f;
        const int d = std::popcount(f) - 1;
        if (d <= top + 1)
            by_dim[static_cast<std::size_t>(d + 1)].push_back(f);
    }
    const bool dense = (universe >> SimplicialComplex::kDenseVertices) == 0;
    std::vector<std::uint32_t> dense_index;
    if (dense)
        dense_index.assign(std::size_t{1} << std::bit_width(universe), 0);

    // rank of the boundary map from dimension d to d - 1
    auto boundary_rank = [&](int d) -> std::size_t {
        const auto& cols = by_dim[static_cast<std::size_t>(d + 1)];
        const auto& rows = by_dim[static_cast<std::size_t>(d)];
        if (cols.empty() || rows.empty())
            return 0;
        std::unordered_map<face_type, std::size_t> sparse_index;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (dense)
                dense_index[rows[r]] = static_cast<std::uint32_t>(r);
            else
                sparse_index.emplace(rows[r], r);
        }
        auto row_of = [&](face_type f) -> std::size_t { return dense ? dense_index[f] : sparse_index.at(f); };
        if (p == 2) {
            EchelonBasisF2 basis(rows.size());
            std::vector<std::uint64_t> v(basis.word_count());
            for (auto f : cols) {
                std::fill(v.begin(), v.end(), 0);
                for (face_type b = f; b; b &= b - 1) {
                    const std::size_t r = row_of(f & ~(b & (~b + 1)));
                    v[r / 64] ^= std::uint64_t{1} << (r % 64);
                }
                basis.insert(v);
                if (basis.rank() == rows.size())
                    break;
            }
            return basis.rank();
        }
        const PrimeField field(p);
        SparseEchelonBasis basis(field, rows.size());
        for (auto f : cols) {
            std::vector<SparseEchelonBasis::entry> v;
            int pos = 0;
            for (face_type b = f; b; b &= b - 1, ++pos)
                v.emplace_back(static_cast<std::uint32_t>(row_of(f & ~(b & (~b + 1)))), pos % 2 == 0 ? 1 : p - 1);
            std::sort(v.begin(), v.end());
            basis.insert(std::move(v));
            if (basis.rank() == rows.size())
                break;
        }
        return basis.rank();
    };

    std::vector<std::size_t> ranks(static_cast<std::size_t>(top + 2), 0);
    std::size_t rank_in = 0; // rank of boundary out of dimension d
    for (int d = -1; d <= top; ++d) {
        const std::size_t faces = by_dim[static_cast<std::size_t>(d + 1)].size();
        const std::size_t rank_from_above = boundary_rank(d + 1);
        ranks[static_cast<std::size_t>(d + 1)] = faces - rank_in - rank_from_above;
        rank_in = rank_from_above;
    }
    return ranks;
}

/// Multidegrees that are lcms of nonempty sets of generators.
inline std::vector<Monomial> lcm_lattice(const MonomialIdeal& I, std::size_t limit = kDefaultLatticeLimit) {
    if (I.is_zero() || I.is_unit())
        throw argument_error("lcm_lattice: ideal must be nonzero and proper");
    std::unordered_set<Monomial, MonomialHash> seen(I.gens().begin(), I.gens().end());
    std::vector<Monomial> work(I.gens().begin(), I.gens().end());
    // Every lcm of a generator set is reached by adding one generator at a time.
    for (std::size_t k = 0; k < work.size(); ++k) {
        for (const auto& g : I.gens()) {
            Monomial l = lcm(work[k], g);
            if (seen.insert(l).second) {
                work.push_back(l);
                if (work.size() > limit)
                    throw capacity_error("lcm_lattice: more than " + std::to_string(limit) + " elements");
            }
        }
    }
    std::sort(work.begin(), work.end());
    return work;
}

/**
 * Removes dominated vertices until none remain: if every facet containing u
 * also contains some v != u, deleting u is a strong collapse and preserves
 * the homotopy type. Returns the maximal facets of the core. A cone
 * collapses to a single facet.
 */
inline std::vector<SimplicialComplex::face_type> strong_collapse(std::vector<SimplicialComplex::face_type> facets) {
    using face_type = SimplicialComplex::face_type;
    facets = SimplicialComplex::maximal_sets(std::move(facets));
    bool changed = true;
    while (changed && facets.size() > 1) {
        changed = false;
        face_type vertices = 0;
        for (auto f : facets)
            vertices |= f;
        for (face_type b = vertices; b; b &= b - 1) {
            const face_type u = b & (~b + 1);
            face_type common = ~face_type{0};
            for (auto f : facets)
                if (f & u)
                    common &= f;
            if ((common & ~u) != 0) {
                for (auto& f : facets)
                    f &= ~u;
                facets = SimplicialComplex::maximal_sets(std::move(facets));
                changed = true;
                break;
            }
        }
    }
    return facets;
}

namespace detail {

/// Facets {i in supp(a) : g_i < a_i} for the generators g dividing x^a.
inline std::vector<SimplicialComplex::face_type> koszul_facets(const MonomialIdeal& I, const Monomial& a,
                                                               const std::vector<std::size_t>& support) {
    std::vector<SimplicialComplex::face_type> facets;
    for (const auto& g : I.gens()) {
        if (!divides_unchecked(g, a))
            continue;
        SimplicialComplex::face_type f = 0;
        for (std::size_t k = 0; k < support.size(); ++k)
            if (g[support[k]] < a[support[k]])
                f |= SimplicialComplex::face_type{1} << k;
        facets.push_back(f);
    }
    return facets;
}

inline std::vector<std::size_t> support_of(const Monomial& a) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < a.n_vars(); ++i)
        if (a[i] != 0)
            s.push_back(i);
    return s;
}

} // namespace detail

/**
 * Upper Koszul complex K^a(I): faces S of supp(a) with x^a / x_S in I.
 *
 * It is generated by the facets {i : g_i < a_i} over generators g | x^a,
 * since x^a / x_S lies in I exactly when some such g has S inside its facet.
 */
inline SimplicialComplex upper_koszul(const MonomialIdeal& I, const Monomial& a,
                                      std::optional<int> max_dim = std::nullopt) {
    if (a.n_vars() != I.n_vars())
        throw dimension_error("upper_koszul: multidegree ring does not match ideal");
    auto support = detail::support_of(a);
    auto facets = detail::koszul_facets(I, a, support);
    return SimplicialComplex::from_facets(std::move(support), std::move(facets), max_dim);
}

struct BettiKey {
    int i = 0;
    Monomial a;
    friend bool operator==(const BettiKey&, const BettiKey&) = default;
    friend bool operator<(const BettiKey& x, const BettiKey& y) {
        if (x.i != y.i)
            return x.i < y.i;
        return x.a < y.a;
    }
};

/// Nonzero multigraded Betti numbers beta_{i,a} over Z/pZ.
struct BettiTable {
    std::uint32_t characteristic = kDefaultPrime;
    std::size_t n_vars = 0;
    std::map<BettiKey, std::size_t> entries;

    std::size_t at(int i, const Monomial& a) const {
        auto it = entries.find(BettiKey{i, a});
        return it == entries.end() ? 0 : it->second;
    }

    /// Total Betti numbers beta_i = sum over a of beta_{i,a}.
    std::vector<std::size_t> totals() const {
        std::vector<std::size_t> out;
        for (const auto& [k, r] : entries) {
            if (out.size() <= static_cast<std::size_t>(k.i))
                out.resize(static_cast<std::size_t>(k.i) + 1, 0);
            out[static_cast<std::size_t>(k.i)] += r;
        }
        return out;
    }

    /// max (|a| - i) over nonzero entries.
    int regularity() const {
        int reg = std::numeric_limits<int>::min();
        for (const auto& [k, r] : entries)
            reg = std::max(reg, static_cast<int>(k.a.degree()) - k.i);
        return reg;
    }

    /// Same entries ignoring the characteristic.
    bool same_ranks(const BettiTable& o) const { return n_vars == o.n_vars && entries == o.entries; }
};

/**
 * Reduced homology ranks of K^a(I) (indexed by degree + 1, so entry i is
 * beta_{i,a}). With `reduce`, the complex is first shrunk by strong
 * collapses; with `max_degree`, only degrees up to it are computed.
 */
inline std::vector<std::size_t> koszul_homology(const MonomialIdeal& I, const Monomial& a, std::uint32_t p,
                                                std::optional<int> max_degree = std::nullopt, bool reduce = true) {
    auto support = detail::support_of(a);
    auto facets = detail::koszul_facets(I, a, support);
    if (reduce) {
        facets = strong_collapse(std::move(facets));
        if (facets.size() == 1 && facets.front() != 0)
            return {}; // contractible
        // Renumber the surviving vertices contiguously.
        SimplicialComplex::face_type used = 0;
        for (auto f : facets)
            used |= f;
        std::vector<std::size_t> labels;
        std::vector<int> slot(support.size(), -1);
        for (std::size_t k = 0; k < support.size(); ++k)
            if ((used >> k) & 1U) {
                slot[k] = static_cast<int>(labels.size());
                labels.push_back(support[k]);
            }
        for (auto& f : facets) {
            SimplicialComplex::face_type g = 0;
            for (SimplicialComplex::face_type b = f; b; b &= b - 1)
                g |= SimplicialComplex::face_type{1} << slot[static_cast<std::size_t>(std::countr_zero(b))];
            f = g;
        }
        support = std::move(labels);
    }
    std::optional<int> cut;
    if (max_degree)
        cut = *max_degree + 1;
    const auto k = SimplicialComplex::from_facets(std::move(support), std::move(facets), cut);
    return reduced_homology_ranks(k, p, max_degree);
}

struct BettiOptions {
    std::uint32_t prime = kDefaultPrime;
    std::size_t lattice_limit = kDefaultLatticeLimit;
    /// Shrink each K^a by strong collapses before the linear algebra.
    bool reduce = true;
};

inline BettiTable betti_table(const MonomialIdeal& I, const BettiOptions& opt = {}) {
    BettiTable table;
    table.characteristic = opt.prime;
    table.n_vars = I.n_vars();
    for (const auto& a : lcm_lattice(I, opt.lattice_limit)) {
        const auto ranks = koszul_homology(I, a, opt.prime, std::nullopt, opt.reduce);
        for (std::size_t k = 0; k < ranks.size(); ++k)
            if (ranks[k] != 0)
                table.entries.emplace(BettiKey{static_cast<int>(k), a}, ranks[k]);
    }
    return table;
}

inline BettiTable betti_table(const MonomialIdeal& I, std::uint32_t p) {
    BettiOptions opt;
    opt.prime = p;
    return betti_table(I, opt);
}

struct RegularityOptions {
    std::uint32_t prime = kDefaultPrime;
    std::size_t lattice_limit = kDefaultLatticeLimit;
    /// Skip multidegrees and homology degrees that cannot raise the maximum.
    bool prune = true;
    /// Shrink each K^a by strong collapses before the linear algebra.
    bool reduce = true;
    /// Only visit squarefree multidegrees.
    bool squarefree_only = false;
};

/**
 * reg(I) = max (|a| - i) over nonzero beta_{i,a}. Note reg(R/I) = reg(I) - 1.
 *
 * With pruning, beta_0 contributes the top generator degree up front; a
 * later multidegree a can only matter through beta_{i,a} with
 * i < |a| - best, i.e. homology of K^a in degrees <= |a| - best - 2.
 */
inline int regularity(const MonomialIdeal& I, const RegularityOptions& opt = {}) {
    if (I.is_zero() || I.is_unit())
        throw argument_error("regularity: ideal must be nonzero and proper");
    const bool prune = opt.prune;
    int best = prune ? static_cast<int>(I.max_generator_degree()) : std::numeric_limits<int>::min();
    for (const auto& a : lcm_lattice(I, opt.lattice_limit)) {
        if (opt.squarefree_only && !a.is_squarefree())
            continue;
        const int deg = static_cast<int>(a.degree());
        std::optional<int> max_h;
        if (prune) {
            max_h = deg - best - 2;
            if (*max_h < 0)
                continue; // only beta_0 could qualify, and generators are already counted
        }
        const auto ranks = koszul_homology(I, a, opt.prime, max_h, opt.reduce);
        for (std::size_t j = 0; j < ranks.size(); ++j)
            if (ranks[j] != 0) {
                best = std::max(best, deg - static_cast<int>(j));
                break;
            }
    }
    return best;
}

inline int regularity(const MonomialIdeal& I, std::uint32_t p) {
    RegularityOptions opt;
    opt.prime = p;
    return regularity(I, opt);
}

/// One failed self-check of a Betti table.
struct BettiDiscrepancy {
    std::string check;
    Monomial a;
    std::string detail;
};

/**
 * Consistency checks of a table against its ideal: for every lattice
 * multidegree the alternating sum of Betti numbers matches the face count
 * (sum_i (-1)^(i-1) beta_{i,a} = reduced Euler characteristic of K^a), and
 * beta_0 is supported exactly on the generators with rank one.
 */
inline std::vector<BettiDiscrepancy> betti_self_check(const MonomialIdeal& I, const BettiTable& table,
                                                      std::size_t lattice_limit = kDefaultLatticeLimit) {
    std::vector<BettiDiscrepancy> out;
    std::map<Monomial, long> alternating;
    for (const auto& [k, r] : table.entries)
        alternating[k.a] += (k.i % 2 == 1 ? 1L : -1L) * static_cast<long>(r);
    for (const auto& a : lcm_lattice(I, lattice_limit)) {
        const long chi = upper_koszul(I, a).reduced_euler_characteristic();
        const long alt = alternating.count(a) ? alternating[a] : 0;
        if (chi != alt)
            out.push_back({"euler", a, "alternating sum " + std::to_string(alt) + " vs chi " + std::to_string(chi)});
    }
    std::vector<Monomial> zeroth;
    for (const auto& [k, r] : table.entries)
        if (k.i == 0) {
            zeroth.push_back(k.a);
            if (r != 1)
                out.push_back({"beta0", k.a, "rank " + std::to_string(r)});
        }
    if (zeroth != I.gens())
        out.push_back({"beta0", Monomial(I.n_vars()), "beta_0 support differs from generators"});
    return out;
}

// Text format: `characteristic=<p>` header, then `i total_degree multidegree rank`
// per entry with the multidegree as comma-separated exponents, sorted by
// (i, total degree, multidegree).

inline void write_betti(std::ostream& os, const BettiTable& t) {
    os << "characteristic=" << t.characteristic << '\n';
    for (const auto& [k, r] : t.entries) {
        os << k.i << ' ' << k.a.degree() << ' ';
        for (std::size_t v = 0; v < k.a.n_vars(); ++v)
            os << (v ? "," : "") << k.a[v];
        os << ' ' << r << '\n';
    }
}

inline std::string serialize(const BettiTable& t) {
    std::ostringstream os;
    write_betti(os, t);
    return os.str();
}

} // namespace circreg
