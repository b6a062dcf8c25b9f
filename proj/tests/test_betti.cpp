#include <catch2/catch_amalgamated.hpp>

#include <circreg/betti.hpp>
#include <circreg/edge_ideals.hpp>

#include <numeric>
#include <random>
#include <set>

#include "oracles.hpp"

using namespace circreg;

namespace {

Monomial mono(std::vector<int> e) { return Monomial::from_vector(e); }

MonomialIdeal ideal(std::size_t n, std::vector<std::vector<int>> gens) {
    std::vector<Monomial> g;
    for (auto& e : gens)
        g.push_back(Monomial::from_vector(e));
    return MonomialIdeal(n, std::move(g));
}

MonomialIdeal random_ideal(std::mt19937_64& rng, std::size_t n, int max_exp, std::size_t max_gens) {
    std::vector<Monomial> g;
    const std::size_t k = 1 + rng() % max_gens;
    while (g.size() < k) {
        Monomial m(n);
        for (std::size_t i = 0; i < n; ++i)
            m.set(i, static_cast<unsigned>(rng() % static_cast<unsigned>(max_exp + 1)));
        if (!m.is_one())
            g.push_back(m);
    }
    return MonomialIdeal(n, std::move(g));
}

// The ideals on six variables used to validate the shortcuts.
std::vector<MonomialIdeal> six_variable_suite() {
    std::vector<MonomialIdeal> out;
    for (std::size_t a : {1, 2}) {
        const Graph g = cubic_circulant(3, a);
        const auto I = edge_ideal(g);
        out.push_back(I);
        out.push_back(power(I, 2));
        out.push_back(power(I, 3));
        out.push_back(symbolic_power(g, 2));
        out.push_back(symbolic_power(g, 3));
    }
    out.push_back(ideal(6, {{1, 1, 0, 0, 0, 0}, {0, 1, 1, 0, 0, 0}, {0, 0, 1, 1, 0, 0}, {0, 0, 0, 1, 1, 0},
                            {0, 0, 0, 0, 1, 1}, {1, 0, 0, 0, 0, 1}}));
    return out;
}

std::map<std::pair<int, std::uint32_t>, std::size_t> squarefree_entries(const BettiTable& t) {
    std::map<std::pair<int, std::uint32_t>, std::size_t> out;
    for (const auto& [k, r] : t.entries) {
        REQUIRE(k.a.is_squarefree());
        out[{k.i, static_cast<std::uint32_t>(k.a.support())}] = r;
    }
    return out;
}

} // namespace

TEST_CASE("lcm lattice") {
    CHECK(lcm_lattice(ideal(2, {{1, 1}})) == std::vector<Monomial>{mono({1, 1})});
    const auto two = lcm_lattice(ideal(2, {{1, 0}, {0, 1}}));
    CHECK(two.size() == 3);
    CHECK(std::find(two.begin(), two.end(), mono({1, 1})) != two.end());
    const auto tri = lcm_lattice(ideal(3, {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}));
    CHECK(tri.size() == 4);
    CHECK(std::find(tri.begin(), tri.end(), mono({1, 1, 1})) != tri.end());
    CHECK_THROWS_AS(lcm_lattice(MonomialIdeal::zero(2)), argument_error);
    CHECK_THROWS_AS(lcm_lattice(MonomialIdeal::unit(2)), argument_error);
    CHECK_THROWS_AS(lcm_lattice(edge_ideal(cubic_circulant(3, 1)), 10), capacity_error);
}

TEST_CASE("upper Koszul complexes") {
    const auto k1 = upper_koszul(ideal(2, {{1, 1}}), mono({1, 1}));
    CHECK(k1.is_irrelevant());
    const auto k2 = upper_koszul(ideal(2, {{1, 0}, {0, 1}}), mono({1, 1}));
    CHECK(k2.faces() == std::vector<SimplicialComplex::face_type>{0, 1, 2});
    CHECK(k2.labels() == std::vector<std::size_t>{0, 1});
    const auto k3 = upper_koszul(ideal(2, {{2, 0}}), mono({1, 1}));
    CHECK(k3.is_void());
    CHECK_THROWS_AS(upper_koszul(ideal(2, {{1, 0}}), mono({1, 0, 0})), dimension_error);
}

TEST_CASE("reduced homology conventions") {
    CHECK(reduced_homology_ranks(SimplicialComplex::void_complex({0, 1}), 2).empty());
    CHECK(reduced_homology_ranks(SimplicialComplex::irrelevant({0}), 2) == std::vector<std::size_t>{1});
    const auto hollow_edge = SimplicialComplex::from_facets({0, 1}, {0b01, 0b10});
    CHECK(reduced_homology_ranks(hollow_edge, 2) == std::vector<std::size_t>{0, 1});
    const auto hollow_triangle = SimplicialComplex::from_facets({0, 1, 2}, {0b011, 0b110, 0b101});
    for (std::uint32_t p : {2U, 3U, 32003U}) {
        const auto h = reduced_homology_ranks(hollow_triangle, p);
        CHECK(h == std::vector<std::size_t>{0, 0, 1});
    }
    CHECK(hollow_triangle.reduced_euler_characteristic() == -1);
    const auto solid = SimplicialComplex::from_facets({0, 1, 2}, {0b111});
    CHECK(reduced_homology_ranks(solid, 2) == std::vector<std::size_t>{0, 0, 0, 0});
    CHECK_THROWS_AS(reduced_homology_ranks(solid, 4), argument_error);
    // a truncated complex cannot answer questions above its cut
    const auto cut = SimplicialComplex::from_facets({0, 1, 2}, {0b111}, 1);
    CHECK(cut.truncated_at() == 1);
    CHECK_NOTHROW(reduced_homology_ranks(cut, 2, 0));
    CHECK_THROWS_AS(reduced_homology_ranks(cut, 2), argument_error);
}

TEST_CASE("homology matches the dense oracle on random complexes") {
    std::mt19937_64 rng(99);
    for (int round = 0; round < 60; ++round) {
        const std::size_t n = 3 + rng() % 5;
        std::vector<SimplicialComplex::face_type> facets;
        const std::size_t k = 1 + rng() % 6;
        for (std::size_t j = 0; j < k; ++j)
            facets.push_back(static_cast<SimplicialComplex::face_type>(rng() % (1U << n)));
        std::vector<std::size_t> labels(n);
        std::iota(labels.begin(), labels.end(), 0);
        const auto cx = SimplicialComplex::from_facets(labels, facets);
        std::set<std::vector<int>> faces;
        for (auto f : cx.faces()) {
            std::vector<int> v;
            for (std::size_t i = 0; i < n; ++i)
                if ((f >> i) & 1U)
                    v.push_back(static_cast<int>(i));
            faces.insert(v);
        }
        for (std::uint32_t p : {2U, 32003U}) {
            auto got = reduced_homology_ranks(cx, p);
            auto want = oracle::homology(faces, p);
            CHECK(got == want);
        }
        // strong collapse preserves homology
        const auto core = strong_collapse(facets);
        const auto reduced = SimplicialComplex::from_facets(labels, core);
        auto a = reduced_homology_ranks(reduced, 2);
        auto b = reduced_homology_ranks(cx, 2);
        a.resize(std::max(a.size(), b.size()), 0);
        b.resize(a.size(), 0);
        if (core.size() == 1 && core.front() != 0)
            CHECK(std::all_of(b.begin(), b.end(), [](std::size_t x) { return x == 0; }));
        else
            CHECK(a == b);
    }
}

TEST_CASE("Betti table examples") {
    const auto t1 = betti_table(ideal(2, {{1, 1}}));
    CHECK(t1.entries.size() == 1);
    CHECK(t1.at(0, mono({1, 1})) == 1);
    const auto t2 = betti_table(ideal(2, {{1, 0}, {0, 1}}));
    CHECK(t2.at(0, mono({1, 0})) == 1);
    CHECK(t2.at(0, mono({0, 1})) == 1);
    CHECK(t2.at(1, mono({1, 1})) == 1);
    CHECK(t2.entries.size() == 3);
    const auto tri = betti_table(ideal(3, {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}));
    CHECK(tri.totals() == std::vector<std::size_t>{3, 2});
    CHECK(tri.at(1, mono({1, 1, 1})) == 2);
    CHECK_THROWS_AS(betti_table(MonomialIdeal::unit(3)), argument_error);
}

TEST_CASE("regularity examples") {
    CHECK(regularity(ideal(2, {{1, 1}})) == 2);
    CHECK(regularity(edge_ideal(cubic_circulant(3, 1))) == 2);
    CHECK(regularity(edge_ideal(cubic_circulant(5, 1))) == 4);
    CHECK_THROWS_AS(regularity(MonomialIdeal::zero(2)), argument_error);
    CHECK_THROWS_AS(regularity(MonomialIdeal::unit(2)), argument_error);
    RegularityOptions tight;
    tight.lattice_limit = 5;
    CHECK_THROWS_AS(regularity(edge_ideal(cubic_circulant(3, 1)), tight), capacity_error);
}

TEST_CASE("Betti tables agree with Hochster's formula on squarefree ideals") {
    std::vector<MonomialIdeal> cases;
    for (std::size_t a : {1, 2})
        cases.push_back(edge_ideal(cubic_circulant(3, a)));
    cases.push_back(edge_ideal(circulant(7, {1})));
    std::mt19937_64 rng(41);
    for (int k = 0; k < 30; ++k)
        cases.push_back(random_ideal(rng, 3 + rng() % 5, 1, 6));
    for (const auto& I : cases)
        for (std::uint32_t p : {2U, 32003U}) {
            const auto want = oracle::hochster(I, p);
            const auto got = squarefree_entries(betti_table(I, p));
            CHECK(got == want);
        }
}

TEST_CASE("regularity agrees with polarization and Hochster's formula") {
    std::mt19937_64 rng(43);
    for (int k = 0; k < 40; ++k) {
        const auto I = random_ideal(rng, 2 + rng() % 3, 2, 5);
        if (I.is_unit())
            continue;
        CHECK(regularity(I) == oracle::regularity(I));
    }
    const auto path = edge_ideal(Graph(4, {{0, 1}, {1, 2}, {2, 3}}));
    CHECK(regularity(power(path, 2)) == oracle::regularity(power(path, 2)));
    const auto tri = edge_ideal(circulant(3, {1}));
    CHECK(regularity(power(tri, 2)) == oracle::regularity(power(tri, 2)));
    const auto prism2 = colon_by_tuple(cubic_circulant(3, 2), EdgeTuple(cubic_circulant(3, 2), {{0, 2}, {2, 4}}));
    CHECK(regularity(prism2) == oracle::regularity(prism2));
}

TEST_CASE("pruning and collapsing leave the answer unchanged") {
    for (const auto& I : six_variable_suite()) {
        RegularityOptions plain;
        plain.prune = false;
        plain.reduce = false;
        const int base = regularity(I, plain);
        for (bool prune : {false, true})
            for (bool reduce : {false, true}) {
                RegularityOptions o;
                o.prune = prune;
                o.reduce = reduce;
                CHECK(regularity(I, o) == base);
            }
        BettiOptions raw;
        raw.reduce = false;
        const auto full = betti_table(I, raw);
        CHECK(full.same_ranks(betti_table(I)));
        CHECK(full.regularity() == base);
        CHECK(base >= static_cast<int>(I.max_generator_degree()));
    }
}

TEST_CASE("Betti table self-consistency") {
    for (const auto& I : six_variable_suite()) {
        const auto t = betti_table(I);
        const auto issues = betti_self_check(I, t);
        CHECK(issues.empty());
        // alternating sums against independent face counts
        std::map<Monomial, long> alt;
        for (const auto& [k, r] : t.entries)
            alt[k.a] += (k.i % 2 ? 1 : -1) * static_cast<long>(r);
        for (const auto& a : lcm_lattice(I)) {
            const auto cx = upper_koszul(I, a);
            long chi = 0;
            for (auto f : cx.faces())
                chi += std::popcount(f) % 2 ? 1 : -1;
            CHECK(alt[a] == chi);
        }
        std::vector<Monomial> zeroth;
        for (const auto& [k, r] : t.entries)
            if (k.i == 0) {
                zeroth.push_back(k.a);
                CHECK(r == 1);
            }
        CHECK(zeroth == I.gens());
    }
    // a corrupted table is caught
    const auto I = edge_ideal(cubic_circulant(3, 2));
    auto t = betti_table(I);
    t.entries.begin()->second = 2;
    CHECK_FALSE(betti_self_check(I, t).empty());
}

TEST_CASE("characteristic 2 and 32003 agree on the six-variable suite") {
    for (const auto& I : six_variable_suite()) {
        const auto a = betti_table(I, 2);
        const auto b = betti_table(I, kCheckPrime);
        CHECK(a.same_ranks(b));
        CHECK(a.characteristic == 2);
        CHECK(b.characteristic == kCheckPrime);
    }
}

TEST_CASE("squarefree multidegrees suffice for squarefree ideals") {
    std::mt19937_64 rng(47);
    std::vector<MonomialIdeal> cases = {edge_ideal(cubic_circulant(3, 2)), edge_ideal(cubic_circulant(5, 2))};
    for (int k = 0; k < 20; ++k)
        cases.push_back(random_ideal(rng, 4 + rng() % 4, 1, 8));
    for (const auto& I : cases) {
        RegularityOptions sq;
        sq.squarefree_only = true;
        CHECK(regularity(I, sq) == regularity(I));
    }
}

TEST_CASE("Betti table text format") {
    const auto t = betti_table(ideal(2, {{1, 0}, {0, 1}}), 3);
    CHECK(serialize(t) == "characteristic=3\n0 1 1,0 1\n0 1 0,1 1\n1 2 1,1 1\n");
}
