#include <doctest.h>

#include <pexa/generate.hpp>
#include <pexa/lattice.hpp>

using namespace pexa;

namespace {

FiniteModule bmod() { return module_from_semiring(boolean_semifield()); }

std::vector<char> leq_from_pairs(int n, const std::vector<std::pair<int, int>>& strict) {
    std::vector<char> leq(static_cast<size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) leq[static_cast<size_t>(i) * n + i] = 1;
    for (auto [a, b] : strict) leq[static_cast<size_t>(a) * n + b] = 1;
    // transitive closure
    for (int k = 0; k < n; ++k)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (leq[static_cast<size_t>(a) * n + k] && leq[static_cast<size_t>(k) * n + b])
                    leq[static_cast<size_t>(a) * n + b] = 1;
    return leq;
}

}  // namespace

TEST_CASE("lattice_from_poset accepts lattices and rejects non-lattices") {
    FiniteLattice diamond = antichain_lattice(2);
    CHECK(diamond.size == 4);
    CHECK(diamond.join(1, 2) == 3);
    CHECK(diamond.meet(1, 2) == 0);

    // bottom plus two incomparable maximal elements: no join
    CHECK_THROWS_AS(lattice_from_poset("vee", 3, leq_from_pairs(3, {{0, 1}, {0, 2}})), Error);

    FiniteLattice n5 = pentagon_lattice();
    CHECK(n5.size == 5);
    CHECK(n5.join(1, 3) == 4);
    CHECK(n5.meet(2, 3) == 0);

    // a cyclic relation is not a partial order
    CHECK_THROWS_AS(lattice_from_poset("cyc", 2, {1, 1, 1, 1}), Error);
}

TEST_CASE("lattice morphism classification") {
    FiniteLattice l2 = antichain_lattice(2);
    FiniteLattice chain2 = chain_lattice(2);
    FiniteLattice chain3 = chain_lattice(3);

    // inclusion {0,a1} into L2
    LatticeMorphism inc = make_lattice_morphism(chain2, l2, {0, 1});
    CHECK(classify_lattice_morphism(inc) == MorphismClass::admissible_mono);

    // chain-3 -> chain-2 collapsing the atom
    LatticeMorphism collapse = make_lattice_morphism(chain3, chain2, {0, 0, 1});
    CHECK(classify_lattice_morphism(collapse) == MorphismClass::admissible_epi);

    // chain-3 -> chain-3 with 0,|-> 0, a |-> 1, 1 |-> 1: neither
    LatticeMorphism squash = make_lattice_morphism(chain3, chain3, {0, 2, 2});
    CHECK(classify_lattice_morphism(squash) == MorphismClass::neither);

    CHECK(classify_lattice_morphism(lattice_identity(l2)) == MorphismClass::iso);

    // a non-join-preserving map is rejected outright
    CHECK(!is_valid_lattice_morphism_map(l2, chain2, {0, 1, 1, 0}));
}

TEST_CASE("lattice quotients are upper intervals") {
    FiniteLattice chain3 = chain_lattice(3);
    auto [q, pr] = quotient_lattice(chain3, bit_of(0) | bit_of(1));
    CHECK(q.size == 2);
    CHECK(classify_lattice_morphism(pr) == MorphismClass::admissible_epi);

    FiniteLattice l3 = antichain_lattice(3);
    auto [q2, pr2] = quotient_lattice(l3, bit_of(0) | bit_of(1));
    CHECK(q2.size == 2);
    CHECK(find_lattice_isomorphism(q2, chain_lattice(2)).has_value());

    auto [q3, pr3] = quotient_lattice(l3, bit_of(0));
    CHECK(q3.size == l3.size);

    CHECK_THROWS_AS(quotient_lattice(l3, bit_of(0) | bit_of(4)), Error);  // not downward closed
}

TEST_CASE("saturated submodule lattice of small B-modules") {
    CHECK(find_lattice_isomorphism(saturated_submodule_lattice(bmod()), chain_lattice(2)).has_value());
    CHECK(saturated_submodule_lattice(zero_module(boolean_semifield())).size == 1);
    FiniteModule b2 = direct_product(bmod(), bmod());
    CHECK(find_lattice_isomorphism(saturated_submodule_lattice(b2), antichain_lattice(2)).has_value());
    CHECK_THROWS_AS(saturated_submodule_lattice(module_from_semiring(chain_semiring(2))), Error);
}

TEST_CASE("S on morphisms: identity, inclusions, projections") {
    FiniteModule b2 = direct_product(bmod(), bmod());
    LatticeMorphism s_id = s_on_morphism(identity_morphism(b2));
    for (size_t i = 0; i < s_id.map.size(); ++i) CHECK(s_id.map[i] == static_cast<int>(i));

    auto [sub, inc] = submodule_module(b2, 0x5);
    CHECK(classify_lattice_morphism(s_on_morphism(inc)) == MorphismClass::admissible_mono);

    QuotientResult q = quotient_module(b2, 0x5);
    CHECK(classify_lattice_morphism(s_on_morphism(q.projection)) == MorphismClass::admissible_epi);
}

TEST_CASE("S is functorial and transports classifications exactly") {
    auto corpus = generate_bmodules(4);
    for (const auto& m : corpus)
        for (const auto& n : corpus)
            for (const auto& f : enumerate_homs(m, n)) {
                LatticeMorphism sf = s_on_morphism(f);
                CHECK(to_string(classify_lattice_morphism(sf)) ==
                      to_string(classify_morphism(f)));
                for (const auto& g : enumerate_homs(n, m)) {
                    LatticeMorphism sg = s_on_morphism(g);
                    LatticeMorphism s_comp = s_on_morphism(compose(g, f));
                    CHECK(s_comp.map == compose(sg, sf).map);
                }
            }
}

TEST_CASE("round trips between B-modules and lattices") {
    for (const auto& m : generate_bmodules(5)) {
        FiniteModule back = compact_elements_module(saturated_submodule_lattice(m));
        CHECK(find_isomorphism(back, m).has_value());
    }
    for (const auto& l : generate_lattices(5)) {
        FiniteLattice back = saturated_submodule_lattice(compact_elements_module(l));
        CHECK(find_lattice_isomorphism(back, l).has_value());
    }
    CHECK(find_isomorphism(compact_elements_module(chain_lattice(2)), bmod()).has_value());
    CHECK(compact_elements_module(zero_lattice()).size == 1);
}

TEST_CASE("hom-set cardinalities agree under S, injectively") {
    auto corpus = generate_bmodules(4);
    for (const auto& m : corpus)
        for (const auto& n : corpus) {
            auto homs = enumerate_homs(m, n);
            auto join_maps = enumerate_join_maps(saturated_submodule_lattice(m),
                                                 saturated_submodule_lattice(n));
            CHECK(homs.size() == join_maps.size());
            // injectivity of f |-> S(f)
            std::vector<std::vector<int>> images;
            for (const auto& f : homs) images.push_back(s_on_morphism(f).map);
            std::sort(images.begin(), images.end());
            CHECK(std::adjacent_find(images.begin(), images.end()) == images.end());
        }
}

TEST_CASE("geometric reports") {
    for (int n = 1; n <= 4; ++n) {
        GeometricReport rep = is_geometric(boolean_lattice(n));
        CHECK(rep.geometric);
    }
    GeometricReport m3 = is_geometric(antichain_lattice(3));
    CHECK(m3.geometric);

    GeometricReport c3 = is_geometric(chain_lattice(3));
    CHECK(c3.jordan_dedekind);
    CHECK(c3.semimodular);
    CHECK(!c3.atomistic);
    CHECK(!c3.geometric);

    GeometricReport n5 = is_geometric(pentagon_lattice());
    CHECK(!n5.jordan_dedekind);
    CHECK(!n5.geometric);
    REQUIRE(n5.jd_witness.size() == 4);
    CHECK(n5.jd_witness[2] == 2);  // shortest maximal chain bottom..top
    CHECK(n5.jd_witness[3] == 3);  // longest

    for (int len = 3; len <= 6; ++len) CHECK(!is_geometric(chain_lattice(len)).atomistic);
}

TEST_CASE("normal epis compose to a single quotient") {
    FiniteLattice b3 = boolean_lattice(3);
    auto [q1, p1] = quotient_lattice(b3, b3.down_set(1));
    auto [q2, p2] = quotient_lattice(q1, q1.down_set(p1.map[2]));
    LatticeMorphism comp = compose(p2, p1);
    CHECK(classify_lattice_morphism(comp) == MorphismClass::admissible_epi);
}

TEST_CASE("lattice completion operations") {
    FiniteLattice l3 = antichain_lattice(3);
    auto [q, pr] = quotient_lattice(l3, bit_of(0) | bit_of(1), "q");
    // pullback of (0 -> L3/K, L3 ->> L3/K) recovers K
    FiniteLattice z = zero_lattice();
    LatticeMorphism zero_in = make_lattice_morphism(z, q, {q.bottom});
    LatticeSquare sq = complete_pullback_lattice(zero_in, pr);
    CHECK(sq.i.source.size == 2);
    CHECK(classify_lattice_morphism(sq.i) == MorphismClass::admissible_mono);
    CHECK(classify_lattice_morphism(sq.j) == MorphismClass::admissible_epi);

    // pushout of (K -> L3, K ->> 0) is the quotient
    auto [sub, inc] = sublattice_lattice(l3, bit_of(0) | bit_of(1));
    LatticeMorphism to_zero = make_lattice_morphism(sub, z, {0, 0});
    LatticeSquare po = complete_pushout_lattice(inc, to_zero);
    CHECK(po.j_prime.target.size == 2);
    CHECK(classify_lattice_morphism(po.i_prime) == MorphismClass::admissible_mono);
    CHECK(classify_lattice_morphism(po.j_prime) == MorphismClass::admissible_epi);
}
