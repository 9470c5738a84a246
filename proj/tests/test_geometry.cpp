#include <doctest.h>

#include <pexa/geometry.hpp>

using namespace pexa;

namespace {

HModule kmod() { return hmodule_from_hyperring(krasner_hyperfield()); }

// height-2 submodules: minimal among submodules properly containing an atom
std::vector<Mask> height2_submodules(const HModule& e) {
    std::vector<Mask> subs = enumerate_hsubmodules(e);
    std::vector<Mask> atoms, out;
    for (Mask s : subs)
        if (mask_size(s) == 2) atoms.push_back(s);
    for (Mask s : subs) {
        bool contains_atom = false;
        for (Mask a : atoms)
            if (a != s && (a & ~s) == 0) contains_atom = true;
        if (!contains_atom) continue;
        bool minimal = true;
        for (Mask t : subs) {
            if (t == s || (t & ~s)) continue;
            bool t_contains_atom = false;
            for (Mask a : atoms)
                if (a != t && (a & ~t) == 0) t_contains_atom = true;
            if (t_contains_atom) minimal = false;
        }
        if (minimal) out.push_back(s);
    }
    return out;
}

}  // namespace

TEST_CASE("is_kmodule") {
    CHECK(is_kmodule(en_module(4)));
    CHECK(is_kmodule(kmod()));
    // x+x = {x} read off the table
    std::vector<Mask> hadd = {bit_of(0), bit_of(1), bit_of(1), bit_of(1)};
    HModule bad = make_hmodule(krasner_hyperfield(), "bad", 2, hadd, {0, 0, 0, 1});
    CHECK(!is_kmodule(bad));
    HModule over_f3 = hmodule_from_hyperring(to_hypertable(prime_field(3)));
    CHECK_THROWS_AS(is_kmodule(over_f3), Error);
}

TEST_CASE("projective_geometry rejects non-K-modules") {
    std::vector<Mask> hadd = {bit_of(0), bit_of(1), bit_of(1), bit_of(1)};
    HModule bad = make_hmodule(krasner_hyperfield(), "bad", 2, hadd, {0, 0, 0, 1});
    CHECK_THROWS_AS(projective_geometry(bad), Error);
    CHECK_THROWS_AS(flag_count(bad), Error);
}

TEST_CASE("geometry of E4 and K") {
    IncidenceGeometry g4 = projective_geometry(en_module(4));
    CHECK(g4.n_points == 4);
    CHECK(g4.lines.size() == 1);
    CHECK(g4.lines[0] == (bit_of(1) | bit_of(2) | bit_of(3) | bit_of(4)));
    CHECK(g4.min_line_size == 4);
    CHECK(g4.cc_bound_holds);

    IncidenceGeometry gk = projective_geometry(kmod());
    CHECK(gk.n_points == 1);
    CHECK(gk.lines.empty());
    CHECK(gk.cc_bound_holds);
}

TEST_CASE("en_module boundary behaviour") {
    CHECK(en_module(4).size == 5);
    CHECK(enumerate_hsubmodules(en_module(4)).size() == 6);
    CHECK_THROWS_AS(en_module(2), Error);
    try {
        en_module(3);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::invalid_input);
        CHECK(std::string(e.what()).find("associativity") != std::string::npos);
        CHECK(std::string(e.what()).find("1,1,2") != std::string::npos);
    }
    IncidenceGeometry g5 = projective_geometry(en_module(5));
    CHECK(g5.n_points == 5);
    CHECK(g5.lines.size() == 1);
}

TEST_CASE("projective space K-modules pass the axioms") {
    for (auto [p, d] : std::vector<std::pair<int, int>>{{3, 0}, {3, 1}, {5, 1}, {3, 2}, {5, 2}}) {
        HModule e = projective_space_kmodule(p, d);
        CHECK(check_hmodule_axioms(e.ring, e).valid());
        CHECK(is_kmodule(e));
    }
    CHECK_THROWS_AS(projective_space_kmodule(2, 2), Error);
    CHECK_THROWS_AS(projective_space_kmodule(4, 1), Error);
    CHECK_THROWS_AS(projective_space_kmodule(7, 5), Error);  // size overflow
}

TEST_CASE("P0(F3) is the Krasner module, P1(F3) is E4") {
    HModule p0 = projective_space_kmodule(3, 0);
    CHECK(p0.size == 2);
    CHECK(find_h_isomorphism(p0, kmod()).has_value());
    HModule p1 = projective_space_kmodule(3, 1);
    CHECK(p1.size == 5);
    CHECK(find_h_isomorphism(p1, en_module(4)).has_value());
}

TEST_CASE("P1(F5) is a single six-point line") {
    HModule p1 = projective_space_kmodule(5, 1);
    CHECK(p1.size == 7);
    IncidenceGeometry g = projective_geometry(p1);
    CHECK(g.n_points == 6);
    CHECK(g.lines.size() == 1);
    CHECK(mask_size(g.lines[0]) == 6);
    CHECK(find_h_isomorphism(p1, en_module(6)).has_value());
}

TEST_CASE("projective planes over F3 and F5") {
    for (int p : {3, 5}) {
        HModule e = projective_space_kmodule(p, 2);
        int expected_points = (p * p * p - 1) / (p - 1);
        CHECK(e.size == expected_points + 1);
        IncidenceGeometry g = projective_geometry(e);
        CHECK(g.n_points == expected_points);
        CHECK(static_cast<int>(g.lines.size()) == expected_points);
        for (Mask l : g.lines) CHECK(mask_size(l) == p + 1);
        CHECK(g.min_line_size == p + 1);
        CHECK(g.cc_bound_holds);
        CHECK(flag_count(e) == expected_points * (p + 1));
    }
}

TEST_CASE("flag counts") {
    CHECK(flag_count(projective_space_kmodule(5, 2)) == 186);
    CHECK(flag_count(en_module(4)) == 4);
    CHECK(flag_count(kmod()) == 0);
}

TEST_CASE("quotient geometries are pencils of lines") {
    HModule p2 = projective_space_kmodule(5, 2);
    IncidenceGeometry q = quotient_geometry(p2, 1);
    CHECK(q.n_points == 6);
    CHECK(q.lines.size() == 1);
    // the points of the quotient biject with the lines of E through x
    IncidenceGeometry g = projective_geometry(p2);
    int through = 0;
    for (Mask l : g.lines)
        if (has_bit(l, 1)) ++through;
    CHECK(through == q.n_points);

    IncidenceGeometry qe4 = quotient_geometry(en_module(4), 1);
    CHECK(qe4.n_points == 1);
    CHECK(qe4.lines.empty());

    IncidenceGeometry qk = quotient_geometry(kmod(), 1);
    CHECK(qk.n_points == 0);

    CHECK_THROWS_AS(quotient_geometry(p2, 0), Error);

    IncidenceGeometry q3 = quotient_geometry(projective_space_kmodule(3, 2), 1);
    CHECK(q3.n_points == 4);
}

TEST_CASE("lines are exactly the height-2 submodules") {
    for (HModule e : {en_module(4), en_module(5), projective_space_kmodule(3, 2)}) {
        IncidenceGeometry g = projective_geometry(e);
        std::vector<Mask> lines_with_zero;
        for (Mask l : g.lines) lines_with_zero.push_back(l | bit_of(0));
        std::sort(lines_with_zero.begin(), lines_with_zero.end());
        std::vector<Mask> h2 = height2_submodules(e);
        std::sort(h2.begin(), h2.end());
        CHECK(lines_with_zero == h2);
    }
}

TEST_CASE("atoms of the submodule lattice are the points") {
    for (HModule e : {en_module(4), projective_space_kmodule(3, 1), projective_space_kmodule(3, 2)}) {
        std::vector<Mask> atoms;
        for (Mask s : enumerate_hsubmodules(e))
            if (mask_size(s) == 2) atoms.push_back(s);
        CHECK(static_cast<int>(atoms.size()) == e.size - 1);
        for (Mask a : atoms) CHECK(has_bit(a, 0));
    }
}
