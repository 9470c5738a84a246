#include <doctest.h>

#include <pexa/tables.hpp>

using namespace pexa;

namespace {

// Independent naive re-check of every semiring axiom by literal loops,
// kept deliberately separate from the library's scan machinery.
bool naive_semiring_valid(const SemiringTable& t) {
    int n = t.size;
    for (int a = 0; a < n; ++a) {
        if (t.plus(a, 0) != a || t.plus(0, a) != a) return false;
        if (t.times(t.one(), a) != a) return false;
        if (t.times(0, a) != 0 || t.times(a, 0) != 0) return false;
        for (int b = 0; b < n; ++b) {
            if (t.plus(a, b) != t.plus(b, a)) return false;
            if (t.times(a, b) != t.times(b, a)) return false;
            for (int c = 0; c < n; ++c) {
                if (t.plus(t.plus(a, b), c) != t.plus(a, t.plus(b, c))) return false;
                if (t.times(t.times(a, b), c) != t.times(a, t.times(b, c))) return false;
                if (t.times(t.plus(a, b), c) != t.plus(t.times(a, c), t.times(b, c))) return false;
            }
        }
    }
    return true;
}

}  // namespace

TEST_CASE("Boolean semifield tables") {
    SemiringTable b = boolean_semifield();
    CHECK(b.size == 2);
    CHECK(b.plus(0, 0) == 0);
    CHECK(b.plus(1, 0) == 1);
    CHECK(b.plus(1, 1) == 1);
    CHECK(b.times(1, 1) == 1);
    CHECK(b.idempotent);
    CHECK(check_semiring_axioms(b).valid());
    CHECK(naive_semiring_valid(b));
}

TEST_CASE("additive identity violation is witnessed at (0)") {
    SemiringTable t = make_semiring("bad", 2, {1, 1, 1, 1}, {0, 0, 0, 1});
    AxiomReport rep = check_semiring_axioms(t);
    CHECK(!rep.valid());
    const Violation* v = rep.find("add_identity");
    REQUIRE(v != nullptr);
    CHECK(v->witness == std::vector<int>{0});
    // every reported violation re-fails its named axiom
    for (const auto& viol : rep.violations)
        CHECK(!recheck_semiring_axiom(t, viol.axiom, viol.witness));
}

TEST_CASE("chain semiring is valid over all triples") {
    SemiringTable c = chain_semiring(2);
    CHECK(c.size == 3);
    CHECK(check_semiring_axioms(c).valid());
    CHECK(naive_semiring_valid(c));
    CHECK(c.idempotent);
    SemiringTable c5 = chain_semiring(5);
    CHECK(check_semiring_axioms(c5).valid());
    CHECK(naive_semiring_valid(c5));
}

TEST_CASE("zero semiring") {
    SemiringTable z = zero_semiring();
    CHECK(z.size == 1);
    CHECK(check_semiring_axioms(z).valid());
}

TEST_CASE("every builtin passes its own axiom checker") {
    for (const char* name : {"B", "K", "S", "zero", "chain_1", "chain_2", "chain_3", "chain_7"}) {
        BuiltinTable t = builtin(name);
        if (const auto* s = std::get_if<SemiringTable>(&t))
            CHECK(check_semiring_axioms(*s).valid());
        else
            CHECK(check_hyperstructure_axioms(std::get<HyperTable>(t)).valid());
    }
}

TEST_CASE("builtin dispatch") {
    CHECK(std::holds_alternative<SemiringTable>(builtin("B")));
    CHECK(std::holds_alternative<HyperTable>(builtin("K")));
    CHECK(std::holds_alternative<HyperTable>(builtin("S")));
    CHECK(std::holds_alternative<SemiringTable>(builtin("zero")));
    CHECK(std::holds_alternative<SemiringTable>(builtin("chain_3")));
    CHECK_THROWS_AS(builtin("nope"), Error);
}

TEST_CASE("Krasner hyperfield: 1+1 = {0,1}") {
    HyperTable k = krasner_hyperfield();
    CHECK(k.sum(1, 1) == (bit_of(0) | bit_of(1)));
    CHECK(k.sum(1, 0) == bit_of(1));
    CHECK(k.kind == HyperKind::hyperfield);
    CHECK(check_hyperstructure_axioms(k).valid());
}

TEST_CASE("sign hyperfield: 1+(-1) is everything") {
    HyperTable s = sign_hyperfield();
    CHECK(s.size == 3);
    CHECK(s.sum(1, 2) == (bit_of(0) | bit_of(1) | bit_of(2)));
    CHECK(s.sum(1, 1) == bit_of(1));
    CHECK(s.sum(2, 2) == bit_of(2));
    CHECK(s.times(2, 2) == 1);
    CHECK(check_hyperstructure_axioms(s).valid());
}

TEST_CASE("structural errors are distinct from axiom violations") {
    CHECK_THROWS_AS(make_semiring("bad", 2, {0, 1, 1, 5}, {0, 0, 0, 1}), Error);
    try {
        make_semiring("bad", 2, {0, 1, 1, 5}, {0, 0, 0, 1});
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::invalid_input);
    }
    CHECK_THROWS_AS(make_hypertable("bad", 2, HyperKind::hyperring,
                                    {bit_of(0), 0, bit_of(1), bit_of(0)}, {0, 0, 0, 1}),
                    Error);
}

TEST_CASE("hypergroup axiom violations carry first witnesses that re-fail") {
    // break associativity: a 3-element table with 1+1 = {2}, 1+2 = {1}
    std::vector<Mask> hadd = {
        bit_of(0), bit_of(1), bit_of(2),
        bit_of(1), bit_of(2), bit_of(0) | bit_of(1),
        bit_of(2), bit_of(0) | bit_of(1), bit_of(1),
    };
    HyperTable t = make_hypertable("bad", 3, HyperKind::hypergroup, hadd, {});
    AxiomReport rep = check_hyperstructure_axioms(t);
    CHECK(!rep.valid());
    for (const auto& v : rep.violations) CHECK(!recheck_hyper_axiom(t, v.axiom, v.witness));
}

TEST_CASE("quotient hyperring F3 / {1,2} reproduces the Krasner hyperfield") {
    RingTable f3 = prime_field(3);
    CHECK(check_ring_axioms(f3).valid());
    HyperTable q = quotient_hyperring(f3, bit_of(1) | bit_of(2));
    CHECK(q.size == 2);
    CHECK(q.sum(1, 1) == (bit_of(0) | bit_of(1)));
    CHECK(q.kind == HyperKind::hyperfield);
    CHECK(check_hyperstructure_axioms(q).valid());
    HyperTable k = krasner_hyperfield();
    CHECK(q.hyperadd == k.hyperadd);
    CHECK(q.mul == k.mul);
    CHECK(find_hypertable_isomorphism(q, k).has_value());
}

TEST_CASE("quotient hyperring by the trivial group is the ring itself") {
    RingTable f3 = prime_field(3);
    HyperTable q = quotient_hyperring(f3, bit_of(1));
    CHECK(q.size == 3);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) CHECK(q.sum(a, b) == bit_of(f3.base.plus(a, b)));
    CHECK(check_hyperstructure_axioms(q).valid());
}

TEST_CASE("quotient hyperring F5 / {1,4}") {
    RingTable f5 = prime_field(5);
    HyperTable q = quotient_hyperring(f5, bit_of(1) | bit_of(4));
    // classes {0}, {1,4}, {2,3}
    CHECK(q.size == 3);
    CHECK(q.sum(1, 1) == (bit_of(0) | bit_of(2)));
    CHECK(check_hyperstructure_axioms(q).valid());
}

TEST_CASE("quotient by the full unit group of F_p is Krasner for p = 3,5,7,11") {
    for (int p : {3, 5, 7, 11}) {
        RingTable fp = prime_field(p);
        Mask units = 0;
        for (int u = 1; u < p; ++u) units |= bit_of(u);
        HyperTable q = quotient_hyperring(fp, units);
        CHECK(q.size == 2);
        CHECK(find_hypertable_isomorphism(q, krasner_hyperfield()).has_value());
    }
}

TEST_CASE("quotient hyperring rejects non-subgroups") {
    RingTable f5 = prime_field(5);
    CHECK_THROWS_AS(quotient_hyperring(f5, bit_of(1) | bit_of(2)), Error);  // 2*2=4 escapes
    CHECK_THROWS_AS(quotient_hyperring(f5, bit_of(2) | bit_of(3)), Error);  // missing 1
    CHECK_THROWS_AS(quotient_hyperring(f5, bit_of(0) | bit_of(1)), Error);  // 0 not a unit
}

TEST_CASE("a ring viewed as a hypertable passes the hyperring axioms") {
    for (int p : {2, 3, 5}) {
        HyperTable h = to_hypertable(prime_field(p));
        CHECK(check_hyperstructure_axioms(h).valid());
    }
}

TEST_CASE("exhaustiveness: random single-cell corruptions are caught") {
    // a corrupted cell must flip the verdict or keep the table valid under
    // the independent naive checker
    SemiringTable base = chain_semiring(2);
    for (int cell = 0; cell < base.size * base.size; ++cell)
        for (int val = 0; val < base.size; ++val) {
            SemiringTable t = base;
            t.add[static_cast<size_t>(cell)] = val;
            t = make_semiring(t.name, t.size, t.add, t.mul);
            CHECK(check_semiring_axioms(t).valid() == naive_semiring_valid(t));
        }
}
