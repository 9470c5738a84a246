#pragma once

/// Finite semirings, rings, hypergroups, hyperrings and hyperfields given by
/// explicit operation tables, together with exhaustive axiom checkers and the
/// quotient-hyperring construction A/G.
///
/// Conventions: element 0 is always the additive identity, element 1 the
/// multiplicative identity (when size >= 2). Subsets are bitmasks.

#include <algorithm>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "core.hpp"

namespace pexa {

namespace detail {

inline void require_square_table(const std::vector<int>& t, int size, const char* what) {
    if (size <= 0) fail_input(std::string(what) + ": nonpositive size");
    if (t.size() != static_cast<size_t>(size) * static_cast<size_t>(size))
        fail_input(std::string(what) + ": table is not size*size");
    for (int v : t)
        if (v < 0 || v >= size) fail_input(std::string(what) + ": entry out of range");
}

}  // namespace detail

struct SemiringTable {
    std::string name;
    int size = 0;
    std::vector<int> add;  // row-major size*size
    std::vector<int> mul;
    bool idempotent = false;  // cached: a+a = a for all a

    int plus(int a, int b) const { return add[static_cast<size_t>(a) * size + b]; }
    int times(int a, int b) const { return mul[static_cast<size_t>(a) * size + b]; }
    int zero() const { return 0; }
    int one() const { return size >= 2 ? 1 : 0; }

    bool same_structure(const SemiringTable& o) const {
        return size == o.size && add == o.add && mul == o.mul;
    }
};

struct RingTable {
    SemiringTable base;
    std::vector<int> neg;  // additive inverses

    int size() const { return base.size; }
};

enum class HyperKind { hypergroup, hyperring, hyperfield };

inline const char* to_string(HyperKind k) {
    switch (k) {
        case HyperKind::hypergroup: return "hypergroup";
        case HyperKind::hyperring: return "hyperring";
        default: return "hyperfield";
    }
}

/// A finite hyperstructure: set-valued addition plus (for hyperrings and
/// hyperfields) single-valued multiplication. For kind == hypergroup the mul
/// table is carried but never consulted.
struct HyperTable {
    std::string name;
    int size = 0;
    HyperKind kind = HyperKind::hyperring;
    std::vector<Mask> hyperadd;  // row-major size*size, nonempty cells
    std::vector<int> mul;
    std::vector<int> neg;  // -1 where no unique negative exists

    Mask sum(int a, int b) const { return hyperadd[static_cast<size_t>(a) * size + b]; }
    int times(int a, int b) const { return mul[static_cast<size_t>(a) * size + b]; }
    int zero() const { return 0; }
    int one() const { return size >= 2 ? 1 : 0; }

    Mask sum_sets(Mask x, Mask y) const {
        Mask out = 0;
        for_each_bit(x, [&](int a) { for_each_bit(y, [&](int b) { out |= sum(a, b); }); });
        return out;
    }

    bool same_structure(const HyperTable& o) const {
        return size == o.size && hyperadd == o.hyperadd &&
               (kind == HyperKind::hypergroup ? o.kind == HyperKind::hypergroup : mul == o.mul);
    }
};

namespace detail {

inline std::vector<int> compute_negatives(int size, const std::vector<Mask>& hyperadd) {
    std::vector<int> neg(static_cast<size_t>(size), -1);
    for (int a = 0; a < size; ++a) {
        int found = -1;
        bool unique = true;
        for (int b = 0; b < size; ++b) {
            if (has_bit(hyperadd[static_cast<size_t>(a) * size + b], 0)) {
                if (found < 0)
                    found = b;
                else
                    unique = false;
            }
        }
        if (found >= 0 && unique) neg[static_cast<size_t>(a)] = found;
    }
    return neg;
}

inline void require_hyper_table(const std::vector<Mask>& t, int size, const char* what) {
    if (size <= 0) fail_input(std::string(what) + ": nonpositive size");
    if (t.size() != static_cast<size_t>(size) * static_cast<size_t>(size))
        fail_input(std::string(what) + ": table is not size*size");
    Mask full = full_mask(size);
    for (Mask m : t) {
        if (m == 0) fail_input(std::string(what) + ": empty hyperaddition cell");
        if (m & ~full) fail_input(std::string(what) + ": hyperaddition cell out of range");
    }
}

}  // namespace detail

inline SemiringTable make_semiring(std::string name, int size, std::vector<int> add,
                                   std::vector<int> mul) {
    detail::require_square_table(add, size, "semiring add");
    detail::require_square_table(mul, size, "semiring mul");
    SemiringTable t{std::move(name), size, std::move(add), std::move(mul), false};
    t.idempotent = true;
    for (int a = 0; a < size; ++a)
        if (t.plus(a, a) != a) t.idempotent = false;
    return t;
}

inline RingTable make_ring(std::string name, int size, std::vector<int> add, std::vector<int> mul,
                           std::vector<int> neg) {
    if (neg.size() != static_cast<size_t>(size)) fail_input("ring neg: wrong length");
    for (int v : neg)
        if (v < 0 || v >= size) fail_input("ring neg: entry out of range");
    return RingTable{make_semiring(std::move(name), size, std::move(add), std::move(mul)),
                     std::move(neg)};
}

inline HyperTable make_hypertable(std::string name, int size, HyperKind kind,
                                  std::vector<Mask> hyperadd, std::vector<int> mul) {
    detail::require_hyper_table(hyperadd, size, "hyperaddition");
    if (kind == HyperKind::hypergroup && mul.empty())
        mul.assign(static_cast<size_t>(size) * static_cast<size_t>(size), 0);
    detail::require_square_table(mul, size, "hyper mul");
    HyperTable t{std::move(name), size, kind, std::move(hyperadd), std::move(mul), {}};
    t.neg = detail::compute_negatives(size, t.hyperadd);
    return t;
}

// ---------------------------------------------------------------------------
// Axiom checkers. Each named axiom is scanned over all tuples in
// lexicographic order and the first witness is reported, so output is
// deterministic and every reported tuple re-fails its axiom on recheck.

namespace detail {

template <typename Pred, typename... Ranges>
void scan_axiom(AxiomReport& report, const std::string& name, Pred&& ok, int size, int arity) {
    std::vector<int> tuple(static_cast<size_t>(arity), 0);
    while (true) {
        if (!ok(tuple)) {
            report.violations.push_back({name, tuple});
            return;
        }
        int i = arity - 1;
        while (i >= 0 && tuple[static_cast<size_t>(i)] == size - 1) {
            tuple[static_cast<size_t>(i)] = 0;
            --i;
        }
        if (i < 0) return;
        ++tuple[static_cast<size_t>(i)];
    }
}

}  // namespace detail

inline bool recheck_semiring_axiom(const SemiringTable& t, const std::string& axiom,
                                   const std::vector<int>& w) {
    auto a = [&](size_t i) { return w[i]; };
    if (axiom == "add_commutative") return t.plus(a(0), a(1)) == t.plus(a(1), a(0));
    if (axiom == "add_associative")
        return t.plus(t.plus(a(0), a(1)), a(2)) == t.plus(a(0), t.plus(a(1), a(2)));
    if (axiom == "add_identity") return t.plus(a(0), 0) == a(0);
    if (axiom == "mul_commutative") return t.times(a(0), a(1)) == t.times(a(1), a(0));
    if (axiom == "mul_associative")
        return t.times(t.times(a(0), a(1)), a(2)) == t.times(a(0), t.times(a(1), a(2)));
    if (axiom == "mul_identity") return t.times(t.one(), a(0)) == a(0);
    if (axiom == "zero_absorbing") return t.times(0, a(0)) == 0;
    if (axiom == "distributive")
        return t.times(t.plus(a(0), a(1)), a(2)) == t.plus(t.times(a(0), a(2)), t.times(a(1), a(2)));
    fail_input("unknown semiring axiom: " + axiom);
}

/// Exhaustive check of the commutative-monoid, absorption and distributivity
/// axioms over all element tuples.
inline AxiomReport check_semiring_axioms(const SemiringTable& t) {
    detail::require_square_table(t.add, t.size, "semiring add");
    detail::require_square_table(t.mul, t.size, "semiring mul");
    AxiomReport r;
    auto scan = [&](const char* name, int arity) {
        detail::scan_axiom(r, name,
                           [&](const std::vector<int>& w) { return recheck_semiring_axiom(t, name, w); },
                           t.size, arity);
    };
    scan("add_commutative", 2);
    scan("add_associative", 3);
    scan("add_identity", 1);
    scan("mul_commutative", 2);
    scan("mul_associative", 3);
    scan("mul_identity", 1);
    scan("zero_absorbing", 1);
    scan("distributive", 3);
    return r;
}

inline bool recheck_ring_axiom(const RingTable& t, const std::string& axiom,
                               const std::vector<int>& w) {
    if (axiom == "additive_inverse")
        return t.base.plus(w[0], t.neg[static_cast<size_t>(w[0])]) == 0;
    return recheck_semiring_axiom(t.base, axiom, w);
}

inline AxiomReport check_ring_axioms(const RingTable& t) {
    AxiomReport r = check_semiring_axioms(t.base);
    detail::scan_axiom(r, "additive_inverse",
                       [&](const std::vector<int>& w) { return recheck_ring_axiom(t, "additive_inverse", w); },
                       t.base.size, 1);
    return r;
}

namespace detail {

// Hypergroup axioms on a bare hyperaddition table; shared by HyperTable and
// by module checkers in hmod.
inline bool recheck_hypergroup_axiom(int size, const std::vector<Mask>& hadd,
                                     const std::vector<int>& neg, const std::string& axiom,
                                     const std::vector<int>& w) {
    auto sum = [&](int a, int b) { return hadd[static_cast<size_t>(a) * size + b]; };
    auto sum_set = [&](Mask x, int c) {
        Mask out = 0;
        for_each_bit(x, [&](int a) { out |= sum(a, c); });
        return out;
    };
    if (axiom == "hyperadd_commutative") return sum(w[0], w[1]) == sum(w[1], w[0]);
    if (axiom == "hyperadd_associative")
        return sum_set(sum(w[0], w[1]), w[2]) == sum_set(sum(w[1], w[2]), w[0]);
    if (axiom == "zero_identity") return sum(w[0], 0) == bit_of(w[0]);
    if (axiom == "zero_unique") {
        // w = (e): some e != 0 also acts as an identity
        if (w[0] == 0) return true;
        for (int a = 0; a < size; ++a)
            if (sum(a, w[0]) != bit_of(a)) return true;
        return false;
    }
    if (axiom == "negative_exists") {
        for (int b = 0; b < size; ++b)
            if (has_bit(sum(w[0], b), 0)) return true;
        return false;
    }
    if (axiom == "negative_unique") {
        int count = 0;
        for (int b = 0; b < size; ++b)
            if (has_bit(sum(w[0], b), 0)) ++count;
        return count <= 1;
    }
    if (axiom == "reversibility") {
        // w = (a,b,c): a in b+c implies c in a+(-b)
        if (!has_bit(sum(w[1], w[2]), w[0])) return true;
        int nb = neg[static_cast<size_t>(w[1])];
        if (nb < 0) return true;  // reported by the negative axioms instead
        return has_bit(sum(w[0], nb), w[2]);
    }
    fail_input("unknown hypergroup axiom: " + axiom);
}

inline void check_hypergroup_axioms(AxiomReport& r, int size, const std::vector<Mask>& hadd) {
    require_hyper_table(hadd, size, "hyperaddition");
    std::vector<int> neg = compute_negatives(size, hadd);
    auto scan = [&](const char* name, int arity) {
        scan_axiom(r, name,
                   [&](const std::vector<int>& w) {
                       return recheck_hypergroup_axiom(size, hadd, neg, name, w);
                   },
                   size, arity);
    };
    scan("hyperadd_commutative", 2);
    scan("hyperadd_associative", 3);
    scan("zero_identity", 1);
    scan("zero_unique", 1);
    scan("negative_exists", 1);
    scan("negative_unique", 1);
    scan("reversibility", 3);
}

}  // namespace detail

inline bool recheck_hyper_axiom(const HyperTable& t, const std::string& axiom,
                                const std::vector<int>& w) {
    if (axiom == "mul_commutative") return t.times(w[0], w[1]) == t.times(w[1], w[0]);
    if (axiom == "mul_associative")
        return t.times(t.times(w[0], w[1]), w[2]) == t.times(w[0], t.times(w[1], w[2]));
    if (axiom == "mul_identity") return t.times(t.one(), w[0]) == w[0];
    if (axiom == "mul_zero_absorbing") return t.times(0, w[0]) == 0;
    if (axiom == "distributive_over_hyperadd") {
        Mask lhs = 0;
        for_each_bit(t.sum(w[1], w[2]), [&](int z) { lhs |= bit_of(t.times(w[0], z)); });
        return lhs == t.sum(t.times(w[0], w[1]), t.times(w[0], w[2]));
    }
    if (axiom == "nonzero_mul_closed")
        return w[0] == 0 || w[1] == 0 || t.times(w[0], w[1]) != 0;
    if (axiom == "mul_inverse") {
        if (w[0] == 0) return true;
        for (int b = 0; b < t.size; ++b)
            if (t.times(w[0], b) == t.one()) return true;
        return false;
    }
    return detail::recheck_hypergroup_axiom(t.size, t.hyperadd, t.neg, axiom, w);
}

/// Hypergroup axioms (1)-(4); hyperring and hyperfield extras when the kind
/// demands them.
inline AxiomReport check_hyperstructure_axioms(const HyperTable& t) {
    AxiomReport r;
    detail::check_hypergroup_axioms(r, t.size, t.hyperadd);
    if (t.kind == HyperKind::hypergroup) return r;
    auto scan = [&](const char* name, int arity) {
        detail::scan_axiom(r, name,
                           [&](const std::vector<int>& w) { return recheck_hyper_axiom(t, name, w); },
                           t.size, arity);
    };
    scan("mul_commutative", 2);
    scan("mul_associative", 3);
    scan("mul_identity", 1);
    scan("mul_zero_absorbing", 1);
    scan("distributive_over_hyperadd", 3);
    if (t.kind == HyperKind::hyperfield) {
        if (t.size < 2) r.violations.push_back({"mul_inverse", {0}});
        scan("nonzero_mul_closed", 2);
        scan("mul_inverse", 1);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Builtins

inline SemiringTable boolean_semifield() {
    return make_semiring("B", 2, {0, 1, 1, 1}, {0, 0, 0, 1});
}

inline SemiringTable zero_semiring() { return make_semiring("zero", 1, {0}, {0}); }

/// Truncated tropical chain on {0..k}: add = max, mul has an absorbing bottom
/// and saturates at the top.
inline SemiringTable chain_semiring(int k) {
    if (k < 1) fail_input("chain semiring needs k >= 1");
    int n = k + 1;
    std::vector<int> add(static_cast<size_t>(n) * n), mul(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            add[static_cast<size_t>(a) * n + b] = std::max(a, b);
            mul[static_cast<size_t>(a) * n + b] =
                (a == 0 || b == 0) ? 0 : std::min(a + b - 1, k);
        }
    return make_semiring("chain_" + std::to_string(k), n, std::move(add), std::move(mul));
}

inline HyperTable krasner_hyperfield() {
    return make_hypertable("K", 2, HyperKind::hyperfield,
                           {bit_of(0), bit_of(1), bit_of(1), bit_of(0) | bit_of(1)},
                           {0, 0, 0, 1});
}

/// Elements (0, 1, -1) at indices (0, 1, 2).
inline HyperTable sign_hyperfield() {
    const Mask all = bit_of(0) | bit_of(1) | bit_of(2);
    std::vector<Mask> hadd = {
        bit_of(0), bit_of(1), bit_of(2),   // 0+0, 0+1, 0+(-1)
        bit_of(1), bit_of(1), all,         // 1+0, 1+1, 1+(-1)
        bit_of(2), all,       bit_of(2),   // -1+0, -1+1, -1+(-1)
    };
    std::vector<int> mul = {0, 0, 0, 0, 1, 2, 0, 2, 1};
    return make_hypertable("S", 3, HyperKind::hyperfield, std::move(hadd), std::move(mul));
}

using BuiltinTable = std::variant<SemiringTable, HyperTable>;

/// Recognized names: B, K, S, zero, chain_<k>.
inline BuiltinTable builtin(const std::string& name) {
    if (name == "B") return boolean_semifield();
    if (name == "K") return krasner_hyperfield();
    if (name == "S") return sign_hyperfield();
    if (name == "zero") return zero_semiring();
    if (name.rfind("chain_", 0) == 0) {
        int k = 0;
        try {
            k = std::stoi(name.substr(6));
        } catch (...) {
            fail_input("unknown builtin: " + name);
        }
        return chain_semiring(k);
    }
    fail_input("unknown builtin: " + name);
}

/// The prime field F_p as a ring table.
inline RingTable prime_field(int p) {
    if (p < 2) fail_input("prime_field: p must be prime");
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) fail_input("prime_field: p must be prime");
    std::vector<int> add(static_cast<size_t>(p) * p), mul(static_cast<size_t>(p) * p), neg(static_cast<size_t>(p));
    for (int a = 0; a < p; ++a) {
        neg[static_cast<size_t>(a)] = (p - a) % p;
        for (int b = 0; b < p; ++b) {
            add[static_cast<size_t>(a) * p + b] = (a + b) % p;
            mul[static_cast<size_t>(a) * p + b] = (a * b) % p;
        }
    }
    return make_ring("F" + std::to_string(p), p, std::move(add), std::move(mul), std::move(neg));
}

/// A ring viewed as a hyperring with singleton sums.
inline HyperTable to_hypertable(const RingTable& r) {
    int n = r.size();
    std::vector<Mask> hadd(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            hadd[static_cast<size_t>(a) * n + b] = bit_of(r.base.plus(a, b));
    return make_hypertable(r.base.name, n, HyperKind::hyperring, std::move(hadd), r.base.mul);
}

// ---------------------------------------------------------------------------
// Quotient hyperring A/G

/// Quotient of a finite commutative ring by a subgroup G of its units:
/// classes are the G-orbits, [a]*[b] = [ab], and
/// [a]+[b] = {[c] : c = g1*a + g2*b, g1,g2 in G}.
inline HyperTable quotient_hyperring(const RingTable& ring, Mask G) {
    int n = ring.size();
    if (G == 0 || (G & ~full_mask(n))) fail_input("quotient_hyperring: bad subset");
    if (has_bit(G, 0)) fail_input("quotient_hyperring: 0 is not a unit");
    if (!has_bit(G, ring.base.one())) fail_input("quotient_hyperring: G must contain 1");
    for_each_bit(G, [&](int g) {
        bool unit = false;
        for_each_bit(G, [&](int h) {
            if (ring.base.times(g, h) == ring.base.one()) unit = true;
            if (!has_bit(G, ring.base.times(g, h)))
                fail_input("quotient_hyperring: G is not closed under multiplication");
        });
        if (!unit) fail_input("quotient_hyperring: G contains a non-unit");
    });

    // Orbits, ordered by least element; the orbit of 0 is {0} and the orbit
    // of 1 is G, so the canonical zero/one positions come out automatically.
    std::vector<int> class_of(static_cast<size_t>(n), -1);
    std::vector<int> rep;
    for (int a = 0; a < n; ++a) {
        if (class_of[static_cast<size_t>(a)] >= 0) continue;
        int c = static_cast<int>(rep.size());
        rep.push_back(a);
        for_each_bit(G, [&](int g) { class_of[static_cast<size_t>(ring.base.times(g, a))] = c; });
        class_of[static_cast<size_t>(a)] = c;
    }
    int m = static_cast<int>(rep.size());
    std::vector<Mask> hadd(static_cast<size_t>(m) * m, 0);
    std::vector<int> mul(static_cast<size_t>(m) * m, 0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            mul[static_cast<size_t>(i) * m + j] =
                class_of[static_cast<size_t>(ring.base.times(rep[static_cast<size_t>(i)], rep[static_cast<size_t>(j)]))];
            Mask s = 0;
            for_each_bit(G, [&](int g1) {
                for_each_bit(G, [&](int g2) {
                    int c = ring.base.plus(ring.base.times(g1, rep[static_cast<size_t>(i)]),
                                           ring.base.times(g2, rep[static_cast<size_t>(j)]));
                    s |= bit_of(class_of[static_cast<size_t>(c)]);
                });
            });
            hadd[static_cast<size_t>(i) * m + j] = s;
        }
    HyperTable out = make_hypertable(ring.base.name + "/G", m, HyperKind::hyperring,
                                     std::move(hadd), std::move(mul));
    HyperTable as_field = out;
    as_field.kind = HyperKind::hyperfield;
    if (check_hyperstructure_axioms(as_field).valid()) return as_field;
    return out;
}

// ---------------------------------------------------------------------------
// Isomorphism of hypertables (0 and 1 are forced fixed points)

inline bool hyper_iso_consistent(const HyperTable& a, const HyperTable& b,
                                 const std::vector<int>& p) {
    for (int x = 0; x < a.size; ++x)
        for (int y = 0; y < a.size; ++y) {
            Mask image = 0;
            for_each_bit(a.sum(x, y), [&](int z) { image |= bit_of(p[static_cast<size_t>(z)]); });
            if (image != b.sum(p[static_cast<size_t>(x)], p[static_cast<size_t>(y)])) return false;
            if (a.kind != HyperKind::hypergroup &&
                p[static_cast<size_t>(a.times(x, y))] != b.times(p[static_cast<size_t>(x)], p[static_cast<size_t>(y)]))
                return false;
        }
    return true;
}

/// Searches for a structure-preserving bijection; 0 -> 0 and 1 -> 1 always.
inline std::optional<std::vector<int>> find_hypertable_isomorphism(const HyperTable& a,
                                                                   const HyperTable& b) {
    if (a.size != b.size) return std::nullopt;
    if (a.kind == HyperKind::hypergroup || b.kind == HyperKind::hypergroup) {
        if (a.kind != b.kind) return std::nullopt;
    }
    std::vector<int> p(static_cast<size_t>(a.size), -1);
    std::vector<bool> used(static_cast<size_t>(a.size), false);
    int fixed = std::min(a.size, 2);
    for (int i = 0; i < fixed; ++i) {
        p[static_cast<size_t>(i)] = i;
        used[static_cast<size_t>(i)] = true;
    }
    std::function<bool(int)> go = [&](int i) -> bool {
        if (i == a.size) return hyper_iso_consistent(a, b, p);
        for (int t = fixed; t < a.size; ++t) {
            if (used[static_cast<size_t>(t)]) continue;
            p[static_cast<size_t>(i)] = t;
            used[static_cast<size_t>(t)] = true;
            // prune on the rows already fully mapped
            bool ok = true;
            for (int x = 0; x <= i && ok; ++x) {
                Mask s = a.sum(x, i);
                bool determined = true;
                Mask image = 0;
                for_each_bit(s, [&](int z) {
                    if (p[static_cast<size_t>(z)] < 0)
                        determined = false;
                    else
                        image |= bit_of(p[static_cast<size_t>(z)]);
                });
                if (determined && image != b.sum(p[static_cast<size_t>(x)], p[static_cast<size_t>(i)])) ok = false;
            }
            if (ok && go(i + 1)) return true;
            p[static_cast<size_t>(i)] = -1;
            used[static_cast<size_t>(t)] = false;
        }
        return false;
    };
    if (go(fixed)) return p;
    return std::nullopt;
}

}  // namespace pexa
