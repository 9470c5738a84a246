#pragma once

/// Finite lattices with join-preserving morphisms: quotients by downward
/// closed sub-lattices, the S functor to and from B-modules, and
/// geometric-lattice detection. The compactness clauses of the algebraic
/// lattice definitions hold vacuously here: in a finite lattice every
/// element is compact, so only the finite specialization is implemented.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"
#include "smod.hpp"
#include "tables.hpp"

namespace pexa {

struct FiniteLattice {
    std::string name;
    int size = 0;
    std::vector<char> leq;  // size*size
    std::vector<int> join_tbl, meet_tbl;
    int bottom = 0, top = 0;

    bool le(int a, int b) const { return leq[static_cast<size_t>(a) * size + b] != 0; }
    int join(int a, int b) const { return join_tbl[static_cast<size_t>(a) * size + b]; }
    int meet(int a, int b) const { return meet_tbl[static_cast<size_t>(a) * size + b]; }

    int join_mask(Mask s) const {
        int j = bottom;
        for_each_bit(s, [&](int x) { j = join(j, x); });
        return j;
    }

    Mask down_set(int x) const {
        Mask out = 0;
        for (int y = 0; y < size; ++y)
            if (le(y, x)) out |= bit_of(y);
        return out;
    }

    Mask up_set(int x) const {
        Mask out = 0;
        for (int y = 0; y < size; ++y)
            if (le(x, y)) out |= bit_of(y);
        return out;
    }

    bool covers(int a, int b) const {  // b covers a
        if (a == b || !le(a, b)) return false;
        for (int z = 0; z < size; ++z)
            if (z != a && z != b && le(a, z) && le(z, b)) return false;
        return true;
    }

    bool same_structure(const FiniteLattice& o) const { return size == o.size && leq == o.leq; }
};

/// Builds the lattice from a reflexive relation; reports the offending pair
/// when the input is not a partial order or some pair lacks a join or meet.
inline FiniteLattice lattice_from_poset(std::string name, int size, std::vector<char> leq) {
    if (size <= 0) fail_input("lattice: nonpositive size");
    if (leq.size() != static_cast<size_t>(size) * static_cast<size_t>(size))
        fail_input("lattice: leq is not size*size");
    auto le = [&](int a, int b) { return leq[static_cast<size_t>(a) * size + b] != 0; };
    for (int a = 0; a < size; ++a) {
        if (!le(a, a)) fail_input("not a partial order: not reflexive at " + std::to_string(a));
        for (int b = 0; b < size; ++b) {
            if (a != b && le(a, b) && le(b, a))
                fail_input("not a partial order: antisymmetry fails at (" + std::to_string(a) +
                           "," + std::to_string(b) + ")");
            for (int c = 0; c < size; ++c)
                if (le(a, b) && le(b, c) && !le(a, c))
                    fail_input("not a partial order: transitivity fails at (" + std::to_string(a) +
                               "," + std::to_string(b) + "," + std::to_string(c) + ")");
        }
    }
    auto bound = [&](int a, int b, bool upper) -> int {
        int best = -1;
        for (int z = 0; z < size; ++z) {
            bool is_bound = upper ? (le(a, z) && le(b, z)) : (le(z, a) && le(z, b));
            if (!is_bound) continue;
            if (best < 0)
                best = z;
            else if (upper ? le(z, best) : le(best, z))
                best = z;
        }
        if (best < 0) return -1;
        for (int z = 0; z < size; ++z) {
            bool is_bound = upper ? (le(a, z) && le(b, z)) : (le(z, a) && le(z, b));
            if (is_bound && !(upper ? le(best, z) : le(z, best))) return -1;
        }
        return best;
    };
    std::vector<int> join(static_cast<size_t>(size) * size), meet(static_cast<size_t>(size) * size);
    for (int a = 0; a < size; ++a)
        for (int b = 0; b < size; ++b) {
            int j = bound(a, b, true);
            if (j < 0)
                fail_input("not a lattice: pair (" + std::to_string(a) + "," + std::to_string(b) +
                           ") lacks a join");
            int m = bound(a, b, false);
            if (m < 0)
                fail_input("not a lattice: pair (" + std::to_string(a) + "," + std::to_string(b) +
                           ") lacks a meet");
            join[static_cast<size_t>(a) * size + b] = j;
            meet[static_cast<size_t>(a) * size + b] = m;
        }
    int bot = 0, top = 0;
    for (int a = 0; a < size; ++a) {
        bot = meet[static_cast<size_t>(bot) * size + a];
        top = join[static_cast<size_t>(top) * size + a];
    }
    return FiniteLattice{std::move(name), size, std::move(leq), std::move(join), std::move(meet),
                         bot, top};
}

inline FiniteLattice chain_lattice(int n) {
    std::vector<char> leq(static_cast<size_t>(n) * n, 0);
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) leq[static_cast<size_t>(a) * n + b] = 1;
    return lattice_from_poset("chain" + std::to_string(n), n, std::move(leq));
}

/// Subsets of an n-set ordered by inclusion.
inline FiniteLattice boolean_lattice(int n) {
    int sz = 1 << n;
    std::vector<char> leq(static_cast<size_t>(sz) * sz, 0);
    for (int a = 0; a < sz; ++a)
        for (int b = 0; b < sz; ++b)
            if ((a & b) == a) leq[static_cast<size_t>(a) * sz + b] = 1;
    return lattice_from_poset("2^" + std::to_string(n), sz, std::move(leq));
}

/// Bottom, n pairwise incomparable atoms, top. n = 3 gives M3.
inline FiniteLattice antichain_lattice(int n) {
    int sz = n + 2;
    std::vector<char> leq(static_cast<size_t>(sz) * sz, 0);
    for (int a = 0; a < sz; ++a) {
        leq[static_cast<size_t>(a) * sz + a] = 1;
        leq[static_cast<size_t>(0) * sz + a] = 1;
        leq[static_cast<size_t>(a) * sz + (sz - 1)] = 1;
    }
    return lattice_from_poset("L" + std::to_string(n), sz, std::move(leq));
}

inline FiniteLattice pentagon_lattice() {
    // 0 < a < b < 1 and 0 < c < 1, with a,b incomparable to c
    int sz = 5;
    std::vector<char> leq(25, 0);
    auto set = [&](int x, int y) { leq[static_cast<size_t>(x) * 5 + y] = 1; };
    for (int i = 0; i < 5; ++i) set(i, i);
    for (int i = 0; i < 5; ++i) {
        set(0, i);
        set(i, 4);
    }
    set(1, 2);
    return lattice_from_poset("N5", sz, std::move(leq));
}

// ---------------------------------------------------------------------------
// Morphisms: maps preserving all joins, including the empty one.

struct LatticeMorphism {
    FiniteLattice source;
    FiniteLattice target;
    std::vector<int> map;

    int operator()(int x) const { return map[static_cast<size_t>(x)]; }
};

inline bool is_valid_lattice_morphism_map(const FiniteLattice& s, const FiniteLattice& t,
                                          const std::vector<int>& map) {
    if (map.size() != static_cast<size_t>(s.size)) return false;
    for (int v : map)
        if (v < 0 || v >= t.size) return false;
    if (map[static_cast<size_t>(s.bottom)] != t.bottom) return false;
    for (int a = 0; a < s.size; ++a)
        for (int b = 0; b < s.size; ++b)
            if (map[static_cast<size_t>(s.join(a, b))] != t.join(map[static_cast<size_t>(a)], map[static_cast<size_t>(b)]))
                return false;
    return true;
}

inline LatticeMorphism make_lattice_morphism(FiniteLattice source, FiniteLattice target,
                                             std::vector<int> map) {
    if (!is_valid_lattice_morphism_map(source, target, map))
        fail_input("not a join-preserving lattice morphism");
    return LatticeMorphism{std::move(source), std::move(target), std::move(map)};
}

inline LatticeMorphism lattice_identity(const FiniteLattice& l) {
    std::vector<int> map(static_cast<size_t>(l.size));
    for (int i = 0; i < l.size; ++i) map[static_cast<size_t>(i)] = i;
    return LatticeMorphism{l, l, std::move(map)};
}

inline LatticeMorphism compose(const LatticeMorphism& g, const LatticeMorphism& f) {
    if (!f.target.same_structure(g.source)) fail_input("compose: middle lattice mismatch");
    std::vector<int> map(static_cast<size_t>(f.source.size));
    for (int x = 0; x < f.source.size; ++x) map[static_cast<size_t>(x)] = g.map[static_cast<size_t>(f.map[static_cast<size_t>(x)])];
    return LatticeMorphism{f.source, g.target, std::move(map)};
}

/// All join-preserving maps in lexicographic map order.
inline std::vector<LatticeMorphism> enumerate_join_maps(const FiniteLattice& s,
                                                        const FiniteLattice& t) {
    std::vector<LatticeMorphism> out;
    std::vector<int> map(static_cast<size_t>(s.size), -1);
    auto consistent = [&](int k) {
        if (s.bottom <= k && map[static_cast<size_t>(s.bottom)] != t.bottom) return false;
        for (int a = 0; a <= k; ++a)
            for (int b = a; b <= k; ++b) {
                int j = s.join(a, b);
                if (j <= k && map[static_cast<size_t>(j)] != t.join(map[static_cast<size_t>(a)], map[static_cast<size_t>(b)]))
                    return false;
            }
        return true;
    };
    std::function<void(int)> go = [&](int k) {
        if (k == s.size) {
            out.push_back(LatticeMorphism{s, t, map});
            return;
        }
        for (int v = 0; v < t.size; ++v) {
            map[static_cast<size_t>(k)] = v;
            if (consistent(k)) go(k + 1);
        }
        map[static_cast<size_t>(k)] = -1;
    };
    go(0);
    return out;
}

/// Order-isomorphism search with (down-degree, up-degree) pruning;
/// allowed[x] (when nonempty) restricts the candidate images of x.
inline std::optional<LatticeMorphism> find_lattice_isomorphism_constrained(
    const FiniteLattice& a, const FiniteLattice& b, const std::vector<Mask>& allowed) {
    if (a.size != b.size) return std::nullopt;
    std::vector<std::pair<int, int>> ia(static_cast<size_t>(a.size)), ib(static_cast<size_t>(b.size));
    for (int x = 0; x < a.size; ++x)
        ia[static_cast<size_t>(x)] = {mask_size(a.down_set(x)), mask_size(a.up_set(x))};
    for (int x = 0; x < b.size; ++x)
        ib[static_cast<size_t>(x)] = {mask_size(b.down_set(x)), mask_size(b.up_set(x))};
    std::vector<int> map(static_cast<size_t>(a.size), -1);
    Mask used = 0;
    std::function<bool(int)> go = [&](int k) -> bool {
        if (k == a.size) return true;
        for (int v = 0; v < b.size; ++v) {
            if (has_bit(used, v) || ia[static_cast<size_t>(k)] != ib[static_cast<size_t>(v)]) continue;
            if (!allowed.empty() && !has_bit(allowed[static_cast<size_t>(k)], v)) continue;
            bool ok = true;
            for (int x = 0; x < k && ok; ++x) {
                if (a.le(x, k) != b.le(map[static_cast<size_t>(x)], v)) ok = false;
                if (a.le(k, x) != b.le(v, map[static_cast<size_t>(x)])) ok = false;
            }
            if (!ok) continue;
            map[static_cast<size_t>(k)] = v;
            used |= bit_of(v);
            if (go(k + 1)) return true;
            used &= ~bit_of(v);
            map[static_cast<size_t>(k)] = -1;
        }
        return false;
    };
    if (!go(0)) return std::nullopt;
    return LatticeMorphism{a, b, map};
}

inline std::optional<LatticeMorphism> find_lattice_isomorphism(const FiniteLattice& a,
                                                               const FiniteLattice& b) {
    return find_lattice_isomorphism_constrained(a, b, {});
}

// ---------------------------------------------------------------------------
// Admissible sub-lattices and quotients

/// Image of a normal mono: downward closed and closed under joins.
inline bool is_admissible_sublattice(const FiniteLattice& l, Mask s) {
    if (s == 0 || (s & ~full_mask(l.size))) return false;
    bool ok = true;
    for_each_bit(s, [&](int x) {
        for (int y = 0; y < l.size; ++y)
            if (l.le(y, x) && !has_bit(s, y)) ok = false;
        for_each_bit(s, [&](int y) {
            if (!has_bit(s, l.join(x, y))) ok = false;
        });
    });
    return ok && has_bit(s, l.bottom);
}

inline std::vector<Mask> enumerate_admissible_sublattices(const FiniteLattice& l) {
    std::vector<Mask> out;
    if (l.size <= 16) {
        for (Mask s = 1; s <= full_mask(l.size); ++s)
            if (is_admissible_sublattice(l, s)) out.push_back(s);
    } else {
        // each admissible sub-lattice is the down-set of its own maximum
        for (int x = 0; x < l.size; ++x) {
            Mask d = l.down_set(x);
            if (is_admissible_sublattice(l, d)) out.push_back(d);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// The sub-lattice on mask s with its inclusion.
inline std::pair<FiniteLattice, LatticeMorphism> sublattice_lattice(const FiniteLattice& l, Mask s,
                                                                    const std::string& name = "sub") {
    if (!is_admissible_sublattice(l, s)) fail_input("sublattice: mask is not admissible");
    std::vector<int> elems = mask_elements(s);
    int n = static_cast<int>(elems.size());
    std::vector<char> leq(static_cast<size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            leq[static_cast<size_t>(i) * n + j] = l.le(elems[static_cast<size_t>(i)], elems[static_cast<size_t>(j)]) ? 1 : 0;
    FiniteLattice sub = lattice_from_poset(name, n, std::move(leq));
    LatticeMorphism inc{sub, l, elems};
    return {std::move(sub), std::move(inc)};
}

/// L/K = {x >= 1_K} with the join-with-1_K projection.
inline std::pair<FiniteLattice, LatticeMorphism> quotient_lattice(const FiniteLattice& l, Mask k,
                                                                  const std::string& name = "quot") {
    if (!is_admissible_sublattice(l, k)) fail_input("quotient_lattice: K is not admissible");
    int one_k = l.join_mask(k);
    std::vector<int> elems;
    std::vector<int> local(static_cast<size_t>(l.size), -1);
    for (int x = 0; x < l.size; ++x)
        if (l.le(one_k, x)) {
            local[static_cast<size_t>(x)] = static_cast<int>(elems.size());
            elems.push_back(x);
        }
    int n = static_cast<int>(elems.size());
    std::vector<char> leq(static_cast<size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            leq[static_cast<size_t>(i) * n + j] = l.le(elems[static_cast<size_t>(i)], elems[static_cast<size_t>(j)]) ? 1 : 0;
    FiniteLattice quot = lattice_from_poset(name, n, std::move(leq));
    std::vector<int> proj(static_cast<size_t>(l.size));
    for (int x = 0; x < l.size; ++x) proj[static_cast<size_t>(x)] = local[static_cast<size_t>(l.join(x, one_k))];
    LatticeMorphism pr{l, quot, std::move(proj)};
    return {std::move(quot), std::move(pr)};
}

/// Normal mono: injective with downward closed image. Normal epi: joining
/// with x0 followed by an isomorphism, tested at x0 = join of the preimage
/// of the target bottom.
inline MorphismClass classify_lattice_morphism(const LatticeMorphism& f) {
    if (!is_valid_lattice_morphism_map(f.source, f.target, f.map))
        fail_input("classify_lattice_morphism: not join-preserving");
    Mask image = 0;
    for (int v : f.map) image |= bit_of(v);
    bool injective = mask_size(image) == f.source.size;
    bool surjective = image == full_mask(f.target.size);
    if (injective && surjective) return MorphismClass::iso;
    if (injective) {
        bool down_closed = true;
        for_each_bit(image, [&](int x) {
            for (int y = 0; y < f.target.size; ++y)
                if (f.target.le(y, x) && !has_bit(image, y)) down_closed = false;
        });
        if (down_closed) return MorphismClass::admissible_mono;
    }
    if (surjective) {
        Mask pre_bottom = 0;
        for (int x = 0; x < f.source.size; ++x)
            if (f.map[static_cast<size_t>(x)] == f.target.bottom) pre_bottom |= bit_of(x);
        int x0 = f.source.join_mask(pre_bottom);
        // f must factor as (join with x0) then a bijection from [x0, top]
        std::vector<int> seen(static_cast<size_t>(f.target.size), -1);
        bool ok = true;
        int count = 0;
        for (int u = 0; u < f.source.size && ok; ++u) {
            if (!f.source.le(x0, u)) continue;
            ++count;
            if (seen[static_cast<size_t>(f.map[static_cast<size_t>(u)])] >= 0) ok = false;
            seen[static_cast<size_t>(f.map[static_cast<size_t>(u)])] = u;
        }
        if (ok && count == f.target.size) {
            for (int x = 0; x < f.source.size && ok; ++x)
                if (f.map[static_cast<size_t>(x)] != f.map[static_cast<size_t>(f.source.join(x, x0))]) ok = false;
            if (ok) return MorphismClass::admissible_epi;
        }
    }
    return MorphismClass::neither;
}

// ---------------------------------------------------------------------------
// The S functor between B-modules and lattices

/// Lattice of saturated submodules ordered by inclusion.
inline FiniteLattice saturated_submodule_lattice(const FiniteModule& m) {
    if (!m.ring.same_structure(boolean_semifield()))
        fail_input("saturated_submodule_lattice: base semiring is not B");
    std::vector<Mask> subs = enumerate_submodules(m, true);
    int n = static_cast<int>(subs.size());
    std::vector<char> leq(static_cast<size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            leq[static_cast<size_t>(i) * n + j] = (subs[static_cast<size_t>(i)] & ~subs[static_cast<size_t>(j)]) == 0 ? 1 : 0;
    return lattice_from_poset("S(" + m.name + ")", n, std::move(leq));
}

/// S on morphisms: a saturated L maps to the saturation closure of f(L).
inline LatticeMorphism s_on_morphism(const ModuleMorphism& f) {
    if (!f.source.ring.same_structure(boolean_semifield()))
        fail_input("s_on_morphism: base semiring is not B");
    std::vector<Mask> src = enumerate_submodules(f.source, true);
    std::vector<Mask> dst = enumerate_submodules(f.target, true);
    FiniteLattice sl = saturated_submodule_lattice(f.source);
    FiniteLattice tl = saturated_submodule_lattice(f.target);
    std::vector<int> map(src.size());
    for (size_t i = 0; i < src.size(); ++i) {
        Mask img = 0;
        for_each_bit(src[i], [&](int x) { img |= bit_of(f.map[static_cast<size_t>(x)]); });
        Mask sat = saturation_closure(f.target, img);
        auto it = std::find(dst.begin(), dst.end(), sat);
        if (it == dst.end()) throw Error(ErrorKind::axiom_failure, "S(f): image closure not found");
        map[i] = static_cast<int>(it - dst.begin());
    }
    return make_lattice_morphism(std::move(sl), std::move(tl), std::move(map));
}

/// The elements of a finite lattice as a B-module: addition is join, zero is
/// the bottom. Quasi-inverse of saturated_submodule_lattice on finite data.
inline FiniteModule compact_elements_module(const FiniteLattice& l) {
    // reindex so the bottom sits at 0
    std::vector<int> order;
    order.push_back(l.bottom);
    for (int x = 0; x < l.size; ++x)
        if (x != l.bottom) order.push_back(x);
    std::vector<int> local(static_cast<size_t>(l.size));
    for (int i = 0; i < l.size; ++i) local[static_cast<size_t>(order[static_cast<size_t>(i)])] = i;
    int n = l.size;
    std::vector<int> add(static_cast<size_t>(n) * n), act(static_cast<size_t>(2) * n);
    for (int i = 0; i < n; ++i) {
        act[static_cast<size_t>(i)] = 0;      // 0_B * x = 0
        act[static_cast<size_t>(n + i)] = i;  // 1_B * x = x
        for (int j = 0; j < n; ++j)
            add[static_cast<size_t>(i) * n + j] =
                local[static_cast<size_t>(l.join(order[static_cast<size_t>(i)], order[static_cast<size_t>(j)]))];
    }
    return make_module(boolean_semifield(), l.name + "^c", n, std::move(add), std::move(act));
}

// ---------------------------------------------------------------------------
// Category plumbing: products, completion

inline FiniteLattice zero_lattice() { return lattice_from_poset("0", 1, {1}); }

inline FiniteLattice direct_product_lattice(const FiniteLattice& a, const FiniteLattice& b) {
    int sz = a.size * b.size;
    if (sz > hard_size_cap) fail_bound("direct_product_lattice: result exceeds the hard size cap");
    std::vector<char> leq(static_cast<size_t>(sz) * sz, 0);
    auto pair_index = [&](int x, int y) { return x * b.size + y; };
    for (int x1 = 0; x1 < a.size; ++x1)
        for (int y1 = 0; y1 < b.size; ++y1)
            for (int x2 = 0; x2 < a.size; ++x2)
                for (int y2 = 0; y2 < b.size; ++y2)
                    leq[static_cast<size_t>(pair_index(x1, y1)) * sz + pair_index(x2, y2)] =
                        (a.le(x1, x2) && b.le(y1, y2)) ? 1 : 0;
    return lattice_from_poset(a.name + "x" + b.name, sz, std::move(leq));
}

using LatticeSquare = BiCartesianSquare<LatticeMorphism>;

/// Pullback corner (j')^-1(i'(A')) with the induced projection.
inline LatticeSquare complete_pullback_lattice(const LatticeMorphism& i_prime,
                                               const LatticeMorphism& j_prime) {
    if (classify_lattice_morphism(i_prime) != MorphismClass::admissible_mono &&
        classify_lattice_morphism(i_prime) != MorphismClass::iso)
        fail_input("complete_pullback_lattice: i' is not a normal mono");
    auto jc = classify_lattice_morphism(j_prime);
    if (jc != MorphismClass::admissible_epi && jc != MorphismClass::iso)
        fail_input("complete_pullback_lattice: j' is not a normal epi");
    if (!i_prime.target.same_structure(j_prime.target))
        fail_input("complete_pullback_lattice: corner object mismatch");
    Mask image = 0;
    for (int v : i_prime.map) image |= bit_of(v);
    Mask a_mask = 0;
    for (int x = 0; x < j_prime.source.size; ++x)
        if (has_bit(image, j_prime.map[static_cast<size_t>(x)])) a_mask |= bit_of(x);
    auto [a, inclusion] = sublattice_lattice(j_prime.source, a_mask, "pullback");
    std::vector<int> into_source(static_cast<size_t>(i_prime.target.size), -1);
    for (int x = 0; x < i_prime.source.size; ++x) into_source[static_cast<size_t>(i_prime.map[static_cast<size_t>(x)])] = x;
    std::vector<int> jmap(static_cast<size_t>(a.size));
    for (int x = 0; x < a.size; ++x)
        jmap[static_cast<size_t>(x)] = into_source[static_cast<size_t>(j_prime.map[static_cast<size_t>(inclusion.map[static_cast<size_t>(x)])])];
    LatticeSquare sq{inclusion, make_lattice_morphism(a, i_prime.source, std::move(jmap)), i_prime,
                     j_prime};
    auto left = compose(sq.j_prime, sq.i);
    auto right = compose(sq.i_prime, sq.j);
    if (left.map != right.map)
        throw Error(ErrorKind::axiom_failure, "completed lattice square does not commute");
    return sq;
}

/// Pushout: quotient B by the down-interval of x0 = join of the j-fiber of
/// the target bottom.
inline LatticeSquare complete_pushout_lattice(const LatticeMorphism& i, const LatticeMorphism& j) {
    auto ic = classify_lattice_morphism(i);
    if (ic != MorphismClass::admissible_mono && ic != MorphismClass::iso)
        fail_input("complete_pushout_lattice: i is not a normal mono");
    auto jc = classify_lattice_morphism(j);
    if (jc != MorphismClass::admissible_epi && jc != MorphismClass::iso)
        fail_input("complete_pushout_lattice: j is not a normal epi");
    if (!i.source.same_structure(j.source)) fail_input("complete_pushout_lattice: corner object mismatch");
    Mask pre_bottom = 0;
    for (int x = 0; x < j.source.size; ++x)
        if (j.map[static_cast<size_t>(x)] == j.target.bottom) pre_bottom |= bit_of(x);
    int x0 = j.source.join_mask(pre_bottom);
    Mask l_in_b = i.target.down_set(i.map[static_cast<size_t>(x0)]);
    auto [bq, proj] = quotient_lattice(i.target, l_in_b, "pushout");
    std::vector<int> imap(static_cast<size_t>(j.target.size), -1);
    for (int x = 0; x < j.source.size; ++x) {
        int c = j.map[static_cast<size_t>(x)];
        int v = proj.map[static_cast<size_t>(i.map[static_cast<size_t>(x)])];
        if (imap[static_cast<size_t>(c)] >= 0 && imap[static_cast<size_t>(c)] != v)
            throw Error(ErrorKind::axiom_failure, "lattice pushout induced map is not well-defined");
        imap[static_cast<size_t>(c)] = v;
    }
    LatticeSquare sq{i, j, make_lattice_morphism(j.target, bq, std::move(imap)), proj};
    auto left = compose(sq.j_prime, sq.i);
    auto right = compose(sq.i_prime, sq.j);
    if (left.map != right.map)
        throw Error(ErrorKind::axiom_failure, "completed lattice square does not commute");
    return sq;
}

// ---------------------------------------------------------------------------
// Geometric lattices

struct GeometricReport {
    bool jordan_dedekind = false;
    bool semimodular = false;
    bool atomistic = false;
    bool geometric = false;
    std::vector<int> heights;             // filled when Jordan-Dedekind holds
    std::vector<int> jd_witness;          // (x, y, shortest, longest)
    std::vector<int> semimodular_witness; // (x, y)
    std::vector<int> atomistic_witness;   // (x)
};

/// Jordan-Dedekind via shortest/longest cover paths per interval, then the
/// semimodular height inequality and atomisticity.
inline GeometricReport is_geometric(const FiniteLattice& l) {
    GeometricReport rep;
    int n = l.size;
    std::vector<Mask> cover_up(static_cast<size_t>(n), 0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (l.covers(a, b)) cover_up[static_cast<size_t>(a)] |= bit_of(b);

    // longest/shortest cover-path lengths from x to y, -1 when unreachable
    auto path_bounds = [&](int x) {
        std::vector<int> lo(static_cast<size_t>(n), -1), hi(static_cast<size_t>(n), -1);
        lo[static_cast<size_t>(x)] = hi[static_cast<size_t>(x)] = 0;
        // process in a linear extension order: by down-set size
        std::vector<int> order(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return mask_size(l.down_set(a)) < mask_size(l.down_set(b));
        });
        for (int a : order) {
            if (lo[static_cast<size_t>(a)] < 0) continue;
            for_each_bit(cover_up[static_cast<size_t>(a)], [&](int b) {
                if (lo[static_cast<size_t>(b)] < 0 || lo[static_cast<size_t>(b)] > lo[static_cast<size_t>(a)] + 1)
                    lo[static_cast<size_t>(b)] = lo[static_cast<size_t>(a)] + 1;
                if (hi[static_cast<size_t>(b)] < hi[static_cast<size_t>(a)] + 1)
                    hi[static_cast<size_t>(b)] = hi[static_cast<size_t>(a)] + 1;
            });
        }
        return std::make_pair(lo, hi);
    };

    rep.jordan_dedekind = true;
    for (int x = 0; x < n && rep.jordan_dedekind; ++x) {
        auto [lo, hi] = path_bounds(x);
        for (int y = 0; y < n; ++y) {
            if (!l.le(x, y) || x == y) continue;
            if (lo[static_cast<size_t>(y)] != hi[static_cast<size_t>(y)]) {
                rep.jordan_dedekind = false;
                rep.jd_witness = {x, y, lo[static_cast<size_t>(y)], hi[static_cast<size_t>(y)]};
                break;
            }
        }
    }

    if (rep.jordan_dedekind) {
        auto [lo, hi] = path_bounds(l.bottom);
        rep.heights = lo;
        rep.semimodular = true;
        for (int x = 0; x < n && rep.semimodular; ++x)
            for (int y = 0; y < n; ++y) {
                auto h = [&](int z) { return rep.heights[static_cast<size_t>(z)]; };
                if (h(x) + h(y) < h(l.join(x, y)) + h(l.meet(x, y))) {
                    rep.semimodular = false;
                    rep.semimodular_witness = {x, y};
                    break;
                }
            }
    }

    Mask atoms = cover_up[static_cast<size_t>(l.bottom)];
    rep.atomistic = true;
    for (int x = 0; x < n; ++x) {
        Mask below = atoms & l.down_set(x);
        if (l.join_mask(below) != x) {
            rep.atomistic = false;
            rep.atomistic_witness = {x};
            break;
        }
    }

    rep.geometric = rep.jordan_dedekind && rep.semimodular && rep.atomistic;
    return rep;
}

}  // namespace pexa
