#pragma once

/// Finite modules over a finite semiring: submodules and saturation,
/// congruence quotients, admissible-morphism classification, hom/iso
/// enumeration, and constructive pullback/pushout completion.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"
#include "tables.hpp"

namespace pexa {

struct FiniteModule {
    SemiringTable ring;
    std::string name;
    int size = 0;
    std::vector<int> add;  // size*size
    std::vector<int> act;  // ring.size*size

    int plus(int a, int b) const { return add[static_cast<size_t>(a) * size + b]; }
    int action(int r, int m) const { return act[static_cast<size_t>(r) * size + m]; }
    int zero() const { return 0; }

    bool same_structure(const FiniteModule& o) const {
        return size == o.size && add == o.add && act == o.act && ring.same_structure(o.ring);
    }
};

inline FiniteModule make_module(SemiringTable ring, std::string name, int size,
                                std::vector<int> add, std::vector<int> act) {
    detail::require_square_table(add, size, "module add");
    if (act.size() != static_cast<size_t>(ring.size) * static_cast<size_t>(size))
        fail_input("module act: table is not ring.size*size");
    for (int v : act)
        if (v < 0 || v >= size) fail_input("module act: entry out of range");
    return FiniteModule{std::move(ring), std::move(name), size, std::move(add), std::move(act)};
}

inline FiniteModule zero_module(const SemiringTable& ring) {
    return make_module(ring, "0", 1, {0}, std::vector<int>(static_cast<size_t>(ring.size), 0));
}

/// The semiring as a module over itself.
inline FiniteModule module_from_semiring(const SemiringTable& ring) {
    return make_module(ring, ring.name, ring.size, ring.add, ring.mul);
}

// ---------------------------------------------------------------------------
// Module axioms

inline bool recheck_module_axiom(const SemiringTable& r, const FiniteModule& m,
                                 const std::string& axiom, const std::vector<int>& w) {
    if (axiom == "add_commutative") return m.plus(w[0], w[1]) == m.plus(w[1], w[0]);
    if (axiom == "add_associative")
        return m.plus(m.plus(w[0], w[1]), w[2]) == m.plus(w[0], m.plus(w[1], w[2]));
    if (axiom == "add_identity") return m.plus(w[0], 0) == w[0];
    // scalar witnesses come first in the tuple
    if (axiom == "act_identity") return m.action(r.one(), w[0]) == w[0];
    if (axiom == "act_zero") return m.action(0, w[0]) == 0;
    if (axiom == "act_mul_compatible")
        return m.action(r.times(w[0], w[1]), w[2]) == m.action(w[0], m.action(w[1], w[2]));
    if (axiom == "act_distributes_module")
        return m.action(w[0], m.plus(w[1], w[2])) == m.plus(m.action(w[0], w[1]), m.action(w[0], w[2]));
    if (axiom == "act_distributes_scalar")
        return m.action(r.plus(w[0], w[1]), w[2]) == m.plus(m.action(w[0], w[2]), m.action(w[1], w[2]));
    fail_input("unknown module axiom: " + axiom);
}

inline AxiomReport check_module_axioms(const SemiringTable& r, const FiniteModule& m) {
    if (!r.same_structure(m.ring)) fail_input("check_module_axioms: ring mismatch");
    if (m.act.size() != static_cast<size_t>(r.size) * static_cast<size_t>(m.size))
        fail_input("check_module_axioms: act table dimensions");
    AxiomReport rep;
    // mixed-arity scans: tuples iterate scalars over r.size and elements over m.size
    auto scan = [&](const char* name, const std::vector<int>& dims) {
        std::vector<int> w(dims.size(), 0);
        while (true) {
            if (!recheck_module_axiom(r, m, name, w)) {
                rep.violations.push_back({name, w});
                return;
            }
            size_t i = dims.size();
            while (i > 0 && w[i - 1] == dims[i - 1] - 1) w[--i] = 0;
            if (i == 0) return;
            ++w[i - 1];
        }
    };
    int n = m.size, k = r.size;
    scan("add_commutative", {n, n});
    scan("add_associative", {n, n, n});
    scan("add_identity", {n});
    scan("act_identity", {n});
    scan("act_zero", {n});
    scan("act_mul_compatible", {k, k, n});
    scan("act_distributes_module", {k, n, n});
    scan("act_distributes_scalar", {k, k, n});
    return rep;
}

// ---------------------------------------------------------------------------
// Submodules and saturation

inline bool is_submodule(const FiniteModule& m, Mask s) {
    if (!has_bit(s, 0)) return false;
    bool ok = true;
    for_each_bit(s, [&](int a) {
        for_each_bit(s, [&](int b) {
            if (!has_bit(s, m.plus(a, b))) ok = false;
        });
        for (int r = 0; r < m.ring.size; ++r)
            if (!has_bit(s, m.action(r, a))) ok = false;
    });
    return ok;
}

/// x, x+y in N and y in N imply x in N.
inline bool is_saturated_submodule(const FiniteModule& m, Mask s) {
    if (!is_submodule(m, s)) return false;
    for (int x = 0; x < m.size; ++x) {
        if (has_bit(s, x)) continue;
        bool escapes = false;
        for_each_bit(s, [&](int y) {
            if (has_bit(s, m.plus(x, y))) escapes = true;
        });
        if (escapes) return false;
    }
    return true;
}

/// Smallest submodule containing s.
inline Mask submodule_closure(const FiniteModule& m, Mask s) {
    Mask cur = s | bit_of(0);
    for (;;) {
        Mask next = cur;
        for_each_bit(cur, [&](int a) {
            for_each_bit(cur, [&](int b) { next |= bit_of(m.plus(a, b)); });
            for (int r = 0; r < m.ring.size; ++r) next |= bit_of(m.action(r, a));
        });
        if (next == cur) return cur;
        cur = next;
    }
}

/// Smallest saturated submodule containing s: close to a submodule N, then
/// one pass of {x : x+a = b for some a,b in N}.
inline Mask saturation_closure(const FiniteModule& m, Mask s) {
    if (s & ~full_mask(m.size)) fail_input("saturation_closure: subset out of range");
    Mask n = submodule_closure(m, s);
    Mask out = 0;
    for (int x = 0; x < m.size; ++x) {
        bool in = false;
        for_each_bit(n, [&](int a) {
            if (has_bit(n, m.plus(x, a))) in = true;
        });
        if (in) out |= bit_of(x);
    }
    return out;
}

/// All (saturated) submodules, sorted by bitmask. Brute force over subsets up
/// to 12 elements, generator-closure enumeration beyond.
inline std::vector<Mask> enumerate_submodules(const FiniteModule& m, bool saturated_only) {
    std::vector<Mask> out;
    if (m.size <= 12) {
        Mask full = full_mask(m.size);
        for (Mask s = 1; s <= full; s += 2)
            if (is_submodule(m, s) && (!saturated_only || is_saturated_submodule(m, s)))
                out.push_back(s);
    } else {
        std::vector<Mask> work{submodule_closure(m, 0)};
        std::vector<Mask> seen = work;
        while (!work.empty()) {
            Mask s = work.back();
            work.pop_back();
            for (int x = 0; x < m.size; ++x) {
                if (has_bit(s, x)) continue;
                Mask t = submodule_closure(m, s | bit_of(x));
                if (std::find(seen.begin(), seen.end(), t) == seen.end()) {
                    seen.push_back(t);
                    work.push_back(t);
                }
            }
        }
        for (Mask s : seen)
            if (!saturated_only || is_saturated_submodule(m, s)) out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Morphisms

struct ModuleMorphism {
    FiniteModule source;
    FiniteModule target;
    std::vector<int> map;

    int operator()(int x) const { return map[static_cast<size_t>(x)]; }
};

inline bool is_valid_morphism_map(const FiniteModule& s, const FiniteModule& t,
                                  const std::vector<int>& map) {
    if (!s.ring.same_structure(t.ring)) return false;
    if (map.size() != static_cast<size_t>(s.size)) return false;
    for (int v : map)
        if (v < 0 || v >= t.size) return false;
    if (map[0] != 0) return false;
    for (int a = 0; a < s.size; ++a)
        for (int b = 0; b < s.size; ++b)
            if (map[static_cast<size_t>(s.plus(a, b))] != t.plus(map[static_cast<size_t>(a)], map[static_cast<size_t>(b)]))
                return false;
    for (int r = 0; r < s.ring.size; ++r)
        for (int a = 0; a < s.size; ++a)
            if (map[static_cast<size_t>(s.action(r, a))] != t.action(r, map[static_cast<size_t>(a)]))
                return false;
    return true;
}

inline ModuleMorphism make_morphism(FiniteModule source, FiniteModule target,
                                    std::vector<int> map) {
    if (!is_valid_morphism_map(source, target, map)) fail_input("not a module morphism");
    return ModuleMorphism{std::move(source), std::move(target), std::move(map)};
}

inline ModuleMorphism identity_morphism(const FiniteModule& m) {
    std::vector<int> map(static_cast<size_t>(m.size));
    for (int i = 0; i < m.size; ++i) map[static_cast<size_t>(i)] = i;
    return ModuleMorphism{m, m, std::move(map)};
}

inline ModuleMorphism zero_morphism(const FiniteModule& s, const FiniteModule& t) {
    return ModuleMorphism{s, t, std::vector<int>(static_cast<size_t>(s.size), 0)};
}

/// f then g.
inline ModuleMorphism compose(const ModuleMorphism& g, const ModuleMorphism& f) {
    if (!f.target.same_structure(g.source)) fail_input("compose: middle object mismatch");
    std::vector<int> map(static_cast<size_t>(f.source.size));
    for (int x = 0; x < f.source.size; ++x) map[static_cast<size_t>(x)] = g.map[static_cast<size_t>(f.map[static_cast<size_t>(x)])];
    return ModuleMorphism{f.source, g.target, std::move(map)};
}

inline Mask image_mask(const ModuleMorphism& f) {
    Mask out = 0;
    for (int v : f.map) out |= bit_of(v);
    return out;
}

inline Mask preimage_mask(const ModuleMorphism& f, Mask target_set) {
    Mask out = 0;
    for (int x = 0; x < f.source.size; ++x)
        if (has_bit(target_set, f.map[static_cast<size_t>(x)])) out |= bit_of(x);
    return out;
}

inline Mask kernel_mask(const ModuleMorphism& f) { return preimage_mask(f, bit_of(0)); }

// ---------------------------------------------------------------------------
// Subobjects and quotients

/// The submodule on mask s with its inclusion. Element order follows
/// ascending ambient index, so 0 stays first.
inline std::pair<FiniteModule, ModuleMorphism> submodule_module(const FiniteModule& m, Mask s,
                                                                const std::string& name = "sub") {
    if (!is_submodule(m, s)) fail_input("submodule_module: not a submodule");
    std::vector<int> elems = mask_elements(s);
    int n = static_cast<int>(elems.size());
    std::vector<int> local(static_cast<size_t>(m.size), -1);
    for (int i = 0; i < n; ++i) local[static_cast<size_t>(elems[static_cast<size_t>(i)])] = i;
    std::vector<int> add(static_cast<size_t>(n) * n), act(static_cast<size_t>(m.ring.size) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            add[static_cast<size_t>(i) * n + j] = local[static_cast<size_t>(m.plus(elems[static_cast<size_t>(i)], elems[static_cast<size_t>(j)]))];
    for (int r = 0; r < m.ring.size; ++r)
        for (int i = 0; i < n; ++i)
            act[static_cast<size_t>(r) * n + i] = local[static_cast<size_t>(m.action(r, elems[static_cast<size_t>(i)]))];
    FiniteModule sub = make_module(m.ring, name, n, std::move(add), std::move(act));
    std::vector<int> inc(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) inc[static_cast<size_t>(i)] = elems[static_cast<size_t>(i)];
    ModuleMorphism inclusion{sub, m, std::move(inc)};
    return {std::move(sub), std::move(inclusion)};
}

struct QuotientResult {
    FiniteModule quotient;
    ModuleMorphism projection;
    std::vector<int> class_of;
};

/// Quotient by the congruence x ~ y iff x+n = y+n' for some n,n' in N. Class
/// ids follow first occurrence, so the class of 0 is index 0.
inline QuotientResult quotient_module(const FiniteModule& m, Mask n_mask,
                                      const std::string& name = "quot") {
    if (!is_submodule(m, n_mask)) fail_input("quotient_module: not a submodule");
    int n = m.size;
    // reach[x] = {x + n : n in N}; x ~ y iff the reach sets intersect
    std::vector<Mask> reach(static_cast<size_t>(n), 0);
    for (int x = 0; x < n; ++x)
        for_each_bit(n_mask, [&](int a) { reach[static_cast<size_t>(x)] |= bit_of(m.plus(x, a)); });
    std::vector<int> class_of(static_cast<size_t>(n), -1);
    std::vector<int> rep;
    for (int x = 0; x < n; ++x) {
        if (class_of[static_cast<size_t>(x)] >= 0) continue;
        int c = static_cast<int>(rep.size());
        rep.push_back(x);
        for (int y = x; y < n; ++y)
            if (class_of[static_cast<size_t>(y)] < 0 && (reach[static_cast<size_t>(x)] & reach[static_cast<size_t>(y)]))
                class_of[static_cast<size_t>(y)] = c;
    }
    int q = static_cast<int>(rep.size());
    std::vector<int> add(static_cast<size_t>(q) * q), act(static_cast<size_t>(m.ring.size) * q);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j)
            add[static_cast<size_t>(i) * q + j] = class_of[static_cast<size_t>(m.plus(rep[static_cast<size_t>(i)], rep[static_cast<size_t>(j)]))];
    for (int r = 0; r < m.ring.size; ++r)
        for (int i = 0; i < q; ++i)
            act[static_cast<size_t>(r) * q + i] = class_of[static_cast<size_t>(m.action(r, rep[static_cast<size_t>(i)]))];
    // well-definedness across all representatives
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (add[static_cast<size_t>(class_of[static_cast<size_t>(x)]) * q + class_of[static_cast<size_t>(y)]] != class_of[static_cast<size_t>(m.plus(x, y))])
                fail_input("quotient_module: congruence is not compatible with addition");
    FiniteModule quot = make_module(m.ring, name, q, std::move(add), std::move(act));
    ModuleMorphism proj{m, quot, class_of};
    return {std::move(quot), std::move(proj), std::move(class_of)};
}

// ---------------------------------------------------------------------------
// Classification

/// Admissible mono: injective with saturated image. Admissible epi:
/// surjective with fibers equal to the congruence classes of f^-1(0).
inline MorphismClass classify_morphism(const ModuleMorphism& f) {
    if (!is_valid_morphism_map(f.source, f.target, f.map)) fail_input("classify_morphism: invalid morphism");
    Mask image = image_mask(f);
    bool injective = mask_size(image) == f.source.size;
    bool surjective = image == full_mask(f.target.size);
    if (injective && surjective) return MorphismClass::iso;
    if (injective && is_saturated_submodule(f.target, image)) return MorphismClass::admissible_mono;
    if (surjective) {
        QuotientResult q = quotient_module(f.source, kernel_mask(f));
        bool fibers_match = true;
        for (int x = 0; x < f.source.size && fibers_match; ++x)
            for (int y = 0; y < f.source.size; ++y)
                if ((f.map[static_cast<size_t>(x)] == f.map[static_cast<size_t>(y)]) !=
                    (q.class_of[static_cast<size_t>(x)] == q.class_of[static_cast<size_t>(y)])) {
                    fibers_match = false;
                    break;
                }
        if (fibers_match) return MorphismClass::admissible_epi;
    }
    return MorphismClass::neither;
}

inline bool is_admissible_mono(const ModuleMorphism& f) {
    auto c = classify_morphism(f);
    return c == MorphismClass::iso || c == MorphismClass::admissible_mono;
}

inline bool is_admissible_epi(const ModuleMorphism& f) {
    auto c = classify_morphism(f);
    return c == MorphismClass::iso || c == MorphismClass::admissible_epi;
}

// ---------------------------------------------------------------------------
// Hom and isomorphism enumeration

/// All morphisms M -> N in lexicographic map order.
inline std::vector<ModuleMorphism> enumerate_homs(const FiniteModule& m, const FiniteModule& n) {
    if (!m.ring.same_structure(n.ring)) fail_input("enumerate_homs: ring mismatch");
    std::vector<ModuleMorphism> out;
    std::vector<int> map(static_cast<size_t>(m.size), -1);
    map[0] = 0;
    // at step k, check exactly the constraints whose last participant is k
    auto consistent = [&](int k) {
        for (int a = 0; a <= k; ++a)
            for (int b = a; b <= k; ++b) {
                int s = m.plus(a, b);
                if (std::max({a, b, s}) != k || s > k) continue;
                if (map[static_cast<size_t>(s)] != n.plus(map[static_cast<size_t>(a)], map[static_cast<size_t>(b)])) return false;
            }
        for (int r = 0; r < m.ring.size; ++r)
            for (int a = 0; a <= k; ++a) {
                int s = m.action(r, a);
                if (std::max(a, s) != k || s > k) continue;
                if (map[static_cast<size_t>(s)] != n.action(r, map[static_cast<size_t>(a)])) return false;
            }
        return true;
    };
    std::function<void(int)> go = [&](int k) {
        if (k == m.size) {
            out.push_back(ModuleMorphism{m, n, map});
            return;
        }
        for (int t = 0; t < n.size; ++t) {
            map[static_cast<size_t>(k)] = t;
            if (consistent(k)) go(k + 1);
        }
        map[static_cast<size_t>(k)] = -1;
    };
    if (consistent(0)) go(1);
    return out;
}

namespace detail {

// Per-element fingerprint preserved by isomorphisms: addition in-degree,
// idempotency, and scalar-action profile.
inline std::vector<std::vector<int>> iso_invariants(const FiniteModule& m) {
    std::vector<std::vector<int>> inv(static_cast<size_t>(m.size));
    std::vector<int> indeg(static_cast<size_t>(m.size), 0), act_in(static_cast<size_t>(m.size), 0);
    for (int a = 0; a < m.size; ++a)
        for (int b = 0; b < m.size; ++b) ++indeg[static_cast<size_t>(m.plus(a, b))];
    for (int r = 0; r < m.ring.size; ++r)
        for (int a = 0; a < m.size; ++a) ++act_in[static_cast<size_t>(m.action(r, a))];
    for (int x = 0; x < m.size; ++x) {
        int fixed = 0;
        for (int r = 0; r < m.ring.size; ++r)
            if (m.action(r, x) == x) ++fixed;
        inv[static_cast<size_t>(x)] = {indeg[static_cast<size_t>(x)], act_in[static_cast<size_t>(x)],
                                       m.plus(x, x) == x ? 1 : 0, fixed, x == 0 ? 0 : 1};
    }
    return inv;
}

}  // namespace detail

/// Backtracking isomorphism search with per-element candidate masks.
/// allowed[x] restricts the permitted images of source element x.
inline std::optional<ModuleMorphism> find_isomorphism_constrained(
    const FiniteModule& m, const FiniteModule& n, const std::vector<Mask>& allowed) {
    if (m.size != n.size || !m.ring.same_structure(n.ring)) return std::nullopt;
    auto inv_m = detail::iso_invariants(m);
    auto inv_n = detail::iso_invariants(n);
    std::vector<Mask> cand(static_cast<size_t>(m.size));
    for (int x = 0; x < m.size; ++x) {
        Mask c = 0;
        for (int y = 0; y < n.size; ++y)
            if (inv_m[static_cast<size_t>(x)] == inv_n[static_cast<size_t>(y)]) c |= bit_of(y);
        if (!allowed.empty()) c &= allowed[static_cast<size_t>(x)];
        if (c == 0) return std::nullopt;
        cand[static_cast<size_t>(x)] = c;
    }
    std::vector<int> map(static_cast<size_t>(m.size), -1);
    Mask used = 0;
    auto consistent = [&](int k) {
        for (int a = 0; a <= k; ++a)
            for (int b = a; b <= k; ++b) {
                int s = m.plus(a, b);
                if (s <= k &&
                    map[static_cast<size_t>(s)] != n.plus(map[static_cast<size_t>(a)], map[static_cast<size_t>(b)]))
                    return false;
            }
        for (int r = 0; r < m.ring.size; ++r)
            for (int a = 0; a <= k; ++a) {
                int s = m.action(r, a);
                if (s <= k && map[static_cast<size_t>(s)] != n.action(r, map[static_cast<size_t>(a)])) return false;
            }
        return true;
    };
    std::function<bool(int)> go = [&](int k) -> bool {
        if (k == m.size) return true;
        bool found = false;
        for_each_bit(cand[static_cast<size_t>(k)] & ~used, [&](int t) {
            if (found) return;
            map[static_cast<size_t>(k)] = t;
            used |= bit_of(t);
            if (consistent(k) && go(k + 1)) {
                found = true;
                return;
            }
            used &= ~bit_of(t);
            map[static_cast<size_t>(k)] = -1;
        });
        return found;
    };
    if (!go(0)) return std::nullopt;
    return ModuleMorphism{m, n, map};
}

inline std::optional<ModuleMorphism> find_isomorphism(const FiniteModule& m,
                                                      const FiniteModule& n) {
    return find_isomorphism_constrained(m, n, {});
}

// ---------------------------------------------------------------------------
// Third isomorphism witness: M/pi^-1(K) ~= (M/N)/K

inline ModuleMorphism check_third_iso(const FiniteModule& m, Mask n_mask, Mask k_mask) {
    if (!is_saturated_submodule(m, n_mask)) fail_input("check_third_iso: N not saturated in M");
    QuotientResult by_n = quotient_module(m, n_mask, "M/N");
    if (!is_saturated_submodule(by_n.quotient, k_mask))
        fail_input("check_third_iso: K not saturated in M/N");
    Mask pre = 0;
    for (int x = 0; x < m.size; ++x)
        if (has_bit(k_mask, by_n.class_of[static_cast<size_t>(x)])) pre |= bit_of(x);
    QuotientResult left = quotient_module(m, pre, "M/pre");
    QuotientResult right = quotient_module(by_n.quotient, k_mask, "(M/N)/K");
    std::vector<int> map(static_cast<size_t>(left.quotient.size), -1);
    for (int x = 0; x < m.size; ++x) {
        int lc = left.class_of[static_cast<size_t>(x)];
        int rc = right.class_of[static_cast<size_t>(by_n.class_of[static_cast<size_t>(x)])];
        if (map[static_cast<size_t>(lc)] >= 0 && map[static_cast<size_t>(lc)] != rc)
            throw Error(ErrorKind::axiom_failure, "third isomorphism witness is not well-defined");
        map[static_cast<size_t>(lc)] = rc;
    }
    ModuleMorphism phi = make_morphism(left.quotient, right.quotient, map);
    if (classify_morphism(phi) != MorphismClass::iso)
        throw Error(ErrorKind::axiom_failure, "third isomorphism witness is not bijective");
    return phi;
}

// ---------------------------------------------------------------------------
// Bi-Cartesian completion

template <class Mor>
struct BiCartesianSquare {
    // orientation: i maps A to B, j maps A to A', i' maps A' to B',
    // j' maps B to B'
    Mor i, j, i_prime, j_prime;
};

using SmodSquare = BiCartesianSquare<ModuleMorphism>;

namespace detail {

template <class Sq>
void require_commutes(const Sq& s) {
    auto left = compose(s.j_prime, s.i);
    auto right = compose(s.i_prime, s.j);
    if (left.map != right.map) throw Error(ErrorKind::axiom_failure, "completed square does not commute");
}

}  // namespace detail

/// Pullback completion: given i' : A' -> B' and j' : B -> B', the corner is
/// j'^-1(i'(A')) with the induced projection.
inline SmodSquare complete_pullback(const ModuleMorphism& i_prime, const ModuleMorphism& j_prime) {
    if (!is_admissible_mono(i_prime)) fail_input("complete_pullback: i' is not an admissible mono");
    if (!is_admissible_epi(j_prime)) fail_input("complete_pullback: j' is not an admissible epi");
    if (!i_prime.target.same_structure(j_prime.target))
        fail_input("complete_pullback: corner object mismatch");
    Mask image = image_mask(i_prime);
    Mask a_mask = preimage_mask(j_prime, image);
    auto [a, inclusion] = submodule_module(j_prime.source, a_mask, "pullback");
    std::vector<int> into_source(static_cast<size_t>(i_prime.target.size), -1);
    for (int x = 0; x < i_prime.source.size; ++x) into_source[static_cast<size_t>(i_prime.map[static_cast<size_t>(x)])] = x;
    std::vector<int> jmap(static_cast<size_t>(a.size));
    for (int x = 0; x < a.size; ++x)
        jmap[static_cast<size_t>(x)] = into_source[static_cast<size_t>(j_prime.map[static_cast<size_t>(inclusion.map[static_cast<size_t>(x)])])];
    SmodSquare sq{inclusion, make_morphism(a, i_prime.source, std::move(jmap)), i_prime, j_prime};
    detail::require_commutes(sq);
    if (!is_admissible_mono(sq.i) || !is_admissible_epi(sq.j))
        throw Error(ErrorKind::axiom_failure, "pullback completion produced inadmissible edges");
    return sq;
}

/// Pushout completion: given i : A -> B and j : A -> A', quotient B by the
/// saturated submodule defining j.
inline SmodSquare complete_pushout(const ModuleMorphism& i, const ModuleMorphism& j) {
    if (!is_admissible_mono(i)) fail_input("complete_pushout: i is not an admissible mono");
    if (!is_admissible_epi(j)) fail_input("complete_pushout: j is not an admissible epi");
    if (!i.source.same_structure(j.source)) fail_input("complete_pushout: corner object mismatch");
    Mask ker = kernel_mask(j);
    Mask ker_in_b = 0;
    for_each_bit(ker, [&](int x) { ker_in_b |= bit_of(i.map[static_cast<size_t>(x)]); });
    QuotientResult q = quotient_module(i.target, ker_in_b, "pushout");
    std::vector<int> imap(static_cast<size_t>(j.target.size), -1);
    for (int x = 0; x < j.source.size; ++x) {
        int c = j.map[static_cast<size_t>(x)];
        int v = q.class_of[static_cast<size_t>(i.map[static_cast<size_t>(x)])];
        if (imap[static_cast<size_t>(c)] >= 0 && imap[static_cast<size_t>(c)] != v)
            throw Error(ErrorKind::axiom_failure, "pushout induced map is not well-defined");
        imap[static_cast<size_t>(c)] = v;
    }
    SmodSquare sq{i, j, make_morphism(j.target, q.quotient, std::move(imap)), q.projection};
    detail::require_commutes(sq);
    if (!is_admissible_mono(sq.i_prime) || !is_admissible_epi(sq.j_prime))
        throw Error(ErrorKind::axiom_failure, "pushout completion produced inadmissible edges");
    return sq;
}

// ---------------------------------------------------------------------------

inline FiniteModule direct_product(const FiniteModule& m, const FiniteModule& n) {
    if (!m.ring.same_structure(n.ring)) fail_input("direct_product: ring mismatch");
    int sz = m.size * n.size;
    if (sz > hard_size_cap) fail_bound("direct_product: result exceeds the hard size cap");
    auto pair_index = [&](int a, int b) { return a * n.size + b; };
    std::vector<int> add(static_cast<size_t>(sz) * sz), act(static_cast<size_t>(m.ring.size) * sz);
    for (int a = 0; a < m.size; ++a)
        for (int b = 0; b < n.size; ++b)
            for (int c = 0; c < m.size; ++c)
                for (int d = 0; d < n.size; ++d)
                    add[static_cast<size_t>(pair_index(a, b)) * sz + pair_index(c, d)] =
                        pair_index(m.plus(a, c), n.plus(b, d));
    for (int r = 0; r < m.ring.size; ++r)
        for (int a = 0; a < m.size; ++a)
            for (int b = 0; b < n.size; ++b)
                act[static_cast<size_t>(r) * sz + pair_index(a, b)] =
                    pair_index(m.action(r, a), n.action(r, b));
    return make_module(m.ring, m.name + "x" + n.name, sz, std::move(add), std::move(act));
}

}  // namespace pexa
