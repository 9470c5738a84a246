#pragma once

/// Finite modules over a finite hyperring: strictness tests, congruence
/// quotients by b+A set equality, submodule enumeration, and bi-Cartesian
/// completion. Submodules carry the induced hyperaddition, i.e. the ambient
/// sums restricted; the enumerator enforces this.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"
#include "smod.hpp"  // MorphismClass lives in core, BiCartesianSquare here
#include "tables.hpp"

namespace pexa {

struct HModule {
    HyperTable ring;
    std::string name;
    int size = 0;
    std::vector<Mask> hyperadd;  // size*size
    std::vector<int> act;        // ring.size*size

    Mask sum(int a, int b) const { return hyperadd[static_cast<size_t>(a) * size + b]; }
    int action(int r, int m) const { return act[static_cast<size_t>(r) * size + m]; }
    int zero() const { return 0; }

    Mask sum_sets(Mask x, Mask y) const {
        Mask out = 0;
        for_each_bit(x, [&](int a) { for_each_bit(y, [&](int b) { out |= sum(a, b); }); });
        return out;
    }

    Mask sum_set(Mask x, int c) const { return sum_sets(x, bit_of(c)); }

    bool same_structure(const HModule& o) const {
        return size == o.size && hyperadd == o.hyperadd && act == o.act &&
               ring.same_structure(o.ring);
    }
};

inline HModule make_hmodule(HyperTable ring, std::string name, int size,
                            std::vector<Mask> hyperadd, std::vector<int> act) {
    detail::require_hyper_table(hyperadd, size, "hmodule hyperaddition");
    if (act.size() != static_cast<size_t>(ring.size) * static_cast<size_t>(size))
        fail_input("hmodule act: table is not ring.size*size");
    for (int v : act)
        if (v < 0 || v >= size) fail_input("hmodule act: entry out of range");
    return HModule{std::move(ring), std::move(name), size, std::move(hyperadd), std::move(act)};
}

inline HModule zero_hmodule(const HyperTable& ring) {
    return make_hmodule(ring, "0", 1, {bit_of(0)}, std::vector<int>(static_cast<size_t>(ring.size), 0));
}

inline HModule hmodule_from_hyperring(const HyperTable& ring) {
    return make_hmodule(ring, ring.name, ring.size, ring.hyperadd, ring.mul);
}

// ---------------------------------------------------------------------------
// Axioms

inline bool recheck_hmodule_axiom(const HyperTable& r, const HModule& m, const std::string& axiom,
                                  const std::vector<int>& w) {
    if (axiom == "act_identity") return m.action(r.one(), w[0]) == w[0];
    if (axiom == "act_zero") return m.action(0, w[0]) == 0;
    if (axiom == "act_mul_compatible")
        return m.action(r.times(w[0], w[1]), w[2]) == m.action(w[0], m.action(w[1], w[2]));
    if (axiom == "act_distributes_module") {
        Mask lhs = 0;
        for_each_bit(m.sum(w[1], w[2]), [&](int z) { lhs |= bit_of(m.action(w[0], z)); });
        return lhs == m.sum(m.action(w[0], w[1]), m.action(w[0], w[2]));
    }
    if (axiom == "act_distributes_scalar") {
        Mask lhs = 0;
        for_each_bit(r.sum(w[0], w[1]), [&](int z) { lhs |= bit_of(m.action(z, w[2])); });
        return lhs == m.sum(m.action(w[0], w[2]), m.action(w[1], w[2]));
    }
    return detail::recheck_hypergroup_axiom(m.size, m.hyperadd,
                                            detail::compute_negatives(m.size, m.hyperadd), axiom, w);
}

/// Hypergroup axioms plus the four module axioms, set-extended.
inline AxiomReport check_hmodule_axioms(const HyperTable& r, const HModule& m) {
    if (!r.same_structure(m.ring)) fail_input("check_hmodule_axioms: ring mismatch");
    AxiomReport rep;
    detail::check_hypergroup_axioms(rep, m.size, m.hyperadd);
    auto scan = [&](const char* name, const std::vector<int>& dims) {
        std::vector<int> w(dims.size(), 0);
        while (true) {
            if (!recheck_hmodule_axiom(r, m, name, w)) {
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
    scan("act_identity", {n});
    scan("act_zero", {n});
    scan("act_mul_compatible", {k, k, n});
    scan("act_distributes_module", {k, n, n});
    scan("act_distributes_scalar", {k, k, n});
    return rep;
}

// ---------------------------------------------------------------------------
// Submodules

inline bool is_hsubmodule(const HModule& m, Mask s) {
    if (!has_bit(s, 0)) return false;
    bool ok = true;
    for_each_bit(s, [&](int a) {
        for_each_bit(s, [&](int b) {
            if (m.sum(a, b) & ~s) ok = false;
        });
        for (int r = 0; r < m.ring.size; ++r)
            if (!has_bit(s, m.action(r, a))) ok = false;
    });
    return ok;
}

inline Mask hsubmodule_closure(const HModule& m, Mask s) {
    Mask cur = s | bit_of(0);
    for (;;) {
        Mask next = cur;
        for_each_bit(cur, [&](int a) {
            for_each_bit(cur, [&](int b) { next |= m.sum(a, b); });
            for (int r = 0; r < m.ring.size; ++r) next |= bit_of(m.action(r, a));
        });
        if (next == cur) return cur;
        cur = next;
    }
}

inline std::vector<Mask> enumerate_hsubmodules(const HModule& m) {
    std::vector<Mask> out;
    if (m.size <= 12) {
        for (Mask s = 1; s <= full_mask(m.size); s += 2)
            if (is_hsubmodule(m, s)) out.push_back(s);
    } else {
        std::vector<Mask> seen{hsubmodule_closure(m, 0)};
        std::vector<Mask> work = seen;
        while (!work.empty()) {
            Mask s = work.back();
            work.pop_back();
            for (int x = 0; x < m.size; ++x) {
                if (has_bit(s, x)) continue;
                Mask t = hsubmodule_closure(m, s | bit_of(x));
                if (std::find(seen.begin(), seen.end(), t) == seen.end()) {
                    seen.push_back(t);
                    work.push_back(t);
                }
            }
        }
        out = seen;
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Morphisms

struct HMorphism {
    HModule source;
    HModule target;
    std::vector<int> map;
    bool strict = false;

    int operator()(int x) const { return map[static_cast<size_t>(x)]; }
};

inline bool is_valid_hmorphism_map(const HModule& s, const HModule& t, const std::vector<int>& map) {
    if (!s.ring.same_structure(t.ring)) return false;
    if (map.size() != static_cast<size_t>(s.size)) return false;
    for (int v : map)
        if (v < 0 || v >= t.size) return false;
    if (map[0] != 0) return false;
    for (int a = 0; a < s.size; ++a)
        for (int b = 0; b < s.size; ++b) {
            Mask image = 0;
            for_each_bit(s.sum(a, b), [&](int z) { image |= bit_of(map[static_cast<size_t>(z)]); });
            if (image & ~t.sum(map[static_cast<size_t>(a)], map[static_cast<size_t>(b)])) return false;
        }
    for (int r = 0; r < s.ring.size; ++r)
        for (int a = 0; a < s.size; ++a)
            if (map[static_cast<size_t>(s.action(r, a))] != t.action(r, map[static_cast<size_t>(a)])) return false;
    return true;
}

namespace detail {

inline bool hmorphism_strict(const HModule& s, const HModule& t, const std::vector<int>& map,
                             std::pair<int, int>* witness = nullptr) {
    for (int a = 0; a < s.size; ++a)
        for (int b = 0; b < s.size; ++b) {
            Mask image = 0;
            for_each_bit(s.sum(a, b), [&](int z) { image |= bit_of(map[static_cast<size_t>(z)]); });
            if (image != t.sum(map[static_cast<size_t>(a)], map[static_cast<size_t>(b)])) {
                if (witness) *witness = {a, b};
                return false;
            }
        }
    return true;
}

}  // namespace detail

inline HMorphism make_hmorphism(HModule source, HModule target, std::vector<int> map) {
    if (!is_valid_hmorphism_map(source, target, map)) fail_input("not an H-module morphism");
    bool strict = detail::hmorphism_strict(source, target, map);
    return HMorphism{std::move(source), std::move(target), std::move(map), strict};
}

inline HMorphism h_identity(const HModule& m) {
    std::vector<int> map(static_cast<size_t>(m.size));
    for (int i = 0; i < m.size; ++i) map[static_cast<size_t>(i)] = i;
    return HMorphism{m, m, std::move(map), true};
}

inline HMorphism h_zero_morphism(const HModule& s, const HModule& t) {
    auto f = HMorphism{s, t, std::vector<int>(static_cast<size_t>(s.size), 0), false};
    f.strict = detail::hmorphism_strict(s, t, f.map);
    return f;
}

inline HMorphism compose(const HMorphism& g, const HMorphism& f) {
    if (!f.target.same_structure(g.source)) fail_input("compose: middle object mismatch");
    std::vector<int> map(static_cast<size_t>(f.source.size));
    for (int x = 0; x < f.source.size; ++x) map[static_cast<size_t>(x)] = g.map[static_cast<size_t>(f.map[static_cast<size_t>(x)])];
    bool strict = detail::hmorphism_strict(f.source, g.target, map);
    return HMorphism{f.source, g.target, std::move(map), strict};
}

struct StrictnessResult {
    bool strict = false;
    std::vector<int> witness;  // (a, b) when not strict
};

inline StrictnessResult is_strict(const HMorphism& f) {
    if (!is_valid_hmorphism_map(f.source, f.target, f.map)) fail_input("is_strict: invalid morphism");
    std::pair<int, int> w;
    if (detail::hmorphism_strict(f.source, f.target, f.map, &w)) return {true, {}};
    return {false, {w.first, w.second}};
}

inline Mask h_image_mask(const HMorphism& f) {
    Mask out = 0;
    for (int v : f.map) out |= bit_of(v);
    return out;
}

inline Mask h_preimage_mask(const HMorphism& f, Mask target_set) {
    Mask out = 0;
    for (int x = 0; x < f.source.size; ++x)
        if (has_bit(target_set, f.map[static_cast<size_t>(x)])) out |= bit_of(x);
    return out;
}

inline Mask h_kernel_mask(const HMorphism& f) { return h_preimage_mask(f, bit_of(0)); }

/// Strict injective / strict surjective are the distinguished classes.
inline MorphismClass classify_hmorphism(const HMorphism& f) {
    if (!is_valid_hmorphism_map(f.source, f.target, f.map))
        fail_input("classify_hmorphism: invalid morphism");
    if (!f.strict) return MorphismClass::neither;
    Mask image = h_image_mask(f);
    bool injective = mask_size(image) == f.source.size;
    bool surjective = image == full_mask(f.target.size);
    if (injective && surjective) return MorphismClass::iso;
    if (injective) return MorphismClass::admissible_mono;
    if (surjective) return MorphismClass::admissible_epi;
    return MorphismClass::neither;
}

inline bool is_h_admissible_mono(const HMorphism& f) {
    auto c = classify_hmorphism(f);
    return c == MorphismClass::iso || c == MorphismClass::admissible_mono;
}

inline bool is_h_admissible_epi(const HMorphism& f) {
    auto c = classify_hmorphism(f);
    return c == MorphismClass::iso || c == MorphismClass::admissible_epi;
}

/// All (lax) morphisms in lexicographic map order.
inline std::vector<HMorphism> enumerate_hmorphisms(const HModule& m, const HModule& n) {
    if (!m.ring.same_structure(n.ring)) fail_input("enumerate_hmorphisms: ring mismatch");
    std::vector<HMorphism> out;
    std::vector<int> map(static_cast<size_t>(m.size), -1);
    map[0] = 0;
    auto consistent = [&](int k) {
        for (int a = 0; a <= k; ++a)
            for (int b = a; b <= k; ++b) {
                Mask s = m.sum(a, b);
                Mask allowed = n.sum(map[static_cast<size_t>(a)], map[static_cast<size_t>(b)]);
                bool bad = false;
                for_each_bit(s, [&](int z) {
                    if (z <= k && !has_bit(allowed, map[static_cast<size_t>(z)])) bad = true;
                });
                if (bad) return false;
            }
        for (int r = 0; r < m.ring.size; ++r)
            for (int a = 0; a <= k; ++a) {
                int s = m.action(r, a);
                if (s <= k && map[static_cast<size_t>(s)] != n.action(r, map[static_cast<size_t>(a)])) return false;
            }
        return true;
    };
    std::function<void(int)> go = [&](int k) {
        if (k == m.size) {
            bool strict = detail::hmorphism_strict(m, n, map);
            out.push_back(HMorphism{m, n, map, strict});
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

inline std::vector<HMorphism> enumerate_strict_homs(const HModule& m, const HModule& n) {
    std::vector<HMorphism> all = enumerate_hmorphisms(m, n);
    std::vector<HMorphism> out;
    for (auto& f : all)
        if (f.strict) out.push_back(std::move(f));
    return out;
}

namespace detail {

inline std::vector<std::vector<int>> h_iso_invariants(const HModule& m) {
    std::vector<std::vector<int>> inv(static_cast<size_t>(m.size));
    std::vector<int> indeg(static_cast<size_t>(m.size), 0), act_in(static_cast<size_t>(m.size), 0);
    for (int a = 0; a < m.size; ++a)
        for (int b = 0; b < m.size; ++b)
            for_each_bit(m.sum(a, b), [&](int z) { ++indeg[static_cast<size_t>(z)]; });
    for (int r = 0; r < m.ring.size; ++r)
        for (int a = 0; a < m.size; ++a) ++act_in[static_cast<size_t>(m.action(r, a))];
    for (int x = 0; x < m.size; ++x)
        inv[static_cast<size_t>(x)] = {indeg[static_cast<size_t>(x)], act_in[static_cast<size_t>(x)],
                                       mask_size(m.sum(x, x)), x == 0 ? 0 : 1};
    return inv;
}

}  // namespace detail

/// Backtracking search for a strict bijection; allowed[x] (when nonempty)
/// restricts the candidate images of x.
inline std::optional<HMorphism> find_h_isomorphism_constrained(const HModule& m, const HModule& n,
                                                               const std::vector<Mask>& allowed) {
    if (m.size != n.size || !m.ring.same_structure(n.ring)) return std::nullopt;
    auto inv_m = detail::h_iso_invariants(m);
    auto inv_n = detail::h_iso_invariants(n);
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
                Mask s = m.sum(a, b);
                bool determined = true;
                Mask image = 0;
                for_each_bit(s, [&](int z) {
                    if (map[static_cast<size_t>(z)] < 0)
                        determined = false;
                    else
                        image |= bit_of(map[static_cast<size_t>(z)]);
                });
                Mask tgt = n.sum(map[static_cast<size_t>(a)], map[static_cast<size_t>(b)]);
                if (determined ? image != tgt : (image & ~tgt) != 0) return false;
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
    return HMorphism{m, n, map, true};
}

inline std::optional<HMorphism> find_h_isomorphism(const HModule& m, const HModule& n) {
    return find_h_isomorphism_constrained(m, n, {});
}

// ---------------------------------------------------------------------------
// Subobjects and quotients

inline std::pair<HModule, HMorphism> hsubmodule_hmodule(const HModule& m, Mask s,
                                                        const std::string& name = "sub") {
    if (!is_hsubmodule(m, s)) fail_input("hsubmodule_hmodule: not a submodule");
    std::vector<int> elems = mask_elements(s);
    int n = static_cast<int>(elems.size());
    std::vector<int> local(static_cast<size_t>(m.size), -1);
    for (int i = 0; i < n; ++i) local[static_cast<size_t>(elems[static_cast<size_t>(i)])] = i;
    std::vector<Mask> hadd(static_cast<size_t>(n) * n, 0);
    std::vector<int> act(static_cast<size_t>(m.ring.size) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Mask cell = 0;
            for_each_bit(m.sum(elems[static_cast<size_t>(i)], elems[static_cast<size_t>(j)]),
                         [&](int z) { cell |= bit_of(local[static_cast<size_t>(z)]); });
            hadd[static_cast<size_t>(i) * n + j] = cell;
        }
    for (int r = 0; r < m.ring.size; ++r)
        for (int i = 0; i < n; ++i)
            act[static_cast<size_t>(r) * n + i] = local[static_cast<size_t>(m.action(r, elems[static_cast<size_t>(i)]))];
    HModule sub = make_hmodule(m.ring, name, n, std::move(hadd), std::move(act));
    HMorphism inc{sub, m, elems, true};
    return {std::move(sub), std::move(inc)};
}

struct HQuotientResult {
    HModule quotient;
    HMorphism projection;
    std::vector<int> class_of;
};

/// Quotient by the congruence b1 ~ b2 iff b1+A = b2+A (set equality); the
/// class hyperaddition is computed over all representatives and the action
/// is verified well-defined.
inline HQuotientResult quotient_hmodule(const HModule& m, Mask a_mask,
                                        const std::string& name = "quot") {
    if (!is_hsubmodule(m, a_mask)) fail_input("quotient_hmodule: not a submodule");
    int n = m.size;
    std::vector<Mask> shifted(static_cast<size_t>(n), 0);
    for (int b = 0; b < n; ++b)
        for_each_bit(a_mask, [&](int a) { shifted[static_cast<size_t>(b)] |= m.sum(b, a); });
    std::vector<int> class_of(static_cast<size_t>(n), -1);
    std::vector<Mask> class_members;
    for (int b = 0; b < n; ++b) {
        if (class_of[static_cast<size_t>(b)] >= 0) continue;
        int c = static_cast<int>(class_members.size());
        Mask members = 0;
        for (int y = b; y < n; ++y)
            if (class_of[static_cast<size_t>(y)] < 0 && shifted[static_cast<size_t>(y)] == shifted[static_cast<size_t>(b)]) {
                class_of[static_cast<size_t>(y)] = c;
                members |= bit_of(y);
            }
        class_members.push_back(members);
    }
    int q = static_cast<int>(class_members.size());
    std::vector<Mask> hadd(static_cast<size_t>(q) * q, 0);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) {
            Mask cell = 0;
            for_each_bit(class_members[static_cast<size_t>(i)], [&](int x) {
                for_each_bit(class_members[static_cast<size_t>(j)], [&](int y) {
                    for_each_bit(m.sum(x, y), [&](int z) { cell |= bit_of(class_of[static_cast<size_t>(z)]); });
                });
            });
            hadd[static_cast<size_t>(i) * q + j] = cell;
        }
    std::vector<int> act(static_cast<size_t>(m.ring.size) * q, -1);
    for (int r = 0; r < m.ring.size; ++r)
        for (int x = 0; x < n; ++x) {
            int c = class_of[static_cast<size_t>(x)];
            int v = class_of[static_cast<size_t>(m.action(r, x))];
            int& slot = act[static_cast<size_t>(r) * q + c];
            if (slot >= 0 && slot != v)
                fail_input("quotient_hmodule: action is not well-defined on classes");
            slot = v;
        }
    HModule quot = make_hmodule(m.ring, name, q, std::move(hadd), std::move(act));
    HMorphism proj = make_hmorphism(m, quot, class_of);
    return {std::move(quot), std::move(proj), std::move(class_of)};
}

// ---------------------------------------------------------------------------
// Bi-Cartesian completion

using HmodSquare = BiCartesianSquare<HMorphism>;

/// Pullback corner A = (j')^-1(i'(A')) with the induced projection.
inline HmodSquare complete_pullback_h(const HMorphism& i_prime, const HMorphism& j_prime) {
    if (!is_h_admissible_mono(i_prime)) fail_input("complete_pullback_h: i' is not strict injective");
    if (!is_h_admissible_epi(j_prime)) fail_input("complete_pullback_h: j' is not strict surjective");
    if (!i_prime.target.same_structure(j_prime.target))
        fail_input("complete_pullback_h: corner object mismatch");
    Mask image = h_image_mask(i_prime);
    Mask a_mask = h_preimage_mask(j_prime, image);
    auto [a, inclusion] = hsubmodule_hmodule(j_prime.source, a_mask, "pullback");
    std::vector<int> into_source(static_cast<size_t>(i_prime.target.size), -1);
    for (int x = 0; x < i_prime.source.size; ++x) into_source[static_cast<size_t>(i_prime.map[static_cast<size_t>(x)])] = x;
    std::vector<int> jmap(static_cast<size_t>(a.size));
    for (int x = 0; x < a.size; ++x)
        jmap[static_cast<size_t>(x)] = into_source[static_cast<size_t>(j_prime.map[static_cast<size_t>(inclusion.map[static_cast<size_t>(x)])])];
    HmodSquare sq{inclusion, make_hmorphism(a, i_prime.source, std::move(jmap)), i_prime, j_prime};
    detail::require_commutes(sq);
    if (!is_h_admissible_mono(sq.i) || !is_h_admissible_epi(sq.j))
        throw Error(ErrorKind::axiom_failure, "pullback completion produced inadmissible edges");
    return sq;
}

/// Pushout: quotient B by the kernel of j, with the induced map from A'.
inline HmodSquare complete_pushout_h(const HMorphism& i, const HMorphism& j) {
    if (!is_h_admissible_mono(i)) fail_input("complete_pushout_h: i is not strict injective");
    if (!is_h_admissible_epi(j)) fail_input("complete_pushout_h: j is not strict surjective");
    if (!i.source.same_structure(j.source)) fail_input("complete_pushout_h: corner object mismatch");
    Mask ker = h_kernel_mask(j);
    Mask ker_in_b = 0;
    for_each_bit(ker, [&](int x) { ker_in_b |= bit_of(i.map[static_cast<size_t>(x)]); });
    HQuotientResult q = quotient_hmodule(i.target, ker_in_b, "pushout");
    std::vector<int> imap(static_cast<size_t>(j.target.size), -1);
    for (int x = 0; x < j.source.size; ++x) {
        int c = j.map[static_cast<size_t>(x)];
        int v = q.class_of[static_cast<size_t>(i.map[static_cast<size_t>(x)])];
        if (imap[static_cast<size_t>(c)] >= 0 && imap[static_cast<size_t>(c)] != v)
            throw Error(ErrorKind::axiom_failure, "pushout induced map is not well-defined");
        imap[static_cast<size_t>(c)] = v;
    }
    HmodSquare sq{i, j, make_hmorphism(j.target, q.quotient, std::move(imap)), q.projection};
    detail::require_commutes(sq);
    if (!is_h_admissible_mono(sq.i_prime) || !is_h_admissible_epi(sq.j_prime))
        throw Error(ErrorKind::axiom_failure, "pushout completion produced inadmissible edges");
    return sq;
}

// ---------------------------------------------------------------------------

/// Componentwise hyperaddition (Cartesian product of the summand sets) and
/// action. Always a hypergroup; whether the module axioms survive depends on
/// the scalar hyperring (they do when its sums are singletons).
inline HModule direct_product_h(const HModule& m, const HModule& n) {
    if (!m.ring.same_structure(n.ring)) fail_input("direct_product_h: ring mismatch");
    int sz = m.size * n.size;
    if (sz > hard_size_cap) fail_bound("direct_product_h: result exceeds the hard size cap");
    auto pair_index = [&](int a, int b) { return a * n.size + b; };
    std::vector<Mask> hadd(static_cast<size_t>(sz) * sz, 0);
    std::vector<int> act(static_cast<size_t>(m.ring.size) * sz);
    for (int a = 0; a < m.size; ++a)
        for (int b = 0; b < n.size; ++b)
            for (int c = 0; c < m.size; ++c)
                for (int d = 0; d < n.size; ++d) {
                    Mask cell = 0;
                    for_each_bit(m.sum(a, c), [&](int u) {
                        for_each_bit(n.sum(b, d), [&](int v) { cell |= bit_of(pair_index(u, v)); });
                    });
                    hadd[static_cast<size_t>(pair_index(a, b)) * sz + pair_index(c, d)] = cell;
                }
    for (int r = 0; r < m.ring.size; ++r)
        for (int a = 0; a < m.size; ++a)
            for (int b = 0; b < n.size; ++b)
                act[static_cast<size_t>(r) * sz + pair_index(a, b)] =
                    pair_index(m.action(r, a), n.action(r, b));
    return make_hmodule(m.ring, m.name + "x" + n.name, sz, std::move(hadd), std::move(act));
}

}  // namespace pexa
