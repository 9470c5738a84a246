#pragma once

/// Category-generic machinery for admissible short exact sequences, Ext
/// classes, Hall structure constants a^C_{A,B} = #{D <= C : D ~= B, C/D ~= A},
/// and full verification of the proto-exact axioms over a finite corpus.
/// Three backends present modules over a semiring, modules over a hyperring,
/// and finite lattices through one interface.

#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "generate.hpp"
#include "geometry.hpp"
#include "hmod.hpp"
#include "lattice.hpp"
#include "smod.hpp"
#include "tables.hpp"

namespace pexa {

// ---------------------------------------------------------------------------
// Backends

struct SmodBackend {
    using Object = FiniteModule;
    using Morphism = ModuleMorphism;

    SemiringTable ring;

    std::string category_name() const { return "Mod_" + ring.name; }
    Object zero_object() const { return zero_module(ring); }
    int object_size(const Object& o) const { return o.size; }
    bool same_object(const Object& a, const Object& b) const { return a.same_structure(b); }

    std::string key(const Object& o) const {
        std::string k;
        k.reserve(o.add.size() + o.act.size() + 2);
        k.push_back(static_cast<char>(o.size));
        for (int v : o.add) k.push_back(static_cast<char>(v));
        for (int v : o.act) k.push_back(static_cast<char>(v));
        return k;
    }

    std::vector<Mask> admissible_subobjects(const Object& o) const {
        return enumerate_submodules(o, true);
    }
    std::pair<Object, Morphism> subobject(const Object& o, Mask m) const {
        return submodule_module(o, m);
    }
    std::pair<Object, Morphism> quotient_by(const Object& o, Mask m) const {
        QuotientResult q = quotient_module(o, m);
        return {std::move(q.quotient), std::move(q.projection)};
    }

    MorphismClass classify(const Morphism& f) const { return classify_morphism(f); }
    std::vector<Morphism> homs(const Object& a, const Object& b) const {
        return enumerate_homs(a, b);
    }
    std::optional<Morphism> iso(const Object& a, const Object& b) const {
        return find_isomorphism(a, b);
    }
    std::optional<Morphism> iso_constrained(const Object& a, const Object& b,
                                            const std::vector<Mask>& allowed) const {
        return find_isomorphism_constrained(a, b, allowed);
    }
    Morphism compose_mor(const Morphism& g, const Morphism& f) const { return compose(g, f); }
    Morphism identity(const Object& o) const { return identity_morphism(o); }
    Morphism zero_mor(const Object& a, const Object& b) const { return zero_morphism(a, b); }
    std::optional<Morphism> try_morphism(const Object& s, const Object& t,
                                         std::vector<int> map) const {
        if (!is_valid_morphism_map(s, t, map)) return std::nullopt;
        return Morphism{s, t, std::move(map)};
    }
    Mask image(const Morphism& f) const { return image_mask(f); }
    int zero_element(const Object&) const { return 0; }

    BiCartesianSquare<Morphism> pullback(const Morphism& i_prime, const Morphism& j_prime) const {
        return complete_pullback(i_prime, j_prime);
    }
    BiCartesianSquare<Morphism> pushout(const Morphism& i, const Morphism& j) const {
        return complete_pushout(i, j);
    }

    Object product(const Object& a, const Object& b) const { return direct_product(a, b); }

    std::vector<Object> generate_objects(int max_size) const {
        if (ring.same_structure(boolean_semifield())) return generate_bmodules(max_size);
        return generate_modules_brute(ring, max_size);
    }
};

struct HmodBackend {
    using Object = HModule;
    using Morphism = HMorphism;

    HyperTable ring;

    std::string category_name() const { return "Mod_" + ring.name; }
    Object zero_object() const { return zero_hmodule(ring); }
    int object_size(const Object& o) const { return o.size; }
    bool same_object(const Object& a, const Object& b) const { return a.same_structure(b); }

    std::string key(const Object& o) const {
        std::string k;
        k.push_back(static_cast<char>(o.size));
        for (Mask m : o.hyperadd)
            for (int byte = 0; byte < 8; ++byte) k.push_back(static_cast<char>((m >> (8 * byte)) & 0xff));
        for (int v : o.act) k.push_back(static_cast<char>(v));
        return k;
    }

    std::vector<Mask> admissible_subobjects(const Object& o) const {
        return enumerate_hsubmodules(o);
    }
    std::pair<Object, Morphism> subobject(const Object& o, Mask m) const {
        return hsubmodule_hmodule(o, m);
    }
    std::pair<Object, Morphism> quotient_by(const Object& o, Mask m) const {
        HQuotientResult q = quotient_hmodule(o, m);
        return {std::move(q.quotient), std::move(q.projection)};
    }

    MorphismClass classify(const Morphism& f) const { return classify_hmorphism(f); }
    std::vector<Morphism> homs(const Object& a, const Object& b) const {
        return enumerate_hmorphisms(a, b);
    }
    std::optional<Morphism> iso(const Object& a, const Object& b) const {
        return find_h_isomorphism(a, b);
    }
    std::optional<Morphism> iso_constrained(const Object& a, const Object& b,
                                            const std::vector<Mask>& allowed) const {
        return find_h_isomorphism_constrained(a, b, allowed);
    }
    Morphism compose_mor(const Morphism& g, const Morphism& f) const { return compose(g, f); }
    Morphism identity(const Object& o) const { return h_identity(o); }
    Morphism zero_mor(const Object& a, const Object& b) const { return h_zero_morphism(a, b); }
    std::optional<Morphism> try_morphism(const Object& s, const Object& t,
                                         std::vector<int> map) const {
        if (!is_valid_hmorphism_map(s, t, map)) return std::nullopt;
        bool strict = detail::hmorphism_strict(s, t, map);
        return Morphism{s, t, std::move(map), strict};
    }
    Mask image(const Morphism& f) const { return h_image_mask(f); }
    int zero_element(const Object&) const { return 0; }

    BiCartesianSquare<Morphism> pullback(const Morphism& i_prime, const Morphism& j_prime) const {
        return complete_pullback_h(i_prime, j_prime);
    }
    BiCartesianSquare<Morphism> pushout(const Morphism& i, const Morphism& j) const {
        return complete_pushout_h(i, j);
    }

    Object product(const Object& a, const Object& b) const { return direct_product_h(a, b); }

    std::vector<Object> generate_objects(int max_size) const {
        if (ring.same_structure(krasner_hyperfield())) return generate_kmodules(max_size);
        return generate_hmodules_brute(ring, max_size);
    }
};

struct LatticeBackend {
    using Object = FiniteLattice;
    using Morphism = LatticeMorphism;

    std::string category_name() const { return "L^c"; }
    Object zero_object() const { return zero_lattice(); }
    int object_size(const Object& o) const { return o.size; }
    bool same_object(const Object& a, const Object& b) const { return a.same_structure(b); }

    std::string key(const Object& o) const {
        std::string k;
        k.push_back(static_cast<char>(o.size));
        for (char c : o.leq) k.push_back(c);
        return k;
    }

    std::vector<Mask> admissible_subobjects(const Object& o) const {
        return enumerate_admissible_sublattices(o);
    }
    std::pair<Object, Morphism> subobject(const Object& o, Mask m) const {
        return sublattice_lattice(o, m);
    }
    std::pair<Object, Morphism> quotient_by(const Object& o, Mask m) const {
        return quotient_lattice(o, m);
    }

    MorphismClass classify(const Morphism& f) const { return classify_lattice_morphism(f); }
    std::vector<Morphism> homs(const Object& a, const Object& b) const {
        return enumerate_join_maps(a, b);
    }
    std::optional<Morphism> iso(const Object& a, const Object& b) const {
        return find_lattice_isomorphism(a, b);
    }
    std::optional<Morphism> iso_constrained(const Object& a, const Object& b,
                                            const std::vector<Mask>& allowed) const {
        return find_lattice_isomorphism_constrained(a, b, allowed);
    }
    Morphism compose_mor(const Morphism& g, const Morphism& f) const { return compose(g, f); }
    Morphism identity(const Object& o) const { return lattice_identity(o); }
    Morphism zero_mor(const Object& a, const Object& b) const {
        return Morphism{a, b, std::vector<int>(static_cast<size_t>(a.size), b.bottom)};
    }
    std::optional<Morphism> try_morphism(const Object& s, const Object& t,
                                         std::vector<int> map) const {
        if (!is_valid_lattice_morphism_map(s, t, map)) return std::nullopt;
        return Morphism{s, t, std::move(map)};
    }
    Mask image(const Morphism& f) const {
        Mask out = 0;
        for (int v : f.map) out |= bit_of(v);
        return out;
    }
    int zero_element(const Object& o) const { return o.bottom; }

    BiCartesianSquare<Morphism> pullback(const Morphism& i_prime, const Morphism& j_prime) const {
        return complete_pullback_lattice(i_prime, j_prime);
    }
    BiCartesianSquare<Morphism> pushout(const Morphism& i, const Morphism& j) const {
        return complete_pushout_lattice(i, j);
    }

    Object product(const Object& a, const Object& b) const {
        return direct_product_lattice(a, b);
    }

    std::vector<Object> generate_objects(int max_size) const {
        return generate_lattices(max_size);
    }
};

// ---------------------------------------------------------------------------
// Short exact sequences

template <class B>
struct Ses {
    typename B::Morphism i;  // A -> M
    typename B::Morphism j;  // M -> C
};

struct SesDiagnosis {
    bool exact = false;
    std::string reason;  // empty when exact
};

/// i admissible mono, j admissible epi, j o i = 0, and the induced map from
/// M/image(i) to C is an isomorphism.
template <class B>
SesDiagnosis diagnose_short_exact(const B& b, const typename B::Morphism& i,
                                  const typename B::Morphism& j) {
    if (!b.same_object(i.target, j.source)) fail_input("short exact sequence: middle objects differ");
    auto ic = b.classify(i);
    if (ic != MorphismClass::admissible_mono && ic != MorphismClass::iso)
        return {false, "i is not an admissible mono"};
    auto jc = b.classify(j);
    if (jc != MorphismClass::admissible_epi && jc != MorphismClass::iso)
        return {false, "j is not an admissible epi"};
    auto composite = b.compose_mor(j, i);
    if (composite.map != b.zero_mor(i.source, j.target).map)
        return {false, "j o i is not the zero morphism"};
    auto [quot, proj] = b.quotient_by(i.target, b.image(i));
    std::vector<int> induced(static_cast<size_t>(b.object_size(quot)), -1);
    for (int x = 0; x < b.object_size(i.target); ++x) {
        int c = proj.map[static_cast<size_t>(x)];
        int v = j.map[static_cast<size_t>(x)];
        if (induced[static_cast<size_t>(c)] >= 0 && induced[static_cast<size_t>(c)] != v)
            return {false, "induced map M/im(i) -> C is not well-defined"};
        induced[static_cast<size_t>(c)] = v;
    }
    auto q_to_c = b.try_morphism(quot, j.target, induced);
    if (!q_to_c) return {false, "induced map M/im(i) -> C is not a morphism"};
    if (b.classify(*q_to_c) != MorphismClass::iso)
        return {false, "induced map M/im(i) -> C is not an isomorphism"};
    return {true, ""};
}

template <class B>
bool is_short_exact(const B& b, const typename B::Morphism& i, const typename B::Morphism& j) {
    return diagnose_short_exact(b, i, j).exact;
}

// ---------------------------------------------------------------------------
// Ext enumeration

template <class B>
struct ExtClassT {
    typename B::Object middle;
    Ses<B> representative;
    int class_size = 1;
    // all (i.map, j.map) pairs equivalent to the representative
    std::vector<std::pair<std::vector<int>, std::vector<int>>> members;
};

template <class B>
struct ExtResult {
    std::vector<ExtClassT<B>> classes;
    std::string note;
};

/// Equivalence of extensions of C by A: a middle isomorphism commuting with
/// the identities on A and C.
template <class B>
bool extensions_equivalent(const B& b, const Ses<B>& s1, const Ses<B>& s2) {
    if (!b.same_object(s1.i.target, s2.i.target)) return false;
    int n = b.object_size(s1.i.target);
    std::vector<Mask> allowed(static_cast<size_t>(n), 0);
    // phi(x) must land in the j2-fiber over j1(x)
    for (int x = 0; x < n; ++x) {
        Mask fib = 0;
        for (int y = 0; y < n; ++y)
            if (s2.j.map[static_cast<size_t>(y)] == s1.j.map[static_cast<size_t>(x)]) fib |= bit_of(y);
        allowed[static_cast<size_t>(x)] = fib;
    }
    // phi o i1 = i2
    for (int a = 0; a < b.object_size(s1.i.source); ++a)
        allowed[static_cast<size_t>(s1.i.map[static_cast<size_t>(a)])] = bit_of(s2.i.map[static_cast<size_t>(a)]);
    return b.iso_constrained(s1.i.target, s2.i.target, allowed).has_value();
}

/// All extension classes of C by A with middles up to max_middle_size,
/// enumerated up to isomorphism of middles and grouped by the equivalence of
/// Ext. Completeness is relative to the size bound; these categories are not
/// finitary.
template <class B>
ExtResult<B> ext_enumerate(const B& b, const typename B::Object& c_obj,
                           const typename B::Object& a_obj, int max_middle_size) {
    if (max_middle_size < 1) fail_input("ext_enumerate: size bound must be positive");
    ExtResult<B> out;
    auto middles = b.generate_objects(max_middle_size);
    for (const auto& m : middles) {
        std::vector<Ses<B>> seqs;
        for (const auto& i : b.homs(a_obj, m)) {
            auto ic = b.classify(i);
            if (ic != MorphismClass::admissible_mono && ic != MorphismClass::iso) continue;
            for (const auto& j : b.homs(m, c_obj)) {
                auto jc = b.classify(j);
                if (jc != MorphismClass::admissible_epi && jc != MorphismClass::iso) continue;
                if (is_short_exact(b, i, j)) seqs.push_back(Ses<B>{i, j});
            }
        }
        // group within this middle
        std::vector<int> cls(seqs.size(), -1);
        int n_classes = 0;
        for (size_t s = 0; s < seqs.size(); ++s) {
            if (cls[s] >= 0) continue;
            cls[s] = n_classes;
            for (size_t t = s + 1; t < seqs.size(); ++t)
                if (cls[t] < 0 && extensions_equivalent(b, seqs[s], seqs[t])) cls[t] = n_classes;
            ++n_classes;
        }
        for (int c = 0; c < n_classes; ++c) {
            ExtClassT<B> ec;
            ec.middle = m;
            ec.class_size = 0;
            size_t rep = seqs.size();
            for (size_t s = 0; s < seqs.size(); ++s) {
                if (cls[s] != c) continue;
                ++ec.class_size;
                ec.members.push_back({seqs[s].i.map, seqs[s].j.map});
                if (rep == seqs.size()) rep = s;
            }
            ec.representative = seqs[rep];
            out.classes.push_back(std::move(ec));
        }
    }
    if (out.classes.empty())
        out.note = "no middle object within the size bound admits an exact sequence";
    return out;
}

// ---------------------------------------------------------------------------
// Hall structure constants

struct HallResult {
    int count = 0;
    std::vector<Mask> witnesses;
};

/// a^E_{A,B} = #{D <= E : D ~= B and E/D ~= A}, by exhaustive scan of
/// admissible subobjects.
template <class B>
HallResult hall_constant(const B& b, const typename B::Object& e, const typename B::Object& a_obj,
                         const typename B::Object& b_obj, int workers = 1) {
    std::vector<Mask> subs = b.admissible_subobjects(e);
    std::vector<char> hit(subs.size(), 0);
    parallel_for(static_cast<int>(subs.size()), workers, [&](int idx) {
        Mask d = subs[static_cast<size_t>(idx)];
        auto sub = b.subobject(e, d);
        if (!b.iso(sub.first, b_obj)) return;
        auto quot = b.quotient_by(e, d);
        if (!b.iso(quot.first, a_obj)) return;
        hit[static_cast<size_t>(idx)] = 1;
    });
    HallResult out;
    for (size_t s = 0; s < subs.size(); ++s)
        if (hit[s]) {
            ++out.count;
            out.witnesses.push_back(subs[s]);
        }
    return out;
}

/// Hall constants of (A, B) across a user-supplied universe of ambient
/// objects; the Hall product is only ever materialized this way.
template <class B>
std::vector<HallResult> hall_table(const B& b, const std::vector<typename B::Object>& universe,
                                   const typename B::Object& a_obj,
                                   const typename B::Object& b_obj, int workers = 1) {
    std::vector<HallResult> out;
    out.reserve(universe.size());
    for (const auto& e : universe) out.push_back(hall_constant(b, e, a_obj, b_obj, workers));
    return out;
}

// ---------------------------------------------------------------------------
// Proto-exact axiom verification

struct ProtoAxiomCheck {
    std::string name;
    bool pass = true;
    long long checked = 0;
    std::vector<std::string> failures;  // bounded list of descriptions
};

struct ProtoExactReport {
    std::string category;
    int object_count = 0;
    bool all_pass = false;
    std::vector<ProtoAxiomCheck> axioms;
};

namespace detail {

template <class B>
class AxiomVerifier {
public:
    using Object = typename B::Object;
    using Morphism = typename B::Morphism;

    AxiomVerifier(const B& b, std::vector<Object> corpus, int workers)
        : b_(b), workers_(workers) {
        // working set: corpus plus every subobject and quotient constructed
        // from it, deduplicated structurally
        for (auto& o : corpus) add_object(std::move(o));
        add_object(b_.zero_object());
        size_t base = objects_.size();
        for (size_t idx = 0; idx < base; ++idx) {
            Object o = objects_[idx];
            for (Mask m : b_.admissible_subobjects(o)) {
                add_object(b_.subobject(o, m).first);
                add_object(b_.quotient_by(o, m).first);
            }
        }
    }

    ProtoExactReport run() {
        ProtoExactReport rep;
        rep.category = b_.category_name();
        rep.object_count = static_cast<int>(objects_.size());
        collect_morphisms();
        rep.axioms.push_back(axiom1());
        rep.axioms.push_back(axiom2());
        rep.axioms.push_back(axiom3());
        rep.axioms.push_back(axiom4());
        rep.axioms.push_back(axiom5());
        rep.all_pass = true;
        for (const auto& a : rep.axioms)
            if (!a.pass) rep.all_pass = false;
        return rep;
    }

private:
    struct MorRec {
        Morphism mor;
        int src, tgt;
        MorphismClass cls;
    };

    void add_object(Object o) {
        std::string k = b_.key(o);
        if (keys_.count(k)) return;
        keys_.emplace(std::move(k), static_cast<int>(objects_.size()));
        objects_.push_back(std::move(o));
    }

    const std::vector<Morphism>& homs_between(const Object& a, const Object& c) {
        std::string key = b_.key(a) + "|" + b_.key(c);
        std::lock_guard<std::mutex> lock(hom_mutex_);
        auto it = hom_cache_.find(key);
        if (it != hom_cache_.end()) return it->second;
        return hom_cache_.emplace(std::move(key), b_.homs(a, c)).first->second;
    }

    void collect_morphisms() {
        int n = static_cast<int>(objects_.size());
        for (int s = 0; s < n; ++s)
            for (int t = 0; t < n; ++t)
                for (const auto& f : homs_between(objects_[static_cast<size_t>(s)], objects_[static_cast<size_t>(t)])) {
                    MorphismClass c = b_.classify(f);
                    if (c == MorphismClass::neither) continue;
                    MorRec rec{f, s, t, c};
                    if (c == MorphismClass::iso || c == MorphismClass::admissible_mono)
                        monos_.push_back(rec);
                    if (c == MorphismClass::iso || c == MorphismClass::admissible_epi)
                        epis_.push_back(rec);
                }
    }

    std::string describe(const MorRec& r) const {
        std::ostringstream os;
        os << "#" << r.src << "->#" << r.tgt << " [";
        for (size_t i = 0; i < r.mor.map.size(); ++i) os << (i ? "," : "") << r.mor.map[i];
        os << "]";
        return os.str();
    }

    ProtoAxiomCheck axiom1() {
        ProtoAxiomCheck out;
        out.name = "pointed_zero_morphisms";
        const Object zero = b_.zero_object();
        for (const auto& o : objects_) {
            ++out.checked;
            auto from_zero = b_.zero_mor(zero, o);
            auto fc = b_.classify(from_zero);
            if (fc != MorphismClass::admissible_mono && fc != MorphismClass::iso) {
                out.pass = false;
                out.failures.push_back("0 -> " + std::string("object of size ") +
                                       std::to_string(b_.object_size(o)) + " is not admissible mono");
            }
            auto to_zero = b_.zero_mor(o, zero);
            auto tc = b_.classify(to_zero);
            if (tc != MorphismClass::admissible_epi && tc != MorphismClass::iso) {
                out.pass = false;
                out.failures.push_back("object -> 0 is not admissible epi");
            }
        }
        return out;
    }

    ProtoAxiomCheck axiom2() {
        ProtoAxiomCheck out;
        out.name = "classes_closed_under_composition";
        auto closed = [&](const std::vector<MorRec>& recs, bool mono) {
            std::vector<std::pair<size_t, size_t>> tasks;
            for (size_t f = 0; f < recs.size(); ++f)
                for (size_t g = 0; g < recs.size(); ++g)
                    if (recs[f].tgt == recs[g].src) tasks.push_back({f, g});
            std::vector<char> bad(tasks.size(), 0);
            parallel_for(static_cast<int>(tasks.size()), workers_, [&](int idx) {
                auto [f, g] = tasks[static_cast<size_t>(idx)];
                auto comp = b_.compose_mor(recs[g].mor, recs[f].mor);
                auto c = b_.classify(comp);
                bool ok = c == MorphismClass::iso ||
                          c == (mono ? MorphismClass::admissible_mono : MorphismClass::admissible_epi);
                if (!ok) bad[static_cast<size_t>(idx)] = 1;
            });
            out.checked += static_cast<long long>(tasks.size());
            for (size_t t = 0; t < tasks.size(); ++t)
                if (bad[t]) {
                    out.pass = false;
                    if (out.failures.size() < 5)
                        out.failures.push_back(std::string(mono ? "mono" : "epi") +
                                               " composition escaped the class: " +
                                               describe(recs[tasks[t].first]) + " then " +
                                               describe(recs[tasks[t].second]));
                }
        };
        closed(monos_, true);
        closed(epis_, false);
        return out;
    }

    // g1 o f1 == g2 o f2, compared pointwise without building morphisms
    static bool composites_agree(const Morphism& g1, const Morphism& f1, const Morphism& g2,
                                 const Morphism& f2) {
        for (size_t x = 0; x < f1.map.size(); ++x)
            if (g1.map[static_cast<size_t>(f1.map[x])] != g2.map[static_cast<size_t>(f2.map[x])])
                return false;
        return true;
    }

    bool pullback_ok(const BiCartesianSquare<Morphism>& sq) {
        // every cone with a working-set apex factors uniquely
        for (const auto& k : objects_) {
            const auto& to_b = homs_between(k, sq.i.target);
            const auto& to_ap = homs_between(k, sq.j.target);
            const auto& to_a = homs_between(k, sq.i.source);
            for (const auto& beta : to_b)
                for (const auto& alpha : to_ap) {
                    if (!composites_agree(sq.j_prime, beta, sq.i_prime, alpha)) continue;
                    int count = 0;
                    for (const auto& gamma : to_a) {
                        bool ok = true;
                        for (size_t x = 0; x < gamma.map.size() && ok; ++x) {
                            size_t g = static_cast<size_t>(gamma.map[x]);
                            if (sq.i.map[g] != beta.map[x] || sq.j.map[g] != alpha.map[x]) ok = false;
                        }
                        if (ok) ++count;
                    }
                    if (count != 1) return false;
                }
        }
        return true;
    }

    bool pushout_ok(const BiCartesianSquare<Morphism>& sq) {
        for (const auto& k : objects_) {
            const auto& from_b = homs_between(sq.i.target, k);
            const auto& from_ap = homs_between(sq.j.target, k);
            const auto& from_bp = homs_between(sq.j_prime.target, k);
            for (const auto& beta : from_b)
                for (const auto& alpha : from_ap) {
                    if (!composites_agree(beta, sq.i, alpha, sq.j)) continue;
                    int count = 0;
                    for (const auto& gamma : from_bp) {
                        bool ok = true;
                        for (size_t x = 0; x < sq.j_prime.map.size() && ok; ++x)
                            if (gamma.map[static_cast<size_t>(sq.j_prime.map[x])] != beta.map[x]) ok = false;
                        for (size_t x = 0; x < sq.i_prime.map.size() && ok; ++x)
                            if (gamma.map[static_cast<size_t>(sq.i_prime.map[x])] != alpha.map[x]) ok = false;
                        if (ok) ++count;
                    }
                    if (count != 1) return false;
                }
        }
        return true;
    }

    ProtoAxiomCheck axiom3() {
        ProtoAxiomCheck out;
        out.name = "commuting_squares_pullback_iff_pushout";
        // squares i : A->B, j : A->A', i' : A'->B', j' : B->B' commuting
        struct Square {
            size_t i, j, ip, jp;
        };
        std::vector<Square> squares;
        for (size_t i = 0; i < monos_.size(); ++i)
            for (size_t j = 0; j < epis_.size(); ++j) {
                if (monos_[i].src != epis_[j].src) continue;
                for (size_t ip = 0; ip < monos_.size(); ++ip) {
                    if (monos_[ip].src != epis_[j].tgt) continue;
                    for (size_t jp = 0; jp < epis_.size(); ++jp) {
                        if (epis_[jp].src != monos_[i].tgt || epis_[jp].tgt != monos_[ip].tgt)
                            continue;
                        if (!composites_agree(epis_[jp].mor, monos_[i].mor, monos_[ip].mor,
                                              epis_[j].mor))
                            continue;
                        squares.push_back({i, j, ip, jp});
                    }
                }
            }
        out.checked = static_cast<long long>(squares.size());
        std::vector<char> bad(squares.size(), 0);
        parallel_for(static_cast<int>(squares.size()), workers_, [&](int idx) {
            const auto& s = squares[static_cast<size_t>(idx)];
            BiCartesianSquare<Morphism> sq{monos_[s.i].mor, epis_[s.j].mor, monos_[s.ip].mor,
                                           epis_[s.jp].mor};
            if (pullback_ok(sq) != pushout_ok(sq)) bad[static_cast<size_t>(idx)] = 1;
        });
        for (size_t s = 0; s < squares.size(); ++s)
            if (bad[s]) {
                out.pass = false;
                if (out.failures.size() < 5)
                    out.failures.push_back("square with i=" + describe(monos_[squares[s].i]) +
                                           " j=" + describe(epis_[squares[s].j]) +
                                           " is pullback xor pushout");
            }
        return out;
    }

    ProtoAxiomCheck axiom4() {
        ProtoAxiomCheck out;
        out.name = "pullback_completion_bicartesian";
        std::vector<std::pair<size_t, size_t>> tasks;
        for (size_t ip = 0; ip < monos_.size(); ++ip)
            for (size_t jp = 0; jp < epis_.size(); ++jp)
                if (monos_[ip].tgt == epis_[jp].tgt) tasks.push_back({ip, jp});
        out.checked = static_cast<long long>(tasks.size());
        std::vector<char> bad(tasks.size(), 0);
        parallel_for(static_cast<int>(tasks.size()), workers_, [&](int idx) {
            auto [ip, jp] = tasks[static_cast<size_t>(idx)];
            try {
                auto sq = b_.pullback(monos_[ip].mor, epis_[jp].mor);
                if (!pullback_ok(sq) || !pushout_ok(sq)) bad[static_cast<size_t>(idx)] = 1;
            } catch (const Error&) {
                bad[static_cast<size_t>(idx)] = 1;
            }
        });
        for (size_t t = 0; t < tasks.size(); ++t)
            if (bad[t]) {
                out.pass = false;
                if (out.failures.size() < 5)
                    out.failures.push_back("pullback completion of i'=" +
                                           describe(monos_[tasks[t].first]) +
                                           ", j'=" + describe(epis_[tasks[t].second]) + " failed");
            }
        return out;
    }

    ProtoAxiomCheck axiom5() {
        ProtoAxiomCheck out;
        out.name = "pushout_completion_bicartesian";
        std::vector<std::pair<size_t, size_t>> tasks;
        for (size_t i = 0; i < monos_.size(); ++i)
            for (size_t j = 0; j < epis_.size(); ++j)
                if (monos_[i].src == epis_[j].src) tasks.push_back({i, j});
        out.checked = static_cast<long long>(tasks.size());
        std::vector<char> bad(tasks.size(), 0);
        parallel_for(static_cast<int>(tasks.size()), workers_, [&](int idx) {
            auto [i, j] = tasks[static_cast<size_t>(idx)];
            try {
                auto sq = b_.pushout(monos_[i].mor, epis_[j].mor);
                if (!pullback_ok(sq) || !pushout_ok(sq)) bad[static_cast<size_t>(idx)] = 1;
            } catch (const Error&) {
                bad[static_cast<size_t>(idx)] = 1;
            }
        });
        for (size_t t = 0; t < tasks.size(); ++t)
            if (bad[t]) {
                out.pass = false;
                if (out.failures.size() < 5)
                    out.failures.push_back("pushout completion of i=" + describe(monos_[tasks[t].first]) +
                                           ", j=" + describe(epis_[tasks[t].second]) + " failed");
            }
        return out;
    }

    const B& b_;
    int workers_;
    std::vector<Object> objects_;
    std::map<std::string, int> keys_;
    std::map<std::string, std::vector<Morphism>> hom_cache_;
    std::mutex hom_mutex_;
    std::vector<MorRec> monos_, epis_;
};

}  // namespace detail

/// Verifies the five proto-exact axioms over the corpus, with bounded cone
/// verification against every working-set apex. Failures become report
/// entries rather than errors.
template <class B>
ProtoExactReport verify_proto_exact_axioms(const B& b, std::vector<typename B::Object> corpus,
                                           int workers = 1) {
    detail::AxiomVerifier<B> v(b, std::move(corpus), workers);
    return v.run();
}

}  // namespace pexa
