#pragma once

/// Command dispatch for the pexa tool. All I/O lives here; the core headers
/// are invoked as pure functions. Identical inputs produce byte-identical
/// reports regardless of the worker count.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "core.hpp"
#include "exactness.hpp"
#include "generate.hpp"
#include "geometry.hpp"
#include "io.hpp"

namespace pexa {

namespace cli_detail {

using Json = nlohmann::ordered_json;

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail_input("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline std::string mask_to_string(Mask m) {
    std::string out = "{";
    bool first = true;
    for_each_bit(m, [&](int z) {
        if (!first) out += ",";
        out += std::to_string(z);
        first = false;
    });
    return out + "}";
}

inline Mask parse_subset(const std::string& text, int size) {
    std::string s = text;
    if (!s.empty() && s.front() == '{') {
        if (s.back() != '}') fail_input("bad subset syntax: " + text);
        s = s.substr(1, s.size() - 2);
    }
    Mask out = 0;
    if (s.empty()) return out;
    size_t start = 0;
    while (start <= s.size()) {
        size_t comma = s.find(',', start);
        std::string piece = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        int v = -1;
        try {
            v = std::stoi(piece);
        } catch (...) {
            fail_input("bad subset entry: '" + piece + "'");
        }
        if (v < 0 || v >= size) fail_input("subset entry out of range: " + piece);
        out |= bit_of(v);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

struct LoadedHom {
    std::string name;
    StructureFile source;
    StructureFile target;
    std::vector<int> map;
};

/// Hom files: `hom name`, `source <path>`, `target <path>`, `map i0 i1 ...`.
/// Paths are resolved relative to the hom file.
inline LoadedHom load_hom(const std::string& path, const ParseOptions& opts) {
    auto lines = detail::tokenize_lines(read_file(path));
    if (lines.size() != 4) fail_input(path + ": a hom file has exactly four content lines");
    if (lines[0].tokens.size() != 2 || lines[0].tokens[0] != "hom")
        fail_input(path + ": expected 'hom <name>'");
    if (lines[1].tokens.size() != 2 || lines[1].tokens[0] != "source")
        fail_input(path + ": expected 'source <path>'");
    if (lines[2].tokens.size() != 2 || lines[2].tokens[0] != "target")
        fail_input(path + ": expected 'target <path>'");
    if (lines[3].tokens.empty() || lines[3].tokens[0] != "map")
        fail_input(path + ": expected 'map i0 i1 ...'");
    std::filesystem::path base = std::filesystem::path(path).parent_path();
    LoadedHom out;
    out.name = lines[0].tokens[1];
    out.source = parse_structure(read_file((base / lines[1].tokens[1]).string()), opts);
    out.target = parse_structure(read_file((base / lines[2].tokens[1]).string()), opts);
    for (size_t i = 1; i < lines[3].tokens.size(); ++i) {
        try {
            out.map.push_back(std::stoi(lines[3].tokens[i]));
        } catch (...) {
            fail_input(path + ": bad map entry");
        }
    }
    return out;
}

// A semiring file used where a module is expected means the semiring over
// itself; likewise for hyperrings.
inline FiniteModule as_module(const StructureFile& sf, const std::string& what) {
    if (const auto* m = std::get_if<FiniteModule>(&sf.body)) return *m;
    if (const auto* r = std::get_if<SemiringTable>(&sf.body)) return module_from_semiring(*r);
    fail_input(what + ": expected a module file");
}

inline HModule as_hmodule(const StructureFile& sf, const std::string& what) {
    if (const auto* m = std::get_if<HModule>(&sf.body)) return *m;
    if (const auto* h = std::get_if<HyperTable>(&sf.body)) {
        if (h->kind == HyperKind::hypergroup)
            fail_input(what + ": a hypergroup has no scalar action");
        return hmodule_from_hyperring(*h);
    }
    fail_input(what + ": expected an hmodule file");
}

inline const FiniteLattice& as_lattice(const StructureFile& sf, const std::string& what) {
    const auto* l = std::get_if<FiniteLattice>(&sf.body);
    if (!l) fail_input(what + ": expected a lattice file");
    return *l;
}

struct Output {
    bool json = false;
    Json doc;
    std::ostringstream plain;

    void digest(const std::string& slot, const StructureFile& sf) {
        if (json) doc["input_digests"][slot] = structure_digest(sf);
    }
};

inline int finish(Output& o, std::ostream& os, int code = 0) {
    if (o.json)
        os << o.doc.dump(2) << "\n";
    else
        os << o.plain.str();
    return code;
}

inline std::string kind_label(const StructureFile& sf) {
    std::string label = to_string(sf.kind);
    if (const auto* s = std::get_if<SemiringTable>(&sf.body)) {
        if (s->idempotent) label += " (idempotent)";
    }
    return label;
}

// ------------------------------------------------------------------
// per-command implementations

inline int cmd_check(const std::string& file, const ParseOptions& outer, Output& o,
                     std::ostream& os) {
    ParseOptions opts = outer;
    opts.skip_check = true;  // parse first, then report the full check
    StructureFile sf = parse_structure(read_file(file), opts);
    AxiomReport rep = check_structure(sf);
    o.digest("input", sf);
    if (o.json) {
        o.doc["result"]["valid"] = rep.valid();
        o.doc["result"]["kind"] = kind_label(sf);
        Json viol = Json::array();
        for (const auto& v : rep.violations) {
            Json j;
            j["axiom"] = v.axiom;
            j["witness"] = v.witness;
            viol.push_back(j);
        }
        o.doc["witnesses"] = viol;
    } else if (rep.valid()) {
        o.plain << "valid " << kind_label(sf) << "\n";
    } else {
        o.plain << "invalid " << to_string(sf.kind) << "\n";
        for (const auto& v : rep.violations) {
            o.plain << "violation " << v.axiom << " at (";
            for (size_t i = 0; i < v.witness.size(); ++i) o.plain << (i ? "," : "") << v.witness[i];
            o.plain << ")\n";
        }
    }
    return finish(o, os, rep.valid() ? 0 : 2);
}

inline int cmd_submodules(const std::string& file, bool saturated, const ParseOptions& opts,
                          Output& o, std::ostream& os) {
    StructureFile sf = parse_structure(read_file(file), opts);
    o.digest("input", sf);
    std::vector<Mask> subs;
    if (const auto* m = std::get_if<FiniteModule>(&sf.body))
        subs = enumerate_submodules(*m, saturated);
    else if (const auto* m = std::get_if<HModule>(&sf.body))
        subs = enumerate_hsubmodules(*m);
    else if (const auto* l = std::get_if<FiniteLattice>(&sf.body))
        subs = enumerate_admissible_sublattices(*l);
    else
        fail_input("submodules: expected a module, hmodule or lattice file");
    if (o.json) {
        o.doc["result"]["count"] = subs.size();
        Json w = Json::array();
        for (Mask m : subs) w.push_back(mask_to_string(m));
        o.doc["witnesses"] = w;
    } else {
        o.plain << "count " << subs.size() << "\n";
        for (Mask m : subs) o.plain << mask_to_string(m) << "\n";
    }
    return finish(o, os);
}

inline int cmd_quotient(const std::string& file, const std::string& by, const ParseOptions& opts,
                        Output& o, std::ostream& os) {
    StructureFile sf = parse_structure(read_file(file), opts);
    o.digest("input", sf);
    StructureFile result;
    std::vector<int> class_of;
    if (const auto* m = std::get_if<FiniteModule>(&sf.body)) {
        QuotientResult q = quotient_module(*m, parse_subset(by, m->size), m->name + "_quot");
        class_of = q.class_of;
        result = wrap_structure(std::move(q.quotient));
    } else if (const auto* m = std::get_if<HModule>(&sf.body)) {
        HQuotientResult q = quotient_hmodule(*m, parse_subset(by, m->size), m->name + "_quot");
        class_of = q.class_of;
        result = wrap_structure(std::move(q.quotient));
    } else if (const auto* l = std::get_if<FiniteLattice>(&sf.body)) {
        auto [quot, proj] = quotient_lattice(*l, parse_subset(by, l->size), l->name + "_quot");
        class_of = proj.map;
        result = wrap_structure(std::move(quot));
    } else {
        fail_input("quotient: expected a module, hmodule or lattice file");
    }
    if (o.json) {
        o.doc["result"]["projection"] = class_of;
        o.doc["result"]["structure"] = render_structure(result);
    } else {
        o.plain << "# projection:";
        for (int c : class_of) o.plain << " " << c;
        o.plain << "\n" << render_structure(result);
    }
    return finish(o, os);
}

inline int cmd_classify(const std::string& hom_file, const ParseOptions& opts, Output& o,
                        std::ostream& os) {
    LoadedHom h = load_hom(hom_file, opts);
    std::string cls;
    std::string strictness;
    if (const auto* s = std::get_if<FiniteModule>(&h.source.body)) {
        auto f = make_morphism(*s, as_module(h.target, "classify"), h.map);
        cls = to_string(classify_morphism(f));
    } else if (const auto* s = std::get_if<HModule>(&h.source.body)) {
        auto f = make_hmorphism(*s, as_hmodule(h.target, "classify"), h.map);
        cls = to_string(classify_hmorphism(f));
        auto st = is_strict(f);
        strictness = st.strict ? "yes"
                               : "no (witness " + std::to_string(st.witness[0]) + "," +
                                     std::to_string(st.witness[1]) + ")";
    } else if (const auto* s = std::get_if<FiniteLattice>(&h.source.body)) {
        auto f = make_lattice_morphism(*s, as_lattice(h.target, "classify"), h.map);
        cls = to_string(classify_lattice_morphism(f));
    } else {
        fail_input("classify: hom endpoints must be modules, hmodules or lattices");
    }
    o.digest("source", h.source);
    o.digest("target", h.target);
    if (o.json) {
        o.doc["result"]["class"] = cls;
        if (!strictness.empty()) o.doc["result"]["strict"] = strictness;
    } else {
        o.plain << cls << "\n";
        if (!strictness.empty()) o.plain << "strict: " << strictness << "\n";
    }
    return finish(o, os);
}

template <class Backend, class Obj, class Mor>
int run_complete(const Backend& b, const Obj& src1, const Mor& first, const Mor& second,
                 bool pullback_dir, Output& o, std::ostream& os) {
    (void)src1;
    BiCartesianSquare<Mor> sq =
        pullback_dir ? b.pullback(first, second) : b.pushout(first, second);
    const Obj& corner = pullback_dir ? sq.i.source : sq.j_prime.target;
    StructureFile rendered = wrap_structure(corner);
    std::vector<int> m1 = pullback_dir ? sq.i.map : sq.i_prime.map;
    std::vector<int> m2 = pullback_dir ? sq.j.map : sq.j_prime.map;
    if (o.json) {
        o.doc["result"]["corner"] = render_structure(rendered);
        o.doc["result"][pullback_dir ? "i" : "i_prime"] = m1;
        o.doc["result"][pullback_dir ? "j" : "j_prime"] = m2;
    } else {
        o.plain << "# " << (pullback_dir ? "i" : "i_prime") << ":";
        for (int v : m1) o.plain << " " << v;
        o.plain << "\n# " << (pullback_dir ? "j" : "j_prime") << ":";
        for (int v : m2) o.plain << " " << v;
        o.plain << "\n" << render_structure(rendered);
    }
    return finish(o, os);
}

inline int cmd_complete(const std::string& dir, const std::string& hom1, const std::string& hom2,
                        const ParseOptions& opts, Output& o, std::ostream& os) {
    bool pullback_dir = dir == "pullback";
    if (!pullback_dir && dir != "pushout") fail_input("--direction must be pullback or pushout");
    LoadedHom h1 = load_hom(hom1, opts);
    LoadedHom h2 = load_hom(hom2, opts);
    o.digest("first_source", h1.source);
    o.digest("second_source", h2.source);
    if (const auto* s1 = std::get_if<FiniteModule>(&h1.source.body)) {
        SmodBackend b{s1->ring};
        auto f1 = make_morphism(*s1, as_module(h1.target, "complete"), h1.map);
        auto f2 = make_morphism(as_module(h2.source, "complete"), as_module(h2.target, "complete"),
                                h2.map);
        return run_complete(b, *s1, f1, f2, pullback_dir, o, os);
    }
    if (const auto* s1 = std::get_if<HModule>(&h1.source.body)) {
        HmodBackend b{s1->ring};
        auto f1 = make_hmorphism(*s1, as_hmodule(h1.target, "complete"), h1.map);
        auto f2 = make_hmorphism(as_hmodule(h2.source, "complete"),
                                 as_hmodule(h2.target, "complete"), h2.map);
        return run_complete(b, *s1, f1, f2, pullback_dir, o, os);
    }
    if (const auto* s1 = std::get_if<FiniteLattice>(&h1.source.body)) {
        LatticeBackend b;
        auto f1 = make_lattice_morphism(*s1, as_lattice(h1.target, "complete"), h1.map);
        auto f2 = make_lattice_morphism(as_lattice(h2.source, "complete"),
                                        as_lattice(h2.target, "complete"), h2.map);
        return run_complete(b, *s1, f1, f2, pullback_dir, o, os);
    }
    fail_input("complete: hom endpoints must be modules, hmodules or lattices");
}

inline int cmd_exact(const std::string& hom_i, const std::string& hom_j, const ParseOptions& opts,
                     Output& o, std::ostream& os) {
    LoadedHom hi = load_hom(hom_i, opts);
    LoadedHom hj = load_hom(hom_j, opts);
    SesDiagnosis diag;
    if (const auto* s = std::get_if<FiniteModule>(&hi.source.body)) {
        SmodBackend b{s->ring};
        auto i = make_morphism(*s, as_module(hi.target, "exact"), hi.map);
        auto j = make_morphism(as_module(hj.source, "exact"), as_module(hj.target, "exact"), hj.map);
        diag = diagnose_short_exact(b, i, j);
    } else if (const auto* s = std::get_if<HModule>(&hi.source.body)) {
        HmodBackend b{s->ring};
        auto i = make_hmorphism(*s, as_hmodule(hi.target, "exact"), hi.map);
        auto j = make_hmorphism(as_hmodule(hj.source, "exact"), as_hmodule(hj.target, "exact"),
                                hj.map);
        diag = diagnose_short_exact(b, i, j);
    } else if (const auto* s = std::get_if<FiniteLattice>(&hi.source.body)) {
        LatticeBackend b;
        auto i = make_lattice_morphism(*s, as_lattice(hi.target, "exact"), hi.map);
        auto j = make_lattice_morphism(as_lattice(hj.source, "exact"),
                                       as_lattice(hj.target, "exact"), hj.map);
        diag = diagnose_short_exact(b, i, j);
    } else {
        fail_input("exact: hom endpoints must be modules, hmodules or lattices");
    }
    if (o.json) {
        o.doc["result"]["exact"] = diag.exact;
        if (!diag.exact) o.doc["result"]["reason"] = diag.reason;
    } else {
        o.plain << (diag.exact ? "exact" : "not exact: " + diag.reason) << "\n";
    }
    return finish(o, os, diag.exact ? 0 : 2);
}

template <class B>
int run_ext(const B& b, const typename B::Object& c_obj, const typename B::Object& a_obj,
            int max_size, Output& o, std::ostream& os) {
    auto result = ext_enumerate(b, c_obj, a_obj, max_size);
    if (o.json) {
        o.doc["result"]["classes"] = result.classes.size();
        if (!result.note.empty()) o.doc["result"]["note"] = result.note;
        Json arr = Json::array();
        for (const auto& c : result.classes) {
            Json j;
            j["middle_size"] = b.object_size(c.middle);
            j["middle"] = render_structure(wrap_structure(c.middle));
            j["i"] = c.representative.i.map;
            j["j"] = c.representative.j.map;
            j["orbit"] = c.class_size;
            arr.push_back(j);
        }
        o.doc["witnesses"] = arr;
    } else {
        o.plain << "classes " << result.classes.size() << "\n";
        if (!result.note.empty()) o.plain << "note: " << result.note << "\n";
        for (size_t k = 0; k < result.classes.size(); ++k) {
            const auto& c = result.classes[k];
            o.plain << "class " << k << ": middle_size=" << b.object_size(c.middle)
                    << " middle_digest=" << structure_digest(wrap_structure(c.middle)) << " i=[";
            for (size_t i = 0; i < c.representative.i.map.size(); ++i)
                o.plain << (i ? "," : "") << c.representative.i.map[i];
            o.plain << "] j=[";
            for (size_t i = 0; i < c.representative.j.map.size(); ++i)
                o.plain << (i ? "," : "") << c.representative.j.map[i];
            o.plain << "] orbit=" << c.class_size << "\n";
        }
    }
    return finish(o, os);
}

inline int cmd_ext(const std::string& a_file, const std::string& c_file, int max_size,
                   const std::string& cat, const ParseOptions& opts, Output& o, std::ostream& os) {
    StructureFile a = parse_structure(read_file(a_file), opts);
    StructureFile c = parse_structure(read_file(c_file), opts);
    o.digest("A", a);
    o.digest("C", c);
    if (!cat.empty() && cat != "auto") {
        bool module_side = std::holds_alternative<FiniteModule>(a.body) ||
                           std::holds_alternative<SemiringTable>(a.body);
        bool hyper_side = std::holds_alternative<HModule>(a.body) ||
                          std::holds_alternative<HyperTable>(a.body);
        bool ok = (cat == "bmod" && module_side) || (cat == "smod" && module_side) ||
                  (cat == "kmod" && hyper_side) || (cat == "hmod" && hyper_side) ||
                  (cat == "lattice" && std::holds_alternative<FiniteLattice>(a.body));
        if (!ok) fail_input("ext: --cat " + cat + " does not match the input files");
    }
    if (std::holds_alternative<FiniteModule>(a.body) || std::holds_alternative<SemiringTable>(a.body)) {
        FiniteModule am = as_module(a, "ext");
        FiniteModule cm = as_module(c, "ext");
        if (!am.ring.same_structure(cm.ring)) fail_input("ext: A and C have different base semirings");
        SmodBackend b{am.ring};
        return run_ext(b, cm, am, max_size, o, os);
    }
    if (std::holds_alternative<HModule>(a.body) || std::holds_alternative<HyperTable>(a.body)) {
        HModule am = as_hmodule(a, "ext");
        HModule cm = as_hmodule(c, "ext");
        if (!am.ring.same_structure(cm.ring)) fail_input("ext: A and C have different base hyperrings");
        HmodBackend b{am.ring};
        return run_ext(b, cm, am, max_size, o, os);
    }
    if (const auto* al = std::get_if<FiniteLattice>(&a.body)) {
        LatticeBackend b;
        return run_ext(b, as_lattice(c, "ext"), *al, max_size, o, os);
    }
    fail_input("ext: expected module, hmodule or lattice files");
}

inline int cmd_hall(const std::string& e_file, const std::string& a_file, const std::string& b_file,
                    int workers, const ParseOptions& opts, Output& o, std::ostream& os) {
    StructureFile e = parse_structure(read_file(e_file), opts);
    StructureFile a = parse_structure(read_file(a_file), opts);
    StructureFile bb = parse_structure(read_file(b_file), opts);
    o.digest("E", e);
    o.digest("A", a);
    o.digest("B", bb);
    HallResult res;
    if (std::holds_alternative<FiniteModule>(e.body) || std::holds_alternative<SemiringTable>(e.body)) {
        FiniteModule em = as_module(e, "hall");
        SmodBackend backend{em.ring};
        res = hall_constant(backend, em, as_module(a, "hall"), as_module(bb, "hall"), workers);
    } else if (std::holds_alternative<HModule>(e.body) || std::holds_alternative<HyperTable>(e.body)) {
        HModule em = as_hmodule(e, "hall");
        HmodBackend backend{em.ring};
        res = hall_constant(backend, em, as_hmodule(a, "hall"), as_hmodule(bb, "hall"), workers);
    } else if (const auto* el = std::get_if<FiniteLattice>(&e.body)) {
        LatticeBackend backend;
        res = hall_constant(backend, *el, as_lattice(a, "hall"), as_lattice(bb, "hall"), workers);
    } else {
        fail_input("hall: expected module, hmodule or lattice files");
    }
    if (o.json) {
        o.doc["result"]["count"] = res.count;
        Json w = Json::array();
        for (Mask m : res.witnesses) w.push_back(mask_to_string(m));
        o.doc["witnesses"] = w;
    } else {
        o.plain << res.count << "\n";
        for (Mask m : res.witnesses) o.plain << mask_to_string(m) << "\n";
    }
    return finish(o, os);
}

inline int cmd_lattice_of(const std::string& file, const ParseOptions& opts, Output& o,
                          std::ostream& os) {
    StructureFile sf = parse_structure(read_file(file), opts);
    const auto& m = as_module(sf, "lattice-of");
    o.digest("input", sf);
    FiniteLattice l = saturated_submodule_lattice(m);
    if (o.json)
        o.doc["result"]["structure"] = render_structure(wrap_structure(std::move(l)));
    else
        o.plain << render_structure(wrap_structure(std::move(l)));
    return finish(o, os);
}

inline int cmd_module_of(const std::string& file, const ParseOptions& opts, Output& o,
                         std::ostream& os) {
    StructureFile sf = parse_structure(read_file(file), opts);
    const auto& l = as_lattice(sf, "module-of");
    o.digest("input", sf);
    FiniteModule m = compact_elements_module(l);
    if (o.json)
        o.doc["result"]["structure"] = render_structure(wrap_structure(std::move(m)));
    else
        o.plain << render_structure(wrap_structure(std::move(m)));
    return finish(o, os);
}

inline int cmd_geometric(const std::string& file, const ParseOptions& opts, Output& o,
                         std::ostream& os) {
    StructureFile sf = parse_structure(read_file(file), opts);
    const auto& l = as_lattice(sf, "geometric");
    o.digest("input", sf);
    GeometricReport rep = is_geometric(l);
    auto fmt_witness = [](const std::vector<int>& w) {
        std::string out = "(";
        for (size_t i = 0; i < w.size(); ++i) out += (i ? "," : "") + std::to_string(w[i]);
        return out + ")";
    };
    if (o.json) {
        o.doc["result"]["jordan_dedekind"] = rep.jordan_dedekind;
        o.doc["result"]["semimodular"] = rep.semimodular;
        o.doc["result"]["atomistic"] = rep.atomistic;
        o.doc["result"]["geometric"] = rep.geometric;
        if (!rep.jd_witness.empty()) o.doc["result"]["jd_witness"] = rep.jd_witness;
        if (!rep.semimodular_witness.empty())
            o.doc["result"]["semimodular_witness"] = rep.semimodular_witness;
        if (!rep.atomistic_witness.empty())
            o.doc["result"]["atomistic_witness"] = rep.atomistic_witness;
    } else {
        o.plain << "jordan_dedekind: " << (rep.jordan_dedekind ? "yes" : "no");
        if (!rep.jd_witness.empty()) o.plain << " witness " << fmt_witness(rep.jd_witness);
        o.plain << "\nsemimodular: " << (rep.semimodular ? "yes" : "no");
        if (!rep.semimodular_witness.empty())
            o.plain << " witness " << fmt_witness(rep.semimodular_witness);
        o.plain << "\natomistic: " << (rep.atomistic ? "yes" : "no");
        if (!rep.atomistic_witness.empty())
            o.plain << " witness " << fmt_witness(rep.atomistic_witness);
        o.plain << "\ngeometric: " << (rep.geometric ? "yes" : "no") << "\n";
    }
    return finish(o, os);
}

inline int cmd_geometry(const std::string& file, const ParseOptions& opts, Output& o,
                        std::ostream& os) {
    StructureFile sf = parse_structure(read_file(file), opts);
    const auto& m = as_hmodule(sf, "geometry");
    o.digest("input", sf);
    IncidenceGeometry g = projective_geometry(m);
    if (o.json) {
        o.doc["result"]["points"] = g.n_points;
        o.doc["result"]["lines"] = g.lines.size();
        o.doc["result"]["min_line_size"] = g.min_line_size;
        o.doc["result"]["cc_bound_holds"] = g.cc_bound_holds;
        Json lines = Json::array();
        for (Mask l : g.lines) lines.push_back(mask_to_string(l));
        o.doc["witnesses"] = lines;
    } else {
        o.plain << "points " << g.n_points << "\n";
        o.plain << "lines " << g.lines.size() << "\n";
        o.plain << "min_line_size " << g.min_line_size << "\n";
        o.plain << "cc_bound_holds " << (g.cc_bound_holds ? "yes" : "no") << "\n";
        for (Mask l : g.lines) o.plain << mask_to_string(l) << "\n";
    }
    return finish(o, os);
}

inline int cmd_flags(const std::string& file, const ParseOptions& opts, Output& o,
                     std::ostream& os) {
    StructureFile sf = parse_structure(read_file(file), opts);
    const auto& m = as_hmodule(sf, "flags");
    o.digest("input", sf);
    int n = flag_count(m);
    if (o.json)
        o.doc["result"]["flags"] = n;
    else
        o.plain << "flags " << n << "\n";
    return finish(o, os);
}

template <class B>
int run_axioms(const B& b, std::vector<typename B::Object> corpus, int workers, Output& o,
               std::ostream& os) {
    ProtoExactReport rep = verify_proto_exact_axioms(b, std::move(corpus), workers);
    if (o.json) {
        o.doc["result"]["category"] = rep.category;
        o.doc["result"]["objects"] = rep.object_count;
        o.doc["result"]["all_pass"] = rep.all_pass;
        Json arr = Json::array();
        for (const auto& a : rep.axioms) {
            Json j;
            j["axiom"] = a.name;
            j["pass"] = a.pass;
            j["checked"] = a.checked;
            j["failures"] = a.failures;
            arr.push_back(j);
        }
        o.doc["witnesses"] = arr;
    } else {
        o.plain << "category " << rep.category << "\n";
        o.plain << "objects " << rep.object_count << "\n";
        for (const auto& a : rep.axioms) {
            o.plain << "axiom " << a.name << ": " << (a.pass ? "pass" : "FAIL") << " (checked "
                    << a.checked << ")\n";
            for (const auto& f : a.failures) o.plain << "  " << f << "\n";
        }
        o.plain << (rep.all_pass ? "all axioms hold" : "axiom failures found") << "\n";
    }
    return finish(o, os, rep.all_pass ? 0 : 2);
}

inline int cmd_axioms(const std::string& corpus_dir, const std::string& family, int max_size,
                      int workers, const ParseOptions& opts, Output& o, std::ostream& os) {
    if (!corpus_dir.empty()) {
        std::vector<std::string> files;
        for (const auto& entry : std::filesystem::directory_iterator(corpus_dir))
            if (entry.is_regular_file()) files.push_back(entry.path().string());
        std::sort(files.begin(), files.end());
        if (files.empty()) fail_input("axioms: corpus directory is empty");
        std::vector<StructureFile> parsed;
        for (const auto& f : files) parsed.push_back(parse_structure(read_file(f), opts));
        if (const auto* first = std::get_if<FiniteModule>(&parsed.front().body)) {
            SmodBackend b{first->ring};
            std::vector<FiniteModule> corpus;
            for (auto& sf : parsed) {
                const auto& m = as_module(sf, "axioms corpus");
                if (!m.ring.same_structure(b.ring)) fail_input("axioms: corpus bases differ");
                if (max_size <= 0 || m.size <= max_size) corpus.push_back(m);
            }
            return run_axioms(b, std::move(corpus), workers, o, os);
        }
        if (const auto* first = std::get_if<HModule>(&parsed.front().body)) {
            HmodBackend b{first->ring};
            std::vector<HModule> corpus;
            for (auto& sf : parsed) {
                const auto& m = as_hmodule(sf, "axioms corpus");
                if (!m.ring.same_structure(b.ring)) fail_input("axioms: corpus bases differ");
                if (max_size <= 0 || m.size <= max_size) corpus.push_back(m);
            }
            return run_axioms(b, std::move(corpus), workers, o, os);
        }
        if (std::get_if<FiniteLattice>(&parsed.front().body)) {
            LatticeBackend b;
            std::vector<FiniteLattice> corpus;
            for (auto& sf : parsed) {
                const auto& l = as_lattice(sf, "axioms corpus");
                if (max_size <= 0 || l.size <= max_size) corpus.push_back(l);
            }
            return run_axioms(b, std::move(corpus), workers, o, os);
        }
        fail_input("axioms: corpus must contain module, hmodule or lattice files");
    }
    if (max_size <= 0) fail_input("axioms --family requires --max-size");
    if (family == "bmod") {
        SmodBackend b{boolean_semifield()};
        return run_axioms(b, generate_bmodules(max_size), workers, o, os);
    }
    if (family == "kmod") {
        HmodBackend b{krasner_hyperfield()};
        return run_axioms(b, generate_kmodules(max_size), workers, o, os);
    }
    if (family == "lattice") {
        LatticeBackend b;
        return run_axioms(b, generate_lattices(max_size), workers, o, os);
    }
    fail_input("axioms: pass --corpus <dir> or --family bmod|kmod|lattice");
}

inline std::string extension_for(const StructureFile& sf) {
    switch (sf.kind) {
        case StructKind::semiring: return ".sr";
        case StructKind::ring: return ".rg";
        case StructKind::hypergroup:
        case StructKind::hyperring:
        case StructKind::hyperfield: return ".hr";
        case StructKind::module: return ".mod";
        case StructKind::hmodule: {
            const auto* m = std::get_if<HModule>(&sf.body);
            return m && m->ring.same_structure(krasner_hyperfield()) ? ".kmod" : ".hmod";
        }
        default: return ".lat";
    }
}

inline int cmd_gen(const std::string& family, int max_size, int en_n, int proj_p, int proj_d,
                   const std::string& out_dir, Output& o, std::ostream& os) {
    std::vector<StructureFile> files;
    if (family == "bmod") {
        if (max_size <= 0) fail_input("gen --family bmod requires --max-size");
        for (auto& m : generate_bmodules(max_size)) files.push_back(wrap_structure(std::move(m)));
    } else if (family == "kmod") {
        if (max_size <= 0) fail_input("gen --family kmod requires --max-size");
        for (auto& m : generate_kmodules(max_size)) files.push_back(wrap_structure(m));
    } else if (family == "en") {
        if (en_n <= 0) fail_input("gen --family en requires --n");
        files.push_back(wrap_structure(en_module(en_n)));
    } else if (family == "proj") {
        if (proj_p <= 0) fail_input("gen --family proj requires --p and --d");
        files.push_back(wrap_structure(projective_space_kmodule(proj_p, proj_d)));
    } else {
        fail_input("gen: unknown family '" + family + "'");
    }
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        for (size_t i = 0; i < files.size(); ++i) {
            std::ostringstream name;
            name << out_dir << "/";
            name.width(3);
            name.fill('0');
            name << i;
            name << "_" << files[i].name << extension_for(files[i]);
            std::ofstream out(name.str(), std::ios::binary);
            out << render_structure(files[i]);
        }
        if (o.json) {
            o.doc["result"]["written"] = files.size();
            o.doc["result"]["dir"] = out_dir;
        } else {
            o.plain << "written " << files.size() << " files to " << out_dir << "\n";
        }
        return finish(o, os);
    }
    if (o.json) {
        Json arr = Json::array();
        for (const auto& f : files) arr.push_back(render_structure(f));
        o.doc["result"]["count"] = files.size();
        o.doc["witnesses"] = arr;
    } else {
        for (size_t i = 0; i < files.size(); ++i) {
            if (i) o.plain << "\n";
            o.plain << render_structure(files[i]);
        }
    }
    return finish(o, os);
}

}  // namespace cli_detail

/// Entry point used by the pexa binary and by tests.
inline int run_command(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    using namespace cli_detail;
    CLI::App app{"finite proto-exact module categories: structures, exact sequences, Hall constants"};
    app.require_subcommand(1);

    bool json = false;
    bool skip_check = false;
    int workers = 0;
    app.add_flag("--json", json, "emit one structured JSON document");
    app.add_flag("--skip-check", skip_check, "skip axiom checks after parsing");
    app.add_option("--workers", workers, "worker threads for enumeration fan-out");

    std::string file, by, hom, hom2, direction, a_file, c_file, b_file, e_file;
    std::string corpus_dir, family, out_dir, cat;
    int max_size = 0, en_n = 0, proj_p = 0, proj_d = 0;
    bool saturated = false;

    auto* c_check = app.add_subcommand("check", "verify the axioms of a structure file");
    c_check->add_option("file", file)->required();

    auto* c_sub = app.add_subcommand("submodules", "enumerate (saturated) subobjects");
    c_sub->add_option("file", file)->required();
    c_sub->add_flag("--saturated", saturated);

    auto* c_quot = app.add_subcommand("quotient", "quotient by a subobject");
    c_quot->add_option("file", file)->required();
    c_quot->add_option("--by", by)->required();

    auto* c_cls = app.add_subcommand("classify", "classify a morphism");
    c_cls->add_option("--hom", hom)->required();

    auto* c_complete = app.add_subcommand("complete", "complete a partial square");
    c_complete->add_option("--direction", direction)->required();
    c_complete->add_option("first", hom)->required();
    c_complete->add_option("second", hom2)->required();

    auto* c_exact = app.add_subcommand("exact", "check a short exact sequence");
    c_exact->add_option("ihom", hom)->required();
    c_exact->add_option("jhom", hom2)->required();

    auto* c_ext = app.add_subcommand("ext", "enumerate extension classes");
    c_ext->add_option("--A", a_file)->required();
    c_ext->add_option("--C", c_file)->required();
    c_ext->add_option("--max-size", max_size, "middle-size bound (default 6)");
    c_ext->add_option("--cat", cat);

    auto* c_hall = app.add_subcommand("hall", "Hall structure constant");
    c_hall->add_option("--E", e_file)->required();
    c_hall->add_option("--A", a_file)->required();
    c_hall->add_option("--B", b_file)->required();

    auto* c_lof = app.add_subcommand("lattice-of", "saturated-submodule lattice of a B-module");
    c_lof->add_option("file", file)->required();

    auto* c_mof = app.add_subcommand("module-of", "B-module of a finite lattice");
    c_mof->add_option("file", file)->required();

    auto* c_geoml = app.add_subcommand("geometric", "geometric-lattice report");
    c_geoml->add_option("file", file)->required();

    auto* c_geom = app.add_subcommand("geometry", "incidence geometry of a K-module");
    c_geom->add_option("file", file)->required();

    auto* c_flags = app.add_subcommand("flags", "count incident point-line pairs");
    c_flags->add_option("file", file)->required();

    auto* c_ax = app.add_subcommand("axioms", "verify the proto-exact axioms over a corpus");
    c_ax->add_option("--corpus", corpus_dir);
    c_ax->add_option("--family", family);
    c_ax->add_option("--max-size", max_size);

    auto* c_gen = app.add_subcommand("gen", "generate structure families");
    c_gen->add_option("--family", family)->required();
    c_gen->add_option("--max-size", max_size);
    c_gen->add_option("--n", en_n);
    c_gen->add_option("--p", proj_p);
    c_gen->add_option("--d", proj_d);
    c_gen->add_option("--out", out_dir);

    std::vector<const char*> argv;
    argv.push_back("pexa");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        std::ostringstream os;
        int code = app.exit(e, os, os);
        (out << os.str()).flush();
        return code == 0 ? 0 : 1;
    }

    ParseOptions opts;
    opts.skip_check = skip_check;
    if (const char* env = std::getenv("PEXA_MAX_SIZE")) {
        try {
            opts.limits.override_with(std::stoi(env));
        } catch (const std::exception&) {
            err << "error: bad PEXA_MAX_SIZE\n";
            return 1;
        }
    }
    if (workers <= 0) {
        if (const char* env = std::getenv("PEXA_WORKERS")) {
            try {
                workers = std::stoi(env);
            } catch (...) {
                workers = 1;
            }
        }
    }
    if (workers <= 0) workers = 1;

    Output o;
    o.json = json;
    if (json) {
        std::string cmd;
        for (const auto* sub : app.get_subcommands()) cmd = sub->get_name();
        o.doc["command"] = cmd;
        o.doc["input_digests"] = Json::object();
        o.doc["result"] = Json::object();
    }

    try {
        if (c_check->parsed()) return cmd_check(file, opts, o, out);
        if (c_sub->parsed()) return cmd_submodules(file, saturated, opts, o, out);
        if (c_quot->parsed()) return cmd_quotient(file, by, opts, o, out);
        if (c_cls->parsed()) return cmd_classify(hom, opts, o, out);
        if (c_complete->parsed()) return cmd_complete(direction, hom, hom2, opts, o, out);
        if (c_exact->parsed()) return cmd_exact(hom, hom2, opts, o, out);
        if (c_ext->parsed())
            return cmd_ext(a_file, c_file, max_size > 0 ? max_size : opts.limits.ext_middle_cap,
                           cat, opts, o, out);
        if (c_hall->parsed()) return cmd_hall(e_file, a_file, b_file, workers, opts, o, out);
        if (c_lof->parsed()) return cmd_lattice_of(file, opts, o, out);
        if (c_mof->parsed()) return cmd_module_of(file, opts, o, out);
        if (c_geoml->parsed()) return cmd_geometric(file, opts, o, out);
        if (c_geom->parsed()) return cmd_geometry(file, opts, o, out);
        if (c_flags->parsed()) return cmd_flags(file, opts, o, out);
        if (c_ax->parsed()) return cmd_axioms(corpus_dir, family, max_size, workers, opts, o, out);
        if (c_gen->parsed()) return cmd_gen(family, max_size, en_n, proj_p, proj_d, out_dir, o, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case ErrorKind::invalid_input: return 1;
            case ErrorKind::axiom_failure: return 2;
            case ErrorKind::bound_exceeded: return 3;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace pexa
