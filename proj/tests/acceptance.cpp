// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Criterion 10 drives the CLI binary (path injected at
// configure time) and byte-compares runs with different worker counts.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <pexa/pexa.hpp>

using namespace pexa;
namespace fs = std::filesystem;

namespace {

int g_checks = 0;
std::vector<std::string> g_errors;

void expect(bool cond, const std::string& what) {
    ++g_checks;
    if (!cond) g_errors.push_back(what);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

FiniteModule bmod() { return module_from_semiring(boolean_semifield()); }
HModule kmodule() { return hmodule_from_hyperring(krasner_hyperfield()); }

// ------------------------------------------------------------------
// 1. proto-exact axiom suite over exhaustive corpora

void criterion1() {
    auto start = std::chrono::steady_clock::now();
    SmodBackend bb{boolean_semifield()};
    ProtoExactReport b_rep = verify_proto_exact_axioms(bb, generate_bmodules(4), 2);
    expect(b_rep.all_pass, "proto-exact axioms fail over B-modules <= 4");
    expect(b_rep.axioms.size() == 5, "five axioms must be checked");
    double b_time = seconds_since(start);
    expect(b_time < 120.0, "B-module axiom suite exceeded 2 minutes");

    auto kstart = std::chrono::steady_clock::now();
    HmodBackend kb{krasner_hyperfield()};
    ProtoExactReport k_rep = verify_proto_exact_axioms(kb, generate_kmodules(5), 2);
    expect(k_rep.all_pass, "proto-exact axioms fail over K-modules <= 5");
    double k_time = seconds_since(kstart);
    expect(k_time < 300.0, "K-module axiom suite exceeded 5 minutes");
    std::cout << "  axiom suites: B corpus " << b_rep.object_count << " objects (" << b_time
              << "s), K corpus " << k_rep.object_count << " objects (" << k_time << "s)\n";
}

// ------------------------------------------------------------------
// 2. Mod_B^fin equivalent to L^c

void criterion2() {
    auto bmods = generate_bmodules(5);
    for (const auto& m : bmods) {
        FiniteModule back = compact_elements_module(saturated_submodule_lattice(m));
        expect(find_isomorphism(back, m).has_value(), "round trip M ~= S(M)^c failed");
    }
    for (const auto& l : generate_lattices(5)) {
        FiniteLattice back = saturated_submodule_lattice(compact_elements_module(l));
        expect(find_lattice_isomorphism(back, l).has_value(), "round trip L ~= S(L^c) failed");
    }
    for (const auto& m : bmods)
        for (const auto& n : bmods) {
            auto homs = enumerate_homs(m, n);
            auto jmaps = enumerate_join_maps(saturated_submodule_lattice(m),
                                             saturated_submodule_lattice(n));
            expect(homs.size() == jmaps.size(), "hom-set cardinality mismatch under S");
            for (const auto& f : homs) {
                LatticeMorphism sf = s_on_morphism(f);
                expect(std::string(to_string(classify_morphism(f))) ==
                           to_string(classify_lattice_morphism(sf)),
                       "admissible classification not transported by S");
            }
        }
}

// ------------------------------------------------------------------
// 3. non-finitary reproduction via L_n and E_n

void criterion3() {
    SmodBackend bb{boolean_semifield()};
    std::vector<FiniteModule> lns;
    for (int n = 2; n <= 6; ++n) {
        FiniteModule ln = compact_elements_module(antichain_lattice(n));
        // SES B -> L_n -> B through the atom a_1
        auto [sub, inc] = submodule_module(ln, bit_of(0) | bit_of(1));
        auto iso = find_isomorphism(bmod(), sub);
        expect(iso.has_value(), "atom submodule of L_n is not B");
        ModuleMorphism i = compose(inc, *iso);
        QuotientResult q = quotient_module(ln, bit_of(0) | bit_of(1));
        auto qiso = find_isomorphism(q.quotient, bmod());
        expect(qiso.has_value(), "L_n quotient is not B");
        ModuleMorphism j = compose(*qiso, q.projection);
        expect(is_short_exact(bb, i, j), "SES B -> L_n -> B failed");
        lns.push_back(std::move(ln));
    }
    for (size_t a = 0; a < lns.size(); ++a)
        for (size_t b = a + 1; b < lns.size(); ++b)
            expect(!find_isomorphism(lns[a], lns[b]).has_value(), "L_n accidentally isomorphic");
    size_t prev = 0;
    for (int n = 2; n <= 6; ++n) {
        size_t count = ext_enumerate(bb, bmod(), bmod(), n + 2).classes.size();
        expect(count > prev, "Ext_B(B,B) class count not strictly increasing");
        prev = count;
    }

    HmodBackend kb{krasner_hyperfield()};
    std::vector<HModule> ens;
    for (int n = 4; n <= 8; ++n) {
        HModule en = en_module(n);
        auto [sub, inc] = hsubmodule_hmodule(en, bit_of(0) | bit_of(1));
        auto iso = find_h_isomorphism(kmodule(), sub);
        expect(iso.has_value(), "point submodule of E_n is not K");
        HMorphism i = compose(inc, *iso);
        HQuotientResult q = quotient_hmodule(en, bit_of(0) | bit_of(1));
        auto qiso = find_h_isomorphism(q.quotient, kmodule());
        expect(qiso.has_value(), "E_n quotient by a point is not K");
        HMorphism j = compose(*qiso, q.projection);
        expect(is_short_exact(kb, i, j), "SES K -> E_n -> K failed");
        ens.push_back(std::move(en));
    }
    for (size_t a = 0; a < ens.size(); ++a)
        for (size_t b = a + 1; b < ens.size(); ++b)
            expect(!find_h_isomorphism(ens[a], ens[b]).has_value(), "E_n accidentally isomorphic");
    prev = 0;
    for (int n = 4; n <= 8; ++n) {
        size_t count = ext_enumerate(kb, kmodule(), kmodule(), n + 1).classes.size();
        expect(count > prev, "Ext_K(K,K) class count not strictly increasing");
        prev = count;
    }

    HModule e3 = pexa::detail::en_module_unchecked(3);
    AxiomReport rep = check_hmodule_axioms(e3.ring, e3);
    expect(!rep.valid(), "E_3 must fail the axiom checker");
    const Violation* v = rep.find("hyperadd_associative");
    expect(v && v->witness == std::vector<int>{1, 1, 2}, "E_3 associativity witness mismatch");
}

// ------------------------------------------------------------------
// 4. saturation oracle

void criterion4() {
    auto fixpoint = [](const FiniteModule& m, Mask s) {
        Mask cur = submodule_closure(m, s);
        for (;;) {
            Mask next = cur;
            for (int x = 0; x < m.size; ++x) {
                if (has_bit(cur, x)) continue;
                for_each_bit(cur, [&](int y) {
                    if (has_bit(cur, m.plus(x, y))) next |= bit_of(x);
                });
            }
            next = submodule_closure(m, next);
            if (next == cur) return cur;
            cur = next;
        }
    };
    auto downward_closed = [](const FiniteModule& m, Mask s) {
        for (int x = 0; x < m.size; ++x)
            for (int y = 0; y < m.size; ++y)
                if (has_bit(s, y) && m.plus(x, y) == y && !has_bit(s, x)) return false;
        return true;
    };
    long long pairs = 0;
    for (const auto& m : generate_bmodules(5)) {
        for (Mask s = 1; s <= full_mask(m.size); s += 2) {
            if (!is_submodule(m, s)) continue;
            ++pairs;
            expect(saturation_closure(m, s) == fixpoint(m, s),
                   "one-pass saturation disagrees with the fixpoint oracle");
            expect(is_saturated_submodule(m, s) == downward_closed(m, s),
                   "saturated iff downward closed fails");
        }
    }
    std::cout << "  saturation oracle agreed on " << pairs << " submodules\n";
    expect(pairs > 50, "corpus unexpectedly small");
}

// ------------------------------------------------------------------
// 5. third isomorphism on randomized instances

void criterion5() {
    std::mt19937 rng(271828);
    auto corpus = generate_bmodules(5);
    int done = 0;
    while (done < 100) {
        const FiniteModule& m = corpus[rng() % corpus.size()];
        std::vector<Mask> sats = enumerate_submodules(m, true);
        Mask n = sats[rng() % sats.size()];
        QuotientResult q = quotient_module(m, n);
        std::vector<Mask> ksats = enumerate_submodules(q.quotient, true);
        Mask k = ksats[rng() % ksats.size()];
        try {
            ModuleMorphism w = check_third_iso(m, n, k);
            expect(classify_morphism(w) == MorphismClass::iso, "third-iso witness not an iso");
        } catch (const Error& e) {
            expect(false, std::string("third-iso construction failed: ") + e.what());
        }
        ++done;
    }
}

// ------------------------------------------------------------------
// 6. Hall constants

void criterion6() {
    auto start = std::chrono::steady_clock::now();
    SmodBackend bb{boolean_semifield()};
    FiniteModule b2 = direct_product(bmod(), bmod());
    HallResult r = hall_constant(bb, b2, bmod(), bmod());
    expect(r.count == 2, "a^{B^2}_{B,B} != 2");

    auto corpus = generate_bmodules(6);
    int used = 0;
    for (const auto& e : corpus) {
        if (used >= 20) break;
        ++used;
        expect(hall_constant(bb, e, e, zero_module(bb.ring)).count == 1, "a^E_{E,0} != 1");
        expect(hall_constant(bb, e, zero_module(bb.ring), e).count == 1, "a^E_{0,E} != 1");
    }
    expect(used == 20, "need 20 corpus objects");

    HmodBackend kb{krasner_hyperfield()};
    HModule p2 = projective_space_kmodule(5, 2);
    HModule p1 = projective_space_kmodule(5, 1);
    HallResult hk = hall_constant(kb, p2, p1, kmodule(), 2);
    expect(hk.count == 31, "hall constant over P^2(F_5) != 31");
    int flags = flag_count(p2);
    expect(flags == 186, "flag count over P^2(F_5) != 186");
    expect(flags == hk.count * 6, "flag count != hall count * line size");
    std::cout << "  note: the subobject count over P^2(F_5) is 31 (one per point); counting "
                 "incident point-line flags instead gives 186 = 31 x 6\n";
    double t = seconds_since(start);
    expect(t < 60.0, "Hall criterion exceeded 1 minute");
}

// ------------------------------------------------------------------
// 7. projective geometry correspondence

void criterion7() {
    for (int p : {3, 5}) {
        HModule e = projective_space_kmodule(p, 2);
        IncidenceGeometry g = projective_geometry(e);
        int points = (p * p * p - 1) / (p - 1);
        expect(g.n_points == points, "point count mismatch");
        for (Mask l : g.lines)
            expect(mask_size(l) == p + 1, "line size mismatch");
        expect(g.cc_bound_holds, "a line has fewer than four points");
        HQuotientResult q = quotient_hmodule(e, bit_of(0) | bit_of(1));
        expect(q.quotient.size == p + 2, "quotient by a point has the wrong size");
        expect(find_h_isomorphism(q.quotient, projective_space_kmodule(p, 1)).has_value(),
               "quotient by a point is not the P^1 module");
        expect(projective_geometry(q.quotient).n_points == p + 1,
               "quotient geometry point count mismatch");
    }
}

// ------------------------------------------------------------------
// 8. geometric lattices

void criterion8() {
    for (int n = 1; n <= 4; ++n)
        expect(is_geometric(boolean_lattice(n)).geometric, "Boolean lattice not geometric");
    expect(is_geometric(antichain_lattice(3)).geometric, "M3 not geometric");
    GeometricReport n5 = is_geometric(pentagon_lattice());
    expect(!n5.jordan_dedekind, "N5 should fail Jordan-Dedekind");
    for (int len = 3; len <= 6; ++len)
        expect(!is_geometric(chain_lattice(len)).atomistic, "long chains should not be atomistic");
}

// ------------------------------------------------------------------
// 9. quotient hyperring

void criterion9() {
    HyperTable q = quotient_hyperring(prime_field(3), bit_of(1) | bit_of(2));
    expect(q.size == 2, "F3/{1,2} should have two classes");
    expect(find_hypertable_isomorphism(q, krasner_hyperfield()).has_value(),
           "F3/{1,2} is not the Krasner hyperfield");
    expect(q.hyperadd == krasner_hyperfield().hyperadd, "tables differ after relabeling");
}

// ------------------------------------------------------------------
// 10. CLI determinism across worker counts

struct CliRun {
    int code;
    std::string output;
};

CliRun run_cli(const std::string& args, const fs::path& dir, int idx) {
    fs::path out = dir / ("out_" + std::to_string(idx) + ".txt");
    std::string cmd = std::string(PEXA_CLI_PATH) + " " + args + " > " + out.string() + " 2>&1";
    int rc = std::system(cmd.c_str());
    std::ifstream in(out, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return {rc, os.str()};
}

void criterion10() {
    fs::path dir = fs::temp_directory_path() / "pexa_acceptance_cli";
    fs::remove_all(dir);
    fs::create_directories(dir);
    auto write = [&](const std::string& name, const std::string& text) {
        std::ofstream out(dir / name, std::ios::binary);
        out << text;
        return (dir / name).string();
    };
    std::string bmod_f = write("b.mod", render_structure(wrap_structure(bmod())));
    std::string kmod_f = write("k.kmod", render_structure(wrap_structure(kmodule())));
    std::string p2_f = write("p2f5.kmod",
                             render_structure(wrap_structure(projective_space_kmodule(5, 2))));
    std::string p1_f = write("p1f5.kmod",
                             render_structure(wrap_structure(projective_space_kmodule(5, 1))));

    std::vector<std::string> commands = {
        "--json axioms --family bmod --max-size 4",
        "--json axioms --family kmod --max-size 5",
        "--json hall --E " + p2_f + " --A " + p1_f + " --B " + kmod_f,
        "--json ext --A " + bmod_f + " --C " + bmod_f + " --max-size 6",
        "gen --family bmod --max-size 5",
        "submodules " + p2_f,
        "geometry " + p2_f,
        "flags " + p2_f,
    };
    int idx = 0;
    for (const auto& cmd : commands) {
        CliRun one = run_cli("--workers 1 " + cmd, dir, idx++);
        CliRun three = run_cli("--workers 3 " + cmd, dir, idx++);
        expect(one.code == 0, "CLI run failed: " + cmd);
        expect(three.code == 0, "CLI run failed (3 workers): " + cmd);
        expect(one.output == three.output, "outputs differ across worker counts: " + cmd);
        expect(!one.output.empty(), "empty CLI output: " + cmd);
    }
    // hall over P^2(F_5) must report the 31 witnesses through the CLI too
    CliRun hall = run_cli("hall --E " + p2_f + " --A " + p1_f + " --B " + kmod_f, dir, idx++);
    expect(hall.code == 0 && hall.output.rfind("31\n", 0) == 0, "CLI hall count mismatch");
}

struct Criterion {
    int number;
    const char* label;
    std::function<void()> fn;
};

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "proto-exact axiom suite over exhaustive corpora", criterion1},
        {2, "equivalence of finite B-modules and finite lattices", criterion2},
        {3, "non-finitary reproduction via L_n and E_n", criterion3},
        {4, "saturation one-pass formula vs fixpoint oracle", criterion4},
        {5, "third isomorphism on randomized corpus instances", criterion5},
        {6, "Hall structure constants, including P^2(F_5)", criterion6},
        {7, "projective geometry correspondence for p in {3,5}", criterion7},
        {8, "geometric lattice classification", criterion8},
        {9, "quotient hyperring F_3/{1,2} is Krasner", criterion9},
        {10, "CLI determinism across worker counts", criterion10},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        g_errors.clear();
        g_checks = 0;
        auto start = std::chrono::steady_clock::now();
        try {
            c.fn();
        } catch (const std::exception& e) {
            g_errors.push_back(std::string("exception: ") + e.what());
        }
        double t = seconds_since(start);
        if (g_errors.empty()) {
            std::cout << "[PASS] criterion " << c.number << ": " << c.label << " (" << g_checks
                      << " checks, " << t << "s)\n";
        } else {
            ++failures;
            std::cout << "[FAIL] criterion " << c.number << ": " << c.label << "\n";
            for (const auto& e : g_errors) std::cout << "       " << e << "\n";
        }
    }
    if (failures == 0)
        std::cout << "all 10 acceptance criteria passed\n";
    else
        std::cout << failures << " acceptance criteria failed\n";
    return failures;
}
