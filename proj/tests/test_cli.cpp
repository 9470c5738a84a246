#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <pexa/cli.hpp>

using namespace pexa;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("pexa_cli_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }

    std::string write(const std::string& name, const std::string& content) const {
        std::ofstream out(path / name, std::ios::binary);
        out << content;
        return (path / name).string();
    }
};

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_command(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

const TempDir& dir() {
    static TempDir d;
    return d;
}

std::string b_file() {
    static std::string p =
        dir().write("b.sr", render_structure(wrap_structure(boolean_semifield())));
    return p;
}

std::string bmod_file() {
    static std::string p = dir().write(
        "b.mod", render_structure(wrap_structure(module_from_semiring(boolean_semifield()))));
    return p;
}

std::string bsq_file() {
    static std::string p = dir().write(
        "b2.mod", render_structure(wrap_structure(direct_product(
                      module_from_semiring(boolean_semifield()),
                      module_from_semiring(boolean_semifield())))));
    return p;
}

}  // namespace

TEST_CASE("check on valid and invalid structures") {
    RunResult ok = run({"check", b_file()});
    CHECK(ok.code == 0);
    CHECK(ok.out == "valid semiring (idempotent)\n");

    std::string bad = dir().write("bad.sr",
                                  "semiring bad 2\nadd\n1 1\n1 1\nmul\n0 0\n0 1\n");
    RunResult fail = run({"check", bad});
    CHECK(fail.code == 2);
    CHECK(fail.out.find("violation") != std::string::npos);

    RunResult missing = run({"check", (dir().path / "absent.sr").string()});
    CHECK(missing.code == 1);
}

TEST_CASE("check reports hyperfields") {
    std::string k = dir().write("k.hr", render_structure(wrap_structure(krasner_hyperfield())));
    RunResult r = run({"check", k});
    CHECK(r.code == 0);
    CHECK(r.out == "valid hyperfield\n");
}

TEST_CASE("submodules command") {
    RunResult r = run({"submodules", bsq_file(), "--saturated"});
    CHECK(r.code == 0);
    CHECK(r.out.find("count 4") == 0);
    CHECK(r.out.find("{0,1,2,3}") != std::string::npos);
}

TEST_CASE("quotient command emits a parseable structure") {
    RunResult r = run({"quotient", bsq_file(), "--by", "0,2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("# projection: 0 1 0 1") == 0);
    auto body = r.out.substr(r.out.find("module"));
    StructureFile back = parse_structure(body);
    CHECK(std::get<FiniteModule>(back.body).size == 2);
}

TEST_CASE("classify and exact with hom files") {
    // inclusion of the first axis into B^2
    std::string inc = dir().write("inc.hom",
                                  "hom inc\nsource b.mod\ntarget b2.mod\nmap 0 2\n");
    bmod_file();
    bsq_file();
    RunResult r = run({"classify", "--hom", inc});
    CHECK(r.code == 0);
    CHECK(r.out == "admissible_mono\n");

    // quotient projection B^2 -> B (collapse the first axis)
    std::string proj = dir().write("proj.hom",
                                   "hom proj\nsource b2.mod\ntarget b.mod\nmap 0 1 0 1\n");
    RunResult r2 = run({"classify", "--hom", proj});
    CHECK(r2.out == "admissible_epi\n");

    RunResult ex = run({"exact", inc, proj});
    CHECK(ex.code == 0);
    CHECK(ex.out == "exact\n");

    // a non-exact pair: diagonal then projection
    std::string diag = dir().write("diag.hom",
                                   "hom diag\nsource b.mod\ntarget b2.mod\nmap 0 3\n");
    RunResult bad = run({"exact", diag, proj});
    CHECK(bad.code == 2);
    CHECK(bad.out.find("not exact") == 0);
}

TEST_CASE("complete command") {
    std::string proj = dir().write("proj.hom",
                                   "hom proj\nsource b2.mod\ntarget b.mod\nmap 0 1 0 1\n");
    std::string zero_in = dir().write("zero_in.hom",
                                      "hom z\nsource zero.mod\ntarget b.mod\nmap 0\n");
    dir().write("zero.mod",
                render_structure(wrap_structure(zero_module(boolean_semifield()))));
    RunResult r = run({"complete", "--direction", "pullback", zero_in, proj});
    CHECK(r.code == 0);
    CHECK(r.out.find("# i: 0 2") != std::string::npos);
}

TEST_CASE("ext and hall commands") {
    RunResult ext = run({"ext", "--A", bmod_file(), "--C", bmod_file(), "--max-size", "5"});
    CHECK(ext.code == 0);
    CHECK(ext.out.find("classes 4") == 0);
    CHECK(ext.out.find("middle_size=3") != std::string::npos);
    CHECK(ext.out.find("middle_size=4") != std::string::npos);

    RunResult with_cat = run({"ext", "--cat", "bmod", "--A", bmod_file(), "--C", bmod_file(),
                              "--max-size", "5"});
    CHECK(with_cat.out == ext.out);
    RunResult bad_cat = run({"ext", "--cat", "kmod", "--A", bmod_file(), "--C", bmod_file(),
                             "--max-size", "5"});
    CHECK(bad_cat.code == 1);

    // default bound is 6
    RunResult dflt = run({"ext", "--A", bmod_file(), "--C", bmod_file()});
    CHECK(dflt.code == 0);
    CHECK(dflt.out.find("classes 9") == 0);

    RunResult hall = run({"hall", "--E", bsq_file(), "--A", bmod_file(), "--B", bmod_file()});
    CHECK(hall.code == 0);
    CHECK(hall.out.find("2\n") == 0);
    CHECK(hall.out.find("{0,1}") != std::string::npos);
    CHECK(hall.out.find("{0,2}") != std::string::npos);

    // ring and hyperring files are accepted where modules are expected
    std::string b_sr = b_file();
    RunResult hall2 = run({"hall", "--E", bsq_file(), "--A", b_sr, "--B", b_sr});
    CHECK(hall2.code == 0);
    CHECK(hall2.out == hall.out);

    std::string k_hr = dir().write("k.hr", render_structure(wrap_structure(krasner_hyperfield())));
    std::string e4 = dir().write("e4g.kmod", render_structure(wrap_structure(en_module(4))));
    RunResult hall3 = run({"hall", "--E", e4, "--A", k_hr, "--B", k_hr});
    CHECK(hall3.code == 0);
    CHECK(hall3.out.find("4\n") == 0);  // the four point submodules
}

TEST_CASE("lattice commands") {
    std::string lat = dir().write("n5.lat", render_structure(wrap_structure(pentagon_lattice())));
    RunResult g = run({"geometric", lat});
    CHECK(g.code == 0);
    CHECK(g.out.find("jordan_dedekind: no") == 0);
    CHECK(g.out.find("geometric: no") != std::string::npos);

    RunResult lof = run({"lattice-of", bsq_file()});
    CHECK(lof.code == 0);
    CHECK(lof.out.find("lattice") == 0);

    std::string lat2 = dir().write("chain2.lat",
                                   render_structure(wrap_structure(chain_lattice(2))));
    RunResult mof = run({"module-of", lat2});
    CHECK(mof.code == 0);
    StructureFile back = parse_structure(mof.out);
    CHECK(std::get<FiniteModule>(back.body).same_structure(
        module_from_semiring(boolean_semifield())));
}

TEST_CASE("geometry and flags commands") {
    std::string e4 = dir().write("e4.kmod", render_structure(wrap_structure(en_module(4))));
    RunResult g = run({"geometry", e4});
    CHECK(g.code == 0);
    CHECK(g.out.find("points 4") == 0);
    CHECK(g.out.find("lines 1") != std::string::npos);
    RunResult f = run({"flags", e4});
    CHECK(f.out == "flags 4\n");
}

TEST_CASE("gen command writes families") {
    RunResult en = run({"gen", "--family", "en", "--n", "4"});
    CHECK(en.code == 0);
    CHECK(en.out.find("hmodule E4 5") == 0);

    RunResult bad = run({"gen", "--family", "en", "--n", "3"});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("associativity") != std::string::npos);

    RunResult proj = run({"gen", "--family", "proj", "--p", "3", "--d", "1"});
    CHECK(proj.code == 0);
    StructureFile sf = parse_structure(proj.out);
    CHECK(std::get<HModule>(sf.body).size == 5);

    auto outdir = (dir().path / "gen_bmod").string();
    RunResult bm = run({"gen", "--family", "bmod", "--max-size", "4", "--out", outdir});
    CHECK(bm.code == 0);
    int files = 0;
    for (const auto& e : std::filesystem::directory_iterator(outdir)) {
        ++files;
        parse_structure([&] {
            std::ifstream in(e.path(), std::ios::binary);
            std::ostringstream os;
            os << in.rdbuf();
            return os.str();
        }());
    }
    CHECK(files == 5);
}

TEST_CASE("axioms command over a generated family and a corpus dir") {
    RunResult fam = run({"axioms", "--family", "bmod", "--max-size", "3"});
    CHECK(fam.code == 0);
    CHECK(fam.out.find("all axioms hold") != std::string::npos);

    auto outdir = (dir().path / "corpus_k").string();
    run({"gen", "--family", "kmod", "--max-size", "5", "--out", outdir});
    RunResult corp = run({"axioms", "--corpus", outdir});
    CHECK(corp.code == 0);
    CHECK(corp.out.find("category Mod_K") == 0);
    CHECK(corp.out.find("all axioms hold") != std::string::npos);
}

TEST_CASE("json output carries command, digests, result and witnesses") {
    RunResult r = run({"--json", "hall", "--E", bsq_file(), "--A", bmod_file(), "--B", bmod_file()});
    CHECK(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["command"] == "hall");
    CHECK(doc["input_digests"].size() == 3);
    CHECK(doc["result"]["count"] == 2);
    CHECK(doc["witnesses"].size() == 2);
}

TEST_CASE("outputs are byte-identical across worker counts") {
    std::vector<std::string> base = {"--json", "hall", "--E", bsq_file(), "--A", bmod_file(),
                                     "--B", bmod_file()};
    auto one = base;
    one.insert(one.begin(), {"--workers", "1"});
    auto four = base;
    four.insert(four.begin(), {"--workers", "4"});
    RunResult r1 = run(one);
    RunResult r4 = run(four);
    CHECK(r1.out == r4.out);

    RunResult a1 = run({"--workers", "1", "axioms", "--family", "bmod", "--max-size", "3"});
    RunResult a3 = run({"--workers", "3", "axioms", "--family", "bmod", "--max-size", "3"});
    CHECK(a1.out == a3.out);
}

TEST_CASE("cli error paths map to the right exit codes") {
    // a map that is not additive
    std::string bad = dir().write("bad.hom", "hom bad\nsource b2.mod\ntarget b.mod\nmap 0 1 1 0\n");
    bmod_file();
    bsq_file();
    RunResult r = run({"classify", "--hom", bad});
    CHECK(r.code == 1);
    CHECK(r.err.find("error:") == 0);

    RunResult badsub = run({"quotient", bsq_file(), "--by", "0,9"});
    CHECK(badsub.code == 1);

    RunResult notsub = run({"quotient", bsq_file(), "--by", "0,1,2"});
    CHECK(notsub.code == 1);

    // size beyond the cap is a bound error
    std::string big = dir().write("big.sr", "semiring big 60\nadd\n");
    RunResult bound = run({"check", big});
    CHECK(bound.code == 3);
}

TEST_CASE("help exits cleanly; missing subcommand errors") {
    RunResult help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("check") != std::string::npos);
    RunResult none = run({});
    CHECK(none.code == 1);
    RunResult unknown = run({"frobnicate"});
    CHECK(unknown.code == 1);
}

TEST_CASE("environment overrides: PEXA_MAX_SIZE and PEXA_WORKERS") {
    std::string big = dir().write("big17.sr", [] {
        SemiringTable c = chain_semiring(16);  // 17 elements, above the default cap
        return render_structure(wrap_structure(c));
    }());
    RunResult blocked = run({"check", big});
    CHECK(blocked.code == 3);

    ::setenv("PEXA_MAX_SIZE", "20", 1);
    RunResult allowed = run({"check", big});
    ::unsetenv("PEXA_MAX_SIZE");
    CHECK(allowed.code == 0);
    CHECK(allowed.out == "valid semiring (idempotent)\n");

    ::setenv("PEXA_MAX_SIZE", "boom", 1);
    RunResult bad_env = run({"check", big});
    ::unsetenv("PEXA_MAX_SIZE");
    CHECK(bad_env.code == 1);

    ::setenv("PEXA_WORKERS", "3", 1);
    RunResult with_env = run({"hall", "--E", bsq_file(), "--A", bmod_file(), "--B", bmod_file()});
    ::unsetenv("PEXA_WORKERS");
    RunResult without = run({"hall", "--E", bsq_file(), "--A", bmod_file(), "--B", bmod_file()});
    CHECK(with_env.out == without.out);
}

TEST_CASE("repeated runs are byte-identical") {
    RunResult r1 = run({"ext", "--A", bmod_file(), "--C", bmod_file(), "--max-size", "4"});
    RunResult r2 = run({"ext", "--A", bmod_file(), "--C", bmod_file(), "--max-size", "4"});
    CHECK(r1.out == r2.out);
}
