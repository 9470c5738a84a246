#pragma once

/// Structure files: line-oriented, `#` comments, blank-line tolerant.
/// Header `kind name size`, then whitespace-separated table rows under
/// `add` / `mul` / `act` / `leq` / `neg` headings; hyperaddition rows use
/// brace-delimited index sets such as `{0,1}`. Modules embed their base
/// structure between `base kind name size` and `end`. Parsers reorder
/// elements so the additive identity is 0 and the multiplicative identity
/// is 1; rendering always emits the canonical form with LF line endings.

#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "core.hpp"
#include "hmod.hpp"
#include "lattice.hpp"
#include "smod.hpp"
#include "tables.hpp"

namespace pexa {

enum class StructKind { semiring, ring, hypergroup, hyperring, hyperfield, module, hmodule, lattice };

inline const char* to_string(StructKind k) {
    switch (k) {
        case StructKind::semiring: return "semiring";
        case StructKind::ring: return "ring";
        case StructKind::hypergroup: return "hypergroup";
        case StructKind::hyperring: return "hyperring";
        case StructKind::hyperfield: return "hyperfield";
        case StructKind::module: return "module";
        case StructKind::hmodule: return "hmodule";
        default: return "lattice";
    }
}

inline std::optional<StructKind> struct_kind_from(const std::string& s) {
    if (s == "semiring") return StructKind::semiring;
    if (s == "ring") return StructKind::ring;
    if (s == "hypergroup") return StructKind::hypergroup;
    if (s == "hyperring") return StructKind::hyperring;
    if (s == "hyperfield") return StructKind::hyperfield;
    if (s == "module") return StructKind::module;
    if (s == "hmodule") return StructKind::hmodule;
    if (s == "lattice") return StructKind::lattice;
    return std::nullopt;
}

using StructureBody =
    std::variant<SemiringTable, RingTable, HyperTable, FiniteModule, HModule, FiniteLattice>;

struct StructureFile {
    StructKind kind = StructKind::semiring;
    std::string name;
    std::vector<std::string> labels;  // empty or one per element
    StructureBody body;
};

struct ParseOptions {
    bool skip_check = false;
    Limits limits{};
};

// ---------------------------------------------------------------------------
// Permutation helpers (perm[old] = new)

namespace detail {

inline std::vector<int> perm_placing(int size, std::vector<int> front) {
    std::vector<int> order;
    for (int f : front)
        if (std::find(order.begin(), order.end(), f) == order.end()) order.push_back(f);
    for (int i = 0; i < size; ++i)
        if (std::find(order.begin(), order.end(), i) == order.end()) order.push_back(i);
    std::vector<int> perm(static_cast<size_t>(size));
    for (int pos = 0; pos < size; ++pos) perm[static_cast<size_t>(order[static_cast<size_t>(pos)])] = pos;
    return perm;
}

inline std::vector<int> permute_square(const std::vector<int>& t, int n, const std::vector<int>& p) {
    std::vector<int> out(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            out[static_cast<size_t>(p[static_cast<size_t>(a)]) * n + p[static_cast<size_t>(b)]] =
                p[static_cast<size_t>(t[static_cast<size_t>(a) * n + b])];
    return out;
}

inline std::vector<Mask> permute_hyper(const std::vector<Mask>& t, int n, const std::vector<int>& p) {
    std::vector<Mask> out(static_cast<size_t>(n) * n, 0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Mask cell = 0;
            for_each_bit(t[static_cast<size_t>(a) * n + b], [&](int z) { cell |= bit_of(p[static_cast<size_t>(z)]); });
            out[static_cast<size_t>(p[static_cast<size_t>(a)]) * n + p[static_cast<size_t>(b)]] = cell;
        }
    return out;
}

inline std::vector<std::string> permute_labels(const std::vector<std::string>& labels,
                                               const std::vector<int>& p) {
    if (labels.empty()) return labels;
    std::vector<std::string> out(labels.size());
    for (size_t i = 0; i < labels.size(); ++i) out[static_cast<size_t>(p[i])] = labels[i];
    return out;
}

inline int find_additive_identity(int n, const std::vector<int>& add) {
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            if (add[static_cast<size_t>(a) * n + e] != a) ok = false;
        if (ok) return e;
    }
    return -1;
}

inline int find_mul_identity(int n, const std::vector<int>& mul, int avoid) {
    for (int u = 0; u < n; ++u) {
        if (u == avoid) continue;
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            if (mul[static_cast<size_t>(u) * n + a] != a) ok = false;
        if (ok) return u;
    }
    return -1;
}

inline int find_hyper_zero(int n, const std::vector<Mask>& hadd) {
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            if (hadd[static_cast<size_t>(a) * n + e] != bit_of(a)) ok = false;
        if (ok) return e;
    }
    return -1;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

struct Line {
    int number = 0;
    std::vector<std::string> tokens;
};

inline std::vector<Line> tokenize_lines(const std::string& text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        Line line{number, {}};
        std::string tok;
        while (ls >> tok) line.tokens.push_back(tok);
        if (!line.tokens.empty()) out.push_back(std::move(line));
    }
    return out;
}

[[noreturn]] inline void parse_fail(int line, const std::string& msg) {
    fail_input("line " + std::to_string(line) + ": " + msg);
}

inline int parse_index(const Line& l, const std::string& tok, int size) {
    int v = -1;
    try {
        size_t pos = 0;
        v = std::stoi(tok, &pos);
        if (pos != tok.size()) v = -1;
    } catch (...) {
        v = -1;
    }
    if (v < 0 || v >= size) parse_fail(l.number, "index '" + tok + "' out of range");
    return v;
}

inline Mask parse_mask_token(const Line& l, const std::string& tok, int size) {
    if (tok.size() < 2 || tok.front() != '{' || tok.back() != '}')
        parse_fail(l.number, "expected a brace set, got '" + tok + "'");
    Mask out = 0;
    std::string inner = tok.substr(1, tok.size() - 2);
    if (inner.empty()) parse_fail(l.number, "empty hyperaddition cell");
    size_t start = 0;
    while (start <= inner.size()) {
        size_t comma = inner.find(',', start);
        std::string piece = inner.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        out |= bit_of(parse_index(l, piece, size));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

class StructureParser {
public:
    StructureParser(std::vector<Line> lines, const ParseOptions& opts)
        : lines_(std::move(lines)), opts_(opts) {}

    StructureFile parse() {
        StructureFile out = parse_one(false);
        if (pos_ != lines_.size()) parse_fail(lines_[pos_].number, "trailing content after structure");
        return out;
    }

private:
    const Line& peek() const {
        if (pos_ >= lines_.size()) fail_input("unexpected end of input");
        return lines_[pos_];
    }
    const Line& next() {
        const Line& l = peek();
        ++pos_;
        return l;
    }
    bool at_keyword(const std::string& kw) const {
        return pos_ < lines_.size() && lines_[pos_].tokens[0] == kw;
    }

    std::vector<int> parse_rows(int rows, int cols, int value_range) {
        std::vector<int> out;
        out.reserve(static_cast<size_t>(rows) * cols);
        for (int r = 0; r < rows; ++r) {
            const Line& l = next();
            if (static_cast<int>(l.tokens.size()) != cols)
                parse_fail(l.number, "expected " + std::to_string(cols) + " entries in row");
            for (const auto& t : l.tokens) out.push_back(parse_index(l, t, value_range));
        }
        return out;
    }

    std::vector<Mask> parse_mask_rows(int rows, int cols, int value_range) {
        std::vector<Mask> out;
        out.reserve(static_cast<size_t>(rows) * cols);
        for (int r = 0; r < rows; ++r) {
            const Line& l = next();
            if (static_cast<int>(l.tokens.size()) != cols)
                parse_fail(l.number, "expected " + std::to_string(cols) + " cells in row");
            for (const auto& t : l.tokens) out.push_back(parse_mask_token(l, t, value_range));
        }
        return out;
    }

    void expect_section(const char* name) {
        const Line& l = next();
        if (l.tokens.size() != 1 || l.tokens[0] != name)
            parse_fail(l.number, std::string("expected section '") + name + "'");
    }

    StructureFile parse_one(bool as_base) {
        const Line& header = next();
        size_t off = 0;
        if (as_base) {
            if (header.tokens[0] != "base") parse_fail(header.number, "expected 'base kind name size'");
            off = 1;
        }
        if (header.tokens.size() != off + 3)
            parse_fail(header.number, "expected header 'kind name size'");
        auto kind = struct_kind_from(header.tokens[off]);
        if (!kind) parse_fail(header.number, "unknown kind '" + header.tokens[off] + "'");
        std::string name = header.tokens[off + 1];
        int size = 0;
        try {
            size = std::stoi(header.tokens[off + 2]);
        } catch (...) {
            parse_fail(header.number, "bad size");
        }
        int cap = (*kind == StructKind::module || *kind == StructKind::hmodule ||
                   *kind == StructKind::lattice)
                      ? opts_.limits.module_cap
                      : opts_.limits.table_cap;
        if (size < 1) parse_fail(header.number, "size must be positive");
        if (size > cap || size > hard_size_cap)
            fail_bound("structure size " + std::to_string(size) + " exceeds the size cap " +
                       std::to_string(std::min(cap, hard_size_cap)));

        StructureFile out;
        out.kind = *kind;
        out.name = name;
        if (at_keyword("labels")) {
            const Line& l = next();
            if (static_cast<int>(l.tokens.size()) != size + 1)
                parse_fail(l.number, "labels line needs one name per element");
            out.labels.assign(l.tokens.begin() + 1, l.tokens.end());
        }

        switch (*kind) {
            case StructKind::semiring: {
                expect_section("add");
                auto add = parse_rows(size, size, size);
                expect_section("mul");
                auto mul = parse_rows(size, size, size);
                out.body = make_semiring(name, size, std::move(add), std::move(mul));
                canonicalize_semiring(out);
                break;
            }
            case StructKind::ring: {
                expect_section("add");
                auto add = parse_rows(size, size, size);
                expect_section("mul");
                auto mul = parse_rows(size, size, size);
                const Line& l = next();
                if (l.tokens.size() != static_cast<size_t>(size) + 1 || l.tokens[0] != "neg")
                    parse_fail(l.number, "expected 'neg' line with one entry per element");
                std::vector<int> neg;
                for (size_t i = 1; i < l.tokens.size(); ++i) neg.push_back(parse_index(l, l.tokens[i], size));
                out.body = make_ring(name, size, std::move(add), std::move(mul), std::move(neg));
                canonicalize_ring(out);
                break;
            }
            case StructKind::hypergroup:
            case StructKind::hyperring:
            case StructKind::hyperfield: {
                expect_section("hyperadd");
                auto hadd = parse_mask_rows(size, size, size);
                std::vector<int> mul;
                if (*kind != StructKind::hypergroup) {
                    expect_section("mul");
                    mul = parse_rows(size, size, size);
                }
                HyperKind hk = *kind == StructKind::hypergroup ? HyperKind::hypergroup
                               : *kind == StructKind::hyperring ? HyperKind::hyperring
                                                                : HyperKind::hyperfield;
                out.body = make_hypertable(name, size, hk, std::move(hadd), std::move(mul));
                canonicalize_hyper(out);
                break;
            }
            case StructKind::module: {
                StructureFile base = parse_one(true);
                const SemiringTable* ring = std::get_if<SemiringTable>(&base.body);
                if (!ring) parse_fail(header.number, "module base must be a semiring");
                expect_section("add");
                auto add = parse_rows(size, size, size);
                expect_section("act");
                std::vector<int> act;
                for (int r = 0; r < ring->size; ++r) {
                    const Line& l = next();
                    if (static_cast<int>(l.tokens.size()) != size)
                        parse_fail(l.number, "act row needs one entry per module element");
                    for (const auto& t : l.tokens) act.push_back(parse_index(l, t, size));
                }
                // base was canonicalized; reorder act rows accordingly
                if (!base_perm_.empty()) {
                    std::vector<int> act2(act.size());
                    for (int r = 0; r < ring->size; ++r)
                        for (int m = 0; m < size; ++m)
                            act2[static_cast<size_t>(base_perm_[static_cast<size_t>(r)]) * size + m] =
                                act[static_cast<size_t>(r) * size + m];
                    act = std::move(act2);
                }
                out.body = make_module(*ring, name, size, std::move(add), std::move(act));
                canonicalize_module(out);
                break;
            }
            case StructKind::hmodule: {
                StructureFile base = parse_one(true);
                const HyperTable* ring = std::get_if<HyperTable>(&base.body);
                if (!ring) parse_fail(header.number, "hmodule base must be a hyper structure");
                if (ring->kind == HyperKind::hypergroup)
                    parse_fail(header.number, "hmodule base needs a multiplication: use hyperring or hyperfield");
                expect_section("hyperadd");
                auto hadd = parse_mask_rows(size, size, size);
                expect_section("act");
                std::vector<int> act;
                for (int r = 0; r < ring->size; ++r) {
                    const Line& l = next();
                    if (static_cast<int>(l.tokens.size()) != size)
                        parse_fail(l.number, "act row needs one entry per module element");
                    for (const auto& t : l.tokens) act.push_back(parse_index(l, t, size));
                }
                if (!base_perm_.empty()) {
                    std::vector<int> act2(act.size());
                    for (int r = 0; r < ring->size; ++r)
                        for (int m = 0; m < size; ++m)
                            act2[static_cast<size_t>(base_perm_[static_cast<size_t>(r)]) * size + m] =
                                act[static_cast<size_t>(r) * size + m];
                    act = std::move(act2);
                }
                out.body = make_hmodule(*ring, name, size, std::move(hadd), std::move(act));
                canonicalize_hmodule(out);
                break;
            }
            case StructKind::lattice: {
                expect_section("leq");
                auto rows = parse_rows(size, size, 2);
                std::vector<char> leq(rows.size());
                for (size_t i = 0; i < rows.size(); ++i) {
                    if (rows[i] != 0 && rows[i] != 1)
                        parse_fail(header.number, "leq entries must be 0 or 1");
                    leq[i] = static_cast<char>(rows[i]);
                }
                canonicalize_and_build_lattice(out, size, std::move(leq), name);
                break;
            }
        }

        if (as_base) {
            const Line& l = next();
            if (l.tokens.size() != 1 || l.tokens[0] != "end") parse_fail(l.number, "expected 'end'");
        }
        return out;
    }

    void apply_labels_perm(StructureFile& sf, const std::vector<int>& p) {
        sf.labels = permute_labels(sf.labels, p);
    }

    void canonicalize_semiring(StructureFile& sf) {
        auto& t = std::get<SemiringTable>(sf.body);
        int e = find_additive_identity(t.size, t.add);
        int u = e >= 0 ? find_mul_identity(t.size, t.mul, e) : -1;
        std::vector<int> front;
        if (e >= 0) front.push_back(e);
        if (u >= 0) front.push_back(u);
        auto p = perm_placing(t.size, front);
        t = make_semiring(t.name, t.size, permute_square(t.add, t.size, p),
                          permute_square(t.mul, t.size, p));
        apply_labels_perm(sf, p);
        base_perm_ = p;
    }

    void canonicalize_ring(StructureFile& sf) {
        auto& t = std::get<RingTable>(sf.body);
        int e = find_additive_identity(t.base.size, t.base.add);
        int u = e >= 0 ? find_mul_identity(t.base.size, t.base.mul, e) : -1;
        std::vector<int> front;
        if (e >= 0) front.push_back(e);
        if (u >= 0) front.push_back(u);
        auto p = perm_placing(t.base.size, front);
        std::vector<int> neg(t.neg.size());
        for (size_t a = 0; a < t.neg.size(); ++a)
            neg[static_cast<size_t>(p[a])] = p[static_cast<size_t>(t.neg[a])];
        t = make_ring(t.base.name, t.base.size, permute_square(t.base.add, t.base.size, p),
                      permute_square(t.base.mul, t.base.size, p), std::move(neg));
        apply_labels_perm(sf, p);
        base_perm_ = p;
    }

    void canonicalize_hyper(StructureFile& sf) {
        auto& t = std::get<HyperTable>(sf.body);
        int e = find_hyper_zero(t.size, t.hyperadd);
        int u = t.kind == HyperKind::hypergroup ? -1 : find_mul_identity(t.size, t.mul, e);
        std::vector<int> front;
        if (e >= 0) front.push_back(e);
        if (u >= 0) front.push_back(u);
        auto p = perm_placing(t.size, front);
        t = make_hypertable(t.name, t.size, t.kind, permute_hyper(t.hyperadd, t.size, p),
                            permute_square(t.mul, t.size, p));
        apply_labels_perm(sf, p);
        base_perm_ = p;
    }

    void canonicalize_module(StructureFile& sf) {
        auto& m = std::get<FiniteModule>(sf.body);
        int e = find_additive_identity(m.size, m.add);
        auto p = perm_placing(m.size, e >= 0 ? std::vector<int>{e} : std::vector<int>{});
        std::vector<int> act(m.act.size());
        for (int r = 0; r < m.ring.size; ++r)
            for (int x = 0; x < m.size; ++x)
                act[static_cast<size_t>(r) * m.size + p[static_cast<size_t>(x)]] =
                    p[static_cast<size_t>(m.act[static_cast<size_t>(r) * m.size + x])];
        m = make_module(m.ring, m.name, m.size, permute_square(m.add, m.size, p), std::move(act));
        apply_labels_perm(sf, p);
    }

    void canonicalize_hmodule(StructureFile& sf) {
        auto& m = std::get<HModule>(sf.body);
        int e = find_hyper_zero(m.size, m.hyperadd);
        auto p = perm_placing(m.size, e >= 0 ? std::vector<int>{e} : std::vector<int>{});
        std::vector<int> act(m.act.size());
        for (int r = 0; r < m.ring.size; ++r)
            for (int x = 0; x < m.size; ++x)
                act[static_cast<size_t>(r) * m.size + p[static_cast<size_t>(x)]] =
                    p[static_cast<size_t>(m.act[static_cast<size_t>(r) * m.size + x])];
        m = make_hmodule(m.ring, m.name, m.size, permute_hyper(m.hyperadd, m.size, p), std::move(act));
        apply_labels_perm(sf, p);
    }

    void canonicalize_and_build_lattice(StructureFile& sf, int size, std::vector<char> leq,
                                        const std::string& name) {
        // place the bottom (global minimum) first when one exists
        int bottom = -1;
        for (int e = 0; e < size && bottom < 0; ++e) {
            bool ok = true;
            for (int a = 0; a < size && ok; ++a)
                if (!leq[static_cast<size_t>(e) * size + a]) ok = false;
            if (ok) bottom = e;
        }
        auto p = perm_placing(size, bottom >= 0 ? std::vector<int>{bottom} : std::vector<int>{});
        std::vector<char> leq2(leq.size());
        for (int a = 0; a < size; ++a)
            for (int b = 0; b < size; ++b)
                leq2[static_cast<size_t>(p[static_cast<size_t>(a)]) * size + p[static_cast<size_t>(b)]] =
                    leq[static_cast<size_t>(a) * size + b];
        try {
            sf.body = lattice_from_poset(name, size, std::move(leq2));
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::invalid_input)
                throw Error(ErrorKind::axiom_failure, e.what());
            throw;
        }
        apply_labels_perm(sf, p);
    }

    std::vector<Line> lines_;
    ParseOptions opts_;
    size_t pos_ = 0;
    std::vector<int> base_perm_;
};

}  // namespace detail

/// Full axiom check for any structure kind (base axioms first for modules).
inline AxiomReport check_structure(const StructureFile& sf) {
    if (const auto* s = std::get_if<SemiringTable>(&sf.body)) return check_semiring_axioms(*s);
    if (const auto* r = std::get_if<RingTable>(&sf.body)) return check_ring_axioms(*r);
    if (const auto* h = std::get_if<HyperTable>(&sf.body)) return check_hyperstructure_axioms(*h);
    if (const auto* m = std::get_if<FiniteModule>(&sf.body)) {
        AxiomReport base = check_semiring_axioms(m->ring);
        if (!base.valid()) return base;
        return check_module_axioms(m->ring, *m);
    }
    if (const auto* m = std::get_if<HModule>(&sf.body)) {
        AxiomReport base = check_hyperstructure_axioms(m->ring);
        if (!base.valid()) return base;
        return check_hmodule_axioms(m->ring, *m);
    }
    return AxiomReport{};  // lattices are validated during construction
}

/// Parses one structure document; canonical element order, line-numbered
/// errors, and (unless skipped) a full axiom check.
inline StructureFile parse_structure(const std::string& text, const ParseOptions& opts = {}) {
    detail::StructureParser p(detail::tokenize_lines(text), opts);
    StructureFile out = p.parse();
    if (!opts.skip_check) {
        AxiomReport rep = check_structure(out);
        if (!rep.valid()) {
            std::ostringstream os;
            os << to_string(out.kind) << " '" << out.name << "' fails axiom "
               << rep.violations.front().axiom << " at (";
            for (size_t i = 0; i < rep.violations.front().witness.size(); ++i)
                os << (i ? "," : "") << rep.violations.front().witness[i];
            os << ")";
            throw Error(ErrorKind::axiom_failure, os.str());
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Rendering

namespace detail {

inline void render_int_rows(std::ostream& os, const std::vector<int>& t, int rows, int cols) {
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) os << (c ? " " : "") << t[static_cast<size_t>(r) * cols + c];
        os << "\n";
    }
}

inline void render_mask_rows(std::ostream& os, const std::vector<Mask>& t, int rows, int cols) {
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            os << (c ? " " : "") << "{";
            bool first = true;
            for_each_bit(t[static_cast<size_t>(r) * cols + c], [&](int z) {
                os << (first ? "" : ",") << z;
                first = false;
            });
            os << "}";
        }
        os << "\n";
    }
}

inline void render_body(std::ostream& os, const StructureFile& sf, bool as_base);

inline void render_header(std::ostream& os, const StructureFile& sf, int size, bool as_base) {
    if (as_base) os << "base ";
    os << to_string(sf.kind) << " " << sf.name << " " << size << "\n";
    if (!sf.labels.empty()) {
        os << "labels";
        for (const auto& l : sf.labels) os << " " << l;
        os << "\n";
    }
}

inline void render_body(std::ostream& os, const StructureFile& sf, bool as_base) {
    if (const auto* s = std::get_if<SemiringTable>(&sf.body)) {
        render_header(os, sf, s->size, as_base);
        os << "add\n";
        render_int_rows(os, s->add, s->size, s->size);
        os << "mul\n";
        render_int_rows(os, s->mul, s->size, s->size);
    } else if (const auto* r = std::get_if<RingTable>(&sf.body)) {
        render_header(os, sf, r->base.size, as_base);
        os << "add\n";
        render_int_rows(os, r->base.add, r->base.size, r->base.size);
        os << "mul\n";
        render_int_rows(os, r->base.mul, r->base.size, r->base.size);
        os << "neg";
        for (int v : r->neg) os << " " << v;
        os << "\n";
    } else if (const auto* h = std::get_if<HyperTable>(&sf.body)) {
        render_header(os, sf, h->size, as_base);
        os << "hyperadd\n";
        render_mask_rows(os, h->hyperadd, h->size, h->size);
        if (h->kind != HyperKind::hypergroup) {
            os << "mul\n";
            render_int_rows(os, h->mul, h->size, h->size);
        }
    } else if (const auto* m = std::get_if<FiniteModule>(&sf.body)) {
        render_header(os, sf, m->size, as_base);
        StructureFile base{StructKind::semiring, m->ring.name, {}, m->ring};
        render_body(os, base, true);
        os << "end\n";
        os << "add\n";
        render_int_rows(os, m->add, m->size, m->size);
        os << "act\n";
        render_int_rows(os, m->act, m->ring.size, m->size);
    } else if (const auto* m = std::get_if<HModule>(&sf.body)) {
        render_header(os, sf, m->size, as_base);
        StructKind bk = m->ring.kind == HyperKind::hypergroup ? StructKind::hypergroup
                        : m->ring.kind == HyperKind::hyperring ? StructKind::hyperring
                                                               : StructKind::hyperfield;
        StructureFile base{bk, m->ring.name, {}, m->ring};
        render_body(os, base, true);
        os << "end\n";
        os << "hyperadd\n";
        render_mask_rows(os, m->hyperadd, m->size, m->size);
        os << "act\n";
        render_int_rows(os, m->act, m->ring.size, m->size);
    } else if (const auto* l = std::get_if<FiniteLattice>(&sf.body)) {
        render_header(os, sf, l->size, as_base);
        os << "leq\n";
        for (int a = 0; a < l->size; ++a) {
            for (int b = 0; b < l->size; ++b) os << (b ? " " : "") << (l->le(a, b) ? 1 : 0);
            os << "\n";
        }
    }
}

}  // namespace detail

inline std::string render_structure(const StructureFile& sf) {
    std::ostringstream os;
    detail::render_body(os, sf, false);
    return os.str();
}

inline std::string structure_digest(const StructureFile& sf) {
    return hex_digest(fnv1a(render_structure(sf)));
}

inline StructureFile wrap_structure(SemiringTable t) {
    return StructureFile{StructKind::semiring, t.name, {}, std::move(t)};
}
inline StructureFile wrap_structure(RingTable t) {
    return StructureFile{StructKind::ring, t.base.name, {}, std::move(t)};
}
inline StructureFile wrap_structure(HyperTable t) {
    StructKind k = t.kind == HyperKind::hypergroup ? StructKind::hypergroup
                   : t.kind == HyperKind::hyperring ? StructKind::hyperring
                                                    : StructKind::hyperfield;
    return StructureFile{k, t.name, {}, std::move(t)};
}
inline StructureFile wrap_structure(FiniteModule m) {
    return StructureFile{StructKind::module, m.name, {}, std::move(m)};
}
inline StructureFile wrap_structure(HModule m) {
    return StructureFile{StructKind::hmodule, m.name, {}, std::move(m)};
}
inline StructureFile wrap_structure(FiniteLattice l) {
    return StructureFile{StructKind::lattice, l.name, {}, std::move(l)};
}

}  // namespace pexa
