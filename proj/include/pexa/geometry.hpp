#pragma once

/// Finite Krasner-hyperfield modules as finite projective incidence
/// geometries: points are the nonzero elements, the line through x and y is
/// (x+y) together with x and y, and lines coincide with the height-2
/// submodules. Sign-hyperfield modules (spherical geometries) are out of
/// scope here.

#include <string>
#include <vector>

#include "core.hpp"
#include "hmod.hpp"
#include "tables.hpp"

namespace pexa {

struct IncidenceGeometry {
    int n_points = 0;            // module elements 1..n_points
    std::vector<Mask> lines;     // masks over module element indices, sorted
    int min_line_size = 0;       // 0 when there are no lines
    bool cc_bound_holds = true;  // every line has at least four points

    bool incident(int point, size_t line) const { return has_bit(lines[line], point); }

    int flag_count() const {
        int total = 0;
        for (Mask l : lines) total += mask_size(l);
        return total;
    }
};

/// A hypergroup is a K-module iff x+x = {0,x} for every nonzero x.
inline bool is_kmodule(const HModule& m) {
    if (!m.ring.same_structure(krasner_hyperfield())) fail_input("is_kmodule: base hyperring is not K");
    for (int x = 1; x < m.size; ++x)
        if (m.sum(x, x) != (bit_of(0) | bit_of(x))) return false;
    return true;
}

/// Points = nonzero elements; lines = the distinct sets l(x,y) = (x+y) u {x,y}.
inline IncidenceGeometry projective_geometry(const HModule& e) {
    if (!is_kmodule(e)) fail_input("projective_geometry: not a K-module");
    IncidenceGeometry g;
    g.n_points = e.size - 1;
    for (int x = 1; x < e.size; ++x)
        for (int y = x + 1; y < e.size; ++y) {
            Mask line = (e.sum(x, y) | bit_of(x) | bit_of(y)) & ~bit_of(0);
            g.lines.push_back(line);
        }
    std::sort(g.lines.begin(), g.lines.end());
    g.lines.erase(std::unique(g.lines.begin(), g.lines.end()), g.lines.end());
    g.min_line_size = 0;
    for (Mask l : g.lines) {
        int sz = mask_size(l);
        if (g.min_line_size == 0 || sz < g.min_line_size) g.min_line_size = sz;
    }
    g.cc_bound_holds = g.min_line_size == 0 || g.min_line_size >= 4;
    return g;
}

namespace detail {

// E_n hyperaddition on {0, a_1..a_n}: a_i + a_i = {0, a_i} and
// a_i + a_j = {a_k : k != i, k != j} for i != j. Unvalidated; n = 3 fails
// associativity.
inline std::vector<Mask> en_hyperaddition(int n) {
    int sz = n + 1;
    std::vector<Mask> hadd(static_cast<size_t>(sz) * sz, 0);
    auto cell = [&](int a, int b) -> Mask& { return hadd[static_cast<size_t>(a) * sz + b]; };
    cell(0, 0) = bit_of(0);
    for (int i = 1; i <= n; ++i) {
        cell(0, i) = cell(i, 0) = bit_of(i);
        cell(i, i) = bit_of(0) | bit_of(i);
        for (int j = 1; j <= n; ++j) {
            if (i == j) continue;
            Mask others = 0;
            for (int k = 1; k <= n; ++k)
                if (k != i && k != j) others |= bit_of(k);
            cell(i, j) = others;
        }
    }
    return hadd;
}

inline HModule en_module_unchecked(int n) {
    int sz = n + 1;
    HyperTable k = krasner_hyperfield();
    std::vector<int> act(static_cast<size_t>(2) * sz, 0);
    for (int i = 0; i < sz; ++i) act[static_cast<size_t>(sz + i)] = i;
    return make_hmodule(std::move(k), "E" + std::to_string(n), sz, en_hyperaddition(n),
                        std::move(act));
}

}  // namespace detail

/// The single-line K-module E_n. Requires n >= 4: E_3 fails hyperaddition
/// associativity, consistently with a 3-point line violating the
/// at-least-four-points bound.
inline HModule en_module(int n) {
    if (n <= 3) {
        if (n == 3) {
            HModule e3 = detail::en_module_unchecked(3);
            AxiomReport rep = check_hmodule_axioms(e3.ring, e3);
            const Violation* v = rep.find("hyperadd_associative");
            std::string w = v ? " (witness " + std::to_string(v->witness[0]) + "," +
                                    std::to_string(v->witness[1]) + "," + std::to_string(v->witness[2]) + ")"
                              : "";
            throw Error(ErrorKind::invalid_input, "E_3 fails hyperaddition associativity" + w);
        }
        fail_input("en_module requires n >= 4");
    }
    if (n + 1 > hard_size_cap) fail_bound("en_module: size exceeds the hard cap");
    return detail::en_module_unchecked(n);
}

/// The K-module of F_p^x-orbits of F_p^(d+1): [u]+[v] = {[g1 u + g2 v]}.
/// Its geometry is the projective space P^d(F_p).
inline HModule projective_space_kmodule(int p, int d) {
    if (p == 2) fail_input("projective_space_kmodule: p = 2 is rejected (x+x would not be {0,x})");
    if (p < 3) fail_input("projective_space_kmodule: p must be a prime >= 3");
    for (int q = 2; q * q <= p; ++q)
        if (p % q == 0) fail_input("projective_space_kmodule: p must be a prime >= 3");
    if (d < 0) fail_input("projective_space_kmodule: d must be nonnegative");
    long long vecs = 1;
    for (int i = 0; i <= d; ++i) {
        vecs *= p;
        if (vecs > 100000) fail_bound("projective_space_kmodule: vector space too large");
    }
    long long n_points = (vecs - 1) / (p - 1);
    if (n_points + 1 > hard_size_cap) fail_bound("projective_space_kmodule: size exceeds the hard cap");

    int dim = d + 1;
    auto decode = [&](long long idx) {
        std::vector<int> v(static_cast<size_t>(dim));
        for (int i = 0; i < dim; ++i) {
            v[static_cast<size_t>(i)] = static_cast<int>(idx % p);
            idx /= p;
        }
        return v;
    };
    auto encode = [&](const std::vector<int>& v) {
        long long idx = 0;
        for (int i = dim - 1; i >= 0; --i) idx = idx * p + v[static_cast<size_t>(i)];
        return idx;
    };
    // orbit representative: scale so the first nonzero coordinate is 1
    auto orbit_rep = [&](const std::vector<int>& v) {
        int lead = -1;
        for (int i = 0; i < dim && lead < 0; ++i)
            if (v[static_cast<size_t>(i)] != 0) lead = v[static_cast<size_t>(i)];
        if (lead < 0) return v;
        int inv = 1;
        for (int c = 1; c < p; ++c)
            if ((lead * c) % p == 1) inv = c;
        std::vector<int> out(static_cast<size_t>(dim));
        for (int i = 0; i < dim; ++i) out[static_cast<size_t>(i)] = (v[static_cast<size_t>(i)] * inv) % p;
        return out;
    };

    std::vector<long long> reps;   // encoded representatives, zero first
    std::vector<int> class_of(static_cast<size_t>(vecs), -1);
    for (long long idx = 0; idx < vecs; ++idx) {
        if (class_of[static_cast<size_t>(idx)] >= 0) continue;
        long long rep = encode(orbit_rep(decode(idx)));
        if (rep == idx) {
            int c = static_cast<int>(reps.size());
            reps.push_back(idx);
            for (int g = 1; g < p; ++g) {
                std::vector<int> v = decode(idx);
                for (int i = 0; i < dim; ++i) v[static_cast<size_t>(i)] = (v[static_cast<size_t>(i)] * g) % p;
                class_of[static_cast<size_t>(encode(v))] = c;
            }
            class_of[static_cast<size_t>(idx)] = c;
        }
    }
    int n = static_cast<int>(reps.size());
    std::vector<Mask> hadd(static_cast<size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Mask cell = 0;
            std::vector<int> u = decode(reps[static_cast<size_t>(i)]), v = decode(reps[static_cast<size_t>(j)]);
            for (int g1 = 1; g1 < p; ++g1)
                for (int g2 = 1; g2 < p; ++g2) {
                    std::vector<int> w(static_cast<size_t>(dim));
                    for (int t = 0; t < dim; ++t)
                        w[static_cast<size_t>(t)] = (g1 * u[static_cast<size_t>(t)] + g2 * v[static_cast<size_t>(t)]) % p;
                    cell |= bit_of(class_of[static_cast<size_t>(encode(w))]);
                }
            hadd[static_cast<size_t>(i) * n + j] = cell;
        }
    HyperTable k = krasner_hyperfield();
    std::vector<int> act(static_cast<size_t>(2) * n, 0);
    for (int i = 0; i < n; ++i) act[static_cast<size_t>(n + i)] = i;
    return make_hmodule(std::move(k), "P" + std::to_string(d) + "(F" + std::to_string(p) + ")", n,
                        std::move(hadd), std::move(act));
}

/// Geometry of E/{0,x}; its points correspond to the lines of E through x.
inline IncidenceGeometry quotient_geometry(const HModule& e, int x) {
    if (x <= 0 || x >= e.size) fail_input("quotient_geometry: x must be a nonzero element");
    if (!is_kmodule(e)) fail_input("quotient_geometry: not a K-module");
    HQuotientResult q = quotient_hmodule(e, bit_of(0) | bit_of(x));
    return projective_geometry(q.quotient);
}

/// Number of incident (point, line) pairs.
inline int flag_count(const HModule& e) { return projective_geometry(e).flag_count(); }

}  // namespace pexa
