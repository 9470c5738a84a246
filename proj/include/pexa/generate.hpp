#pragma once

/// Exhaustive generation of finite structures up to isomorphism, used for
/// Ext middle enumeration and the proto-exact axiom corpora.
///
/// B-modules are generated as finite lattices: every labeled poset on the
/// middle elements is adjoined a bottom and top and kept when every pair has
/// a join and a meet. K-modules are generated by backtracking over the
/// symmetric ternary relation z in x+y with incremental associativity
/// pruning. Other bases fall back to brute-force table enumeration at tiny
/// sizes.

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "core.hpp"
#include "geometry.hpp"
#include "hmod.hpp"
#include "lattice.hpp"
#include "smod.hpp"
#include "tables.hpp"

namespace pexa {

namespace detail {

// All labeled posets on m elements, as up-set masks (up[i] contains i).
inline std::vector<std::vector<Mask>> labeled_posets(int m) {
    std::vector<std::vector<Mask>> cur{{}};
    for (int k = 0; k < m; ++k) {
        std::vector<std::vector<Mask>> next;
        for (const auto& up : cur) {
            // down[i] derived from up
            std::vector<Mask> down(static_cast<size_t>(k), 0);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j)
                    if (has_bit(up[static_cast<size_t>(j)], i)) down[static_cast<size_t>(i)] |= bit_of(j);
            Mask all = full_mask(k);
            // enumerate down-sets D and up-sets U with D*U inside the order
            for (Mask d = 0;; d = (d - all) & all) {
                bool d_ok = true;
                Mask above_all = all;
                for_each_bit(d, [&](int i) {
                    if (down[static_cast<size_t>(i)] & ~d) d_ok = false;
                    above_all &= up[static_cast<size_t>(i)];
                });
                if (d_ok) {
                    Mask u_space = above_all & ~d;
                    for (Mask u = 0;; u = (u - u_space) & u_space) {
                        // U must be an up-set: up[i] subset of U for i in U
                        bool u_ok = true;
                        for_each_bit(u, [&](int i) {
                            if (up[static_cast<size_t>(i)] & ~u) u_ok = false;
                        });
                        if (u_ok) {
                            std::vector<Mask> ext(up.begin(), up.end());
                            for_each_bit(d, [&](int i) { ext[static_cast<size_t>(i)] |= bit_of(k); });
                            ext.push_back(u | bit_of(k));
                            next.push_back(std::move(ext));
                        }
                        if (u == u_space) break;
                    }
                }
                if (d == all) break;
            }
        }
        cur = std::move(next);
    }
    return cur;
}

// Fingerprint preserved by lattice isomorphism.
inline std::vector<int> lattice_fingerprint(const FiniteLattice& l) {
    std::vector<int> per;
    std::vector<int> join_in(static_cast<size_t>(l.size), 0);
    for (int a = 0; a < l.size; ++a)
        for (int b = 0; b < l.size; ++b) ++join_in[static_cast<size_t>(l.join(a, b))];
    for (int x = 0; x < l.size; ++x) {
        per.push_back(mask_size(l.down_set(x)) * 10000 + mask_size(l.up_set(x)) * 100 +
                      join_in[static_cast<size_t>(x)]);
    }
    std::sort(per.begin(), per.end());
    per.push_back(l.size);
    return per;
}

inline std::vector<FiniteLattice> lattices_of_size(int n) {
    std::vector<FiniteLattice> out;
    if (n <= 0) return out;
    if (n == 1) {
        out.push_back(lattice_from_poset("lat1_0", 1, {1}));
        return out;
    }
    int m = n - 2;
    auto posets = labeled_posets(m);
    std::vector<std::vector<int>> prints;
    int counter = 0;
    for (const auto& up : posets) {
        // full order: 0 = bottom, 1..m shifted middles, n-1 = top
        std::vector<Mask> fup(static_cast<size_t>(n), 0);
        fup[0] = full_mask(n);
        fup[static_cast<size_t>(n - 1)] = bit_of(n - 1);
        for (int i = 0; i < m; ++i) {
            Mask u = bit_of(n - 1);
            for_each_bit(up[static_cast<size_t>(i)], [&](int j) { u |= bit_of(j + 1); });
            fup[static_cast<size_t>(i + 1)] = u;
        }
        std::vector<Mask> fdown(static_cast<size_t>(n), 0);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (has_bit(fup[static_cast<size_t>(a)], b)) fdown[static_cast<size_t>(b)] |= bit_of(a);
        // joins and meets must exist for middle pairs
        bool lattice_ok = true;
        std::vector<int> join(static_cast<size_t>(n) * n, -1), meet(static_cast<size_t>(n) * n, -1);
        for (int a = 0; a < n && lattice_ok; ++a)
            for (int b = a; b < n; ++b) {
                Mask common_up = fup[static_cast<size_t>(a)] & fup[static_cast<size_t>(b)];
                int j = -1;
                for_each_bit(common_up, [&](int z) {
                    if (j < 0 && (common_up & ~fup[static_cast<size_t>(z)]) == 0) j = z;
                });
                Mask common_down = fdown[static_cast<size_t>(a)] & fdown[static_cast<size_t>(b)];
                int mt = -1;
                for_each_bit(common_down, [&](int z) {
                    if (mt < 0 && (common_down & ~fdown[static_cast<size_t>(z)]) == 0) mt = z;
                });
                if (j < 0 || mt < 0) {
                    lattice_ok = false;
                    break;
                }
                join[static_cast<size_t>(a) * n + b] = join[static_cast<size_t>(b) * n + a] = j;
                meet[static_cast<size_t>(a) * n + b] = meet[static_cast<size_t>(b) * n + a] = mt;
            }
        if (!lattice_ok) continue;
        std::vector<char> leq(static_cast<size_t>(n) * n, 0);
        for (int a = 0; a < n; ++a)
            for_each_bit(fup[static_cast<size_t>(a)], [&](int b) { leq[static_cast<size_t>(a) * n + b] = 1; });
        FiniteLattice cand{"lat" + std::to_string(n) + "_" + std::to_string(counter), n,
                           std::move(leq), std::move(join), std::move(meet), 0, n - 1};
        std::vector<int> fp = lattice_fingerprint(cand);
        bool fresh = true;
        for (size_t s = 0; s < out.size() && fresh; ++s)
            if (prints[s] == fp && find_lattice_isomorphism(out[s], cand)) fresh = false;
        if (fresh) {
            cand.name = "lat" + std::to_string(n) + "_" + std::to_string(counter);
            prints.push_back(std::move(fp));
            out.push_back(std::move(cand));
            ++counter;
        }
    }
    return out;
}

}  // namespace detail

/// All finite lattices with 1..max_size elements, up to isomorphism,
/// ordered by size then discovery. Results are cached.
inline const std::vector<FiniteLattice>& generate_lattices(int max_size) {
    if (max_size > 9) fail_bound("generate_lattices: sizes beyond 9 are not enumerable here");
    static std::mutex mu;
    static std::map<int, std::vector<FiniteLattice>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(max_size);
    if (it != cache.end()) return it->second;
    std::vector<FiniteLattice> all;
    for (int n = 1; n <= max_size; ++n) {
        auto part = detail::lattices_of_size(n);
        for (auto& l : part) all.push_back(std::move(l));
    }
    return cache.emplace(max_size, std::move(all)).first->second;
}

/// All finite B-modules up to isomorphism, via the lattice equivalence.
inline std::vector<FiniteModule> generate_bmodules(int max_size) {
    const auto& lats = generate_lattices(max_size);
    std::vector<FiniteModule> out;
    out.reserve(lats.size());
    for (const auto& l : lats) {
        FiniteModule m = compact_elements_module(l);
        m.name = "bmod" + std::to_string(m.size) + "_" + std::to_string(out.size());
        out.push_back(std::move(m));
    }
    return out;
}

// ---------------------------------------------------------------------------
// K-modules

namespace detail {

// Backtracking over pair sums between distinct points. For nonzero x != y,
// x+y excludes 0, x and y (forced by unique negatives and x+x = {0,x}), so
// the structure is a symmetric ternary relation on points.
class KmoduleSearch {
public:
    explicit KmoduleSearch(int n_points) : p_(n_points) {
        pairs_.reserve(static_cast<size_t>(p_) * (p_ - 1) / 2);
        for (int x = 1; x <= p_; ++x)
            for (int y = x + 1; y <= p_; ++y) pairs_.push_back({x, y});
        sums_.assign(static_cast<size_t>(p_ + 1) * (p_ + 1), 0);
        assigned_.assign(static_cast<size_t>(p_ + 1) * (p_ + 1), false);
    }

    std::vector<std::vector<Mask>> run() {
        results_.clear();
        go(0);
        return results_;
    }

private:
    Mask& sum_ref(int a, int b) { return sums_[static_cast<size_t>(a) * (p_ + 1) + b]; }

    // sum as a mask of module indices; known for 0-sums, diagonals and
    // assigned pairs
    bool sum_known(int a, int b, Mask* out) const {
        if (a > b) std::swap(a, b);
        if (a == 0) {
            *out = bit_of(b);
            return true;
        }
        if (a == b) {
            *out = bit_of(0) | bit_of(a);
            return true;
        }
        if (!assigned_[static_cast<size_t>(a) * (p_ + 1) + b]) return false;
        *out = sums_[static_cast<size_t>(a) * (p_ + 1) + b];
        return true;
    }

    bool associativity_consistent() const {
        int n = p_ + 1;
        for (int a = 0; a < n; ++a)
            for (int b = a; b < n; ++b) {
                Mask ab;
                if (!sum_known(a, b, &ab)) continue;
                for (int c = 0; c < n; ++c) {
                    Mask lhs = 0, rhs = 0, bc;
                    bool lhs_known = true, rhs_known = true;
                    for_each_bit(ab, [&](int z) {
                        Mask zc;
                        if (!sum_known(z, c, &zc))
                            lhs_known = false;
                        else
                            lhs |= zc;
                    });
                    if (!sum_known(b, c, &bc))
                        rhs_known = false;
                    else
                        for_each_bit(bc, [&](int z) {
                            Mask az;
                            if (!sum_known(a, z, &az))
                                rhs_known = false;
                            else
                                rhs |= az;
                        });
                    if (lhs_known && rhs_known && lhs != rhs) return false;
                }
            }
        return true;
    }

    void go(size_t t) {
        if (t == pairs_.size()) {
            std::vector<Mask> hadd(static_cast<size_t>(p_ + 1) * (p_ + 1), 0);
            for (int a = 0; a <= p_; ++a)
                for (int b = 0; b <= p_; ++b) {
                    Mask s;
                    sum_known(std::min(a, b), std::max(a, b), &s);
                    hadd[static_cast<size_t>(a) * (p_ + 1) + b] = s;
                }
            results_.push_back(std::move(hadd));
            return;
        }
        auto [x, y] = pairs_[t];
        // bits below y are forced by earlier pairs (symmetry of the relation)
        Mask forced = 0;
        for (int z = 1; z < y; ++z) {
            if (z == x) continue;
            int a = std::min(z, x), b = std::max(z, x);
            if (has_bit(sums_[static_cast<size_t>(a) * (p_ + 1) + b], y)) forced |= bit_of(z);
        }
        Mask free_space = 0;
        for (int z = y + 1; z <= p_; ++z) free_space |= bit_of(z);
        for (Mask f = 0;; f = (f - free_space) & free_space) {
            Mask s = forced | f;
            if (s != 0) {
                sum_ref(x, y) = s;
                assigned_[static_cast<size_t>(x) * (p_ + 1) + y] = true;
                if (associativity_consistent()) go(t + 1);
                assigned_[static_cast<size_t>(x) * (p_ + 1) + y] = false;
            }
            if (f == free_space) break;
        }
    }

    int p_;
    std::vector<std::pair<int, int>> pairs_;
    std::vector<Mask> sums_;
    std::vector<char> assigned_;
    std::vector<std::vector<Mask>> results_;
};

inline std::vector<HModule> kmodules_of_size(int n) {
    std::vector<HModule> out;
    HyperTable k = krasner_hyperfield();
    if (n == 1) {
        out.push_back(zero_hmodule(k));
        return out;
    }
    if (n == 2) {
        out.push_back(hmodule_from_hyperring(k));
        return out;
    }
    KmoduleSearch search(n - 1);
    auto tables = search.run();
    int counter = 0;
    std::vector<HModule> kept;
    for (auto& hadd : tables) {
        std::vector<int> act(static_cast<size_t>(2) * n, 0);
        for (int i = 0; i < n; ++i) act[static_cast<size_t>(n + i)] = i;
        HModule cand = make_hmodule(k, "kmod" + std::to_string(n) + "_" + std::to_string(counter),
                                    n, std::move(hadd), std::move(act));
        if (!check_hmodule_axioms(k, cand).valid()) continue;
        bool fresh = true;
        for (const auto& seen : kept)
            if (find_h_isomorphism(seen, cand)) {
                fresh = false;
                break;
            }
        if (fresh) {
            cand.name = "kmod" + std::to_string(n) + "_" + std::to_string(counter);
            kept.push_back(std::move(cand));
            ++counter;
        }
    }
    return kept;
}

}  // namespace detail

/// All finite K-modules with 1..max_size elements up to isomorphism.
inline const std::vector<HModule>& generate_kmodules(int max_size) {
    if (max_size > 9) fail_bound("generate_kmodules: sizes beyond 9 are not enumerable here");
    static std::mutex mu;
    static std::map<int, std::vector<HModule>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(max_size);
    if (it != cache.end()) return it->second;
    std::vector<HModule> all;
    for (int n = 1; n <= max_size; ++n) {
        auto part = detail::kmodules_of_size(n);
        for (auto& m : part) all.push_back(std::move(m));
    }
    return cache.emplace(max_size, std::move(all)).first->second;
}

// ---------------------------------------------------------------------------
// Brute-force fallbacks for arbitrary bases (tiny sizes only)

/// All R-modules with 1..max_size elements up to isomorphism, by direct
/// enumeration of addition and action tables.
inline std::vector<FiniteModule> generate_modules_brute(const SemiringTable& r, int max_size) {
    if (max_size > 4 || r.size > 4)
        fail_bound("generate_modules_brute: table enumeration is infeasible at this size");
    std::vector<FiniteModule> out;
    for (int n = 1; n <= max_size; ++n) {
        std::vector<FiniteModule> kept;
        // addition: commutative monoid tables with identity 0
        std::vector<int> add(static_cast<size_t>(n) * n, 0);
        for (int a = 0; a < n; ++a) {
            add[static_cast<size_t>(a) * n] = a;
            add[static_cast<size_t>(a)] = a;
        }
        std::vector<std::pair<int, int>> cells;
        for (int a = 1; a < n; ++a)
            for (int b = a; b < n; ++b) cells.push_back({a, b});
        std::function<void(size_t)> fill_act;
        std::function<void(size_t)> fill_add = [&](size_t ci) {
            if (ci == cells.size()) {
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b)
                        for (int c = 0; c < n; ++c)
                            if (add[static_cast<size_t>(add[static_cast<size_t>(a) * n + b]) * n + c] !=
                                add[static_cast<size_t>(a) * n + add[static_cast<size_t>(b) * n + c]])
                                return;
                fill_act(0);
                return;
            }
            auto [a, b] = cells[ci];
            for (int v = 0; v < n; ++v) {
                add[static_cast<size_t>(a) * n + b] = v;
                add[static_cast<size_t>(b) * n + a] = v;
                fill_add(ci + 1);
            }
        };
        // action rows: r=0 forced to 0, r=1 forced to identity
        std::vector<int> act(static_cast<size_t>(r.size) * n, 0);
        std::vector<std::pair<int, int>> acells;
        for (int s = 0; s < r.size; ++s) {
            if (s == 0) continue;
            if (s == r.one()) {
                for (int m = 0; m < n; ++m) act[static_cast<size_t>(s) * n + m] = m;
                continue;
            }
            for (int m = 1; m < n; ++m) acells.push_back({s, m});
        }
        fill_act = [&](size_t ci) {
            if (ci == acells.size()) {
                FiniteModule cand = make_module(r, "gen", n, add, act);
                if (!check_module_axioms(r, cand).valid()) return;
                for (const auto& seen : kept)
                    if (find_isomorphism(seen, cand)) return;
                cand.name = "mod" + std::to_string(n) + "_" + std::to_string(kept.size());
                kept.push_back(std::move(cand));
                return;
            }
            auto [s, m] = acells[ci];
            for (int v = 0; v < n; ++v) {
                act[static_cast<size_t>(s) * n + m] = v;
                fill_act(ci + 1);
            }
        };
        fill_add(0);
        for (auto& m : kept) out.push_back(std::move(m));
    }
    return out;
}

/// All H-modules with 1..max_size elements up to isomorphism, by direct
/// enumeration of hyperaddition and action tables.
inline std::vector<HModule> generate_hmodules_brute(const HyperTable& h, int max_size) {
    if (max_size > 3 || h.size > 3)
        fail_bound("generate_hmodules_brute: table enumeration is infeasible at this size");
    std::vector<HModule> out;
    for (int n = 1; n <= max_size; ++n) {
        std::vector<HModule> kept;
        std::vector<Mask> hadd(static_cast<size_t>(n) * n, 0);
        for (int a = 0; a < n; ++a) {
            hadd[static_cast<size_t>(a) * n] = bit_of(a);
            hadd[static_cast<size_t>(a)] = bit_of(a);
        }
        std::vector<std::pair<int, int>> cells;
        for (int a = 1; a < n; ++a)
            for (int b = a; b < n; ++b) cells.push_back({a, b});
        std::vector<int> act(static_cast<size_t>(h.size) * n, 0);
        std::vector<std::pair<int, int>> acells;
        for (int s = 0; s < h.size; ++s) {
            if (s == 0) continue;
            if (s == h.one()) {
                for (int m = 0; m < n; ++m) act[static_cast<size_t>(s) * n + m] = m;
                continue;
            }
            for (int m = 1; m < n; ++m) acells.push_back({s, m});
        }
        std::function<void(size_t)> fill_act = [&](size_t ci) {
            if (ci == acells.size()) {
                HModule cand = make_hmodule(h, "gen", n, hadd, act);
                if (!check_hmodule_axioms(h, cand).valid()) return;
                for (const auto& seen : kept)
                    if (find_h_isomorphism(seen, cand)) return;
                cand.name = "hmod" + std::to_string(n) + "_" + std::to_string(kept.size());
                kept.push_back(std::move(cand));
                return;
            }
            auto [s, m] = acells[ci];
            for (int v = 0; v < n; ++v) {
                act[static_cast<size_t>(s) * n + m] = v;
                fill_act(ci + 1);
            }
        };
        std::function<void(size_t)> fill = [&](size_t ci) {
            if (ci == cells.size()) {
                fill_act(0);
                return;
            }
            auto [a, b] = cells[ci];
            for (Mask v = 1; v <= full_mask(n); ++v) {
                hadd[static_cast<size_t>(a) * n + b] = v;
                hadd[static_cast<size_t>(b) * n + a] = v;
                fill(ci + 1);
            }
        };
        fill(0);
        for (auto& m : kept) out.push_back(std::move(m));
    }
    return out;
}

}  // namespace pexa
