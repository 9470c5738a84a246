#pragma once

/// Shared primitives: element subsets as bitmasks, error kinds, axiom
/// reports, and the deterministic worker fan-out helper.

#include <bit>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace pexa {

// Subsets of structure elements are bitmasks over indices 0..size-1.
using Mask = std::uint64_t;

// Bitmask width; nothing in the library can exceed it.
inline constexpr int hard_size_cap = 64;

// Soft caps, overridable via the CLI's PEXA_MAX_SIZE.
struct Limits {
    int table_cap = 16;    // semirings, rings, hyperrings
    int module_cap = 32;   // modules, hypermodules, lattices
    int ext_middle_cap = 6;

    void override_with(int cap) {
        if (cap < 1 || cap > hard_size_cap)
            throw std::invalid_argument("size cap out of range");
        table_cap = cap;
        module_cap = cap;
    }
};

enum class ErrorKind {
    invalid_input,   // malformed tables, precondition failures, parse errors
    axiom_failure,   // a structure failed its axiom checker
    bound_exceeded,  // an internal enumeration bound was hit
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail_input(const std::string& msg) { throw Error(ErrorKind::invalid_input, msg); }
[[noreturn]] inline void fail_bound(const std::string& msg) { throw Error(ErrorKind::bound_exceeded, msg); }

inline constexpr Mask bit_of(int i) { return Mask{1} << i; }
inline constexpr bool has_bit(Mask m, int i) { return (m >> i) & 1; }
inline constexpr Mask full_mask(int size) { return size >= hard_size_cap ? ~Mask{0} : (Mask{1} << size) - 1; }
inline int mask_size(Mask m) { return std::popcount(m); }

template <typename F>
void for_each_bit(Mask m, F&& f) {
    while (m) {
        int i = std::countr_zero(m);
        f(i);
        m &= m - 1;
    }
}

inline std::vector<int> mask_elements(Mask m) {
    std::vector<int> out;
    out.reserve(static_cast<size_t>(mask_size(m)));
    for_each_bit(m, [&](int i) { out.push_back(i); });
    return out;
}

// Classification of a morphism against the distinguished classes of its
// home category.
enum class MorphismClass { iso, admissible_mono, admissible_epi, neither };

inline const char* to_string(MorphismClass c) {
    switch (c) {
        case MorphismClass::iso: return "iso";
        case MorphismClass::admissible_mono: return "admissible_mono";
        case MorphismClass::admissible_epi: return "admissible_epi";
        default: return "neither";
    }
}

// One axiom violation: the axiom's name plus the lexicographically first
// witness tuple of element indices that fails it.
struct Violation {
    std::string axiom;
    std::vector<int> witness;

    bool operator==(const Violation&) const = default;
};

struct AxiomReport {
    std::vector<Violation> violations;

    bool valid() const { return violations.empty(); }

    const Violation* find(const std::string& axiom) const {
        for (const auto& v : violations)
            if (v.axiom == axiom) return &v;
        return nullptr;
    }
};

// FNV-1a, used for cache-keyable digests of canonical structure bytes.
inline std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hex_digest(std::uint64_t h) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

// Runs f(i) for i in [0, n) across `workers` threads. Tasks are indexed so
// results land in caller-owned slots; the merge order never depends on the
// worker count.
template <typename F>
void parallel_for(int n, int workers, F&& f) {
    if (n <= 0) return;
    if (workers <= 1 || n == 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    workers = std::min(workers, n);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (int i = w; i < n; i += workers) f(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace pexa
