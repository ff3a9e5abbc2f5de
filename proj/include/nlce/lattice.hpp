#pragma once

// Hypercubic lattice geometry (chain, square, cubic): sites, nearest-neighbor
// bonds and the point group used to reduce fixed clusters to free ones.
// Geometry is exact integer arithmetic throughout.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "nlce/errors.hpp"

namespace nlce {

struct LatticeSpec {
    int dimension = 2;  // 1 = chain, 2 = square, 3 = cubic

    void validate() const {
        if (dimension < 1 || dimension > 3)
            throw config_error("lattice dimension must be 1, 2 or 3");
    }
    int coordination() const { return 2 * dimension; }
    std::string name() const {
        switch (dimension) {
            case 1: return "chain";
            case 2: return "square";
            case 3: return "cubic";
        }
        return "invalid";
    }
    friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;
};

inline LatticeSpec lattice_from_name(const std::string& name) {
    if (name == "chain") return {1};
    if (name == "square") return {2};
    if (name == "cubic") return {3};
    throw config_error("unknown lattice '" + name + "' (expected chain, square or cubic)");
}

// Integer site coordinates. Unused trailing axes stay 0, so lexicographic
// comparison of the full array matches comparison of the dim-length vector.
struct Site {
    std::array<int, 3> c{0, 0, 0};

    friend auto operator<=>(const Site&, const Site&) = default;
    Site operator+(const Site& o) const { return {{c[0] + o.c[0], c[1] + o.c[1], c[2] + o.c[2]}}; }
    Site operator-(const Site& o) const { return {{c[0] - o.c[0], c[1] - o.c[1], c[2] - o.c[2]}}; }
    int l1_norm() const {
        return std::abs(c[0]) + std::abs(c[1]) + std::abs(c[2]);
    }
    bool is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0; }
    std::string to_string() const {
        return "(" + std::to_string(c[0]) + "," + std::to_string(c[1]) + "," +
               std::to_string(c[2]) + ")";
    }
};

struct SiteHash {
    size_t operator()(const Site& s) const {
        // coords in this library stay well inside 20 bits
        uint64_t k = (uint64_t(uint32_t(s.c[0] + (1 << 20)))) |
                     (uint64_t(uint32_t(s.c[1] + (1 << 20))) << 21) |
                     (uint64_t(uint32_t(s.c[2] + (1 << 20))) << 42);
        k ^= k >> 33;
        k *= 0xff51afd7ed558ccdULL;
        k ^= k >> 33;
        return size_t(k);
    }
};

// Nearest-neighbor pair, stored with the lexicographically smaller endpoint first.
struct Bond {
    Site a, b;
    friend auto operator<=>(const Bond&, const Bond&) = default;
};

// Unit offsets in the fixed order +x, -x, +y, -y, +z, -z.
inline std::vector<Site> neighbor_offsets(const LatticeSpec& spec) {
    spec.validate();
    std::vector<Site> out;
    out.reserve(2 * spec.dimension);
    for (int axis = 0; axis < spec.dimension; ++axis) {
        Site plus{}, minus{};
        plus.c[axis] = 1;
        minus.c[axis] = -1;
        out.push_back(plus);
        out.push_back(minus);
    }
    return out;
}

inline bool sites_adjacent(const LatticeSpec& spec, const Site& a, const Site& b) {
    Site d = a - b;
    if (d.l1_norm() != 1) return false;
    for (int axis = spec.dimension; axis < 3; ++axis)
        if (d.c[axis] != 0) return false;
    return true;
}

// Every nearest-neighbor pair with both endpoints in `sites`, each once,
// sorted by (a, b). Pure set function: independent of input order.
inline std::vector<Bond> bonds_within(const LatticeSpec& spec, std::span<const Site> sites) {
    spec.validate();
    std::unordered_set<Site, SiteHash> present(sites.begin(), sites.end());
    std::vector<Bond> bonds;
    for (const Site& s : sites) {
        for (int axis = 0; axis < spec.dimension; ++axis) {
            Site t = s;
            t.c[axis] += 1;
            if (present.count(t)) bonds.push_back(s < t ? Bond{s, t} : Bond{t, s});
        }
    }
    std::sort(bonds.begin(), bonds.end());
    return bonds;
}

inline bool is_connected(const LatticeSpec& spec, std::span<const Site> sites) {
    spec.validate();
    if (sites.empty()) throw error("empty cluster");
    std::unordered_set<Site, SiteHash> remaining(sites.begin(), sites.end());
    std::vector<Site> stack{sites[0]};
    remaining.erase(sites[0]);
    while (!stack.empty()) {
        Site s = stack.back();
        stack.pop_back();
        for (int axis = 0; axis < spec.dimension; ++axis) {
            for (int step : {+1, -1}) {
                Site t = s;
                t.c[axis] += step;
                auto it = remaining.find(t);
                if (it != remaining.end()) {
                    remaining.erase(it);
                    stack.push_back(t);
                }
            }
        }
    }
    return remaining.empty();
}

// Signed axis permutation; the full set of these forms the hypercubic point group.
struct PgOp {
    std::array<int8_t, 3> perm{0, 1, 2};
    std::array<int8_t, 3> sign{1, 1, 1};

    Site apply(const Site& s) const {
        Site out;
        for (int k = 0; k < 3; ++k) out.c[k] = sign[k] * s.c[perm[k]];
        return out;
    }
    PgOp compose(const PgOp& inner) const {
        // (*this)(inner(x))
        PgOp out;
        for (int k = 0; k < 3; ++k) {
            out.perm[k] = inner.perm[perm[k]];
            out.sign[k] = int8_t(sign[k] * inner.sign[perm[k]]);
        }
        return out;
    }
    friend auto operator<=>(const PgOp&, const PgOp&) = default;
};

// All signed axis permutations of the first `dimension` axes: 2, 8 or 48
// elements. Identity first; deterministic order.
inline const std::vector<PgOp>& point_group(const LatticeSpec& spec) {
    spec.validate();
    static const std::array<std::vector<PgOp>, 3> groups = [] {
        std::array<std::vector<PgOp>, 3> all;
        for (int dim = 1; dim <= 3; ++dim) {
            std::array<int8_t, 3> perm{0, 1, 2};
            std::vector<std::array<int8_t, 3>> perms;
            // permute only the first `dim` axes
            std::vector<int8_t> head(perm.begin(), perm.begin() + dim);
            do {
                std::array<int8_t, 3> p{0, 1, 2};
                for (int k = 0; k < dim; ++k) p[k] = head[k];
                perms.push_back(p);
            } while (std::next_permutation(head.begin(), head.end()));
            std::sort(perms.begin(), perms.end());
            std::vector<PgOp>& ops = all[dim - 1];
            for (const auto& p : perms) {
                for (int mask = 0; mask < (1 << dim); ++mask) {
                    PgOp op;
                    op.perm = p;
                    for (int k = 0; k < dim; ++k) op.sign[k] = (mask >> k) & 1 ? -1 : 1;
                    ops.push_back(op);
                }
            }
            std::sort(ops.begin(), ops.end());
            // move identity to the front
            auto id = std::find(ops.begin(), ops.end(), PgOp{});
            std::rotate(ops.begin(), id, id + 1);
        }
        return all;
    }();
    return groups[spec.dimension - 1];
}

}  // namespace nlce
