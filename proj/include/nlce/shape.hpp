#pragma once

// Translation-normalized cluster shapes and their point-group canonical form.
// A shape's canonical key is the lexicographically minimal byte encoding over
// all point-group images; two shapes share a key iff they are related by a
// point-group element plus a translation.

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "nlce/errors.hpp"
#include "nlce/lattice.hpp"

namespace nlce {

struct ClusterShape {
    // sorted lexicographically; componentwise minimum is the origin
    std::vector<Site> sites;

    int size() const { return int(sites.size()); }
    friend auto operator<=>(const ClusterShape&, const ClusterShape&) = default;

    static ClusterShape normalized(std::vector<Site> raw) {
        if (raw.empty()) throw error("empty cluster");
        Site min{{std::numeric_limits<int>::max(), std::numeric_limits<int>::max(),
                  std::numeric_limits<int>::max()}};
        for (const Site& s : raw)
            for (int k = 0; k < 3; ++k) min.c[k] = std::min(min.c[k], s.c[k]);
        for (Site& s : raw) s = s - min;
        std::sort(raw.begin(), raw.end());
        if (std::adjacent_find(raw.begin(), raw.end()) != raw.end())
            throw error("duplicate site in cluster");
        return ClusterShape{std::move(raw)};
    }
};

struct CanonicalKey {
    std::string bytes;
    friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
};

// One byte per coordinate, `dim` bytes per site, sites in sorted order.
// Valid for normalized shapes (coordinates are small and nonnegative).
inline std::string encode_shape(const ClusterShape& shape, int dim) {
    std::string bytes;
    bytes.reserve(shape.sites.size() * size_t(dim));
    for (const Site& s : shape.sites)
        for (int k = 0; k < dim; ++k) {
            if (s.c[k] < 0 || s.c[k] > 255) throw error("shape coordinate out of encoding range");
            bytes.push_back(char(uint8_t(s.c[k])));
        }
    return bytes;
}

inline ClusterShape decode_shape(const std::string& bytes, int dim) {
    if (dim < 1 || dim > 3 || bytes.size() % size_t(dim) != 0)
        throw error("malformed shape encoding");
    std::vector<Site> sites(bytes.size() / size_t(dim));
    for (size_t i = 0; i < sites.size(); ++i)
        for (int k = 0; k < dim; ++k) sites[i].c[k] = uint8_t(bytes[i * size_t(dim) + k]);
    return ClusterShape{std::move(sites)};
}

struct CanonicalInfo {
    CanonicalKey key;
    ClusterShape representative;  // decoded minimal image
    int orbit_size = 0;           // distinct fixed orientations = lattice constant
};

inline CanonicalInfo canonicalize(const LatticeSpec& spec, const ClusterShape& shape) {
    const auto& group = point_group(spec);
    std::vector<std::string> images;
    images.reserve(group.size());
    std::vector<Site> transformed(shape.sites.size());
    for (const PgOp& g : group) {
        for (size_t i = 0; i < shape.sites.size(); ++i) transformed[i] = g.apply(shape.sites[i]);
        images.push_back(encode_shape(ClusterShape::normalized(transformed), spec.dimension));
    }
    std::sort(images.begin(), images.end());
    CanonicalInfo info;
    info.key = CanonicalKey{images.front()};
    info.orbit_size = int(std::unique(images.begin(), images.end()) - images.begin());
    info.representative = decode_shape(info.key.bytes, spec.dimension);
    return info;
}

inline CanonicalKey canonical_key(const LatticeSpec& spec, const ClusterShape& shape) {
    return canonicalize(spec, shape).key;
}

}  // namespace nlce
