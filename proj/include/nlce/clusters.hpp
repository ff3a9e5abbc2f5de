#pragma once

// NLCE cluster bookkeeping: free (symmetry-distinct) cluster records with
// lattice constants and exact subcluster multiplicity tables, plus the
// doubly-rooted cluster sets used for pair correlators.

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "nlce/enumerate.hpp"
#include "nlce/errors.hpp"
#include "nlce/lattice.hpp"
#include "nlce/parallel.hpp"
#include "nlce/shape.hpp"

namespace nlce {

struct ClusterRecord {
    ClusterShape shape;             // canonical representative
    uint32_t lattice_constant = 0;  // fixed orientations per lattice site
    // (record index, multiplicity M(s,c)) for every free shape s occurring as a
    // connected proper subcluster; indices always refer to earlier records
    std::vector<std::pair<uint32_t, uint32_t>> subclusters;

    int size() const { return shape.size(); }
};

struct ClusterSet {
    LatticeSpec spec;
    int n_max = 0;
    std::vector<ClusterRecord> records;  // sorted by (size, canonical key bytes)
    std::unordered_map<std::string, uint32_t> index;

    std::optional<uint32_t> find(const CanonicalKey& key) const {
        auto it = index.find(key.bytes);
        if (it == index.end()) return std::nullopt;
        return it->second;
    }
    uint32_t require(const CanonicalKey& key) const {
        auto idx = find(key);
        if (!idx) throw closure_error("subcluster key missing from record set: " + key_hex(key));
        return *idx;
    }
    void require_covers(const LatticeSpec& wanted, int order) const {
        if (!(spec == wanted))
            throw cluster_set_mismatch_error("cluster set is for lattice '" + spec.name() +
                                             "', requested '" + wanted.name() + "'");
        if (order > n_max)
            throw cluster_set_mismatch_error("cluster set covers n_max=" + std::to_string(n_max) +
                                             ", requested order " + std::to_string(order));
    }
    static std::string key_hex(const CanonicalKey& key) {
        static const char* digits = "0123456789abcdef";
        std::string out;
        for (unsigned char b : key.bytes) {
            out.push_back(digits[b >> 4]);
            out.push_back(digits[b & 15]);
        }
        return out;
    }
};

namespace detail {

// Bitmask adjacency within a fixed site list.
inline std::vector<uint32_t> adjacency_masks(const LatticeSpec& spec,
                                             std::span<const Site> sites) {
    size_t n = sites.size();
    if (n > 31) throw resource_error("cluster too large for subset enumeration");
    std::vector<uint32_t> adj(n, 0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (sites_adjacent(spec, sites[i], sites[j])) {
                adj[i] |= 1u << j;
                adj[j] |= 1u << i;
            }
    return adj;
}

inline bool mask_connected(std::span<const uint32_t> adj, uint32_t m) {
    if (m == 0) return false;
    uint32_t visited = m & (~m + 1);  // lowest set bit
    for (;;) {
        uint32_t next = visited;
        uint32_t frontier = visited;
        while (frontier) {
            int i = std::countr_zero(frontier);
            frontier &= frontier - 1;
            next |= adj[size_t(i)] & m;
        }
        if (next == visited) break;
        visited = next;
    }
    return visited == m;
}

template <class Fn>
void visit_connected_proper_subsets(const LatticeSpec& spec, std::span<const Site> sites,
                                    Fn&& fn) {
    const auto adj = adjacency_masks(spec, sites);
    const uint32_t full = uint32_t((uint64_t(1) << sites.size()) - 1);
    std::vector<Site> subset;
    for (uint32_t m = 1; m < full; ++m) {
        if (!mask_connected(adj, m)) continue;
        subset.clear();
        uint32_t bits = m;
        while (bits) {
            int i = std::countr_zero(bits);
            bits &= bits - 1;
            subset.push_back(sites[size_t(i)]);
        }
        fn(m, subset);
    }
}

}  // namespace detail

// Exact multiplicities M(s,c): every connected proper subset of the shape,
// grouped by free canonical key.
inline std::map<CanonicalKey, uint32_t> subcluster_multiplicities(const LatticeSpec& spec,
                                                                  const ClusterShape& shape) {
    std::map<CanonicalKey, uint32_t> table;
    detail::visit_connected_proper_subsets(
        spec, shape.sites, [&](uint32_t, const std::vector<Site>& subset) {
            table[canonical_key(spec, ClusterShape::normalized(subset))] += 1;
        });
    return table;
}

inline uint64_t connected_proper_subset_count(const LatticeSpec& spec,
                                              const ClusterShape& shape) {
    uint64_t count = 0;
    detail::visit_connected_proper_subsets(spec, shape.sites,
                                           [&](uint32_t, const std::vector<Site>&) { ++count; });
    return count;
}

namespace detail {

struct FreeAccumulator {
    // canonical key -> orbit hit count; every fixed shape hits its key once,
    // so the count is the lattice constant
    std::unordered_map<std::string, uint32_t> hits;

    void add(const LatticeSpec& spec, const ClusterShape& fixed_shape) {
        hits[canonical_key(spec, fixed_shape).bytes] += 1;
    }

    ClusterSet finish(const LatticeSpec& spec, int n_max, unsigned workers) {
        ClusterSet set;
        set.spec = spec;
        set.n_max = n_max;
        std::vector<std::pair<std::string, uint32_t>> keyed(hits.begin(), hits.end());
        std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
            if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
            return a.first < b.first;
        });
        set.records.resize(keyed.size());
        set.index.reserve(keyed.size());
        for (uint32_t i = 0; i < keyed.size(); ++i) {
            set.records[i].shape = decode_shape(keyed[i].first, spec.dimension);
            set.records[i].lattice_constant = keyed[i].second;
            set.index.emplace(keyed[i].first, i);
        }
        parallel_for(set.records.size(), workers, [&](size_t i) {
            ClusterRecord& rec = set.records[i];
            std::unordered_map<uint32_t, uint32_t> counts;
            detail::visit_connected_proper_subsets(
                spec, rec.shape.sites, [&](uint32_t, const std::vector<Site>& subset) {
                    counts[set.require(canonical_key(
                        spec, ClusterShape::normalized(subset)))] += 1;
                });
            rec.subclusters.assign(counts.begin(), counts.end());
            std::sort(rec.subclusters.begin(), rec.subclusters.end());
        });
        return set;
    }
};

}  // namespace detail

// Group a fixed enumeration into free records with lattice constants and
// multiplicity tables; records sorted by (size, canonical key).
inline ClusterSet reduce_to_free(const LatticeSpec& spec,
                                 const std::map<int, std::vector<ClusterShape>>& fixed,
                                 unsigned workers = 1) {
    int n_max = 0;
    detail::FreeAccumulator acc;
    for (const auto& [size, shapes] : fixed) {
        n_max = std::max(n_max, size);
        for (const ClusterShape& s : shapes) acc.add(spec, s);
    }
    return acc.finish(spec, n_max, workers);
}

// Production path: stream the enumeration instead of materializing it.
inline ClusterSet build_cluster_set(const LatticeSpec& spec, int n_max, unsigned workers = 1) {
    detail::FreeAccumulator acc;
    enumerate_fixed_visit(spec, n_max,
                          [&](ClusterShape&& shape) { acc.add(spec, shape); });
    return acc.finish(spec, n_max, workers);
}

// -------------------------------------------------------------------------
// Doubly-rooted clusters for pair correlators. Root positions are pinned
// (no translation quotient, no point-group quotient).

struct PairClusterRecord {
    std::vector<Site> sites;  // absolute positions, sorted; contains origin and r
    // indices of every connected proper subset that keeps both roots
    std::vector<uint32_t> rooted_subclusters;

    int size() const { return int(sites.size()); }
};

struct PairClusterSet {
    LatticeSpec spec;
    Site r;
    int n_max = 0;
    std::vector<PairClusterRecord> records;  // sorted by (size, site list)
    std::unordered_map<std::string, uint32_t> index;

    // smallest cluster containing both roots is a monotone path
    int min_size() const { return r.l1_norm() + 1; }

    static std::string encode_absolute(std::span<const Site> sites, int dim, int offset) {
        std::string bytes;
        bytes.reserve(sites.size() * size_t(dim));
        for (const Site& s : sites)
            for (int k = 0; k < dim; ++k) {
                int v = s.c[k] + offset;
                if (v < 0 || v > 255) throw error("pair site out of encoding range");
                bytes.push_back(char(uint8_t(v)));
            }
        return bytes;
    }
    int encoding_offset() const { return n_max + 1; }
};

inline PairClusterSet build_pair_cluster_set(const LatticeSpec& spec, const Site& r, int n_max,
                                             unsigned workers = 1) {
    PairClusterSet set;
    set.spec = spec;
    set.r = r;
    set.n_max = n_max;
    auto sorted_lists = enumerate_pair_fixed(spec, r, n_max);
    set.records.resize(sorted_lists.size());
    const int off = set.encoding_offset();
    for (uint32_t i = 0; i < sorted_lists.size(); ++i) {
        set.records[i].sites = std::move(sorted_lists[i]);
        set.index.emplace(
            PairClusterSet::encode_absolute(set.records[i].sites, spec.dimension, off), i);
    }
    parallel_for(set.records.size(), workers, [&](size_t i) {
        PairClusterRecord& rec = set.records[i];
        size_t root0 = 0, rootr = 0;
        bool found0 = false, foundr = false;
        for (size_t k = 0; k < rec.sites.size(); ++k) {
            if (rec.sites[k].is_zero()) { root0 = k; found0 = true; }
            if (rec.sites[k] == r) { rootr = k; foundr = true; }
        }
        if (!found0 || !foundr) throw error("pair cluster lost a root");
        const uint32_t root_mask = (1u << root0) | (1u << rootr);
        detail::visit_connected_proper_subsets(
            spec, rec.sites, [&](uint32_t mask, const std::vector<Site>& subset) {
                if ((mask & root_mask) != root_mask) return;
                auto it = set.index.find(
                    PairClusterSet::encode_absolute(subset, spec.dimension, off));
                if (it == set.index.end())
                    throw closure_error("rooted subcluster missing from pair set");
                rec.rooted_subclusters.push_back(it->second);
            });
        std::sort(rec.rooted_subclusters.begin(), rec.rooted_subclusters.end());
    });
    return set;
}

}  // namespace nlce
