#pragma once

// Versioned on-disk container for cluster sets. Enumeration only depends on
// the lattice geometry, so sets are built once and reloaded across runs.
//
// Layout (little-endian):
//   magic "NLCECSET" | u32 version | u8 dim | u8 n_max | u16 pad |
//   u64 record_count |
//   per record: u8 size, size*dim u8 coords, u32 lattice_constant,
//               u32 n_sub, n_sub * { u32 index, u32 multiplicity } |
//   u64 FNV-1a checksum of everything above

#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <string_view>

#include "nlce/clusters.hpp"
#include "nlce/errors.hpp"

namespace nlce {

inline constexpr uint32_t k_cluster_file_version = 1;
inline constexpr char k_cluster_file_magic[8] = {'N', 'L', 'C', 'E', 'C', 'S', 'E', 'T'};

inline uint64_t fnv1a64(std::string_view data, uint64_t seed = 14695981039346656037ULL) {
    uint64_t h = seed;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

namespace detail {

struct ByteWriter {
    std::ofstream out;
    uint64_t hash = 14695981039346656037ULL;

    explicit ByteWriter(const std::string& path) : out(path, std::ios::binary) {
        if (!out) throw io_error("cannot open '" + path + "' for writing");
    }
    void raw(const void* data, size_t n) {
        hash = fnv1a64(std::string_view(static_cast<const char*>(data), n), hash);
        out.write(static_cast<const char*>(data), std::streamsize(n));
    }
    template <class T>
    void value(T v) {
        raw(&v, sizeof v);
    }
};

struct ByteReader {
    std::string data;
    size_t pos = 0;
    size_t limit = 0;  // logical end of the record region (checksum excluded)

    explicit ByteReader(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw io_error("cannot open '" + path + "' for reading");
        data.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    void raw(void* out, size_t n) {
        if (pos + n > limit) throw file_truncated_error("cluster-set file is truncated");
        std::memcpy(out, data.data() + pos, n);
        pos += n;
    }
    template <class T>
    T value() {
        T v{};
        raw(&v, sizeof v);
        return v;
    }
};

}  // namespace detail

inline void save_cluster_set(const ClusterSet& set, const std::string& path) {
    detail::ByteWriter w(path);
    w.raw(k_cluster_file_magic, sizeof k_cluster_file_magic);
    w.value<uint32_t>(k_cluster_file_version);
    w.value<uint8_t>(uint8_t(set.spec.dimension));
    w.value<uint8_t>(uint8_t(set.n_max));
    w.value<uint16_t>(0);
    w.value<uint64_t>(set.records.size());
    for (const ClusterRecord& rec : set.records) {
        w.value<uint8_t>(uint8_t(rec.size()));
        for (const Site& s : rec.shape.sites)
            for (int k = 0; k < set.spec.dimension; ++k) w.value<uint8_t>(uint8_t(s.c[k]));
        w.value<uint32_t>(rec.lattice_constant);
        w.value<uint32_t>(uint32_t(rec.subclusters.size()));
        for (auto [idx, mult] : rec.subclusters) {
            w.value<uint32_t>(idx);
            w.value<uint32_t>(mult);
        }
    }
    w.out.write(reinterpret_cast<const char*>(&w.hash), sizeof w.hash);
    if (!w.out) throw io_error("write failed for '" + path + "'");
}

inline ClusterSet load_cluster_set(const std::string& path) {
    detail::ByteReader r(path);
    if (r.data.size() < sizeof k_cluster_file_magic + 8 + 8)
        throw file_truncated_error("cluster-set file is truncated");
    r.limit = r.data.size() - 8;  // trailing checksum is not record data
    char magic[8];
    r.raw(magic, sizeof magic);
    if (std::memcmp(magic, k_cluster_file_magic, sizeof magic) != 0)
        throw file_format_error("'" + path + "' is not a cluster-set file");
    auto version = r.value<uint32_t>();
    if (version != k_cluster_file_version)
        throw file_version_error("cluster-set format version " + std::to_string(version) +
                                 " unsupported (expected " +
                                 std::to_string(k_cluster_file_version) + ")");
    ClusterSet set;
    set.spec.dimension = r.value<uint8_t>();
    set.spec.validate();
    set.n_max = r.value<uint8_t>();
    r.value<uint16_t>();
    auto count = r.value<uint64_t>();
    if (count > (r.limit - r.pos))  // every record occupies well over one byte
        throw file_truncated_error("cluster-set record count exceeds file size");
    set.records.resize(count);
    set.index.reserve(count);
    int prev_size = 0;
    for (uint64_t i = 0; i < count; ++i) {
        ClusterRecord& rec = set.records[i];
        int size = r.value<uint8_t>();
        if (size < prev_size) throw file_format_error("cluster-set records out of order");
        prev_size = size;
        std::string bytes(size_t(size) * set.spec.dimension, '\0');
        r.raw(bytes.data(), bytes.size());
        rec.shape = decode_shape(bytes, set.spec.dimension);
        rec.lattice_constant = r.value<uint32_t>();
        auto n_sub = r.value<uint32_t>();
        if (n_sub > (r.limit - r.pos) / 8)
            throw file_truncated_error("cluster-set subcluster table exceeds file size");
        rec.subclusters.resize(n_sub);
        for (auto& [idx, mult] : rec.subclusters) {
            idx = r.value<uint32_t>();
            mult = r.value<uint32_t>();
            if (idx >= i) throw file_format_error("subcluster index out of range");
        }
        set.index.emplace(encode_shape(rec.shape, set.spec.dimension), uint32_t(i));
    }
    if (r.pos != r.limit) throw file_format_error("cluster-set file has trailing bytes");
    uint64_t stored_hash;
    std::memcpy(&stored_hash, r.data.data() + r.data.size() - 8, 8);
    uint64_t actual = fnv1a64(std::string_view(r.data.data(), r.data.size() - 8));
    if (stored_hash != actual) throw file_checksum_error("cluster-set checksum mismatch");
    return set;
}

}  // namespace nlce
