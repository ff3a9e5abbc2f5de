#include "nlce/cluster_io.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace nlce;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void spit(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    out.write(bytes.data(), std::streamsize(bytes.size()));
}

}  // namespace

TEST(ClusterIo, RoundTripIsIdentity) {
    LatticeSpec sq{2};
    ClusterSet original = build_cluster_set(sq, 6);
    std::string path = temp_path("nlce_roundtrip.clusters");
    save_cluster_set(original, path);
    ClusterSet loaded = load_cluster_set(path);

    EXPECT_EQ(loaded.spec, original.spec);
    EXPECT_EQ(loaded.n_max, original.n_max);
    ASSERT_EQ(loaded.records.size(), original.records.size());
    for (size_t i = 0; i < original.records.size(); ++i) {
        EXPECT_EQ(loaded.records[i].shape, original.records[i].shape);
        EXPECT_EQ(loaded.records[i].lattice_constant, original.records[i].lattice_constant);
        EXPECT_EQ(loaded.records[i].subclusters, original.records[i].subclusters);
    }
    std::remove(path.c_str());
}

TEST(ClusterIo, DistinctFailureModes) {
    LatticeSpec sq{2};
    ClusterSet set = build_cluster_set(sq, 4);
    std::string path = temp_path("nlce_corrupt.clusters");
    save_cluster_set(set, path);
    const std::string good = slurp(path);

    {  // wrong magic
        std::string bad = good;
        bad[0] = 'X';
        spit(path, bad);
        EXPECT_THROW(load_cluster_set(path), file_format_error);
    }
    {  // unsupported version
        std::string bad = good;
        bad[8] = char(99);
        spit(path, bad);
        EXPECT_THROW(load_cluster_set(path), file_version_error);
    }
    {  // truncated mid-records
        std::string bad = good.substr(0, good.size() / 2);
        spit(path, bad);
        EXPECT_THROW(load_cluster_set(path), file_truncated_error);
    }
    {  // flipped coordinate byte: parse survives, checksum must not
        std::string bad = good;
        bad[25] = char(bad[25] ^ 0x07);  // first record's coordinate region
        spit(path, bad);
        EXPECT_THROW(load_cluster_set(path), file_checksum_error);
    }
    std::remove(path.c_str());
}

TEST(ClusterIo, CompatibilityChecks) {
    LatticeSpec sq{2};
    ClusterSet set = build_cluster_set(sq, 4);
    EXPECT_NO_THROW(set.require_covers(sq, 4));
    EXPECT_NO_THROW(set.require_covers(sq, 3));
    EXPECT_THROW(set.require_covers(LatticeSpec{3}, 3), cluster_set_mismatch_error);
    EXPECT_THROW(set.require_covers(sq, 5), cluster_set_mismatch_error);
}
