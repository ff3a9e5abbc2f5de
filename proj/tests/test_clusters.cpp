#include "nlce/clusters.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace nlce;

namespace {

ClusterShape shape_of(std::initializer_list<std::array<int, 3>> coords) {
    std::vector<Site> sites;
    for (const auto& c : coords) sites.push_back(Site{c});
    return ClusterShape::normalized(std::move(sites));
}

const ClusterShape kSingleton = shape_of({{0, 0, 0}});
const ClusterShape kDominoH = shape_of({{0, 0, 0}, {1, 0, 0}});
const ClusterShape kDominoV = shape_of({{0, 0, 0}, {0, 1, 0}});
const ClusterShape kStraight3 = shape_of({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}});
const ClusterShape kEll = shape_of({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}});
const ClusterShape kBlock = shape_of({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}});

}  // namespace

TEST(Enumerate, SquareFixedCountsAgainstBothOracles) {
    LatticeSpec sq{2};
    auto fixed = enumerate_fixed(sq, 6);
    const size_t expected[] = {1, 2, 6, 19, 63, 216};  // frozen from the oracles below
    auto closure = oracles::closure_fixed(sq, 6);
    for (int n = 1; n <= 6; ++n) {
        ASSERT_EQ(fixed[n].size(), expected[n - 1]) << "size " << n;
        auto bbox = oracles::bbox_fixed(sq, n);
        EXPECT_EQ(bbox.size(), expected[n - 1]) << "bbox oracle size " << n;
        EXPECT_EQ(closure[size_t(n)].size(), expected[n - 1]) << "closure oracle size " << n;
        std::set<ClusterShape> ours(fixed[n].begin(), fixed[n].end());
        EXPECT_EQ(ours, bbox) << "shape sets differ at size " << n;
    }
}

TEST(Enumerate, CubicAndChainFixedCounts) {
    LatticeSpec cubic{3};
    auto fixed = enumerate_fixed(cubic, 4);
    auto closure = oracles::closure_fixed(cubic, 4);
    const size_t expected[] = {1, 3, 15, 86};  // frozen from the closure oracle
    for (int n = 1; n <= 4; ++n) {
        EXPECT_EQ(fixed[n].size(), expected[n - 1]);
        EXPECT_EQ(closure[size_t(n)].size(), expected[n - 1]);
    }
    EXPECT_EQ(fixed[2].size(), 3u);  // one domino per axis

    auto chain = enumerate_fixed(LatticeSpec{1}, 8);
    for (int n = 1; n <= 8; ++n) EXPECT_EQ(chain[n].size(), 1u);
}

TEST(Enumerate, RejectsBadOrder) {
    EXPECT_THROW(enumerate_fixed(LatticeSpec{2}, 0), config_error);
}

TEST(Canonical, RotationsShareAKey) {
    LatticeSpec sq{2};
    EXPECT_EQ(canonical_key(sq, kDominoH), canonical_key(sq, kDominoV));

    auto ell_keys = {
        canonical_key(sq, kEll),
        canonical_key(sq, shape_of({{0, 0, 0}, {0, 1, 0}, {1, 1, 0}})),
        canonical_key(sq, shape_of({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}})),
        canonical_key(sq, shape_of({{1, 0, 0}, {1, 1, 0}, {0, 1, 0}})),
    };
    for (const auto& k : ell_keys) EXPECT_EQ(k, canonical_key(sq, kEll));

    EXPECT_NE(canonical_key(sq, kStraight3), canonical_key(sq, kEll));
}

TEST(Canonical, OrbitSizeIsLatticeConstant) {
    LatticeSpec sq{2};
    EXPECT_EQ(canonicalize(sq, kDominoH).orbit_size, 2);
    EXPECT_EQ(canonicalize(sq, kBlock).orbit_size, 1);
    EXPECT_EQ(canonicalize(sq, kEll).orbit_size, 4);
    EXPECT_EQ(canonicalize(sq, kStraight3).orbit_size, 2);
}

TEST(ReduceToFree, SquareFreeCountsAndConstants) {
    LatticeSpec sq{2};
    auto fixed = enumerate_fixed(sq, 6);
    ClusterSet set = reduce_to_free(sq, fixed);
    const size_t free_expected[] = {1, 1, 2, 5, 12, 35};  // from oracle + key grouping
    std::map<int, size_t> free_counts;
    std::map<int, uint64_t> constant_sums;
    for (const auto& rec : set.records) {
        free_counts[rec.size()] += 1;
        constant_sums[rec.size()] += rec.lattice_constant;
        EXPECT_GE(rec.lattice_constant, 1u);
        EXPECT_LE(rec.lattice_constant, point_group(sq).size());
    }
    for (int n = 1; n <= 6; ++n) {
        EXPECT_EQ(free_counts[n], free_expected[n - 1]) << "size " << n;
        // orbit-counting consistency: constants add up to the fixed count
        EXPECT_EQ(constant_sums[n], fixed[n].size()) << "size " << n;
    }
    EXPECT_EQ(set.records[set.require(canonical_key(sq, kDominoH))].lattice_constant, 2u);
    EXPECT_EQ(set.records[set.require(canonical_key(sq, kBlock))].lattice_constant, 1u);
}

TEST(ReduceToFree, RecordsSortedAndIndexed) {
    LatticeSpec sq{2};
    ClusterSet set = build_cluster_set(sq, 5);
    for (size_t i = 1; i < set.records.size(); ++i)
        EXPECT_LE(set.records[i - 1].size(), set.records[i].size());
    for (uint32_t i = 0; i < set.records.size(); ++i) {
        EXPECT_EQ(set.require(canonical_key(sq, set.records[i].shape)), i);
        for (auto [idx, mult] : set.records[i].subclusters) {
            EXPECT_LT(idx, i);
            EXPECT_GE(mult, 1u);
        }
    }
}

TEST(ReduceToFree, DeterministicAcrossWorkers) {
    LatticeSpec sq{2};
    ClusterSet a = build_cluster_set(sq, 5, 1);
    ClusterSet b = build_cluster_set(sq, 5, 3);
    ASSERT_EQ(a.records.size(), b.records.size());
    for (size_t i = 0; i < a.records.size(); ++i) {
        EXPECT_EQ(a.records[i].shape, b.records[i].shape);
        EXPECT_EQ(a.records[i].lattice_constant, b.records[i].lattice_constant);
        EXPECT_EQ(a.records[i].subclusters, b.records[i].subclusters);
    }
}

TEST(Subclusters, KnownTables) {
    LatticeSpec sq{2};
    auto straight = subcluster_multiplicities(sq, kStraight3);
    ASSERT_EQ(straight.size(), 2u);
    EXPECT_EQ(straight[canonical_key(sq, kSingleton)], 3u);
    EXPECT_EQ(straight[canonical_key(sq, kDominoH)], 2u);

    auto block = subcluster_multiplicities(sq, kBlock);
    ASSERT_EQ(block.size(), 3u);
    EXPECT_EQ(block[canonical_key(sq, kSingleton)], 4u);
    EXPECT_EQ(block[canonical_key(sq, kDominoH)], 4u);
    EXPECT_EQ(block[canonical_key(sq, kEll)], 4u);  // all four 3-site subsets are L-shaped

    EXPECT_TRUE(subcluster_multiplicities(sq, kSingleton).empty());
}

TEST(Subclusters, MultiplicitiesSumToSubsetCount) {
    LatticeSpec sq{2};
    auto fixed = enumerate_fixed(sq, 6);
    for (const auto& shape : fixed[6]) {
        auto table = subcluster_multiplicities(sq, shape);
        uint64_t total = 0;
        for (const auto& [key, mult] : table) total += mult;
        EXPECT_EQ(total, connected_proper_subset_count(sq, shape));
        EXPECT_EQ(table[canonical_key(sq, kSingleton)], uint32_t(shape.size()));
    }
}

TEST(Subclusters, ClosureWithinSet) {
    LatticeSpec sq{2};
    ClusterSet set = build_cluster_set(sq, 6);
    for (const auto& rec : set.records) {
        auto table = subcluster_multiplicities(sq, rec.shape);
        uint64_t expected_entries = 0;
        for (const auto& [key, mult] : table) {
            EXPECT_TRUE(set.find(key).has_value());
            ++expected_entries;
        }
        EXPECT_EQ(rec.subclusters.size(), expected_entries);
    }
}

TEST(PairClusters, MinimalExamples) {
    LatticeSpec sq{2};
    auto one = build_pair_cluster_set(sq, Site{{1, 0, 0}}, 2);
    EXPECT_EQ(one.records.size(), 1u);  // the domino
    EXPECT_EQ(one.min_size(), 2);

    auto two = build_pair_cluster_set(sq, Site{{2, 0, 0}}, 3);
    EXPECT_EQ(two.records.size(), 1u);  // the straight tromino
    for (const auto& rec : two.records) EXPECT_GE(rec.size(), 3);

    auto diag = build_pair_cluster_set(sq, Site{{1, 1, 0}}, 3);
    EXPECT_EQ(diag.records.size(), 2u);  // the two L-shaped paths

    EXPECT_THROW(build_pair_cluster_set(sq, Site{}, 3), config_error);
}

TEST(PairClusters, AgainstRootedOracle) {
    LatticeSpec sq{2};
    for (Site r : {Site{{1, 1, 0}}, Site{{2, 0, 0}}}) {
        auto set = build_pair_cluster_set(sq, r, 5);
        auto oracle = oracles::rooted_pairs(sq, r, 5);
        size_t oracle_total = 0;
        for (const auto& sized : oracle) oracle_total += sized.size();
        ASSERT_EQ(set.records.size(), oracle_total) << "r=" << r.to_string();
        for (const auto& rec : set.records)
            EXPECT_TRUE(oracle[size_t(rec.size())].count(rec.sites));
    }
}

TEST(PairClusters, OnsetAndMonotonePaths) {
    LatticeSpec sq{2};
    for (Site r : {Site{{1, 0, 0}}, Site{{2, 0, 0}}, Site{{3, 0, 0}}, Site{{1, 1, 0}}}) {
        int onset = r.l1_norm() + 1;
        auto set = build_pair_cluster_set(sq, r, std::min(onset + 1, 6));
        for (const auto& rec : set.records) {
            ASSERT_GE(rec.size(), onset);
            if (rec.size() == onset) {
                // minimal clusters are monotone lattice paths between the roots
                EXPECT_EQ(bonds_within(sq, rec.sites).size(), size_t(rec.size() - 1));
                for (const Site& s : rec.sites)
                    for (int k = 0; k < 2; ++k) {
                        EXPECT_GE(s.c[k], std::min(0, r.c[k]));
                        EXPECT_LE(s.c[k], std::max(0, r.c[k]));
                    }
            }
        }
    }
}

TEST(PairClusters, RootedSubclusterClosure) {
    LatticeSpec sq{2};
    auto set = build_pair_cluster_set(sq, Site{{1, 1, 0}}, 5);
    for (const auto& rec : set.records) {
        for (uint32_t idx : rec.rooted_subclusters) {
            ASSERT_LT(idx, set.records.size());
            EXPECT_LT(set.records[idx].size(), rec.size());
            // subset relation
            for (const Site& s : set.records[idx].sites)
                EXPECT_TRUE(std::find(rec.sites.begin(), rec.sites.end(), s) !=
                            rec.sites.end());
        }
        if (rec.size() == set.min_size()) EXPECT_TRUE(rec.rooted_subclusters.empty());
    }
}
