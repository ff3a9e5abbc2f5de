#include "nlce/lattice.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace nlce;

TEST(Lattice, NeighborOffsetsOrderAndCount) {
    auto sq = neighbor_offsets(LatticeSpec{2});
    ASSERT_EQ(sq.size(), 4u);
    EXPECT_EQ(sq[0], (Site{{1, 0, 0}}));
    EXPECT_EQ(sq[1], (Site{{-1, 0, 0}}));
    EXPECT_EQ(sq[2], (Site{{0, 1, 0}}));
    EXPECT_EQ(sq[3], (Site{{0, -1, 0}}));

    EXPECT_EQ(neighbor_offsets(LatticeSpec{3}).size(), 6u);
    auto chain = neighbor_offsets(LatticeSpec{1});
    ASSERT_EQ(chain.size(), 2u);
    EXPECT_EQ(chain[0], (Site{{1, 0, 0}}));
    EXPECT_EQ(chain[1], (Site{{-1, 0, 0}}));

    EXPECT_THROW(neighbor_offsets(LatticeSpec{4}), config_error);
}

TEST(Lattice, BondsWithin) {
    LatticeSpec sq{2};
    std::vector<Site> single{Site{{0, 0, 0}}};
    EXPECT_TRUE(bonds_within(sq, single).empty());

    std::vector<Site> path{Site{{0, 0, 0}}, Site{{1, 0, 0}}, Site{{2, 0, 0}}};
    EXPECT_EQ(bonds_within(sq, path).size(), 2u);

    std::vector<Site> block{Site{{0, 0, 0}}, Site{{1, 0, 0}}, Site{{0, 1, 0}}, Site{{1, 1, 0}}};
    EXPECT_EQ(bonds_within(sq, block).size(), 4u);

    // pure set function: input order must not matter
    std::vector<Site> shuffled{block[2], block[0], block[3], block[1]};
    EXPECT_EQ(bonds_within(sq, block), bonds_within(sq, shuffled));
}

TEST(Lattice, BondEndpointsCanonical) {
    LatticeSpec sq{2};
    std::vector<Site> pair{Site{{1, 0, 0}}, Site{{0, 0, 0}}};
    auto bonds = bonds_within(sq, pair);
    ASSERT_EQ(bonds.size(), 1u);
    EXPECT_LT(bonds[0].a, bonds[0].b);
}

TEST(Lattice, IsConnected) {
    LatticeSpec sq{2};
    std::vector<Site> pair{Site{{0, 0, 0}}, Site{{1, 0, 0}}};
    EXPECT_TRUE(is_connected(sq, pair));
    std::vector<Site> gap{Site{{0, 0, 0}}, Site{{2, 0, 0}}};
    EXPECT_FALSE(is_connected(sq, gap));
    std::vector<Site> ell{Site{{0, 0, 0}}, Site{{1, 0, 0}}, Site{{1, 1, 0}}};
    EXPECT_TRUE(is_connected(sq, ell));
    std::vector<Site> empty;
    EXPECT_THROW(is_connected(sq, empty), error);
}

TEST(Lattice, PointGroupSizes) {
    EXPECT_EQ(point_group(LatticeSpec{1}).size(), 2u);
    EXPECT_EQ(point_group(LatticeSpec{2}).size(), 8u);
    EXPECT_EQ(point_group(LatticeSpec{3}).size(), 48u);
    EXPECT_EQ(point_group(LatticeSpec{2}).front(), PgOp{});
}

TEST(Lattice, PointGroupClosedUnderComposition) {
    for (int dim = 1; dim <= 3; ++dim) {
        const auto& group = point_group(LatticeSpec{dim});
        std::set<PgOp> members(group.begin(), group.end());
        for (const PgOp& g : group)
            for (const PgOp& h : group) EXPECT_TRUE(members.count(g.compose(h)));
    }
}

TEST(Lattice, PointGroupPreservesAdjacency) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coord(-4, 4);
    for (int dim = 1; dim <= 3; ++dim) {
        LatticeSpec spec{dim};
        for (const PgOp& g : point_group(spec)) {
            for (int trial = 0; trial < 50; ++trial) {
                Site a, b;
                for (int k = 0; k < dim; ++k) {
                    a.c[k] = coord(rng);
                    b.c[k] = coord(rng);
                }
                EXPECT_EQ(sites_adjacent(spec, a, b),
                          sites_adjacent(spec, g.apply(a), g.apply(b)));
            }
        }
    }
}

TEST(Lattice, SpanningTreeBound) {
    // any connected cluster has at least size-1 bonds
    LatticeSpec sq{2};
    std::mt19937 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Site> sites{Site{}};
        std::uniform_int_distribution<size_t> pick(0, 1u << 30);
        auto offsets = neighbor_offsets(sq);
        while (sites.size() < 8) {
            Site base = sites[pick(rng) % sites.size()];
            Site next = base + offsets[pick(rng) % offsets.size()];
            if (std::find(sites.begin(), sites.end(), next) == sites.end())
                sites.push_back(next);
        }
        ASSERT_TRUE(is_connected(sq, sites));
        EXPECT_GE(bonds_within(sq, sites).size(), sites.size() - 1);
    }
}
