#include <gtest/gtest.h>

#include <cmath>

#include "affapp/constructors.hpp"
#include "affapp/morphism.hpp"
#include "oracles.hpp"

using namespace affapp;

namespace {

std::vector<std::vector<Elem>> tables(const std::vector<Morphism>& ms) {
    std::vector<std::vector<Elem>> out;
    for (const auto& m : ms) out.push_back(m.images);
    return out;
}

std::size_t automorphism_count(const std::vector<Morphism>& ms) {
    std::size_t c = 0;
    for (const auto& m : ms) c += m.is_automorphism;
    return c;
}

std::vector<std::size_t> orbit_sizes(const Group& g) {
    std::vector<std::size_t> s;
    for (const auto& o : automorphism_orbits(g)) s.push_back(o.size());
    std::sort(s.begin(), s.end());
    return s;
}

}  // namespace

TEST(Endomorphisms, MatchBruteForceUpToOrderSix) {
    for (const auto& g : catalog_up_to(6)) {
        auto fast = tables(enumerate_endomorphisms(g));
        auto slow = oracle::endomorphisms(g);
        std::sort(slow.begin(), slow.end());
        EXPECT_EQ(fast, slow) << g.name();
    }
}

TEST(Endomorphisms, MatchBruteForceAtOrderSeven) {
    Group g = cyclic(7);
    auto slow = oracle::endomorphisms(g);
    std::sort(slow.begin(), slow.end());
    EXPECT_EQ(tables(enumerate_endomorphisms(g)), slow);
}

TEST(Endomorphisms, SymThreeHasTen) { EXPECT_EQ(enumerate_endomorphisms(sym(3)).size(), 10u); }

TEST(Endomorphisms, KnownCounts) {
    for (std::size_t n : {1u, 5u, 8u, 12u, 15u}) EXPECT_EQ(enumerate_endomorphisms(cyclic(n)).size(), n);
    EXPECT_EQ(enumerate_endomorphisms(elemabelian(2, 2)).size(), 16u);
    EXPECT_EQ(enumerate_endomorphisms(elemabelian(2, 3)).size(), 512u);
    EXPECT_EQ(enumerate_endomorphisms(elemabelian(3, 2)).size(), 81u);
}

TEST(Endomorphisms, AutomorphismGroupOrders) {
    EXPECT_EQ(automorphism_count(enumerate_endomorphisms(cyclic(12))), 4u);
    EXPECT_EQ(automorphism_count(enumerate_endomorphisms(elemabelian(2, 3))), 168u);
    EXPECT_EQ(automorphism_count(enumerate_endomorphisms(dihedral(8))), 8u);
    EXPECT_EQ(automorphism_count(enumerate_endomorphisms(dicyclic(8))), 24u);
    EXPECT_EQ(automorphism_count(enumerate_endomorphisms(alt(4))), 24u);
    EXPECT_EQ(automorphism_count(enumerate_endomorphisms(sym(3))), 6u);
    EXPECT_EQ(automorphism_count(enumerate_endomorphisms(heis(3))), 432u);
    EXPECT_EQ(automorphism_count(enumerate_endomorphisms(modmax(3))), 54u);
}

TEST(Endomorphisms, EveryResultIsAHomomorphismAndFlagsAreRight) {
    for (const char* s : {"dihedral(10)", "dicyclic(12)", "alt(4)", "heis(3)", "product(cyclic(6),cyclic(2))"}) {
        Group g = construct(std::string(s));
        for (const auto& m : enumerate_endomorphisms(g)) {
            ASSERT_TRUE(is_homomorphism(g, m.images)) << s;
            ASSERT_EQ(m.is_automorphism, is_bijective(m.images)) << s;
        }
    }
}

TEST(Endomorphisms, CountIsBelowTheLagrangeBound) {
    for (const auto& g : catalog_up_to(15)) {
        if (g.order() < 2) continue;
        const double bound = std::pow(double(g.order()), std::log2(double(g.order())));
        EXPECT_LE(double(enumerate_endomorphisms(g).size()), bound + 1e-9) << g.name();
    }
}

TEST(Endomorphisms, ThreadCountDoesNotChangeTheResult) {
    Group g = heis(3);
    EnumerationOptions one{64, 1}, four{64, 4};
    EXPECT_EQ(tables(enumerate_endomorphisms(g, one)), tables(enumerate_endomorphisms(g, four)));
}

TEST(Endomorphisms, CapacityIsEnforced) {
    EXPECT_THROW(enumerate_endomorphisms(sym(4), {16, 1}), CapacityError);
    EXPECT_NO_THROW(enumerate_endomorphisms(sym(4), {24, 1}));
    EXPECT_THROW(enumerate_endomorphisms(construct(std::string("jk(3,0,1)"))), CapacityError);
}

TEST(GeneratingSequence, GeneratesAndIsShort) {
    for (const auto& g : catalog_up_to(15)) {
        auto gens = minimal_generating_sequence(g);
        EXPECT_EQ(generated_subgroup(g, gens).size(), g.order()) << g.name();
        EXPECT_LE(double(gens.size()), std::log2(double(std::max<std::size_t>(g.order(), 1))) + 1e-9) << g.name();
    }
    EXPECT_EQ(minimal_generating_sequence(elemabelian(2, 3)).size(), 3u);
    EXPECT_EQ(minimal_generating_sequence(cyclic(12)).size(), 1u);
}

TEST(AffineMaps, CountAndComposition) {
    Group g = sym(3);
    auto endos = enumerate_endomorphisms(g);
    auto maps = affine_maps(endos, g.order());
    ASSERT_EQ(maps.size(), 60u);
    for (const auto& a : maps)
        for (Elem x = 0; x < g.order(); ++x) EXPECT_EQ(a.apply(g, x), g.mul(a.constant, a.endo.images[x]));
    // constants are the affine maps over the trivial endomorphism
    std::size_t constants = 0;
    for (const auto& a : maps) {
        auto t = a.table(g);
        constants += std::all_of(t.begin(), t.end(), [&](Elem v) { return v == t[0]; });
    }
    EXPECT_EQ(constants, 6u);
}

TEST(Orbits, KnownOrbitStructures) {
    EXPECT_EQ(orbit_sizes(alt(4)), (std::vector<std::size_t>{1, 3, 8}));
    EXPECT_EQ(orbit_sizes(heis(3)), (std::vector<std::size_t>{1, 2, 24}));
    EXPECT_EQ(orbit_sizes(modmax(3)), (std::vector<std::size_t>{1, 2, 3, 3, 18}));
    EXPECT_EQ(orbit_sizes(dihedral(8)), (std::vector<std::size_t>{1, 1, 2, 4}));
    EXPECT_EQ(orbit_sizes(elemabelian(2, 3)), (std::vector<std::size_t>{1, 7}));
    EXPECT_EQ(orbit_sizes(cyclic(12)), (std::vector<std::size_t>{1, 1, 2, 2, 2, 4}));
}

TEST(Orbits, PartitionTheGroupWithIdentityFirst) {
    for (const auto& g : catalog_up_to(12)) {
        auto orbits = automorphism_orbits(g);
        ASSERT_FALSE(orbits.empty());
        EXPECT_EQ(orbits.front(), std::vector<Elem>{0});
        std::vector<char> seen(g.order(), 0);
        for (const auto& o : orbits)
            for (Elem x : o) {
                EXPECT_FALSE(seen[x]);
                seen[x] = 1;
            }
        EXPECT_TRUE(std::all_of(seen.begin(), seen.end(), [](char c) { return c; }));
    }
}
