#include <gtest/gtest.h>

#include <random>
#include <set>

#include "affapp/approx.hpp"
#include "affapp/constructions.hpp"
#include "affapp/constructors.hpp"
#include "oracles.hpp"

using namespace affapp;

namespace {

/// Checks universality of a tuple directly: the endomorphic images must cover all n^l tuples.
bool covers_all_targets(const Group& g, const std::vector<Elem>& u, const std::vector<Morphism>& endos) {
    std::set<std::vector<Elem>> hit;
    for (const auto& e : endos) {
        std::vector<Elem> img;
        for (Elem x : u) img.push_back(e.images[x]);
        hit.insert(img);
    }
    std::size_t total = 1;
    for (std::size_t i = 0; i < u.size(); ++i) total *= g.order();
    return hit.size() == total;
}

}  // namespace

TEST(WorstCase, MatchesBruteForceMinMaxUpToOrderSix) {
    for (const auto& g : catalog_up_to(6)) {
        auto endos = oracle::endomorphisms(g);
        for (bool affine : {false, true}) {
            const auto want = oracle::minmax(g, oracle::affine_tables(g, endos, affine));
            const auto cert = worst_case_value(g, affine ? Metric::affine : Metric::endo);
            ASSERT_TRUE(cert.exact) << g.name();
            EXPECT_EQ(*cert.value, want) << g.name() << (affine ? " affapp" : " enapp");
        }
    }
}

TEST(WorstCase, SmallGroupTable) {
    const std::vector<std::size_t> enapp = {1, 1, 1, 1, 2, 1, 1, 0, 1};
    const std::vector<std::size_t> affapp = {1, 2, 2, 2, 3, 2, 2, 2, 2};
    auto groups = catalog_up_to(7);
    ASSERT_EQ(groups.size(), 9u);
    for (std::size_t i = 0; i < groups.size(); ++i) {
        auto e = worst_case_value(groups[i], Metric::endo);
        auto a = worst_case_value(groups[i], Metric::affine);
        ASSERT_TRUE(e.exact && a.exact);
        EXPECT_EQ(*e.value, enapp[i]) << groups[i].name();
        EXPECT_EQ(*a.value, affapp[i]) << groups[i].name();
    }
}

TEST(WorstCase, CyclicEightAffineIsTwo) {
    auto c = worst_case_value(cyclic(8), Metric::affine);
    ASSERT_TRUE(c.exact);
    EXPECT_EQ(*c.value, 2u);
}

TEST(WorstCase, WitnessAchievesValueAndBoundsAreOrdered) {
    for (const auto& g : catalog_up_to(12)) {
        for (Metric m : {Metric::endo, Metric::affine}) {
            auto c = worst_case_value(g, m);
            ASSERT_TRUE(c.exact) << g.name();
            ASSERT_TRUE(c.witness);
            EXPECT_EQ(approximability(g, *c.witness, m), *c.value) << g.name();
            EXPECT_LE(c.lower_bound, *c.value);
            EXPECT_EQ(c.upper_bound, *c.value);
        }
    }
}

TEST(WorstCase, EnappNeverExceedsAffapp) {
    for (const auto& g : catalog_up_to(15)) {
        auto e = worst_case_value(g, Metric::endo);
        auto a = worst_case_value(g, Metric::affine);
        ASSERT_TRUE(e.exact && a.exact);
        EXPECT_LE(*e.value, *a.value) << g.name();
    }
}

TEST(WorstCase, TinyBudgetGivesInexactBounds) {
    SearchOptions opt;
    opt.budget = 10;
    auto c = worst_case_value(alt(4), Metric::affine, opt);
    EXPECT_FALSE(c.exact);
    EXPECT_FALSE(c.value);
    EXPECT_LE(c.lower_bound, c.upper_bound);
    EXPECT_GE(c.lower_bound, 2u);
    EXPECT_TRUE(c.witness);
    EXPECT_EQ(approximability(alt(4), *c.witness, Metric::affine), c.upper_bound);
}

TEST(WorstCase, BoundsOnlySkipsTheSearch) {
    SearchOptions opt;
    opt.bounds_only = true;
    auto c = worst_case_value(dihedral(8), Metric::affine, opt);
    EXPECT_FALSE(c.exact);
    EXPECT_EQ(c.stats.nodes, 0u);
    EXPECT_EQ(c.lower_bound, 2u);
}

TEST(WorstCase, TrivialGroup) {
    auto a = worst_case_value(cyclic(1), Metric::affine);
    auto e = worst_case_value(cyclic(1), Metric::endo);
    EXPECT_EQ(*a.value, 1u);
    EXPECT_EQ(*e.value, 1u);
}

TEST(Approximability, SmallGroupWitnessesReachTwo) {
    for (const auto& w : small_group_witnesses()) {
        Group g = construct(w.group_spec);
        EXPECT_EQ(approximability(g, w.function, w.metric), 2u) << w.name;
    }
}

TEST(Approximability, AgreesWithOracle) {
    Group g = dihedral(8);
    auto endos = enumerate_endomorphisms(g);
    auto fam = make_family(g, Metric::affine, endos);
    std::vector<std::vector<Elem>> slow;
    for (const auto& e : endos) slow.push_back(e.images);
    auto slow_fam = oracle::affine_tables(g, slow, true);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<Elem> pick(0, 7);
    for (int i = 0; i < 200; ++i) {
        std::vector<Elem> f(8);
        for (auto& v : f) v = pick(rng);
        auto r = approximability(f, fam);
        EXPECT_EQ(r.value, oracle::app(f, slow_fam));
        EXPECT_EQ(agreement(f, fam.tables[r.best]), r.value);
    }
}

TEST(Certificates, UniversalTuplesOfElementaryAbelianTwoGroups) {
    for (std::size_t r : {2u, 3u}) {
        Group g = elemabelian(2, r);
        auto endos = enumerate_endomorphisms(g);
        auto lb = lower_bound_certificates(g, endos);
        ASSERT_TRUE(lb.universal_tuple);
        EXPECT_EQ(lb.universal_tuple->size(), r);
        EXPECT_TRUE(covers_all_targets(g, *lb.universal_tuple, endos));
        EXPECT_EQ(lb.endo, r);
        EXPECT_EQ(lb.affine, r + 1);
        EXPECT_FALSE(find_universal_tuple(g, r + 1, endos));
    }
}

TEST(Certificates, UniversalElements) {
    for (std::size_t n = 1; n <= 12; ++n) {
        Group g = cyclic(n);
        auto endos = enumerate_endomorphisms(g);
        auto u = find_universal_tuple(g, 1, endos);
        ASSERT_TRUE(u) << n;
        EXPECT_TRUE(covers_all_targets(g, *u, endos));
    }
    Group m = modmax(3);
    auto me = enumerate_endomorphisms(m);
    auto u = find_universal_tuple(m, 1, me);
    ASSERT_TRUE(u);
    EXPECT_TRUE(covers_all_targets(m, *u, me));
    EXPECT_EQ(element_order(m, (*u)[0]), 9u);
}

TEST(Certificates, OrderNineElementsOfModmaxFormOneDominatingOrbit) {
    Group m = modmax(3);
    auto d = find_dominating_orbit(m, enumerate_endomorphisms(m));
    ASSERT_TRUE(d);
    EXPECT_EQ(d->size(), 18u);
    for (Elem x : *d) EXPECT_EQ(element_order(m, x), 9u);
    // elements of order 9 outside the subgroup generated by x (index 1)
    std::vector<Elem> gens{1};
    auto cyc = generated_subgroup(m, gens);
    std::size_t outside = 0;
    for (Elem x : *d) outside += !std::binary_search(cyc.begin(), cyc.end(), x);
    EXPECT_EQ(outside, 12u);
}

TEST(Certificates, NoUniversalElementWithoutAnElementOfExponentOrder) {
    for (const char* s : {"sym(3)", "alt(4)", "dihedral(10)"}) {
        Group g = construct(std::string(s));
        auto endos = enumerate_endomorphisms(g);
        EXPECT_FALSE(find_universal_tuple(g, 1, endos)) << s;
        // exhaustive cross-check over every element
        for (Elem x = 0; x < g.order(); ++x) EXPECT_FALSE(covers_all_targets(g, {x}, endos)) << s;
    }
}

TEST(Certificates, DominatingOrbits) {
    auto a4 = alt(4);
    auto d = find_dominating_orbit(a4, enumerate_endomorphisms(a4));
    ASSERT_TRUE(d);
    EXPECT_EQ(d->size(), 8u);
    for (Elem x : *d) EXPECT_EQ(element_order(a4, x), 3u);

    auto h = heis(3);
    auto dh = find_dominating_orbit(h, enumerate_endomorphisms(h));
    ASSERT_TRUE(dh);
    EXPECT_EQ(dh->size(), 24u);  // every noncentral element

    // reflections s r^k sit at indices n .. 2n-1
    for (std::size_t order : {6u, 8u, 10u, 12u, 14u}) {
        auto d = dihedral(order);
        auto o = find_dominating_orbit(d, enumerate_endomorphisms(d));
        ASSERT_TRUE(o) << order;
        std::vector<Elem> reflections(order / 2);
        std::iota(reflections.begin(), reflections.end(), static_cast<Elem>(order / 2));
        EXPECT_EQ(*o, reflections) << order;
    }
}

TEST(Certificates, EvidenceNamesTheSource) {
    auto g = alt(4);
    auto lb = lower_bound_certificates(g, enumerate_endomorphisms(g));
    EXPECT_EQ(lb.endo, 0u);
    EXPECT_EQ(lb.affine, 2u);
    EXPECT_EQ(lb.affine_evidence.kind, BoundKind::dominating_orbit);
    auto c = lower_bound_certificates(cyclic(5), enumerate_endomorphisms(cyclic(5)));
    EXPECT_EQ(c.affine_evidence.kind, BoundKind::universal_tuple);
    EXPECT_EQ(bound_kind_name(BoundKind::dominating_orbit), "dominating-orbit");
}

TEST(DifferenceCriterion, AgreesWithAffineScan) {
    std::mt19937_64 rng(11);
    for (const auto& g : catalog_up_to(6)) {
        if (g.order() < 2) continue;
        auto endos = enumerate_endomorphisms(g);
        auto maps = affine_maps(endos, g.order());
        std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(g.order() - 1));
        for (int i = 0; i < 200; ++i) {
            GroupFunction f;
            f.images.resize(g.order());
            for (auto& v : f.images) v = pick(rng);
            std::vector<Elem> xs;
            for (Elem x = 0; x < g.order(); ++x)
                if (rng() % 2) xs.push_back(x);
            if (xs.empty()) xs.push_back(pick(rng));
            bool scan = false;
            for (const auto& a : maps) {
                bool all = true;
                for (Elem x : xs) all = all && a.apply(g, x) == f(x);
                scan = scan || all;
            }
            auto found = difference_criterion(g, f, xs, endos);
            ASSERT_EQ(found.has_value(), scan) << g.name();
            if (found) {
                for (Elem x : xs) EXPECT_EQ(found->apply(g, x), f(x));
            }
        }
    }
    EXPECT_THROW(difference_criterion(cyclic(3), identity_function(cyclic(3)), {}, enumerate_endomorphisms(cyclic(3))),
                 ArgumentError);
}

TEST(Reduction, BijectiveAffineMapsPreserveAffapp) {
    std::mt19937_64 rng(5);
    for (const auto& g : catalog_up_to(6)) {
        auto endos = enumerate_endomorphisms(g);
        std::vector<AffineMap> bij;
        for (const auto& a : affine_maps(endos, g.order()))
            if (a.endo.is_automorphism) bij.push_back(a);
        std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(g.order() - 1));
        for (int i = 0; i < 100; ++i) {
            GroupFunction f;
            f.images.resize(g.order());
            for (auto& v : f.images) v = pick(rng);
            const auto& a = bij[rng() % bij.size()];
            GroupFunction fa, af;
            for (Elem x = 0; x < g.order(); ++x) {
                fa.images.push_back(f(a.apply(g, x)));
                af.images.push_back(a.apply(g, f(x)));
            }
            const auto base = approximability(g, f, Metric::affine);
            EXPECT_EQ(approximability(g, fa, Metric::affine), base);
            EXPECT_EQ(approximability(g, af, Metric::affine), base);
        }
    }
}

TEST(EnappZero, WitnessExistsIffNoUniversalElement) {
    for (const auto& g : catalog_up_to(12)) {
        auto endos = enumerate_endomorphisms(g);
        auto w = enapp_zero_witness(g, endos);
        EXPECT_EQ(w.has_value(), !find_universal_tuple(g, 1, endos).has_value()) << g.name();
        if (w) {
            EXPECT_EQ(approximability(g, *w, Metric::endo), 0u) << g.name();
        }
    }
}

TEST(Metric, NamesRoundTrip) {
    EXPECT_EQ(parse_metric("enapp"), Metric::endo);
    EXPECT_EQ(parse_metric("affapp"), Metric::affine);
    EXPECT_EQ(metric_name(Metric::affine), "affapp");
    EXPECT_THROW(parse_metric("nope"), ArgumentError);
}
