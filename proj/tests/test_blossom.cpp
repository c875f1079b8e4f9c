#include <gtest/gtest.h>

#include <set>

#include "mastereq/blossom.hpp"
#include "mastereq/master.hpp"

using namespace mastereq;

namespace {

using T = BlossomTree;

Poly g(int k) { return Poly::g(k); }

// Two 4-valent vertices and one 6-valent vertex, legs at distance 1.
T two_leg_example()
{
    return T::inner({T::inner({T::leaf(), T::bud(), T::leaf()}), T::bud(),
                     T::inner({T::bud(), T::leaf(), T::leaf()}), T::leaf(), T::bud()});
}

int final_height(const T& t)
{
    int h = 0;
    for (int s : contour_walk(t)) h += s;
    return h;
}

}  // namespace

TEST(Blossom, Encoding)
{
    EXPECT_EQ(T::leaf().encode(), "L");
    EXPECT_EQ(two_leg_example().encode(), "((LBL)B(BLL)LB)");
    EXPECT_EQ(T::inner({T::bud(), T::leaf(), T::leaf()}).valence(), 4);
    EXPECT_EQ(T::leaf().valence(), 1);
}

TEST(Blossom, Counts)
{
    EXPECT_EQ(enumerate_blossom(ModelSpec::up_to(3), 0).size(), 1U);
    for (int d = 0; d <= 6; ++d) EXPECT_EQ(enumerate_blossom(ModelSpec::up_to(1), d).size(), static_cast<std::size_t>(d + 1));
    BlossomEnumerator tetra(ModelSpec::pure(2));
    EXPECT_EQ(tetra.exact(1).size(), 3U);
    EXPECT_THROW(tetra.exact(-1), std::invalid_argument);
}

TEST(Blossom, EnumerationIsDuplicateFreeAndValid)
{
    for (int m : {2, 3}) {
        std::set<std::string> seen;
        for (const auto& t : enumerate_blossom(ModelSpec::up_to(m), 3)) {
            EXPECT_TRUE(is_blossom(t)) << t.encode();
            EXPECT_EQ(leaf_count(t), bud_count(t) + 1) << t.encode();
            EXPECT_EQ(final_height(t), 1) << t.encode();
            EXPECT_LE(inner_count(t), 3);
            seen.insert(t.encode());
        }
        EXPECT_EQ(seen.size(), enumerate_blossom(ModelSpec::up_to(m), 3).size());
    }
}

TEST(Blossom, ValidityChecks)
{
    EXPECT_TRUE(is_blossom(T::leaf()));
    EXPECT_FALSE(is_blossom(T::bud()));
    EXPECT_FALSE(is_blossom(T::inner({T::leaf(), T::leaf(), T::leaf()})));
    EXPECT_FALSE(is_blossom(T::inner({T::leaf(), T::leaf()})));
    EXPECT_TRUE(is_blossom(two_leg_example()));
}

TEST(Blossom, DepthExamples)
{
    EXPECT_EQ(contour_depth(T::leaf()), 0);
    EXPECT_EQ(closure_excess(T::leaf()), 0);
    const T bud_first = T::inner({T::bud(), T::leaf(), T::leaf()});
    const T bud_last = T::inner({T::leaf(), T::leaf(), T::bud()});
    EXPECT_EQ(contour_walk(bud_first), (std::vector<int>{-1, 1, 1}));
    EXPECT_EQ(contour_depth(bud_first), 1);
    EXPECT_EQ(contour_depth(bud_last), 0);
    EXPECT_EQ(closure_excess(two_leg_example()), 1);
    EXPECT_EQ(contour_depth(two_leg_example()), 1);
    EXPECT_EQ(valence_profile(two_leg_example()), (std::map<int, int>{{4, 2}, {6, 1}}));
    EXPECT_EQ(tree_weight(two_leg_example()), g(2) * g(2) * g(3));
}

TEST(Blossom, DepthEqualsClosureExcess)
{
    for (int m : {2, 3}) {
        for (const auto& t : enumerate_blossom(ModelSpec::up_to(m), 3)) {
            EXPECT_EQ(contour_depth(t), closure_excess(t)) << t.encode();
        }
    }
}

TEST(Blossom, ChainModel)
{
    const auto spec = ModelSpec::up_to(1);
    Poly expected;
    for (std::uint32_t k = 0; k <= 4; ++k) expected += power(g(1), k);
    for (int n = 0; n <= 3; ++n) EXPECT_EQ(brute_force_rn(n, spec, 4), expected);
    EXPECT_THROW(brute_force_rn(0, spec, 1, true), std::invalid_argument);
}

TEST(Blossom, FirstOrderTetravalent)
{
    const auto spec = ModelSpec::pure(2);
    EXPECT_EQ(brute_force_rn(0, spec, 1), Poly(1) + g(2) * Rational(2));
    for (int n = 1; n <= 3; ++n) EXPECT_EQ(brute_force_rn(n, spec, 1), Poly(1) + g(2) * Rational(3));
}

TEST(Blossom, MatchesMasterSolution)
{
    for (int m : {2, 3}) {
        const auto spec = ModelSpec::up_to(m);
        const auto ctx = SeriesContext::couplings(3);
        const auto env = solve_master(spec, ctx);
        for (int n = 0; n <= 3; ++n) EXPECT_EQ(brute_force_rn(n, spec, 3), env.r(n)) << m << " " << n;
    }
}

TEST(Reroot, HandExample)
{
    const T bud_first = T::inner({T::bud(), T::leaf(), T::leaf()});
    const T r = reroot(bud_first);
    EXPECT_EQ(r.encode(), "(LLL)");
    EXPECT_EQ(contour_depth(r), 0);
    EXPECT_TRUE(is_rerooted_shape(r));
    EXPECT_THROW(reroot(T::inner({T::leaf(), T::leaf(), T::bud()})), std::invalid_argument);
    EXPECT_THROW(reroot(T::leaf()), std::invalid_argument);
}

TEST(Reroot, StructuralProperties)
{
    for (int m : {2, 3}) {
        for (const auto& t : enumerate_blossom(ModelSpec::up_to(m), 3)) {
            if (contour_depth(t) < 1) continue;
            const T r = reroot(t);
            EXPECT_TRUE(is_rerooted_shape(r)) << t.encode() << " -> " << r.encode();
            EXPECT_EQ(final_height(r), 3) << t.encode();
            EXPECT_EQ(contour_depth(r), contour_depth(t) - 1) << t.encode();
            EXPECT_EQ(valence_profile(r), valence_profile(t)) << t.encode();
        }
    }
}

TEST(Reroot, RealizesFirstConservationLaw)
{
    for (int m : {2, 3}) {
        const auto spec = ModelSpec::up_to(m);
        const int max_inner = 3;
        const auto ctx = SeriesContext::couplings(max_inner);
        const auto env = solve_master(spec, ctx);
        BlossomEnumerator en(spec);
        const auto trees = en.up_to(max_inner);
        const auto shapes = en.rerooted_up_to(max_inner);
        for (int n = 1; n <= 3; ++n) {
            std::set<std::string> images;
            Poly source;
            std::size_t count = 0;
            for (const auto& t : trees) {
                const int d = contour_depth(t);
                if (d < 1 || d > n) continue;
                ++count;
                source += tree_weight(t);
                images.insert(reroot(t).encode());
            }
            EXPECT_EQ(images.size(), count) << "injective, m=" << m << " n=" << n;
            std::set<std::string> target;
            Poly target_weight;
            for (const auto& s : shapes) {
                if (contour_depth(s) > n - 1) continue;
                target.insert(s.encode());
                target_weight += tree_weight(s);
            }
            EXPECT_EQ(images, target) << "onto, m=" << m << " n=" << n;
            EXPECT_EQ(source, truncate(vprime(n + 1, n - 2, env, spec), ctx)) << m << " " << n;
            EXPECT_EQ(target_weight, source);
        }
    }
}
