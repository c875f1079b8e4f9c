#include <gtest/gtest.h>

#include "mastereq/master.hpp"
#include "oracles.hpp"

using namespace mastereq;

namespace {

Poly g(int k) { return Poly::g(k); }

bool nonnegative_integers(const Poly& p)
{
    for (const auto& [m, c] : p.terms()) {
        if (c < 0 || c.get_den() != 1) return false;
    }
    return true;
}

}  // namespace

TEST(Rbar, Geometric)
{
    const auto ctx = SeriesContext::couplings(7);
    Poly expected;
    for (std::uint32_t k = 0; k <= 7; ++k) expected += power(g(1), k);
    EXPECT_EQ(solve_rbar(ModelSpec::up_to(1), ctx), expected);
}

TEST(Rbar, PureTetravalent)
{
    const auto ctx = SeriesContext::couplings(3);
    const Poly r = solve_rbar(ModelSpec::pure(2), ctx);
    EXPECT_EQ(r, Poly(1) + g(2) * Rational(3) + power(g(2), 2) * Rational(18) + power(g(2), 3) * Rational(135));
}

TEST(Rbar, SatisfiesLimitEquation)
{
    const auto ctx = SeriesContext::couplings(6);
    const Poly r = solve_rbar(ModelSpec::up_to(3), ctx);
    const Poly rhs = Poly(1) + multiply(g(1), r, ctx) + multiply(g(2), power(r, 2, ctx), ctx) * Rational(3) +
                     multiply(g(3), power(r, 3, ctx), ctx) * Rational(10);
    EXPECT_EQ(r, truncate(rhs, ctx));
    EXPECT_EQ(r, oracle::rbar_iterate({1, 2, 3}, ctx));
}

TEST(SolveMaster, RequiresFiniteOrder)
{
    EXPECT_THROW(solve_master(ModelSpec::up_to(2), SeriesContext::exact()), std::invalid_argument);
}

TEST(SolveMaster, ChainModelIsFlat)
{
    const auto ctx = SeriesContext::couplings(5);
    const auto env = solve_master(ModelSpec::up_to(1), ctx);
    Poly geometric;
    for (std::uint32_t k = 0; k <= 5; ++k) geometric += power(g(1), k);
    for (int n = 0; n <= env.horizon() + 3; ++n) EXPECT_EQ(env.r(n), geometric) << n;
}

TEST(SolveMaster, HorizonAndTail)
{
    const auto spec = ModelSpec::up_to(3);
    const auto ctx = SeriesContext::couplings(4);
    const auto env = solve_master(spec, ctx);
    EXPECT_EQ(env.horizon(), master_horizon(spec, 4));
    EXPECT_EQ(env.horizon(), 4 * 4 + 6);
    EXPECT_EQ(env.tail(), solve_rbar(spec, ctx));
}

TEST(SolveMaster, MatchesEnumerationOracle)
{
    struct Case {
        std::vector<int> active;
        std::uint32_t order;
    };
    for (const auto& c : {Case{{1, 2}, 4}, Case{{1, 2, 3}, 3}, Case{{2}, 5}}) {
        ModelSpec spec;
        spec.m = c.active.back();
        spec.active = c.active;
        const auto ctx = SeriesContext::couplings(c.order);
        const auto env = solve_master(spec, ctx);
        const auto oracle_r =
            oracle::master_iterate(c.active, Poly(1), env.horizon(), solve_rbar(spec, ctx), ctx);
        for (int n = 0; n <= env.horizon(); ++n) EXPECT_EQ(env.r(n), oracle_r[static_cast<std::size_t>(n)]) << n;
    }
}

TEST(SolveMaster, ResidualsVanish)
{
    for (int m : {2, 3}) {
        const auto spec = ModelSpec::up_to(m);
        const auto env = solve_master(spec, SeriesContext::couplings(5));
        for (const auto& r : residual_master(env, spec, 0, env.horizon())) {
            EXPECT_TRUE(r.direct.is_zero()) << m << " " << r.n;
            EXPECT_TRUE(r.reciprocal.is_zero()) << m << " " << r.n;
        }
    }
}

TEST(SolveMaster, PositiveMonotoneAndStable)
{
    for (int m : {2, 3}) {
        const auto spec = ModelSpec::up_to(m);
        const std::uint32_t order = 5;
        const auto ctx = SeriesContext::couplings(order);
        const auto env = solve_master(spec, ctx);
        const Poly rbar = solve_rbar(spec, ctx);
        for (int n = 0; n <= env.horizon(); ++n) {
            EXPECT_TRUE(nonnegative_integers(env.r(n))) << n;
            EXPECT_TRUE(nonnegative_integers(env.r(n) - env.r(n - 1))) << n;
            if (n > static_cast<int>(order) * (2 * m - 2)) {
                EXPECT_EQ(env.r(n), rbar) << n;
            }
        }
        // N vertices carry at most N(m-1) buds, and the bound is attained.
        const int depth = static_cast<int>(order) * (m - 1);
        EXPECT_EQ(env.r(depth), rbar);
        EXPECT_NE(env.r(depth - 1), rbar);
    }
}

TEST(Residual, PerturbationIsLocal)
{
    const auto spec = ModelSpec::up_to(2);
    const auto ctx = SeriesContext::couplings(4);
    const auto env = solve_master(spec, ctx);
    std::vector<Poly> values;
    for (int n = 0; n <= env.horizon(); ++n) values.push_back(env.r(n));
    values[0] += g(2);
    const auto bad = WeightEnv::solved(values, env.tail(), ctx);
    const auto res = residual_master(bad, spec, 0, env.horizon());
    EXPECT_FALSE(res[0].direct.is_zero());
    EXPECT_FALSE(res[0].reciprocal.is_zero());
    for (const auto& r : res) {
        if (r.n >= 2 * spec.m) {
            EXPECT_TRUE(r.direct.is_zero()) << r.n;
        }
    }
}

TEST(SolveMaster, XBoundaryTetravalent)
{
    const Poly x = Poly::x();
    const auto env = solve_master(ModelSpec::pure(2, x), SeriesContext::couplings(3));
    const Poly expected = x + g(2) * (x + power(x, 2)) +
                          power(g(2), 2) * (x * Rational(3) + power(x, 2) * Rational(4) + power(x, 3) * Rational(2)) +
                          power(g(2), 3) * (x * Rational(14) + power(x, 2) * Rational(20) +
                                            power(x, 3) * Rational(15) + power(x, 4) * Rational(5));
    EXPECT_EQ(env.r(0), expected);
    // Setting x = 1 recovers the unmodified model.
    const auto plain = solve_master(ModelSpec::pure(2), SeriesContext::couplings(3));
    for (int n = 0; n <= 4; ++n) {
        EXPECT_EQ(substitute(env.r(n), {{VarId::x(), Poly(1)}}, SeriesContext::couplings(3)), plain.r(n)) << n;
    }
}

TEST(SolveMaster, ClosedFormOfR0)
{
    const auto spec = ModelSpec::up_to(3);
    const auto ctx = SeriesContext::couplings(5);
    const auto env = solve_master(spec, ctx);
    const Poly r = solve_rbar(spec, ctx);
    const Poly closed =
        r - multiply(g(2), power(r, 3, ctx), ctx) - multiply(g(3), power(r, 4, ctx), ctx) * Rational(5);
    EXPECT_EQ(env.r(0), truncate(closed, ctx));
}
