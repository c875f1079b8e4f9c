#include <gtest/gtest.h>

#include "mastereq/correlators.hpp"
#include "mastereq/master.hpp"

using namespace mastereq;

namespace {

Poly g(int k) { return Poly::g(k); }

struct SolvedModel {
    ModelSpec spec;
    SeriesContext ctx;
    WeightEnv env;
    Poly rbar;

    explicit SolvedModel(int m, std::uint32_t order = 4)
        : spec(ModelSpec::up_to(m)),
          ctx(SeriesContext::couplings(order)),
          env(solve_master(spec, ctx)),
          rbar(solve_rbar(spec, ctx))
    {
    }
};

}  // namespace

TEST(Ballot, Values)
{
    EXPECT_EQ(ballot(2, 1), 1);
    EXPECT_EQ(ballot(4, 2), 2);
    EXPECT_EQ(ballot(6, 3), 5);
    EXPECT_EQ(ballot(8, 4), 14);
    EXPECT_EQ(ballot(4, 0), 1);
    EXPECT_EQ(ballot(4, -1), 0);
}

TEST(Correlators, BoundaryRouteSymbolic)
{
    const auto env = WeightEnv::symbolic(0);
    const Poly r0 = Poly::r(0), r1 = Poly::r(1), r2 = Poly::r(2);
    EXPECT_EQ(g2i_boundary(0, env), Poly(1));
    EXPECT_EQ(g2i_boundary(1, env), r0);
    EXPECT_EQ(g2i_boundary(2, env), r0 * (r0 + r1));
    EXPECT_EQ(g2i_boundary(3, env), r0 * (r0 * r0 + r0 * r1 * Rational(2) + r1 * r1 + r1 * r2));
    EXPECT_THROW(g2i_boundary(-1, env), std::invalid_argument);
    EXPECT_EQ(correlator_table(3, env).back(), g2i_boundary(2, env));
}

TEST(Correlators, ClosedForms)
{
    const auto spec = ModelSpec::up_to(3);
    const Poly r = Poly::rbar();
    EXPECT_EQ(g2i_closed(1, spec), r - g(2) * power(r, 3) - g(3) * power(r, 4) * Rational(5));
    EXPECT_EQ(g2i_closed(2, spec),
              power(r, 2) * Rational(2) - g(2) * power(r, 4) * Rational(3) - g(3) * power(r, 5) * Rational(16));
    EXPECT_EQ(g2i_closed(3, spec),
              power(r, 3) * Rational(5) - g(2) * power(r, 5) * Rational(9) - g(3) * power(r, 6) * Rational(50));
    EXPECT_EQ(g2i_closed(0, spec), Poly(1));
}

TEST(Correlators, RoutesAgree)
{
    for (int m : {1, 2, 3}) {
        const SolvedModel s(m);
        std::vector<Poly> table = correlator_table(5, s.env);
        for (int i = 0; i <= 4; ++i) {
            EXPECT_EQ(table[static_cast<std::size_t>(i)], g2i_closed_series(i, s.spec, s.rbar, s.ctx)) << m << i;
            if (i >= m) {
                EXPECT_EQ(g2i_reduce(i, s.spec, table, s.rbar, s.ctx), table[static_cast<std::size_t>(i)]) << m << i;
            }
        }
    }
}

TEST(Correlators, ReductionExamples)
{
    const auto spec = ModelSpec::up_to(3);
    const Poly r = Poly::rbar();
    const auto ctx = SeriesContext::exact();
    std::vector<Poly> gs = {Poly(1), Poly::var(VarId::parse("u")), Poly::g(1) * Poly::g(1), Poly::g(2) * Poly::g(2)};
    const Poly& g2 = gs[1];
    const Poly& g4 = gs[2];
    EXPECT_EQ(g2i_reduce(3, spec, gs, r, ctx), r * g4 * Rational(5) - power(r, 2) * g2 * Rational(6) + power(r, 3));
    gs[3] = g2i_reduce(3, spec, gs, r, ctx);
    EXPECT_EQ(g2i_reduce(4, spec, gs, r, ctx), r * gs[3] * Rational(7) - power(r, 2) * g4 * Rational(15) +
                                                   power(r, 3) * g2 * Rational(10) - power(r, 4));
    EXPECT_THROW(g2i_reduce(2, spec, gs, r, ctx), std::invalid_argument);
}

TEST(Correlators, InverseRelation)
{
    const SolvedModel s(3);
    const auto table = correlator_table(5, s.env);
    for (int j = 0; j <= 4; ++j) EXPECT_TRUE(inverse_relation(j, s.spec, table, s.rbar, s.ctx).holds()) << j;
}

TEST(Correlators, DimerCountsAreBinomials)
{
    const auto unit = WeightEnv::uniform(Poly(1));
    for (int j = 1; j <= 6; ++j) {
        for (int i = 0; i <= j; ++i) EXPECT_EQ(hard_dimer_gf(0, 2 * j - 1, i, unit), Poly(binomial(2 * j - i, i)));
    }
}

TEST(Correlators, OneCut)
{
    const SolvedModel s(3);
    const auto table = correlator_table(5, s.env);
    for (int i = 0; i <= 4; ++i) EXPECT_TRUE(one_cut(i, s.spec, table, s.rbar, s.ctx).holds()) << i;
}

TEST(Correlators, BinomialIdentity)
{
    for (int i = 0; i <= 10; ++i) {
        for (int j = 0; j <= i; ++j) EXPECT_TRUE(binomial_identity(i, j).holds()) << i << " " << j;
    }
}

TEST(Correlators, LoopEquation)
{
    for (int m : {1, 2, 3}) {
        const SolvedModel s(m);
        const auto table = correlator_table(3 + m + 1, s.env);
        for (int i = 0; i <= 3; ++i) {
            const auto sides = loop_equation(i, s.spec, table, s.ctx);
            EXPECT_EQ(sides.lhs, truncate(sides.rhs, s.ctx)) << m << i;
        }
        EXPECT_THROW(loop_equation(4, s.spec, table, s.ctx), std::invalid_argument);
    }
}

TEST(Correlators, BijectiveIdentities)
{
    const SolvedModel s(3);
    for (int n = 0; n <= 5; ++n) {
        for (const auto& sides : {bijective_g2(n, s.env, s.spec), bijective_g4(n, s.env, s.spec),
                                  bijective_g6(n, s.env, s.spec), bijective_g8(n, s.env, s.spec)}) {
            EXPECT_EQ(truncate(sides.lhs, s.ctx), truncate(sides.rhs, s.ctx)) << n;
        }
    }
}
