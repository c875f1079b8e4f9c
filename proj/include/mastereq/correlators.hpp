#ifndef MASTEREQ_CORRELATORS_HPP
#define MASTEREQ_CORRELATORS_HPP

// Multi-point functions G_{2i} (G_0 = 1) and the identities they satisfy.
// G_{2i} is reachable three ways: Z_{0,-1}(2i-1) on a solved env, a closed
// polynomial in Rbar, and a linear recursion valid for indices >= m.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "mastereq/algebra.hpp"
#include "mastereq/conserved.hpp"
#include "mastereq/model.hpp"
#include "mastereq/walks.hpp"

namespace mastereq {

inline Integer ballot(int n, int k) { return binomial(n, k) - binomial(n, k - 1); }

inline Poly g2i_boundary(int i, const WeightEnv& env)
{
    if (i < 0) throw std::invalid_argument("correlator index must be non-negative");
    if (i == 0) return Poly(1);
    return walk_gf(0, -1, 2 * i - 1, env);
}

// G_0..G_{2*count-2} from the boundary route.
inline std::vector<Poly> correlator_table(int count, const WeightEnv& env)
{
    std::vector<Poly> out;
    for (int i = 0; i < count; ++i) out.push_back(g2i_boundary(i, env));
    return out;
}

// Closed form as a polynomial in the symbol Rbar and the couplings.
inline Poly g2i_closed(int i, const ModelSpec& spec)
{
    if (i < 0) throw std::invalid_argument("correlator index must be non-negative");
    if (i == 0) return Poly(1);
    const Poly r = Poly::rbar();
    Poly out = power(r, static_cast<unsigned>(i)) * Rational(ballot(2 * i, i));
    for (int k = 2; k <= spec.m; ++k) {
        if (!spec.is_active(k)) continue;
        Integer c = 0;
        for (int j = 1; j <= std::min(i, k - 1); ++j) c += ballot(2 * i, i - j) * binomial(2 * k - 1, k + j);
        if (c == 0) continue;
        out -= Poly::g(k) * power(r, static_cast<unsigned>(i + k)) * Rational(c);
    }
    return out;
}

// Closed form with Rbar replaced by its series.
inline Poly g2i_closed_series(int i, const ModelSpec& spec, const Poly& rbar, const SeriesContext& ctx)
{
    return substitute(g2i_closed(i, spec), {{VarId::rbar(), rbar}}, ctx);
}

// G_{2j} for j >= m from G_0..G_{2j-2} (lower[i] = G_{2i}).
inline Poly g2i_reduce(int j, const ModelSpec& spec, const std::vector<Poly>& lower, const Poly& rbar,
                       const SeriesContext& ctx)
{
    if (j < spec.m) throw std::invalid_argument("linear reduction needs j >= m");
    if (static_cast<int>(lower.size()) < j) throw std::invalid_argument("need G_0..G_{2j-2}");
    Poly out;
    Poly rpow(1);
    for (int i = 1; i <= j; ++i) {
        rpow = multiply(rpow, rbar, ctx);
        Poly t = multiply(rpow, lower[static_cast<std::size_t>(j - i)], ctx) * Rational(binomial(2 * j - i, i));
        out += (i % 2 == 1) ? t : -t;
    }
    return out;
}

// sum_{k>=j+1} g_k C(2k-1,k+j) R^{k+j} against the alternating G sum
// (plus R at j = 0).
inline IdentitySides inverse_relation(int j, const ModelSpec& spec, const std::vector<Poly>& g, const Poly& rbar,
                                      const SeriesContext& ctx)
{
    Poly lhs;
    for (int k = j + 1; k <= spec.m; ++k) {
        if (!spec.is_active(k)) continue;
        lhs += multiply(Poly::g(k), power(rbar, static_cast<unsigned>(k + j), ctx), ctx) *
               Rational(binomial(2 * k - 1, k + j));
    }
    Poly rhs;
    Poly rpow(1);
    for (int i = 0; i <= j; ++i) {
        Poly t = multiply(rpow, g.at(static_cast<std::size_t>(j - i)), ctx) * Rational(binomial(2 * j - i, i));
        rhs += (i % 2 == 1) ? t : -t;
        rpow = multiply(rpow, rbar, ctx);
    }
    if (j == 0) rhs += rbar;
    return {truncate(lhs, ctx), truncate(rhs, ctx)};
}

inline IdentitySides one_cut(int i, const ModelSpec& spec, const std::vector<Poly>& g, const Poly& rbar,
                             const SeriesContext& ctx)
{
    Poly lhs;
    for (int l = 0; l <= i; ++l) {
        lhs += multiply(g.at(static_cast<std::size_t>(i - l)), power(rbar, static_cast<unsigned>(l), ctx), ctx) *
               Rational(binomial(2 * l, l));
    }
    Poly rhs = power(rbar, static_cast<unsigned>(i), ctx) * Rational(binomial(2 * i + 1, i));
    for (int k = 2; k <= spec.m; ++k) {
        if (!spec.is_active(k)) continue;
        Integer c = 0;
        for (int j = 1; j <= std::min(i, k - 1); ++j) c += binomial(2 * i + 1, i - j) * binomial(2 * k - 1, k + j);
        if (c == 0) continue;
        rhs -= multiply(Poly::g(k), power(rbar, static_cast<unsigned>(i + k), ctx), ctx) * Rational(c);
    }
    return {truncate(lhs, ctx), truncate(rhs, ctx)};
}

struct IntegerSides {
    Integer lhs;
    Integer rhs;
    bool holds() const { return lhs == rhs; }
};

// sum_l C(2l,l) [C(2i-2l,i-l-j) - C(2i-2l,i-l-j-1)] = C(2i+1,i-j)
inline IntegerSides binomial_identity(int i, int j)
{
    Integer lhs = 0;
    for (int l = 0; l <= i; ++l) lhs += binomial(2 * l, l) * ballot(2 * i - 2 * l, i - l - j);
    return {lhs, binomial(2 * i + 1, i - j)};
}

// G_{2i+2} = sum_k g_k G_{2i+2k} + sum_j G_{2i-2j} G_{2j}; needs g up to index i+m.
inline IdentitySides loop_equation(int i, const ModelSpec& spec, const std::vector<Poly>& g, const SeriesContext& ctx)
{
    if (static_cast<int>(g.size()) <= i + spec.m) throw std::invalid_argument("need G up to index 2(i+m)");
    Poly rhs;
    for (int k = 1; k <= spec.m; ++k) {
        if (!spec.is_active(k)) continue;
        rhs += multiply(Poly::g(k), g[static_cast<std::size_t>(i + k)], ctx);
    }
    for (int j = 0; j <= i; ++j) {
        rhs += multiply(g[static_cast<std::size_t>(i - j)], g[static_cast<std::size_t>(j)], ctx);
    }
    return {truncate(g[static_cast<std::size_t>(i + 1)], ctx), rhs};
}

// ---------------------------------------------------------------------------
// Bijective identities, i.e. conservation of G_2..G_8 rewritten with
// G_0 = 1 and the lower members substituted. Valid on a solved env.

namespace detail {

struct VPrimeProducts {
    const WeightEnv& env;
    const ModelSpec& spec;
    int n;

    // Product of V'_{n+a_1,n+b_1} V'_{n+a_2,n+b_2} ...
    Poly operator()(std::initializer_list<std::pair<int, int>> factors) const
    {
        Poly out(1);
        for (auto [a, b] : factors) out = multiply(out, vprime(n + a, n + b, env, spec), env.context());
        return out;
    }
};

}  // namespace detail

// R_n - R_0 = V'_{n+1,n-2}
inline IdentitySides bijective_g2(int n, const WeightEnv& env, const ModelSpec& spec)
{
    return {env.r(n) - env.r(0), vprime(n + 1, n - 2, env, spec)};
}

// R_0 (R_{n+1} - R_1) = V'_{n+3,n-2} + V'_{n+3,n} V'_{n+1,n-2}
inline IdentitySides bijective_g4(int n, const WeightEnv& env, const ModelSpec& spec)
{
    const detail::VPrimeProducts v{env, spec, n};
    Poly lhs = multiply(env.r(0), env.r(n + 1) - env.r(1), env.context());
    return {lhs, v({{3, -2}}) + v({{3, 0}, {1, -2}})};
}

inline IdentitySides bijective_g6(int n, const WeightEnv& env, const ModelSpec& spec)
{
    const SeriesContext& ctx = env.context();
    const detail::VPrimeProducts v{env, spec, n};
    auto r = [&](int i) { return env.r(i); };
    Poly lhs = multiply(multiply(r(0), r(1), ctx), r(n + 2) - r(2), ctx) -
               multiply(r(0), multiply(r(n + 1) - r(1), r(n + 3) - r(1), ctx), ctx);
    Poly rhs = v({{5, -2}}) + v({{5, 0}, {1, -2}}) + v({{5, 2}, {3, -2}}) + v({{5, 2}, {3, 0}, {1, -2}});
    return {lhs, rhs};
}

inline IdentitySides bijective_g8(int n, const WeightEnv& env, const ModelSpec& spec)
{
    const SeriesContext& ctx = env.context();
    const detail::VPrimeProducts v{env, spec, n};
    auto r = [&](int i) { return env.r(i); };
    auto mul = [&](const Poly& a, const Poly& b) { return multiply(a, b, ctx); };
    const Poly r01 = mul(r(0), r(1));
    Poly lhs = mul(mul(r01, r(2)), r(n + 3) - r(3));
    lhs -= mul(r01, mul(r(n + 1) - r(1), r(n + 4) - r(2)) + mul(r(n + 2) - r(2), r(n + 4) - r(1)) +
                        mul(r(n + 2) - r(2), r(n + 5) - r(2)));
    lhs += mul(r(0), mul(mul(r(n + 1) - r(1), r(n + 3) - r(1)), r(n + 5) - r(1)));
    Poly rhs = v({{7, -2}}) + v({{7, 0}, {1, -2}}) + v({{7, 4}, {5, -2}}) + v({{7, 2}, {3, 0}, {1, -2}}) +
               v({{7, 4}, {5, 0}, {1, -2}}) + v({{7, 4}, {5, 2}, {3, -2}}) + v({{7, 2}, {3, -2}}) +
               v({{7, 4}, {5, 2}, {3, 0}, {1, -2}});
    return {lhs, rhs};
}

}  // namespace mastereq

#endif  // MASTEREQ_CORRELATORS_HPP
