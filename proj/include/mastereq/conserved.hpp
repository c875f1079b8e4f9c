#ifndef MASTEREQ_CONSERVED_HPP
#define MASTEREQ_CONSERVED_HPP

// Three families of conserved quantities of the master equation, their
// inversion back to V', and the inversion identities behind them.
//
//   gamma        built from positive walks Z+ starting at n-1
//   gamma_tilde  symmetric under R_{n-j} <-> R_{n+j}
//   theta        gamma_tilde compacted so that R_{n+m-1} drops out
//
// On a solved env all three are independent of n and share the value G_{2i}.

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mastereq/algebra.hpp"
#include "mastereq/heaps.hpp"
#include "mastereq/model.hpp"
#include "mastereq/walks.hpp"

namespace mastereq {

enum class Family { gamma, gamma_tilde, theta };

inline std::string family_name(Family f)
{
    switch (f) {
    case Family::gamma: return "gamma";
    case Family::gamma_tilde: return "gamma_tilde";
    case Family::theta: return "theta";
    }
    return "?";
}

// Whether the index-0 member is used as defined or replaced by 1, which is
// its value whenever the master equation holds.
enum class Gamma0 { literal, unit };

inline Poly gamma0(int n, const WeightEnv& env, const ModelSpec& spec)
{
    Poly g = env.r(n - 1) - vprime(n - 1, n - 2, env, spec);
    if (n == 0) g += Poly(1);
    return g;
}

inline Poly gamma(int i, int n, const WeightEnv& env, const ModelSpec& spec, Gamma0 mode = Gamma0::literal)
{
    if (i < 0) throw std::invalid_argument("gamma index must be non-negative");
    if (i == 0 && mode == Gamma0::unit) return Poly(1);
    const Poly g0 = gamma0(n, env, spec);
    if (i == 0) return g0;
    const SeriesContext& ctx = env.context();
    Poly out = multiply(positive_walk_gf(n - 1, n - 1, 2 * i, env), mode == Gamma0::literal ? g0 : Poly(1), ctx);
    for (int j = 1; j <= i; ++j) {
        out -= multiply(positive_walk_gf(n - 1, n - 1 + 2 * j, 2 * i, env), vprime(n + 2 * j - 1, n - 2, env, spec),
                        ctx);
    }
    return out;
}

inline Poly gamma_tilde0(int n, const WeightEnv& env, const ModelSpec& spec)
{
    return env.r(n) - vprime(n, n - 1, env, spec);
}

// Z_{n-j,n+j-1}(2i-1) - R_{n-j-1} R_{n+j+1} Z_{n-j-2,n+j+1}(2i-1)
inline Poly symmetric_walk_block(int i, int j, int n, const WeightEnv& env)
{
    const SeriesContext& ctx = env.context();
    Poly corner = multiply(env.r(n - j - 1), env.r(n + j + 1), ctx);
    return walk_gf(n - j, n + j - 1, 2 * i - 1, env) -
           multiply(corner, walk_gf(n - j - 2, n + j + 1, 2 * i - 1, env), ctx);
}

inline Poly gamma_tilde(int i, int n, const WeightEnv& env, const ModelSpec& spec, Gamma0 mode = Gamma0::literal)
{
    if (i < 0) throw std::invalid_argument("gamma_tilde index must be non-negative");
    if (i == 0 && mode == Gamma0::unit) return Poly(1);
    const Poly g0 = gamma_tilde0(n, env, spec);
    if (i == 0) return g0;
    const SeriesContext& ctx = env.context();
    Poly out = multiply(symmetric_walk_block(i, 0, n, env), mode == Gamma0::literal ? g0 : Poly(1), ctx);
    for (int j = 1; j <= i; ++j) {
        out -= multiply(symmetric_walk_block(i, j, n, env), vprime(n + j, n - j - 1, env, spec), ctx);
    }
    return out;
}

inline Poly theta(int i, int n, const WeightEnv& env, const ModelSpec& spec)
{
    if (i < 0) throw std::invalid_argument("theta index must be non-negative");
    const Poly g0 = gamma_tilde0(n, env, spec);
    return gamma_tilde(i, n, env, spec) + multiply(Poly(1) - g0, walk_gf(n - 1, n - 1, 2 * i, env), env.context());
}

inline Poly conserved_value(Family f, int i, int n, const WeightEnv& env, const ModelSpec& spec,
                            Gamma0 mode = Gamma0::literal)
{
    switch (f) {
    case Family::gamma: return gamma(i, n, env, spec, mode);
    case Family::gamma_tilde: return gamma_tilde(i, n, env, spec, mode);
    case Family::theta: return theta(i, n, env, spec);
    }
    return {};
}

// Inverse of gamma (resp. gamma_tilde): recovers V'_{n+2j-1,n-2}
// (resp. V'_{n+j,n-j-1}) from the values G_0..G_{2j} of the family at n,
// supplied as values[i] = member of index i.
inline Poly vprime_from_conserved(int j, int n, Family family, const std::vector<Poly>& values, const WeightEnv& env)
{
    if (j < 0) throw std::invalid_argument("index must be non-negative");
    if (static_cast<int>(values.size()) <= j) throw std::invalid_argument("need conserved values for indices 0..j");
    if (family == Family::theta) throw std::invalid_argument("no V' inversion for the compacted family");
    const SeriesContext& ctx = env.context();
    const bool tilde = family == Family::gamma_tilde;
    const int lo = tilde ? n - j : n - 1;
    const int hi = tilde ? n + j - 1 : n + 2 * j - 2;
    Poly out;
    for (int i = 0; i <= j; ++i) {
        Poly term = multiply(hard_dimer_gf(lo, hi, i, env), values[static_cast<std::size_t>(j - i)], ctx);
        if (i % 2 == 0) {
            out -= term;
        } else {
            out += term;
        }
    }
    if (j == 0) {
        if (tilde) {
            out += env.r(n);
        } else {
            out += env.r(n - 1);
            if (n == 0) out += Poly(1);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Inversion identities. Each returns the pair (lhs, rhs); they agree for
// arbitrary weights R_i, so they are checked in symbolic mode.

struct IdentitySides {
    Poly lhs;
    Poly rhs;
    bool holds() const { return lhs == rhs; }
};

// Z_{a,b}(2i-1) extended to i = 0 by Z_{a,a-1}(-1) = 1, the counterpart of
// Pi_{a,a-1}(0) = 1 used by the alternating sums below.
inline Poly odd_walk_gf(int a, int b, int i, const WeightEnv& env)
{
    if (i == 0) return b == a - 1 ? Poly(1) : Poly();
    return walk_gf(a, b, 2 * i - 1, env);
}

// sum_l (-1)^{k-l} Pi_{a,a+2k-1}(k-l) Z+_{a,a+2j}(2l) = delta_{kj}
inline IdentitySides positive_walk_inversion(int a, int k, int j, const WeightEnv& env)
{
    Poly lhs;
    for (int l = 0; l <= k; ++l) {
        Poly t = multiply(hard_dimer_gf(a, a + 2 * k - 1, k - l, env), positive_walk_gf(a, a + 2 * j, 2 * l, env),
                          env.context());
        lhs += ((k - l) % 2 == 0) ? t : -t;
    }
    return {lhs, k == j ? Poly(1) : Poly()};
}

inline Poly alternating_dimer_sum(int n, int j, const std::function<Poly(int)>& inner, const WeightEnv& env)
{
    Poly out;
    for (int i = 0; i <= j; ++i) {
        Poly t = multiply(hard_dimer_gf(n - j, n + j - 1, j - i, env), inner(i), env.context());
        out += ((j - i) % 2 == 0) ? t : -t;
    }
    return out;
}

// Alternating sum with prod_{l=1..k} R_{n+k+1-2l} Z_{n-k,n+k-1}(2i-1)
// = Pi_{n-j,n+j-1}(j) [j >= k] [j = k mod 2], for j >= 1, k >= 0.
inline IdentitySides symmetric_inversion_general(int n, int j, int k, const WeightEnv& env)
{
    const SeriesContext& ctx = env.context();
    Poly prod(1);
    for (int l = 1; l <= k; ++l) prod = multiply(prod, env.r(n + k + 1 - 2 * l), ctx);
    Poly lhs = alternating_dimer_sum(
        n, j, [&](int i) { return multiply(prod, odd_walk_gf(n - k, n + k - 1, i, env), ctx); }, env);
    Poly rhs = (j >= k && (j - k) % 2 == 0) ? hard_dimer_gf(n - j, n + j - 1, j, env) : Poly();
    return {lhs, rhs};
}

// Alternating sum of Z_{n-k,n+k-1}(2i-1) - R_{n-k-1}R_{n+k+1}Z_{n-k-2,n+k+1}(2i-1)
// equals delta_{jk}.
inline IdentitySides symmetric_inversion(int n, int j, int k, const WeightEnv& env)
{
    const SeriesContext& ctx = env.context();
    const Poly corner = multiply(env.r(n - k - 1), env.r(n + k + 1), ctx);
    Poly lhs = alternating_dimer_sum(
        n, j,
        [&](int i) {
            return odd_walk_gf(n - k, n + k - 1, i, env) - multiply(corner, odd_walk_gf(n - k - 2, n + k + 1, i, env), ctx);
        },
        env);
    return {lhs, j == k ? Poly(1) : Poly()};
}

// Alternating sum of R_{n-1} Z_{n-2,n-1}(2i-1)
// = -Pi_{n-j,n+j-1}(j) [j even] + prod_{l=1..j} R_{n-l}, for j >= 1.
inline IdentitySides shifted_inversion(int n, int j, const WeightEnv& env)
{
    const SeriesContext& ctx = env.context();
    Poly lhs = alternating_dimer_sum(
        n, j, [&](int i) { return multiply(env.r(n - 1), odd_walk_gf(n - 2, n - 1, i, env), ctx); }, env);
    Poly rhs;
    if (j % 2 == 0) rhs -= hard_dimer_gf(n - j, n + j - 1, j, env);
    Poly prod(1);
    for (int l = 1; l <= j; ++l) prod = multiply(prod, env.r(n - l), ctx);
    rhs += prod;
    return {lhs, rhs};
}

// Z_{n-1,n-1}(2i) = block(i,0) + sum_{j=1..i} block(i,j) prod_{l=1..j} R_{n-l}
inline IdentitySides compaction_identity(int n, int i, const WeightEnv& env)
{
    const SeriesContext& ctx = env.context();
    Poly rhs = symmetric_walk_block(i, 0, n, env);
    Poly prod(1);
    for (int j = 1; j <= i; ++j) {
        prod = multiply(prod, env.r(n - j), ctx);
        rhs += multiply(symmetric_walk_block(i, j, n, env), prod, ctx);
    }
    return {walk_gf(n - 1, n - 1, 2 * i, env), rhs};
}

// -prod_{l=1..j} R_{n-l} = sum_i (-1)^{i-1} Pi_{n-j,n+j-1}(i) Z_{n-1,n-1}(2j-2i)
inline IdentitySides compaction_inverse(int n, int j, const WeightEnv& env)
{
    const SeriesContext& ctx = env.context();
    Poly lhs(-1);
    for (int l = 1; l <= j; ++l) lhs = multiply(lhs, env.r(n - l), ctx);
    Poly rhs;
    for (int i = 0; i <= j; ++i) {
        Poly t = multiply(hard_dimer_gf(n - j, n + j - 1, i, env), walk_gf(n - 1, n - 1, 2 * j - 2 * i, env), ctx);
        rhs += (i % 2 == 1) ? t : -t;
    }
    return {lhs, rhs};
}

}  // namespace mastereq

#endif  // MASTEREQ_CONSERVED_HPP
