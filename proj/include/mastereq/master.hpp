#ifndef MASTEREQ_MASTER_HPP
#define MASTEREQ_MASTER_HPP

// Series solution of the master equation R_n = boundary_n + V'_{n,n-1}
// (R_i = 0 for i < 0) and of its n -> infinity limit
// R = 1 + sum_k g_k C(2k-1,k) R^k.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mastereq/algebra.hpp"
#include "mastereq/model.hpp"
#include "mastereq/walks.hpp"

namespace mastereq {

// Polynomial in the unknown u whose root is Rbar.
inline Poly rbar_equation(const ModelSpec& spec)
{
    const Poly u = Poly::var(VarId::u());
    Poly eq = u - Poly(1);
    Poly upow(1);
    for (int k = 1; k <= spec.m; ++k) {
        upow = upow * u;
        if (!spec.is_active(k)) continue;
        eq -= Poly::g(k) * upow * Rational(binomial(2 * k - 1, k));
    }
    return eq;
}

inline Poly solve_rbar(const ModelSpec& spec, const SeriesContext& ctx)
{
    return newton_solve(rbar_equation(spec), Poly(1), ctx);
}

// Heights beyond this index agree with Rbar modulo the truncation: a tree
// with at most N inner vertices has at most N(m-1) buds, which bounds its
// depth. The extra 2m margin covers the reach of V'_{n,n-1}.
inline int master_horizon(const ModelSpec& spec, std::uint32_t order)
{
    return static_cast<int>(order) * (2 * spec.m - 2) + 2 * spec.m;
}

// One Jacobi sweep R_n <- boundary_n + V'_{n,n-1}(previous iterate).
inline std::vector<Poly> master_sweep(const std::vector<Poly>& current, const Poly& tail, const ModelSpec& spec,
                                      const SeriesContext& ctx)
{
    const WeightEnv env = WeightEnv::solved(current, tail, ctx);
    std::vector<Poly> next(current.size());
    for (std::size_t n = 0; n < current.size(); ++n) {
        const int i = static_cast<int>(n);
        next[n] = truncate(spec.boundary_at(i) + vprime(i, i - 1, env, spec), ctx);
    }
    return next;
}

// Solves the master equation through graded order ctx.order. Each sweep
// raises the g-adic accuracy by one, so sweep s is carried out at order s.
inline WeightEnv solve_master(const ModelSpec& spec, const SeriesContext& ctx)
{
    if (ctx.is_exact()) throw std::invalid_argument("solve_master needs a finite order");
    const std::uint32_t order = *ctx.order;
    const int horizon = master_horizon(spec, order);
    const Poly tail = solve_rbar(spec, ctx);

    std::vector<Poly> values(static_cast<std::size_t>(horizon) + 1);
    for (int n = 0; n <= horizon; ++n) values[static_cast<std::size_t>(n)] = truncate(spec.boundary_at(n), ctx);

    for (std::uint32_t sweep = 1; sweep <= order; ++sweep) {
        const SeriesContext partial = ctx.with_order(sweep);
        values = master_sweep(values, truncate(tail, partial), spec, partial);
    }
    for (std::uint32_t extra = 0; extra < 2; ++extra) {
        auto next = master_sweep(values, tail, spec, ctx);
        if (next == values) return WeightEnv::solved(std::move(values), tail, ctx);
        values = std::move(next);
    }
    throw NonConvergence("master equation residuals persist after N+2 sweeps");
}

struct MasterResidual {
    int n = 0;
    Poly direct;      // R_n - boundary_n - V'_{n,n-1}
    Poly reciprocal;  // R_n - boundary_n / (1 - V'_{n-1,n})
};

inline std::vector<MasterResidual> residual_master(const WeightEnv& env, const ModelSpec& spec, int n_lo, int n_hi)
{
    const SeriesContext& ctx = env.context();
    std::vector<MasterResidual> out;
    for (int n = n_lo; n <= n_hi; ++n) {
        MasterResidual r;
        r.n = n;
        r.direct = truncate(env.r(n) - spec.boundary_at(n) - vprime(n, n - 1, env, spec), ctx);
        const Poly denom = Poly(1) - vprime(n - 1, n, env, spec);
        r.reciprocal = truncate(env.r(n) - multiply(spec.boundary_at(n), invert_series(denom, ctx), ctx), ctx);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace mastereq

#endif  // MASTEREQ_MASTER_HPP
