#ifndef MASTEREQ_STATS_HPP
#define MASTEREQ_STATS_HPP

// Statistics of the number p of faces adjacent to the external face of large
// rooted tetravalent and hexavalent graphs. R_0(x) weights each such face by
// x; Delta(x) = sum_p P(p) x^p is its large-size limit.

#include <map>
#include <stdexcept>
#include <string>

#include "mastereq/algebra.hpp"
#include "mastereq/master.hpp"
#include "mastereq/model.hpp"

namespace mastereq {

enum class FaceModel { tetra, hexa };

inline FaceModel parse_face_model(const std::string& s)
{
    if (s == "tetra") return FaceModel::tetra;
    if (s == "hexa") return FaceModel::hexa;
    throw std::invalid_argument("unknown model '" + s + "' (expected tetra or hexa)");
}

inline int face_model_k(FaceModel m) { return m == FaceModel::tetra ? 2 : 3; }

inline ModelSpec face_model_spec(FaceModel m, Poly boundary = Poly::x())
{
    return ModelSpec::pure(face_model_k(m), std::move(boundary));
}

// R_0(x) through the given order in the coupling.
inline Poly face_series(FaceModel model, std::uint32_t order)
{
    return solve_master(face_model_spec(model), SeriesContext::couplings(order)).r(0);
}

// Algebraic equation satisfied by R_0(x), evaluated at r0 with R -> rbar.
inline Poly face_equation(FaceModel model, const Poly& r0, const Poly& rbar, const SeriesContext& ctx)
{
    const Poly x = Poly::x();
    auto mul = [&](const Poly& a, const Poly& b) { return multiply(a, b, ctx); };
    auto pw = [&](const Poly& a, std::uint32_t e) { return power(a, e, ctx); };
    const Poly r0sq = mul(r0, r0);
    if (model == FaceModel::tetra) {
        const Poly g = Poly::g(2);
        Poly lin = Poly(1) - x + mul(g, mul(rbar, rbar - Poly(2))) - mul(g * g, pw(rbar, 3)) * Rational(2);
        return truncate(x * (x - Poly(1)) + mul(lin, r0) + mul(x * g, r0sq), ctx);
    }
    const Poly g = Poly::g(3);
    const Poly xm1 = x - Poly(1);
    Poly lin = xm1 + mul(g * Rational(2), mul(pw(rbar, 2), Poly(3) - rbar * Rational(2))) +
               mul(g * g, pw(rbar, 5)) * Rational(24);
    Poly quad = mul(mul(rbar, x * g), rbar - Poly(2) - mul(g, pw(rbar, 3)) * Rational(5));
    return truncate(x * xm1 * xm1 - mul(xm1 * lin, r0) + mul(quad, r0sq) + mul(x * x * g, mul(r0sq, r0)), ctx);
}

// ---------------------------------------------------------------------------
// Limiting distributions

// Delta(x) = (1 - (8 - 9x)(4 - 3x)^{-3/2}) / (2x) through x^order, using
// (4 - 3x)^{-3/2} = (1/8) sum_n (2n+1)!!/(2^n n!) (3x/4)^n.
inline Poly delta_tetra(std::uint32_t order)
{
    const SeriesContext ctx = SeriesContext::in_boundary(order + 1);
    Poly inv;
    Rational a = 1;
    const Rational step = make_rational(3, 4);
    Rational spow = 1;
    for (std::uint32_t n = 0; n <= order + 1; ++n) {
        if (n > 0) {
            a *= make_rational(2 * static_cast<long>(n) + 1, 2 * static_cast<long>(n));
            spow *= step;
        }
        inv.add_term(Monomial::of(VarId::x(), n), a * spow / 8);
    }
    Poly f = Poly(1) - multiply(Poly(8) - Poly::x() * Rational(9), inv, ctx);
    Poly delta;
    for (const auto& [m, c] : f.terms()) {
        const auto e = m.exponent(VarId::x());
        if (e == 0) throw std::logic_error("delta_tetra: constant term did not cancel");
        if (e - 1 <= order) delta.add_term(Monomial::of(VarId::x(), e - 1), c / 2);
    }
    return delta;
}

inline Poly delta_tetra_equation(const Poly& delta, std::uint32_t order)
{
    const SeriesContext ctx = SeriesContext::in_boundary(order);
    const Poly x = Poly::x();
    const Poly base = Poly(4) - x * Rational(3);
    Poly lhs = x * (x - Poly(1)) * Rational(27) +
               multiply(power(base, 3) * Rational(4), multiply(delta, Poly(1) - multiply(x, delta, ctx), ctx), ctx);
    return truncate(lhs, ctx);
}

// (3/16)^{p+1} (2p+1)! / ((p+1)! (p-1)!)
inline Rational p_tetra(int p)
{
    if (p < 1) throw std::invalid_argument("p_tetra needs p >= 1");
    Rational r = make_rational(factorial(2 * p + 1), factorial(p + 1) * factorial(p - 1));
    Rational base = make_rational(3, 16);
    for (int i = 0; i <= p; ++i) r *= base;
    return r;
}

// Closed form of Delta at a rational point where 4 - 3x is a perfect square.
inline Rational delta_tetra_at(const Rational& x)
{
    if (x == 0) return 0;
    Rational b = 4 - 3 * x;
    if (b <= 0 || mpz_perfect_square_p(b.get_num_mpz_t()) == 0 || mpz_perfect_square_p(b.get_den_mpz_t()) == 0) {
        throw std::invalid_argument("delta_tetra_at: 4 - 3x must be a positive rational square");
    }
    Integer sn, sd;
    mpz_sqrt(sn.get_mpz_t(), b.get_num_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), b.get_den_mpz_t());
    Rational root = make_rational(sn, sd);
    Rational b32 = b * root;
    return (1 - (8 - 9 * x) / b32) / (2 * x);
}

// Cubic relation for the hexavalent Delta, as a polynomial in x and u = Delta.
inline Poly delta_hexa_equation()
{
    const Poly x = Poly::x();
    const Poly u = Poly::var(VarId::u());
    const Poly xm1 = x - Poly(1);
    const Poly cubic = power(x, 3) * Rational(125) + power(x, 2) * Rational(475) + x * Rational(200) - Poly(96);
    const Poly seven = Poly(7) - x * Rational(5);
    return x * xm1 * xm1 * Rational(125) - xm1 * cubic * u * Rational(9) -
           x * (x + Poly(4)) * power(seven, 3) * u * u * (Poly(1) - x * u) * Rational(27);
}

inline Poly delta_hexa(std::uint32_t order)
{
    return newton_solve(delta_hexa_equation(), Poly(), SeriesContext::in_boundary(order));
}

inline Poly delta_hexa_residual(const Poly& delta, std::uint32_t order)
{
    return substitute(delta_hexa_equation(), {{VarId::u(), delta}}, SeriesContext::in_boundary(order));
}

struct FaceDistribution {
    Poly delta;
    std::map<int, Rational> probabilities;
};

inline FaceDistribution face_distribution(FaceModel model, std::uint32_t order)
{
    FaceDistribution d;
    d.delta = model == FaceModel::tetra ? delta_tetra(order) : delta_hexa(order);
    for (std::uint32_t p = 1; p <= order; ++p) {
        d.probabilities[static_cast<int>(p)] = d.delta.coeff(Monomial::of(VarId::x(), p));
    }
    return d;
}

// ---------------------------------------------------------------------------
// R_0 and R_1 at m <= 3 as functions of Rbar. R_1 is a ratio, returned as
// numerator and denominator.

inline Poly r0_closed(const ModelSpec& spec)
{
    const Poly r = Poly::rbar();
    return r - spec.coupling(2) * power(r, 3) - spec.coupling(3) * power(r, 4) * Rational(5);
}

struct Fraction {
    Poly num;
    Poly den;
};

inline Fraction r1_closed(const ModelSpec& spec)
{
    const Poly r = Poly::rbar();
    const Poly g2 = spec.coupling(2);
    const Poly g3 = spec.coupling(3);
    Poly inner = Poly(1) - g3 * power(r, 3) * Rational(6) - g2 * g2 * power(r, 4) -
                 g3 * g3 * power(r, 6) * Rational(25) - g2 * (power(r, 2) + g3 * power(r, 5) * Rational(10));
    Poly den = Poly(1) - g2 * power(r, 2) - g3 * power(r, 3) * Rational(5);
    return {r * inner, den};
}

}  // namespace mastereq

#endif  // MASTEREQ_STATS_HPP
