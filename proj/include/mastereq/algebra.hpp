#ifndef MASTEREQ_ALGEBRA_HPP
#define MASTEREQ_ALGEBRA_HPP

// Exact sparse multivariate polynomials over arbitrary-precision rationals,
// with optional truncation by total degree in a chosen set of "small"
// variables. Every generating function in the library is a Poly.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace mastereq {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den)
{
    if (den == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational make_rational(long num, long den = 1)
{
    return make_rational(Integer(num), Integer(den));
}

// C(n, k) with the convention C(n, k) = 0 outside 0 <= k <= n.
inline Integer binomial(long n, long k)
{
    if (n < 0 || k < 0 || k > n) {
        return 0;
    }
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

inline Integer factorial(long n)
{
    if (n < 0) {
        throw std::domain_error("factorial of a negative number");
    }
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

// ---------------------------------------------------------------------------
// Variables

enum class VarKind : std::uint8_t {
    coupling,      // g_k
    boundary,      // x
    weight,        // R_a, indexed by an integer height
    weight_limit,  // Rbar, the n -> infinity value of R_n
    eps,           // reserved
    unknown,       // u, the unknown of an algebraic equation
};

struct VarId {
    VarKind kind = VarKind::coupling;
    std::int32_t index = 0;

    friend constexpr auto operator<=>(const VarId&, const VarId&) = default;

    static constexpr VarId g(int k) { return {VarKind::coupling, k}; }
    static constexpr VarId x() { return {VarKind::boundary, 0}; }
    static constexpr VarId r(int a) { return {VarKind::weight, a}; }
    static constexpr VarId rbar() { return {VarKind::weight_limit, 0}; }
    static constexpr VarId eps() { return {VarKind::eps, 0}; }
    static constexpr VarId u() { return {VarKind::unknown, 0}; }

    std::string name() const
    {
        switch (kind) {
        case VarKind::coupling: return "g_" + std::to_string(index);
        case VarKind::boundary: return "x";
        case VarKind::weight: return "R_" + std::to_string(index);
        case VarKind::weight_limit: return "Rbar";
        case VarKind::eps: return "eps";
        case VarKind::unknown: return "u";
        }
        return "?";
    }

    static VarId parse(const std::string& s)
    {
        if (s == "x") return x();
        if (s == "Rbar") return rbar();
        if (s == "eps") return eps();
        if (s == "u") return u();
        auto index_of = [&](std::size_t skip) {
            std::size_t used = 0;
            int v = std::stoi(s.substr(skip), &used);
            if (used + skip != s.size()) {
                throw std::invalid_argument("bad variable name: " + s);
            }
            return v;
        };
        if (s.rfind("g_", 0) == 0) return g(index_of(2));
        if (s.rfind("R_", 0) == 0) return r(index_of(2));
        throw std::invalid_argument("bad variable name: " + s);
    }
};

// ---------------------------------------------------------------------------
// Monomials

class Monomial {
public:
    using Factor = std::pair<VarId, std::uint32_t>;

    Monomial() = default;

    explicit Monomial(std::vector<Factor> factors)
    {
        std::sort(factors.begin(), factors.end(),
                  [](const Factor& a, const Factor& b) { return a.first < b.first; });
        for (const auto& [v, e] : factors) {
            if (e == 0) continue;
            if (!factors_.empty() && factors_.back().first == v) {
                factors_.back().second += e;
            } else {
                factors_.emplace_back(v, e);
            }
            degree_ += e;
        }
    }

    static Monomial of(VarId v, std::uint32_t e = 1) { return Monomial({{v, e}}); }

    const std::vector<Factor>& factors() const { return factors_; }
    std::uint32_t total_degree() const { return degree_; }
    bool is_one() const { return factors_.empty(); }

    std::uint32_t exponent(VarId v) const
    {
        auto it = std::lower_bound(factors_.begin(), factors_.end(), v,
                                   [](const Factor& f, VarId id) { return f.first < id; });
        return (it != factors_.end() && it->first == v) ? it->second : 0;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b)
    {
        Monomial r;
        r.factors_.reserve(a.factors_.size() + b.factors_.size());
        auto i = a.factors_.begin();
        auto j = b.factors_.begin();
        while (i != a.factors_.end() || j != b.factors_.end()) {
            if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first)) {
                r.factors_.push_back(*i++);
            } else if (i == a.factors_.end() || j->first < i->first) {
                r.factors_.push_back(*j++);
            } else {
                r.factors_.emplace_back(i->first, i->second + j->second);
                ++i;
                ++j;
            }
        }
        r.degree_ = a.degree_ + b.degree_;
        return r;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors_ == b.factors_; }

    // Canonical order: total degree first, then lexicographic on the
    // (variable, exponent) sequence.
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b)
    {
        if (a.degree_ != b.degree_) return a.degree_ <=> b.degree_;
        return std::lexicographical_compare_three_way(a.factors_.begin(), a.factors_.end(),
                                                      b.factors_.begin(), b.factors_.end());
    }

    std::string to_string() const
    {
        if (factors_.empty()) return "1";
        std::string s;
        for (const auto& [v, e] : factors_) {
            if (!s.empty()) s += "*";
            s += v.name();
            if (e != 1) s += "^" + std::to_string(e);
        }
        return s;
    }

private:
    std::vector<Factor> factors_;
    std::uint32_t degree_ = 0;
};

// ---------------------------------------------------------------------------
// Truncation context

// Monomials whose total degree in the graded variables exceeds `order` are
// discarded. An empty order means exact arithmetic.
struct SeriesContext {
    std::vector<VarKind> graded_kinds;
    std::vector<VarId> graded_vars;
    std::optional<std::uint32_t> order;

    static SeriesContext exact() { return {}; }
    static SeriesContext couplings(std::uint32_t n) { return {{VarKind::coupling}, {}, n}; }
    static SeriesContext in_boundary(std::uint32_t n) { return {{VarKind::boundary}, {}, n}; }
    static SeriesContext in_vars(std::vector<VarId> vars, std::uint32_t n) { return {{}, std::move(vars), n}; }

    bool is_exact() const { return !order.has_value(); }

    bool graded(VarId v) const
    {
        return std::find(graded_kinds.begin(), graded_kinds.end(), v.kind) != graded_kinds.end() ||
               std::find(graded_vars.begin(), graded_vars.end(), v) != graded_vars.end();
    }

    std::uint32_t degree(const Monomial& m) const
    {
        std::uint32_t d = 0;
        for (const auto& [v, e] : m.factors()) {
            if (graded(v)) d += e;
        }
        return d;
    }

    bool keeps(const Monomial& m) const { return !order || degree(m) <= *order; }

    SeriesContext with_order(std::uint32_t n) const
    {
        SeriesContext c = *this;
        c.order = n;
        return c;
    }
};

// ---------------------------------------------------------------------------
// Polynomials

class Poly {
public:
    using Terms = std::map<Monomial, Rational>;

    Poly() = default;
    Poly(long c) : Poly(Rational(c)) {}  // NOLINT: implicit constants read naturally in formulas
    Poly(const Rational& c)              // NOLINT
    {
        if (c != 0) terms_.emplace(Monomial{}, c);
    }
    Poly(const Integer& c) : Poly(Rational(c)) {}  // NOLINT

    static Poly var(VarId v) { return term(Monomial::of(v), 1); }
    static Poly term(const Monomial& m, const Rational& c)
    {
        Poly p;
        if (c != 0) p.terms_.emplace(m, c);
        return p;
    }
    static Poly g(int k) { return var(VarId::g(k)); }
    static Poly x() { return var(VarId::x()); }
    static Poly r(int a) { return var(VarId::r(a)); }
    static Poly rbar() { return var(VarId::rbar()); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Rational coeff(const Monomial& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Rational constant() const { return coeff(Monomial{}); }

    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }

    std::vector<VarId> variables() const
    {
        std::vector<VarId> vs;
        for (const auto& [m, c] : terms_) {
            for (const auto& f : m.factors()) vs.push_back(f.first);
        }
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        return vs;
    }

    bool contains(VarId v) const
    {
        for (const auto& [m, c] : terms_) {
            if (m.exponent(v) != 0) return true;
        }
        return false;
    }

    void add_term(const Monomial& m, const Rational& c)
    {
        if (c == 0) return;
        auto [it, fresh] = terms_.try_emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Poly& operator+=(const Poly& o)
    {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o)
    {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    Poly& operator*=(const Rational& s)
    {
        if (s == 0) {
            terms_.clear();
        } else {
            for (auto& [m, c] : terms_) c *= s;
        }
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(Poly a)
    {
        for (auto& [m, c] : a.terms_) c = -c;
        return a;
    }
    friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
    friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
    friend Poly operator*(const Poly& a, const Poly& b);

    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

    std::string to_string() const
    {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            Rational mag = abs(c);
            if (first) {
                if (c < 0) os << "-";
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            first = false;
            if (m.is_one()) {
                os << mag.get_str();
            } else {
                if (mag != 1) os << mag.get_str() << "*";
                os << m.to_string();
            }
        }
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

private:
    Terms terms_;
};

// Product of a and b, discarding monomials beyond ctx.order as they are
// formed.
inline Poly multiply(const Poly& a, const Poly& b, const SeriesContext& ctx)
{
    if (a.is_zero() || b.is_zero()) return {};
    struct Graded {
        std::uint32_t deg;
        const Monomial* mono;
        const Rational* coeff;
    };
    auto grade = [&](const Poly& p) {
        std::vector<Graded> v;
        v.reserve(p.size());
        for (const auto& [m, c] : p.terms()) v.push_back({ctx.degree(m), &m, &c});
        std::sort(v.begin(), v.end(), [](const Graded& x, const Graded& y) { return x.deg < y.deg; });
        return v;
    };
    const auto ga = grade(a);
    const auto gb = grade(b);
    Poly::Terms acc;
    Rational prod;
    for (const auto& ta : ga) {
        if (ctx.order && ta.deg > *ctx.order) break;
        for (const auto& tb : gb) {
            if (ctx.order && ta.deg + tb.deg > *ctx.order) break;
            mpq_mul(prod.get_mpq_t(), ta.coeff->get_mpq_t(), tb.coeff->get_mpq_t());
            auto [it, fresh] = acc.try_emplace(*ta.mono * *tb.mono, prod);
            if (!fresh) it->second += prod;
        }
    }
    Poly r;
    for (auto& [m, c] : acc) r.add_term(m, c);
    return r;
}

inline Poly operator*(const Poly& a, const Poly& b) { return multiply(a, b, SeriesContext::exact()); }

inline Poly truncate(const Poly& p, const SeriesContext& ctx)
{
    if (ctx.is_exact()) return p;
    Poly r;
    for (const auto& [m, c] : p.terms()) {
        if (ctx.keeps(m)) r.add_term(m, c);
    }
    return r;
}

// Part of p of exact graded degree d.
inline Poly graded_part(const Poly& p, const SeriesContext& ctx, std::uint32_t d)
{
    Poly r;
    for (const auto& [m, c] : p.terms()) {
        if (ctx.degree(m) == d) r.add_term(m, c);
    }
    return r;
}

inline Rational coeff(const Poly& p, const Monomial& m) { return p.coeff(m); }

inline Poly power(const Poly& p, std::uint32_t e, const SeriesContext& ctx)
{
    Poly result(1);
    Poly base = truncate(p, ctx);
    while (e > 0) {
        if (e & 1U) result = multiply(result, base, ctx);
        e >>= 1U;
        if (e > 0) base = multiply(base, base, ctx);
    }
    return result;
}

inline Poly power(const Poly& p, std::uint32_t e) { return power(p, e, SeriesContext::exact()); }

using Bindings = std::map<VarId, Poly>;

// Simultaneous substitution of the bound variables, followed by truncation.
// Unbound variables are left in place.
inline Poly substitute(const Poly& p, const Bindings& bindings, const SeriesContext& ctx)
{
    std::map<std::pair<VarId, std::uint32_t>, Poly> powers;
    auto bound_power = [&](VarId v, std::uint32_t e) -> const Poly& {
        auto key = std::make_pair(v, e);
        auto it = powers.find(key);
        if (it == powers.end()) {
            it = powers.emplace(key, power(bindings.at(v), e, ctx)).first;
        }
        return it->second;
    };
    Poly result;
    for (const auto& [m, c] : p.terms()) {
        std::vector<Monomial::Factor> kept;
        std::vector<const Poly*> factors;
        for (const auto& [v, e] : m.factors()) {
            if (bindings.count(v)) {
                factors.push_back(&bound_power(v, e));
            } else {
                kept.emplace_back(v, e);
            }
        }
        Poly t = truncate(Poly::term(Monomial(kept), c), ctx);
        for (const Poly* f : factors) {
            if (t.is_zero()) break;
            t = multiply(t, *f, ctx);
        }
        result += t;
    }
    return truncate(result, ctx);
}

inline Poly derivative(const Poly& p, VarId v)
{
    Poly r;
    for (const auto& [m, c] : p.terms()) {
        const auto e = m.exponent(v);
        if (e == 0) continue;
        std::vector<Monomial::Factor> f;
        for (const auto& fac : m.factors()) {
            f.emplace_back(fac.first, fac.first == v ? fac.second - 1 : fac.second);
        }
        r.add_term(Monomial(std::move(f)), c * e);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Series solving

struct DegenerateJacobian : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BadSeed : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Multiplicative inverse of a series whose graded-degree-0 part is a nonzero
// rational constant.
inline Poly invert_series(const Poly& a, const SeriesContext& ctx)
{
    if (ctx.is_exact()) {
        throw std::invalid_argument("invert_series needs a finite truncation order");
    }
    const Poly lead = graded_part(a, ctx, 0);
    if (!lead.is_constant() || lead.is_zero()) {
        throw DegenerateJacobian("series is not invertible: degree-0 part is " + lead.to_string());
    }
    Poly inv(1 / lead.constant());
    // Newton step inv <- inv * (2 - a * inv); precision doubles each round.
    for (std::uint32_t prec = 1; prec <= 2 * (*ctx.order + 1); prec *= 2) {
        Poly err = Poly(2) - multiply(a, inv, ctx);
        inv = multiply(inv, err, ctx);
    }
    return inv;
}

// Solves equation(u) = 0 for a series u through ctx.order, starting at the
// seed u0, which must already solve the equation at graded order 0.
inline Poly newton_solve(const Poly& equation, const Poly& u0, const SeriesContext& ctx,
                         VarId unknown = VarId::u())
{
    if (ctx.is_exact()) {
        throw std::invalid_argument("newton_solve needs a finite truncation order");
    }
    auto eval = [&](const Poly& p, const Poly& u) { return substitute(p, {{unknown, u}}, ctx); };
    const Poly jac = derivative(equation, unknown);

    Poly u = truncate(u0, ctx);
    if (!graded_part(eval(equation, u), ctx, 0).is_zero()) {
        throw BadSeed("seed does not solve the equation at order 0");
    }
    const Poly j0 = graded_part(eval(jac, u), ctx, 0);
    if (!j0.is_constant() || j0.is_zero()) {
        throw DegenerateJacobian("derivative at the seed has degree-0 part " + j0.to_string());
    }

    const std::uint32_t max_rounds = 2 * (std::bit_width(*ctx.order + 1U) + 2U);
    for (std::uint32_t round = 0; round < max_rounds; ++round) {
        const Poly residual = eval(equation, u);
        if (residual.is_zero()) return u;
        u -= multiply(residual, invert_series(eval(jac, u), ctx), ctx);
    }
    if (eval(equation, u).is_zero()) return u;
    throw NonConvergence("newton_solve did not converge");
}

}  // namespace mastereq

#endif  // MASTEREQ_ALGEBRA_HPP
