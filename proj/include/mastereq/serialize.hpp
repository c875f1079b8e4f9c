#ifndef MASTEREQ_SERIALIZE_HPP
#define MASTEREQ_SERIALIZE_HPP

// JSON form of Poly: an array of terms {"vars": {name: exponent}, "num": "..",
// "den": ".."} in canonical monomial order, so equal polynomials serialize to
// identical bytes.

#include <string>
#include <vector>

#include <json.hpp>

#include "mastereq/algebra.hpp"

namespace mastereq {

inline nlohmann::json poly_to_json(const Poly& p)
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [m, c] : p.terms()) {
        nlohmann::json vars = nlohmann::json::object();
        for (const auto& [v, e] : m.factors()) vars[v.name()] = e;
        out.push_back({{"vars", std::move(vars)}, {"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}});
    }
    return out;
}

inline Poly poly_from_json(const nlohmann::json& j)
{
    if (!j.is_array()) throw std::invalid_argument("polynomial JSON must be an array");
    Poly p;
    for (const auto& t : j) {
        std::vector<Monomial::Factor> f;
        for (const auto& [name, e] : t.at("vars").items()) {
            f.emplace_back(VarId::parse(name), e.get<std::uint32_t>());
        }
        const Integer num(t.at("num").get<std::string>());
        const Integer den(t.at("den").get<std::string>());
        p.add_term(Monomial(std::move(f)), make_rational(num, den));
    }
    return p;
}

// Fixed-point decimal rendering with `digits` places after the point.
inline std::string decimal(const Rational& q, int digits = 12)
{
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    Rational scaled = abs(q) * scale;
    // Round half up on the magnitude.
    Integer n = (2 * scaled.get_num() + scaled.get_den()) / (2 * scaled.get_den());
    std::string s = n.get_str();
    if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    return (q < 0 ? "-" : "") + s;
}

}  // namespace mastereq

#endif  // MASTEREQ_SERIALIZE_HPP
