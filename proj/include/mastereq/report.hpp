#ifndef MASTEREQ_REPORT_HPP
#define MASTEREQ_REPORT_HPP

// Batch commands behind the command-line tool. run() computes a report,
// writes it as JSON or CSV and returns the exit status:
//   0  every requested check passed
//   1  at least one check failed (listed under "failures")
//   2  invalid configuration

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mastereq/algebra.hpp"
#include "mastereq/blossom.hpp"
#include "mastereq/conserved.hpp"
#include "mastereq/correlators.hpp"
#include "mastereq/master.hpp"
#include "mastereq/model.hpp"
#include "mastereq/serialize.hpp"
#include "mastereq/stats.hpp"
#include "mastereq/walks.hpp"

namespace mastereq {

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class Command { solve, verify, correlators, enumerate, stats };
enum class Format { json, csv };

struct RunConfig {
    Command command = Command::solve;
    int m = 3;
    int order = 6;
    bool boundary_x = false;
    std::vector<Family> families = {Family::gamma, Family::gamma_tilde, Family::theta};
    int n_lo = 0;
    int n_hi = 6;
    int i_max = 4;
    int max_inner = 2;
    FaceModel model = FaceModel::tetra;
    std::string output;  // empty: standard output
    Format format = Format::json;
};

inline Command parse_command(const std::string& s)
{
    if (s == "solve") return Command::solve;
    if (s == "verify") return Command::verify;
    if (s == "correlators") return Command::correlators;
    if (s == "enumerate") return Command::enumerate;
    if (s == "stats") return Command::stats;
    throw ConfigError("unknown command '" + s + "'");
}

inline std::vector<Family> parse_families(const std::string& s)
{
    if (s == "all") return {Family::gamma, Family::gamma_tilde, Family::theta};
    if (s == "gamma") return {Family::gamma};
    if (s == "gamma_tilde") return {Family::gamma_tilde};
    if (s == "theta") return {Family::theta};
    throw ConfigError("unknown family '" + s + "'");
}

// "lo..hi" or a single integer.
inline std::pair<int, int> parse_range(const std::string& s)
{
    try {
        const auto dots = s.find("..");
        if (dots == std::string::npos) {
            std::size_t used = 0;
            int v = std::stoi(s, &used);
            if (used != s.size()) throw ConfigError("bad range '" + s + "'");
            return {v, v};
        }
        std::size_t u1 = 0, u2 = 0;
        const std::string a = s.substr(0, dots), b = s.substr(dots + 2);
        int lo = std::stoi(a, &u1);
        int hi = std::stoi(b, &u2);
        if (u1 != a.size() || u2 != b.size()) throw ConfigError("bad range '" + s + "'");
        return {lo, hi};
    } catch (const std::logic_error&) {
        throw ConfigError("bad range '" + s + "'");
    }
}

inline void validate(const RunConfig& c)
{
    if (c.m < 1) throw ConfigError("m must be >= 1");
    if (c.order < 0) throw ConfigError("order must be >= 0");
    if (c.n_lo > c.n_hi) throw ConfigError("empty n-range");
    if (c.n_lo < 0) throw ConfigError("n-range must start at 0 or above");
    if (c.i_max < 0) throw ConfigError("i-max must be >= 0");
    if (c.max_inner < 0) throw ConfigError("max-inner must be >= 0");
    if (c.families.empty()) throw ConfigError("no family selected");
    if (c.command == Command::stats && c.order < 1) throw ConfigError("stats needs order >= 1");
}

// ---------------------------------------------------------------------------

class Report {
public:
    nlohmann::json body = nlohmann::json::object();
    nlohmann::json failures = nlohmann::json::array();
    std::vector<std::vector<std::string>> csv_rows;
    std::vector<std::string> csv_header;

    void check(const std::string& identity, const nlohmann::json& where, bool ok)
    {
        if (!ok) failures.push_back({{"identity", identity}, {"at", where}});
    }

    bool passed() const { return failures.empty(); }

    std::string render(Format f) const
    {
        if (f == Format::json) {
            nlohmann::json out = body;
            out["passed"] = passed();
            out["failures"] = failures;
            return out.dump(2) + "\n";
        }
        std::ostringstream os;
        write_csv_row(os, csv_header);
        for (const auto& r : csv_rows) write_csv_row(os, r);
        return os.str();
    }

private:
    static void write_csv_row(std::ostream& os, const std::vector<std::string>& row)
    {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            const std::string& cell = row[i];
            if (cell.find_first_of(",\"\n") == std::string::npos) {
                os << cell;
            } else {
                os << '"';
                for (char ch : cell) os << (ch == '"' ? std::string("\"\"") : std::string(1, ch));
                os << '"';
            }
        }
        os << '\n';
    }
};

namespace detail {

inline void add_poly_rows(Report& r, const std::vector<std::string>& key, const Poly& p)
{
    for (const auto& [m, c] : p.terms()) {
        auto row = key;
        row.push_back(m.to_string());
        row.push_back(c.get_str());
        r.csv_rows.push_back(std::move(row));
    }
}

inline ModelSpec model_of(const RunConfig& c, bool boundary_x)
{
    return ModelSpec::up_to(c.m, boundary_x ? Poly::x() : Poly(1));
}

inline SeriesContext context_of(const RunConfig& c)
{
    return SeriesContext::couplings(static_cast<std::uint32_t>(c.order));
}

inline void run_solve(const RunConfig& c, Report& r)
{
    const ModelSpec spec = model_of(c, c.boundary_x);
    const SeriesContext ctx = context_of(c);
    const WeightEnv env = solve_master(spec, ctx);
    r.body["command"] = "solve";
    r.body["m"] = c.m;
    r.body["order"] = c.order;
    r.body["boundary"] = c.boundary_x ? "x" : "one";
    r.body["horizon"] = env.horizon();
    r.body["rbar"] = poly_to_json(env.tail());
    nlohmann::json rows = nlohmann::json::array();
    r.csv_header = {"n", "monomial", "coefficient"};
    for (int n = c.n_lo; n <= c.n_hi; ++n) {
        rows.push_back({{"n", n}, {"R", poly_to_json(env.r(n))}});
        add_poly_rows(r, {std::to_string(n)}, env.r(n));
    }
    r.body["R"] = rows;
    for (const auto& res : residual_master(env, spec, c.n_lo, c.n_hi)) {
        r.check("master equation", {{"n", res.n}}, res.direct.is_zero());
        r.check("master equation, reciprocal form", {{"n", res.n}}, res.reciprocal.is_zero());
    }
}

inline void run_verify(const RunConfig& c, Report& r)
{
    const SeriesContext ctx = context_of(c);
    const ModelSpec spec = model_of(c, c.boundary_x);
    const WeightEnv env = solve_master(spec, ctx);
    // The common values come from the unmodified model.
    const WeightEnv plain = c.boundary_x ? solve_master(model_of(c, false), ctx) : env;
    // With the x boundary the equations hold from n = 1 on, but Gamma_0(1)
    // reads the modified n = 0 equation, so Gamma_0 is replaced by 1 there.
    const int n_first = c.boundary_x ? std::max(c.n_lo, 1) : c.n_lo;
    const Gamma0 mode = c.boundary_x ? Gamma0::unit : Gamma0::literal;

    r.body["command"] = "verify";
    r.body["m"] = c.m;
    r.body["order"] = c.order;
    r.body["boundary"] = c.boundary_x ? "x" : "one";
    r.body["n_range"] = {n_first, c.n_hi};
    r.csv_header = {"family", "i", "n", "monomial", "coefficient"};
    nlohmann::json fams = nlohmann::json::array();
    for (Family f : c.families) {
        for (int i = 0; i <= c.i_max; ++i) {
            const Poly expected = g2i_boundary(i, plain);
            nlohmann::json values = nlohmann::json::array();
            bool constant = true, matches = true;
            std::optional<Poly> first;
            for (int n = n_first; n <= c.n_hi; ++n) {
                const Poly v = truncate(conserved_value(f, i, n, env, spec, mode), ctx);
                values.push_back({{"n", n}, {"value", poly_to_json(v)}});
                add_poly_rows(r, {family_name(f), std::to_string(i), std::to_string(n)}, v);
                if (!first) first = v;
                constant = constant && v == *first;
                matches = matches && v == expected;
            }
            fams.push_back({{"family", family_name(f)},
                            {"i", i},
                            {"values", values},
                            {"conserved", constant},
                            {"equals_correlator", matches}});
            r.check(family_name(f) + " conservation", {{"i", i}}, constant);
            r.check(family_name(f) + " value equals G_2i", {{"i", i}}, matches);
        }
    }
    r.body["families"] = fams;
    for (const auto& res : residual_master(env, spec, 0, c.n_hi)) {
        r.check("master equation", {{"n", res.n}}, res.direct.is_zero());
    }
}

inline void run_correlators(const RunConfig& c, Report& r)
{
    const ModelSpec spec = model_of(c, false);
    const SeriesContext ctx = context_of(c);
    const WeightEnv env = solve_master(spec, ctx);
    const Poly rbar = env.tail();
    const int count = c.i_max + spec.m + 1;
    const std::vector<Poly> g = correlator_table(count, env);

    r.body["command"] = "correlators";
    r.body["m"] = c.m;
    r.body["order"] = c.order;
    r.csv_header = {"i", "monomial", "coefficient"};
    nlohmann::json table = nlohmann::json::array();
    for (int i = 0; i <= c.i_max; ++i) {
        const auto& gi = g[static_cast<std::size_t>(i)];
        const Poly closed = g2i_closed_series(i, spec, rbar, ctx);
        nlohmann::json row = {{"i", i},
                              {"closed_form", poly_to_json(g2i_closed(i, spec))},
                              {"value", poly_to_json(gi)},
                              {"closed_form_agrees", closed == gi}};
        r.check("G_2i closed form in Rbar", {{"i", i}}, closed == gi);
        if (i >= spec.m) {
            const Poly red = g2i_reduce(i, spec, g, rbar, ctx);
            row["linear_reduction_agrees"] = red == gi;
            r.check("G_2i linear reduction for i >= m", {{"i", i}}, red == gi);
        }
        table.push_back(row);
        add_poly_rows(r, {std::to_string(i)}, gi);
    }
    r.body["correlators"] = table;
    for (int i = 0; i <= c.i_max; ++i) {
        r.check("inverse relation in Rbar", {{"j", i}}, inverse_relation(i, spec, g, rbar, ctx).holds());
        r.check("one-cut identity", {{"i", i}}, one_cut(i, spec, g, rbar, ctx).holds());
        if (i + spec.m < count) r.check("loop equation", {{"i", i}}, loop_equation(i, spec, g, ctx).holds());
    }
    for (int i = 0; i <= 2 * c.i_max + 2; ++i) {
        for (int j = 0; j <= i; ++j) r.check("ballot binomial identity", {{"i", i}, {"j", j}}, binomial_identity(i, j).holds());
    }
    for (int n = c.n_lo; n <= c.n_hi; ++n) {
        r.check("bijective identity, 2 legs", {{"n", n}}, bijective_g2(n, env, spec).holds());
        r.check("bijective identity, 4 legs", {{"n", n}}, bijective_g4(n, env, spec).holds());
        r.check("bijective identity, 6 legs", {{"n", n}}, bijective_g6(n, env, spec).holds());
        r.check("bijective identity, 8 legs", {{"n", n}}, bijective_g8(n, env, spec).holds());
    }
}

inline void run_enumerate(const RunConfig& c, Report& r)
{
    const ModelSpec spec = model_of(c, false);
    const auto trees = enumerate_blossom(spec, c.max_inner);
    const WeightEnv env = solve_master(spec, SeriesContext::couplings(static_cast<std::uint32_t>(c.max_inner)));
    r.body["command"] = "enumerate";
    r.body["m"] = c.m;
    r.body["max_inner"] = c.max_inner;
    r.body["trees"] = trees.size();
    r.csv_header = {"n", "monomial", "count"};
    nlohmann::json rows = nlohmann::json::array();
    for (int n = c.n_lo; n <= c.n_hi; ++n) {
        Poly total;
        for (const auto& t : trees) {
            if (contour_depth(t) <= n) total += tree_weight(t);
        }
        rows.push_back({{"n", n}, {"R", poly_to_json(total)}, {"matches_solver", total == env.r(n)}});
        add_poly_rows(r, {std::to_string(n)}, total);
        r.check("tree count equals solved R_n", {{"n", n}}, total == env.r(n));
    }
    r.body["R"] = rows;
    std::size_t mismatched = 0;
    for (const auto& t : trees) mismatched += contour_depth(t) != closure_excess(t);
    r.check("contour depth equals closure excess", nlohmann::json::object(), mismatched == 0);
}

inline void run_stats(const RunConfig& c, Report& r)
{
    const auto order = static_cast<std::uint32_t>(c.order);
    const FaceDistribution d = face_distribution(c.model, order);
    r.body["command"] = "stats";
    r.body["model"] = c.model == FaceModel::tetra ? "tetra" : "hexa";
    r.body["order"] = c.order;
    r.body["delta"] = poly_to_json(d.delta);
    r.csv_header = {"p", "probability", "decimal"};
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [p, prob] : d.probabilities) {
        rows.push_back({{"p", p}, {"probability", prob.get_str()}, {"decimal", decimal(prob)}});
        r.csv_rows.push_back({std::to_string(p), prob.get_str(), decimal(prob)});
    }
    r.body["probabilities"] = rows;
    if (c.model == FaceModel::tetra) {
        r.check("algebraic equation for Delta", nlohmann::json::object(),
                delta_tetra_equation(d.delta, order).is_zero());
        for (const auto& [p, prob] : d.probabilities) r.check("closed form of P(p)", {{"p", p}}, prob == p_tetra(p));
    } else {
        r.check("algebraic equation for Delta", nlohmann::json::object(), delta_hexa_residual(d.delta, order).is_zero());
    }
}

}  // namespace detail

inline int run(const RunConfig& config, std::ostream& err = std::cerr)
{
    try {
        validate(config);
    } catch (const ConfigError& e) {
        err << "invalid configuration: " << e.what() << "\n";
        return 2;
    }
    Report report;
    switch (config.command) {
    case Command::solve: detail::run_solve(config, report); break;
    case Command::verify: detail::run_verify(config, report); break;
    case Command::correlators: detail::run_correlators(config, report); break;
    case Command::enumerate: detail::run_enumerate(config, report); break;
    case Command::stats: detail::run_stats(config, report); break;
    }
    const std::string text = report.render(config.format);
    if (config.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(config.output, std::ios::binary);
        if (!out) {
            err << "cannot write " << config.output << "\n";
            return 2;
        }
        out << text;
    }
    if (!report.passed()) {
        err << report.failures.dump() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace mastereq

#endif  // MASTEREQ_REPORT_HPP
