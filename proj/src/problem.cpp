#include "plin/problem.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <utility>

namespace plin {

using nlohmann::json;

namespace {

std::string positioned(const std::string& message, std::size_t line, std::size_t column)
{
    return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
}

class PolynomialParser {
 public:
    PolynomialParser(std::string_view text, const std::vector<std::string>& names, int order)
        : text_(text), names_(names), order_(order)
    {
    }

    Jet parse()
    {
        Jet out(names_.size(), order_);
        skip_space();
        bool first = true;
        while (true) {
            Scalar sign = 1;
            if (peek() == '+' || peek() == '-') {
                if (peek() == '-') sign = -1;
                advance();
                skip_space();
            } else if (!first) {
                fail(at_end() ? "unexpected end of input" : std::string("expected '+' or '-' before '") + peek() + "'");
            }
            auto [coef, mono] = product();
            out.add_term(mono, sign * coef);
            first = false;
            skip_space();
            if (at_end()) break;
        }
        return out;
    }

 private:
    std::pair<Scalar, Monomial> product()
    {
        Scalar coef = 1;
        Monomial mono(names_.size());
        while (true) {
            skip_space();
            factor(coef, mono);
            skip_space();
            if (peek() != '*') break;
            advance();
        }
        return {coef, mono};
    }

    void factor(Scalar& coef, Monomial& mono)
    {
        if (at_end()) fail("unexpected end of input");
        const char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::string num = digits();
            std::string den = "1";
            if (peek() == '.' || peek() == 'e' || peek() == 'E') fail("non-rational coefficient");
            if (peek() == '/') {
                advance();
                if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a denominator");
                den = digits();
                if (peek() == '.') fail("non-rational coefficient");
            }
            coef *= parse_scalar(num + "/" + den);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t line = line_;
            const std::size_t column = column_;
            std::string name;
            while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
                name += peek();
                advance();
            }
            const auto it = std::find(names_.begin(), names_.end(), name);
            if (it == names_.end()) throw ParseError("unknown variable '" + name + "'", line, column);
            int exponent = 1;
            skip_space();
            if (peek() == '^') {
                advance();
                skip_space();
                if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an exponent");
                const std::string e = digits();
                if (e.size() > 3) fail("exponent too large");
                exponent = std::stoi(e);
            }
            const auto var = static_cast<std::size_t>(it - names_.begin());
            const int total = mono[var] + exponent;
            if (total > 255) fail("exponent too large");
            mono.set(var, total);
            return;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string digits()
    {
        std::string out;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            out += peek();
            advance();
        }
        return out;
    }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    void advance()
    {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_space()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
    }

    [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, line_, column_); }

    std::string_view text_;
    const std::vector<std::string>& names_;
    int order_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

void check_names(const std::vector<std::string>& names, const char* what)
{
    std::set<std::string> seen;
    for (const auto& n : names) {
        const bool ok = !n.empty() && (std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_') &&
                        std::all_of(n.begin(), n.end(), [](char c) {
                            return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
                        });
        if (!ok) throw std::invalid_argument(std::string("invalid ") + what + " name '" + n + "'");
        if (!seen.insert(n).second) throw std::invalid_argument(std::string("duplicate ") + what + " name '" + n + "'");
    }
}

std::size_t index_of(const std::vector<std::string>& names, const std::string& name, const char* what)
{
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw std::invalid_argument(std::string("unknown ") + what + " '" + name + "'");
    return static_cast<std::size_t>(it - names.begin());
}

Jet parse_field(const json& value, const std::vector<std::string>& names, int order, const std::string& where)
{
    if (!value.is_string()) throw std::invalid_argument(where + ": polynomial must be a string");
    try {
        return parse_polynomial(value.get<std::string>(), names, order);
    } catch (const ParseError& e) {
        throw ParseError(where + ": " + e.detail(), e.line(), e.column());
    }
}

Scalar scalar_from_json(const json& value, const std::string& where)
{
    if (value.is_string()) return parse_scalar(value.get<std::string>());
    if (value.is_number_integer()) return Scalar(value.get<long>());
    throw std::invalid_argument(where + ": rationals must be strings \"p/q\" or integers");
}

std::vector<Vector> vectors_from_json(const json& value, const std::string& where)
{
    if (!value.is_array()) throw std::invalid_argument(where + " must be an array of vectors");
    std::vector<Vector> out;
    for (const auto& row : value) {
        if (!row.is_array()) throw std::invalid_argument(where + " must be an array of vectors");
        Vector v;
        for (const auto& x : row) v.push_back(scalar_from_json(x, where));
        out.push_back(std::move(v));
    }
    return out;
}

json vectors_to_json(const std::vector<Vector>& vs)
{
    json out = json::array();
    for (const auto& v : vs) {
        json row = json::array();
        for (const auto& x : v) row.push_back(to_string(x));
        out.push_back(std::move(row));
    }
    return out;
}

std::pair<std::size_t, std::size_t> pair_from_json(const json& entry, const std::vector<std::string>& names,
                                                    const char* what)
{
    if (!entry.contains("pair") || !entry["pair"].is_array() || entry["pair"].size() != 2) {
        throw std::invalid_argument(std::string("bracket entries need a two-element \"pair\" of ") + what + " names");
    }
    const std::size_t i = index_of(names, entry["pair"][0].get<std::string>(), what);
    const std::size_t j = index_of(names, entry["pair"][1].get<std::string>(), what);
    if (i == j) throw std::invalid_argument("bracket of a name with itself");
    return {i, j};
}

// Reads sparse antisymmetric entries; returns the row-major matrix.
std::vector<Jet> read_brackets(const json& list, const std::vector<std::string>& pair_names, std::size_t offset,
                               const std::vector<std::string>& value_names, int order, std::size_t total,
                               const char* what)
{
    const std::size_t n = total;
    std::vector<Jet> entries(n * n, Jet(value_names.size(), order));
    std::set<std::pair<std::size_t, std::size_t>> seen;
    if (!list.is_array()) throw std::invalid_argument("\"brackets\" must be an array");
    for (std::size_t e = 0; e < list.size(); ++e) {
        const auto [i, j] = pair_from_json(list[e], pair_names, what);
        if (!seen.insert({std::min(i, j), std::max(i, j)}).second) {
            throw std::invalid_argument("bracket pair listed twice");
        }
        const Jet value = parse_field(list[e].at("value"), value_names, order, "brackets[" + std::to_string(e) + "]");
        entries[(offset + i) * n + offset + j] = value;
        entries[(offset + j) * n + offset + i] = -value;
    }
    return entries;
}

json brackets_to_json(const PoissonJet& p, std::size_t offset, const std::vector<std::string>& pair_names,
                      const std::vector<std::string>& value_names)
{
    json out = json::array();
    for (std::size_t i = 0; i < pair_names.size(); ++i) {
        for (std::size_t j = i + 1; j < pair_names.size(); ++j) {
            const Jet& f = p(offset + i, offset + j);
            if (f.is_zero()) continue;
            out.push_back({{"pair", {pair_names[i], pair_names[j]}}, {"value", to_string(f, value_names)}});
        }
    }
    return out;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte)
{
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
        if (text[k] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

}  // namespace

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::invalid_argument(positioned(message, line, column)), detail_(message), line_(line), column_(column)
{
}

Jet parse_polynomial(std::string_view text, const std::vector<std::string>& names, int order)
{
    return PolynomialParser(text, names, order).parse();
}

std::string to_string(ProblemKind kind)
{
    switch (kind) {
        case ProblemKind::Poisson: return "poisson";
        case ProblemKind::Action: return "action";
        case ProblemKind::Algebroid: return "algebroid";
    }
    return "unknown";
}

LeviFactorSpec levi_factor_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("s")) throw std::invalid_argument("Levi factor needs an \"s\" basis");
    LeviFactorSpec spec;
    spec.s = vectors_from_json(j["s"], "levi_factor.s");
    if (j.contains("r")) spec.r = vectors_from_json(j["r"], "levi_factor.r");
    return spec;
}

json levi_factor_to_json(const LeviFactorSpec& spec)
{
    json out{{"s", vectors_to_json(spec.s)}};
    if (spec.r) out["r"] = vectors_to_json(*spec.r);
    return out;
}

ProblemSpec problem_from_json(const json& j)
{
    if (!j.is_object()) throw std::invalid_argument("problem must be a JSON object");
    ProblemSpec spec;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "poisson") spec.kind = ProblemKind::Poisson;
    else if (kind == "action") spec.kind = ProblemKind::Action;
    else if (kind == "algebroid") spec.kind = ProblemKind::Algebroid;
    else throw std::invalid_argument("unknown problem kind '" + kind + "'");

    spec.variables = j.at("variables").get<std::vector<std::string>>();
    check_names(spec.variables, "variable");
    if (j.contains("max_degree")) spec.max_degree = j["max_degree"].get<int>();
    if (spec.max_degree < 1 || spec.max_degree > 64) throw std::invalid_argument("max_degree must lie in 1..64");
    if (j.contains("scheduler")) spec.scheduler = parse_scheduler(j["scheduler"].get<std::string>());
    if (j.contains("radius")) spec.radius = scalar_from_json(j["radius"], "radius");
    if (sgn(spec.radius) <= 0) throw std::invalid_argument("radius must be positive");
    if (j.contains("levi_factor")) spec.levi_factor = levi_factor_from_json(j["levi_factor"]);

    const int order = spec.max_degree;
    const std::size_t n = spec.variables.size();
    const json empty = json::array();
    switch (spec.kind) {
        case ProblemKind::Poisson: {
            if (n == 0 || n > Monomial::kMaxVars) throw std::invalid_argument("variable count must lie in 1..16");
            auto entries = read_brackets(j.value("brackets", empty), spec.variables, 0, spec.variables, order, n,
                                         "variable");
            spec.poisson = PoissonJet(n, order, std::move(entries));
            break;
        }
        case ProblemKind::Action: {
            if (n == 0 || n > Monomial::kMaxVars) throw std::invalid_argument("variable count must lie in 1..16");
            spec.generators = j.at("generators").get<std::vector<std::string>>();
            check_names(spec.generators, "generator");
            const std::size_t g = spec.generators.size();
            if (g == 0 || g > Monomial::kMaxVars) throw std::invalid_argument("generator count must lie in 1..16");
            const auto algebra_entries =
                read_brackets(j.value("algebra", empty), spec.generators, 0, spec.generators, 1, g, "generator");
            Vector constants(g * g * g);
            for (std::size_t a = 0; a < g; ++a) {
                for (std::size_t b = 0; b < g; ++b) {
                    const Jet& f = algebra_entries[a * g + b];
                    if (!(f == f.homogeneous_part(1))) {
                        throw std::invalid_argument("algebra brackets must be linear combinations of generators");
                    }
                    for (std::size_t k = 0; k < g; ++k) constants[(a * g + b) * g + k] = f.coeff(Monomial::unit(g, k));
                }
            }
            std::vector<std::vector<Jet>> fields(g, std::vector<Jet>(n, Jet(n, order)));
            std::set<std::size_t> seen;
            const json& list = j.value("fields", empty);
            for (std::size_t e = 0; e < list.size(); ++e) {
                const std::size_t i = index_of(spec.generators, list[e].at("generator").get<std::string>(), "generator");
                if (!seen.insert(i).second) throw std::invalid_argument("generator field listed twice");
                for (const auto& [var, value] : list[e].at("components").items()) {
                    fields[i][index_of(spec.variables, var, "variable")] = parse_field(
                        value, spec.variables, order, "fields[" + std::to_string(e) + "]." + var);
                }
            }
            spec.action = ActionJet(LieAlgebra(g, std::move(constants)), std::move(fields));
            break;
        }
        case ProblemKind::Algebroid: {
            spec.fiber = j.at("fiber").get<std::vector<std::string>>();
            check_names(spec.fiber, "fiber");
            std::vector<std::string> all = spec.variables;
            all.insert(all.end(), spec.fiber.begin(), spec.fiber.end());
            check_names(all, "algebroid");
            const std::size_t r = spec.fiber.size();
            if (r == 0 || n + r > Monomial::kMaxVars) throw std::invalid_argument("algebroid needs 1..16 variables in total");
            const std::size_t total = n + r;
            auto entries = read_brackets(j.value("brackets", empty), spec.fiber, n, all, order + 1, total, "fiber");
            const json& anchors = j.value("anchor", empty);
            std::set<std::pair<std::size_t, std::size_t>> seen;
            for (std::size_t e = 0; e < anchors.size(); ++e) {
                const std::size_t i = index_of(spec.fiber, anchors[e].at("section").get<std::string>(), "fiber");
                const std::size_t l = index_of(spec.variables, anchors[e].at("variable").get<std::string>(), "variable");
                if (!seen.insert({i, l}).second) throw std::invalid_argument("anchor component listed twice");
                const Jet f = parse_field(anchors[e].at("value"), spec.variables, order + 1,
                                          "anchor[" + std::to_string(e) + "]");
                std::vector<std::size_t> map(n);
                for (std::size_t v = 0; v < n; ++v) map[v] = v;
                const Jet lifted = f.embedded(total, map);
                entries[(n + i) * total + l] = lifted;
                entries[l * total + n + i] = -lifted;
            }
            spec.algebroid = poisson_to_algebroid(PoissonJet(total, order + 1, std::move(entries)), n);
            break;
        }
    }
    return spec;
}

ProblemSpec parse_problem(std::string_view text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError("malformed JSON", line, column);
    }
    try {
        return problem_from_json(j);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("problem schema: ") + e.what());
    }
}

json problem_to_json(const ProblemSpec& spec)
{
    json out;
    out["kind"] = to_string(spec.kind);
    out["variables"] = spec.variables;
    out["max_degree"] = spec.max_degree;
    out["scheduler"] = to_string(spec.scheduler);
    out["radius"] = to_string(spec.radius);
    switch (spec.kind) {
        case ProblemKind::Poisson:
            out["brackets"] = brackets_to_json(spec.poisson, 0, spec.variables, spec.variables);
            break;
        case ProblemKind::Action: {
            out["generators"] = spec.generators;
            const LieAlgebra& g = spec.action.algebra();
            const PoissonJet lin = linear_poisson(g, 1);
            out["algebra"] = brackets_to_json(lin, 0, spec.generators, spec.generators);
            json fields = json::array();
            for (std::size_t i = 0; i < g.dim(); ++i) {
                json comps = json::object();
                for (std::size_t a = 0; a < spec.variables.size(); ++a) {
                    const Jet& f = spec.action.field(i)[a];
                    if (!f.is_zero()) comps[spec.variables[a]] = to_string(f, spec.variables);
                }
                fields.push_back({{"generator", spec.generators[i]}, {"components", comps}});
            }
            out["fields"] = fields;
            break;
        }
        case ProblemKind::Algebroid: {
            out["fiber"] = spec.fiber;
            std::vector<std::string> all = spec.variables;
            all.insert(all.end(), spec.fiber.begin(), spec.fiber.end());
            const PoissonJet p = algebroid_to_poisson(spec.algebroid);
            out["brackets"] = brackets_to_json(p, spec.variables.size(), spec.fiber, all);
            json anchors = json::array();
            for (std::size_t i = 0; i < spec.fiber.size(); ++i) {
                for (std::size_t l = 0; l < spec.variables.size(); ++l) {
                    const Jet& f = spec.algebroid.anchor(i, l);
                    if (f.is_zero()) continue;
                    anchors.push_back(
                        {{"section", spec.fiber[i]}, {"variable", spec.variables[l]}, {"value", to_string(f, spec.variables)}});
                }
            }
            out["anchor"] = anchors;
            break;
        }
    }
    if (spec.levi_factor) out["levi_factor"] = levi_factor_to_json(*spec.levi_factor);
    return out;
}

std::string print_problem(const ProblemSpec& spec) { return problem_to_json(spec).dump(2) + "\n"; }

LieAlgebra problem_algebra(const ProblemSpec& spec)
{
    switch (spec.kind) {
        case ProblemKind::Poisson: return isotropy_from_linear_part(spec.poisson);
        case ProblemKind::Action: return spec.action.algebra();
        case ProblemKind::Algebroid: return spec.algebroid.isotropy();
    }
    return {};
}

}  // namespace plin
