#include "plin/report.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "plin/algebroid.hpp"

namespace plin {

using nlohmann::json;

namespace {

std::vector<std::string> all_names(const ProblemSpec& spec)
{
    std::vector<std::string> names = spec.variables;
    names.insert(names.end(), spec.fiber.begin(), spec.fiber.end());
    return names;
}

json vectors_json(const std::vector<Vector>& vs)
{
    json out = json::array();
    for (const auto& v : vs) {
        json row = json::array();
        for (const auto& x : v) row.push_back(to_string(x));
        out.push_back(std::move(row));
    }
    return out;
}

json split_to_json(const LeviSplit& split)
{
    return {{"s_basis", vectors_json(split.s_basis())},
            {"r_basis", vectors_json(split.r_basis())},
            {"s_constants", constants_to_json(split.s_algebra())}};
}

// Labels render polynomial basis elements in the problem's names; tuple
// modules prefix the component index.
std::vector<std::string> basis_labels(const GModule& module, const std::vector<std::string>& names)
{
    const auto& basis = module.polynomial_basis();
    if (basis.empty() || basis.front().monomial.size() > names.size()) return module.labels();
    bool tuples = false;
    for (const auto& e : basis) tuples = tuples || e.component > 0;
    std::vector<std::string> out;
    for (const auto& e : basis) {
        std::string mono = e.monomial.degree() == 0 ? "1" : to_string(e.monomial, names);
        out.push_back(tuples ? "[" + std::to_string(e.component) + "] " + mono : mono);
    }
    return out;
}

json sparse_vector(const Cochain& shape, const Vector& values, const std::vector<std::string>& names)
{
    const auto subsets = index_subsets(shape.module().algebra().dim(), static_cast<std::size_t>(shape.degree()));
    const auto labels = basis_labels(shape.module(), names);
    const std::size_t dim = shape.module().dim();
    json out = json::array();
    for (std::size_t s = 0; s < subsets.size(); ++s) {
        for (std::size_t b = 0; b < dim; ++b) {
            const Scalar& v = values[s * dim + b];
            if (plin::is_zero(v)) continue;
            json entry{{"indices", subsets[s]}, {"basis", b}, {"value", to_string(v)}};
            if (b < labels.size()) entry["label"] = labels[b];
            out.push_back(std::move(entry));
        }
    }
    return out;
}

json obstruction_to_json(const NormalizationObstruction& o, const std::vector<std::string>& names)
{
    const ObstructionClass& c = o.obstruction;
    return {{"degree", o.degree},
            {"cochain_degree", c.remainder.degree()},
            {"cohomology_dim", c.cohomology_dim},
            {"remainder", cochain_to_json(c.remainder, names)},
            {"functional", sparse_vector(c.remainder, c.functional, names)},
            {"pairing", to_string(dot(c.functional, c.remainder.coefficients()))},
            {"partial_change", change_to_json(o.partial_change, names)},
            {"verified", c.verify()}};
}

ProblemSpec with_poisson(const ProblemSpec& spec, const PoissonJet& p)
{
    ProblemSpec out = spec;
    out.poisson = p;
    out.max_degree = p.order();
    out.levi_factor.reset();
    return out;
}

ProblemSpec with_action(const ProblemSpec& spec, const ActionJet& rho)
{
    ProblemSpec out = spec;
    out.action = rho;
    out.max_degree = rho.order();
    out.levi_factor.reset();
    return out;
}

ProblemSpec with_algebroid(const ProblemSpec& spec, const AlgebroidJet& a)
{
    ProblemSpec out = spec;
    out.algebroid = a;
    out.max_degree = a.order();
    out.levi_factor.reset();
    return out;
}

LeviSplit split_for(const ProblemSpec& spec, const LieAlgebra& g)
{
    if (!spec.levi_factor) return levi_lift(g);
    const auto& f = *spec.levi_factor;
    return verify_levi_split(g, f.s, f.r ? *f.r : radical(g));
}

bool linear_in(const Jet& f, const std::vector<bool>& allowed)
{
    if (!(f == f.homogeneous_part(1))) return false;
    for (std::size_t v = 0; v < allowed.size(); ++v) {
        if (!allowed[v] && !plin::is_zero(f.coeff(Monomial::unit(f.nvars(), v)))) return false;
    }
    return true;
}

// s-s brackets linear in the first p variables, s-r brackets linear in the rest.
bool levi_pattern_holds(const PoissonJet& p, std::size_t s_dim)
{
    const std::size_t n = p.nvars();
    std::vector<bool> s_vars(n, false);
    std::vector<bool> r_vars(n, false);
    for (std::size_t v = 0; v < n; ++v) (v < s_dim ? s_vars : r_vars)[v] = true;
    for (std::size_t i = 0; i < s_dim; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!linear_in(p(i, j), j < s_dim ? s_vars : r_vars)) return false;
        }
    }
    return true;
}

bool algebroid_levi_pattern_holds(const AlgebroidJet& a, std::size_t s_dim)
{
    const std::size_t r = a.rank();
    for (std::size_t i = 0; i < s_dim; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            for (std::size_t k = 0; k < r; ++k) {
                const Jet& f = a.structure(i, j, k);
                if (!(f == f.homogeneous_part(0))) return false;
                if ((j < s_dim) != (k < s_dim) && !f.is_zero()) return false;
            }
        }
        for (std::size_t l = 0; l < a.base_dim(); ++l) {
            const Jet& f = a.anchor(i, l);
            if (!(f == f.homogeneous_part(1))) return false;
        }
    }
    return true;
}

json levi_block(const LeviNormalForm& nf, const std::vector<std::string>& names)
{
    const std::size_t p = nf.s_dim();
    const std::size_t q = nf.r_dim();
    json ss = json::array();
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i + 1; j < p; ++j) {
            for (std::size_t k = 0; k < p; ++k) {
                const Scalar& c = nf.ss_constants[(i * p + j) * p + k];
                if (!plin::is_zero(c)) ss.push_back({i, j, k, to_string(c)});
            }
        }
    }
    json sr = json::array();
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t a = 0; a < q; ++a) {
            for (std::size_t b = 0; b < q; ++b) {
                const Scalar& c = nf.sr_constants[(i * q + a) * q + b];
                if (!plin::is_zero(c)) sr.push_back({i, a, b, to_string(c)});
            }
        }
    }
    json residual = json::array();
    std::size_t k = 0;
    for (std::size_t a = 0; a < q; ++a) {
        for (std::size_t b = a + 1; b < q; ++b, ++k) {
            if (nf.residual[k].is_zero()) continue;
            residual.push_back({{"pair", {names[p + a], names[p + b]}}, {"value", to_string(nf.residual[k], names)}});
        }
    }
    return {{"s_dim", p}, {"r_dim", q}, {"ss_constants", ss}, {"sr_constants", sr}, {"residual", residual}};
}

// Dense coefficients of a serialized sparse cochain over `module`.
Vector dense_cochain(const json& entries, const GModule& module, int degree)
{
    const auto subsets = index_subsets(module.algebra().dim(), static_cast<std::size_t>(degree));
    Vector out(subsets.size() * module.dim());
    for (const auto& e : entries) {
        const auto idx = e.at("indices").get<std::vector<std::size_t>>();
        const auto b = e.at("basis").get<std::size_t>();
        const auto it = std::find(subsets.begin(), subsets.end(), idx);
        if (it == subsets.end() || b >= module.dim()) throw std::invalid_argument("cochain entry out of range");
        out[static_cast<std::size_t>(it - subsets.begin()) * module.dim() + b] = parse_scalar(e.at("value").get<std::string>());
    }
    return out;
}

// Recomputes the remainder after the partial change and checks that the
// functional kills every coboundary and pairs nonzero with it.
bool verify_obstruction(const ProblemSpec& input, const json& o)
{
    const int degree = o.at("degree").get<int>();
    const int r = o.at("cochain_degree").get<int>();
    const auto names = all_names(input);
    const CoordChange phi = change_from_json(o.at("partial_change"), names, input.max_degree);
    Cochain remainder;
    switch (input.kind) {
        case ProblemKind::Poisson: remainder = poisson_remainder(pushforward(input.poisson, phi), degree); break;
        case ProblemKind::Action: remainder = action_remainder(pushforward_action(input.action, phi), degree); break;
        case ProblemKind::Algebroid: return false;
    }
    if (remainder.degree() != r) return false;
    const GModule& module = remainder.module();
    if (dense_cochain(o.at("remainder").at("entries"), module, r) != remainder.coefficients()) return false;
    const Vector functional = dense_cochain(o.at("functional"), module, r);
    if (plin::is_zero(dot(functional, remainder.coefficients()))) return false;
    const Matrix d = differential_matrix(module, r - 1);
    for (std::size_t c = 0; c < d.cols(); ++c) {
        Scalar s = 0;
        for (std::size_t row = 0; row < d.rows(); ++row) s += functional[row] * d(row, c);
        if (!plin::is_zero(s)) return false;
    }
    return true;
}

Report error_report(const std::string& command, const std::string& code, const std::string& message)
{
    Report r;
    r.exit_code = kExitInputError;
    r.body = {{"command", command}, {"error", {{"code", code}, {"message", message}}}};
    return r;
}

Report dispatch(const std::string& command, const ProblemSpec& spec, const RunOptions& options)
{
    Report report;
    json& body = report.body;
    body["command"] = command;
    body["input"] = problem_to_json(spec);
    json result;
    auto valid_input = [&]() {
        switch (spec.kind) {
            case ProblemKind::Poisson: return spec.poisson.is_poisson();
            case ProblemKind::Action: return spec.action.is_valid();
            case ProblemKind::Algebroid: return spec.algebroid.is_valid();
        }
        return false;
    };

    if (command == "check") {
        // A linear part violating Jacobi has no classification but is still
        // a well-formed answer to "is this input valid".
        try {
            body["classification"] = classification_to_json(problem_algebra(spec));
        } catch (const std::invalid_argument&) {
        }
        result["kind"] = "check";
        result["valid"] = body.contains("classification") && valid_input();
        if (spec.kind == ProblemKind::Algebroid) {
            const FiberwiseCheck f = fiberwise_linearity_check(algebroid_to_poisson(spec.algebroid), spec.variables.size());
            result["fiberwise_linear"] = f.holds;
        }
        report.exit_code = result["valid"].get<bool>() ? kExitSuccess : kExitInputError;
        body["result"] = result;
        return report;
    }

    const LieAlgebra g = problem_algebra(spec);
    body["classification"] = classification_to_json(g);

    const NormalizeOptions opts{spec.scheduler, to_double(spec.radius)};
    const int order = spec.max_degree;
    const auto names = all_names(spec);

    if (command == "analyze") {
        result["kind"] = "classification";
        result["valid"] = valid_input();
        body["result"] = result;
        return report;
    }
    if (command == "cohomology") {
        const GModule module = problem_module(spec, options.module_degree);
        const int r = options.cohomology_degree;
        if (r < 0) throw std::invalid_argument("cohomology degree must be nonnegative");
        result["kind"] = "cohomology";
        result["degree"] = r;
        result["module_degree"] = options.module_degree;
        result["module_dim"] = module.dim();
        result["cochain_dim"] = module.dim() * index_subsets(g.dim(), static_cast<std::size_t>(r)).size();
        result["cohomology_dim"] = cohomology_dimension(module, r);
        if (r >= 1 && module.dim() > 0) {
            const auto weights = hermitian_weights(module, to_double(spec.radius));
            result["homotopy_bound"] = homotopy_bound_estimate(module, r, weights);
        }
        body["result"] = result;
        return report;
    }

    if (!valid_input()) throw InputNotCocycle("input fails its defining identity through the truncation order");

    auto finish_trace = [&](const IterationTrace& trace) {
        body["trace"] = trace_to_json(trace);
        body["convergence"] = convergence_to_json(convergence_report(trace));
    };
    auto obstructed = [&](const NormalizationObstruction& o, const IterationTrace& trace) {
        result["kind"] = "obstruction";
        result["obstruction"] = obstruction_to_json(o, names);
        body["result"] = result;
        finish_trace(trace);
        report.exit_code = kExitObstruction;
        return report;
    };

    const bool levi_request = command == "levi" ||
                              (command == "algebroid" && (spec.levi_factor.has_value() || !is_semisimple(g)));
    if (command == "linearize" || (command == "algebroid" && !levi_request)) {
        if (command == "algebroid" && spec.kind != ProblemKind::Algebroid) {
            throw std::invalid_argument("the algebroid command needs an algebroid problem");
        }
        IterationTrace trace;
        switch (spec.kind) {
            case ProblemKind::Poisson: {
                auto r = linearize_poisson(spec.poisson, order, opts);
                if (!r.succeeded()) return obstructed(std::get<NormalizationObstruction>(r.outcome), r.trace);
                const auto& l = std::get<PoissonLinearization>(r.outcome);
                result["change"] = change_to_json(l.change, names);
                result["identity_change"] = l.change.is_identity();
                result["normal_form"] = problem_to_json(with_poisson(spec, l.normal_form));
                trace = r.trace;
                break;
            }
            case ProblemKind::Action: {
                auto r = linearize_action(spec.action, order, opts);
                if (!r.succeeded()) return obstructed(std::get<NormalizationObstruction>(r.outcome), r.trace);
                const auto& l = std::get<ActionLinearization>(r.outcome);
                result["change"] = change_to_json(l.change, names);
                result["identity_change"] = l.change.is_identity();
                result["normal_form"] = problem_to_json(with_action(spec, l.normal_form));
                trace = r.trace;
                break;
            }
            case ProblemKind::Algebroid: {
                auto r = linearize_algebroid(spec.algebroid, order, opts);
                if (!r.succeeded()) return obstructed(std::get<NormalizationObstruction>(r.outcome), r.trace);
                const auto& l = std::get<AlgebroidLinearization>(r.outcome);
                result["change"] = change_to_json(l.change, names);
                result["identity_change"] = l.change.is_identity();
                result["normal_form"] = problem_to_json(with_algebroid(spec, l.normal_form.to_jet(order)));
                trace = r.trace;
                break;
            }
        }
        result["kind"] = "linearization";
        body["result"] = result;
        finish_trace(trace);
    } else if (levi_request) {
        const LeviSplit split = split_for(spec, g);
        result["split"] = split_to_json(split);
        switch (spec.kind) {
            case ProblemKind::Poisson: {
                const LeviDecomposition d = levi_decompose(spec.poisson, split, order, opts);
                result["change"] = change_to_json(d.change, names);
                result["normal_form"] = problem_to_json(with_poisson(spec, d.normal_form.reconstruct()));
                result["levi"] = levi_block(d.normal_form, names);
                finish_trace(d.trace);
                break;
            }
            case ProblemKind::Algebroid: {
                const AlgebroidLevi d = levi_algebroid(spec.algebroid, split, order, opts);
                result["change"] = change_to_json(d.change, names);
                result["normal_form"] = problem_to_json(with_algebroid(spec, d.normal_form));
                finish_trace(d.trace);
                break;
            }
            case ProblemKind::Action:
                throw std::invalid_argument("the levi command applies to bracket and algebroid problems");
        }
        result["kind"] = "levi";
        body["result"] = result;
    } else {
        throw std::invalid_argument("unknown command '" + command + "'");
    }
    body["result"]["verified"] = verify_report(body);
    return report;
}

}  // namespace

json constants_to_json(const LieAlgebra& g)
{
    json out = json::array();
    const std::size_t n = g.dim();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                if (!plin::is_zero(g.c(i, j, k))) out.push_back({i, j, k, to_string(g.c(i, j, k))});
            }
        }
    }
    return out;
}

json matrix_to_json(const Matrix& m)
{
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
        out.push_back(std::move(row));
    }
    return out;
}

json change_to_json(const CoordChange& phi, const std::vector<std::string>& names)
{
    json out = json::array();
    for (const auto& f : phi.components()) out.push_back(to_string(f, names));
    return out;
}

CoordChange change_from_json(const json& j, const std::vector<std::string>& names, int order)
{
    if (!j.is_array() || j.size() != names.size()) throw std::invalid_argument("change needs one component per variable");
    std::vector<Jet> comps;
    for (const auto& c : j) comps.push_back(parse_polynomial(c.get<std::string>(), names, order));
    return CoordChange(std::move(comps));
}

json cochain_to_json(const Cochain& w, const std::vector<std::string>& names)
{
    return {{"degree", w.degree()},
            {"module_dim", w.module().dim()},
            {"entries", sparse_vector(w, w.coefficients(), names)}};
}

json trace_to_json(const IterationTrace& trace)
{
    json steps = json::array();
    for (const auto& s : trace.steps) {
        steps.push_back({{"index", s.index},
                         {"degrees", s.degrees},
                         {"lowest_before", s.lowest_before},
                         {"lowest_after", s.lowest_after},
                         {"norm_before", s.norm_before},
                         {"norm_after", s.norm_after},
                         {"obstruction", s.obstruction}});
    }
    return {{"scheduler", to_string(trace.scheduler)},
            {"radius", trace.radius},
            {"order", trace.order},
            {"steps", steps}};
}

json convergence_to_json(const ConvergenceReport& report)
{
    json entries = json::array();
    for (const auto& e : report.entries) {
        json entry{{"index", e.index}, {"lowest_degree", e.lowest_degree}, {"norm", e.norm}};
        entry["ratio"] = e.ratio ? json(*e.ratio) : json(nullptr);
        entries.push_back(std::move(entry));
    }
    return {{"scheduler", to_string(report.scheduler)},
            {"radius", report.radius},
            {"structural_law_holds", report.structural_law_holds},
            {"entries", entries}};
}

json classification_to_json(const LieAlgebra& g)
{
    const KillingSignature sig = killing_signature(g);
    return {{"dim", g.dim()},
            {"constants", constants_to_json(g)},
            {"killing", matrix_to_json(killing_form(g))},
            {"signature", {{"positive", sig.positive}, {"negative", sig.negative}, {"zero", sig.zero}}},
            {"abelian", g.is_abelian()},
            {"semisimple", is_semisimple(g)},
            {"compact_type", is_compact_type(g)},
            {"radical_dim", radical(g).size()}};
}

GModule problem_module(const ProblemSpec& spec, int degree)
{
    if (degree < 0) throw std::invalid_argument("module degree must be nonnegative");
    const LieAlgebra g = problem_algebra(spec);
    std::vector<Matrix> rep;
    switch (spec.kind) {
        case ProblemKind::Poisson: {
            const std::size_t n = spec.variables.size();
            for (std::size_t i = 0; i < g.dim(); ++i) {
                Matrix m(n, n);
                for (std::size_t a = 0; a < n; ++a) {
                    for (std::size_t k = 0; k < n; ++k) m(k, a) = g.c(i, a, k);
                }
                rep.push_back(std::move(m));
            }
            return induced_polynomial_module(g, n, rep, degree);
        }
        case ProblemKind::Action: {
            const std::size_t m = spec.action.nvars();
            std::vector<Matrix> twist;
            for (std::size_t i = 0; i < g.dim(); ++i) {
                twist.push_back(spec.action.linear_matrix(i));
                rep.push_back(twist.back().transposed());
            }
            const std::vector<std::vector<Monomial>> allowed(m, monomials_of_degree(m, degree));
            return twisted_polynomial_module(g, m, rep, twist, allowed);
        }
        case ProblemKind::Algebroid: {
            for (std::size_t i = 0; i < g.dim(); ++i) rep.push_back(spec.algebroid.linear_anchor(i).transposed());
            return induced_polynomial_module(g, spec.variables.size(), rep, degree);
        }
    }
    throw std::invalid_argument("unknown problem kind");
}

bool verify_report(const json& report)
{
    try {
        const json& result = report.at("result");
        const std::string kind = result.at("kind").get<std::string>();
        if (kind == "obstruction") return verify_obstruction(problem_from_json(report.at("input")), result.at("obstruction"));
        if (kind != "linearization" && kind != "levi") return false;
        const ProblemSpec input = problem_from_json(report.at("input"));
        const ProblemSpec normal = problem_from_json(result.at("normal_form"));
        const auto names = all_names(input);
        const int order = input.max_degree;
        switch (input.kind) {
            case ProblemKind::Poisson: {
                const CoordChange phi = change_from_json(result.at("change"), names, order);
                const PoissonJet image = pushforward(input.poisson, phi);
                if (!(image == normal.poisson) || !image.is_poisson()) return false;
                if (kind == "linearization") return image.is_linear();
                return levi_pattern_holds(image, result.at("levi").at("s_dim").get<std::size_t>());
            }
            case ProblemKind::Action: {
                const CoordChange phi = change_from_json(result.at("change"), names, order);
                const ActionJet image = pushforward_action(input.action, phi);
                return image == normal.action && image.is_linear() && image.is_valid();
            }
            case ProblemKind::Algebroid: {
                const CoordChange phi = change_from_json(result.at("change"), names, order + 1);
                const PoissonJet image = pushforward(algebroid_to_poisson(input.algebroid), phi);
                if (!(image == algebroid_to_poisson(normal.algebroid))) return false;
                if (!preserves_fiber_grading(phi, input.variables.size())) return false;
                if (kind == "linearization") return image.is_linear();
                const std::size_t s_dim = result.at("split").at("s_basis").size();
                return algebroid_levi_pattern_holds(normal.algebroid, s_dim);
            }
        }
    } catch (const std::exception&) {
        return false;
    }
    return false;
}

Report run(const std::string& command, const ProblemSpec& spec, const RunOptions& options)
{
    const auto start = std::chrono::steady_clock::now();
    Report report;
    try {
        report = dispatch(command, spec, options);
    } catch (const ParseError& e) {
        report = error_report(command, "parse_error", e.what());
    } catch (const InputNotCocycle& e) {
        report = error_report(command, "invalid_input", e.what());
    } catch (const PreconditionNotNormalized& e) {
        report = error_report(command, "precondition", e.what());
    } catch (const SplitNotCertified& e) {
        report = error_report(command, "split_not_certified", e.what());
    } catch (const LeviError& e) {
        report = error_report(command, "levi_split_rejected", std::string(to_string(e.violation())) + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        report = error_report(command, "invalid_input", e.what());
    } catch (const std::exception& e) {
        report = error_report(command, "engine_error", e.what());
    }
    const auto stop = std::chrono::steady_clock::now();
    report.body["timing_ms"] = std::chrono::duration<double, std::milli>(stop - start).count();
    return report;
}

namespace {

void render_brackets(std::ostringstream& os, const json& problem)
{
    const std::string kind = problem.at("kind").get<std::string>();
    if (kind == "action") {
        for (const auto& f : problem.at("fields")) {
            os << "  " << f.at("generator").get<std::string>() << " ->";
            if (f.at("components").empty()) os << " 0";
            for (const auto& [var, value] : f.at("components").items()) {
                os << " (" << value.get<std::string>() << ") d/d" << var;
            }
            os << "\n";
        }
        return;
    }
    for (const auto& b : problem.at("brackets")) {
        os << "  {" << b.at("pair")[0].get<std::string>() << ", " << b.at("pair")[1].get<std::string>()
           << "} = " << b.at("value").get<std::string>() << "\n";
    }
    if (kind == "algebroid") {
        for (const auto& a : problem.at("anchor")) {
            os << "  #" << a.at("section").get<std::string>() << "(" << a.at("variable").get<std::string>()
               << ") = " << a.at("value").get<std::string>() << "\n";
        }
    }
}

}  // namespace

std::string render_text(const json& report)
{
    std::ostringstream os;
    os << "command: " << report.value("command", "") << "\n";
    if (report.contains("error")) {
        os << "error (" << report["error"].at("code").get<std::string>()
           << "): " << report["error"].at("message").get<std::string>() << "\n";
        return os.str();
    }
    if (report.contains("entry")) os << "entry: " << report["entry"].get<std::string>() << "\n";
    if (report.contains("note")) os << "note: " << report["note"].get<std::string>() << "\n";
    const json& input = report.at("input");
    os << "kind: " << input.at("kind").get<std::string>() << ", variables:";
    for (const auto& v : input.at("variables")) os << " " << v.get<std::string>();
    os << ", N = " << input.at("max_degree").get<int>() << ", scheduler " << input.at("scheduler").get<std::string>()
       << "\n";
    const json& c = report.at("classification");
    const auto yes = [](const json& b) { return b.get<bool>() ? "yes" : "no"; };
    os << "isotropy: dim " << c.at("dim").get<std::size_t>() << ", semisimple " << yes(c.at("semisimple"))
       << ", compact type " << yes(c.at("compact_type")) << ", radical dim " << c.at("radical_dim").get<std::size_t>()
       << ", Killing signature (" << c["signature"]["positive"].get<std::size_t>() << ", "
       << c["signature"]["negative"].get<std::size_t>() << ", " << c["signature"]["zero"].get<std::size_t>() << ")\n";
    const json& r = report.at("result");
    const std::string kind = r.at("kind").get<std::string>();
    if (kind == "check" || kind == "classification") {
        os << "valid: " << yes(r.at("valid")) << "\n";
    } else if (kind == "cohomology") {
        os << "H^" << r.at("degree").get<int>() << " on module degree " << r.at("module_degree").get<int>()
           << ": dim " << r.at("cohomology_dim").get<std::size_t>() << " (cochains " << r.at("cochain_dim").get<std::size_t>()
           << ")\n";
        if (r.contains("homotopy_bound")) os << "homotopy bound: " << r.at("homotopy_bound").get<double>() << "\n";
    } else if (kind == "obstruction") {
        const json& o = r.at("obstruction");
        os << "obstruction at degree " << o.at("degree").get<int>() << " in H^" << o.at("cochain_degree").get<int>()
           << " (dim " << o.at("cohomology_dim").get<std::size_t>() << "), pairing " << o.at("pairing").get<std::string>()
           << ", verified " << yes(o.at("verified")) << "\n";
    } else {
        os << "result: " << kind << ", verified " << yes(r.at("verified")) << "\n";
        os << "change:\n";
        std::vector<std::string> names = input.at("variables").get<std::vector<std::string>>();
        if (input.contains("fiber")) {
            for (const auto& f : input["fiber"]) names.push_back(f.get<std::string>());
        }
        for (std::size_t i = 0; i < names.size(); ++i) {
            os << "  " << names[i] << " -> " << r.at("change")[i].get<std::string>() << "\n";
        }
        os << "normal form:\n";
        render_brackets(os, r.at("normal_form"));
    }
    if (report.contains("trace")) {
        const json& t = report["trace"];
        os << "trace: " << t.at("steps").size() << " steps\n";
        for (const auto& s : t.at("steps")) {
            const auto& d = s.at("degrees");
            os << "  step " << s.at("index").get<int>() << ": degrees ";
            if (d.empty()) os << "none";
            else os << d.front().get<int>() << ".." << d.back().get<int>();
            os << ", lowest " << s.at("lowest_before").get<int>() << " -> "
               << s.at("lowest_after").get<int>() << ", norm " << s.at("norm_before").get<double>() << " -> "
               << s.at("norm_after").get<double>() << "\n";
        }
        os << "structural law: " << yes(report.at("convergence").at("structural_law_holds")) << "\n";
    }
    if (report.contains("truncation_scan")) {
        os << "truncation scan:";
        for (const auto& t : report["truncation_scan"]) {
            os << " N=" << t.at("max_degree").get<int>() << (t.at("truncation_linear").get<bool>() ? " linear" : " nonlinear")
               << (t.at("identity_change").get<bool>() ? "/identity" : "/changed");
        }
        os << "\n";
    }
    if (report.contains("timing_ms")) os << "time: " << report["timing_ms"].get<double>() << " ms\n";
    return os.str();
}

}  // namespace plin
