#include "plin/corpus.hpp"

#include <algorithm>

#include "plin/algebroid.hpp"

namespace plin {

using nlohmann::json;

namespace {

ProblemSpec from_text(const char* text, int order)
{
    json j = json::parse(text);
    j["max_degree"] = order;
    return problem_from_json(j);
}

CoordChange change_from_strings(const std::vector<std::string>& comps, const std::vector<std::string>& names,
                                int order)
{
    std::vector<Jet> jets;
    for (const auto& c : comps) jets.push_back(parse_polynomial(c, names, order));
    return CoordChange(std::move(jets));
}

const char* const kSo3 = R"({
  "kind": "poisson", "variables": ["x", "y", "z"],
  "brackets": [{"pair": ["x", "y"], "value": "z"},
               {"pair": ["y", "z"], "value": "x"},
               {"pair": ["z", "x"], "value": "y"}]})";

const char* const kSl2 = R"({
  "kind": "poisson", "variables": ["x", "y", "z"],
  "brackets": [{"pair": ["x", "y"], "value": "-z"},
               {"pair": ["y", "z"], "value": "x"},
               {"pair": ["z", "x"], "value": "y"}]})";

// The flat term g(x^2 + y^2 - z^2) has the zero Taylor series at the origin,
// so every truncation of the perturbed bracket is the sl(2) bracket.
const char* const kWeinsteinFlat = kSl2;

const char* const kAbelianX2 = R"({
  "kind": "poisson", "variables": ["x", "y"],
  "brackets": [{"pair": ["x", "y"], "value": "x^2"}]})";

// The flat terms again vanish to all orders, leaving the linear action.
const char* const kGuilleminSternberg = R"({
  "kind": "action", "variables": ["x", "y", "z"], "generators": ["X", "Y", "Z"],
  "algebra": [{"pair": ["X", "Y"], "value": "-Z"},
              {"pair": ["Y", "Z"], "value": "X"},
              {"pair": ["Z", "X"], "value": "Y"}],
  "fields": [{"generator": "X", "components": {"y": "z", "z": "y"}},
             {"generator": "Y", "components": {"x": "z", "z": "x"}},
             {"generator": "Z", "components": {"x": "-y", "y": "x"}}]})";

// gl(2) with a = E11, b = E12, c = E21, d = E22.
const char* const kGl2 = R"({
  "kind": "poisson", "variables": ["a", "b", "c", "d"],
  "brackets": [{"pair": ["a", "b"], "value": "b"},
               {"pair": ["a", "c"], "value": "-c"},
               {"pair": ["b", "c"], "value": "a - d"},
               {"pair": ["b", "d"], "value": "b"},
               {"pair": ["c", "d"], "value": "-c"}]})";

ProblemSpec gl2_levi(int order)
{
    ProblemSpec spec = from_text(kGl2, order);
    const CoordChange phi = change_from_strings(
        {"a + b*c", "b - 1/2*a^2 + c*d", "c + 2*a*b*d", "d + a^2 - 1/3*b^3"}, spec.variables, order);
    spec.poisson = pushforward(spec.poisson, phi);
    return spec;
}

ProblemSpec so3_coadjoint_algebroid(int order)
{
    const ProblemSpec so3 = from_text(kSo3, 1);
    const LieAlgebra g = isotropy_from_linear_part(so3.poisson);
    const AlgebroidJet linear = AlgebroidJet::from_action(ActionJet::coadjoint(g, order + 1));
    ProblemSpec spec;
    spec.kind = ProblemKind::Algebroid;
    spec.variables = {"x", "y", "z"};
    spec.fiber = {"a", "b", "c"};
    spec.max_degree = order;
    std::vector<std::string> names = spec.variables;
    names.insert(names.end(), spec.fiber.begin(), spec.fiber.end());
    const CoordChange phi = change_from_strings(
        {"x + y*z", "y - 1/2*x^2", "z", "a + x*b", "b - y*c + z^2*a", "c"}, names, order + 1);
    spec.algebroid = poisson_to_algebroid(pushforward(algebroid_to_poisson(linear), phi), 3);
    return spec;
}

std::vector<CorpusEntry> build_corpus()
{
    std::vector<CorpusEntry> out;
    out.push_back({"abelian-x2",
                   "abelian isotropy with {x, y} = x^2; the degree-2 remainder is a nonzero class in H^2",
                   "linearize", [](int n) { return from_text(kAbelianX2, n); }, 6, kExitObstruction, 0});
    out.push_back({"gl2-levi", "linear gl(2) bracket pushed forward by a fixed polynomial change; Levi normal form",
                   "levi", gl2_levi, 6, kExitSuccess, 0});
    out.push_back({"guillemin-sternberg-action",
                   "sl(2) action on R^3 plus flat radial terms; the truncation is the linear action",
                   "linearize", [](int n) { return from_text(kGuilleminSternberg, n); }, 6, kExitSuccess, 0});
    out.push_back({"sl2-linear", "linear Poisson bracket on sl(2)*", "linearize",
                   [](int n) { return from_text(kSl2, n); }, 6, kExitSuccess, 0});
    out.push_back({"so3-coadjoint-algebroid",
                   "action algebroid of the coadjoint so(3) action in perturbed grading-preserving coordinates",
                   "algebroid", so3_coadjoint_algebroid, 6, kExitSuccess, 0});
    out.push_back({"so3-linear", "linear Poisson bracket on so(3)*", "linearize",
                   [](int n) { return from_text(kSo3, n); }, 6, kExitSuccess, 0});
    out.push_back({"weinstein-sl2-flat",
                   "sl(2) bracket plus flat terms built from g(x^2 + y^2 - z^2); smoothly non-linearizable, but every "
                   "truncation is exactly linear, so the formal engine returns the identity change",
                   "linearize", [](int n) { return from_text(kWeinsteinFlat, n); }, 6, kExitSuccess, 10});
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    return out;
}

}  // namespace

const std::vector<CorpusEntry>& corpus()
{
    static const std::vector<CorpusEntry> entries = build_corpus();
    return entries;
}

const CorpusEntry& corpus_entry(const std::string& name)
{
    for (const auto& e : corpus()) {
        if (e.name == name) return e;
    }
    throw std::invalid_argument("unknown corpus entry '" + name + "'");
}

ProblemSpec corpus_problem(const CorpusEntry& entry, const CorpusOverrides& overrides)
{
    ProblemSpec spec = entry.build(overrides.max_degree.value_or(entry.default_degree));
    if (overrides.scheduler) spec.scheduler = *overrides.scheduler;
    if (overrides.radius) spec.radius = *overrides.radius;
    if (overrides.levi_factor) spec.levi_factor = *overrides.levi_factor;
    return spec;
}

Report run_corpus_entry(const CorpusEntry& entry, const CorpusOverrides& overrides)
{
    Report report;
    try {
        report = run(entry.command, corpus_problem(entry, overrides));
    } catch (const std::exception& e) {
        report.exit_code = kExitInputError;
        report.body = {{"command", entry.command}, {"error", {{"code", "invalid_input"}, {"message", e.what()}}}};
    }
    report.body["entry"] = entry.name;
    report.body["note"] = entry.description;
    if (entry.scan_through > 0) {
        json scan = json::array();
        bool all_linear = true;
        for (int n = 1; n <= entry.scan_through; ++n) {
            CorpusOverrides at = overrides;
            at.max_degree = n;
            const ProblemSpec spec = corpus_problem(entry, at);
            const Report r = run(entry.command, spec);
            const bool linear = spec.kind == ProblemKind::Poisson ? spec.poisson.is_linear() : spec.action.is_linear();
            const bool identity = r.exit_code == kExitSuccess && r.body["result"].value("identity_change", false);
            all_linear = all_linear && linear && identity;
            scan.push_back({{"max_degree", n}, {"truncation_linear", linear}, {"identity_change", identity}});
        }
        report.body["truncation_scan"] = scan;
        report.body["truncations_linear_with_identity_change"] = all_linear;
    }
    return report;
}

}  // namespace plin
