#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "plin/corpus.hpp"
#include "plin/report.hpp"
#include "support.hpp"

using namespace plin;
using nlohmann::json;
using testing::Rng;

namespace {

const std::vector<std::string> xyz{"x", "y", "z"};

Scalar random_radius(Rng& rng)
{
    std::uniform_int_distribution<int> num(1, 5), den(1, 4);
    Scalar r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

ProblemSpec random_spec(Rng& rng, int kind)
{
    std::uniform_int_distribution<int> order_dist(2, 5);
    const int order = order_dist(rng);
    const LieAlgebra g = std::bernoulli_distribution(0.5)(rng) ? testing::so3() : testing::sl2();
    ProblemSpec spec;
    spec.variables = xyz;
    spec.max_degree = order;
    spec.scheduler = std::bernoulli_distribution(0.5)(rng) ? Scheduler::Degree : Scheduler::Doubling;
    spec.radius = random_radius(rng);
    if (kind == 0) {
        spec.kind = ProblemKind::Poisson;
        spec.poisson = pushforward(linear_poisson(g, order), testing::random_near_identity(rng, 3, order, 3));
    } else if (kind == 1) {
        spec.kind = ProblemKind::Action;
        spec.generators = {"X", "Y", "Z"};
        spec.action =
            pushforward_action(ActionJet::coadjoint(g, order), testing::random_near_identity(rng, 3, order, 3));
    } else {
        spec.kind = ProblemKind::Algebroid;
        spec.fiber = {"a", "b", "c"};
        const AlgebroidJet a = AlgebroidJet::from_action(ActionJet::coadjoint(g, order + 1));
        const CoordChange phi = testing::random_graded_change(rng, 3, 3, order + 1);
        spec.algebroid = poisson_to_algebroid(pushforward(algebroid_to_poisson(a), phi), 3);
    }
    if (std::bernoulli_distribution(0.3)(rng)) spec.levi_factor = LeviFactorSpec{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {}};
    return spec;
}

json result_of(const Report& r) { return r.body.contains("result") ? r.body["result"] : json(); }

int expected_exit(const Report& r)
{
    if (r.body.contains("error")) return kExitInputError;
    const json res = result_of(r);
    if (res.is_object() && res.value("kind", "") == "obstruction") return kExitObstruction;
    return kExitSuccess;
}

}  // namespace

TEST_CASE("polynomial parser")
{
    const int order = 4;
    const Jet x = Jet::variable(3, order, 0), y = Jet::variable(3, order, 1), z = Jet::variable(3, order, 2);
    CHECK(parse_polynomial("-z", xyz, order) == -z);
    CHECK(parse_polynomial("x - 1/2*y^2", xyz, order) == x - Scalar(1, 2) * y * y);
    CHECK(parse_polynomial("  2*x*y + x^2 - 3 ", xyz, order) == Scalar(2) * x * y + x * x - Jet::constant(3, order, 3));
    CHECK(parse_polynomial("0", xyz, order).is_zero());
    CHECK(parse_polynomial("x^7", xyz, order).is_zero());

    try {
        parse_polynomial("x + ", xyz, order);
        FAIL("expected a ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
        CHECK(e.column() == 5);
        CHECK(e.detail() == "unexpected end of input");
    }
    try {
        parse_polynomial("0.5*x", xyz, order);
        FAIL("expected a ParseError");
    } catch (const ParseError& e) {
        CHECK(e.column() == 2);
        CHECK(e.detail() == "non-rational coefficient");
    }
    try {
        parse_polynomial("x + w", xyz, order);
        FAIL("expected a ParseError");
    } catch (const ParseError& e) {
        CHECK(e.column() == 5);
        CHECK(e.detail() == "unknown variable 'w'");
    }
}

TEST_CASE("problem schema errors")
{
    try {
        parse_problem("{\n  \"kind\": \"poisson\",\n  \"variables\": [\"x\", \"y\"\n}");
        FAIL("expected a ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 4);
        CHECK(e.detail() == "malformed JSON");
    }
    CHECK_THROWS_AS(parse_problem(R"({"kind": "poisson", "variables": ["x", "y"],
        "brackets": [{"pair": ["x", "y"], "value": "x + q"}]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_problem(R"({"kind": "poisson", "variables": ["x"], "max_degree": 0, "brackets": []})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_problem(R"({"kind": "poisson", "variables": ["x"], "radius": "-1", "brackets": []})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_problem(R"({"kind": "tensor", "variables": ["x"]})"), std::invalid_argument);
}

TEST_CASE("print then parse is the identity on random problems")
{
    Rng rng(901);
    for (int trial = 0; trial < 30; ++trial) {
        const ProblemSpec spec = random_spec(rng, trial % 3);
        const std::string text = print_problem(spec);
        const ProblemSpec back = parse_problem(text);
        CHECK(back == spec);
        CHECK(print_problem(back) == text);
    }
}

TEST_CASE("analyze reports classification flags")
{
    const ProblemSpec so3 = corpus_problem(corpus_entry("so3-linear"));
    const Report r = run("analyze", so3);
    CHECK(r.exit_code == kExitSuccess);
    const json& c = r.body["classification"];
    CHECK(c["dim"] == 3);
    CHECK(c["semisimple"] == true);
    CHECK(c["compact_type"] == true);
    CHECK(c["abelian"] == false);
    CHECK(c["radical_dim"] == 0);

    const json s = run("analyze", corpus_problem(corpus_entry("sl2-linear"))).body["classification"];
    CHECK(s["semisimple"] == true);
    CHECK(s["compact_type"] == false);

    const json a = run("analyze", corpus_problem(corpus_entry("abelian-x2"))).body["classification"];
    CHECK(a["abelian"] == true);
    CHECK(a["semisimple"] == false);
    CHECK(a["radical_dim"] == 2);
}

TEST_CASE("check flags invalid brackets")
{
    const ProblemSpec bad = parse_problem(R"({"kind": "poisson", "variables": ["x", "y", "z"],
        "brackets": [{"pair": ["x", "y"], "value": "y"}, {"pair": ["y", "z"], "value": "x"}]})");
    const Report c = run("check", bad);
    CHECK(c.exit_code == kExitInputError);
    CHECK(c.body["result"]["valid"] == false);
    const Report l = run("linearize", bad);
    CHECK(l.exit_code == kExitInputError);
    CHECK(l.body.contains("error"));

    const Report ok = run("check", corpus_problem(corpus_entry("gl2-levi")));
    CHECK(ok.exit_code == kExitSuccess);
    CHECK(ok.body["result"]["valid"] == true);
}

TEST_CASE("abelian x^2 exits with an obstruction certificate")
{
    const Report r = run_corpus_entry(corpus_entry("abelian-x2"));
    CHECK(r.exit_code == kExitObstruction);
    const json& res = r.body["result"];
    CHECK(res["kind"] == "obstruction");
    const json& ob = res["obstruction"];
    CHECK(ob["degree"] == 2);
    CHECK(ob["cochain_degree"] == 2);
    CHECK(ob["verified"] == true);
    CHECK(ob["pairing"] != "0");
    json forged = r.body;
    forged["result"]["obstruction"]["remainder"]["entries"][0]["value"] = "2";
    CHECK_FALSE(verify_report(forged));
    CHECK(verify_report(r.body));
    CHECK_FALSE(render_text(r.body).empty());
}

TEST_CASE("corpus entries meet their expected exits and verify")
{
    for (const auto& e : corpus()) {
        CAPTURE(e.name);
        const Report r = run_corpus_entry(e);
        CHECK(r.exit_code == e.expected_exit);
        CHECK(r.body["entry"] == e.name);
        CHECK(verify_report(r.body));
        CHECK_FALSE(render_text(r.body).empty());
    }
}

TEST_CASE("flat perturbation scan")
{
    const Report r = run_corpus_entry(corpus_entry("weinstein-sl2-flat"));
    REQUIRE(r.body.contains("truncation_scan"));
    CHECK(r.body["truncation_scan"].size() == 10);
    for (const auto& row : r.body["truncation_scan"]) {
        CHECK(row["truncation_linear"] == true);
        CHECK(row["identity_change"] == true);
    }
    CHECK(r.body["truncations_linear_with_identity_change"] == true);
}

TEST_CASE("verify_report rejects a tampered change")
{
    Report r = run_corpus_entry(corpus_entry("gl2-levi"));
    REQUIRE(r.exit_code == kExitSuccess);
    CHECK(verify_report(r.body));
    json tampered = r.body;
    tampered["result"]["change"][0] = "a + b^2";
    CHECK_FALSE(verify_report(tampered));
}

TEST_CASE("exit codes depend only on the result kind")
{
    Rng rng(902);
    std::vector<Report> reports;
    for (const auto& e : corpus()) reports.push_back(run_corpus_entry(e));
    for (int trial = 0; trial < 9; ++trial) {
        const ProblemSpec spec = random_spec(rng, trial % 3);
        const std::string command = spec.kind == ProblemKind::Algebroid ? "algebroid" : "linearize";
        reports.push_back(run(command, spec));
        reports.push_back(run("check", spec));
    }
    reports.push_back(run("linearize", corpus_problem(corpus_entry("abelian-x2"), {Scheduler::Degree, 4, {}, {}})));
    RunOptions opts;
    opts.cohomology_degree = 2;
    opts.module_degree = 2;
    reports.push_back(run("cohomology", corpus_problem(corpus_entry("so3-linear")), opts));
    reports.push_back(run("frobnicate", corpus_problem(corpus_entry("so3-linear"))));
    for (const auto& r : reports) {
        CAPTURE(r.body.dump());
        CHECK(r.exit_code == expected_exit(r));
    }
}

TEST_CASE("cohomology command")
{
    RunOptions opts;
    opts.cohomology_degree = 2;
    opts.module_degree = 3;
    const Report r = run("cohomology", corpus_problem(corpus_entry("so3-linear")), opts);
    REQUIRE(r.exit_code == kExitSuccess);
    CHECK(r.body["result"]["cohomology_dim"] == 0);
    CHECK(r.body["result"]["module_dim"] == 10);
    opts.cohomology_degree = 1;
    opts.module_degree = 1;
    const Report a = run("cohomology", corpus_problem(corpus_entry("abelian-x2")), opts);
    CHECK(a.body["result"]["cohomology_dim"] == 4);
}
