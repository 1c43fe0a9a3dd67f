// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "plin/corpus.hpp"
#include "plin/report.hpp"
#include "support.hpp"

using namespace plin;
using testing::Rng;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok && pass) detail = what;
        pass = pass && ok;
    }
};

int failures = 0;

void criterion(const char* name, const std::function<Outcome()>& body)
{
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %s (%.2fs)%s%s\n", o.pass ? "PASS" : "FAIL", name, secs, o.detail.empty() ? "" : ": ",
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
}

PoissonJet perturbed(Rng& rng, const LieAlgebra& g, int order, int max_degree)
{
    return pushforward(linear_poisson(g, order), testing::random_near_identity(rng, g.dim(), order, max_degree));
}

bool linear_in(const Jet& f, std::size_t lo, std::size_t hi)
{
    for (const auto& [m, c] : f.terms()) {
        if (m.degree() != 1) return false;
        for (std::size_t v = 0; v < m.size(); ++v) {
            if (m[v] != 0 && (v < lo || v >= hi)) return false;
        }
    }
    return true;
}

// Step k of a doubling run treats 2^k .. 2^(k+1) - 1 and clears them.
bool doubling_law(const IterationTrace& t)
{
    int k = 1;
    for (const auto& s : t.steps) {
        if (s.index != k || s.degrees.empty()) return false;
        if (s.degrees.front() != (1 << k) || s.degrees.back() != std::min((1 << (k + 1)) - 1, t.order)) return false;
        if (s.lowest_before < (1 << k)) return false;
        if (s.lowest_after < std::min(1 << (k + 1), t.order + 1)) return false;
        ++k;
    }
    return (1 << k) > t.order;
}

std::vector<IterationTrace> poisson_traces;

}  // namespace

int main()
{
    criterion("differential squares to zero", [] {
        Outcome o;
        Rng rng(1001);
        int checks = 0;
        for (const LieAlgebra& g :
             {testing::so3(), testing::sl2(), testing::gl2(), LieAlgebra::abelian(2)}) {
            for (int d = 1; d <= 4; ++d) {
                const auto m = testing::polynomial_module(g, d);
                for (int r = 0; r <= 2; ++r) {
                    for (int trial = 0; trial < 5; ++trial) {
                        const Cochain w = testing::random_cochain(rng, m, r);
                        const Cochain dw = ce_differential(w);
                        const auto subsets = index_subsets(g.dim(), static_cast<std::size_t>(r + 1));
                        for (std::size_t s = 0; s < subsets.size(); ++s) {
                            Vector slot(m->dim());
                            for (std::size_t b = 0; b < m->dim(); ++b) slot[b] = dw.at(s, b);
                            o.require(slot == testing::oracle_differential(w, subsets[s]), "differential != oracle");
                        }
                        o.require(ce_differential(dw).is_zero(), "d d != 0");
                        ++checks;
                    }
                }
            }
        }
        o.require(checks >= 200, "fewer than 200 checks");
        return o;
    });

    criterion("first and second cohomology vanish for so(3) and sl(2)", [] {
        Outcome o;
        for (const LieAlgebra& g : {testing::so3(), testing::sl2()}) {
            for (int d = 2; d <= 5; ++d) {
                const auto m = testing::polynomial_module(g, d);
                o.require(cohomology_dimension(*m, 1) == 0, "H^1 != 0 at degree " + std::to_string(d));
                o.require(cohomology_dimension(*m, 2) == 0, "H^2 != 0 at degree " + std::to_string(d));
            }
        }
        return o;
    });

    criterion("bracket linearization round-trips at N = 8", [] {
        Outcome o;
        Rng rng(1003);
        const int order = 8;
        for (int trial = 0; trial < 100; ++trial) {
            const LieAlgebra g = trial % 2 ? testing::sl2() : testing::so3();
            const PoissonJet p = perturbed(rng, g, order, 4);
            const auto res = linearize_poisson(p, order);
            o.require(res.succeeded(), "unexpected obstruction");
            if (!res.succeeded()) continue;
            const auto& lin = std::get<PoissonLinearization>(res.outcome);
            o.require(pushforward(p, lin.change) == lin.normal_form, "pushforward != normal form");
            o.require(lin.normal_form == linear_poisson(g, order), "normal form not the linear part");
            poisson_traces.push_back(res.trace);
        }
        return o;
    });

    criterion("doubling degree law", [] {
        Outcome o;
        o.require(poisson_traces.size() >= 100, "missing traces");
        for (const auto& t : poisson_traces) o.require(doubling_law(t), "trace violates the doubling law");
        return o;
    });

    criterion("abelian x^2 obstruction certificate", [] {
        Outcome o;
        const Report r = run_corpus_entry(corpus_entry("abelian-x2"));
        o.require(r.exit_code == kExitObstruction, "exit code " + std::to_string(r.exit_code));
        o.require(r.body["result"]["kind"] == "obstruction", "result is not an obstruction");
        o.require(verify_report(r.body), "certificate does not verify");
        return o;
    });

    criterion("coadjoint so(3) action conjugations at N = 6", [] {
        Outcome o;
        Rng rng(1006);
        const int order = 6;
        const ActionJet rho = ActionJet::coadjoint(testing::so3(), order);
        for (int trial = 0; trial < 50; ++trial) {
            const ActionJet conj = pushforward_action(rho, testing::random_near_identity(rng, 3, order, 4));
            const auto res = linearize_action(conj, order);
            o.require(res.succeeded(), "unexpected obstruction");
            if (!res.succeeded()) continue;
            const auto& lin = std::get<ActionLinearization>(res.outcome);
            o.require(pushforward_action(conj, lin.change) == lin.normal_form, "pushforward != normal form");
            o.require(lin.normal_form == rho, "normal form not linear");
        }
        const Jet x = Jet::variable(1, order, 0);
        const auto obs = linearize_action(ActionJet(LieAlgebra::abelian(1), {{x * x}}), order);
        o.require(!obs.succeeded(), "x^2 d/dx linearized");
        if (!obs.succeeded()) {
            o.require(std::get<NormalizationObstruction>(obs.outcome).obstruction.verify(), "x^2 d/dx certificate");
        }
        return o;
    });

    criterion("gl(2) Levi normal form at N = 6", [] {
        Outcome o;
        Rng rng(1007);
        const int order = 6;
        const LeviSplit split = levi_lift(testing::gl2());
        for (int trial = 0; trial < 25; ++trial) {
            const PoissonJet p = perturbed(rng, testing::gl2(), order, 4);
            const LeviDecomposition dec = levi_decompose(p, split, order);
            const PoissonJet q = pushforward(p, dec.change);
            o.require(q == dec.normal_form.reconstruct(), "pushforward != normal form");
            for (std::size_t i = 0; i < 3; ++i) {
                for (std::size_t j = i + 1; j < 3; ++j) o.require(linear_in(q(i, j), 0, 3), "s-s bracket not linear");
                o.require(linear_in(q(i, 3), 3, 4), "s-r bracket not linear in r");
            }
        }
        return o;
    });

    criterion("Koszul bracket identities", [] {
        Outcome o;
        Rng rng(1008);
        const int order = 12;
        PoissonJet logc(3, order);
        const Jet x = Jet::variable(3, order, 0), y = Jet::variable(3, order, 1), z = Jet::variable(3, order, 2);
        logc.set(0, 1, Scalar(2) * x * y);
        logc.set(0, 2, Scalar(-1, 3) * x * z);
        logc.set(1, 2, Scalar(3, 2) * y * z);
        const PoissonJet so3 = linear_poisson(testing::so3(), order);
        int inputs = 0;
        for (const PoissonJet* p : {&so3, static_cast<const PoissonJet*>(&logc)}) {
            o.require(p->is_poisson(), "bracket is not Poisson");
            for (int trial = 0; trial < 50; ++trial) {
                const Jet f = testing::random_jet(rng, 3, order, 1, 4, 0.3);
                const Jet g = testing::random_jet(rng, 3, order, 1, 4, 0.3);
                const Jet h = testing::random_jet(rng, 3, order, 0, 2, 0.5);
                const PolyOneForm df = exterior_derivative(f);
                const PolyOneForm dg = exterior_derivative(g);
                o.require(koszul_bracket(df, dg, *p) == exterior_derivative(poisson_bracket(f, g, *p)),
                          "[df, dg] != d{f, g}");
                o.require(koszul_bracket(df, h * dg, *p) ==
                              h * koszul_bracket(df, dg, *p) + apply_vector_field(sharp(df, *p), h) * dg,
                          "Leibniz rule fails");
                ++inputs;
            }
        }
        o.require(inputs >= 100, "fewer than 100 inputs");
        return o;
    });

    criterion("algebroid duality and linearization at N = 5", [] {
        Outcome o;
        Rng rng(1009);
        const int order = 5;
        int round_trips = 0, linearizations = 0;
        for (int trial = 0; trial < 50; ++trial) {
            const LieAlgebra g = trial % 2 ? testing::sl2() : testing::so3();
            const AlgebroidJet a = AlgebroidJet::from_action(ActionJet::coadjoint(g, order + 1));
            const CoordChange phi = testing::random_graded_change(rng, 3, 3, order + 1);
            const PoissonJet dual = pushforward(algebroid_to_poisson(a), phi);
            o.require(static_cast<bool>(fiberwise_linearity_check(dual, 3)), "moved dual not fiberwise linear");
            const AlgebroidJet b = poisson_to_algebroid(dual, 3);
            o.require(algebroid_to_poisson(b) == dual, "duality round-trip");
            ++round_trips;
            if (trial >= 25) continue;
            const auto res = linearize_algebroid(b, order);
            o.require(res.succeeded(), "unexpected obstruction");
            if (!res.succeeded()) continue;
            const auto& lin = std::get<AlgebroidLinearization>(res.outcome);
            o.require(preserves_fiber_grading(lin.change, 3), "change breaks the grading");
            o.require(pushforward(dual, lin.change) == algebroid_to_poisson(lin.normal_form.to_jet(order)),
                      "pushforward != normal form");
            o.require(lin.normal_form.is_valid(), "normal form invalid");
            ++linearizations;
        }
        o.require(round_trips >= 50 && linearizations >= 25, "too few cases");
        return o;
    });

    criterion("Hermitian metric on linear monomials", [] {
        Outcome o;
        for (std::size_t n = 2; n <= 4; ++n) {
            for (const Scalar& r : {Scalar(1), Scalar(1, 2)}) {
                const Jet x = Jet::variable(n, 3, 0);
                const double expect = r.get_d() * r.get_d() / static_cast<double>(n + 1);
                const double got = hermitian_norm(x, r) * hermitian_norm(x, r);
                o.require(std::abs(got - expect) <= 1e-12 * expect, "norm of x_1 off");
                o.require(hermitian_norm_squared(x, r) == r * r / Scalar(static_cast<long>(n + 1)), "exact norm off");
            }
        }
        return o;
    });

    criterion("classification values", [] {
        Outcome o;
        Matrix sl2(3, 3), so3(3, 3);
        sl2(0, 0) = 2;
        sl2(1, 1) = 2;
        sl2(2, 2) = -2;
        for (std::size_t i = 0; i < 3; ++i) so3(i, i) = -2;
        o.require(killing_form(testing::sl2()) == sl2, "sl(2) Killing form");
        o.require(killing_form(testing::so3()) == so3, "so(3) Killing form");
        o.require(is_semisimple(testing::so3()) && is_compact_type(testing::so3()), "so(3) flags");
        o.require(is_semisimple(testing::sl2()) && !is_compact_type(testing::sl2()), "sl(2) flags");
        o.require(!is_semisimple(LieAlgebra::abelian(2)) && !is_compact_type(LieAlgebra::abelian(2)), "abelian flags");
        return o;
    });

    criterion("flat perturbation truncations are linear with identity change", [] {
        Outcome o;
        const Report r = run_corpus_entry(corpus_entry("weinstein-sl2-flat"));
        o.require(r.exit_code == kExitSuccess, "exit code");
        const auto& scan = r.body["truncation_scan"];
        o.require(scan.size() == 10, "scan does not cover N = 1..10");
        for (const auto& row : scan) {
            o.require(row["truncation_linear"] == true && row["identity_change"] == true,
                      "N = " + row["max_degree"].dump());
        }
        return o;
    });

    return failures == 0 ? 0 : 1;
}
