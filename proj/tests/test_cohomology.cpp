#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <memory>

#include "support.hpp"

using namespace plin;
using testing::Rng;

namespace {

std::shared_ptr<const GModule> shared(GModule m) { return std::make_shared<const GModule>(std::move(m)); }

std::vector<std::shared_ptr<const GModule>> sample_modules()
{
    std::vector<std::shared_ptr<const GModule>> out;
    out.push_back(shared(adjoint_module(testing::so3())));
    out.push_back(shared(adjoint_module(testing::gl2())));
    out.push_back(testing::polynomial_module(testing::sl2(), 2));
    out.push_back(testing::polynomial_module(testing::affine2(), 2));
    out.push_back(shared(trivial_module(LieAlgebra::abelian(2), 2)));
    return out;
}

Vector slice(const Cochain& w, std::size_t subset)
{
    Vector v(w.module().dim());
    for (std::size_t b = 0; b < v.size(); ++b) v[b] = w.at(subset, b);
    return v;
}

}  // namespace

TEST_CASE("module constructor checks the representation property")
{
    std::vector<Matrix> id(3, Matrix::identity(3));
    CHECK_THROWS_AS(GModule(testing::so3(), id), std::invalid_argument);
    CHECK_NOTHROW(GModule(testing::so3(), testing::coadjoint_rep(testing::so3())));
}

TEST_CASE("polynomial module dimensions and graded-lex basis")
{
    const auto m = testing::polynomial_module(testing::so3(), 2);
    CHECK(m->dim() == 6);
    REQUIRE(m->polynomial_basis().size() == 6);
    CHECK(m->polynomial_basis()[0].monomial == Monomial{2, 0, 0});
    CHECK(m->polynomial_basis()[5].monomial == Monomial{0, 0, 2});
    CHECK(testing::polynomial_module(testing::so3(), 4)->dim() == 15);
}

TEST_CASE("differential matches the textbook formula and squares to zero")
{
    Rng rng(601);
    for (const auto& m : sample_modules()) {
        const std::size_t n = m->algebra().dim();
        for (int r = 0; r + 1 <= static_cast<int>(n); ++r) {
            for (int trial = 0; trial < 4; ++trial) {
                const Cochain w = testing::random_cochain(rng, m, r);
                const Cochain dw = ce_differential(w);
                const auto subsets = index_subsets(n, static_cast<std::size_t>(r + 1));
                for (std::size_t s = 0; s < subsets.size(); ++s) {
                    CHECK(slice(dw, s) == testing::oracle_differential(w, subsets[s]));
                }
                CHECK(differential_matrix(*m, r) * w.coefficients() == dw.coefficients());
                CHECK(ce_differential(dw).is_zero());
                CHECK(is_cocycle(dw));
            }
        }
    }
}

TEST_CASE("adjoint module spot value")
{
    // w = d(e1), so w(X_j) = [X_j, X_1]; [Y, X] = -Z in so(3).
    const auto m = shared(adjoint_module(testing::so3()));
    Cochain v(m, 0, Vector{1, 0, 0});
    const Cochain w = ce_differential(v);
    CHECK(slice(w, 1) == Vector{0, 0, -1});
    CHECK(slice(w, 0) == Vector{0, 0, 0});
    CHECK(slice(w, 2) == Vector{0, 1, 0});
}

TEST_CASE("so(3) quadratic invariants are spanned by the Casimir")
{
    const auto m = testing::polynomial_module(testing::so3(), 2);
    CHECK(cohomology_dimension(*m, 0) == 1);
    const auto inv = kernel(differential_matrix(*m, 0));
    REQUIRE(inv.size() == 1);
    // x^2, xy, xz, y^2, yz, z^2
    CHECK(in_span(inv, Vector{1, 0, 0, 1, 0, 1}));
    CHECK(cohomology_dimension(*testing::polynomial_module(testing::sl2(), 2), 0) == 1);
}

TEST_CASE("cohomology dimensions")
{
    CHECK(cohomology_dimension(trivial_module(LieAlgebra::abelian(2), 1), 1) == 2);
    CHECK(cohomology_dimension(trivial_module(LieAlgebra::abelian(2), 1), 2) == 1);
    for (int d = 1; d <= 3; ++d) {
        for (const auto& g : {testing::so3(), testing::sl2()}) {
            const auto m = testing::polynomial_module(g, d);
            CHECK(cohomology_dimension(*m, 1) == 0);
            CHECK(cohomology_dimension(*m, 2) == 0);
        }
    }
    CHECK(cohomology_dimension(adjoint_module(testing::so3()), 1) == 0);
    CHECK(cohomology_dimension(trivial_module(testing::so3(), 1), 3) == 1);
}

TEST_CASE("solve_coboundary recovers a primitive of an exact cochain")
{
    Rng rng(602);
    for (const auto& m : sample_modules()) {
        for (int r = 0; r + 1 <= static_cast<int>(m->algebra().dim()); ++r) {
            for (int trial = 0; trial < 3; ++trial) {
                const Cochain target = ce_differential(testing::random_cochain(rng, m, r));
                const auto sol = solve_coboundary(target);
                REQUIRE(std::holds_alternative<Cochain>(sol));
                const Cochain& sigma = std::get<Cochain>(sol);
                CHECK(sigma.degree() == r);
                CHECK(ce_differential(sigma) == target);
            }
        }
    }
}

TEST_CASE("non-exact cocycles yield verified obstruction certificates")
{
    const auto m = shared(trivial_module(LieAlgebra::abelian(2), 1));
    Cochain r(m, 2, Vector{Scalar(3, 2)});
    const auto sol = solve_coboundary(r);
    REQUIRE(std::holds_alternative<ObstructionClass>(sol));
    const ObstructionClass& ob = std::get<ObstructionClass>(sol);
    CHECK(ob.cohomology_dim == 1);
    CHECK(ob.verify());
    CHECK_FALSE(is_zero(dot(ob.functional, r.coefficients())));

    ObstructionClass forged = ob;
    forged.remainder = Cochain(m, 2);
    CHECK_FALSE(forged.verify());

    // Abelian trivial module: every 1-cochain is closed and none is exact.
    const auto m1 = shared(trivial_module(LieAlgebra::abelian(2), 1));
    const Cochain shifted(m1, 1, Vector{1, 0});
    const auto sol1 = solve_coboundary(shifted);
    REQUIRE(std::holds_alternative<ObstructionClass>(sol1));
    CHECK(std::get<ObstructionClass>(sol1).verify());
}

TEST_CASE("non-closed input is rejected")
{
    const auto m = shared(adjoint_module(testing::so3()));
    const Cochain w(m, 1, Vector{1, 0, 0, 0, 0, 0, 0, 0, 0});
    CHECK_FALSE(is_cocycle(w));
    CHECK_THROWS_AS(solve_coboundary(w), InputNotCocycle);
}

TEST_CASE("homotopy bound estimate")
{
    const GModule zero = trivial_module(LieAlgebra::abelian(2), 1);
    const std::vector<double> one{1.0};
    CHECK(homotopy_bound_estimate(zero, 1, one) == 0.0);

    const auto m = testing::polynomial_module(testing::so3(), 2);
    const std::vector<double> w = hermitian_weights(*m, 1.0);
    const double a = homotopy_bound_estimate(*m, 2, w);
    CHECK(a > 0.0);
    CHECK(homotopy_bound_estimate(*m, 2, w) == a);
    std::vector<double> scaled = w;
    for (auto& x : scaled) x *= 7.0;
    CHECK(homotopy_bound_estimate(*m, 2, scaled) == doctest::Approx(a).epsilon(1e-12));
}

TEST_CASE("hermitian weights")
{
    for (int n = 2; n <= 4; ++n) {
        for (double r : {1.0, 0.5}) {
            const auto m = testing::polynomial_module(LieAlgebra::abelian(static_cast<std::size_t>(n)), 1);
            const auto w = hermitian_weights(*m, r);
            for (double x : w) CHECK(x == doctest::Approx(r * r / (n + 1)).epsilon(1e-12));
        }
    }
    const auto q = hermitian_weights(*testing::polynomial_module(testing::so3(), 2), 1.0);
    CHECK(q[0] == doctest::Approx(0.1));
    CHECK(q[1] == doctest::Approx(0.05));
    CHECK_THROWS_AS(hermitian_weights(adjoint_module(testing::so3()), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(hermitian_weights(*testing::polynomial_module(testing::so3(), 1), 0.0), std::invalid_argument);
}

TEST_CASE("twisted tuple modules")
{
    const LieAlgebra g = testing::so3();
    const ActionJet rho = ActionJet::coadjoint(g, 3);
    std::vector<Matrix> twist;
    std::vector<Matrix> rep_t;
    for (std::size_t i = 0; i < 3; ++i) {
        twist.push_back(rho.linear_matrix(i));
        rep_t.push_back(twist.back().transposed());
    }
    const auto quad = monomials_of_degree(3, 2);
    const GModule m = twisted_polynomial_module(g, 3, rep_t, twist, {quad, quad, quad});
    CHECK(m.dim() == 18);
    CHECK(cohomology_dimension(m, 1) == 0);
    CHECK_THROWS_AS(twisted_polynomial_module(g, 3, rep_t, twist, {{Monomial{2, 0, 0}}, {}, {}}),
                    std::invalid_argument);
}
