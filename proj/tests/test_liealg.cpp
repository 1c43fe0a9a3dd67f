#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"

using namespace plin;
using testing::Rng;

namespace {

Matrix diagonal(std::initializer_list<int> d)
{
    Matrix m(d.size(), d.size());
    std::size_t i = 0;
    for (int v : d) {
        m(i, i) = v;
        ++i;
    }
    return m;
}

// Constants in the basis v_i = sum_a p(a, i) e_a.
LieAlgebra change_basis(const LieAlgebra& g, const Matrix& p)
{
    const std::size_t n = g.dim();
    const Matrix q = *inverse(p);
    Vector c(n * n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Vector e(n);
            for (std::size_t a = 0; a < n; ++a) {
                for (std::size_t b = 0; b < n; ++b) {
                    const Scalar w = p(a, i) * p(b, j);
                    if (is_zero(w)) continue;
                    for (std::size_t k = 0; k < n; ++k) e[k] += w * g.c(a, b, k);
                }
            }
            const Vector coords = q * e;
            for (std::size_t l = 0; l < n; ++l) c[(i * n + j) * n + l] = coords[l];
        }
    }
    return LieAlgebra(n, c);
}

Matrix random_invertible(Rng& rng, std::size_t n)
{
    while (true) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) m(i, j) = testing::random_coeff(rng);
        }
        if (!is_zero(determinant(m))) return m;
    }
}

Vector unit(std::size_t n, std::size_t i)
{
    Vector v(n);
    v[i] = 1;
    return v;
}

bool in_span_of(const std::vector<Vector>& basis, const Vector& v) { return in_span(basis, v); }

}  // namespace

TEST_CASE("constructor rejects constants violating antisymmetry or Jacobi")
{
    Vector bad(27);
    bad[(0 * 3 + 1) * 3 + 2] = 1;
    CHECK_THROWS_AS(LieAlgebra(3, bad), std::invalid_argument);
    // [X, Y] = Y, [Y, Z] = X, [X, Z] = 0 fails Jacobi.
    CHECK_THROWS_AS(LieAlgebra(3, testing::constants_from(3, {{0, 1, 1, 1}, {1, 2, 0, 1}})), std::invalid_argument);
}

TEST_CASE("Killing form values against the trace oracle")
{
    const LieAlgebra sl2 = testing::sl2();
    const LieAlgebra so3 = testing::so3();
    CHECK(testing::oracle_killing(sl2) == diagonal({2, 2, -2}));
    CHECK(killing_form(sl2) == diagonal({2, 2, -2}));
    CHECK(testing::oracle_killing(so3) == diagonal({-2, -2, -2}));
    CHECK(killing_form(so3) == diagonal({-2, -2, -2}));
    CHECK(killing_form(LieAlgebra::abelian(2)) == Matrix(2, 2));
    CHECK(killing_form(testing::gl2()) == testing::oracle_killing(testing::gl2()));
}

TEST_CASE("semisimple and compact-type flags")
{
    CHECK(is_semisimple(testing::so3()));
    CHECK(is_compact_type(testing::so3()));
    CHECK(is_semisimple(testing::sl2()));
    CHECK_FALSE(is_compact_type(testing::sl2()));
    CHECK_FALSE(is_semisimple(LieAlgebra::abelian(2)));
    CHECK_FALSE(is_compact_type(LieAlgebra::abelian(2)));
    CHECK_FALSE(is_semisimple(testing::gl2()));

    const auto s = killing_signature(testing::sl2());
    CHECK(s.positive == 2);
    CHECK(s.negative == 1);
    CHECK(s.zero == 0);
    const auto g = killing_signature(testing::gl2());
    CHECK(g.positive + g.negative == 3);
    CHECK(g.zero == 1);
}

TEST_CASE("Killing form is symmetric and ad-invariant, radical is an ideal, on random bases")
{
    Rng rng(11);
    const std::vector<LieAlgebra> seeds{testing::so3(), testing::sl2(), testing::gl2(), testing::affine2(),
                                        LieAlgebra::abelian(3)};
    for (int trial = 0; trial < 25; ++trial) {
        const LieAlgebra& base = seeds[static_cast<std::size_t>(trial) % seeds.size()];
        const LieAlgebra g = change_basis(base, random_invertible(rng, base.dim()));
        const std::size_t n = g.dim();
        const Matrix k = killing_form(g);
        CHECK(k == k.transposed());
        CHECK(k == testing::oracle_killing(g));
        for (std::size_t x = 0; x < n; ++x) {
            for (std::size_t y = 0; y < n; ++y) {
                for (std::size_t z = 0; z < n; ++z) {
                    Scalar s = 0;
                    for (std::size_t l = 0; l < n; ++l) s += g.c(x, y, l) * k(l, z) + k(y, l) * g.c(x, z, l);
                    CHECK(is_zero(s));
                }
            }
        }
        const auto rad = radical(g);
        CHECK(rad.size() == radical(base).size());
        for (const auto& r : rad) {
            for (std::size_t i = 0; i < n; ++i) CHECK(in_span_of(rad, g.bracket(unit(n, i), r)));
        }
        CHECK(is_semisimple(g) == is_semisimple(base));
        CHECK(is_compact_type(g) == is_compact_type(base));
    }
}

TEST_CASE("radical values")
{
    CHECK(radical(testing::so3()).empty());
    CHECK(radical(LieAlgebra::abelian(3)).size() == 3);
    const auto r = radical(testing::gl2());
    REQUIRE(r.size() == 1);
    CHECK(in_span(r, Vector{1, 0, 0, 1}));
    CHECK(radical(testing::affine2()).size() == 2);
}

TEST_CASE("verify_levi_split")
{
    const LieAlgebra gl2 = testing::gl2();
    const std::vector<Vector> sl2_basis{{1, 0, 0, -1}, {0, 1, 0, 0}, {0, 0, 1, 0}};

    SUBCASE("semisimple algebra with empty radical")
    {
        const LeviSplit s = verify_levi_split(testing::so3(), {unit(3, 0), unit(3, 1), unit(3, 2)}, {});
        CHECK(s.s_basis().size() == 3);
        CHECK(s.r_basis().empty());
    }
    SUBCASE("gl(2) = sl(2) + center")
    {
        const LeviSplit s = verify_levi_split(gl2, sl2_basis, {{1, 0, 0, 1}});
        CHECK(is_semisimple(s.s_algebra()));
    }
    SUBCASE("complement spanned by identity plus a traceless element is not invariant")
    {
        try {
            verify_levi_split(gl2, sl2_basis, {{1, 1, 0, 1}});
            FAIL("expected a LeviError");
        } catch (const LeviError& e) {
            CHECK(e.violation() == LeviViolation::RNotInvariant);
        }
    }
    SUBCASE("overlapping s and r is not a direct sum")
    {
        try {
            verify_levi_split(gl2, sl2_basis, {{0, 1, 0, 0}});
            FAIL("expected a LeviError");
        } catch (const LeviError& e) {
            CHECK(e.violation() == LeviViolation::NotDirectSum);
        }
    }
    SUBCASE("s not closed")
    {
        try {
            verify_levi_split(gl2, {unit(4, 0), unit(4, 1), unit(4, 2)}, {unit(4, 3)});
            FAIL("expected a LeviError");
        } catch (const LeviError& e) {
            CHECK(e.violation() == LeviViolation::SNotSubalgebra);
        }
    }
    SUBCASE("abelian s is not semisimple")
    {
        try {
            verify_levi_split(LieAlgebra::abelian(2), {unit(2, 0)}, {unit(2, 1)});
            FAIL("expected a LeviError");
        } catch (const LeviError& e) {
            CHECK(e.violation() == LeviViolation::SNotSemisimple);
        }
    }
}

TEST_CASE("levi_lift")
{
    const LeviSplit so3 = levi_lift(testing::so3());
    CHECK(so3.s_basis().size() == 3);
    CHECK(so3.r_basis().empty());

    const LeviSplit aff = levi_lift(testing::affine2());
    CHECK(aff.s_basis().empty());
    CHECK(aff.r_basis().size() == 2);

    const LeviSplit gl2 = levi_lift(testing::gl2());
    CHECK(gl2.s_basis().size() == 3);
    REQUIRE(gl2.r_basis().size() == 1);
    CHECK(in_span(gl2.r_basis(), Vector{1, 0, 0, 1}));
    CHECK(killing_signature(gl2.s_algebra()).positive == 2);
}

TEST_CASE("levi_lift certifies on random bases, including a non-reductive algebra")
{
    Rng rng(12);
    // gl(2) acting on R^2: sl(2) + (center + R^2); the radical is not central.
    Vector c(6 * 6 * 6);
    const LieAlgebra gl2 = testing::gl2();
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            for (std::size_t k = 0; k < 4; ++k) c[(i * 6 + j) * 6 + k] = gl2.c(i, j, k);
        }
        // E_ab . v_d = delta_bd v_a
        const std::size_t a = i / 2, b = i % 2;
        c[(i * 6 + 4 + b) * 6 + 4 + a] += 1;
        c[((4 + b) * 6 + i) * 6 + 4 + a] -= 1;
    }
    const LieAlgebra semidirect(6, c);
    const std::vector<LieAlgebra> seeds{testing::gl2(), semidirect, testing::so3(), testing::affine2()};
    for (int trial = 0; trial < 16; ++trial) {
        const LieAlgebra& base = seeds[static_cast<std::size_t>(trial) % seeds.size()];
        const LieAlgebra g = change_basis(base, random_invertible(rng, base.dim()));
        const LeviSplit s = levi_lift(g);
        CHECK_NOTHROW(verify_levi_split(g, s.s_basis(), s.r_basis()));
        CHECK(s.r_basis().size() == radical(g).size());
    }
}

TEST_CASE("isotropy extraction")
{
    const int order = 6;
    const PoissonJet so3 = PoissonJet::linear(3, order, testing::so3().constants());
    CHECK(isotropy_from_linear_part(so3) == testing::so3());

    Rng rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const PoissonJet q = pushforward(so3, testing::random_near_identity(rng, 3, order, 4));
        CHECK(isotropy_from_linear_part(q) == testing::so3());
        CHECK(q.linear_part() == so3.linear_part());
    }
    CHECK(isotropy_from_linear_part(linear_poisson(testing::sl2(), order)) == testing::sl2());
}

TEST_CASE("restrict_to and derived algebra")
{
    const LieAlgebra gl2 = testing::gl2();
    const LieAlgebra s = restrict_to(gl2, {{1, 0, 0, -1}, {0, 1, 0, 0}, {0, 0, 1, 0}});
    CHECK(is_semisimple(s));
    CHECK(derived_algebra(gl2).size() == 3);
    CHECK_THROWS_AS(restrict_to(gl2, {unit(4, 1), unit(4, 2)}), std::invalid_argument);
}
