#pragma once

// Fixtures, fixed-seed generators and independent oracles shared by the test
// binaries. Oracles here work directly on structure constants and jets and do
// not call the library routine they check.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "plin/algebroid.hpp"
#include "plin/cohomology.hpp"
#include "plin/liealg.hpp"
#include "plin/normalform.hpp"
#include "plin/poisson.hpp"
#include "plin/polynomial.hpp"

namespace testing {

using plin::Jet;
using plin::LieAlgebra;
using plin::Matrix;
using plin::Monomial;
using plin::Scalar;
using plin::Vector;

using Rng = std::mt19937_64;

inline Vector constants_from(std::size_t n, const std::vector<std::tuple<int, int, int, int>>& entries)
{
    Vector c(n * n * n);
    for (const auto& [i, j, k, v] : entries) {
        c[(i * n + j) * n + k] = v;
        c[(j * n + i) * n + k] = -v;
    }
    return c;
}

// [X, Y] = Z, [Y, Z] = X, [Z, X] = Y.
inline LieAlgebra so3()
{
    return LieAlgebra(3, constants_from(3, {{0, 1, 2, 1}, {1, 2, 0, 1}, {2, 0, 1, 1}}));
}

// [X, Y] = -Z, [Y, Z] = X, [Z, X] = Y.
inline LieAlgebra sl2()
{
    return LieAlgebra(3, constants_from(3, {{0, 1, 2, -1}, {1, 2, 0, 1}, {2, 0, 1, 1}}));
}

// Basis E_ab at index 2a + b; [E_ab, E_cd] = delta_bc E_ad - delta_da E_cb.
inline LieAlgebra gl2()
{
    Vector c(64);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const int a = i / 2, b = i % 2, cc = j / 2, d = j % 2;
            if (b == cc) c[(i * 4 + j) * 4 + 2 * a + d] += 1;
            if (d == a) c[(i * 4 + j) * 4 + 2 * cc + b] -= 1;
        }
    }
    return LieAlgebra(4, c);
}

// [X, Y] = Y.
inline LieAlgebra affine2() { return LieAlgebra(2, constants_from(2, {{0, 1, 1, 1}})); }

inline Scalar random_coeff(Rng& rng)
{
    std::uniform_int_distribution<int> num(-2, 2);
    std::uniform_int_distribution<int> den(1, 3);
    Scalar c(num(rng), den(rng));
    c.canonicalize();
    return c;
}

inline Scalar random_nonzero_coeff(Rng& rng)
{
    Scalar c;
    do c = random_coeff(rng);
    while (plin::is_zero(c));
    return c;
}

// Each monomial of degree lo..hi present with probability `density`.
inline Jet random_jet(Rng& rng, std::size_t n, int order, int lo, int hi, double density = 0.5)
{
    std::bernoulli_distribution keep(density);
    Jet f(n, order);
    for (int d = lo; d <= hi; ++d) {
        for (const auto& m : plin::monomials_of_degree(n, d)) {
            if (keep(rng)) f.add_term(m, random_coeff(rng));
        }
    }
    return f;
}

// x_i + (random terms of degree 2..max_degree).
inline plin::CoordChange random_near_identity(Rng& rng, std::size_t n, int order, int max_degree = 4,
                                              double density = 0.3)
{
    std::vector<Jet> comps;
    for (std::size_t i = 0; i < n; ++i) {
        comps.push_back(Jet::variable(n, order, i) + random_jet(rng, n, order, 2, max_degree, density));
    }
    return plin::CoordChange(std::move(comps));
}

// Base components depend on the base only; fiber components are linear in the
// fiber with polynomial coefficients in the base.
inline plin::CoordChange random_graded_change(Rng& rng, std::size_t n, std::size_t r, int order, int max_degree = 3,
                                              double density = 0.3)
{
    const std::size_t total = n + r;
    std::vector<std::size_t> base_map(n);
    for (std::size_t v = 0; v < n; ++v) base_map[v] = v;
    std::vector<Jet> comps;
    for (std::size_t i = 0; i < n; ++i) {
        comps.push_back(Jet::variable(total, order, i) +
                        random_jet(rng, n, order, 2, max_degree, density).embedded(total, base_map));
    }
    for (std::size_t a = 0; a < r; ++a) {
        Jet f = Jet::variable(total, order, n + a);
        for (std::size_t b = 0; b < r; ++b) {
            const Jet coef = random_jet(rng, n, order, 1, max_degree - 1, density).embedded(total, base_map);
            f += coef * Jet::variable(total, order, n + b);
        }
        comps.push_back(std::move(f));
    }
    return plin::CoordChange(std::move(comps));
}

// ad matrices straight from the constants: ad_i(k, j) = c(i, j, k).
inline Matrix oracle_ad(const LieAlgebra& g, std::size_t i)
{
    const std::size_t n = g.dim();
    Matrix m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) m(k, j) = g.constants()[(i * n + j) * n + k];
    }
    return m;
}

// trace(ad_i ad_j) by explicit matrix products.
inline Matrix oracle_killing(const LieAlgebra& g)
{
    const std::size_t n = g.dim();
    Matrix k(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Matrix prod = oracle_ad(g, i) * oracle_ad(g, j);
            Scalar t = 0;
            for (std::size_t a = 0; a < n; ++a) t += prod(a, a);
            k(i, j) = t;
        }
    }
    return k;
}

// Sum over i, j of P(i, j) d_i f d_j g, expanded term by term.
inline Jet oracle_bracket(const Jet& f, const Jet& g, const plin::PoissonJet& p)
{
    const std::size_t n = p.nvars();
    const int order = std::min({f.order(), g.order(), p.order()});
    Jet out(n, order);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (const auto& [m1, a] : p(i, j).terms()) {
                for (const auto& [m2, b] : f.terms()) {
                    if (m2[i] == 0) continue;
                    for (const auto& [m3, c] : g.terms()) {
                        if (m3[j] == 0) continue;
                        const Monomial m = m1 * m2.lowered(i) * m3.lowered(j);
                        if (m.degree() <= order) out.add_term(m, a * b * c * m2[i] * m3[j]);
                    }
                }
            }
        }
    }
    return out;
}

// Value of an alternating cochain on an arbitrary (possibly unsorted) index
// tuple: zero on repeats, signed lookup otherwise.
inline Vector cochain_value(const plin::Cochain& w, std::vector<std::size_t> idx)
{
    const std::size_t dim = w.module().dim();
    Vector out(dim);
    int sign = 1;
    for (std::size_t a = 0; a < idx.size(); ++a) {
        for (std::size_t b = a + 1; b < idx.size(); ++b) {
            if (idx[a] == idx[b]) return out;
            if (idx[a] > idx[b]) {
                std::swap(idx[a], idx[b]);
                sign = -sign;
            }
        }
    }
    const auto subsets = plin::index_subsets(w.module().algebra().dim(), idx.size());
    for (std::size_t s = 0; s < subsets.size(); ++s) {
        if (subsets[s] == idx) {
            for (std::size_t b = 0; b < dim; ++b) out[b] = sign * w.at(s, b);
            return out;
        }
    }
    return out;
}

// Textbook differential on a sorted (r+1)-tuple, extending the cochain by
// alternation and expanding brackets [X_i, X_j] = sum_k c(i, j, k) X_k.
inline Vector oracle_differential(const plin::Cochain& w, const std::vector<std::size_t>& x)
{
    const plin::GModule& m = w.module();
    const LieAlgebra& g = m.algebra();
    const std::size_t dim = m.dim();
    Vector out(dim);
    const std::size_t r1 = x.size();
    for (std::size_t i = 0; i < r1; ++i) {
        std::vector<std::size_t> rest;
        for (std::size_t t = 0; t < r1; ++t) {
            if (t != i) rest.push_back(x[t]);
        }
        const Vector v = m.action(x[i]) * cochain_value(w, rest);
        for (std::size_t b = 0; b < dim; ++b) out[b] += (i % 2 == 0 ? 1 : -1) * v[b];
    }
    for (std::size_t i = 0; i < r1; ++i) {
        for (std::size_t j = i + 1; j < r1; ++j) {
            for (std::size_t k = 0; k < g.dim(); ++k) {
                const Scalar& c = g.c(x[i], x[j], k);
                if (plin::is_zero(c)) continue;
                std::vector<std::size_t> args{k};
                for (std::size_t t = 0; t < r1; ++t) {
                    if (t != i && t != j) args.push_back(x[t]);
                }
                const Vector v = cochain_value(w, args);
                const int sign = (i + j) % 2 == 0 ? 1 : -1;
                for (std::size_t b = 0; b < dim; ++b) out[b] += sign * c * v[b];
            }
        }
    }
    return out;
}

inline plin::Cochain random_cochain(Rng& rng, const std::shared_ptr<const plin::GModule>& module, int r)
{
    const std::size_t count = plin::index_subsets(module->algebra().dim(), static_cast<std::size_t>(r)).size();
    Vector c(count * module->dim());
    for (auto& x : c) x = random_coeff(rng);
    return plin::Cochain(module, r, std::move(c));
}

// rep[i](k, a) = c(i, a, k): the coadjoint derivation {x_i, .} on linear forms.
inline std::vector<Matrix> coadjoint_rep(const LieAlgebra& g)
{
    std::vector<Matrix> rep;
    for (std::size_t i = 0; i < g.dim(); ++i) rep.push_back(oracle_ad(g, i));
    return rep;
}

inline std::shared_ptr<const plin::GModule> polynomial_module(const LieAlgebra& g, int degree)
{
    return std::make_shared<const plin::GModule>(
        plin::induced_polynomial_module(g, g.dim(), coadjoint_rep(g), degree));
}

// Symbolic chain rule: d_a phi_i d_b phi_j P(a, b), before composing with
// the inverse change.
inline Jet chain_rule_entry(const plin::PoissonJet& p, const plin::CoordChange& phi, std::size_t i, std::size_t j)
{
    const std::size_t n = p.nvars();
    Jet out(n, p.order());
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            out += phi[i].derivative(a) * phi[j].derivative(b) * p(a, b);
        }
    }
    return out;
}

}  // namespace testing
