#include "plin/liealg.hpp"

#include <stdexcept>
#include <utility>

namespace plin {

namespace {

Vector unit_vector(std::size_t n, std::size_t i)
{
    Vector v(n);
    v[i] = 1;
    return v;
}

// Reduced row-echelon basis of span(vectors), each of length n.
std::vector<Vector> span_basis(const std::vector<Vector>& vectors, std::size_t n)
{
    if (vectors.empty()) return {};
    const RowEchelon e = row_reduce(Matrix::from_rows(vectors, n));
    std::vector<Vector> basis;
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) basis.push_back(e.reduced.row(r));
    return basis;
}

std::vector<Vector> bracket_span(const LieAlgebra& g, const std::vector<Vector>& a, const std::vector<Vector>& b)
{
    std::vector<Vector> out;
    for (const auto& x : a) {
        for (const auto& y : b) {
            Vector z = g.bracket(x, y);
            if (!is_zero(z)) out.push_back(std::move(z));
        }
    }
    return span_basis(out, g.dim());
}

// Extends `basis` by standard unit vectors to a basis of the ambient space and
// returns only the added vectors.
std::vector<Vector> complement(const std::vector<Vector>& basis, std::size_t n)
{
    std::vector<Vector> current = basis;
    std::vector<Vector> added;
    std::size_t r = current.empty() ? 0 : rank(Matrix::from_rows(current, n));
    for (std::size_t i = 0; i < n && r < n; ++i) {
        current.push_back(unit_vector(n, i));
        const std::size_t next = rank(Matrix::from_rows(current, n));
        if (next > r) {
            added.push_back(unit_vector(n, i));
            r = next;
        } else {
            current.pop_back();
        }
    }
    return added;
}

std::vector<Vector> concat(std::vector<Vector> a, const std::vector<Vector>& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

}  // namespace

LieAlgebra::LieAlgebra(std::size_t dim, Vector constants) : dim_(dim), constants_(std::move(constants))
{
    if (constants_.size() != dim * dim * dim) {
        throw std::invalid_argument("structure constants must have dim^3 entries");
    }
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            for (std::size_t k = 0; k < dim; ++k) {
                if (c(i, j, k) != -c(j, i, k)) {
                    throw std::invalid_argument("structure constants are not antisymmetric");
                }
            }
        }
    }
    // sum_l c(i,j,l) c(l,k,m) + cyclic = 0
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i + 1; j < dim; ++j) {
            for (std::size_t k = j + 1; k < dim; ++k) {
                for (std::size_t m = 0; m < dim; ++m) {
                    Scalar s = 0;
                    for (std::size_t l = 0; l < dim; ++l) {
                        s += c(i, j, l) * c(l, k, m) + c(j, k, l) * c(l, i, m) + c(k, i, l) * c(l, j, m);
                    }
                    if (sgn(s) != 0) throw std::invalid_argument("structure constants violate the Jacobi identity");
                }
            }
        }
    }
}

LieAlgebra LieAlgebra::abelian(std::size_t dim) { return LieAlgebra(dim, Vector(dim * dim * dim)); }

Vector LieAlgebra::bracket(const Vector& a, const Vector& b) const
{
    if (a.size() != dim_ || b.size() != dim_) throw std::invalid_argument("bracket: vector length mismatch");
    Vector out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        if (sgn(a[i]) == 0) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            if (i == j || sgn(b[j]) == 0) continue;
            const Scalar w = a[i] * b[j];
            for (std::size_t k = 0; k < dim_; ++k) {
                if (sgn(c(i, j, k)) != 0) out[k] += w * c(i, j, k);
            }
        }
    }
    return out;
}

Matrix LieAlgebra::ad(std::size_t i) const
{
    Matrix m(dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
        for (std::size_t k = 0; k < dim_; ++k) m(k, j) = c(i, j, k);
    }
    return m;
}

bool LieAlgebra::is_abelian() const
{
    for (const auto& x : constants_) {
        if (sgn(x) != 0) return false;
    }
    return true;
}

LieAlgebra isotropy_from_linear_part(const PoissonJet& p)
{
    const std::size_t n = p.nvars();
    Vector constants(n * n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                Monomial m(n);
                m.set(k, 1);
                constants[(i * n + j) * n + k] = p(i, j).coeff(m);
            }
        }
    }
    return LieAlgebra(n, std::move(constants));
}

PoissonJet linear_poisson(const LieAlgebra& g, int order)
{
    return PoissonJet::linear(g.dim(), order, g.constants());
}

Matrix killing_form(const LieAlgebra& g)
{
    const std::size_t n = g.dim();
    Matrix k(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            Scalar s = 0;
            for (std::size_t a = 0; a < n; ++a) {
                for (std::size_t b = 0; b < n; ++b) {
                    if (sgn(g.c(i, b, a)) != 0 && sgn(g.c(j, a, b)) != 0) s += g.c(i, b, a) * g.c(j, a, b);
                }
            }
            k(i, j) = s;
            k(j, i) = s;
        }
    }
    return k;
}

bool is_semisimple(const LieAlgebra& g) { return sgn(determinant(killing_form(g))) != 0; }

bool is_compact_type(const LieAlgebra& g)
{
    const std::size_t n = g.dim();
    if (n == 0) return false;
    const Matrix k = killing_form(g);
    for (std::size_t m = 1; m <= n; ++m) {
        Matrix minor(m, m);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) minor(i, j) = -k(i, j);
        }
        if (sgn(determinant(minor)) <= 0) return false;
    }
    return true;
}

KillingSignature killing_signature(const LieAlgebra& g)
{
    // Congruence diagonalization over Q.
    Matrix a = killing_form(g);
    const std::size_t n = a.rows();
    KillingSignature sig;
    std::size_t done = 0;
    for (std::size_t p = 0; p < n; ++p) {
        std::size_t pivot = n;
        for (std::size_t i = p; i < n; ++i) {
            if (sgn(a(i, i)) != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot == n) {
            // All remaining diagonal entries vanish; an off-diagonal entry
            // a(i, j) lets row/column j be added to i to create a pivot.
            bool found = false;
            for (std::size_t i = p; i < n && !found; ++i) {
                for (std::size_t j = i + 1; j < n && !found; ++j) {
                    if (sgn(a(i, j)) == 0) continue;
                    for (std::size_t k = 0; k < n; ++k) a(i, k) += a(j, k);
                    for (std::size_t k = 0; k < n; ++k) a(k, i) += a(k, j);
                    pivot = i;
                    found = true;
                }
            }
            if (!found) break;
        }
        if (pivot != p) {
            for (std::size_t k = 0; k < n; ++k) a(p, k).swap(a(pivot, k));
            for (std::size_t k = 0; k < n; ++k) a(k, p).swap(a(k, pivot));
        }
        const Scalar d = a(p, p);
        for (std::size_t i = p + 1; i < n; ++i) {
            if (sgn(a(i, p)) == 0) continue;
            const Scalar f = a(i, p) / d;
            for (std::size_t k = p; k < n; ++k) a(i, k) -= f * a(p, k);
            for (std::size_t k = p; k < n; ++k) a(k, i) -= f * a(k, p);
        }
        if (sgn(d) > 0) ++sig.positive;
        else ++sig.negative;
        ++done;
    }
    sig.zero = n - done;
    return sig;
}

std::vector<Vector> derived_algebra(const LieAlgebra& g)
{
    std::vector<Vector> basis;
    for (std::size_t i = 0; i < g.dim(); ++i) basis.push_back(unit_vector(g.dim(), i));
    return bracket_span(g, basis, basis);
}

std::vector<Vector> radical(const LieAlgebra& g)
{
    const std::size_t n = g.dim();
    const std::vector<Vector> derived = derived_algebra(g);
    if (derived.empty()) {
        std::vector<Vector> all;
        for (std::size_t i = 0; i < n; ++i) all.push_back(unit_vector(n, i));
        return all;
    }
    const Matrix k = killing_form(g);
    std::vector<Vector> rows;
    for (const auto& y : derived) rows.push_back(k * y);
    return kernel(Matrix::from_rows(rows, n));
}

LieAlgebra restrict_to(const LieAlgebra& g, const std::vector<Vector>& basis)
{
    const std::size_t m = basis.size();
    Vector constants(m * m * m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const auto coords = coordinates_in(basis, g.bracket(basis[i], basis[j]));
            if (!coords) throw std::invalid_argument("subspace is not closed under the bracket");
            for (std::size_t k = 0; k < m; ++k) constants[(i * m + j) * m + k] = (*coords)[k];
        }
    }
    return LieAlgebra(m, std::move(constants));
}

std::string to_string(LeviViolation v)
{
    switch (v) {
        case LeviViolation::NotDirectSum: return "NotDirectSum";
        case LeviViolation::SNotSubalgebra: return "SNotSubalgebra";
        case LeviViolation::SNotSemisimple: return "SNotSemisimple";
        case LeviViolation::RNotInvariant: return "RNotInvariant";
    }
    return "unknown";
}

LeviSplit verify_levi_split(const LieAlgebra& g, std::vector<Vector> s, std::vector<Vector> r)
{
    const std::size_t n = g.dim();
    for (const auto& v : concat(s, r)) {
        if (v.size() != n) throw std::invalid_argument("Levi split vectors must have length dim");
    }
    const std::vector<Vector> all = concat(s, r);
    if (all.size() != n || (n > 0 && rank(Matrix::from_rows(all, n)) != n)) {
        throw LeviError(LeviViolation::NotDirectSum, "s and r do not form a direct sum decomposition");
    }
    LieAlgebra s_alg;
    try {
        s_alg = restrict_to(g, s);
    } catch (const std::invalid_argument&) {
        throw LeviError(LeviViolation::SNotSubalgebra, "s is not closed under the bracket");
    }
    if (!is_semisimple(s_alg)) {
        throw LeviError(LeviViolation::SNotSemisimple, "s has a degenerate Killing form");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& y : r) {
            if (!in_span(r, g.bracket(unit_vector(n, i), y))) {
                throw LeviError(LeviViolation::RNotInvariant, "[g, r] is not contained in r");
            }
        }
    }
    LeviSplit split;
    split.parent_ = g;
    split.s_ = std::move(s);
    split.r_ = std::move(r);
    split.s_algebra_ = std::move(s_alg);
    return split;
}

LeviSplit levi_lift(const LieAlgebra& g)
{
    const std::size_t n = g.dim();
    const std::vector<Vector> rad = radical(g);
    std::vector<Vector> s = complement(rad, n);
    const std::size_t p = s.size();

    std::vector<std::vector<Vector>> series{span_basis(rad, n)};
    while (!series.back().empty()) series.push_back(bracket_span(g, series.back(), series.back()));

    // [s_i, s_j] = sum_k c(i,j,k) s_k mod r; fixed by the initial complement.
    const std::vector<Vector> frame = concat(s, series.front());
    std::vector<Vector> c(p * p);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            const Vector coords = *coordinates_in(frame, g.bracket(s[i], s[j]));
            c[i * p + j] = Vector(coords.begin(), coords.begin() + static_cast<std::ptrdiff_t>(p));
        }
    }

    // Layer a = r^(k): the defects of s lie in a, and are pushed into [a, a] by
    // s_i <- s_i + eta_i with eta_i in a complement q of [a, a] in a.
    for (std::size_t layer = 0; layer + 1 < series.size(); ++layer) {
        const std::vector<Vector>& a = series[layer];
        const std::vector<Vector>& next = series[layer + 1];
        std::vector<Vector> q;
        {
            std::vector<Vector> current = next;
            for (const auto& v : a) {
                current.push_back(v);
                if (rank(Matrix::from_rows(current, n)) == current.size()) q.push_back(v);
                else current.pop_back();
            }
        }
        const std::size_t m = q.size();
        const std::vector<Vector> adapted = concat(q, next);
        auto q_coords = [&](const Vector& v) {
            const auto coords = coordinates_in(adapted, v);
            if (!coords) throw std::logic_error("levi_lift: defect left the current layer");
            return Vector(coords->begin(), coords->begin() + static_cast<std::ptrdiff_t>(m));
        };

        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < p; ++i) {
            for (std::size_t j = i + 1; j < p; ++j) pairs.emplace_back(i, j);
        }
        Matrix system(pairs.size() * m, p * m);
        Vector rhs(pairs.size() * m);
        for (std::size_t e = 0; e < pairs.size(); ++e) {
            const auto [i, j] = pairs[e];
            Vector rho = g.bracket(s[i], s[j]);
            for (std::size_t k = 0; k < p; ++k) {
                for (std::size_t t = 0; t < n; ++t) rho[t] -= c[i * p + j][k] * s[k][t];
            }
            const Vector rq = q_coords(rho);
            for (std::size_t t = 0; t < m; ++t) rhs[e * m + t] = -rq[t];
            for (std::size_t u = 0; u < m; ++u) {
                // eta_j = q_u contributes [s_i, q_u]; eta_i = q_u contributes -[s_j, q_u].
                const Vector from_j = q_coords(g.bracket(s[i], q[u]));
                const Vector from_i = q_coords(g.bracket(s[j], q[u]));
                for (std::size_t t = 0; t < m; ++t) {
                    system(e * m + t, j * m + u) += from_j[t];
                    system(e * m + t, i * m + u) -= from_i[t];
                    for (std::size_t k = 0; k < p; ++k) {
                        if (sgn(c[i * p + j][k]) != 0 && t == u) system(e * m + t, k * m + u) -= c[i * p + j][k];
                    }
                }
            }
        }
        const auto eta = solve(system, rhs);
        if (!eta) throw std::logic_error("levi_lift: second cohomology obstruction on a semisimple quotient");
        for (std::size_t i = 0; i < p; ++i) {
            for (std::size_t u = 0; u < m; ++u) {
                const Scalar& t = (*eta)[i * m + u];
                if (sgn(t) == 0) continue;
                for (std::size_t x = 0; x < n; ++x) s[i][x] += t * q[u][x];
            }
        }
    }
    return verify_levi_split(g, std::move(s), rad);
}

}  // namespace plin
