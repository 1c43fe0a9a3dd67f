#include "plin/poisson.hpp"

#include <algorithm>
#include <stdexcept>

namespace plin {

CoordChange::CoordChange(std::vector<Jet> components) : components_(std::move(components))
{
    const std::size_t m = components_.size();
    if (m == 0) return;
    order_ = components_.front().order();
    for (const auto& c : components_) {
        if (c.nvars() != m) throw std::invalid_argument("coordinate change: component variable count must equal dimension");
        if (c.order() != order_) throw std::invalid_argument("coordinate change: components must share truncation order");
        if (!is_zero(c.constant_term())) throw std::invalid_argument("coordinate change must fix the origin");
    }
    if (order_ < 1) throw std::invalid_argument("coordinate change needs truncation order >= 1");
    if (is_zero(determinant(linear_part()))) {
        throw std::invalid_argument("coordinate change has a singular linear part");
    }
}

CoordChange CoordChange::identity(std::size_t nvars, int order)
{
    std::vector<Jet> comps;
    for (std::size_t i = 0; i < nvars; ++i) comps.push_back(Jet::variable(nvars, order, i));
    return CoordChange(std::move(comps));
}

CoordChange CoordChange::linear(const Matrix& rows, int order)
{
    const std::size_t n = rows.rows();
    if (rows.cols() != n) throw std::invalid_argument("linear change needs a square matrix");
    std::vector<Jet> comps;
    for (std::size_t i = 0; i < n; ++i) {
        Jet c(n, order);
        for (std::size_t j = 0; j < n; ++j) c.add_term(Monomial::unit(n, j), rows(i, j));
        comps.push_back(std::move(c));
    }
    return CoordChange(std::move(comps));
}

Matrix CoordChange::linear_part() const
{
    const std::size_t m = nvars();
    Matrix l(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) l(i, j) = components_[i].coeff(Monomial::unit(m, j));
    }
    return l;
}

bool CoordChange::is_identity() const
{
    for (std::size_t i = 0; i < nvars(); ++i) {
        if (!(components_[i] == Jet::variable(nvars(), order_, i))) return false;
    }
    return true;
}

CoordChange compose_change(const CoordChange& first, const CoordChange& second)
{
    if (first.nvars() != second.nvars() || first.order() != second.order()) {
        throw std::invalid_argument("compose_change: dimension or truncation mismatch");
    }
    Substitution sub(first.components());
    std::vector<Jet> comps;
    for (const auto& c : second.components()) comps.push_back(sub.apply(c));
    return CoordChange(std::move(comps));
}

CoordChange invert_change(const CoordChange& phi)
{
    const std::size_t m = phi.nvars();
    const int order = phi.order();
    const auto linv = inverse(phi.linear_part());
    if (!linv) throw std::invalid_argument("invert_change: singular linear part");

    // phi = L x + h(x); the inverse satisfies psi = L^{-1} (y - h(psi)).
    std::vector<Jet> nonlinear;
    for (const auto& c : phi.components()) nonlinear.push_back(c.degree_range(2, order));

    auto apply_linv = [&](const std::vector<Jet>& v, int ord) {
        std::vector<Jet> out(m, Jet(m, ord));
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                if (sgn((*linv)(i, j)) != 0) out[i] += v[j] * (*linv)(i, j);
            }
        }
        return out;
    };

    std::vector<Jet> ys;
    for (std::size_t i = 0; i < m; ++i) ys.push_back(Jet::variable(m, 1, i));
    std::vector<Jet> psi = apply_linv(ys, 1);

    for (int k = 2; k <= order; ++k) {
        std::vector<Jet> prev;
        for (const auto& c : psi) prev.push_back(c.with_order(k));
        Substitution sub(prev);
        std::vector<Jet> rhs;
        for (std::size_t i = 0; i < m; ++i) {
            rhs.push_back(Jet::variable(m, k, i) - sub.apply(nonlinear[i].with_order(k)));
        }
        psi = apply_linv(rhs, k);
    }
    for (auto& c : psi) c = c.with_order(order);
    return CoordChange(std::move(psi));
}

// ---------------------------------------------------------------------------

PoissonJet::PoissonJet(std::size_t nvars, int order)
    : nvars_(nvars), order_(order), entries_(nvars * nvars, Jet(nvars, order))
{
}

PoissonJet::PoissonJet(std::size_t nvars, int order, std::vector<Jet> entries)
    : nvars_(nvars), order_(order), entries_(std::move(entries))
{
    if (entries_.size() != nvars * nvars) throw std::invalid_argument("bivector needs nvars^2 entries");
    for (std::size_t i = 0; i < nvars; ++i) {
        for (std::size_t j = 0; j < nvars; ++j) {
            const Jet& e = (*this)(i, j);
            if (e.nvars() != nvars || e.order() != order) {
                throw std::invalid_argument("bivector entry has the wrong shape");
            }
            if (!is_zero(e.constant_term())) {
                throw std::invalid_argument("bivector must vanish at the origin");
            }
            if (!(e == -(*this)(j, i))) throw std::invalid_argument("bivector is not antisymmetric");
        }
    }
}

PoissonJet PoissonJet::linear(std::size_t nvars, int order, const Vector& constants)
{
    if (constants.size() != nvars * nvars * nvars) {
        throw std::invalid_argument("structure constants have the wrong size");
    }
    std::vector<Jet> entries(nvars * nvars, Jet(nvars, order));
    for (std::size_t i = 0; i < nvars; ++i) {
        for (std::size_t j = 0; j < nvars; ++j) {
            for (std::size_t k = 0; k < nvars; ++k) {
                entries[i * nvars + j].add_term(Monomial::unit(nvars, k), constants[(i * nvars + j) * nvars + k]);
            }
        }
    }
    return PoissonJet(nvars, order, std::move(entries));
}

void PoissonJet::set(std::size_t i, std::size_t j, const Jet& value)
{
    if (value.nvars() != nvars_ || value.order() != order_) {
        throw std::invalid_argument("bivector entry has the wrong shape");
    }
    if (i == j) {
        if (!value.is_zero()) throw std::invalid_argument("diagonal bivector entries must vanish");
        return;
    }
    if (!is_zero(value.constant_term())) throw std::invalid_argument("bivector must vanish at the origin");
    entries_[i * nvars_ + j] = value;
    entries_[j * nvars_ + i] = -value;
}

PoissonJet PoissonJet::linear_part() const
{
    PoissonJet p(*this);
    for (auto& e : p.entries_) e = e.homogeneous_part(1);
    return p;
}

PoissonJet PoissonJet::truncated(int order) const
{
    const int o = std::min(order, order_);
    std::vector<Jet> entries;
    for (const auto& e : entries_) entries.push_back(e.with_order(o));
    return PoissonJet(nvars_, o, std::move(entries));
}

bool PoissonJet::is_linear() const
{
    for (const auto& e : entries_) {
        if (e.highest_degree() > 1) return false;
    }
    return true;
}

bool PoissonJet::is_poisson() const
{
    for (const auto& j : jacobiator(*this)) {
        if (!j.is_zero()) return false;
    }
    return true;
}

Jet poisson_bracket(const Jet& f, const Jet& g, const PoissonJet& p)
{
    const std::size_t m = p.nvars();
    if (f.nvars() != m || g.nvars() != m) throw std::invalid_argument("poisson_bracket: dimension mismatch");
    if (f.order() != p.order() || g.order() != p.order()) {
        throw std::invalid_argument("poisson_bracket: truncation mismatch");
    }
    std::vector<Jet> df, dg;
    for (std::size_t i = 0; i < m; ++i) {
        df.push_back(f.derivative(i));
        dg.push_back(g.derivative(i));
    }
    Jet out(m, p.order());
    for (std::size_t i = 0; i < m; ++i) {
        if (df[i].is_zero()) continue;
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j || dg[j].is_zero() || p(i, j).is_zero()) continue;
            out += p(i, j) * (df[i] * dg[j]);
        }
    }
    return out;
}

std::vector<Jet> jacobiator(const PoissonJet& p)
{
    const std::size_t m = p.nvars();
    // dP[(j*m + k)*m + l] = d_l P(j, k)
    std::vector<Jet> dp;
    dp.reserve(m * m * m);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = 0; k < m; ++k) {
            for (std::size_t l = 0; l < m; ++l) dp.push_back(p(j, k).derivative(l));
        }
    }
    auto term = [&](std::size_t i, std::size_t j, std::size_t k) {
        Jet s(m, p.order());
        for (std::size_t l = 0; l < m; ++l) {
            const Jet& d = dp[(j * m + k) * m + l];
            if (!d.is_zero() && !p(i, l).is_zero()) s += p(i, l) * d;
        }
        return s;
    };
    std::vector<Jet> out;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            for (std::size_t k = j + 1; k < m; ++k) {
                out.push_back(term(i, j, k) + term(j, k, i) + term(k, i, j));
            }
        }
    }
    return out;
}

PoissonJet pushforward(const PoissonJet& p, const CoordChange& phi)
{
    const std::size_t m = p.nvars();
    if (phi.nvars() != m || phi.order() != p.order()) {
        throw std::invalid_argument("pushforward: dimension or truncation mismatch");
    }
    if (phi.is_identity()) return p;
    const int order = p.order();

    std::vector<std::vector<Jet>> grad(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t a = 0; a < m; ++a) grad[i].push_back(phi[i].derivative(a));
    }
    // q[i][b] = sum_a d_a phi_i P(a, b)
    std::vector<std::vector<Jet>> q(m, std::vector<Jet>(m, Jet(m, order)));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t b = 0; b < m; ++b) {
            for (std::size_t a = 0; a < m; ++a) {
                if (a == b || grad[i][a].is_zero() || p(a, b).is_zero()) continue;
                q[i][b] += grad[i][a] * p(a, b);
            }
        }
    }
    const CoordChange inv = invert_change(phi);
    Substitution sub(inv.components());
    std::vector<Jet> entries(m * m, Jet(m, order));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            Jet bracket(m, order);
            for (std::size_t b = 0; b < m; ++b) {
                if (q[i][b].is_zero() || grad[j][b].is_zero()) continue;
                bracket += q[i][b] * grad[j][b];
            }
            Jet value = sub.apply(bracket);
            entries[j * m + i] = -value;
            entries[i * m + j] = std::move(value);
        }
    }
    return PoissonJet(m, order, std::move(entries));
}

// ---------------------------------------------------------------------------

PolyOneForm::PolyOneForm(std::size_t nvars, int order) : coeffs_(nvars, Jet(nvars, order)), order_(order) {}

PolyOneForm::PolyOneForm(std::vector<Jet> coefficients) : coeffs_(std::move(coefficients))
{
    if (coeffs_.empty()) return;
    order_ = coeffs_.front().order();
    for (const auto& c : coeffs_) {
        if (c.nvars() != coeffs_.size() || c.order() != order_) {
            throw std::invalid_argument("1-form coefficients must match the dimension and order");
        }
    }
}

PolyOneForm& PolyOneForm::operator+=(const PolyOneForm& other)
{
    if (other.nvars() != nvars()) throw std::invalid_argument("1-form dimension mismatch");
    for (std::size_t i = 0; i < nvars(); ++i) coeffs_[i] += other.coeffs_[i];
    return *this;
}

PolyOneForm& PolyOneForm::operator-=(const PolyOneForm& other)
{
    if (other.nvars() != nvars()) throw std::invalid_argument("1-form dimension mismatch");
    for (std::size_t i = 0; i < nvars(); ++i) coeffs_[i] -= other.coeffs_[i];
    return *this;
}

PolyOneForm operator*(const Jet& f, const PolyOneForm& a)
{
    PolyOneForm r(a);
    for (auto& c : r.coeffs_) c = f * c;
    return r;
}

PolyOneForm exterior_derivative(const Jet& f)
{
    std::vector<Jet> c;
    for (std::size_t i = 0; i < f.nvars(); ++i) c.push_back(f.derivative(i));
    return PolyOneForm(std::move(c));
}

std::vector<Jet> sharp(const PolyOneForm& a, const PoissonJet& p)
{
    const std::size_t m = p.nvars();
    if (a.nvars() != m || a.order() != p.order()) throw std::invalid_argument("sharp: shape mismatch");
    std::vector<Jet> v(m, Jet(m, p.order()));
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < m; ++i) {
            if (!a[i].is_zero() && !p(i, j).is_zero()) v[j] += a[i] * p(i, j);
        }
    }
    return v;
}

Jet apply_vector_field(const std::vector<Jet>& v, const Jet& f)
{
    if (v.size() != f.nvars()) throw std::invalid_argument("vector field dimension mismatch");
    Jet out(f.nvars(), f.order());
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (v[j].is_zero()) continue;
        const Jet d = f.derivative(j);
        if (!d.is_zero()) out += v[j] * d;
    }
    return out;
}

PolyOneForm lie_derivative(const std::vector<Jet>& v, const PolyOneForm& b)
{
    // (L_v b)_k = v^j d_j b_k + b_j d_k v^j
    const std::size_t m = b.nvars();
    PolyOneForm out(m, b.order());
    for (std::size_t k = 0; k < m; ++k) {
        out[k] += apply_vector_field(v, b[k]);
        for (std::size_t j = 0; j < m; ++j) {
            if (b[j].is_zero()) continue;
            const Jet d = v[j].derivative(k);
            if (!d.is_zero()) out[k] += b[j] * d;
        }
    }
    return out;
}

PolyOneForm koszul_bracket(const PolyOneForm& a, const PolyOneForm& b, const PoissonJet& p)
{
    const std::size_t m = p.nvars();
    if (a.nvars() != m || b.nvars() != m || a.order() != p.order() || b.order() != p.order()) {
        throw std::invalid_argument("koszul_bracket: shape mismatch");
    }
    const auto sa = sharp(a, p);
    const auto sb = sharp(b, p);
    // P(a, b) = b(#a)
    Jet pab(m, p.order());
    for (std::size_t j = 0; j < m; ++j) {
        if (!b[j].is_zero() && !sa[j].is_zero()) pab += b[j] * sa[j];
    }
    return lie_derivative(sa, b) - lie_derivative(sb, a) - exterior_derivative(pab);
}

}  // namespace plin
