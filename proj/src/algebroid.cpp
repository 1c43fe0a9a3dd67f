#include "plin/algebroid.hpp"

#include <stdexcept>
#include <utility>

namespace plin {

namespace {

int fiber_degree(const Monomial& m, std::size_t base_dim)
{
    int d = 0;
    for (std::size_t v = base_dim; v < m.size(); ++v) d += m[v];
    return d;
}

// Restriction of a monomial to its first `base_dim` exponents.
Monomial base_part(const Monomial& m, std::size_t base_dim)
{
    Monomial out(base_dim);
    for (std::size_t v = 0; v < base_dim; ++v) out.set(v, m[v]);
    return out;
}

Jet lift_to_total(const Jet& f, std::size_t total, int order)
{
    std::vector<std::size_t> map(f.nvars());
    for (std::size_t v = 0; v < map.size(); ++v) map[v] = v;
    return f.embedded(total, map).with_order(order);
}

BlockProblem graded_problem(std::size_t base_dim, std::size_t rank, std::size_t acting_count)
{
    BlockProblem problem;
    const std::size_t total = base_dim + rank;
    for (std::size_t v = 0; v < base_dim; ++v) problem.passive.push_back(v);
    for (std::size_t v = base_dim; v < total; ++v) {
        (v < base_dim + acting_count ? problem.acting : problem.passive).push_back(v);
    }
    problem.fiber_mask.assign(total, false);
    problem.fiber_weight.assign(total, 0);
    for (std::size_t v = base_dim; v < total; ++v) {
        problem.fiber_mask[v] = true;
        problem.fiber_weight[v] = 1;
    }
    return problem;
}

void check_target(int order, const AlgebroidJet& a)
{
    if (order < 1 || order > a.order()) {
        throw std::invalid_argument("target order must lie between 1 and the truncation order of the algebroid");
    }
}

}  // namespace

AlgebroidJet::AlgebroidJet(std::size_t base_dim, std::size_t rank, int order, std::vector<Jet> structure,
                           std::vector<Jet> anchor)
    : base_dim_(base_dim), rank_(rank), order_(order), structure_(std::move(structure)), anchor_(std::move(anchor))
{
    if (order < 1) throw std::invalid_argument("algebroid truncation order must be >= 1");
    if (base_dim + rank > Monomial::kMaxVars) throw std::invalid_argument("too many algebroid variables");
    if (structure_.size() != rank * rank * rank) throw std::invalid_argument("algebroid needs rank^3 structure functions");
    if (anchor_.size() != rank * base_dim) throw std::invalid_argument("algebroid needs rank*base_dim anchor components");
    for (const auto& f : structure_) {
        if (f.nvars() != base_dim || f.order() != order) {
            throw std::invalid_argument("structure functions must be jets in the base variables of order N");
        }
    }
    for (const auto& f : anchor_) {
        if (f.nvars() != base_dim || f.order() != order + 1) {
            throw std::invalid_argument("anchor components must be jets in the base variables of order N + 1");
        }
        if (sgn(f.constant_term()) != 0) throw std::invalid_argument("anchor must vanish at the fixed point");
    }
    for (std::size_t i = 0; i < rank; ++i) {
        for (std::size_t j = 0; j < rank; ++j) {
            for (std::size_t k = 0; k < rank; ++k) {
                if (!(this->structure(i, j, k) == -this->structure(j, i, k))) {
                    throw std::invalid_argument("structure functions are not antisymmetric");
                }
            }
        }
    }
}

AlgebroidJet AlgebroidJet::from_action(const ActionJet& rho)
{
    const LieAlgebra& g = rho.algebra();
    const std::size_t r = g.dim();
    const std::size_t n = rho.nvars();
    const int order = rho.order() - 1;
    std::vector<Jet> structure;
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            for (std::size_t k = 0; k < r; ++k) structure.push_back(Jet::constant(n, order, g.c(i, j, k)));
        }
    }
    std::vector<Jet> anchor;
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t l = 0; l < n; ++l) anchor.push_back(rho.field(i)[l]);
    }
    return AlgebroidJet(n, r, order, std::move(structure), std::move(anchor));
}

LieAlgebra AlgebroidJet::isotropy() const
{
    Vector constants;
    for (const auto& f : structure_) constants.push_back(f.constant_term());
    return LieAlgebra(rank_, std::move(constants));
}

Matrix AlgebroidJet::linear_anchor(std::size_t i) const
{
    Matrix b(base_dim_, base_dim_);
    for (std::size_t k = 0; k < base_dim_; ++k) {
        for (std::size_t j = 0; j < base_dim_; ++j) b(k, j) = anchor(i, k).coeff(Monomial::unit(base_dim_, j));
    }
    return b;
}

bool AlgebroidJet::is_valid() const { return algebroid_to_poisson(*this).is_poisson(); }

bool LinearAlgebroid::is_valid() const
{
    const std::size_t r = algebra.dim();
    if (anchor.size() != r) return false;
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = i + 1; j < r; ++j) {
            Matrix expected = anchor[j] * anchor[i] - anchor[i] * anchor[j];
            Matrix combo(expected.rows(), expected.cols());
            for (std::size_t k = 0; k < r; ++k) {
                if (sgn(algebra.c(i, j, k)) == 0) continue;
                for (std::size_t a = 0; a < combo.rows(); ++a) {
                    for (std::size_t b = 0; b < combo.cols(); ++b) combo(a, b) += algebra.c(i, j, k) * anchor[k](a, b);
                }
            }
            if (!(combo == expected)) return false;
        }
    }
    return true;
}

AlgebroidJet LinearAlgebroid::to_jet(int order) const
{
    const std::size_t r = algebra.dim();
    const std::size_t n = anchor.empty() ? 0 : anchor.front().rows();
    std::vector<Jet> structure;
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            for (std::size_t k = 0; k < r; ++k) structure.push_back(Jet::constant(n, order, algebra.c(i, j, k)));
        }
    }
    std::vector<Jet> anchors;
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t l = 0; l < n; ++l) {
            Jet f(n, order + 1);
            for (std::size_t j = 0; j < n; ++j) f.add_term(Monomial::unit(n, j), anchor[i](l, j));
            anchors.push_back(std::move(f));
        }
    }
    return AlgebroidJet(n, r, order, std::move(structure), std::move(anchors));
}

PoissonJet algebroid_to_poisson(const AlgebroidJet& a)
{
    const std::size_t n = a.base_dim();
    const std::size_t r = a.rank();
    const std::size_t total = n + r;
    const int order = a.order() + 1;
    PoissonJet p(total, order);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = i + 1; j < r; ++j) {
            Jet f(total, order);
            for (std::size_t k = 0; k < r; ++k) {
                const Jet& c = a.structure(i, j, k);
                if (c.is_zero()) continue;
                f += lift_to_total(c, total, order) * Jet::variable(total, order, n + k);
            }
            p.set(n + i, n + j, f);
        }
        for (std::size_t l = 0; l < n; ++l) p.set(n + i, l, lift_to_total(a.anchor(i, l), total, order));
    }
    return p;
}

FiberwiseCheck fiberwise_linearity_check(const PoissonJet& p, std::size_t base_dim)
{
    const std::size_t total = p.nvars();
    if (base_dim > total) return {false, "base dimension exceeds the variable count"};
    auto all_of_degree = [&](const Jet& f, int fd) {
        for (const auto& [m, c] : f.terms()) {
            if (fiber_degree(m, base_dim) != fd) return false;
        }
        return true;
    };
    const auto names = default_names(total);
    for (std::size_t i = base_dim; i < total; ++i) {
        for (std::size_t j = i + 1; j < total; ++j) {
            if (!all_of_degree(p(i, j), 1)) {
                return {false, "(i) {" + names[i] + ", " + names[j] + "} is not fiber-wise linear"};
            }
        }
    }
    for (std::size_t i = base_dim; i < total; ++i) {
        for (std::size_t l = 0; l < base_dim; ++l) {
            if (!all_of_degree(p(i, l), 0)) {
                return {false, "(ii) {" + names[i] + ", " + names[l] + "} is not a basic function"};
            }
        }
    }
    for (std::size_t k = 0; k < base_dim; ++k) {
        for (std::size_t l = k + 1; l < base_dim; ++l) {
            if (!p(k, l).is_zero()) return {false, "(iii) {" + names[k] + ", " + names[l] + "} is nonzero"};
        }
    }
    return {};
}

AlgebroidJet poisson_to_algebroid(const PoissonJet& p, std::size_t base_dim)
{
    const FiberwiseCheck check = fiberwise_linearity_check(p, base_dim);
    if (!check) throw std::invalid_argument("bivector is not fiber-wise linear: " + check.violation);
    const std::size_t n = base_dim;
    const std::size_t r = p.nvars() - n;
    const int order = p.order() - 1;
    if (order < 1) throw std::invalid_argument("fiber-wise linear bivector needs truncation order >= 2");
    std::vector<Jet> structure(r * r * r, Jet(n, order));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            if (i == j) continue;
            for (const auto& [m, c] : p(n + i, n + j).terms()) {
                std::size_t k = 0;
                while (m[n + k] == 0) ++k;
                structure[(i * r + j) * r + k].add_term(base_part(m, n), c);
            }
        }
    }
    std::vector<Jet> anchor;
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t l = 0; l < n; ++l) {
            Jet f(n, order + 1);
            for (const auto& [m, c] : p(n + i, l).terms()) f.add_term(base_part(m, n), c);
            anchor.push_back(std::move(f));
        }
    }
    return AlgebroidJet(n, r, order, std::move(structure), std::move(anchor));
}

bool preserves_fiber_grading(const CoordChange& phi, std::size_t base_dim)
{
    for (std::size_t v = 0; v < phi.nvars(); ++v) {
        const int want = v < base_dim ? 0 : 1;
        for (const auto& [m, c] : phi[v].terms()) {
            if (fiber_degree(m, base_dim) != want) return false;
        }
    }
    return true;
}

AlgebroidLinearizeResult linearize_algebroid(const AlgebroidJet& a, int order, const NormalizeOptions& options)
{
    check_target(order, a);
    const std::size_t n = a.base_dim();
    const std::size_t r = a.rank();
    const PoissonJet p = algebroid_to_poisson(a).truncated(order + 1);
    BlockNormalization run = normalize_blocks(p, graded_problem(n, r, r), order + 1, options);
    AlgebroidLinearizeResult out;
    out.trace = std::move(run.trace);
    if (run.obstruction) {
        out.outcome = std::move(*run.obstruction);
        return out;
    }
    const AlgebroidJet normalized = poisson_to_algebroid(run.normal_form, n);
    LinearAlgebroid linear{normalized.isotropy(), {}};
    for (std::size_t i = 0; i < r; ++i) linear.anchor.push_back(normalized.linear_anchor(i));
    if (!(linear.to_jet(order) == normalized)) throw std::logic_error("linearize_algebroid: normal form is not linear");
    out.outcome = AlgebroidLinearization{std::move(run.change), std::move(linear)};
    return out;
}

AlgebroidLevi levi_algebroid(const AlgebroidJet& a, const LeviSplit& split, int order, const NormalizeOptions& options)
{
    check_target(order, a);
    if (!(split.parent() == a.isotropy())) {
        throw SplitNotCertified("Levi split does not belong to the isotropy algebra of the algebroid");
    }
    const std::size_t n = a.base_dim();
    const std::size_t r = a.rank();
    const std::size_t total = n + r;
    const std::size_t ps = split.s_basis().size();
    const PoissonJet p = algebroid_to_poisson(a).truncated(order + 1);

    AlgebroidLevi out;
    out.split = split;
    if (ps == 0) {
        out.change = CoordChange::identity(total, order + 1);
        out.normal_form = poisson_to_algebroid(p, n);
        out.trace.scheduler = options.scheduler;
        out.trace.radius = options.radius;
        out.trace.order = order + 1;
        return out;
    }
    Matrix rows = Matrix::identity(total);
    for (std::size_t i = 0; i < r; ++i) {
        const Vector& v = i < ps ? split.s_basis()[i] : split.r_basis()[i - ps];
        for (std::size_t j = 0; j < r; ++j) rows(n + i, n + j) = v[j];
    }
    const CoordChange frame = CoordChange::linear(rows, order + 1);
    BlockNormalization run = normalize_blocks(pushforward(p, frame), graded_problem(n, r, ps), order + 1, options);
    if (run.obstruction) throw std::logic_error("levi_algebroid: obstruction for a semisimple Levi factor");
    out.change = compose_change(frame, run.change);
    out.normal_form = poisson_to_algebroid(run.normal_form, n);
    out.trace = std::move(run.trace);
    return out;
}

}  // namespace plin
