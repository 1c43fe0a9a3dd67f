#include "plin/cohomology.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include <Eigen/Dense>

namespace plin {

namespace {

std::size_t binomial(std::size_t n, std::size_t k)
{
    if (k > n) return 0;
    std::size_t b = 1;
    for (std::size_t i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

void collect_subsets(std::size_t n, std::size_t r, std::size_t start, std::vector<std::size_t>& current,
                     std::vector<std::vector<std::size_t>>& out)
{
    if (current.size() == r) {
        out.push_back(current);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        current.push_back(i);
        collect_subsets(n, r, i + 1, current, out);
        current.pop_back();
    }
}

std::string module_label(std::size_t component, std::size_t components, const Monomial& m,
                         const std::vector<std::string>& names)
{
    std::string label = to_string(m, names);
    if (components > 1) label = "[" + std::to_string(component) + "]" + label;
    return label;
}

}  // namespace

GModule::GModule(LieAlgebra algebra, std::vector<Matrix> action, std::vector<std::string> labels,
                 std::vector<PolynomialBasisElement> polynomial_basis)
    : algebra_(std::move(algebra)),
      action_(std::move(action)),
      labels_(std::move(labels)),
      polynomial_basis_(std::move(polynomial_basis))
{
    const std::size_t n = algebra_.dim();
    if (action_.size() != n) throw std::invalid_argument("module needs one action matrix per Lie algebra basis element");
    dim_ = n == 0 ? (labels_.empty() ? polynomial_basis_.size() : labels_.size()) : action_.front().rows();
    for (const auto& a : action_) {
        if (a.rows() != dim_ || a.cols() != dim_) throw std::invalid_argument("module action matrices must be square of equal size");
    }
    if (!labels_.empty() && labels_.size() != dim_) throw std::invalid_argument("module label count mismatch");
    if (!polynomial_basis_.empty() && polynomial_basis_.size() != dim_) {
        throw std::invalid_argument("module polynomial basis size mismatch");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            Matrix expected(dim_, dim_);
            for (std::size_t k = 0; k < n; ++k) {
                const Scalar& c = algebra_.c(i, j, k);
                if (sgn(c) == 0) continue;
                for (std::size_t r = 0; r < dim_; ++r) {
                    for (std::size_t s = 0; s < dim_; ++s) {
                        if (sgn(action_[k](r, s)) != 0) expected(r, s) += c * action_[k](r, s);
                    }
                }
            }
            if (action_[i] * action_[j] - action_[j] * action_[i] != expected) {
                throw std::invalid_argument("module action fails the representation property");
            }
        }
    }
}

GModule trivial_module(const LieAlgebra& g, std::size_t dim)
{
    std::vector<std::string> labels;
    for (std::size_t b = 0; b < dim; ++b) labels.push_back("v" + std::to_string(b + 1));
    return GModule(g, std::vector<Matrix>(g.dim(), Matrix(dim, dim)), std::move(labels));
}

GModule adjoint_module(const LieAlgebra& g)
{
    std::vector<Matrix> action;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < g.dim(); ++i) {
        action.push_back(g.ad(i));
        labels.push_back("X" + std::to_string(i + 1));
    }
    return GModule(g, std::move(action), std::move(labels));
}

GModule twisted_polynomial_module(const LieAlgebra& g, std::size_t m, const std::vector<Matrix>& rep,
                                  const std::vector<Matrix>& twist,
                                  const std::vector<std::vector<Monomial>>& allowed)
{
    const std::size_t n = g.dim();
    const std::size_t q = allowed.size();
    if (rep.size() != n) throw std::invalid_argument("need one linear action matrix per Lie algebra basis element");
    for (const auto& r : rep) {
        if (r.rows() != m || r.cols() != m) throw std::invalid_argument("linear action matrices must be m x m");
    }
    if (!twist.empty()) {
        if (twist.size() != n) throw std::invalid_argument("need one twist matrix per Lie algebra basis element");
        for (const auto& t : twist) {
            if (t.rows() != q || t.cols() != q) throw std::invalid_argument("twist matrices must be q x q");
        }
    }

    std::vector<PolynomialBasisElement> basis;
    std::vector<std::map<Monomial, std::size_t, GradedLex>> index(q);
    const std::vector<std::string> names = default_names(m);
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < q; ++a) {
        for (const auto& mono : allowed[a]) {
            if (mono.size() != m) throw std::invalid_argument("allowed monomial has the wrong variable count");
            if (!index[a].emplace(mono, basis.size()).second) continue;
            basis.push_back({a, mono});
            labels.push_back(module_label(a, q, mono, names));
        }
    }
    const std::size_t dim = basis.size();

    auto locate = [&](std::size_t a, const Monomial& mono) {
        const auto it = index[a].find(mono);
        if (it == index[a].end()) throw std::invalid_argument("allowed monomials do not span an invariant subspace");
        return it->second;
    };

    std::vector<Matrix> action(n, Matrix(dim, dim));
    for (std::size_t i = 0; i < n; ++i) {
        Matrix& act = action[i];
        for (std::size_t col = 0; col < dim; ++col) {
            const auto& [a, mono] = basis[col];
            for (std::size_t j = 0; j < m; ++j) {
                if (mono[j] == 0) continue;
                const Monomial lowered = mono.lowered(j);
                for (std::size_t k = 0; k < m; ++k) {
                    if (sgn(rep[i](k, j)) == 0) continue;
                    act(locate(a, lowered * Monomial::unit(m, k)), col) += mono[j] * rep[i](k, j);
                }
            }
            if (twist.empty()) continue;
            for (std::size_t b = 0; b < q; ++b) {
                if (sgn(twist[i](b, a)) == 0) continue;
                act(locate(b, mono), col) -= twist[i](b, a);
            }
        }
    }
    return GModule(g, std::move(action), std::move(labels), std::move(basis));
}

GModule induced_polynomial_module(const LieAlgebra& g, std::size_t m, const std::vector<Matrix>& rep, int lo, int hi)
{
    std::vector<Monomial> monomials;
    for (int d = std::max(lo, 0); d <= hi; ++d) {
        const auto part = monomials_of_degree(m, d);
        monomials.insert(monomials.end(), part.begin(), part.end());
    }
    return twisted_polynomial_module(g, m, rep, {}, {monomials});
}

GModule induced_polynomial_module(const LieAlgebra& g, std::size_t m, const std::vector<Matrix>& rep, int degree)
{
    return induced_polynomial_module(g, m, rep, degree, degree);
}

std::vector<std::vector<std::size_t>> index_subsets(std::size_t n, std::size_t r)
{
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> current;
    collect_subsets(n, r, 0, current, out);
    return out;
}

Cochain::Cochain(std::shared_ptr<const GModule> module, int degree)
    : module_(std::move(module)), degree_(degree)
{
    if (!module_) throw std::invalid_argument("cochain needs a module");
    if (degree < 0) throw std::invalid_argument("cochain degree must be non-negative");
    subset_count_ = binomial(module_->algebra().dim(), static_cast<std::size_t>(degree));
    coeffs_.assign(subset_count_ * module_->dim(), Scalar(0));
}

Cochain::Cochain(std::shared_ptr<const GModule> module, int degree, Vector coefficients)
    : Cochain(std::move(module), degree)
{
    if (coefficients.size() != coeffs_.size()) throw std::invalid_argument("cochain coefficient count mismatch");
    coeffs_ = std::move(coefficients);
}

Matrix differential_matrix(const GModule& module, int r)
{
    if (r < 0) throw std::invalid_argument("differential degree must be non-negative");
    const LieAlgebra& g = module.algebra();
    const std::size_t n = g.dim();
    const std::size_t dim = module.dim();
    const auto sources = index_subsets(n, static_cast<std::size_t>(r));
    const auto targets = index_subsets(n, static_cast<std::size_t>(r) + 1);
    std::map<std::vector<std::size_t>, std::size_t> source_index;
    for (std::size_t s = 0; s < sources.size(); ++s) source_index.emplace(sources[s], s);

    Matrix d(targets.size() * dim, sources.size() * dim);
    std::vector<std::size_t> rest;
    for (std::size_t t = 0; t < targets.size(); ++t) {
        const auto& tgt = targets[t];
        for (std::size_t i = 0; i <= static_cast<std::size_t>(r); ++i) {
            rest = tgt;
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
            const std::size_t s = source_index.at(rest);
            const Matrix& act = module.action(tgt[i]);
            const bool negate = i % 2 == 1;
            for (std::size_t b = 0; b < dim; ++b) {
                for (std::size_t row = 0; row < dim; ++row) {
                    if (sgn(act(row, b)) == 0) continue;
                    if (negate) d(t * dim + row, s * dim + b) -= act(row, b);
                    else d(t * dim + row, s * dim + b) += act(row, b);
                }
            }
        }
        for (std::size_t i = 0; i <= static_cast<std::size_t>(r); ++i) {
            for (std::size_t j = i + 1; j <= static_cast<std::size_t>(r); ++j) {
                for (std::size_t c = 0; c < n; ++c) {
                    const Scalar& coef = g.c(tgt[i], tgt[j], c);
                    if (sgn(coef) == 0) continue;
                    rest.clear();
                    for (std::size_t l = 0; l <= static_cast<std::size_t>(r); ++l) {
                        if (l != i && l != j) rest.push_back(tgt[l]);
                    }
                    if (std::find(rest.begin(), rest.end(), c) != rest.end()) continue;
                    const auto pos = static_cast<std::size_t>(std::lower_bound(rest.begin(), rest.end(), c) - rest.begin());
                    rest.insert(rest.begin() + static_cast<std::ptrdiff_t>(pos), c);
                    const std::size_t s = source_index.at(rest);
                    const Scalar w = (i + j + pos) % 2 == 0 ? coef : Scalar(-coef);
                    for (std::size_t b = 0; b < dim; ++b) d(t * dim + b, s * dim + b) += w;
                }
            }
        }
    }
    return d;
}

Cochain ce_differential(const Cochain& w)
{
    const Matrix d = differential_matrix(w.module(), w.degree());
    return Cochain(w.module_ptr(), w.degree() + 1, d * w.coefficients());
}

bool is_cocycle(const Cochain& w) { return ce_differential(w).is_zero(); }

bool ObstructionClass::verify() const
{
    if (remainder.degree() < 1) return false;
    const Matrix d = differential_matrix(remainder.module(), remainder.degree() - 1);
    if (functional.size() != d.rows()) return false;
    for (std::size_t c = 0; c < d.cols(); ++c) {
        if (sgn(dot(functional, d.col(c))) != 0) return false;
    }
    return sgn(dot(functional, remainder.coefficients())) != 0;
}

CoboundarySolution solve_coboundary(const Cochain& r)
{
    if (r.degree() < 1) throw std::invalid_argument("solve_coboundary needs a cochain of degree >= 1");
    if (!is_cocycle(r)) throw InputNotCocycle("solve_coboundary: input is not a cocycle");
    const Matrix d = differential_matrix(r.module(), r.degree() - 1);
    if (auto x = solve(d, r.coefficients())) return Cochain(r.module_ptr(), r.degree() - 1, std::move(*x));
    ObstructionClass obstruction;
    obstruction.remainder = r;
    for (auto& v : kernel(d.transposed())) {
        if (sgn(dot(v, r.coefficients())) != 0) {
            obstruction.functional = std::move(v);
            break;
        }
    }
    obstruction.cohomology_dim = cohomology_dimension(r.module(), r.degree());
    return obstruction;
}

std::size_t cohomology_dimension(const GModule& module, int r)
{
    if (r < 0) throw std::invalid_argument("cohomology degree must be non-negative");
    const std::size_t n = module.algebra().dim();
    const std::size_t cochains = binomial(n, static_cast<std::size_t>(r)) * module.dim();
    if (cochains == 0) return 0;
    const std::size_t rank_out = rank(differential_matrix(module, r));
    const std::size_t rank_in = r == 0 ? 0 : rank(differential_matrix(module, r - 1));
    return cochains - rank_out - rank_in;
}

double homotopy_bound_estimate(const GModule& module, int r, std::span<const double> weights)
{
    if (r < 1) throw std::invalid_argument("homotopy bound needs cochain degree >= 1");
    const std::size_t dim = module.dim();
    if (weights.size() != dim) throw std::invalid_argument("one weight per module basis element required");
    for (double w : weights) {
        if (!(w > 0)) throw std::invalid_argument("weights must be positive");
    }
    const Matrix d = differential_matrix(module, r - 1);
    if (d.rows() == 0 || d.cols() == 0 || d.is_zero()) return 0.0;
    Eigen::MatrixXd a(static_cast<Eigen::Index>(d.rows()), static_cast<Eigen::Index>(d.cols()));
    for (std::size_t i = 0; i < d.rows(); ++i) {
        const double wi = std::sqrt(weights[i % dim]);
        for (std::size_t j = 0; j < d.cols(); ++j) {
            const double wj = std::sqrt(weights[j % dim]);
            a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = wi * to_double(d(i, j)) / wj;
        }
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    const auto& sv = svd.singularValues();
    const double tol = sv(0) * 1e-10 * static_cast<double>(std::max(a.rows(), a.cols()));
    double smallest = 0.0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
        if (sv(k) > tol) smallest = sv(k);
    }
    return smallest > 0 ? 1.0 / smallest : 0.0;
}

std::vector<double> hermitian_weights(const GModule& module, double radius)
{
    if (!(radius > 0)) throw std::invalid_argument("radius must be positive");
    const auto& basis = module.polynomial_basis();
    if (basis.size() != module.dim() || module.dim() == 0) {
        if (module.dim() == 0) return {};
        throw std::invalid_argument("module has no polynomial basis");
    }
    std::vector<double> weights;
    for (const auto& [component, m] : basis) {
        const auto n = static_cast<double>(m.size());
        const auto deg = static_cast<double>(m.degree());
        double log_w = std::lgamma(n + 1) - std::lgamma(deg + n + 1) + 2 * deg * std::log(radius);
        for (std::size_t v = 0; v < m.size(); ++v) log_w += std::lgamma(m[v] + 1.0);
        weights.push_back(std::exp(log_w));
    }
    return weights;
}

}  // namespace plin
