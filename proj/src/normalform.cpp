#include "plin/normalform.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <utility>

namespace plin {

namespace {

Scalar linear_coeff(const Jet& f, std::size_t var) { return f.coeff(Monomial::unit(f.nvars(), var)); }

Jet nonlinear_part(const Jet& f) { return f.degree_range(2, f.order()); }

int fiber_degree(const Monomial& m, const std::vector<bool>& mask)
{
    if (mask.empty()) return 0;
    int d = 0;
    for (std::size_t v = 0; v < m.size(); ++v) {
        if (mask[v]) d += m[v];
    }
    return d;
}

std::vector<Monomial> graded_monomials(std::size_t nvars, int degree, const std::vector<bool>& mask, int weight)
{
    std::vector<Monomial> out;
    for (const auto& m : monomials_of_degree(nvars, degree)) {
        if (mask.empty() || fiber_degree(m, mask) == weight) out.push_back(m);
    }
    return out;
}

// Index of (component, monomial) in a polynomial module basis.
class BasisIndex {
 public:
    explicit BasisIndex(const GModule& module)
    {
        const auto& basis = module.polynomial_basis();
        for (std::size_t b = 0; b < basis.size(); ++b) {
            if (basis[b].component >= maps_.size()) maps_.resize(basis[b].component + 1);
            maps_[basis[b].component].emplace(basis[b].monomial, b);
        }
    }

    std::size_t at(std::size_t component, const Monomial& m) const
    {
        if (component < maps_.size()) {
            const auto it = maps_[component].find(m);
            if (it != maps_[component].end()) return it->second;
        }
        throw std::invalid_argument("remainder has a monomial outside the module");
    }

 private:
    std::vector<std::map<Monomial, std::size_t, GradedLex>> maps_;
};

void add_jet(Cochain& w, const BasisIndex& index, std::size_t subset, std::size_t component, const Jet& f)
{
    for (const auto& [m, c] : f.terms()) w.at(subset, index.at(component, m)) += c;
}

// Polynomial in slot `component` of a cochain value at `subset`.
Jet extract_jet(const Cochain& w, std::size_t subset, std::size_t component, std::size_t nvars, int order)
{
    Jet f(nvars, order);
    const auto& basis = w.module().polynomial_basis();
    for (std::size_t b = 0; b < basis.size(); ++b) {
        if (basis[b].component != component) continue;
        const Scalar& c = w.at(subset, b);
        if (sgn(c) != 0) f.add_term(basis[b].monomial, c);
    }
    return f;
}

// Step primitive shared by the schedulers. Each phase removes remainders of
// the given degrees with one coordinate change.
class Stepper {
 public:
    virtual ~Stepper() = default;
    virtual int phase_count() const = 0;
    // Lowest degree carrying a remainder; order + 1 when there is none.
    virtual int lowest() const = 0;
    virtual Scalar norm_squared(const Scalar& radius) const = 0;
    virtual std::optional<NormalizationObstruction> correct(int phase, int lo, int hi) = 0;
};

struct ScheduleOutcome {
    IterationTrace trace;
    std::optional<NormalizationObstruction> obstruction;
};

double sqrt_of(const Scalar& q) { return std::sqrt(to_double(q)); }

ScheduleOutcome run_schedule(Stepper& stepper, int order, const NormalizeOptions& options)
{
    if (!(options.radius > 0)) throw std::invalid_argument("radius must be positive");
    const Scalar radius(options.radius);
    ScheduleOutcome out;
    out.trace.scheduler = options.scheduler;
    out.trace.radius = options.radius;
    out.trace.order = order;

    auto run_step = [&](StepRecord& rec, const std::vector<std::pair<int, int>>& ranges) {
        rec.lowest_before = stepper.lowest();
        rec.norm_before = sqrt_of(stepper.norm_squared(radius));
        for (int phase = 0; phase < stepper.phase_count() && !out.obstruction; ++phase) {
            for (const auto& [lo, hi] : ranges) {
                if (lo > hi) continue;
                out.obstruction = stepper.correct(phase, lo, hi);
                if (out.obstruction) break;
            }
        }
        rec.obstruction = out.obstruction.has_value();
        rec.lowest_after = stepper.lowest();
        rec.norm_after = sqrt_of(stepper.norm_squared(radius));
        out.trace.steps.push_back(rec);
        return !out.obstruction;
    };

    if (options.scheduler == Scheduler::Degree) {
        int index = 0;
        for (int d = stepper.lowest(); d <= order; ++d) {
            if (stepper.lowest() > order) break;
            StepRecord rec;
            rec.index = ++index;
            rec.degrees = {d};
            if (!run_step(rec, {{d, d}})) break;
        }
        return out;
    }

    // Block [k, 2k): one solve for [k, 2k-2] from the same remainder, then the
    // degree 2k-1 piece, which is a cocycle only once the lower block is gone.
    int nu = 1;
    for (int k = 2; k <= order; k *= 2, ++nu) {
        const int low = stepper.lowest();
        if (low > order) break;
        const int hi = std::min(2 * k - 1, order);
        if (low > hi) continue;
        StepRecord rec;
        rec.index = nu;
        for (int d = k; d <= hi; ++d) rec.degrees.push_back(d);
        std::vector<std::pair<int, int>> ranges{{k, std::min(2 * k - 2, order)}};
        if (2 * k - 1 <= order) ranges.emplace_back(2 * k - 1, 2 * k - 1);
        if (!run_step(rec, ranges)) break;
    }
    return out;
}

// Brackets of the acting variables with everything, normalized against their
// linear part. Requires acting and passive to partition the variables.
class PoissonBlockStepper : public Stepper {
 public:
    PoissonBlockStepper(PoissonJet p, BlockProblem problem)
        : p_(std::move(p)), problem_(std::move(problem)), phi_(CoordChange::identity(p_.nvars(), p_.order()))
    {
        const std::size_t n = p_.nvars();
        std::vector<int> seen(n, 0);
        for (auto v : problem_.acting) {
            if (v >= n) throw std::invalid_argument("acting variable out of range");
            ++seen[v];
        }
        for (auto v : problem_.passive) {
            if (v >= n) throw std::invalid_argument("passive variable out of range");
            ++seen[v];
        }
        for (int s : seen) {
            if (s != 1) throw std::invalid_argument("acting and passive variables must partition the coordinates");
        }
        if (!problem_.fiber_mask.empty()) {
            if (problem_.fiber_mask.size() != n || problem_.fiber_weight.size() != n) {
                throw std::invalid_argument("fiber mask and weights need one entry per variable");
            }
            for (auto v : problem_.acting) {
                if (problem_.fiber_weight[v] != problem_.fiber_weight[problem_.acting.front()]) {
                    throw std::invalid_argument("acting variables must share a fiber weight");
                }
            }
        }
        build_algebra();
    }

    const PoissonJet& jet() const { return p_; }
    const CoordChange& change() const { return phi_; }
    const LieAlgebra& algebra() const { return algebra_; }

    int phase_count() const override { return 2; }

    int lowest() const override
    {
        int low = p_.order() + 1;
        for_each_block_entry([&](const Jet& f) { low = std::min(low, nonlinear_part(f).lowest_degree()); });
        return low;
    }

    Scalar norm_squared(const Scalar& radius) const override
    {
        Scalar s = 0;
        for_each_block_entry([&](const Jet& f) { s += hermitian_norm_squared(nonlinear_part(f), radius); });
        return s;
    }

    std::optional<NormalizationObstruction> correct(int phase, int lo, int hi) override
    {
        const std::size_t n = p_.nvars();
        std::vector<Jet> shift(n, Jet(n, p_.order()));
        bool any = false;
        for (int d = std::max(lo, 2); d <= hi; ++d) {
            const Cochain r = phase == 0 ? ss_remainder(d) : sr_remainder(d);
            if (r.is_zero()) continue;
            auto solved = solve_coboundary(r);
            if (auto* obs = std::get_if<ObstructionClass>(&solved)) {
                return NormalizationObstruction{d, std::move(*obs), phi_};
            }
            const Cochain& sigma = std::get<Cochain>(solved);
            if (phase == 0) {
                for (std::size_t i = 0; i < problem_.acting.size(); ++i) {
                    shift[problem_.acting[i]] += extract_jet(sigma, i, 0, n, p_.order());
                }
            } else {
                for (std::size_t a = 0; a < problem_.passive.size(); ++a) {
                    shift[problem_.passive[a]] += extract_jet(sigma, 0, a, n, p_.order());
                }
            }
            any = true;
        }
        if (!any) return std::nullopt;
        std::vector<Jet> comps;
        for (std::size_t v = 0; v < n; ++v) comps.push_back(Jet::variable(n, p_.order(), v) - shift[v]);
        const CoordChange psi(std::move(comps));
        p_ = pushforward(p_, psi);
        phi_ = compose_change(phi_, psi);
        return std::nullopt;
    }

    // Degree-d part of {x_i, x_j} over acting pairs i < j.
    Cochain ss_remainder(int d)
    {
        const auto& module = ss_module(d);
        Cochain w(module, 2);
        if (d < 2) return w;
        const BasisIndex index(*module);
        const auto pairs = index_subsets(problem_.acting.size(), 2);
        for (std::size_t s = 0; s < pairs.size(); ++s) {
            add_jet(w, index, s, 0, p_(problem_.acting[pairs[s][0]], problem_.acting[pairs[s][1]]).homogeneous_part(d));
        }
        return w;
    }

    // Degree-d part of {x_i, y_a}.
    Cochain sr_remainder(int d)
    {
        const auto& module = sr_module(d);
        Cochain w(module, 1);
        if (d < 2) return w;
        const BasisIndex index(*module);
        for (std::size_t i = 0; i < problem_.acting.size(); ++i) {
            for (std::size_t a = 0; a < problem_.passive.size(); ++a) {
                add_jet(w, index, i, a, p_(problem_.acting[i], problem_.passive[a]).homogeneous_part(d));
            }
        }
        return w;
    }

 private:
    template <class F>
    void for_each_block_entry(F&& f) const
    {
        const auto& acting = problem_.acting;
        for (std::size_t i = 0; i < acting.size(); ++i) {
            for (std::size_t j = i + 1; j < acting.size(); ++j) f(p_(acting[i], acting[j]));
            for (auto y : problem_.passive) f(p_(acting[i], y));
        }
    }

    void build_algebra()
    {
        const std::size_t n = p_.nvars();
        const auto& acting = problem_.acting;
        const auto& passive = problem_.passive;
        const std::size_t p = acting.size();
        const std::size_t q = passive.size();
        Vector constants(p * p * p);
        std::vector<bool> is_acting(n, false);
        for (auto v : acting) is_acting[v] = true;
        for (std::size_t i = 0; i < p; ++i) {
            for (std::size_t j = 0; j < p; ++j) {
                const Jet& f = p_(acting[i], acting[j]);
                for (std::size_t v = 0; v < n; ++v) {
                    if (!is_acting[v] && sgn(linear_coeff(f, v)) != 0) {
                        throw std::invalid_argument("acting variables do not span a subalgebra of the linear part");
                    }
                }
                for (std::size_t k = 0; k < p; ++k) constants[(i * p + j) * p + k] = linear_coeff(f, acting[k]);
            }
        }
        algebra_ = LieAlgebra(p, std::move(constants));
        for (std::size_t i = 0; i < p; ++i) {
            Matrix r(n, n);
            for (std::size_t a = 0; a < n; ++a) {
                for (std::size_t k = 0; k < n; ++k) r(k, a) = linear_coeff(p_(acting[i], a), k);
            }
            rep_.push_back(std::move(r));
            Matrix t(q, q);
            for (std::size_t a = 0; a < q; ++a) {
                const Jet& f = p_(acting[i], passive[a]);
                for (std::size_t v = 0; v < n; ++v) {
                    if (is_acting[v] && sgn(linear_coeff(f, v)) != 0) {
                        throw std::invalid_argument("passive variables do not span an ideal of the linear part");
                    }
                }
                for (std::size_t b = 0; b < q; ++b) t(a, b) = linear_coeff(f, passive[b]);
            }
            twist_.push_back(std::move(t));
        }
    }

    int weight_of(std::size_t v) const { return problem_.fiber_weight.empty() ? 0 : problem_.fiber_weight[v]; }

    const std::shared_ptr<const GModule>& ss_module(int d)
    {
        auto& slot = ss_modules_[d];
        if (!slot) {
            const int w = problem_.acting.empty() ? 0 : weight_of(problem_.acting.front());
            slot = std::make_shared<const GModule>(twisted_polynomial_module(
                algebra_, p_.nvars(), rep_, {}, {graded_monomials(p_.nvars(), d, problem_.fiber_mask, w)}));
        }
        return slot;
    }

    const std::shared_ptr<const GModule>& sr_module(int d)
    {
        auto& slot = sr_modules_[d];
        if (!slot) {
            std::vector<std::vector<Monomial>> allowed;
            for (auto y : problem_.passive) {
                allowed.push_back(graded_monomials(p_.nvars(), d, problem_.fiber_mask, weight_of(y)));
            }
            slot = std::make_shared<const GModule>(
                twisted_polynomial_module(algebra_, p_.nvars(), rep_, twist_, allowed));
        }
        return slot;
    }

    PoissonJet p_;
    BlockProblem problem_;
    CoordChange phi_;
    LieAlgebra algebra_;
    std::vector<Matrix> rep_;
    std::vector<Matrix> twist_;
    std::map<int, std::shared_ptr<const GModule>> ss_modules_;
    std::map<int, std::shared_ptr<const GModule>> sr_modules_;
};

class ActionStepper : public Stepper {
 public:
    explicit ActionStepper(ActionJet rho)
        : rho_(std::move(rho)), phi_(CoordChange::identity(rho_.nvars(), rho_.order()))
    {
        for (std::size_t i = 0; i < rho_.algebra().dim(); ++i) {
            linear_.push_back(rho_.linear_matrix(i));
            rep_.push_back(linear_.back().transposed());
        }
    }

    const ActionJet& jet() const { return rho_; }
    const CoordChange& change() const { return phi_; }

    int phase_count() const override { return 1; }

    int lowest() const override
    {
        int low = rho_.order() + 1;
        for (std::size_t i = 0; i < rho_.algebra().dim(); ++i) {
            for (const auto& f : rho_.field(i)) low = std::min(low, nonlinear_part(f).lowest_degree());
        }
        return low;
    }

    Scalar norm_squared(const Scalar& radius) const override
    {
        Scalar s = 0;
        for (std::size_t i = 0; i < rho_.algebra().dim(); ++i) {
            for (const auto& f : rho_.field(i)) s += hermitian_norm_squared(nonlinear_part(f), radius);
        }
        return s;
    }

    std::optional<NormalizationObstruction> correct(int /*phase*/, int lo, int hi) override
    {
        const std::size_t m = rho_.nvars();
        std::vector<Jet> shift(m, Jet(m, rho_.order()));
        bool any = false;
        for (int d = std::max(lo, 2); d <= hi; ++d) {
            const Cochain r = remainder(d);
            if (r.is_zero()) continue;
            auto solved = solve_coboundary(r);
            if (auto* obs = std::get_if<ObstructionClass>(&solved)) {
                return NormalizationObstruction{d, std::move(*obs), phi_};
            }
            const Cochain& f = std::get<Cochain>(solved);
            for (std::size_t a = 0; a < m; ++a) shift[a] += extract_jet(f, 0, a, m, rho_.order());
            any = true;
        }
        if (!any) return std::nullopt;
        std::vector<Jet> comps;
        for (std::size_t a = 0; a < m; ++a) comps.push_back(Jet::variable(m, rho_.order(), a) - shift[a]);
        const CoordChange psi(std::move(comps));
        rho_ = pushforward_action(rho_, psi);
        phi_ = compose_change(phi_, psi);
        return std::nullopt;
    }

    Cochain remainder(int d)
    {
        const auto& module = module_for(d);
        Cochain w(module, 1);
        if (d < 2) return w;
        const BasisIndex index(*module);
        for (std::size_t i = 0; i < rho_.algebra().dim(); ++i) {
            for (std::size_t a = 0; a < rho_.nvars(); ++a) add_jet(w, index, i, a, rho_.field(i)[a].homogeneous_part(d));
        }
        return w;
    }

 private:
    const std::shared_ptr<const GModule>& module_for(int d)
    {
        auto& slot = modules_[d];
        if (!slot) {
            const std::vector<std::vector<Monomial>> allowed(rho_.nvars(), monomials_of_degree(rho_.nvars(), d));
            slot = std::make_shared<const GModule>(
                twisted_polynomial_module(rho_.algebra(), rho_.nvars(), rep_, linear_, allowed));
        }
        return slot;
    }

    ActionJet rho_;
    CoordChange phi_;
    std::vector<Matrix> linear_;
    std::vector<Matrix> rep_;
    std::map<int, std::shared_ptr<const GModule>> modules_;
};

BlockProblem full_problem(std::size_t n)
{
    BlockProblem problem;
    for (std::size_t v = 0; v < n; ++v) problem.acting.push_back(v);
    return problem;
}

void check_order(int order, int available)
{
    if (order < 1 || order > available) {
        throw std::invalid_argument("target order must lie between 1 and the truncation order of the input");
    }
}

}  // namespace

// ---------------------------------------------------------------------------

ActionJet::ActionJet(LieAlgebra algebra, std::vector<std::vector<Jet>> fields)
    : algebra_(std::move(algebra)), fields_(std::move(fields))
{
    if (fields_.size() != algebra_.dim()) throw std::invalid_argument("action needs one vector field per basis element");
    if (fields_.empty()) return;
    nvars_ = fields_.front().size();
    if (nvars_ == 0) throw std::invalid_argument("action vector fields need at least one component");
    order_ = fields_.front().front().order();
    for (const auto& v : fields_) {
        if (v.size() != nvars_) throw std::invalid_argument("action vector fields must share a dimension");
        for (const auto& f : v) {
            if (f.nvars() != nvars_ || f.order() != order_) {
                throw std::invalid_argument("action components must share variable count and order");
            }
            if (sgn(f.constant_term()) != 0) throw std::invalid_argument("action vector fields must vanish at the origin");
        }
    }
}

ActionJet ActionJet::linear(LieAlgebra algebra, const std::vector<Matrix>& matrices, int order)
{
    std::vector<std::vector<Jet>> fields;
    for (const auto& a : matrices) {
        const std::size_t m = a.rows();
        if (a.cols() != m) throw std::invalid_argument("linear action matrices must be square");
        std::vector<Jet> v;
        for (std::size_t r = 0; r < m; ++r) {
            Jet f(m, order);
            for (std::size_t c = 0; c < m; ++c) f.add_term(Monomial::unit(m, c), a(r, c));
            v.push_back(std::move(f));
        }
        fields.push_back(std::move(v));
    }
    return ActionJet(std::move(algebra), std::move(fields));
}

ActionJet ActionJet::coadjoint(const LieAlgebra& algebra, int order)
{
    const std::size_t n = algebra.dim();
    std::vector<Matrix> matrices;
    for (std::size_t i = 0; i < n; ++i) {
        Matrix a(n, n);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t k = 0; k < n; ++k) a(r, k) = algebra.c(i, r, k);
        }
        matrices.push_back(std::move(a));
    }
    return linear(algebra, matrices, order);
}

Matrix ActionJet::linear_matrix(std::size_t i) const
{
    Matrix a(nvars_, nvars_);
    for (std::size_t r = 0; r < nvars_; ++r) {
        for (std::size_t c = 0; c < nvars_; ++c) a(r, c) = linear_coeff(fields_[i][r], c);
    }
    return a;
}

ActionJet ActionJet::linear_part() const
{
    ActionJet out(*this);
    for (auto& v : out.fields_) {
        for (auto& f : v) f = f.homogeneous_part(1);
    }
    return out;
}

ActionJet ActionJet::truncated(int order) const
{
    ActionJet out(*this);
    out.order_ = order;
    for (auto& v : out.fields_) {
        for (auto& f : v) f = f.with_order(order);
    }
    return out;
}

bool ActionJet::is_linear() const { return *this == linear_part(); }

bool ActionJet::is_valid() const
{
    const std::size_t n = algebra_.dim();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto lhs = vector_field_bracket(fields_[i], fields_[j]);
            for (std::size_t a = 0; a < nvars_; ++a) {
                Jet rhs(nvars_, order_);
                for (std::size_t k = 0; k < n; ++k) {
                    if (sgn(algebra_.c(i, j, k)) != 0) rhs += fields_[k][a] * algebra_.c(i, j, k);
                }
                if (!(lhs[a] == rhs)) return false;
            }
        }
    }
    return true;
}

std::vector<Jet> vector_field_bracket(const std::vector<Jet>& v, const std::vector<Jet>& w)
{
    if (v.size() != w.size()) throw std::invalid_argument("vector field dimension mismatch");
    std::vector<Jet> out;
    for (std::size_t a = 0; a < v.size(); ++a) out.push_back(apply_vector_field(v, w[a]) - apply_vector_field(w, v[a]));
    return out;
}

ActionJet pushforward_action(const ActionJet& rho, const CoordChange& phi)
{
    if (phi.nvars() != rho.nvars() || phi.order() != rho.order()) {
        throw std::invalid_argument("pushforward_action: dimension or truncation mismatch");
    }
    if (phi.is_identity()) return rho;
    const CoordChange inv = invert_change(phi);
    Substitution sub(inv.components());
    std::vector<std::vector<Jet>> fields;
    for (std::size_t i = 0; i < rho.algebra().dim(); ++i) {
        std::vector<Jet> v;
        for (std::size_t a = 0; a < rho.nvars(); ++a) v.push_back(sub.apply(apply_vector_field(rho.field(i), phi[a])));
        fields.push_back(std::move(v));
    }
    return ActionJet(rho.algebra(), std::move(fields));
}

std::string to_string(Scheduler s) { return s == Scheduler::Degree ? "degree" : "doubling"; }

Scheduler parse_scheduler(const std::string& text)
{
    if (text == "degree") return Scheduler::Degree;
    if (text == "doubling") return Scheduler::Doubling;
    throw std::invalid_argument("unknown scheduler '" + text + "'");
}

Cochain poisson_remainder(const PoissonJet& p, int degree)
{
    if (degree < 1 || degree > p.order()) throw std::invalid_argument("remainder degree out of range");
    PoissonBlockStepper stepper(p, full_problem(p.nvars()));
    if (stepper.lowest() < degree) {
        throw PreconditionNotNormalized("bracket carries a remainder below degree " + std::to_string(degree));
    }
    return stepper.ss_remainder(degree);
}

Cochain action_remainder(const ActionJet& rho, int degree)
{
    if (degree < 1 || degree > rho.order()) throw std::invalid_argument("remainder degree out of range");
    ActionStepper stepper(rho);
    if (stepper.lowest() < degree) {
        throw PreconditionNotNormalized("action carries a remainder below degree " + std::to_string(degree));
    }
    return stepper.remainder(degree);
}

BlockNormalization normalize_blocks(const PoissonJet& p, const BlockProblem& problem, int order,
                                    const NormalizeOptions& options)
{
    check_order(order, p.order());
    PoissonBlockStepper stepper(p.truncated(order), problem);
    ScheduleOutcome run = run_schedule(stepper, order, options);
    return BlockNormalization{stepper.change(), stepper.jet(), std::move(run.trace), std::move(run.obstruction)};
}

PoissonLinearizeResult linearize_poisson(const PoissonJet& p, int order, const NormalizeOptions& options)
{
    BlockNormalization run = normalize_blocks(p, full_problem(p.nvars()), order, options);
    PoissonLinearizeResult out;
    out.trace = std::move(run.trace);
    if (run.obstruction) out.outcome = std::move(*run.obstruction);
    else out.outcome = PoissonLinearization{std::move(run.change), std::move(run.normal_form)};
    return out;
}

ActionLinearizeResult linearize_action(const ActionJet& rho, int order, const NormalizeOptions& options)
{
    check_order(order, rho.order());
    ActionStepper stepper(rho.truncated(order));
    ScheduleOutcome run = run_schedule(stepper, order, options);
    ActionLinearizeResult out;
    out.trace = std::move(run.trace);
    if (run.obstruction) out.outcome = std::move(*run.obstruction);
    else out.outcome = ActionLinearization{stepper.change(), stepper.jet()};
    return out;
}

PoissonJet LeviNormalForm::reconstruct() const
{
    const std::size_t p = s_dim();
    const std::size_t q = r_dim();
    const std::size_t n = p + q;
    PoissonJet out(n, order);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i + 1; j < p; ++j) {
            Jet f(n, order);
            for (std::size_t k = 0; k < p; ++k) f.add_term(Monomial::unit(n, k), ss_constants[(i * p + j) * p + k]);
            out.set(i, j, f);
        }
        for (std::size_t a = 0; a < q; ++a) {
            Jet f(n, order);
            for (std::size_t b = 0; b < q; ++b) f.add_term(Monomial::unit(n, p + b), sr_constants[(i * q + a) * q + b]);
            out.set(i, p + a, f);
        }
    }
    const auto pairs = index_subsets(q, 2);
    for (std::size_t s = 0; s < pairs.size(); ++s) out.set(p + pairs[s][0], p + pairs[s][1], residual[s]);
    return out;
}

LeviDecomposition levi_decompose(const PoissonJet& p, const LeviSplit& split, int order,
                                 const NormalizeOptions& options)
{
    check_order(order, p.order());
    const std::size_t n = p.nvars();
    if (!(split.parent() == isotropy_from_linear_part(p))) {
        throw SplitNotCertified("Levi split does not belong to the isotropy algebra of the bracket");
    }
    const std::size_t ps = split.s_basis().size();
    const std::size_t q = split.r_basis().size();

    LeviDecomposition out;
    LeviNormalForm& nf = out.normal_form;
    nf.split = split;
    nf.order = order;
    nf.ss_constants = split.s_algebra().constants();
    PoissonJet current = p.truncated(order);
    CoordChange change = CoordChange::identity(n, order);
    if (ps > 0) {
        Matrix rows(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            const Vector& v = i < ps ? split.s_basis()[i] : split.r_basis()[i - ps];
            for (std::size_t j = 0; j < n; ++j) rows(i, j) = v[j];
        }
        change = CoordChange::linear(rows, order);
        current = pushforward(current, change);
        BlockProblem problem;
        for (std::size_t v = 0; v < n; ++v) (v < ps ? problem.acting : problem.passive).push_back(v);
        BlockNormalization run = normalize_blocks(current, problem, order, options);
        if (run.obstruction) throw std::logic_error("levi_decompose: obstruction for a semisimple Levi factor");
        change = compose_change(change, run.change);
        current = std::move(run.normal_form);
        out.trace = std::move(run.trace);
    } else {
        out.trace.scheduler = options.scheduler;
        out.trace.radius = options.radius;
        out.trace.order = order;
    }
    out.change = std::move(change);

    nf.sr_constants.assign(ps * q * q, Scalar(0));
    for (std::size_t i = 0; i < ps; ++i) {
        for (std::size_t a = 0; a < q; ++a) {
            for (std::size_t b = 0; b < q; ++b) {
                nf.sr_constants[(i * q + a) * q + b] = linear_coeff(current(i, ps + a), ps + b);
            }
        }
    }
    for (const auto& pair : index_subsets(q, 2)) nf.residual.push_back(current(ps + pair[0], ps + pair[1]));
    return out;
}

Scalar hermitian_norm_squared(const Jet& f, const Scalar& radius)
{
    if (sgn(radius) <= 0) throw std::invalid_argument("radius must be positive");
    const unsigned long n = f.nvars();
    const Scalar r2 = radius * radius;
    Scalar total = 0;
    for (const auto& [m, c] : f.terms()) {
        mpz_class num;
        mpz_class den;
        mpz_fac_ui(num.get_mpz_t(), n);
        mpz_fac_ui(den.get_mpz_t(), n + static_cast<unsigned long>(m.degree()));
        for (std::size_t v = 0; v < m.size(); ++v) {
            mpz_class fv;
            mpz_fac_ui(fv.get_mpz_t(), static_cast<unsigned long>(m[v]));
            num *= fv;
        }
        Scalar w(num, den);
        w.canonicalize();
        Scalar rp = 1;
        for (int k = 0; k < m.degree(); ++k) rp *= r2;
        total += w * c * c * rp;
    }
    return total;
}

double hermitian_norm(const Jet& f, const Scalar& radius) { return std::sqrt(to_double(hermitian_norm_squared(f, radius))); }

ConvergenceReport convergence_report(const IterationTrace& trace)
{
    ConvergenceReport report;
    report.scheduler = trace.scheduler;
    report.radius = trace.radius;
    int previous = 0;
    for (const auto& step : trace.steps) {
        ConvergenceEntry e;
        e.index = step.index;
        e.lowest_degree = step.lowest_before;
        e.norm = step.norm_before;
        if (step.norm_before > 0) e.ratio = step.norm_after / (step.norm_before * step.norm_before);
        report.entries.push_back(e);

        if (trace.scheduler == Scheduler::Doubling) {
            const long bound = 1L << step.index;
            if (step.lowest_before < bound) report.structural_law_holds = false;
            if (!step.obstruction && step.lowest_after < std::min<long>(2 * bound, trace.order + 1L)) {
                report.structural_law_holds = false;
            }
        } else {
            const int d = step.degrees.empty() ? 0 : step.degrees.front();
            if (previous != 0 && d != previous + 1) report.structural_law_holds = false;
            if (!step.obstruction && step.lowest_after <= d) report.structural_law_holds = false;
            previous = d;
        }
    }
    return report;
}

}  // namespace plin
