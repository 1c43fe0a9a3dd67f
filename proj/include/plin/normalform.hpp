#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "plin/cohomology.hpp"
#include "plin/liealg.hpp"
#include "plin/poisson.hpp"

namespace plin {

// Lie algebra morphism X_i -> V_i into formal vector fields on m variables:
// V_i = sum_a field(i)[a] d_a, each component vanishing at the origin.
class ActionJet {
 public:
    ActionJet() = default;
    ActionJet(LieAlgebra algebra, std::vector<std::vector<Jet>> fields);

    // V_i^a = sum_b matrices[i](a, b) x_b.
    static ActionJet linear(LieAlgebra algebra, const std::vector<Matrix>& matrices, int order);
    // X_i acting by {x_i, .} for a linear Poisson structure.
    static ActionJet coadjoint(const LieAlgebra& algebra, int order);

    const LieAlgebra& algebra() const { return algebra_; }
    std::size_t nvars() const { return nvars_; }
    int order() const { return order_; }
    const std::vector<Jet>& field(std::size_t i) const { return fields_[i]; }

    // Matrix (a, b) = coefficient of x_b in V_i^a.
    Matrix linear_matrix(std::size_t i) const;
    ActionJet linear_part() const;
    ActionJet truncated(int order) const;
    bool is_linear() const;
    // [V_i, V_j] = sum_k c(i, j, k) V_k through the truncation order.
    bool is_valid() const;

    friend bool operator==(const ActionJet& a, const ActionJet& b) = default;

 private:
    LieAlgebra algebra_;
    std::size_t nvars_ = 0;
    int order_ = 0;
    std::vector<std::vector<Jet>> fields_;
};

// Commutator of vector fields, componentwise.
std::vector<Jet> vector_field_bracket(const std::vector<Jet>& v, const std::vector<Jet>& w);

// Fields in the coordinates y = phi(x): V'^a = (V(phi_a)) o phi^{-1}.
ActionJet pushforward_action(const ActionJet& rho, const CoordChange& phi);

enum class Scheduler { Degree, Doubling };

std::string to_string(Scheduler s);
// Accepts "degree" and "doubling".
Scheduler parse_scheduler(const std::string& text);

struct StepRecord {
    int index = 0;
    std::vector<int> degrees;
    int lowest_before = 0;
    int lowest_after = 0;
    double norm_before = 0.0;
    double norm_after = 0.0;
    bool obstruction = false;
};

// Degrees treated by successive steps strictly increase; after a successful
// step lowest_after exceeds every treated degree.
struct IterationTrace {
    Scheduler scheduler = Scheduler::Doubling;
    double radius = 1.0;
    // Truncation order of the run.
    int order = 0;
    std::vector<StepRecord> steps;
};

struct NormalizeOptions {
    Scheduler scheduler = Scheduler::Doubling;
    // Radius of the Hermitian metric used for trace norms.
    double radius = 1.0;
};

class PreconditionNotNormalized : public std::invalid_argument {
 public:
    using std::invalid_argument::invalid_argument;
};

class SplitNotCertified : public std::invalid_argument {
 public:
    using std::invalid_argument::invalid_argument;
};

// First degree at which the normalization met a nonzero cohomology class.
// partial_change is the accumulated change up to that point.
struct NormalizationObstruction {
    int degree = 0;
    ObstructionClass obstruction;
    CoordChange partial_change;
};

// Degree-d part of P(i, j) - sum_k c(i, j, k) x_k as a 2-cochain of the
// isotropy algebra in the degree-d polynomial module. Throws
// PreconditionNotNormalized if a degree in 2..d-1 still carries a remainder.
Cochain poisson_remainder(const PoissonJet& p, int degree);

// Degree-d part of the V_i as a 1-cochain in the module of degree-d vector
// fields. Throws PreconditionNotNormalized as above.
Cochain action_remainder(const ActionJet& rho, int degree);

struct PoissonLinearization {
    CoordChange change;
    PoissonJet normal_form;
};

struct PoissonLinearizeResult {
    std::variant<PoissonLinearization, NormalizationObstruction> outcome;
    IterationTrace trace;

    bool succeeded() const { return outcome.index() == 0; }
};

// Coordinates in which P is linear through `order` (at most p.order()).
PoissonLinearizeResult linearize_poisson(const PoissonJet& p, int order, const NormalizeOptions& options = {});

struct ActionLinearization {
    CoordChange change;
    ActionJet normal_form;
};

struct ActionLinearizeResult {
    std::variant<ActionLinearization, NormalizationObstruction> outcome;
    IterationTrace trace;

    bool succeeded() const { return outcome.index() == 0; }
};

ActionLinearizeResult linearize_action(const ActionJet& rho, int order, const NormalizeOptions& options = {});

// Brackets in coordinates (x_0..x_{p-1}, y_0..y_{q-1}):
//   {x_i, x_j} = c(i, j, k) x_k,  {x_i, y_a} = a(i, a, b) y_b,
// with the {y_a, y_b} left arbitrary.
struct LeviNormalForm {
    // c(i, j, k) at (i*p + j)*p + k.
    Vector ss_constants;
    // a(i, a, b) at (i*q + a)*q + b.
    Vector sr_constants;
    // {y_a, y_b} for a < b in lexicographic order, in all p + q variables.
    std::vector<Jet> residual;
    LeviSplit split;
    int order = 0;

    std::size_t s_dim() const { return split.s_basis().size(); }
    std::size_t r_dim() const { return split.r_basis().size(); }
    PoissonJet reconstruct() const;
};

struct LeviDecomposition {
    CoordChange change;
    LeviNormalForm normal_form;
    IterationTrace trace;
};

// Throws SplitNotCertified when the split does not belong to the isotropy
// algebra of p.
LeviDecomposition levi_decompose(const PoissonJet& p, const LeviSplit& split, int order,
                                 const NormalizeOptions& options = {});

// Normalization of the brackets of the `acting` variables among themselves
// (to their linear part) and with the `passive` variables (to their linear
// part, linear in the passive variables). Brackets among passive variables
// are left alone. With a nonempty `fiber_mask`, corrections of variable v only
// use monomials whose degree in the masked variables equals fiber_weight[v].
struct BlockProblem {
    std::vector<std::size_t> acting;
    std::vector<std::size_t> passive;
    std::vector<bool> fiber_mask;
    std::vector<int> fiber_weight;
};

struct BlockNormalization {
    CoordChange change;
    PoissonJet normal_form;
    IterationTrace trace;
    std::optional<NormalizationObstruction> obstruction;
};

BlockNormalization normalize_blocks(const PoissonJet& p, const BlockProblem& problem, int order,
                                    const NormalizeOptions& options = {});

// sqrt(sum_alpha alpha! n! / (|alpha| + n)! a_alpha^2 radius^(2|alpha|)), n =
// f.nvars(). The sum is exact; only the square root is taken in binary64.
// Throws std::invalid_argument for radius <= 0.
double hermitian_norm(const Jet& f, const Scalar& radius);
Scalar hermitian_norm_squared(const Jet& f, const Scalar& radius);

struct ConvergenceEntry {
    int index = 0;
    int lowest_degree = 0;
    double norm = 0.0;
    // norm_after / norm_before^2 of the step; absent when norm_before is 0.
    std::optional<double> ratio;
};

struct ConvergenceReport {
    Scheduler scheduler = Scheduler::Doubling;
    double radius = 1.0;
    std::vector<ConvergenceEntry> entries;
    // Doubling: lowest degree before step nu is >= 2^nu. Degree: the treated
    // degree advances by one per step.
    bool structural_law_holds = true;
};

ConvergenceReport convergence_report(const IterationTrace& trace);

}  // namespace plin
