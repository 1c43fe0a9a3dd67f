#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "plin/liealg.hpp"
#include "plin/normalform.hpp"
#include "plin/poisson.hpp"

namespace plin {

// Lie algebroid of rank r over n base coordinates near a fixed point:
//   [e_i, e_j] = structure(i, j, k) e_k,  #e_i = anchor(i, l) d/dx_l.
// Structure functions are truncated at N, anchor components at N + 1, so that
// the dual Poisson structure is consistent through total degree N + 1.
class AlgebroidJet {
 public:
    AlgebroidJet() = default;
    // structure[(i*r + j)*r + k] and anchor[i*n + l], all in n variables.
    // Validates shapes, antisymmetry and a vanishing anchor at the origin.
    AlgebroidJet(std::size_t base_dim, std::size_t rank, int order, std::vector<Jet> structure,
                 std::vector<Jet> anchor);

    // The action algebroid g x R^m of an action by vector fields.
    static AlgebroidJet from_action(const ActionJet& rho);

    std::size_t base_dim() const { return base_dim_; }
    std::size_t rank() const { return rank_; }
    int order() const { return order_; }
    const Jet& structure(std::size_t i, std::size_t j, std::size_t k) const
    {
        return structure_[(i * rank_ + j) * rank_ + k];
    }
    const Jet& anchor(std::size_t i, std::size_t l) const { return anchor_[i * base_dim_ + l]; }

    // Constants of the structure functions at the fixed point.
    LieAlgebra isotropy() const;
    // Matrix (k, j) = coefficient of x_j in anchor(i, k).
    Matrix linear_anchor(std::size_t i) const;
    // Algebroid axioms through truncation, via the dual Poisson structure.
    bool is_valid() const;

    friend bool operator==(const AlgebroidJet& a, const AlgebroidJet& b) = default;

 private:
    std::size_t base_dim_ = 0;
    std::size_t rank_ = 0;
    int order_ = 0;
    std::vector<Jet> structure_;
    std::vector<Jet> anchor_;
};

// Constant structure functions and linear anchor #e_i = anchor[i] x.
struct LinearAlgebroid {
    LieAlgebra algebra;
    std::vector<Matrix> anchor;

    // sum_k c(i, j, k) B_k = B_j B_i - B_i B_j: the anchor is a Lie algebra
    // morphism into linear vector fields.
    bool is_valid() const;
    AlgebroidJet to_jet(int order) const;
};

// Fiberwise-linear bivector on (x_1..x_n, e_1..e_r), truncated at N + 1:
//   {e_i, e_j} = [e_i, e_j],  {e_i, x_l} = #e_i(x_l),  {x_k, x_l} = 0.
PoissonJet algebroid_to_poisson(const AlgebroidJet& a);

// Inverse of algebroid_to_poisson; the first base_dim variables are the base.
// Throws std::invalid_argument when p is not fiberwise linear.
AlgebroidJet poisson_to_algebroid(const PoissonJet& p, std::size_t base_dim);

struct FiberwiseCheck {
    bool holds = true;
    // First violated condition, empty when holds.
    std::string violation;

    explicit operator bool() const { return holds; }
};

// (i) fiber-linear brackets are fiber linear, (ii) fiber-linear with basic is
// basic, (iii) basic brackets vanish. The first base_dim variables are basic.
FiberwiseCheck fiberwise_linearity_check(const PoissonJet& p, std::size_t base_dim);

// Base components free of fiber variables; fiber components linear in them.
bool preserves_fiber_grading(const CoordChange& phi, std::size_t base_dim);

struct AlgebroidLinearization {
    // Change of (x, e) coordinates; preserves the fiber grading.
    CoordChange change;
    LinearAlgebroid normal_form;
};

struct AlgebroidLinearizeResult {
    std::variant<AlgebroidLinearization, NormalizationObstruction> outcome;
    IterationTrace trace;

    bool succeeded() const { return outcome.index() == 0; }
};

AlgebroidLinearizeResult linearize_algebroid(const AlgebroidJet& a, int order, const NormalizeOptions& options = {});

struct AlgebroidLevi {
    // Frame (e over s, then f over r) and coordinates x.
    CoordChange change;
    // In the new frame: [e_i, e_j] = c e_k, [e_i, f_a] = a f_b, #e_i linear.
    AlgebroidJet normal_form;
    LeviSplit split;
    IterationTrace trace;
};

// Throws SplitNotCertified when the split does not belong to the isotropy.
AlgebroidLevi levi_algebroid(const AlgebroidJet& a, const LeviSplit& split, int order,
                             const NormalizeOptions& options = {});

}  // namespace plin
