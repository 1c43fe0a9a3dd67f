#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "plin/liealg.hpp"
#include "plin/linalg.hpp"
#include "plin/polynomial.hpp"

namespace plin {

// Basis element of a module of polynomial tuples: `monomial` in slot `component`.
struct PolynomialBasisElement {
    std::size_t component = 0;
    Monomial monomial;
};

// Finite-dimensional representation of a Lie algebra: action(i) is the matrix
// of X_i, column b holding the coordinates of X_i . v_b.
class GModule {
 public:
    GModule() = default;
    // Throws std::invalid_argument unless rho([X_i, X_j]) = [rho(X_i), rho(X_j)].
    GModule(LieAlgebra algebra, std::vector<Matrix> action, std::vector<std::string> labels = {},
            std::vector<PolynomialBasisElement> polynomial_basis = {});

    const LieAlgebra& algebra() const { return algebra_; }
    std::size_t dim() const { return dim_; }
    const Matrix& action(std::size_t i) const { return action_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }
    // Empty unless the module was built from polynomials.
    const std::vector<PolynomialBasisElement>& polynomial_basis() const { return polynomial_basis_; }

 private:
    LieAlgebra algebra_;
    std::size_t dim_ = 0;
    std::vector<Matrix> action_;
    std::vector<std::string> labels_;
    std::vector<PolynomialBasisElement> polynomial_basis_;
};

GModule trivial_module(const LieAlgebra& g, std::size_t dim);
GModule adjoint_module(const LieAlgebra& g);

// Homogeneous degree-d polynomials in m variables with the derivation action
//   X_i . f = sum_{j,k} rep[i](k, j) x_k d_j f,
// i.e. rep[i] is the action on linear forms. Basis in graded-lex order.
GModule induced_polynomial_module(const LieAlgebra& g, std::size_t m, const std::vector<Matrix>& rep, int degree);
// Direct sum of the degree lo..hi pieces.
GModule induced_polynomial_module(const LieAlgebra& g, std::size_t m, const std::vector<Matrix>& rep, int lo,
                                  int hi);

// Tuples (f_0, ..., f_{q-1}) with f_a supported on allowed[a], acted on by
//   (X_i . f)_a = D_i f_a - sum_b twist[i](a, b) f_b,
// with D_i the derivation above. An empty twist vector means zero twist.
// Throws std::invalid_argument if the span of `allowed` is not invariant.
GModule twisted_polynomial_module(const LieAlgebra& g, std::size_t m, const std::vector<Matrix>& rep,
                                  const std::vector<Matrix>& twist,
                                  const std::vector<std::vector<Monomial>>& allowed);

// Strictly increasing r-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> index_subsets(std::size_t n, std::size_t r);

// Alternating r-cochain stored on increasing index subsets: coefficient of
// module basis b at subset s is coefficients()[s * dim + b].
class Cochain {
 public:
    Cochain() = default;
    Cochain(std::shared_ptr<const GModule> module, int degree);
    Cochain(std::shared_ptr<const GModule> module, int degree, Vector coefficients);

    int degree() const { return degree_; }
    const GModule& module() const { return *module_; }
    const std::shared_ptr<const GModule>& module_ptr() const { return module_; }
    std::size_t subset_count() const { return subset_count_; }
    const Vector& coefficients() const { return coeffs_; }

    Scalar& at(std::size_t subset, std::size_t basis) { return coeffs_[subset * module_->dim() + basis]; }
    const Scalar& at(std::size_t subset, std::size_t basis) const
    {
        return coeffs_[subset * module_->dim() + basis];
    }
    bool is_zero() const { return plin::is_zero(coeffs_); }

    friend bool operator==(const Cochain& a, const Cochain& b)
    {
        return a.module_ == b.module_ && a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
    }

 private:
    std::shared_ptr<const GModule> module_;
    int degree_ = 0;
    std::size_t subset_count_ = 0;
    Vector coeffs_;
};

// Matrix of d: C^r -> C^{r+1} in the subset-major bases.
Matrix differential_matrix(const GModule& module, int r);

// dw(X_0..X_r) = sum_i (-1)^i X_i . w(..X_i^..)
//             + sum_{i<j} (-1)^{i+j} w([X_i, X_j], ..X_i^..X_j^..)
Cochain ce_differential(const Cochain& w);
bool is_cocycle(const Cochain& w);

class InputNotCocycle : public std::invalid_argument {
 public:
    using std::invalid_argument::invalid_argument;
};

// Certificate that R is not a coboundary: functional(d sigma) = 0 for every
// (r-1)-cochain sigma, and functional(R) != 0.
struct ObstructionClass {
    Cochain remainder;
    Vector functional;
    std::size_t cohomology_dim = 0;

    bool verify() const;
};

using CoboundarySolution = std::variant<Cochain, ObstructionClass>;

// Solves d sigma = R for R of degree >= 1. The primitive is the reduced
// row-echelon solution with free variables zero. Throws InputNotCocycle.
CoboundarySolution solve_coboundary(const Cochain& r);

// dim ker d_r - rank d_{r-1}.
std::size_t cohomology_dimension(const GModule& module, int r);

// Operator norm of the minimal-norm right inverse of d_{r-1} on its image,
// in the weighted norms sum_b w_b |c_b|^2 on every subset slot. Zero for a
// zero differential. Computed in binary64.
double homotopy_bound_estimate(const GModule& module, int r, std::span<const double> weights);

// alpha! n! / (|alpha| + n)! radius^(2|alpha|) per polynomial basis element,
// n the number of variables. Throws std::invalid_argument for a module without
// a polynomial basis or radius <= 0.
std::vector<double> hermitian_weights(const GModule& module, double radius);

}  // namespace plin
