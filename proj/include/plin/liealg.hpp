#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "plin/linalg.hpp"
#include "plin/poisson.hpp"

namespace plin {

// Finite-dimensional Lie algebra over Q given by structure constants
// [X_i, X_j] = sum_k c(i, j, k) X_k.
class LieAlgebra {
 public:
    LieAlgebra() = default;
    // Validates antisymmetry and the Jacobi identity; throws std::invalid_argument.
    LieAlgebra(std::size_t dim, Vector constants);

    static LieAlgebra abelian(std::size_t dim);

    std::size_t dim() const { return dim_; }
    const Scalar& c(std::size_t i, std::size_t j, std::size_t k) const
    {
        return constants_[(i * dim_ + j) * dim_ + k];
    }
    const Vector& constants() const { return constants_; }

    // Bracket of two elements given by coordinate vectors.
    Vector bracket(const Vector& a, const Vector& b) const;
    // Matrix of ad_{X_i}: column j holds the coordinates of [X_i, X_j].
    Matrix ad(std::size_t i) const;
    bool is_abelian() const;

    friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) = default;

 private:
    std::size_t dim_ = 0;
    Vector constants_;
};

// Reads c(i, j, k) from the degree-1 part of P(i, j).
LieAlgebra isotropy_from_linear_part(const PoissonJet& p);

// Inverse of isotropy_from_linear_part.
PoissonJet linear_poisson(const LieAlgebra& g, int order);

// K(X_i, X_j) = tr(ad_i ad_j).
Matrix killing_form(const LieAlgebra& g);
bool is_semisimple(const LieAlgebra& g);
// Killing form negative definite, tested by the signs of the leading principal
// minors of -K.
bool is_compact_type(const LieAlgebra& g);

struct KillingSignature {
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t zero = 0;
};
KillingSignature killing_signature(const LieAlgebra& g);

// Basis of [g, g] in reduced row-echelon form.
std::vector<Vector> derived_algebra(const LieAlgebra& g);

// Killing-orthogonal complement of [g, g] (Cartan's criterion), as an exact
// kernel basis.
std::vector<Vector> radical(const LieAlgebra& g);

// Structure constants of the subalgebra spanned by `basis` in that basis.
// Throws std::invalid_argument if the span is not closed under the bracket.
LieAlgebra restrict_to(const LieAlgebra& g, const std::vector<Vector>& basis);

enum class LeviViolation { NotDirectSum, SNotSubalgebra, SNotSemisimple, RNotInvariant };

std::string to_string(LeviViolation v);

class LeviError : public std::runtime_error {
 public:
    LeviError(LeviViolation v, const std::string& what) : std::runtime_error(what), violation_(v) {}
    LeviViolation violation() const { return violation_; }

 private:
    LeviViolation violation_;
};

// A certified decomposition g = s + r with s semisimple and [g, r] in r.
// Only verify_levi_split() and levi_lift() produce instances.
class LeviSplit {
 public:
    const LieAlgebra& parent() const { return parent_; }
    const std::vector<Vector>& s_basis() const { return s_; }
    const std::vector<Vector>& r_basis() const { return r_; }
    // Structure constants of s in the s basis.
    const LieAlgebra& s_algebra() const { return s_algebra_; }

 private:
    friend LeviSplit verify_levi_split(const LieAlgebra&, std::vector<Vector>, std::vector<Vector>);

    LieAlgebra parent_;
    std::vector<Vector> s_;
    std::vector<Vector> r_;
    LieAlgebra s_algebra_;
};

// Throws LeviError naming the first failed condition.
LeviSplit verify_levi_split(const LieAlgebra& g, std::vector<Vector> s, std::vector<Vector> r);

// Computes the radical and lifts a Levi subalgebra through the derived series of
// the radical, one second-cohomology solve per layer.
LeviSplit levi_lift(const LieAlgebra& g);

}  // namespace plin
