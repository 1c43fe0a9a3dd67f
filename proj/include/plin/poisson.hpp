#pragma once

#include <cstddef>
#include <vector>

#include "plin/linalg.hpp"
#include "plin/polynomial.hpp"

namespace plin {

// Formal change of coordinates y = phi(x): m component jets in m variables,
// vanishing at the origin, with invertible linear part.
//
// Composition convention: compose_change(first, second) is the change
// x -> second(first(x)), i.e. apply `first`, then `second`. Under this
// convention pushforward is a functor:
//   pushforward(P, compose_change(first, second))
//     == pushforward(pushforward(P, first), second).
class CoordChange {
 public:
    CoordChange() = default;
    explicit CoordChange(std::vector<Jet> components);

    static CoordChange identity(std::size_t nvars, int order);
    // Linear change y_i = sum_j rows(i, j) x_j.
    static CoordChange linear(const Matrix& rows, int order);

    std::size_t nvars() const { return components_.size(); }
    int order() const { return order_; }
    const std::vector<Jet>& components() const { return components_; }
    const Jet& operator[](std::size_t i) const { return components_[i]; }

    // Row i holds the coefficients of x_j in component i.
    Matrix linear_part() const;
    bool is_identity() const;

    friend bool operator==(const CoordChange& a, const CoordChange& b)
    {
        return a.components_ == b.components_;
    }

 private:
    std::vector<Jet> components_;
    int order_ = 0;
};

CoordChange compose_change(const CoordChange& first, const CoordChange& second);

// Exact inverse mod degree > order, built one degree at a time after inverting
// the linear part. Throws std::invalid_argument on a singular linear part.
CoordChange invert_change(const CoordChange& phi);

// Antisymmetric matrix of jets P(i, j) = {x_i, x_j}, vanishing at the origin.
// Construction enforces shape, antisymmetry and vanishing; the Jacobi identity
// is checked separately by is_poisson() so that invalid candidates can still be
// inspected with jacobiator().
class PoissonJet {
 public:
    PoissonJet() = default;
    // Zero bivector.
    PoissonJet(std::size_t nvars, int order);
    // Full matrix of entries (row-major, nvars*nvars).
    PoissonJet(std::size_t nvars, int order, std::vector<Jet> entries);

    // Linear bivector P(i, j) = sum_k c(i, j, k) x_k from structure constants
    // stored as c[(i*n + j)*n + k].
    static PoissonJet linear(std::size_t nvars, int order, const Vector& constants);

    std::size_t nvars() const { return nvars_; }
    int order() const { return order_; }
    const Jet& operator()(std::size_t i, std::size_t j) const { return entries_[i * nvars_ + j]; }

    // Sets P(i, j) and P(j, i) = -value.
    void set(std::size_t i, std::size_t j, const Jet& value);

    // Degree-1 part only.
    PoissonJet linear_part() const;
    PoissonJet truncated(int order) const;
    bool is_linear() const;
    bool is_poisson() const;

    friend bool operator==(const PoissonJet& a, const PoissonJet& b) = default;

 private:
    std::size_t nvars_ = 0;
    int order_ = 0;
    std::vector<Jet> entries_;
};

// sum_{i,j} P(i, j) d_i f d_j g, truncated at the common order.
Jet poisson_bracket(const Jet& f, const Jet& g, const PoissonJet& p);

// Components J(i,j,k) for i<j<k in lexicographic order, each truncated at the
// order of P. A truncated bivector is Poisson iff all of them vanish.
std::vector<Jet> jacobiator(const PoissonJet& p);

// Bivector in the coordinates y = phi(x):
//   P'(i, j)(y) = (d_a phi_i d_b phi_j P(a, b)) o phi^{-1}.
PoissonJet pushforward(const PoissonJet& p, const CoordChange& phi);

// Polynomial 1-form sum_i a_i dx_i.
class PolyOneForm {
 public:
    PolyOneForm() = default;
    PolyOneForm(std::size_t nvars, int order);
    explicit PolyOneForm(std::vector<Jet> coefficients);

    std::size_t nvars() const { return coeffs_.size(); }
    int order() const { return order_; }
    const Jet& operator[](std::size_t i) const { return coeffs_[i]; }
    Jet& operator[](std::size_t i) { return coeffs_[i]; }
    const std::vector<Jet>& coefficients() const { return coeffs_; }

    PolyOneForm& operator+=(const PolyOneForm& other);
    PolyOneForm& operator-=(const PolyOneForm& other);
    friend PolyOneForm operator+(PolyOneForm a, const PolyOneForm& b) { return a += b; }
    friend PolyOneForm operator-(PolyOneForm a, const PolyOneForm& b) { return a -= b; }
    // Multiplication by a function.
    friend PolyOneForm operator*(const Jet& f, const PolyOneForm& a);
    friend bool operator==(const PolyOneForm& a, const PolyOneForm& b) = default;

 private:
    std::vector<Jet> coeffs_;
    int order_ = 0;
};

PolyOneForm exterior_derivative(const Jet& f);

// Contraction by P: (#a)^j = sum_i a_i P(i, j), so that #(df) g = {f, g}.
std::vector<Jet> sharp(const PolyOneForm& a, const PoissonJet& p);

// Vector field applied to a function.
Jet apply_vector_field(const std::vector<Jet>& v, const Jet& f);

PolyOneForm lie_derivative(const std::vector<Jet>& v, const PolyOneForm& b);

// [a, b] = L_{#a} b - L_{#b} a - d P(a, b).
PolyOneForm koszul_bracket(const PolyOneForm& a, const PolyOneForm& b, const PoissonJet& p);

}  // namespace plin
