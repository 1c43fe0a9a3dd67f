#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "plin/scalar.hpp"

namespace plin {

// Exponent vector over a fixed number of variables (at most kMaxVars).
class Monomial {
 public:
    static constexpr std::size_t kMaxVars = 16;

    Monomial() = default;
    explicit Monomial(std::size_t nvars);
    Monomial(std::initializer_list<int> exponents);
    explicit Monomial(std::span<const int> exponents);

    static Monomial unit(std::size_t nvars, std::size_t var);

    std::size_t size() const { return nvars_; }
    int degree() const { return degree_; }
    int operator[](std::size_t i) const { return exps_[i]; }
    void set(std::size_t i, int e);

    Monomial operator*(const Monomial& other) const;
    // Requires (*this)[var] > 0.
    Monomial lowered(std::size_t var) const;

    // Exponent sum over the variables flagged in `mask`.
    int partial_degree(std::span<const bool> mask) const;

    friend bool operator==(const Monomial& a, const Monomial& b)
    {
        return a.nvars_ == b.nvars_ && a.exps_ == b.exps_;
    }

 private:
    std::array<std::uint8_t, kMaxVars> exps_{};
    std::uint8_t nvars_ = 0;
    std::uint16_t degree_ = 0;
};

// Graded-lexicographic order: lower total degree first; within a degree the
// monomial with the larger exponent in the earliest variable comes first
// (x^2 < x*y < y^2 in iteration order).
struct GradedLex {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

// All monomials of exactly degree d in n variables, in graded-lex order.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, int degree);

// Sparse polynomial over the rationals, truncated at `order`: all monomials of
// degree > order are dropped on insertion.
class Jet {
 public:
    using Terms = std::map<Monomial, Scalar, GradedLex>;

    Jet() = default;
    Jet(std::size_t nvars, int order);

    static Jet constant(std::size_t nvars, int order, const Scalar& c);
    static Jet variable(std::size_t nvars, int order, std::size_t var);
    static Jet term(std::size_t nvars, int order, const Monomial& m, const Scalar& c);

    std::size_t nvars() const { return nvars_; }
    int order() const { return order_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Scalar coeff(const Monomial& m) const;
    Scalar constant_term() const;
    // Smallest degree carrying a nonzero coefficient; order()+1 for the zero jet.
    int lowest_degree() const;
    int highest_degree() const;

    void add_term(const Monomial& m, const Scalar& c);

    Jet homogeneous_part(int degree) const;
    Jet degree_range(int lo, int hi) const;
    Jet truncated(int order) const;
    // Same terms reinterpreted at a new truncation order (terms above it dropped).
    Jet with_order(int order) const;
    // Same coefficients with variables renumbered: variable i becomes map[i]
    // in a ring of `nvars` variables.
    Jet embedded(std::size_t nvars, std::span<const std::size_t> map) const;

    Jet derivative(std::size_t var) const;

    Jet& operator+=(const Jet& other);
    Jet& operator-=(const Jet& other);
    Jet& operator*=(const Scalar& c);

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator-(Jet a) { return a *= Scalar(-1); }
    friend Jet operator*(Jet a, const Scalar& c) { return a *= c; }
    friend Jet operator*(const Scalar& c, Jet a) { return a *= c; }
    friend Jet operator*(const Jet& a, const Jet& b);

    friend bool operator==(const Jet& a, const Jet& b)
    {
        return a.nvars_ == b.nvars_ && a.order_ == b.order_ && a.terms_ == b.terms_;
    }

 private:
    void check_compatible(const Jet& other, const char* op) const;

    std::size_t nvars_ = 0;
    int order_ = 0;
    Terms terms_;
};

// Evaluates f(images[0], ..., images[n-1]). The images share a variable count
// and order; the result has order min(f.order(), images order). Products of
// images are cached, so one Substitution applied to many jets is cheap.
class Substitution {
 public:
    explicit Substitution(std::vector<Jet> images);

    Jet apply(const Jet& f);

    std::size_t target_nvars() const { return nvars_; }
    int order() const { return order_; }

 private:
    const Jet& power_product(const Monomial& m);

    std::vector<Jet> images_;
    std::size_t nvars_ = 0;
    int order_ = 0;
    int min_image_degree_ = 0;
    std::map<Monomial, Jet, GradedLex> cache_;
};

Jet compose(const Jet& f, const std::vector<Jet>& images);

// Canonical text: signed terms `coef*x^e*y`, graded-lex ascending, "0" for zero.
std::string to_string(const Jet& f, std::span<const std::string> names);
std::string to_string(const Monomial& m, std::span<const std::string> names);

// Default variable names x1..xn.
std::vector<std::string> default_names(std::size_t nvars);

}  // namespace plin
