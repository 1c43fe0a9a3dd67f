#include "plin/polynomial.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace plin {

Monomial::Monomial(std::size_t nvars) : nvars_(static_cast<std::uint8_t>(nvars))
{
    if (nvars > kMaxVars) throw std::invalid_argument("too many variables for a monomial");
}

Monomial::Monomial(std::initializer_list<int> exponents)
    : Monomial(std::span<const int>(exponents.begin(), exponents.size()))
{
}

Monomial::Monomial(std::span<const int> exponents) : Monomial(exponents.size())
{
    for (std::size_t i = 0; i < exponents.size(); ++i) set(i, exponents[i]);
}

Monomial Monomial::unit(std::size_t nvars, std::size_t var)
{
    Monomial m(nvars);
    m.set(var, 1);
    return m;
}

void Monomial::set(std::size_t i, int e)
{
    if (i >= nvars_) throw std::out_of_range("monomial variable index");
    if (e < 0 || e > 255) throw std::invalid_argument("monomial exponent out of range");
    degree_ = static_cast<std::uint16_t>(degree_ - exps_[i] + e);
    exps_[i] = static_cast<std::uint8_t>(e);
}

Monomial Monomial::operator*(const Monomial& other) const
{
    if (nvars_ != other.nvars_) throw std::invalid_argument("monomial variable count mismatch");
    Monomial r(*this);
    for (std::size_t i = 0; i < nvars_; ++i) {
        const int e = exps_[i] + other.exps_[i];
        if (e > 255) throw std::invalid_argument("monomial exponent overflow");
        r.exps_[i] = static_cast<std::uint8_t>(e);
    }
    r.degree_ = static_cast<std::uint16_t>(degree_ + other.degree_);
    return r;
}

Monomial Monomial::lowered(std::size_t var) const
{
    Monomial r(*this);
    r.exps_[var] -= 1;
    r.degree_ -= 1;
    return r;
}

int Monomial::partial_degree(std::span<const bool> mask) const
{
    int d = 0;
    for (std::size_t i = 0; i < nvars_ && i < mask.size(); ++i) {
        if (mask[i]) d += exps_[i];
    }
    return d;
}

bool GradedLex::operator()(const Monomial& a, const Monomial& b) const
{
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] != b[i]) return a[i] > b[i];
    }
    return a.size() < b.size();
}

namespace {

void enumerate_monomials(std::size_t var, int remaining, Monomial& current,
                         std::vector<Monomial>& out)
{
    const std::size_t n = current.size();
    if (var + 1 == n) {
        current.set(var, remaining);
        out.push_back(current);
        return;
    }
    for (int e = remaining; e >= 0; --e) {
        current.set(var, e);
        enumerate_monomials(var + 1, remaining - e, current, out);
    }
    current.set(var, 0);
}

}  // namespace

std::vector<Monomial> monomials_of_degree(std::size_t nvars, int degree)
{
    std::vector<Monomial> out;
    if (degree < 0) return out;
    if (nvars == 0) {
        if (degree == 0) out.emplace_back(0);
        return out;
    }
    Monomial current(nvars);
    enumerate_monomials(0, degree, current, out);
    return out;
}

// ---------------------------------------------------------------------------

Jet::Jet(std::size_t nvars, int order) : nvars_(nvars), order_(order)
{
    if (nvars > Monomial::kMaxVars) throw std::invalid_argument("too many variables for a jet");
    if (order < 0) throw std::invalid_argument("negative truncation order");
}

Jet Jet::constant(std::size_t nvars, int order, const Scalar& c)
{
    Jet j(nvars, order);
    j.add_term(Monomial(nvars), c);
    return j;
}

Jet Jet::variable(std::size_t nvars, int order, std::size_t var)
{
    Jet j(nvars, order);
    j.add_term(Monomial::unit(nvars, var), Scalar(1));
    return j;
}

Jet Jet::term(std::size_t nvars, int order, const Monomial& m, const Scalar& c)
{
    Jet j(nvars, order);
    j.add_term(m, c);
    return j;
}

Scalar Jet::coeff(const Monomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
}

Scalar Jet::constant_term() const { return coeff(Monomial(nvars_)); }

int Jet::lowest_degree() const
{
    return terms_.empty() ? order_ + 1 : terms_.begin()->first.degree();
}

int Jet::highest_degree() const
{
    return terms_.empty() ? -1 : terms_.rbegin()->first.degree();
}

void Jet::add_term(const Monomial& m, const Scalar& c)
{
    if (m.size() != nvars_) throw std::invalid_argument("monomial/jet variable count mismatch");
    if (m.degree() > order_ || plin::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (plin::is_zero(it->second)) terms_.erase(it);
    }
}

Jet Jet::homogeneous_part(int degree) const { return degree_range(degree, degree); }

Jet Jet::degree_range(int lo, int hi) const
{
    Jet r(nvars_, order_);
    for (const auto& [m, c] : terms_) {
        if (m.degree() > hi) break;
        if (m.degree() >= lo) r.terms_.emplace_hint(r.terms_.end(), m, c);
    }
    return r;
}

Jet Jet::truncated(int order) const { return with_order(std::min(order, order_)); }

Jet Jet::with_order(int order) const
{
    Jet r(nvars_, order);
    for (const auto& [m, c] : terms_) {
        if (m.degree() > order) break;
        r.terms_.emplace_hint(r.terms_.end(), m, c);
    }
    return r;
}

Jet Jet::embedded(std::size_t nvars, std::span<const std::size_t> map) const
{
    if (map.size() != nvars_) throw std::invalid_argument("embedding map size mismatch");
    Jet r(nvars, order_);
    for (const auto& [m, c] : terms_) {
        Monomial e(nvars);
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (m[i] != 0) e.set(map[i], e[map[i]] + m[i]);
        }
        r.add_term(e, c);
    }
    return r;
}

Jet Jet::derivative(std::size_t var) const
{
    if (var >= nvars_) throw std::out_of_range("derivative variable index");
    Jet r(nvars_, order_);
    for (const auto& [m, c] : terms_) {
        if (m[var] == 0) continue;
        r.add_term(m.lowered(var), c * m[var]);
    }
    return r;
}

void Jet::check_compatible(const Jet& other, const char* op) const
{
    if (nvars_ != other.nvars_ || order_ != other.order_) {
        std::ostringstream os;
        os << "jet " << op << ": shape mismatch (" << nvars_ << " vars, order " << order_
           << ") vs (" << other.nvars_ << " vars, order " << other.order_ << ")";
        throw std::invalid_argument(os.str());
    }
}

Jet& Jet::operator+=(const Jet& other)
{
    check_compatible(other, "addition");
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
}

Jet& Jet::operator-=(const Jet& other)
{
    check_compatible(other, "subtraction");
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
}

Jet& Jet::operator*=(const Scalar& c)
{
    if (plin::is_zero(c)) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

Jet operator*(const Jet& a, const Jet& b)
{
    a.check_compatible(b, "product");
    Jet r(a.nvars_, a.order_);
    if (a.is_zero() || b.is_zero()) return r;
    const int budget = a.order_ - b.lowest_degree();
    Scalar prod;
    for (const auto& [ma, ca] : a.terms_) {
        if (ma.degree() > budget) break;
        const int room = a.order_ - ma.degree();
        for (const auto& [mb, cb] : b.terms_) {
            if (mb.degree() > room) break;
            prod = ca * cb;
            r.add_term(ma * mb, prod);
        }
    }
    return r;
}

// ---------------------------------------------------------------------------

Substitution::Substitution(std::vector<Jet> images) : images_(std::move(images))
{
    if (images_.empty()) return;
    nvars_ = images_.front().nvars();
    order_ = images_.front().order();
    min_image_degree_ = std::numeric_limits<int>::max();
    for (const auto& g : images_) {
        if (g.nvars() != nvars_ || g.order() != order_) {
            throw std::invalid_argument("substitution images must share shape");
        }
        min_image_degree_ = std::min(min_image_degree_, g.lowest_degree());
    }
}

const Jet& Substitution::power_product(const Monomial& m)
{
    auto it = cache_.find(m);
    if (it != cache_.end()) return it->second;
    Jet value(nvars_, order_);
    if (m.degree() == 0) {
        value = Jet::constant(nvars_, order_, Scalar(1));
    } else {
        std::size_t var = 0;
        while (m[var] == 0) ++var;
        const Jet& rest = power_product(m.lowered(var));
        value = rest * images_[var];
    }
    return cache_.emplace(m, std::move(value)).first->second;
}

Jet Substitution::apply(const Jet& f)
{
    if (f.nvars() != images_.size()) {
        throw std::invalid_argument("substitution arity does not match jet variable count");
    }
    const int order = std::min(f.order(), order_);
    Jet r(nvars_, order);
    for (const auto& [m, c] : f.terms()) {
        // Images without constant term send high-degree monomials past the order.
        if (min_image_degree_ > 0 && m.degree() * min_image_degree_ > order) break;
        const Jet& p = power_product(m);
        for (const auto& [pm, pc] : p.terms()) {
            if (pm.degree() > order) break;
            r.add_term(pm, c * pc);
        }
    }
    return r;
}

Jet compose(const Jet& f, const std::vector<Jet>& images)
{
    Substitution s(images);
    return s.apply(f);
}

// ---------------------------------------------------------------------------

std::vector<std::string> default_names(std::size_t nvars)
{
    std::vector<std::string> names;
    for (std::size_t i = 0; i < nvars; ++i) names.push_back("x" + std::to_string(i + 1));
    return names;
}

std::string to_string(const Monomial& m, std::span<const std::string> names)
{
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!out.empty()) out += '*';
        out += names[i];
        if (m[i] > 1) out += '^' + std::to_string(m[i]);
    }
    return out;
}

std::string to_string(const Jet& f, std::span<const std::string> names)
{
    if (names.size() < f.nvars()) throw std::invalid_argument("not enough variable names");
    if (f.is_zero()) return "0";
    std::string out;
    for (const auto& [m, c] : f.terms()) {
        const bool negative = sgn(c) < 0;
        const Scalar mag = abs(c);
        if (out.empty()) {
            if (negative) out += '-';
        } else {
            out += negative ? " - " : " + ";
        }
        const std::string mono = to_string(m, names);
        if (mono.empty()) {
            out += to_string(mag);
        } else if (mag == 1) {
            out += mono;
        } else {
            out += to_string(mag) + '*' + mono;
        }
    }
    return out;
}

}  // namespace plin
