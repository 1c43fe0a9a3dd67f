#include "plin/scalar.hpp"

#include <cctype>
#include <stdexcept>

namespace plin {

std::string to_string(const Scalar& q) { return q.get_str(); }

namespace {

bool is_integer_literal(std::string_view s)
{
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

Scalar parse_scalar(std::string_view text)
{
    const auto slash = text.find('/');
    const auto num = text.substr(0, slash);
    if (!is_integer_literal(num)) {
        throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
    }
    std::string num_str(num.front() == '+' ? num.substr(1) : num);
    if (slash == std::string_view::npos) return Scalar(mpz_class(num_str));

    const auto den = text.substr(slash + 1);
    if (den.empty() || den.front() == '-' || den.front() == '+' || !is_integer_literal(den)) {
        throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
    }
    mpz_class d(std::string{den});
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Scalar q(mpz_class(num_str), d);
    q.canonicalize();
    return q;
}

double to_double(const Scalar& q) { return q.get_d(); }

}  // namespace plin
