#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace plin {

// Exact rational coefficient. mpq_class keeps values canonical (reduced,
// positive denominator) after every arithmetic operation.
using Scalar = mpq_class;
using Vector = std::vector<Scalar>;

// "p" for integers, "p/q" otherwise.
std::string to_string(const Scalar& q);

// Accepts "p", "-p", "p/q" with decimal integers. Throws std::invalid_argument.
Scalar parse_scalar(std::string_view text);

inline bool is_zero(const Scalar& q) { return sgn(q) == 0; }

double to_double(const Scalar& q);

}  // namespace plin
