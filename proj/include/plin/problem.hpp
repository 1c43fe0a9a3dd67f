#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "plin/algebroid.hpp"
#include "plin/liealg.hpp"
#include "plin/normalform.hpp"
#include "plin/poisson.hpp"

namespace plin {

// Syntax or semantic error in problem text; line and column are 1-based.
class ParseError : public std::invalid_argument {
 public:
    ParseError(const std::string& message, std::size_t line, std::size_t column);

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    // The message without the position prefix.
    const std::string& detail() const { return detail_; }

 private:
    std::string detail_;
    std::size_t line_;
    std::size_t column_;
};

// Grammar: sum := ['+'|'-'] product {('+'|'-') product}
//          product := factor {'*' factor}
//          factor := integer ['/' integer] | name ['^' integer]
// Terms above `order` are dropped.
Jet parse_polynomial(std::string_view text, const std::vector<std::string>& names, int order);

enum class ProblemKind { Poisson, Action, Algebroid };

std::string to_string(ProblemKind kind);

// Optional Levi factor: s basis and, optionally, an invariant complement, as
// coordinate vectors in the isotropy basis. An absent r means the radical.
struct LeviFactorSpec {
    std::vector<Vector> s;
    std::optional<std::vector<Vector>> r;

    friend bool operator==(const LeviFactorSpec&, const LeviFactorSpec&) = default;
};

// One engine input with its naming. For kind Poisson `poisson` holds the
// bracket in `variables`; for Action, `action` acts on `variables` and the
// algebra basis is named by `generators`; for Algebroid, `variables` are the
// base coordinates and `fiber` names the sections.
struct ProblemSpec {
    ProblemKind kind = ProblemKind::Poisson;
    std::vector<std::string> variables;
    std::vector<std::string> generators;
    std::vector<std::string> fiber;
    int max_degree = 6;
    Scheduler scheduler = Scheduler::Doubling;
    Scalar radius = 1;
    PoissonJet poisson;
    ActionJet action;
    AlgebroidJet algebroid;
    std::optional<LeviFactorSpec> levi_factor;

    friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;
};

// Throws ParseError (positioned) or std::invalid_argument.
ProblemSpec parse_problem(std::string_view text);
ProblemSpec problem_from_json(const nlohmann::json& j);
nlohmann::json problem_to_json(const ProblemSpec& spec);
std::string print_problem(const ProblemSpec& spec);

LeviFactorSpec levi_factor_from_json(const nlohmann::json& j);
nlohmann::json levi_factor_to_json(const LeviFactorSpec& spec);

// The Lie algebra at the origin: the isotropy of the bracket, the acting
// algebra of an action, or the isotropy of an algebroid.
LieAlgebra problem_algebra(const ProblemSpec& spec);

}  // namespace plin
