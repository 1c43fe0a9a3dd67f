#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "plin/cohomology.hpp"
#include "plin/normalform.hpp"
#include "plin/poisson.hpp"
#include "plin/problem.hpp"

namespace plin {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitObstruction = 2;

struct RunOptions {
    // Used by the cohomology command only.
    int cohomology_degree = 1;
    int module_degree = 1;
};

struct Report {
    nlohmann::json body;
    int exit_code = kExitSuccess;
};

// Commands: check, analyze, linearize, levi, algebroid, cohomology. Every
// report carries "command", "input", "classification" (except on input
// errors), "result" and "timing_ms". Engine and schema failures become
// input-error reports with an "error" block; they are never thrown.
Report run(const std::string& command, const ProblemSpec& spec, const RunOptions& options = {});

// Module used by the cohomology command and by the normalization engines at
// degree d: polynomials of degree d for brackets, vector fields of degree d
// for actions, base polynomials of degree d under the linear anchor for
// algebroids.
GModule problem_module(const ProblemSpec& spec, int degree);

// Re-runs the engine checks on a serialized result: parses the input echo,
// the change and the normal form, and compares exactly. For bracket and action
// obstructions it recomputes the remainder and re-checks the functional.
bool verify_report(const nlohmann::json& report);

std::string render_text(const nlohmann::json& report);

// Serialization pieces shared with the corpus and tests.
nlohmann::json constants_to_json(const LieAlgebra& g);
nlohmann::json matrix_to_json(const Matrix& m);
nlohmann::json change_to_json(const CoordChange& phi, const std::vector<std::string>& names);
CoordChange change_from_json(const nlohmann::json& j, const std::vector<std::string>& names, int order);
// Entries are {indices, basis, label, value}; labels use `names` when they
// cover the module variables.
nlohmann::json cochain_to_json(const Cochain& w, const std::vector<std::string>& names = {});
nlohmann::json trace_to_json(const IterationTrace& trace);
nlohmann::json convergence_to_json(const ConvergenceReport& report);
nlohmann::json classification_to_json(const LieAlgebra& g);

}  // namespace plin
