#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "plin/normalform.hpp"
#include "plin/problem.hpp"
#include "plin/report.hpp"

namespace plin {

struct CorpusEntry {
    std::string name;
    std::string description;
    std::string command;
    // Builds the problem truncated at the given order.
    std::function<ProblemSpec(int)> build;
    int default_degree = 6;
    int expected_exit = kExitSuccess;
    // Largest N for which the report re-runs the command on every truncation
    // 1..N; 0 disables the scan.
    int scan_through = 0;
};

// Sorted by name.
const std::vector<CorpusEntry>& corpus();
// Throws std::invalid_argument for an unknown name.
const CorpusEntry& corpus_entry(const std::string& name);

struct CorpusOverrides {
    std::optional<Scheduler> scheduler;
    std::optional<int> max_degree;
    std::optional<Scalar> radius;
    std::optional<LeviFactorSpec> levi_factor;
};

ProblemSpec corpus_problem(const CorpusEntry& entry, const CorpusOverrides& overrides = {});
Report run_corpus_entry(const CorpusEntry& entry, const CorpusOverrides& overrides = {});

}  // namespace plin
