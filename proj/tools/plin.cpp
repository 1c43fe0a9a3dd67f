#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <utility>

#include "CLI11.hpp"
#include "json.hpp"

#include "plin/corpus.hpp"
#include "plin/problem.hpp"
#include "plin/report.hpp"

namespace {

using nlohmann::json;

struct Common {
    std::string scheduler;
    int max_degree = 0;
    std::string radius;
    std::string out;
    std::string levi_factor;
    std::string format = "json";
};

std::string read_file(const std::string& path)
{
    if (path == "-") {
        return std::string(std::istreambuf_iterator<char>(std::cin), {});
    }
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

plin::CorpusOverrides overrides_from(const Common& c)
{
    plin::CorpusOverrides o;
    if (!c.scheduler.empty()) o.scheduler = plin::parse_scheduler(c.scheduler);
    if (c.max_degree != 0) {
        if (c.max_degree < 1 || c.max_degree > 64) throw std::invalid_argument("--max-degree must lie in 1..64");
        o.max_degree = c.max_degree;
    }
    if (!c.radius.empty()) {
        o.radius = plin::parse_scalar(c.radius);
        if (sgn(*o.radius) <= 0) throw std::invalid_argument("--radius must be positive");
    }
    if (!c.levi_factor.empty()) o.levi_factor = plin::levi_factor_from_json(json::parse(read_file(c.levi_factor)));
    return o;
}

// Re-reads the problem at the overriding degree so that truncation applies.
plin::ProblemSpec load_problem(const std::string& path, const plin::CorpusOverrides& o)
{
    const std::string text = read_file(path);
    plin::ProblemSpec spec = plin::parse_problem(text);
    if (o.max_degree && *o.max_degree != spec.max_degree) {
        json j = json::parse(text);
        j["max_degree"] = *o.max_degree;
        spec = plin::problem_from_json(j);
    }
    if (o.scheduler) spec.scheduler = *o.scheduler;
    if (o.radius) spec.radius = *o.radius;
    if (o.levi_factor) spec.levi_factor = *o.levi_factor;
    return spec;
}

std::string format_report(const json& body, const std::string& format)
{
    if (format == "text") return plin::render_text(body);
    return body.dump(2) + "\n";
}

int emit(const std::string& text, const Common& c)
{
    if (c.out.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(c.out);
    if (!out) {
        std::cerr << "cannot write '" << c.out << "'\n";
        return plin::kExitInputError;
    }
    out << text;
    return 0;
}

int input_error(const std::string& command, const std::string& message, const Common& c)
{
    const json body{{"command", command}, {"error", {{"code", "invalid_input"}, {"message", message}}}};
    emit(format_report(body, c.format), c);
    return plin::kExitInputError;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Formal normal forms of Poisson brackets, Lie algebra actions and Lie algebroids"};
    app.require_subcommand(1);
    Common common;
    app.add_option("--scheduler", common.scheduler, "degree or doubling (default doubling)")
        ->check(CLI::IsMember({"degree", "doubling"}));
    app.add_option("--max-degree", common.max_degree, "truncation order N (default 6)");
    app.add_option("--radius", common.radius, "radius of the diagnostic Hermitian metric, as p or p/q");
    app.add_option("--out", common.out, "write the report to FILE");
    app.add_option("--levi-factor", common.levi_factor, "JSON file with the Levi factor basis");
    app.add_option("--format", common.format, "json or text")->check(CLI::IsMember({"json", "text"}));

    std::string problem_path;
    int degree = 1;
    int module_degree = 1;
    std::string command;
    const std::pair<const char*, const char*> commands[] = {
        {"check", "validate the input structure"},
        {"analyze", "classify the isotropy Lie algebra"},
        {"linearize", "linear normal form of a bracket or action, or an obstruction"},
        {"levi", "Levi normal form of a bracket"},
        {"algebroid", "linear or Levi normal form of a Lie algebroid"},
        {"cohomology", "dimension of H^r with values in degree-d polynomials"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("problem", problem_path, "problem file, - for stdin")->required();
        sub->fallthrough();
        if (std::string(name) == "cohomology") {
            sub->add_option("--degree", degree, "cochain degree r")->required();
            sub->add_option("--module-degree", module_degree, "polynomial degree d of the module")->required();
        }
        sub->callback([&command, name] { command = name; });
    }
    auto* corpus_cmd = app.add_subcommand("corpus", "bundled example problems");
    corpus_cmd->require_subcommand(1);
    corpus_cmd->fallthrough();
    auto* list_cmd = corpus_cmd->add_subcommand("list", "list entries");
    auto* run_cmd = corpus_cmd->add_subcommand("run", "run one entry or all of them");
    run_cmd->fallthrough();
    std::string entry_name;
    bool all = false;
    run_cmd->add_option("name", entry_name, "entry name");
    run_cmd->add_flag("--all", all, "run every entry, ordered by name");

    CLI11_PARSE(app, argc, argv);

    plin::CorpusOverrides overrides;
    try {
        overrides = overrides_from(common);
    } catch (const std::exception& e) {
        return input_error(command.empty() ? "corpus" : command, e.what(), common);
    }

    if (list_cmd->parsed()) {
        json list = json::array();
        std::ostringstream text;
        for (const auto& e : plin::corpus()) {
            list.push_back({{"name", e.name}, {"command", e.command}, {"description", e.description}});
            text << e.name << "  [" << e.command << "]  " << e.description << "\n";
        }
        return emit(common.format == "text" ? text.str() : list.dump(2) + "\n", common);
    }
    if (run_cmd->parsed()) {
        if (all == !entry_name.empty()) return input_error("corpus run", "give an entry name or --all", common);
        if (!all) {
            try {
                const auto report = plin::run_corpus_entry(plin::corpus_entry(entry_name), overrides);
                if (int rc = emit(format_report(report.body, common.format), common)) return rc;
                return report.exit_code;
            } catch (const std::exception& e) {
                return input_error("corpus run", e.what(), common);
            }
        }
        json reports = json::array();
        std::string text;
        bool as_expected = true;
        for (const auto& e : plin::corpus()) {
            const auto report = plin::run_corpus_entry(e, overrides);
            as_expected = as_expected && report.exit_code == e.expected_exit;
            text += format_report(report.body, "text") + "\n";
            reports.push_back(report.body);
        }
        if (int rc = emit(common.format == "text" ? text : reports.dump(2) + "\n", common)) return rc;
        return as_expected ? plin::kExitSuccess : plin::kExitInputError;
    }

    plin::ProblemSpec spec;
    try {
        spec = load_problem(problem_path, overrides);
    } catch (const plin::ParseError& e) {
        const json body{{"command", command},
                        {"error",
                         {{"code", "parse_error"}, {"message", e.what()}, {"line", e.line()}, {"column", e.column()}}}};
        emit(format_report(body, common.format), common);
        return plin::kExitInputError;
    } catch (const std::exception& e) {
        return input_error(command, e.what(), common);
    }
    const auto report = plin::run(command, spec, plin::RunOptions{degree, module_degree});
    if (int rc = emit(format_report(report.body, common.format), common)) return rc;
    return report.exit_code;
}
