// ontocheck - layered ontology toolchain CLI
//
// Subcommands: check (well-formedness), validate (instance conformance),
// refine (refinement verification with pass/fail exit), matrix (render the
// refinement matrix).
//
// Exit codes: 0 success/pass, 1 violations found, 2 input error
// (parse/resolution), 3 usage error.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "onto/conformance.hpp"
#include "onto/model.hpp"
#include "onto/parser.hpp"
#include "onto/refinement.hpp"
#include "onto/report_io.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitViolations = 1;
constexpr int kExitInputError = 2;
constexpr int kExitUsage = 3;

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void print_parse_diagnostics(const std::vector<onto::ParseDiagnostic>& diags) {
    for (const auto& d : diags)
        std::cerr << d.span.file << ":" << d.span.line << ":" << d.span.column << ": "
                  << onto::to_string(d.severity) << " " << d.code << ": " << d.message << "\n";
}

struct LoadedOntologies {
    onto::Workspace workspace;
    std::vector<std::string> names;  // declared names in load order
};

// Parses every path as .onto and fills the workspace; nullopt on any error.
std::optional<LoadedOntologies> load_ontologies(const std::vector<std::string>& paths) {
    LoadedOntologies loaded;
    for (const auto& path : paths) {
        auto text = read_file(path);
        if (!text) {
            std::cerr << "error: cannot read '" << path << "'\n";
            return std::nullopt;
        }
        auto result = onto::parse_ontology(*text, path);
        print_parse_diagnostics(result.diagnostics);
        if (!result.ok()) return std::nullopt;
        std::string name = result.value->name;
        if (!loaded.workspace.add(std::move(*result.value))) {
            std::cerr << "error: ontology '" << name << "' loaded twice\n";
            return std::nullopt;
        }
        loaded.names.push_back(std::move(name));
    }
    return loaded;
}

// Required (non-optional) imports of every loaded ontology must be present.
bool required_imports_present(const LoadedOntologies& loaded) {
    bool ok = true;
    for (const auto& name : loaded.names) {
        const onto::OntologyIndex* idx = loaded.workspace.find(name);
        for (const auto& imp : idx->onto().imports) {
            if (!imp.optional && !loaded.workspace.find(imp.name)) {
                std::cerr << "error: ontology '" << name << "' has unresolved import '"
                          << imp.name << "'\n";
                ok = false;
            }
        }
    }
    return ok;
}

onto::ReportFormat to_format(const std::string& name) {
    return *onto::parse_report_format(name);  // choices restricted by CLI11
}

int run_check(const std::vector<std::string>& paths, const std::string& format) {
    auto loaded = load_ontologies(paths);
    if (!loaded) return kExitInputError;
    if (!required_imports_present(*loaded)) return kExitInputError;

    onto::Report report;
    for (const auto& name : loaded->names)
        for (auto& v : onto::check_ontology_wellformedness(loaded->workspace, name))
            report.diagnostics.push_back(std::move(v));
    onto::sort_canonical(report.diagnostics);

    std::cout << onto::serialize_report(report, to_format(format));
    if (format == "json") std::cout << "\n";
    bool has_errors = false;
    for (const auto& v : report.diagnostics)
        if (v.severity == onto::Severity::error) has_errors = true;
    std::cerr << "checked " << loaded->names.size() << " ontology(ies): "
              << report.diagnostics.size() << " diagnostic(s)\n";
    return has_errors ? kExitViolations : kExitPass;
}

int run_validate(const std::vector<std::string>& files, bool partial,
                 const std::string& format) {
    std::vector<std::string> onto_paths;
    std::vector<std::string> inst_paths;
    for (const auto& f : files) {
        if (std::filesystem::path(f).extension() == ".inst") inst_paths.push_back(f);
        else onto_paths.push_back(f);
    }
    if (inst_paths.size() != 1) {
        std::cerr << "usage error: validate expects exactly one .inst file (got "
                  << inst_paths.size() << ")\n";
        return kExitUsage;
    }

    auto loaded = load_ontologies(onto_paths);
    if (!loaded) return kExitInputError;

    auto inst_text = read_file(inst_paths.front());
    if (!inst_text) {
        std::cerr << "error: cannot read '" << inst_paths.front() << "'\n";
        return kExitInputError;
    }
    auto inst = onto::parse_instance_model(*inst_text, inst_paths.front());
    print_parse_diagnostics(inst.diagnostics);
    if (!inst.ok()) return kExitInputError;

    const onto::OntologyIndex* schema = loaded->workspace.find(inst.value->conforms_to);
    if (!schema) {
        std::cerr << "error: instance model conforms to '" << inst.value->conforms_to
                  << "' which is not among the loaded ontologies\n";
        return kExitInputError;
    }
    for (const auto& imp : schema->onto().imports) {
        if (!imp.optional && !loaded->workspace.find(imp.name)) {
            std::cerr << "error: ontology '" << schema->name() << "' has unresolved import '"
                      << imp.name << "'\n";
            return kExitInputError;
        }
    }
    auto schema_diags =
        onto::check_ontology_wellformedness(loaded->workspace, inst.value->conforms_to);
    if (!schema_diags.empty()) {
        for (const auto& d : schema_diags)
            std::cerr << "schema error: " << d.code << ": " << d.message << "\n";
        return kExitInputError;
    }

    onto::ValidationOptions options;
    options.mode = partial ? onto::ValidationMode::partial : onto::ValidationMode::complete;
    try {
        onto::Report report = onto::validate(*inst.value, loaded->workspace, options);
        std::cout << onto::serialize_report(report, to_format(format));
        if (format == "json") std::cout << "\n";
        std::cerr << "validated model '" << inst.value->name << "': "
                  << report.diagnostics.size() << " violation(s)\n";
        return report.pass() ? kExitPass : kExitViolations;
    } catch (const onto::ResolutionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

struct RefineInputs {
    onto::Workspace workspace;
    onto::RefinementMap map;
};

std::optional<RefineInputs> load_refine_inputs(const std::string& lower_path,
                                               const std::string& upper_path,
                                               const std::string& map_path,
                                               const std::vector<std::string>& with_paths) {
    std::vector<std::string> paths{lower_path, upper_path};
    paths.insert(paths.end(), with_paths.begin(), with_paths.end());
    auto loaded = load_ontologies(paths);
    if (!loaded) return std::nullopt;

    auto map_text = read_file(map_path);
    if (!map_text) {
        std::cerr << "error: cannot read '" << map_path << "'\n";
        return std::nullopt;
    }
    auto map = onto::parse_refinement_map(*map_text, map_path);
    print_parse_diagnostics(map.diagnostics);
    if (!map.ok()) return std::nullopt;

    RefineInputs inputs;
    inputs.workspace = std::move(loaded->workspace);
    inputs.map = std::move(*map.value);
    return inputs;
}

int run_refine(const std::string& lower, const std::string& upper, const std::string& map_path,
               bool strict, const std::string& format,
               const std::vector<std::string>& with_paths, bool render_only) {
    auto inputs = load_refine_inputs(lower, upper, map_path, with_paths);
    if (!inputs) return kExitInputError;
    auto mode = strict ? onto::RefinementMode::strict : onto::RefinementMode::standard;
    try {
        onto::MatrixReport report =
            onto::verify_refinement(inputs->workspace, inputs->map, mode);
        std::cout << onto::serialize_report(report, to_format(format));
        if (format == "json") std::cout << "\n";
        std::size_t passed = 0;
        for (const auto& row : report.rows)
            if (row.pass()) ++passed;
        std::cerr << "verified " << report.rows.size() << " row(s), " << passed << " pass, "
                  << report.unmapped_lower.size() << " unmapped (" << onto::to_string(mode)
                  << " mode)\n";
        if (render_only) return kExitPass;
        return report.pass() ? kExitPass : kExitViolations;
    } catch (const onto::ResolutionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"layered ontology toolchain: parse, validate, verify refinement"};
    app.require_subcommand(1);

    std::string format = "table";
    std::vector<std::string> files;
    std::vector<std::string> with_paths;
    std::string lower_path, upper_path, map_path;
    bool partial = false;
    bool strict = false;

    auto add_format = [&format](CLI::App* cmd) {
        cmd->add_option("--format", format, "Report format")
            ->check(CLI::IsMember({"json", "csv", "table"}))
            ->default_val("table");
    };

    CLI::App* check = app.add_subcommand("check", "Well-formedness of ontology files");
    check->add_option("files", files, "Ontology files (.onto)")->required()->expected(-1);
    add_format(check);

    CLI::App* validate =
        app.add_subcommand("validate", "Validate an instance model against its ontology");
    validate->add_option("files", files, "Ontology files plus exactly one .inst file")
        ->required()
        ->expected(-1);
    validate->add_flag("--partial", partial,
                       "Suppress minimum-multiplicity and completeness checks");
    add_format(validate);

    CLI::App* refine = app.add_subcommand("refine", "Verify a refinement map (pass/fail)");
    refine->add_option("lower", lower_path, "Lower ontology file")->required();
    refine->add_option("upper", upper_path, "Upper ontology file")->required();
    refine->add_option("map", map_path, "Refinement map file (.refmap)")->required();
    refine->add_flag("--strict", strict, "Require full interval containment on multiplicities");
    refine->add_option("--with", with_paths, "Additional ontology files for stereotype sources");
    add_format(refine);

    CLI::App* matrix = app.add_subcommand("matrix", "Render the refinement verification matrix");
    matrix->add_option("lower", lower_path, "Lower ontology file")->required();
    matrix->add_option("upper", upper_path, "Upper ontology file")->required();
    matrix->add_option("map", map_path, "Refinement map file (.refmap)")->required();
    matrix->add_flag("--strict", strict, "Compute verdicts in strict mode");
    matrix->add_option("--with", with_paths, "Additional ontology files for stereotype sources");
    add_format(matrix);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitPass : kExitUsage;
    }

    if (check->parsed()) return run_check(files, format);
    if (validate->parsed()) return run_validate(files, partial, format);
    if (refine->parsed())
        return run_refine(lower_path, upper_path, map_path, strict, format, with_paths, false);
    if (matrix->parsed())
        return run_refine(lower_path, upper_path, map_path, strict, format, with_paths, true);
    return kExitUsage;
}
