// framekit command-line front end. All real work happens in the pipeline,
// which is exercised in-process by the test suite; this file only turns
// argv and the environment into a RunConfig.

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "framekit/pipeline.hpp"

namespace {

// FRAMEKIT_MAX_DIM caps the ambient dimension (default 4096). Rejects junk
// instead of silently falling back.
bool read_max_dim_env(int& max_dim, std::string& error) {
    const char* raw = std::getenv("FRAMEKIT_MAX_DIM");
    if (!raw || !*raw) return true;
    char* end = nullptr;
    const long v = std::strtol(raw, &end, 10);
    if (*end != '\0' || v < 1 || v > 1000000000L) {
        error = std::string("FRAMEKIT_MAX_DIM must be a positive integer, got \"") + raw + "\"";
        return false;
    }
    max_dim = static_cast<int>(v);
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    using framekit::Command;
    using framekit::OutputFormat;

    framekit::RunConfig cfg;
    std::string err_msg;
    if (!read_max_dim_env(cfg.max_dim, err_msg)) {
        std::cerr << "framekit: " << err_msg << "\n";
        return framekit::kExitInvalid;
    }

    CLI::App app{"framekit: classify frame-theoretic sequences, compute canonical duals,\n"
                 "and run truncation studies on structured infinite families"};
    app.require_subcommand(1);

    std::string format_name;
    const std::map<std::string, OutputFormat> format_names{
        {"json", OutputFormat::Json}, {"text", OutputFormat::Text}, {"csv", OutputFormat::Csv}};

    struct SubSpec {
        const char* name;
        const char* help;
        Command command;
        bool sizes, formats, biorth;
    };
    const SubSpec subs[] = {
        {"analyze", "full pipeline: classification, dual system, truncation study", Command::Analyze,
         true, true, false},
        {"classify", "classification flags and bounds only", Command::Classify, true, true, false},
        {"dual", "canonical dual system with biorthogonality check", Command::Dual, true, true, true},
        {"study", "truncation study over --sizes with reconciliation", Command::Study, true, true,
         false},
        {"report", "analyze rendered as text for reading", Command::Report, true, true, false},
    };

    std::map<const CLI::App*, Command> command_of;
    for (const SubSpec& s : subs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        command_of[sub] = s.command;
        sub->add_option("spec", cfg.spec_path, "sequence spec file (JSON)")
            ->required()
            ->type_name("FILE");
        if (s.sizes)
            sub->add_option("--sizes", cfg.sizes,
                            "truncation sizes, e.g. --sizes 8,16,32 (structured specs)")
                ->delimiter(',');
        sub->add_option("--tol", cfg.tol.rank_rel, "relative rank tolerance")
            ->capture_default_str();
        sub->add_option("--abs-floor", cfg.tol.abs_floor, "absolute singular-value floor")
            ->capture_default_str();
        if (s.formats)
            sub->add_option("--format", format_name, "output format: json, text or csv")
                ->check(CLI::IsMember({"json", "text", "csv"}));
        sub->add_option("--out", cfg.out_path, "write the artifact to FILE instead of stdout")
            ->type_name("FILE");
        if (s.biorth)
            sub->add_flag("--require-biorthogonal", cfg.require_biorthogonal,
                          "fail (exit 2) unless the sequence is minimal");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? framekit::kExitOk : framekit::kExitInvalid;
    }

    cfg.command = command_of.at(app.get_subcommands().front());
    if (!format_name.empty()) cfg.format = format_names.at(format_name);

    return framekit::run_command(cfg, std::cout, std::cerr);
}
