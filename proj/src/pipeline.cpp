#include "framekit/pipeline.hpp"

#include <fstream>
#include <optional>
#include <utility>
#include <variant>

#include "framekit/classify.hpp"
#include "framekit/duality.hpp"
#include "framekit/errors.hpp"
#include "framekit/frameops.hpp"
#include "framekit/report_io.hpp"
#include "framekit/spec_io.hpp"
#include "framekit/truncation.hpp"

namespace framekit {
namespace {

const char* command_name(Command c) {
    switch (c) {
        case Command::Analyze: return "analyze";
        case Command::Dual: return "dual";
        case Command::Classify: return "classify";
        case Command::Study: return "study";
        default: return "report";
    }
}

OutputFormat effective_format(const RunConfig& cfg) {
    if (cfg.format) return *cfg.format;
    return cfg.command == Command::Report ? OutputFormat::Text : OutputFormat::Json;
}

OrderedJson input_block(const RunConfig& cfg, const AnySequence& seq) {
    OrderedJson j;
    j["path"] = cfg.spec_path;
    if (const auto* fin = std::get_if<FiniteSequence>(&seq)) {
        j["kind"] = "explicit";
        j["space_dim"] = static_cast<int>(fin->space_dim);
        j["count"] = static_cast<int>(fin->count());
        return j;
    }
    const auto& s = std::get<StructuredSequence>(seq);
    if (const auto* w = std::get_if<WeightedOnb>(&s)) {
        j["kind"] = "weighted_onb";
        if (std::holds_alternative<IdentityMap>(w->sigma)) j["sigma"] = "identity";
        else if (std::holds_alternative<RoundRobinBlocks>(w->sigma)) j["sigma"] = "round_robin_blocks";
        else j["sigma"] = "prefix_periodic";
        if (std::holds_alternative<ConstantWeight>(w->weights)) j["weights"] = "const";
        else if (std::holds_alternative<PolyWeight>(w->weights)) j["weights"] = "poly";
        else if (std::holds_alternative<ExpWeight>(w->weights)) j["weights"] = "exp";
        else j["weights"] = "prefix";
    } else {
        j["kind"] = "anchored_onb";
        j["anchor"] = std::get<AnchoredOnb>(s).anchor;
    }
    return j;
}

void check_ambient(const FiniteSequence& fin, int max_dim) {
    if (fin.space_dim > max_dim)
        throw ResourceError("spec dimension " + std::to_string(fin.space_dim) +
                            " exceeds the ambient cap " + std::to_string(max_dim));
}

void require_sizes(const RunConfig& cfg) {
    if (cfg.sizes.empty())
        throw InputError(std::string(command_name(cfg.command)) +
                         ": a structured family spec needs --sizes");
    validate(TruncationPlan{cfg.sizes, std::nullopt});
}

// The dual block of an analyze report: a degenerate span or a non-minimal
// sequence is reported in place, never fatal here.
OrderedJson dual_summary(const OperatorBundle& b) {
    try {
        DualSystem d = canonical_dual(b);
        try {
            BiorthogonalReport bio = biorthogonal_system(b, d);
            return json_dual_system(b, d, &bio, "", false);
        } catch (const NotMinimalError& e) {
            return json_dual_system(b, d, nullptr, e.what(), false);
        }
    } catch (const DegenerateFrameError& e) {
        OrderedJson j;
        j["available"] = false;
        j["reason"] = e.what();
        return j;
    }
}

void deliver(const RunConfig& cfg, std::ostream& out, const std::string& rendered) {
    if (cfg.out_path.empty()) {
        out << rendered;
        return;
    }
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f) throw InputError("cannot open output file: " + cfg.out_path);
    f << rendered;
    f.flush();
    if (!f.good()) throw InputError("write failed: " + cfg.out_path);
}

int run_checked(const RunConfig& cfg, std::ostream& out) {
    cfg.tol.validate();
    if (cfg.max_dim < 1) throw InputError("ambient cap must be >= 1");
    if (cfg.spec_path.empty()) throw InputError("no spec file given");

    const AnySequence seq = load_sequence_spec(cfg.spec_path);
    OrderedJson doc;
    doc["schema"] = "framekit.report.v1";
    doc["command"] = command_name(cfg.command);
    doc["input"] = input_block(cfg, seq);
    doc["tolerance"] = json_tolerance(cfg.tol);

    // Only commands that ran a truncation study can render CSV.
    std::optional<StudySeries> series;
    int code = kExitOk;

    switch (cfg.command) {
        case Command::Analyze:
        case Command::Report: {
            if (const auto* fin = std::get_if<FiniteSequence>(&seq)) {
                check_ambient(*fin, cfg.max_dim);
                OperatorBundle b = assemble(*fin, cfg.tol);
                doc["classification"] = json_classification(classify_finite(b));
                doc["dual_system"] = dual_summary(b);
            } else {
                const auto& s = std::get<StructuredSequence>(seq);
                require_sizes(cfg);
                series = run_study(s, TruncationPlan{cfg.sizes, std::nullopt}, cfg.tol, cfg.max_dim);
                const ClassificationReport analytic = classify_structured(s, series->profile);
                const Reconciliation rec = reconcile(*series, analytic);
                doc["profile"] = json_profile(series->profile);
                doc["classification"] = json_classification(analytic);
                doc["study"] = json_study(*series);
                doc["reconciliation"] = json_reconciliation(rec);
                if (rec.any_mismatch) code = kExitMismatch;
            }
            break;
        }
        case Command::Classify: {
            if (const auto* fin = std::get_if<FiniteSequence>(&seq)) {
                check_ambient(*fin, cfg.max_dim);
                doc["classification"] = json_classification(classify_finite(assemble(*fin, cfg.tol)));
            } else {
                const auto& s = std::get<StructuredSequence>(seq);
                require_sizes(cfg);
                const DomainProfile profile = domain_profile(s);
                doc["profile"] = json_profile(profile);
                doc["classification"] = json_classification(classify_structured(s, profile));
                OrderedJson numeric = OrderedJson::array();
                for (int n : cfg.sizes)
                    numeric.push_back(json_classification(
                        classify_finite(assemble(truncate(s, n, cfg.max_dim), cfg.tol))));
                doc["numeric"] = std::move(numeric);
            }
            break;
        }
        case Command::Dual: {
            FiniteSequence fin;
            if (const auto* f = std::get_if<FiniteSequence>(&seq)) {
                check_ambient(*f, cfg.max_dim);
                fin = *f;
            } else {
                if (cfg.sizes.size() != 1)
                    throw InputError("dual: a structured spec needs exactly one truncation size (--sizes N)");
                validate(TruncationPlan{cfg.sizes, std::nullopt});
                fin = truncate(std::get<StructuredSequence>(seq), cfg.sizes[0], cfg.max_dim);
            }
            OperatorBundle b = assemble(fin, cfg.tol);
            DualSystem d = canonical_dual(b);  // degenerate span escapes as exit 2
            try {
                BiorthogonalReport bio = biorthogonal_system(b, d);
                doc["dual_system"] = json_dual_system(b, d, &bio, "", true);
            } catch (const NotMinimalError& e) {
                if (cfg.require_biorthogonal) throw;
                doc["dual_system"] = json_dual_system(b, d, nullptr, e.what(), true);
            }
            break;
        }
        case Command::Study: {
            const auto* s = std::get_if<StructuredSequence>(&seq);
            if (!s)
                throw InputError("study: needs a structured family spec "
                                 "(kind weighted_onb or anchored_onb)");
            require_sizes(cfg);
            series = run_study(*s, TruncationPlan{cfg.sizes, std::nullopt}, cfg.tol, cfg.max_dim);
            const ClassificationReport analytic = classify_structured(*s, series->profile);
            doc["profile"] = json_profile(series->profile);
            doc["classification"] = json_classification(analytic);
            doc["study"] = json_study(*series);
            doc["reconciliation"] = json_reconciliation(reconcile(*series, analytic));
            break;
        }
    }

    std::string rendered;
    switch (effective_format(cfg)) {
        case OutputFormat::Json: rendered = json_text(doc); break;
        case OutputFormat::Text: rendered = text_report(doc); break;
        case OutputFormat::Csv:
            if (!series)
                throw InputError("csv output applies to truncation studies; use json or text");
            rendered = study_csv(*series);
            break;
    }
    deliver(cfg, out, rendered);
    return code;
}

}  // namespace

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        return run_checked(cfg, out);
    } catch (const NotMinimalError& e) {
        err << "framekit: not minimal: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const DegenerateFrameError& e) {
        // message names the offending eigenvalue
        err << "framekit: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const ValidationError& e) {
        err << "framekit: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const InputError& e) {
        err << "framekit: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const ResourceError& e) {
        err << "framekit: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const UnsupportedFamilyError& e) {
        err << "framekit: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const Error& e) {
        err << "framekit: internal check failed: " << e.what() << "\n";
        return kExitFailure;
    } catch (const std::exception& e) {
        err << "framekit: unexpected error: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace framekit
