// Command-line front end: compute indicator matrices from bibliographic CSVs,
// audit published tables for internal consistency, render single matrices.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "collab/audit.hpp"
#include "collab/classify.hpp"
#include "collab/report.hpp"

namespace fs = std::filesystem;
using namespace collab;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitAuditViolations = 3;

void print_error_record(const std::string& kind, const std::string& message) {
    nlohmann::json record{{"error", kind}, {"message", message}};
    std::cerr << record.dump() << "\n";
}

int run_compute(const PipelineConfig& config) {
    const auto outcome = run_pipeline(config);
    for (const auto& warning : outcome.warnings) {
        std::cerr << "warning: " << warning << "\n";
    }
    if (outcome.status != 0) {
        print_error_record("validation", outcome.error);
        return kExitValidation;
    }
    for (const auto& artifact : outcome.artifacts) {
        std::cout << artifact.string() << "\n";
    }
    return 0;
}

struct AuditPaths {
    fs::path fixtures = "data/fixtures";
    std::string jaccard_all = "published_jaccard_all";
    std::string jaccard_core = "published_jaccard_core";
    std::string ratio = "published_ratio";
    std::string gain = "published_gain";
    std::string nonreciprocity = "published_nonreciprocity";
};

PublishedTable load_stem(const fs::path& dir, const std::string& stem) {
    return load_published_table(dir / (stem + ".tsv"), dir / (stem + ".meta.json"));
}

void print_report(const AuditReport& report) {
    std::cout << report.check << ": " << report.violations.size() << " violation(s)";
    if (!report.notes.empty()) std::cout << ", " << report.notes.size() << " note(s)";
    std::cout << "\n";
    for (const auto& v : report.violations) std::cout << "  ! " << v.message << "\n";
    for (const auto& n : report.notes) std::cout << "  - " << n << "\n";
}

int run_audit(const AuditPaths& paths, double band) {
    const auto jac_all = load_stem(paths.fixtures, paths.jaccard_all);
    const auto jac_core = load_stem(paths.fixtures, paths.jaccard_core);
    const auto ratio = load_stem(paths.fixtures, paths.ratio);
    const auto gain = load_stem(paths.fixtures, paths.gain);
    const auto nonrec = load_stem(paths.fixtures, paths.nonreciprocity);

    std::cout << "audit of published tables under " << paths.fixtures.string() << "\n";
    std::cout << "tolerances: symmetry and skew-symmetry exact at published precision;\n"
              << "  ratio intervals from the declared rounding half-width (0.005);\n"
              << "  difference-of-transpose 0.015 (two rounded terms plus published rounding);\n"
              << "  column averages 0.01 (mean of rounded terms plus published rounding)\n\n";

    std::size_t violations = 0;
    const auto run = [&](const AuditReport& report) {
        print_report(report);
        violations += report.violations.size();
    };
    run(check_symmetry(jac_all));
    run(check_symmetry(jac_core));
    run(check_symmetry(ratio));
    run(check_skew_symmetry(nonrec));
    run(check_ratio_consistency(jac_core, jac_all, ratio));
    run(check_derived_table(gain, nonrec, DerivedRule::DifferenceOfTranspose, 0.015));
    run(check_derived_table(gain, gain, DerivedRule::ColumnAverage, 0.01));
    run(check_derived_table(nonrec, nonrec, DerivedRule::ColumnAverage, 0.01));

    const auto counts = reproduce_headline_counts(&ratio, &gain, &nonrec, band);
    std::cout << "\nheadline counts\n";
    std::cout << "  pair slots: " << counts.pair_slots << ", defined: " << counts.defined_pairs
              << "\n";
    std::cout << "  ratio cells below 1: " << counts.ratio_below_one << ", above 3: "
              << counts.ratio_above_three << "\n";
    for (const auto& cell : counts.above_three_cells) {
        std::cout << "    above 3: " << cell.row << "-" << cell.col << " = " << cell.message
                  << "\n";
    }
    std::cout << "  highest ratio column mean: " << counts.top_column_mean_label << " = "
              << format_value(counts.top_column_mean) << "\n";
    std::cout << "  always-positive partners (" << counts.always_positive.size() << "):";
    for (const auto& e : counts.always_positive) std::cout << " " << e;
    std::cout << "\n  self-gainers:";
    for (const auto& e : counts.self_gainers) std::cout << " " << e;
    std::cout << "\n  pair outcomes: " << counts.win_win << " win-win, " << counts.win_loss
              << " win-loss, " << counts.loss_loss << " loss-loss, " << counts.parity
              << " parity\n";
    std::cout << "  loss-loss pairs:";
    for (const auto& [a, b] : counts.loss_loss_pairs) std::cout << " " << a << "/" << b;
    std::cout << "\n  vampirism counts:";
    for (const auto& [label, count] : counts.vampirism) {
        if (count > 0) std::cout << " " << label << "=" << count;
    }
    std::cout << "\n  roles (band " << format_value(band) << "): " << counts.donors.size()
              << " donors, " << counts.acceptors.size() << " acceptors, "
              << counts.borderline.size() << " borderline";
    for (const auto& e : counts.borderline) std::cout << " (" << e << ")";
    std::cout << "\n\n";

    if (violations > 0) {
        std::cout << "result: " << violations << " violation(s) found\n";
        return kExitAuditViolations;
    }
    std::cout << "result: all checks clean\n";
    return 0;
}

ColorRules rules_for_family(const std::string& family) {
    if (family == "ratio") return ColorRules::ratio_table();
    if (family == "gain") return ColorRules::gain_table();
    if (family == "nonreciprocity") return ColorRules::nonreciprocity_table();
    return ColorRules::none();
}

struct RenderOptions {
    std::string input;
    std::string meta;
    std::string kind = "symmetric";
    std::string entities;
    std::string publications;
    std::string matrix = "jaccard";
    std::string stratum = "all";
    std::uint64_t min_joint = 20;
    std::string family;
    std::string format = "tsv";
    std::string out;
};

int run_render(const RenderOptions& opt) {
    MaskedMatrix matrix;
    std::string family = opt.family;
    if (!opt.input.empty()) {
        if (!opt.meta.empty()) {
            matrix = load_published_table(opt.input, opt.meta).matrix;
        } else {
            std::ifstream in(opt.input);
            if (!in) throw ParseError("cannot open matrix '" + opt.input + "'");
            matrix = matrix_from_tsv(in, matrix_kind_from_name(opt.kind));
        }
    } else {
        std::ifstream entities_in(opt.entities);
        if (!entities_in) throw ParseError("cannot open entities file '" + opt.entities + "'");
        const auto registry = parse_entities(entities_in);
        std::ifstream pubs_in(opt.publications);
        if (!pubs_in) throw ParseError("cannot open publications file '" + opt.publications + "'");
        auto parsed = parse_publications(pubs_in, registry);
        for (const auto& issue : parsed.issues) {
            std::cerr << "warning: line " << issue.line << ": " << issue.message << "\n";
        }
        const auto corpus = Corpus::build(registry, std::move(parsed.records));
        const auto ordering = corpus.registry().ids();
        const ThresholdPolicy policy{opt.min_joint};
        const auto stratum = opt.stratum == "core" ? Stratum::Core : Stratum::All;

        if (opt.matrix == "jaccard") {
            matrix = jaccard_matrix(corpus, ordering, stratum, policy);
            if (family.empty()) family = "none";
        } else if (opt.matrix == "ratio") {
            matrix = ratio_matrix(jaccard_matrix(corpus, ordering, Stratum::Core, policy),
                                  jaccard_matrix(corpus, ordering, Stratum::All, policy));
            if (family.empty()) family = "ratio";
        } else if (opt.matrix == "gain") {
            matrix = gain_matrix(corpus, ordering, policy);
            if (family.empty()) family = "gain";
        } else if (opt.matrix == "nonreciprocity") {
            matrix = nonreciprocity_matrix(gain_matrix(corpus, ordering, policy));
            if (family.empty()) family = "nonreciprocity";
        } else {
            throw ValidationError("unknown matrix '" + opt.matrix + "'");
        }
    }

    const auto rules = rules_for_family(family.empty() ? "none" : family);
    std::string rendered;
    if (opt.format == "svg") {
        rendered = render_heatmap(matrix, rules);
    } else if (opt.format == "markdown") {
        rendered = render_matrix(matrix, TableFormat::Markdown, rules);
    } else if (opt.format == "tsv") {
        rendered = render_matrix(matrix, TableFormat::Tsv, rules);
    } else {
        throw ValidationError("unknown format '" + opt.format + "'");
    }

    if (opt.out.empty()) {
        std::cout << rendered;
    } else {
        std::ofstream out(opt.out, std::ios::binary);
        if (!out) throw Error("cannot write '" + opt.out + "'");
        out << rendered;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"collaboration indicator matrices from bibliographic records"};
    app.require_subcommand(1);

    PipelineConfig pipeline;
    auto* compute = app.add_subcommand(
        "compute", "build all indicator matrices, summary and heatmaps from CSV inputs");
    compute->add_option("--entities", pipeline.entities_csv, "entities CSV (id,abbrev,name)")
        ->required();
    compute
        ->add_option("--publications", pipeline.publications_csv,
                     "publications CSV (pub_id,is_core,entities)")
        ->required();
    compute->add_option("--out-dir", pipeline.out_dir, "output directory")->required();
    compute->add_option("--min-joint", pipeline.min_joint_all,
                        "insufficiency threshold on joint whole-corpus documents");
    compute->add_option("--band", pipeline.borderline_band,
                        "borderline half-width for donor/acceptor roles");
    compute->add_flag("--sort-by-average", pipeline.sort_by_average,
                      "order matrices by average gain instead of registry order");

    AuditPaths audit_paths;
    double audit_band = 0.1;
    auto* audit = app.add_subcommand("audit", "check published tables for internal consistency");
    audit->add_option("--fixtures", audit_paths.fixtures, "directory with fixture TSV/sidecar pairs");
    audit->add_option("--jaccard-all", audit_paths.jaccard_all, "whole-corpus Jaccard fixture stem");
    audit->add_option("--jaccard-core", audit_paths.jaccard_core, "core Jaccard fixture stem");
    audit->add_option("--ratio", audit_paths.ratio, "ratio fixture stem");
    audit->add_option("--gain", audit_paths.gain, "gain fixture stem");
    audit->add_option("--nonreciprocity", audit_paths.nonreciprocity, "non-reciprocity fixture stem");
    audit->add_option("--band", audit_band, "borderline half-width for roles");

    RenderOptions render_options;
    auto* render = app.add_subcommand("render", "render one matrix as TSV, markdown or SVG");
    render->add_option("--input", render_options.input, "matrix TSV to render");
    render->add_option("--meta", render_options.meta, "sidecar JSON for --input");
    render->add_option("--kind", render_options.kind,
                       "matrix kind for --input without sidecar (symmetric|skew-symmetric|asymmetric)");
    render->add_option("--entities", render_options.entities, "entities CSV (corpus mode)");
    render->add_option("--publications", render_options.publications, "publications CSV (corpus mode)");
    render->add_option("--matrix", render_options.matrix,
                       "which matrix to compute (jaccard|ratio|gain|nonreciprocity)");
    render->add_option("--stratum", render_options.stratum, "stratum for --matrix jaccard (all|core)");
    render->add_option("--min-joint", render_options.min_joint, "insufficiency threshold");
    render->add_option("--family", render_options.family,
                       "color band family (ratio|gain|nonreciprocity|none)");
    render->add_option("--format", render_options.format, "tsv|markdown|svg");
    render->add_option("--out", render_options.out, "output file (stdout when omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (compute->parsed()) return run_compute(pipeline);
        if (audit->parsed()) return run_audit(audit_paths, audit_band);
        if (render->parsed()) {
            if (render_options.input.empty() &&
                (render_options.entities.empty() || render_options.publications.empty())) {
                throw ValidationError("render needs either --input or --entities/--publications");
            }
            return run_render(render_options);
        }
    } catch (const Error& e) {
        print_error_record("validation", e.what());
        return kExitValidation;
    } catch (const std::exception& e) {
        print_error_record("internal", e.what());
        return kExitValidation;
    }
    return 0;
}
