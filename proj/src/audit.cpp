#include "collab/audit.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

namespace collab {

namespace {

void require_kind(const PublishedTable& table, MatrixKind kind, std::string_view check) {
    if (table.matrix.kind() != kind) {
        throw ValidationError(std::string(check) + ": table '" + table.table_name +
                              "' is not declared " + std::string(matrix_kind_name(kind)));
    }
}

std::string cell_name(const MaskedMatrix& m, std::size_t i, std::size_t j) {
    return "(" + m.labels()[i] + ", " + m.labels()[j] + ")";
}

}  // namespace

PublishedTable load_published_table(const std::filesystem::path& tsv_path,
                                    const std::filesystem::path& meta_path) {
    std::ifstream meta_in(meta_path);
    if (!meta_in) throw ParseError("cannot open sidecar '" + meta_path.string() + "'");
    nlohmann::json meta;
    try {
        meta_in >> meta;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("sidecar '" + meta_path.string() + "': " + e.what());
    }

    PublishedTable table;
    table.table_name = meta.value("table", std::string{});
    table.source = meta.value("source", std::string{});
    table.rounding_half_width = meta.value("rounding_half_width", 0.005);
    const auto kind = matrix_kind_from_name(meta.value("kind", std::string{"symmetric"}));

    std::ifstream tsv_in(tsv_path);
    if (!tsv_in) throw ParseError("cannot open matrix '" + tsv_path.string() + "'");
    table.matrix = matrix_from_tsv(tsv_in, kind);

    for (std::size_t i = 0; i < table.matrix.size(); ++i) {
        for (std::size_t j = 0; j < table.matrix.size(); ++j) {
            if (i == j) continue;
            if (const auto v = table.matrix.cell(i, j)) {
                if (std::abs(*v * 100.0 - std::round(*v * 100.0)) > 1e-6) {
                    throw ParseError("cell " + cell_name(table.matrix, i, j) +
                                     " has more than 2 decimal places");
                }
            }
        }
    }

    if (meta.contains("averages")) {
        for (const auto& [label, value] : meta.at("averages").items()) {
            if (!table.matrix.index_of(label)) {
                throw ParseError("sidecar averages name unknown label '" + label + "'");
            }
            table.published_averages.emplace(label, value.get<double>());
        }
    }
    return table;
}

AuditReport check_symmetry(const PublishedTable& table) {
    require_kind(table, MatrixKind::Symmetric, "check_symmetry");
    AuditReport report{"symmetry[" + table.table_name + "]", {}, {}};
    const auto& m = table.matrix;
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = i + 1; j < m.size(); ++j) {
            const auto a = m.cell(i, j);
            const auto b = m.cell(j, i);
            if (a.has_value() != b.has_value()) {
                report.violations.push_back(
                    {m.labels()[i], m.labels()[j], a.value_or(0), b.value_or(0),
                     "mask asymmetric at " + cell_name(m, i, j)});
            } else if (a && *a != *b) {
                report.violations.push_back({m.labels()[i], m.labels()[j], *a, *b,
                                             cell_name(m, i, j) + ": " + format_value(*a) +
                                                 " vs " + format_value(*b)});
            }
        }
    }
    return report;
}

AuditReport check_skew_symmetry(const PublishedTable& table) {
    require_kind(table, MatrixKind::SkewSymmetric, "check_skew_symmetry");
    AuditReport report{"skew-symmetry[" + table.table_name + "]", {}, {}};
    const auto& m = table.matrix;
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = i + 1; j < m.size(); ++j) {
            const auto a = m.cell(i, j);
            const auto b = m.cell(j, i);
            if (a.has_value() != b.has_value()) {
                report.violations.push_back(
                    {m.labels()[i], m.labels()[j], a.value_or(0), b.value_or(0),
                     "mask asymmetric at " + cell_name(m, i, j)});
            } else if (a && *a + *b != 0.0) {
                report.violations.push_back({m.labels()[i], m.labels()[j], *a, *b,
                                             cell_name(m, i, j) + ": " + format_value(*a) +
                                                 " + " + format_value(*b) + " != 0"});
            }
        }
    }
    return report;
}

AuditReport check_ratio_consistency(const PublishedTable& core, const PublishedTable& all,
                                    const PublishedTable& ratio) {
    if (core.matrix.labels() != all.matrix.labels() ||
        core.matrix.labels() != ratio.matrix.labels()) {
        throw ValidationError("check_ratio_consistency: orderings differ");
    }
    AuditReport report{"ratio-consistency[" + ratio.table_name + "]", {}, {}};
    const auto& m = ratio.matrix;
    const double hc = core.rounding_half_width;
    const double ha = all.rounding_half_width;
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (i == j) continue;
            const auto r = m.cell(i, j);
            if (!r) continue;
            const auto c = core.matrix.cell(i, j);
            const auto a = all.matrix.cell(i, j);
            if (!c || !a) {
                report.violations.push_back({m.labels()[i], m.labels()[j], *r, 0.0,
                                             cell_name(m, i, j) +
                                                 ": ratio published but a Jaccard cell is masked"});
                continue;
            }
            if (*a - ha <= 0.0) {
                report.notes.push_back(cell_name(m, i, j) + ": interval unbounded (all-cell " +
                                       format_value(*a) + " within rounding of zero); skipped");
                continue;
            }
            const double lo = (*c - hc) / (*a + ha);
            const double hi = (*c + hc) / (*a - ha);
            if (*r < lo - 1e-12 || *r > hi + 1e-12) {
                char msg[160];
                std::snprintf(msg, sizeof(msg), "%s: %.2f outside [%.4f, %.4f] from core %.2f / all %.2f",
                              cell_name(m, i, j).c_str(), *r, lo, hi, *c, *a);
                report.violations.push_back({m.labels()[i], m.labels()[j], *r, lo, msg});
            }
        }
    }
    return report;
}

AuditReport check_derived_table(const PublishedTable& base, const PublishedTable& derived,
                                DerivedRule rule, double tolerance) {
    if (rule == DerivedRule::DifferenceOfTranspose) {
        require_kind(base, MatrixKind::Asymmetric, "check_derived_table");
        require_kind(derived, MatrixKind::SkewSymmetric, "check_derived_table");
        if (base.matrix.labels() != derived.matrix.labels()) {
            throw ValidationError("check_derived_table: orderings differ");
        }
        AuditReport report{"difference-of-transpose[" + derived.table_name + "]", {}, {}};
        const auto& b = base.matrix;
        const auto& d = derived.matrix;
        for (std::size_t i = 0; i < d.size(); ++i) {
            for (std::size_t j = 0; j < d.size(); ++j) {
                if (i == j) continue;
                const auto dv = d.cell(i, j);
                const auto received = b.cell(i, j);
                const auto given = b.cell(j, i);
                if (!dv) {
                    if (received && given) {
                        report.notes.push_back(cell_name(d, i, j) +
                                               ": derived cell masked but base cells defined");
                    }
                    continue;
                }
                if (!received || !given) {
                    report.violations.push_back({d.labels()[i], d.labels()[j], *dv, 0.0,
                                                 cell_name(d, i, j) +
                                                     ": derived cell defined but base masked"});
                    continue;
                }
                const double expected = *received - *given;
                if (std::abs(expected - *dv) > tolerance) {
                    report.violations.push_back(
                        {d.labels()[i], d.labels()[j], *dv, expected,
                         cell_name(d, i, j) + ": " + format_value(*received) + " - " +
                             format_value(*given) + " = " + format_value(expected) +
                             ", published " + format_value(*dv)});
                }
            }
        }
        return report;
    }

    // ColumnAverage: derived carries the published averages row for the base.
    if (derived.published_averages.empty()) {
        throw ValidationError("check_derived_table: no published averages row");
    }
    AuditReport report{"column-averages[" + derived.table_name + "]", {}, {}};
    const auto computed = column_averages(base.matrix);
    for (const auto& [label, published] : derived.published_averages) {
        const auto it = computed.find(label);
        if (it == computed.end()) {
            report.violations.push_back({"average", label, published, 0.0,
                                         "column '" + label + "' has no defined cells"});
            continue;
        }
        if (std::abs(it->second - published) > tolerance) {
            report.violations.push_back({"average", label, published, it->second,
                                         "column '" + label + "': computed " +
                                             format_value(it->second) + ", published " +
                                             format_value(published)});
        }
    }
    for (const auto& [label, value] : computed) {
        if (!derived.published_averages.count(label)) {
            report.notes.push_back("column '" + label + "' (" + format_value(value) +
                                   ") has no published average");
        }
    }
    return report;
}

HeadlineCounts reproduce_headline_counts(const PublishedTable* ratio, const PublishedTable* gain,
                                         const PublishedTable* nonrec, double band) {
    HeadlineCounts counts;
    const Summary summary = summarize(ratio ? &ratio->matrix : nullptr,
                                      gain ? &gain->matrix : nullptr,
                                      nonrec ? &nonrec->matrix : nullptr, band);
    counts.pair_slots = summary.pair_slots;
    counts.defined_pairs = summary.pairs_defined;
    counts.ratio_below_one = summary.ratio_below_one;
    counts.ratio_above_three = summary.ratio_above_three;
    counts.win_win = summary.win_win;
    counts.win_loss = summary.win_loss;
    counts.loss_loss = summary.loss_loss;
    counts.parity = summary.parity;
    counts.insufficient = summary.insufficient;
    counts.loss_loss_pairs = summary.loss_loss_pairs;

    if (ratio) {
        const auto& m = ratio->matrix;
        for (std::size_t i = 0; i < m.size(); ++i) {
            for (std::size_t j = i + 1; j < m.size(); ++j) {
                const auto v = m.cell(i, j);
                if (v && m.defined(j, i) && *v > 3.0) {
                    counts.above_three_cells.push_back(
                        {m.labels()[i], m.labels()[j], *v, 0.0, format_value(*v)});
                }
            }
        }
        for (const auto& [label, mean] : column_averages(m)) {
            if (counts.top_column_mean_label.empty() || mean > counts.top_column_mean) {
                counts.top_column_mean_label = label;
                counts.top_column_mean = mean;
            }
        }
    }

    if (gain) {
        const auto& m = gain->matrix;
        counts.always_positive = always_positive_partners(m);
        counts.self_gainers = self_gainers(m);
        for (std::size_t j = 0; j < m.size(); ++j) {
            std::size_t below = 0;
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (i == j) continue;
                const auto v = m.cell(i, j);
                if (v && *v < 1.0) ++below;
            }
            counts.sub_one_columns.emplace(m.labels()[j], below);
            counts.vampirism.emplace(m.labels()[j], vampirism_count(m, m.labels()[j]));
        }
    }

    for (const auto& [label, role] : summary.roles) {
        switch (role) {
            case Role::Donor: counts.donors.push_back(label); break;
            case Role::Acceptor: counts.acceptors.push_back(label); break;
            case Role::Borderline: counts.borderline.push_back(label); break;
        }
    }
    return counts;
}

}  // namespace collab
