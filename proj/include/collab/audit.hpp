#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "collab/classify.hpp"
#include "collab/matrix.hpp"

namespace collab {

/// A table as printed in a publication: 2-decimal values, declared symmetry
/// kind, rounding half-width, and (optionally) a published averages row.
struct PublishedTable {
    MaskedMatrix matrix;
    double rounding_half_width = 0.005;
    std::string table_name;
    std::string source;
    std::map<std::string, double> published_averages;
};

/// Loads a matrix TSV plus its metadata sidecar (JSON: table, kind,
/// rounding_half_width, source, optional averages). Rejects values with more
/// than two decimal places.
PublishedTable load_published_table(const std::filesystem::path& tsv_path,
                                    const std::filesystem::path& meta_path);

struct CellFinding {
    std::string row;
    std::string col;
    double lhs = 0.0;
    double rhs = 0.0;
    std::string message;
};

struct AuditReport {
    std::string check;
    std::vector<CellFinding> violations;
    std::vector<std::string> notes;  // skipped cells and mask mismatches

    bool clean() const { return violations.empty(); }
};

/// Cells where values differ across the diagonal or the mask is asymmetric.
/// The table must declare itself symmetric.
AuditReport check_symmetry(const PublishedTable& table);

/// Cells where values[i][j] + values[j][i] != 0 exactly, or the mask is
/// asymmetric. The table must declare itself skew-symmetric.
AuditReport check_skew_symmetry(const PublishedTable& table);

/// Verifies that each published ratio cell is attainable from the published,
/// rounded core/all values: r must lie in [(c-h)/(a+h), (c+h)/(a-h)]. Cells
/// with a - h <= 0 are skipped with an "interval unbounded" note.
AuditReport check_ratio_consistency(const PublishedTable& core, const PublishedTable& all,
                                    const PublishedTable& ratio);

enum class DerivedRule { DifferenceOfTranspose, ColumnAverage };

/// Recomputes a derived object from the base table and flags deviations
/// beyond the tolerance. DifferenceOfTranspose derives a skew-symmetric table
/// from an asymmetric base; ColumnAverage compares the derived table's
/// published averages row against recomputed column means of the base.
AuditReport check_derived_table(const PublishedTable& base, const PublishedTable& derived,
                                DerivedRule rule, double tolerance);

/// Headline figures recomputed from the published tables.
struct HeadlineCounts {
    std::size_t pair_slots = 0;
    std::size_t defined_pairs = 0;
    std::size_t ratio_below_one = 0;
    std::size_t ratio_above_three = 0;
    std::vector<CellFinding> above_three_cells;
    std::string top_column_mean_label;
    double top_column_mean = 0.0;
    std::set<std::string> always_positive;
    std::set<std::string> self_gainers;
    std::map<std::string, std::size_t> sub_one_columns;
    std::map<std::string, std::size_t> vampirism;
    std::size_t win_win = 0;
    std::size_t win_loss = 0;
    std::size_t loss_loss = 0;
    std::size_t parity = 0;
    std::size_t insufficient = 0;
    std::vector<std::pair<std::string, std::string>> loss_loss_pairs;
    std::vector<std::string> donors;
    std::vector<std::string> acceptors;
    std::vector<std::string> borderline;
};

/// Any table may be null; empty tables produce an empty report.
HeadlineCounts reproduce_headline_counts(const PublishedTable* ratio, const PublishedTable* gain,
                                         const PublishedTable* nonrec, double band = 0.1);

}  // namespace collab
