#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "collab/cooccur.hpp"
#include "collab/corpus.hpp"

namespace collab {

enum class MatrixKind { Symmetric, SkewSymmetric, Asymmetric };

std::string_view matrix_kind_name(MatrixKind kind);
MatrixKind matrix_kind_from_name(std::string_view name);

/// Square indicator matrix over an entity ordering with an insufficiency mask.
/// The diagonal is never defined. Labels are the display abbreviations of the
/// ordering and double as row/column headers in the TSV form.
class MaskedMatrix {
public:
    MaskedMatrix() = default;
    MaskedMatrix(std::vector<std::string> labels, MatrixKind kind);

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    MatrixKind kind() const { return kind_; }

    bool defined(std::size_t i, std::size_t j) const;
    /// Value of a defined cell; throws ValidationError on a masked cell.
    double value(std::size_t i, std::size_t j) const;
    std::optional<double> cell(std::size_t i, std::size_t j) const;

    void set(std::size_t i, std::size_t j, double v);
    void mask(std::size_t i, std::size_t j);

    std::optional<std::size_t> index_of(std::string_view label) const;
    /// Index for a known label; throws ValidationError otherwise.
    std::size_t require_index(std::string_view label) const;

    std::size_t defined_cell_count() const;

private:
    std::size_t pos(std::size_t i, std::size_t j) const;

    std::vector<std::string> labels_;
    std::vector<double> values_;
    std::vector<char> defined_;
    MatrixKind kind_ = MatrixKind::Symmetric;
};

/// Pairs with fewer joint whole-corpus documents than this are insufficient
/// data and masked in every matrix.
struct ThresholdPolicy {
    std::uint64_t min_joint_all = 20;
};

/// Jaccard indices for one stratum over the ordering. A cell is masked when
/// the ALL-stratum joint count falls below the policy threshold or when the
/// indicator is undefined in either stratum, so both strata share one mask.
MaskedMatrix jaccard_matrix(const Corpus& corpus, std::span<const std::string> ordering,
                            Stratum stratum, const ThresholdPolicy& policy);

/// Elementwise core/all ratio. A cell is masked when either input is masked
/// or the whole-corpus cell is zero.
MaskedMatrix ratio_matrix(const MaskedMatrix& core, const MaskedMatrix& all);

/// Collaborative gain received by the row entity from the column entity.
/// The mask is symmetric: a cell is masked by the joint-count threshold or
/// when either entity of the pair has no (core) output; entities without core
/// output are also reported through `warnings` when given.
MaskedMatrix gain_matrix(const Corpus& corpus, std::span<const std::string> ordering,
                         const ThresholdPolicy& policy,
                         std::vector<std::string>* warnings = nullptr);

/// gain[i][j] - gain[j][i]; positive at (row, col) means the column entity
/// brought the row entity more gain than it received back. Skew-symmetric by
/// construction; masked where either constituent cell is masked.
MaskedMatrix nonreciprocity_matrix(const MaskedMatrix& gain);

/// Arithmetic mean of each column over its defined, off-diagonal cells.
/// Columns with no defined cells have no entry.
std::map<std::string, double> column_averages(const MaskedMatrix& m);

/// Display rounding: half away from zero to 2 decimals. Applied only when
/// rendering, never inside computations.
double round2(double v);
/// "%.2f" rendering of round2(v).
std::string format_value(double v);

/// Matrix TSV: first row is the ordering, first column the row labels, empty
/// string for masked cells, values rounded to 2 decimals.
std::string to_tsv(const MaskedMatrix& m);
MaskedMatrix matrix_from_tsv(std::istream& in, MatrixKind kind);

}  // namespace collab
