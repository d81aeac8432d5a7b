#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "collab/classify.hpp"
#include "collab/matrix.hpp"

namespace collab {

/// Ordered value bands for one table family; the first matching band wins,
/// values matching no band are "plain". Band membership is decided on the
/// rounded display value.
class ColorRules {
public:
    std::string_view band(double rounded_value) const;

    /// Ratio-of-Jaccards family: yellow > 3, bold > 2, lightblue < 1.
    static ColorRules ratio_table();
    /// Gain family: lightblue < 1.
    static ColorRules gain_table();
    /// Non-reciprocity family: blue < -3, lightblue < -0.1,
    /// yellow in [-0.1, 0.1].
    static ColorRules nonreciprocity_table();
    /// No bands; every value is plain.
    static ColorRules none();

private:
    enum class Op { Less, Greater, Between };
    struct Band {
        std::string token;
        Op op;
        double a;
        double b;
    };
    std::vector<Band> bands_;
};

enum class TableFormat { Tsv, Markdown };

/// TSV uses empty cells for the mask; markdown wraps "bold"-band values in
/// ** ** and annotates color bands as "value [token]".
std::string render_matrix(const MaskedMatrix& m, TableFormat format, const ColorRules& rules);

/// SVG heatmap: one rectangle per cell with the band fill, hatched masked
/// cells, abbreviation labels on both axes. Requires at least 2 entities.
std::string render_heatmap(const MaskedMatrix& m, const ColorRules& rules);

struct PipelineConfig {
    std::filesystem::path entities_csv;
    std::filesystem::path publications_csv;
    std::filesystem::path out_dir;
    std::uint64_t min_joint_all = 20;
    double borderline_band = 0.1;
    bool sort_by_average = false;  // order matrices by gain column average instead of registry order
};

struct PipelineOutcome {
    int status = 0;  // 0 ok, 2 validation failure
    std::string error;
    std::vector<std::filesystem::path> artifacts;
    std::vector<std::string> warnings;
};

/// Computes both Jaccard matrices, the ratio, gain and non-reciprocity
/// matrices, column averages and the classification summary, then writes them
/// plus heatmaps into out_dir. Output is byte-identical across runs on the
/// same inputs; nothing is written when the inputs fail to load.
PipelineOutcome run_pipeline(const PipelineConfig& config);

}  // namespace collab
