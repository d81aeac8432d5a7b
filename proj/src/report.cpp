#include "collab/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

namespace collab {

std::string_view ColorRules::band(double rounded_value) const {
    for (const auto& b : bands_) {
        switch (b.op) {
            case Op::Less:
                if (rounded_value < b.a) return b.token;
                break;
            case Op::Greater:
                if (rounded_value > b.a) return b.token;
                break;
            case Op::Between:
                if (rounded_value >= b.a && rounded_value <= b.b) return b.token;
                break;
        }
    }
    return "plain";
}

ColorRules ColorRules::ratio_table() {
    ColorRules rules;
    rules.bands_ = {{"yellow", Op::Greater, 3.0, 0.0},
                    {"bold", Op::Greater, 2.0, 0.0},
                    {"lightblue", Op::Less, 1.0, 0.0}};
    return rules;
}

ColorRules ColorRules::gain_table() {
    ColorRules rules;
    rules.bands_ = {{"lightblue", Op::Less, 1.0, 0.0}};
    return rules;
}

ColorRules ColorRules::nonreciprocity_table() {
    ColorRules rules;
    rules.bands_ = {{"blue", Op::Less, -3.0, 0.0},
                    {"lightblue", Op::Less, -0.1, 0.0},
                    {"yellow", Op::Between, -0.1, 0.1}};
    return rules;
}

ColorRules ColorRules::none() {
    return {};
}

namespace {

std::string markdown_cell(double v, const ColorRules& rules) {
    const double rounded = round2(v);
    const auto text = format_value(v);
    const auto token = rules.band(rounded);
    if (token == "plain") return text;
    if (token == "bold") return "**" + text + "**";
    return text + " [" + std::string(token) + "]";
}

}  // namespace

std::string render_matrix(const MaskedMatrix& m, TableFormat format, const ColorRules& rules) {
    if (format == TableFormat::Tsv) return to_tsv(m);

    std::string out = "|  |";
    for (const auto& label : m.labels()) out += " " + label + " |";
    out += "\n|---|";
    for (std::size_t j = 0; j < m.size(); ++j) out += "---|";
    out += "\n";
    for (std::size_t i = 0; i < m.size(); ++i) {
        out += "| " + m.labels()[i] + " |";
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (i == j || !m.defined(i, j)) {
                out += "  |";
            } else {
                out += " " + markdown_cell(m.value(i, j), rules) + " |";
            }
        }
        out += "\n";
    }
    return out;
}

namespace {

constexpr int kCell = 26;
constexpr int kLabelGutter = 64;

const char* band_fill(std::string_view token) {
    if (token == "yellow") return "#ffe599";
    if (token == "bold") return "#b6d7a8";
    if (token == "lightblue") return "#cfe2f3";
    if (token == "blue") return "#3c78d8";
    return "#f7f7f7";
}

void append_svg_text(std::string& out, int x, int y, const std::string& anchor,
                     const std::string& text) {
    out += "<text class=\"lbl\" x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) +
           "\" text-anchor=\"" + anchor + "\">" + text + "</text>\n";
}

}  // namespace

std::string render_heatmap(const MaskedMatrix& m, const ColorRules& rules) {
    const std::size_t n = m.size();
    if (n < 2) throw ValidationError("heatmap needs at least 2 entities");

    const int width = kLabelGutter + static_cast<int>(n) * kCell + 8;
    const int height = kLabelGutter + static_cast<int>(n) * kCell + 8;
    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
           "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) +
           " " + std::to_string(height) + "\">\n";
    out += "<style>\n"
           ".cell { stroke: #555555; stroke-width: 0.5; }\n"
           ".lbl { font: 9px sans-serif; fill: #111111; }\n"
           "</style>\n";
    out += "<defs>\n"
           "<pattern id=\"hatch\" width=\"5\" height=\"5\" patternUnits=\"userSpaceOnUse\" "
           "patternTransform=\"rotate(45)\">\n"
           "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"5\" stroke=\"#bbbbbb\" stroke-width=\"1.5\"/>\n"
           "</pattern>\n"
           "</defs>\n";

    for (std::size_t j = 0; j < n; ++j) {
        const int x = kLabelGutter + static_cast<int>(j) * kCell + kCell / 2;
        out += "<text class=\"lbl\" x=\"" + std::to_string(x) + "\" y=\"" +
               std::to_string(kLabelGutter - 6) + "\" text-anchor=\"middle\" transform=\"rotate(-60 " +
               std::to_string(x) + " " + std::to_string(kLabelGutter - 6) + ")\">" + m.labels()[j] +
               "</text>\n";
    }
    for (std::size_t i = 0; i < n; ++i) {
        append_svg_text(out, kLabelGutter - 6,
                        kLabelGutter + static_cast<int>(i) * kCell + kCell / 2 + 3, "end",
                        m.labels()[i]);
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const int x = kLabelGutter + static_cast<int>(j) * kCell;
            const int y = kLabelGutter + static_cast<int>(i) * kCell;
            std::string fill = "url(#hatch)";
            std::string title = m.labels()[i] + " / " + m.labels()[j] + ": insufficient data";
            if (i != j && m.defined(i, j)) {
                const double v = m.value(i, j);
                fill = band_fill(rules.band(round2(v)));
                title = m.labels()[i] + " / " + m.labels()[j] + ": " + format_value(v);
            }
            out += "<rect class=\"cell\" x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) +
                   "\" width=\"" + std::to_string(kCell) + "\" height=\"" + std::to_string(kCell) +
                   "\" fill=\"" + fill + "\"><title>" + title + "</title></rect>\n";
        }
    }
    out += "</svg>\n";
    return out;
}

namespace {

std::string join(const std::vector<std::string>& items, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += items[i];
    }
    return out;
}

std::string averages_tsv(const MaskedMatrix& gain, const MaskedMatrix& nonrec) {
    const auto gain_avg = column_averages(gain);
    const auto nonrec_avg = column_averages(nonrec);
    std::string out;
    for (const auto& label : gain.labels()) out += "\t" + label;
    out += "\n";
    const auto emit_row = [&](const std::string& name, const std::map<std::string, double>& avg) {
        out += name;
        for (const auto& label : gain.labels()) {
            out += '\t';
            const auto it = avg.find(label);
            if (it != avg.end()) out += format_value(it->second);
        }
        out += '\n';
    };
    emit_row("gain", gain_avg);
    emit_row("nonreciprocity", nonrec_avg);
    return out;
}

std::string summary_text(const Corpus& corpus, const Summary& summary, const MaskedMatrix& gain,
                         const PipelineConfig& config) {
    std::ostringstream out;
    out << "entities=" << corpus.registry().size() << "\n";
    out << "records=" << corpus.record_count() << "\n";
    out << "core_records=" << corpus.core_record_count() << "\n";
    out << "min_joint_all=" << config.min_joint_all << "\n";
    out << "borderline_band=" << format_value(config.borderline_band) << "\n";
    out << "pair_slots=" << summary.pair_slots << "\n";
    out << "pairs_defined=" << summary.pairs_defined << "\n";
    out << "ratio_below_one=" << summary.ratio_below_one << "\n";
    out << "ratio_above_three=" << summary.ratio_above_three << "\n";
    out << "win_win=" << summary.win_win << "\n";
    out << "win_loss=" << summary.win_loss << "\n";
    out << "loss_loss=" << summary.loss_loss << "\n";
    out << "parity=" << summary.parity << "\n";
    out << "insufficient=" << summary.insufficient << "\n";

    std::vector<std::string> loss_pairs;
    for (const auto& [a, b] : summary.loss_loss_pairs) loss_pairs.push_back(a + "/" + b);
    out << "loss_loss_pairs=" << join(loss_pairs, ",") << "\n";

    std::vector<std::string> donors, acceptors, borderline;
    for (const auto& label : gain.labels()) {
        const auto it = summary.roles.find(label);
        if (it == summary.roles.end()) continue;
        if (it->second == Role::Donor) donors.push_back(label);
        if (it->second == Role::Acceptor) acceptors.push_back(label);
        if (it->second == Role::Borderline) borderline.push_back(label);
    }
    out << "donors=" << join(donors, ",") << "\n";
    out << "acceptors=" << join(acceptors, ",") << "\n";
    out << "borderline=" << join(borderline, ",") << "\n";

    const auto positive = always_positive_partners(gain);
    const auto gainers = self_gainers(gain);
    out << "always_positive=" << join({positive.begin(), positive.end()}, ",") << "\n";
    out << "self_gainers=" << join({gainers.begin(), gainers.end()}, ",") << "\n";
    for (const auto& label : gain.labels()) {
        out << "vampirism." << label << "=" << vampirism_count(gain, label) << "\n";
    }
    return out.str();
}

void write_file(const std::filesystem::path& path, const std::string& content,
                std::vector<std::filesystem::path>& artifacts) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << content;
    artifacts.push_back(path);
}

}  // namespace

PipelineOutcome run_pipeline(const PipelineConfig& config) {
    PipelineOutcome outcome;
    try {
        std::ifstream entities_in(config.entities_csv);
        if (!entities_in) {
            throw ParseError("cannot open entities file '" + config.entities_csv.string() + "'");
        }
        const auto registry = parse_entities(entities_in);

        std::ifstream pubs_in(config.publications_csv);
        if (!pubs_in) {
            throw ParseError("cannot open publications file '" + config.publications_csv.string() +
                             "'");
        }
        auto parsed = parse_publications(pubs_in, registry);
        for (const auto& issue : parsed.issues) {
            outcome.warnings.push_back("line " + std::to_string(issue.line) + ": " + issue.message);
        }
        if (parsed.dropped_unknown_ids > 0) {
            outcome.warnings.push_back(std::to_string(parsed.dropped_unknown_ids) +
                                       " unknown entity id(s) dropped");
        }

        const auto corpus = Corpus::build(registry, std::move(parsed.records));
        const ThresholdPolicy policy{config.min_joint_all};

        std::vector<std::string> ordering = corpus.registry().ids();
        auto gain = gain_matrix(corpus, ordering, policy, &outcome.warnings);
        if (config.sort_by_average) {
            const auto averages = column_averages(gain);
            std::stable_sort(ordering.begin(), ordering.end(),
                             [&](const std::string& a, const std::string& b) {
                                 const auto ita = averages.find(
                                     corpus.registry().at(corpus.registry().index_of(a)).abbrev);
                                 const auto itb = averages.find(
                                     corpus.registry().at(corpus.registry().index_of(b)).abbrev);
                                 const double va = ita == averages.end() ? -1e300 : ita->second;
                                 const double vb = itb == averages.end() ? -1e300 : itb->second;
                                 return va > vb;
                             });
            gain = gain_matrix(corpus, ordering, policy);
        }

        const auto jaccard_all = jaccard_matrix(corpus, ordering, Stratum::All, policy);
        const auto jaccard_core = jaccard_matrix(corpus, ordering, Stratum::Core, policy);
        const auto ratio = ratio_matrix(jaccard_core, jaccard_all);
        const auto nonrec = nonreciprocity_matrix(gain);
        const auto summary = summarize(&ratio, &gain, &nonrec, config.borderline_band);

        std::filesystem::create_directories(config.out_dir);
        const auto& dir = config.out_dir;
        write_file(dir / "jaccard_all.tsv", to_tsv(jaccard_all), outcome.artifacts);
        write_file(dir / "jaccard_core.tsv", to_tsv(jaccard_core), outcome.artifacts);
        write_file(dir / "ratio.tsv", to_tsv(ratio), outcome.artifacts);
        write_file(dir / "gain.tsv", to_tsv(gain), outcome.artifacts);
        write_file(dir / "nonreciprocity.tsv", to_tsv(nonrec), outcome.artifacts);
        write_file(dir / "averages.tsv", averages_tsv(gain, nonrec), outcome.artifacts);
        write_file(dir / "summary.txt", summary_text(corpus, summary, gain, config),
                   outcome.artifacts);
        write_file(dir / "heatmap_ratio.svg", render_heatmap(ratio, ColorRules::ratio_table()),
                   outcome.artifacts);
        write_file(dir / "heatmap_gain.svg", render_heatmap(gain, ColorRules::gain_table()),
                   outcome.artifacts);
        write_file(dir / "heatmap_nonreciprocity.svg",
                   render_heatmap(nonrec, ColorRules::nonreciprocity_table()), outcome.artifacts);
    } catch (const Error& e) {
        outcome.status = 2;
        outcome.error = e.what();
    } catch (const std::exception& e) {
        outcome.status = 2;
        outcome.error = e.what();
    }
    return outcome;
}

}  // namespace collab
