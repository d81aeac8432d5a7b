#include "collab/matrix.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

#include "collab/indicators.hpp"

namespace collab {

std::string_view matrix_kind_name(MatrixKind kind) {
    switch (kind) {
        case MatrixKind::Symmetric: return "symmetric";
        case MatrixKind::SkewSymmetric: return "skew-symmetric";
        case MatrixKind::Asymmetric: return "asymmetric";
    }
    return "symmetric";
}

MatrixKind matrix_kind_from_name(std::string_view name) {
    if (name == "symmetric") return MatrixKind::Symmetric;
    if (name == "skew-symmetric") return MatrixKind::SkewSymmetric;
    if (name == "asymmetric") return MatrixKind::Asymmetric;
    throw ParseError("unknown matrix kind '" + std::string(name) + "'");
}

MaskedMatrix::MaskedMatrix(std::vector<std::string> labels, MatrixKind kind)
    : labels_(std::move(labels)),
      values_(labels_.size() * labels_.size(), 0.0),
      defined_(labels_.size() * labels_.size(), 0),
      kind_(kind) {}

std::size_t MaskedMatrix::pos(std::size_t i, std::size_t j) const {
    if (i >= labels_.size() || j >= labels_.size()) {
        throw ValidationError("matrix index out of range");
    }
    return i * labels_.size() + j;
}

bool MaskedMatrix::defined(std::size_t i, std::size_t j) const {
    return defined_[pos(i, j)] != 0;
}

double MaskedMatrix::value(std::size_t i, std::size_t j) const {
    const auto p = pos(i, j);
    if (!defined_[p]) {
        throw ValidationError("cell (" + labels_[i] + ", " + labels_[j] + ") is masked");
    }
    return values_[p];
}

std::optional<double> MaskedMatrix::cell(std::size_t i, std::size_t j) const {
    const auto p = pos(i, j);
    if (!defined_[p]) return std::nullopt;
    return values_[p];
}

void MaskedMatrix::set(std::size_t i, std::size_t j, double v) {
    if (i == j) throw ValidationError("the diagonal is never defined");
    const auto p = pos(i, j);
    values_[p] = v;
    defined_[p] = 1;
}

void MaskedMatrix::mask(std::size_t i, std::size_t j) {
    const auto p = pos(i, j);
    values_[p] = 0.0;
    defined_[p] = 0;
}

std::optional<std::size_t> MaskedMatrix::index_of(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] == label) return i;
    }
    return std::nullopt;
}

std::size_t MaskedMatrix::require_index(std::string_view label) const {
    const auto idx = index_of(label);
    if (!idx) throw ValidationError("unknown label '" + std::string(label) + "'");
    return *idx;
}

std::size_t MaskedMatrix::defined_cell_count() const {
    std::size_t n = 0;
    for (const char d : defined_) n += d != 0;
    return n;
}

namespace {

std::vector<std::string> ordering_abbrevs(const Corpus& corpus,
                                          std::span<const std::string> ordering) {
    std::vector<std::string> labels;
    labels.reserve(ordering.size());
    for (const auto& id : ordering) {
        labels.push_back(corpus.registry().at(corpus.registry().index_of(id)).abbrev);
    }
    return labels;
}

void require_valid_policy(const ThresholdPolicy& policy) {
    if (policy.min_joint_all < 1) throw ValidationError("min_joint_all must be at least 1");
}

}  // namespace

MaskedMatrix jaccard_matrix(const Corpus& corpus, std::span<const std::string> ordering,
                            Stratum stratum, const ThresholdPolicy& policy) {
    require_valid_policy(policy);
    const auto all = all_pair_counts(corpus, ordering, Stratum::All);
    const auto core = all_pair_counts(corpus, ordering, Stratum::Core);
    const auto& wanted = stratum == Stratum::All ? all : core;

    MaskedMatrix m(ordering_abbrevs(corpus, ordering), MatrixKind::Symmetric);
    const std::size_t n = ordering.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto joint_all = all.joint_count(i, j);
            const auto union_all = all.doc_count(i) + all.doc_count(j) - joint_all;
            const auto union_core =
                core.doc_count(i) + core.doc_count(j) - core.joint_count(i, j);
            if (joint_all < policy.min_joint_all || union_all == 0 || union_core == 0) continue;
            const auto p = wanted.pair(i, j);
            const double v = jaccard_index(p.n_a, p.n_b, p.n_ab);
            m.set(i, j, v);
            m.set(j, i, v);
        }
    }
    return m;
}

MaskedMatrix ratio_matrix(const MaskedMatrix& core, const MaskedMatrix& all) {
    if (core.labels() != all.labels()) {
        throw ValidationError("ratio matrix: orderings of the two strata differ");
    }
    MaskedMatrix m(core.labels(), MatrixKind::Symmetric);
    const std::size_t n = core.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const auto c = core.cell(i, j);
            const auto a = all.cell(i, j);
            if (!c || !a || *a == 0.0) continue;
            m.set(i, j, core_ratio(*c, *a));
        }
    }
    return m;
}

MaskedMatrix gain_matrix(const Corpus& corpus, std::span<const std::string> ordering,
                         const ThresholdPolicy& policy, std::vector<std::string>* warnings) {
    require_valid_policy(policy);
    const auto all = all_pair_counts(corpus, ordering, Stratum::All);
    const auto core = all_pair_counts(corpus, ordering, Stratum::Core);

    const std::size_t n = ordering.size();
    std::vector<std::uint64_t> own_all(n), own_core(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto idx = corpus.registry().index_of(ordering[i]);
        own_all[i] = corpus.count_all_at(idx);
        own_core[i] = corpus.count_core_at(idx);
        if (warnings) {
            if (own_all[i] == 0) {
                warnings->push_back("entity '" + ordering[i] +
                                    "' has no documents; its gain cells are masked");
            } else if (own_core[i] == 0) {
                warnings->push_back("entity '" + ordering[i] +
                                    "' has no core documents; its gain cells are masked");
            }
        }
    }

    MaskedMatrix m(ordering_abbrevs(corpus, ordering), MatrixKind::Asymmetric);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto joint_all = all.joint_count(i, j);
            const bool pair_ok = own_all[i] > 0 && own_core[i] > 0 && own_all[j] > 0 &&
                                 own_core[j] > 0 && joint_all >= policy.min_joint_all;
            if (!pair_ok) continue;
            const auto joint_core = core.joint_count(i, j);
            m.set(i, j, collaborative_gain(joint_core, joint_all, own_core[i], own_all[i]));
            m.set(j, i, collaborative_gain(joint_core, joint_all, own_core[j], own_all[j]));
        }
    }
    return m;
}

MaskedMatrix nonreciprocity_matrix(const MaskedMatrix& gain) {
    if (gain.kind() != MatrixKind::Asymmetric) {
        throw ValidationError("non-reciprocity expects an asymmetric gain matrix");
    }
    MaskedMatrix m(gain.labels(), MatrixKind::SkewSymmetric);
    const std::size_t n = gain.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto received = gain.cell(i, j);
            const auto given = gain.cell(j, i);
            if (!received || !given) continue;
            const double d = *received - *given;
            m.set(i, j, d);
            m.set(j, i, -d);
        }
    }
    return m;
}

std::map<std::string, double> column_averages(const MaskedMatrix& m) {
    std::map<std::string, double> out;
    const std::size_t n = m.size();
    for (std::size_t j = 0; j < n; ++j) {
        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == j) continue;
            if (const auto v = m.cell(i, j)) {
                sum += *v;
                ++count;
            }
        }
        if (count > 0) out.emplace(m.labels()[j], sum / static_cast<double>(count));
    }
    return out;
}

double round2(double v) {
    return static_cast<double>(std::llround(v * 100.0)) / 100.0;
}

std::string format_value(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.2f", round2(v));
    return buf;
}

std::string to_tsv(const MaskedMatrix& m) {
    std::string out;
    for (const auto& label : m.labels()) {
        out += '\t';
        out += label;
    }
    out += '\n';
    for (std::size_t i = 0; i < m.size(); ++i) {
        out += m.labels()[i];
        for (std::size_t j = 0; j < m.size(); ++j) {
            out += '\t';
            if (i != j) {
                if (const auto v = m.cell(i, j)) out += format_value(*v);
            }
        }
        out += '\n';
    }
    return out;
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto tab = line.find('\t', start);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
    if (!fields.empty() && !fields.back().empty() && fields.back().back() == '\r') {
        fields.back().pop_back();
    }
    return fields;
}

double parse_cell(const std::string& text, std::size_t row, std::size_t col) {
    std::size_t consumed = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &consumed);
    } catch (const std::exception&) {
        consumed = 0;
    }
    if (consumed != text.size() || consumed == 0) {
        throw ParseError("cell (" + std::to_string(row) + ", " + std::to_string(col) +
                         "): invalid number '" + text + "'");
    }
    return v;
}

}  // namespace

MaskedMatrix matrix_from_tsv(std::istream& in, MatrixKind kind) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty matrix file");
    auto header = split_tabs(line);
    if (header.empty() || !header.front().empty()) {
        throw ParseError("matrix header must start with an empty cell");
    }
    std::vector<std::string> labels(header.begin() + 1, header.end());
    if (labels.empty()) throw ParseError("matrix header has no labels");
    for (const auto& label : labels) {
        if (label.empty()) throw ParseError("matrix header has an empty label");
    }

    MaskedMatrix m(labels, kind);
    const std::size_t n = labels.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::getline(in, line)) {
            throw ParseError("matrix has " + std::to_string(i) + " rows, expected " +
                             std::to_string(n));
        }
        auto fields = split_tabs(line);
        if (fields.empty() || fields[0] != labels[i]) {
            throw ParseError("row " + std::to_string(i + 1) + ": label '" +
                             (fields.empty() ? "" : fields[0]) + "' does not match header '" +
                             labels[i] + "'");
        }
        if (fields.size() > n + 1) {
            throw ParseError("row '" + labels[i] + "' has too many cells");
        }
        fields.resize(n + 1);
        for (std::size_t j = 0; j < n; ++j) {
            const auto& text = fields[j + 1];
            if (text.empty()) continue;
            if (i == j) throw ParseError("row '" + labels[i] + "': the diagonal must be empty");
            m.set(i, j, parse_cell(text, i, j));
        }
    }
    while (std::getline(in, line)) {
        if (!split_tabs(line).front().empty()) {
            throw ParseError("matrix has more rows than header labels");
        }
    }
    return m;
}

}  // namespace collab
