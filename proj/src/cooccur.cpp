#include "collab/cooccur.hpp"

#include <algorithm>

namespace collab {

std::string_view stratum_name(Stratum s) {
    return s == Stratum::All ? "all" : "core";
}

namespace {

bool in_stratum(const PublicationRecord& record, Stratum stratum) {
    return stratum == Stratum::All || record.is_core;
}

bool contains(const PublicationRecord& record, std::uint32_t idx) {
    return std::binary_search(record.entities.begin(), record.entities.end(), idx);
}

}  // namespace

StratumPairCounts pair_counts(const Corpus& corpus, std::string_view a, std::string_view b,
                              Stratum stratum) {
    if (a == b) throw ValidationError("self pair '" + std::string(a) + "'");
    const auto ia = static_cast<std::uint32_t>(corpus.registry().index_of(a));
    const auto ib = static_cast<std::uint32_t>(corpus.registry().index_of(b));

    StratumPairCounts counts{std::string(a), std::string(b), stratum, 0, 0, 0};
    for (const auto& record : corpus.records()) {
        if (!in_stratum(record, stratum)) continue;
        const bool has_a = contains(record, ia);
        const bool has_b = contains(record, ib);
        if (has_a) ++counts.n_a;
        if (has_b) ++counts.n_b;
        if (has_a && has_b) ++counts.n_ab;
    }
    return counts;
}

std::uint64_t PairCountsTable::joint_count(std::size_t i, std::size_t j) const {
    if (i == j || i >= ids_.size() || j >= ids_.size()) {
        throw ValidationError("pair index out of range");
    }
    const auto [lo, hi] = std::minmax(i, j);
    const std::size_t n = ids_.size();
    return joint_.at(lo * (2 * n - lo - 1) / 2 + (hi - lo - 1));
}

StratumPairCounts PairCountsTable::pair(std::size_t i, std::size_t j) const {
    return {ids_.at(i), ids_.at(j), stratum_, docs_.at(i), docs_.at(j), joint_count(i, j)};
}

PairCountsTable all_pair_counts(const Corpus& corpus, std::span<const std::string> ordering,
                                Stratum stratum) {
    PairCountsTable table;
    table.stratum_ = stratum;
    table.ids_.assign(ordering.begin(), ordering.end());

    const std::size_t n = ordering.size();
    std::vector<std::int64_t> position(corpus.registry().size(), -1);
    for (std::size_t p = 0; p < n; ++p) {
        const auto idx = corpus.registry().index_of(ordering[p]);
        if (position[idx] != -1) {
            throw ValidationError("duplicate entity '" + ordering[p] + "' in ordering");
        }
        position[idx] = static_cast<std::int64_t>(p);
    }

    table.docs_.assign(n, 0);
    table.joint_.assign(n < 2 ? 0 : n * (n - 1) / 2, 0);

    std::vector<std::size_t> present;
    for (const auto& record : corpus.records()) {
        if (!in_stratum(record, stratum)) continue;
        present.clear();
        for (const auto idx : record.entities) {
            if (position[idx] != -1) present.push_back(static_cast<std::size_t>(position[idx]));
        }
        std::sort(present.begin(), present.end());
        for (std::size_t x = 0; x < present.size(); ++x) {
            const std::size_t i = present[x];
            ++table.docs_[i];
            for (std::size_t y = x + 1; y < present.size(); ++y) {
                const std::size_t j = present[y];
                ++table.joint_[i * (2 * n - i - 1) / 2 + (j - i - 1)];
            }
        }
    }
    return table;
}

}  // namespace collab
