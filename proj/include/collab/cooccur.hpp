#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "collab/corpus.hpp"

namespace collab {

/// Publication sub-universe the counts are taken over.
enum class Stratum { All, Core };

std::string_view stratum_name(Stratum s);

/// Document counts for one unordered entity pair in one stratum.
/// n_ab counts records whose entity set contains both a and b.
struct StratumPairCounts {
    std::string a;
    std::string b;
    Stratum stratum = Stratum::All;
    std::uint64_t n_a = 0;
    std::uint64_t n_b = 0;
    std::uint64_t n_ab = 0;
};

/// Counts for a single pair. Throws ValidationError on a self pair or an
/// unregistered id.
StratumPairCounts pair_counts(const Corpus& corpus, std::string_view a, std::string_view b,
                              Stratum stratum);

/// Per-entity and per-pair counts over a fixed ordering, filled in one pass
/// over the records.
class PairCountsTable {
public:
    const std::vector<std::string>& ordering() const { return ids_; }
    Stratum stratum() const { return stratum_; }
    std::size_t size() const { return ids_.size(); }

    std::uint64_t doc_count(std::size_t i) const { return docs_.at(i); }
    std::uint64_t joint_count(std::size_t i, std::size_t j) const;
    StratumPairCounts pair(std::size_t i, std::size_t j) const;

private:
    friend PairCountsTable all_pair_counts(const Corpus&, std::span<const std::string>, Stratum);

    std::vector<std::string> ids_;
    Stratum stratum_ = Stratum::All;
    std::vector<std::uint64_t> docs_;
    std::vector<std::uint64_t> joint_;  // packed upper triangle, i < j
};

/// Counts for every unordered pair of the ordering. Ids must be registered
/// and distinct. Equivalent to pair_counts() per pair.
PairCountsTable all_pair_counts(const Corpus& corpus, std::span<const std::string> ordering,
                                Stratum stratum);

}  // namespace collab
