#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "collab/errors.hpp"

namespace collab {

/// One entity under study (university, country, institute).
struct EntityRef {
    std::string id;      // opaque token, unique within a registry
    std::string abbrev;  // short display label, unique within a registry
    std::string name;    // full display name
};

/// Ordered set of entities. Insertion order is the canonical matrix ordering.
class EntityRegistry {
public:
    void add(EntityRef entity);

    std::size_t size() const { return entities_.size(); }
    bool empty() const { return entities_.empty(); }
    const EntityRef& at(std::size_t index) const { return entities_.at(index); }
    std::span<const EntityRef> entities() const { return entities_; }

    std::optional<std::size_t> find(std::string_view id) const;
    /// Index for a known id; throws ValidationError for unknown ids.
    std::size_t index_of(std::string_view id) const;

    std::vector<std::string> ids() const;
    std::vector<std::string> abbrevs() const;

private:
    std::vector<EntityRef> entities_;
    std::unordered_map<std::string, std::size_t> by_id_;
};

/// One document: stable id, core-stratum membership, affiliated entities as
/// registry indices (sorted, deduplicated).
struct PublicationRecord {
    std::string pub_id;
    bool is_core = false;
    std::vector<std::uint32_t> entities;
};

struct RowIssue {
    std::size_t line = 0;  // 1-based, header included
    std::string message;
};

/// Result of parsing publications.csv: accepted records plus the line-level
/// error report and the count of unknown entity ids that were dropped.
struct PublicationParse {
    std::vector<PublicationRecord> records;
    std::size_t dropped_unknown_ids = 0;
    std::vector<RowIssue> issues;
};

/// Parses `id,abbrev,name` CSV. Duplicate ids/abbrevs and missing columns are
/// rejected with the offending token named.
EntityRegistry parse_entities(std::istream& in);

/// Parses `pub_id,is_core,entities` CSV against a registry. Entity lists are
/// semicolon-joined; unknown ids are dropped (counted), rows that end up with
/// no known entity or carry a malformed is_core are rejected into `issues`.
PublicationParse parse_publications(std::istream& in, const EntityRegistry& registry);

/// Immutable, validated collection of records with per-entity output counts.
class Corpus {
public:
    /// Validates records (unique non-empty pub ids, known entity indices,
    /// non-empty entity sets) and populates the counts cache.
    static Corpus build(EntityRegistry registry, std::vector<PublicationRecord> records);

    const EntityRegistry& registry() const { return registry_; }
    std::span<const PublicationRecord> records() const { return records_; }
    std::size_t record_count() const { return records_.size(); }
    std::uint64_t core_record_count() const { return core_records_; }

    std::uint64_t count_all(std::string_view entity_id) const;
    std::uint64_t count_core(std::string_view entity_id) const;
    std::uint64_t count_all_at(std::size_t index) const { return all_.at(index); }
    std::uint64_t count_core_at(std::size_t index) const { return core_.at(index); }

    /// Percentage of the entity's documents that are in the core stratum.
    /// Undefined (IndicatorError) when the entity has no documents.
    double core_share(std::string_view entity_id) const;

    /// Core share of the corpus as a whole (per-record, not per-entity).
    double overall_core_share() const;

private:
    Corpus() = default;

    EntityRegistry registry_;
    std::vector<PublicationRecord> records_;
    std::vector<std::uint64_t> all_;
    std::vector<std::uint64_t> core_;
    std::uint64_t core_records_ = 0;
};

}  // namespace collab
