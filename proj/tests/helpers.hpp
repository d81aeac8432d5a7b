#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "collab/corpus.hpp"

namespace testutil {

// Plain description of a corpus, independent of the library's record types.
// The oracle functions below recount everything from scratch so tests never
// trust the implementation they are checking.
struct RawRecord {
    std::string id;
    bool core = false;
    std::vector<std::string> entities;
};

struct OraclePair {
    std::uint64_t n_a = 0;
    std::uint64_t n_b = 0;
    std::uint64_t n_ab = 0;
};

inline bool raw_contains(const RawRecord& r, const std::string& e) {
    return std::find(r.entities.begin(), r.entities.end(), e) != r.entities.end();
}

inline std::uint64_t oracle_entity_count(const std::vector<RawRecord>& records,
                                         const std::string& e, bool core_only) {
    std::uint64_t n = 0;
    for (const auto& r : records) {
        if (core_only && !r.core) continue;
        if (raw_contains(r, e)) ++n;
    }
    return n;
}

inline OraclePair oracle_pair(const std::vector<RawRecord>& records, const std::string& a,
                              const std::string& b, bool core_only) {
    OraclePair p;
    for (const auto& r : records) {
        if (core_only && !r.core) continue;
        const bool ha = raw_contains(r, a);
        const bool hb = raw_contains(r, b);
        if (ha) ++p.n_a;
        if (hb) ++p.n_b;
        if (ha && hb) ++p.n_ab;
    }
    return p;
}

inline collab::EntityRegistry make_registry(const std::vector<std::string>& ids) {
    collab::EntityRegistry registry;
    for (const auto& id : ids) registry.add({id, id, "Entity " + id});
    return registry;
}

inline collab::Corpus make_corpus(const std::vector<std::string>& ids,
                                  const std::vector<RawRecord>& raw) {
    auto registry = make_registry(ids);
    std::vector<collab::PublicationRecord> records;
    for (const auto& r : raw) {
        collab::PublicationRecord record;
        record.pub_id = r.id;
        record.is_core = r.core;
        for (const auto& e : r.entities) {
            record.entities.push_back(static_cast<std::uint32_t>(registry.index_of(e)));
        }
        records.push_back(std::move(record));
    }
    return collab::Corpus::build(std::move(registry), std::move(records));
}

// Six-record corpus small enough to enumerate by hand.
inline std::vector<RawRecord> c0_records() {
    return {
        {"p1", true, {"A", "B"}},  {"p2", false, {"A", "B"}}, {"p3", true, {"A"}},
        {"p4", false, {"A"}},      {"p5", false, {"B"}},      {"p6", true, {"B", "C"}},
    };
}

inline collab::Corpus c0() {
    return make_corpus({"A", "B", "C"}, c0_records());
}

}  // namespace testutil
