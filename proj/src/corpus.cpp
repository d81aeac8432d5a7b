#include "collab/corpus.hpp"

#include <algorithm>
#include <unordered_set>

namespace collab {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

// Reads the next non-empty line, tracking the 1-based line number.
bool next_line(std::istream& in, std::string& line, std::size_t& line_no) {
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!trim(line).empty()) return true;
    }
    return false;
}

// Splits a row into exactly `n` fields at the first n-1 commas, so the last
// field may itself contain commas.
std::vector<std::string> split_n(const std::string& line, std::size_t n) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const auto comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(trim(line.substr(start)));
            return out;
        }
        out.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    out.push_back(trim(line.substr(start)));
    return out;
}

void strip_bom(std::string& line) {
    if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
}

}  // namespace

void EntityRegistry::add(EntityRef entity) {
    if (entity.id.empty()) throw ValidationError("entity id must not be empty");
    if (by_id_.count(entity.id)) throw ValidationError("duplicate entity id '" + entity.id + "'");
    for (const auto& e : entities_) {
        if (e.abbrev == entity.abbrev) {
            throw ValidationError("duplicate entity abbreviation '" + entity.abbrev + "'");
        }
    }
    by_id_.emplace(entity.id, entities_.size());
    entities_.push_back(std::move(entity));
}

std::optional<std::size_t> EntityRegistry::find(std::string_view id) const {
    const auto it = by_id_.find(std::string(id));
    if (it == by_id_.end()) return std::nullopt;
    return it->second;
}

std::size_t EntityRegistry::index_of(std::string_view id) const {
    const auto idx = find(id);
    if (!idx) throw ValidationError("unknown entity id '" + std::string(id) + "'");
    return *idx;
}

std::vector<std::string> EntityRegistry::ids() const {
    std::vector<std::string> out;
    out.reserve(entities_.size());
    for (const auto& e : entities_) out.push_back(e.id);
    return out;
}

std::vector<std::string> EntityRegistry::abbrevs() const {
    std::vector<std::string> out;
    out.reserve(entities_.size());
    for (const auto& e : entities_) out.push_back(e.abbrev);
    return out;
}

EntityRegistry parse_entities(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!next_line(in, line, line_no)) throw ParseError("missing header 'id,abbrev,name'");
    strip_bom(line);

    const std::vector<std::string> expected = {"id", "abbrev", "name"};
    const auto header = split_n(line, 3);
    for (std::size_t k = 0; k < expected.size(); ++k) {
        if (k >= header.size() || trim(header[k]) != expected[k]) {
            throw ParseError("missing column: " + expected[k]);
        }
    }

    EntityRegistry registry;
    while (next_line(in, line, line_no)) {
        auto fields = split_n(line, 3);
        if (fields.size() < 3) {
            throw ParseError("line " + std::to_string(line_no) + ": expected id,abbrev,name");
        }
        if (fields[0].empty()) {
            throw ParseError("line " + std::to_string(line_no) + ": empty id");
        }
        if (registry.find(fields[0])) {
            throw ParseError("line " + std::to_string(line_no) + ": duplicate entity id '" +
                             fields[0] + "'");
        }
        if (fields[1].empty()) fields[1] = fields[0];
        registry.add({fields[0], fields[1], fields[2]});
    }
    return registry;
}

PublicationParse parse_publications(std::istream& in, const EntityRegistry& registry) {
    std::string line;
    std::size_t line_no = 0;
    if (!next_line(in, line, line_no)) throw ParseError("missing header 'pub_id,is_core,entities'");
    strip_bom(line);

    const std::vector<std::string> expected = {"pub_id", "is_core", "entities"};
    const auto header = split_n(line, 3);
    for (std::size_t k = 0; k < expected.size(); ++k) {
        if (k >= header.size() || trim(header[k]) != expected[k]) {
            throw ParseError("missing column: " + expected[k]);
        }
    }

    PublicationParse out;
    while (next_line(in, line, line_no)) {
        const auto fields = split_n(line, 3);
        if (fields.size() < 3) {
            out.issues.push_back({line_no, "expected pub_id,is_core,entities"});
            continue;
        }
        if (fields[0].empty()) {
            out.issues.push_back({line_no, "empty pub_id"});
            continue;
        }
        bool is_core = false;
        if (fields[1] == "1") {
            is_core = true;
        } else if (fields[1] != "0") {
            out.issues.push_back({line_no, "invalid is_core '" + fields[1] + "' (expected 0 or 1)"});
            continue;
        }

        PublicationRecord record;
        record.pub_id = fields[0];
        record.is_core = is_core;
        std::size_t start = 0;
        const std::string& list = fields[2];
        while (start <= list.size()) {
            const auto sep = list.find(';', start);
            const auto token = trim(list.substr(start, sep == std::string::npos ? sep : sep - start));
            if (!token.empty()) {
                if (const auto idx = registry.find(token)) {
                    record.entities.push_back(static_cast<std::uint32_t>(*idx));
                } else {
                    ++out.dropped_unknown_ids;
                }
            }
            if (sep == std::string::npos) break;
            start = sep + 1;
        }
        std::sort(record.entities.begin(), record.entities.end());
        record.entities.erase(std::unique(record.entities.begin(), record.entities.end()),
                              record.entities.end());
        if (record.entities.empty()) {
            out.issues.push_back({line_no, "record '" + record.pub_id +
                                               "' has no registered entity; rejected"});
            continue;
        }
        out.records.push_back(std::move(record));
    }
    return out;
}

Corpus Corpus::build(EntityRegistry registry, std::vector<PublicationRecord> records) {
    Corpus corpus;
    corpus.all_.assign(registry.size(), 0);
    corpus.core_.assign(registry.size(), 0);

    std::unordered_set<std::string_view> seen;
    seen.reserve(records.size());
    for (auto& record : records) {
        if (record.pub_id.empty()) throw ValidationError("record with empty pub_id");
        std::sort(record.entities.begin(), record.entities.end());
        record.entities.erase(std::unique(record.entities.begin(), record.entities.end()),
                              record.entities.end());
        if (record.entities.empty()) {
            throw ValidationError("record '" + record.pub_id + "' has an empty entity set");
        }
        if (record.entities.back() >= registry.size()) {
            throw ValidationError("record '" + record.pub_id + "' references an unknown entity index");
        }
    }
    for (const auto& record : records) {
        if (!seen.insert(record.pub_id).second) {
            throw ValidationError("duplicate pub_id '" + record.pub_id + "'");
        }
        if (record.is_core) ++corpus.core_records_;
        for (const auto idx : record.entities) {
            ++corpus.all_[idx];
            if (record.is_core) ++corpus.core_[idx];
        }
    }

    corpus.registry_ = std::move(registry);
    corpus.records_ = std::move(records);
    return corpus;
}

std::uint64_t Corpus::count_all(std::string_view entity_id) const {
    return all_.at(registry_.index_of(entity_id));
}

std::uint64_t Corpus::count_core(std::string_view entity_id) const {
    return core_.at(registry_.index_of(entity_id));
}

double Corpus::core_share(std::string_view entity_id) const {
    const auto idx = registry_.index_of(entity_id);
    if (all_[idx] == 0) {
        throw IndicatorError("core share undefined: entity '" + std::string(entity_id) +
                             "' has no documents");
    }
    return 100.0 * static_cast<double>(core_[idx]) / static_cast<double>(all_[idx]);
}

double Corpus::overall_core_share() const {
    if (records_.empty()) throw IndicatorError("core share undefined: corpus has no records");
    return 100.0 * static_cast<double>(core_records_) / static_cast<double>(records_.size());
}

}  // namespace collab
