#pragma once

#include "protokg/kg/term.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace protokg::kg {

// A pattern for ASK-style matching: unset positions are wildcards.
// `predicate_not` excludes one predicate from wildcard matches (used by
// soft-match probes so the gold property cannot satisfy its own wildcard).
struct AskPattern {
    std::optional<KgRef> subject;
    std::optional<KgRef> predicate;
    std::optional<Term> object;
    std::optional<KgRef> predicate_not;

    bool any_bound() const { return subject || predicate || object; }
};

// Immutable in-memory triple store with per-position indexes. Loads
// N-Triples-style flat files. Not a SPARQL engine; see sparql/eval for
// the basic graph-pattern evaluator used on top of it.
class LocalStore {
public:
    LocalStore() = default;
    explicit LocalStore(std::vector<Triple> triples);

    static LocalStore from_ntriples_file(const std::filesystem::path& path);
    static LocalStore from_ntriples_text(const std::string& text);

    bool ask(const AskPattern& pattern) const;
    std::vector<const Triple*> match(const AskPattern& pattern) const;

    const std::vector<Triple>& triples() const { return triples_; }
    std::size_t size() const { return triples_.size(); }

    // Content digest; backend identity for cache keys.
    std::uint64_t digest() const { return digest_; }

private:
    void build_indexes();

    std::vector<Triple> triples_;
    std::unordered_multimap<std::string, std::size_t> by_subject_;
    std::unordered_multimap<std::string, std::size_t> by_predicate_;
    std::unordered_multimap<std::string, std::size_t> by_object_;
    std::uint64_t digest_ = 0;
};

// Serialize one triple as an N-Triples line (without the newline).
std::string to_ntriples_line(const Triple& t);

} // namespace protokg::kg
