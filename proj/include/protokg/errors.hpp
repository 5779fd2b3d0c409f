#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace protokg {

// Base for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller misuse: bad arguments, missing prerequisites, invalid config.
class UsageError : public Error {
public:
    using Error::Error;
};

// Unparseable input (SPARQL text, identifiers, fixture files).
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
        : Error(what), line(line), column(column) {}
    std::size_t line = 0;
    std::size_t column = 0;
};

// Network-level failure after exhausting retries; retryable by the caller.
class TransportError : public Error {
public:
    explicit TransportError(const std::string& what, std::string query = {})
        : Error(what), query(std::move(query)) {}
    std::string query;
};

// The endpoint understood the request but rejected the query itself.
// Distinct from TransportError: consumed by text-to-SPARQL scoring.
class QueryRejectedError : public Error {
public:
    using Error::Error;
};

// Replay-mode model call with no matching transcript record.
class ReplayMissError : public Error {
public:
    ReplayMissError(const std::string& what, std::string prompt_hash)
        : Error(what), prompt_hash(std::move(prompt_hash)) {}
    std::string prompt_hash;
};

// Replay-mode graph request with no cached response.
class CacheMissError : public Error {
public:
    CacheMissError(const std::string& what, std::string key_hash)
        : Error(what), key_hash(std::move(key_hash)) {}
    std::string key_hash;
};

// A score that must be total over its inputs found a hole.
class AccountingError : public Error {
public:
    using Error::Error;
};

} // namespace protokg
