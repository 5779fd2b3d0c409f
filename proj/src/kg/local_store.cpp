#include "protokg/kg/local_store.hpp"

#include "protokg/errors.hpp"
#include "protokg/kg/ref.hpp"
#include "protokg/util.hpp"

#include <algorithm>
#include <cctype>

namespace protokg::kg {

namespace {

struct LineCursor {
    const std::string& line;
    std::size_t pos = 0;
    std::size_t lineno;

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("N-Triples: " + what, lineno, pos + 1);
    }

    void skip_ws() {
        while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    }

    char peek() const { return pos < line.size() ? line[pos] : '\0'; }

    std::string read_iri() {
        if (peek() != '<') fail("expected '<'");
        ++pos;
        std::string iri;
        while (pos < line.size() && line[pos] != '>') iri.push_back(line[pos++]);
        if (pos >= line.size()) fail("unterminated IRI");
        ++pos;
        return iri;
    }

    std::string read_quoted() {
        if (peek() != '"') fail("expected '\"'");
        ++pos;
        std::string value;
        while (pos < line.size() && line[pos] != '"') {
            char c = line[pos++];
            if (c == '\\' && pos < line.size()) {
                char e = line[pos++];
                switch (e) {
                    case 'n': value.push_back('\n'); break;
                    case 't': value.push_back('\t'); break;
                    case 'r': value.push_back('\r'); break;
                    case '"': value.push_back('"'); break;
                    case '\\': value.push_back('\\'); break;
                    default: value.push_back(e);
                }
            } else {
                value.push_back(c);
            }
        }
        if (pos >= line.size()) fail("unterminated literal");
        ++pos;
        return value;
    }

    Term read_object() {
        skip_ws();
        if (peek() == '<') {
            return classify_iri(read_iri());
        }
        if (peek() == '_' ) {
            pos += 2; // "_:"
            std::string label;
            while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos])))
                label.push_back(line[pos++]);
            return BlankNode{label};
        }
        Literal lit;
        lit.lexical = read_quoted();
        if (peek() == '@') {
            ++pos;
            while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos])) &&
                   line[pos] != '.')
                lit.language.push_back(line[pos++]);
        } else if (peek() == '^' && pos + 1 < line.size() && line[pos + 1] == '^') {
            pos += 2;
            lit.datatype = read_iri();
        }
        return lit;
    }
};

} // namespace

LocalStore::LocalStore(std::vector<Triple> triples) : triples_(std::move(triples)) {
    build_indexes();
}

LocalStore LocalStore::from_ntriples_text(const std::string& text) {
    std::vector<Triple> triples;
    std::size_t lineno = 0;
    for (const auto& raw : util::split(text, '\n')) {
        ++lineno;
        std::string line = util::trim(raw);
        if (line.empty() || line[0] == '#') continue;
        LineCursor cur{line, 0, lineno};
        cur.skip_ws();
        Triple t;
        t.subject = classify_iri(cur.read_iri());
        cur.skip_ws();
        t.predicate = classify_iri(cur.read_iri(), RefKind::Property);
        t.object = cur.read_object();
        triples.push_back(std::move(t));
    }
    return LocalStore(std::move(triples));
}

LocalStore LocalStore::from_ntriples_file(const std::filesystem::path& path) {
    return from_ntriples_text(util::read_file(path));
}

void LocalStore::build_indexes() {
    std::string all;
    for (std::size_t i = 0; i < triples_.size(); ++i) {
        const Triple& t = triples_[i];
        by_subject_.emplace(t.subject.normalized_iri, i);
        by_predicate_.emplace(t.predicate.normalized_iri, i);
        by_object_.emplace(comparison_key(t.object), i);
        all += to_ntriples_line(t);
        all += '\n';
    }
    digest_ = util::fnv1a64(all);
}

std::vector<const Triple*> LocalStore::match(const AskPattern& pattern) const {
    if (!pattern.any_bound()) throw UsageError("ask pattern has no bound position");

    auto matches = [&](const Triple& t) {
        if (pattern.subject && t.subject.normalized_iri != pattern.subject->normalized_iri)
            return false;
        if (pattern.predicate && t.predicate.normalized_iri != pattern.predicate->normalized_iri)
            return false;
        if (pattern.object && !term_equal(t.object, *pattern.object)) return false;
        if (pattern.predicate_not &&
            t.predicate.normalized_iri == pattern.predicate_not->normalized_iri)
            return false;
        return true;
    };

    std::vector<const Triple*> out;
    auto scan_bucket = [&](const std::unordered_multimap<std::string, std::size_t>& index,
                           const std::string& key) {
        auto [lo, hi] = index.equal_range(key);
        for (auto it = lo; it != hi; ++it)
            if (matches(triples_[it->second])) out.push_back(&triples_[it->second]);
    };

    if (pattern.subject) {
        scan_bucket(by_subject_, pattern.subject->normalized_iri);
    } else if (pattern.object) {
        scan_bucket(by_object_, comparison_key(*pattern.object));
    } else {
        scan_bucket(by_predicate_, pattern.predicate->normalized_iri);
    }
    return out;
}

bool LocalStore::ask(const AskPattern& pattern) const {
    return !match(pattern).empty();
}

std::string to_ntriples_line(const Triple& t) {
    return "<" + t.subject.normalized_iri + "> <" + t.predicate.normalized_iri + "> " +
           to_ntriples(t.object) + " .";
}

} // namespace protokg::kg
