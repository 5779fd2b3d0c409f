#include "protokg/kg/ref.hpp"

#include "protokg/errors.hpp"
#include "protokg/util.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace protokg::kg {

namespace {

constexpr const char* kWdEntity = "http://www.wikidata.org/entity/";
constexpr const char* kWdDirect = "http://www.wikidata.org/prop/direct/";
constexpr const char* kWdProp = "http://www.wikidata.org/prop/";
constexpr const char* kDbo = "http://dbpedia.org/ontology/";
constexpr const char* kDbr = "http://dbpedia.org/resource/";
constexpr const char* kDbp = "http://dbpedia.org/property/";
constexpr const char* kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
constexpr const char* kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
constexpr const char* kXsd = "http://www.w3.org/2001/XMLSchema#";
constexpr const char* kSkos = "http://www.w3.org/2004/02/skos/core#";

bool is_wikidata_id(std::string_view s, char letter) {
    if (s.size() < 2) return false;
    if (std::toupper(static_cast<unsigned char>(s[0])) != letter) return false;
    return std::all_of(s.begin() + 1, s.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
}

std::string strip_decorations(std::string_view raw) {
    std::string s = util::trim(raw);
    // Matching wrapper pairs come off whole, so bracketed IRIs keep any
    // inner punctuation intact.
    bool stripped = true;
    while (stripped && s.size() >= 2) {
        stripped = false;
        static const std::pair<char, char> pairs[] = {
            {'<', '>'}, {'`', '`'}, {'"', '"'}, {'\'', '\''}, {'(', ')'}, {'[', ']'}};
        for (auto [open, close] : pairs) {
            if (s.front() == open && s.back() == close) {
                s = util::trim(s.substr(1, s.size() - 2));
                stripped = true;
                break;
            }
        }
    }
    // Unpaired leading decorations.
    while (!s.empty() && std::string("`'\"<([{").find(s.front()) != std::string::npos) {
        s.erase(s.begin());
        s = util::trim(s);
    }
    // Trailing punctuation; a ')' survives while the token still has an
    // unmatched '(' (DBpedia names like ..._(city)).
    while (!s.empty()) {
        char back = s.back();
        if (std::string("`'\">]}.,;:!?").find(back) == std::string::npos &&
            back != ')')
            break;
        if (back == ')') {
            auto opens = std::count(s.begin(), s.end(), '(');
            auto closes = std::count(s.begin(), s.end(), ')');
            if (closes <= opens) break;
        }
        s.pop_back();
        s = util::trim(s);
    }
    return s;
}

bool upper_initial(std::string_view local) {
    return !local.empty() && std::isupper(static_cast<unsigned char>(local[0]));
}

// Provenance and kind from the namespace alone; wikidata provenance is only
// claimed for terminal Q/P identifiers so the KgRef invariant stays total.
void classify_in_place(KgRef& ref) {
    const std::string& iri = ref.normalized_iri;
    auto local_after = [&](const char* ns) { return iri.substr(std::string(ns).size()); };

    if (iri.rfind(kWdEntity, 0) == 0) {
        const std::string local = local_after(kWdEntity);
        if (is_wikidata_id(local, 'Q')) {
            ref.graph = GraphTag::Wikidata;
            ref.kind = RefKind::Entity;
            return;
        }
        if (is_wikidata_id(local, 'P')) {
            ref.graph = GraphTag::Wikidata;
            ref.kind = RefKind::Property;
            return;
        }
    } else if (iri.rfind(kWdProp, 0) == 0) {
        const std::string local = terminal_id(iri);
        if (is_wikidata_id(local, 'P')) {
            ref.graph = GraphTag::Wikidata;
            ref.kind = RefKind::Property;
            return;
        }
    } else if (iri.rfind(kDbo, 0) == 0) {
        ref.graph = GraphTag::Dbpedia;
        ref.kind = upper_initial(local_after(kDbo)) ? RefKind::Class : RefKind::Property;
        return;
    } else if (iri.rfind(kDbr, 0) == 0) {
        ref.graph = GraphTag::Dbpedia;
        ref.kind = RefKind::Entity;
        return;
    } else if (iri.rfind(kDbp, 0) == 0) {
        ref.graph = GraphTag::Dbpedia;
        ref.kind = RefKind::Property;
        return;
    } else if (iri.rfind(kRdf, 0) == 0 || iri.rfind(kRdfs, 0) == 0 ||
               iri.rfind(kSkos, 0) == 0) {
        ref.graph = GraphTag::Local;
        ref.kind = upper_initial(terminal_id(iri)) ? RefKind::Class : RefKind::Property;
        return;
    }
    ref.graph = GraphTag::Local;
    ref.kind = RefKind::Unknown;
}

} // namespace

const std::map<std::string, std::string>& known_prefixes() {
    static const std::map<std::string, std::string> prefixes = {
        {"wd", kWdEntity}, {"wdt", kWdDirect}, {"p", kWdProp},
        {"dbo", kDbo},     {"dbr", kDbr},      {"dbp", kDbp},
        {"rdf", kRdf},     {"rdfs", kRdfs},    {"xsd", kXsd},
        {"skos", kSkos},
    };
    return prefixes;
}

std::optional<KgRef> try_normalize_ref(const std::string& raw, GraphTag graph,
                                       RefKind hint) {
    const std::string token = strip_decorations(raw);
    if (token.empty()) return std::nullopt;
    if (token.find_first_of(" \t\r\n<>") != std::string::npos) return std::nullopt;

    std::string iri;
    if (token.rfind("http://", 0) == 0 || token.rfind("https://", 0) == 0) {
        iri = token;
    } else if (is_wikidata_id(token, 'Q')) {
        std::string id = token;
        id[0] = 'Q';
        iri = kWdEntity + id;
    } else if (is_wikidata_id(token, 'P')) {
        std::string id = token;
        id[0] = 'P';
        iri = (hint == RefKind::Property ? kWdDirect : kWdEntity) + id;
    } else if (auto colon = token.find(':'); colon != std::string::npos) {
        const std::string prefix = token.substr(0, colon);
        const std::string local = token.substr(colon + 1);
        auto it = known_prefixes().find(prefix);
        if (it == known_prefixes().end()) return std::nullopt;
        iri = it->second + local;
    } else {
        return std::nullopt;
    }
    if (iri.find("://") == std::string::npos) return std::nullopt;

    KgRef ref = classify_iri(iri, hint);
    ref.raw_text = raw;
    (void)graph; // expansion context only; provenance comes from the namespace
    return ref;
}

KgRef classify_iri(const std::string& iri, RefKind hint) {
    KgRef ref;
    ref.raw_text = iri;
    ref.normalized_iri = iri;
    classify_in_place(ref);
    if (ref.kind == RefKind::Unknown && hint != RefKind::Unknown) ref.kind = hint;
    return ref;
}

KgRef normalize_ref(const std::string& raw, GraphTag graph, RefKind hint) {
    if (util::trim(raw).empty()) throw UsageError("normalize_ref: empty input");
    auto ref = try_normalize_ref(raw, graph, hint);
    if (!ref) throw ParseError("no IRI-like token recoverable from: " + raw);
    return *ref;
}

std::string compact_iri(const std::string& iri) {
    std::string best_prefix;
    std::string best_ns;
    for (const auto& [prefix, ns] : known_prefixes()) {
        if (iri.rfind(ns, 0) == 0 && ns.size() > best_ns.size()) {
            best_ns = ns;
            best_prefix = prefix;
        }
    }
    if (best_ns.empty()) return iri;
    const std::string local = iri.substr(best_ns.size());
    if (local.empty() || local.find_first_of("/#:") != std::string::npos) return iri;
    return best_prefix + ":" + local;
}

std::string terminal_id(const std::string& iri) {
    const auto pos = iri.find_last_of("/#");
    return pos == std::string::npos ? iri : iri.substr(pos + 1);
}

} // namespace protokg::kg
