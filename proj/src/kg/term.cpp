#include "protokg/kg/term.hpp"

#include "protokg/errors.hpp"
#include "protokg/util.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace protokg::kg {

std::string to_string(RefKind k) {
    switch (k) {
        case RefKind::Entity: return "entity";
        case RefKind::Property: return "property";
        case RefKind::Class: return "class";
        case RefKind::Unknown: return "unknown";
    }
    return "unknown";
}

std::string to_string(GraphTag g) {
    switch (g) {
        case GraphTag::Wikidata: return "wikidata";
        case GraphTag::Dbpedia: return "dbpedia";
        case GraphTag::Local: return "local";
    }
    return "local";
}

RefKind ref_kind_from_string(const std::string& s) {
    if (s == "entity") return RefKind::Entity;
    if (s == "property") return RefKind::Property;
    if (s == "class") return RefKind::Class;
    if (s == "unknown") return RefKind::Unknown;
    throw UsageError("unknown ref kind: " + s);
}

GraphTag graph_tag_from_string(const std::string& s) {
    if (s == "wikidata") return GraphTag::Wikidata;
    if (s == "dbpedia") return GraphTag::Dbpedia;
    if (s == "local") return GraphTag::Local;
    throw UsageError("unknown graph tag: " + s);
}

namespace {

constexpr const char* kXsd = "http://www.w3.org/2001/XMLSchema#";

bool numeric_datatype(const std::string& dt) {
    static const std::array<const char*, 16> names = {
        "integer", "decimal", "double", "float", "int", "long", "short", "byte",
        "nonNegativeInteger", "positiveInteger", "negativeInteger",
        "nonPositiveInteger", "unsignedLong", "unsignedInt", "unsignedShort",
        "unsignedByte"};
    if (dt.rfind(kXsd, 0) != 0) return false;
    const std::string local = dt.substr(std::string(kXsd).size());
    for (const char* n : names)
        if (local == n) return true;
    return false;
}

std::string canonical_number(double v) {
    if (std::nearbyint(v) == v && std::fabs(v) < 9.007199254740992e15) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
        return buf;
    }
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, ptr);
}

std::optional<double> literal_numeric_value(const Literal& l) {
    if (!l.language.empty()) return std::nullopt;
    if (!l.datatype.empty() && !numeric_datatype(l.datatype)) return std::nullopt;
    return util::parse_number(l.lexical);
}

std::string escape_ntriples(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '"': out += "\\\""; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

} // namespace

std::string comparison_key(const Term& t) {
    if (const auto* r = std::get_if<KgRef>(&t)) return "i\x1f" + r->normalized_iri;
    if (const auto* b = std::get_if<BlankNode>(&t)) return "b\x1f" + b->label;
    const auto& l = std::get<Literal>(t);
    if (auto v = literal_numeric_value(l)) return "n\x1f" + canonical_number(*v);
    std::string dt = l.datatype;
    if (dt == std::string(kXsd) + "string") dt.clear(); // plain == xsd:string
    return "l\x1f" + l.lexical + "\x1f" + util::lower_ascii(l.language) + "\x1f" + dt;
}

bool term_equal(const Term& a, const Term& b) {
    return comparison_key(a) == comparison_key(b);
}

std::string to_ntriples(const Term& t) {
    if (const auto* r = std::get_if<KgRef>(&t)) return "<" + r->normalized_iri + ">";
    if (const auto* b = std::get_if<BlankNode>(&t)) return "_:" + b->label;
    const auto& l = std::get<Literal>(t);
    std::string out = "\"" + escape_ntriples(l.lexical) + "\"";
    if (!l.language.empty()) {
        out += "@" + l.language;
    } else if (!l.datatype.empty()) {
        out += "^^<" + l.datatype + ">";
    }
    return out;
}

} // namespace protokg::kg
