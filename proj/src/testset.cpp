#include "protokg/testset.hpp"

#include "protokg/errors.hpp"
#include "protokg/kat/serde.hpp"
#include "protokg/kg/ref.hpp"
#include "protokg/sparql/parser.hpp"
#include "protokg/util.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace protokg::testset {

using nlohmann::json;

namespace {

constexpr const char* kSubClassOf = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
constexpr const char* kWdSubClassOf = "http://www.wikidata.org/prop/direct/P279";
constexpr const char* kLabel = "http://www.w3.org/2000/01/rdf-schema#label";
constexpr const char* kAltLabel = "http://www.w3.org/2004/02/skos/core#altLabel";

struct ItemRow {
    std::string id;
    std::string label;
    std::uint64_t count = 0;
    std::vector<std::string> aliases;
};

std::vector<ItemRow> load_item_table(const std::filesystem::path& path) {
    std::vector<ItemRow> rows;
    for (const auto& line : util::read_lines(path)) {
        if (util::trim(line).empty() || line[0] == '#') continue;
        auto cols = util::split(line, '\t');
        if (cols.size() < 2) throw ParseError("bad item table line: " + line);
        ItemRow row;
        row.id = util::trim(cols[0]);
        row.label = util::trim(cols[1]);
        if (cols.size() > 2 && !util::trim(cols[2]).empty()) {
            auto v = util::parse_number(cols[2]);
            if (!v) throw ParseError("bad item count: " + cols[2]);
            row.count = static_cast<std::uint64_t>(*v);
        }
        if (cols.size() > 3) {
            for (auto& alias : util::split(cols[3], ';')) {
                alias = util::trim(alias);
                if (!alias.empty()) row.aliases.push_back(alias);
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string label_of(kg::GraphBackend& backend, const kg::KgRef& ref) {
    auto answers = backend.select("SELECT ?label WHERE { <" + ref.normalized_iri + "> <" +
                                  kLabel + "> ?label }");
    for (const auto& row : answers.rows) {
        const auto* lit = std::get_if<kg::Literal>(&row.bindings.begin()->second);
        if (!lit) continue;
        if (lit->language.empty() || util::starts_with_ci(lit->language, "en"))
            return lit->lexical;
    }
    return "";
}

std::vector<std::string> aliases_of(kg::GraphBackend& backend, const kg::KgRef& ref) {
    std::vector<std::string> aliases;
    auto answers = backend.select("SELECT ?alias WHERE { <" + ref.normalized_iri + "> <" +
                                  kAltLabel + "> ?alias }");
    for (const auto& row : answers.rows) {
        const auto* lit = std::get_if<kg::Literal>(&row.bindings.begin()->second);
        if (lit) aliases.push_back(lit->lexical);
    }
    std::sort(aliases.begin(), aliases.end());
    return aliases;
}

kat::KatInstance uri_instance(const kg::KgRef& item, const std::string& label,
                              std::vector<std::string> aliases, kat::UriDirection direction,
                              const std::string& id, const std::string& question_id = {}) {
    kat::KatInstance inst;
    inst.id = id;
    inst.kind = kat::KatKind::UriRecognition;
    inst.question_id = question_id;
    inst.item = item;
    inst.gold_label = label;
    inst.aliases = std::move(aliases);
    inst.direction = direction;
    return inst;
}

} // namespace

void save_set(const std::filesystem::path& path, const PairTestSet& set) {
    json j;
    j["kind"] = kat::to_string(set.kind);
    j["provenance"] = set.provenance;
    j["retrieved_at"] = set.retrieved_at;
    j["seed"] = set.seed;
    json items = json::array();
    for (const auto& inst : set.items) items.push_back(kat::instance_to_json(inst));
    j["items"] = std::move(items);
    if (!set.popularity.empty()) {
        json pops = json::array();
        for (const auto& p : set.popularity) {
            pops.push_back(json{{"iri", p.item.normalized_iri},
                                {"count", p.count},
                                {"retrieved_at", p.retrieved_at}});
        }
        j["popularity"] = std::move(pops);
    }
    if (!set.build_log.empty()) j["build_log"] = set.build_log;
    util::write_file(path, j.dump(2) + "\n");
}

PairTestSet load_set(const std::filesystem::path& path) {
    json j = json::parse(util::read_file(path));
    PairTestSet set;
    set.kind = kat::kat_kind_from_string(j.at("kind").get<std::string>());
    set.provenance = j.value("provenance", "");
    set.retrieved_at = j.value("retrieved_at", "");
    set.seed = j.value("seed", std::uint64_t{0});
    for (const auto& item : j.at("items")) set.items.push_back(kat::instance_from_json(item));
    if (j.contains("popularity")) {
        for (const auto& p : j["popularity"]) {
            pop::PopularityRecord rec;
            rec.item = kg::classify_iri(p.at("iri").get<std::string>());
            rec.count = p.at("count").get<std::uint64_t>();
            rec.retrieved_at = p.value("retrieved_at", "");
            set.popularity.push_back(std::move(rec));
        }
    }
    if (j.contains("build_log"))
        set.build_log = j["build_log"].get<std::vector<std::string>>();
    return set;
}

UriRecognitionSets build_uri_recognition_sets(const UriSetSources& sources) {
    UriRecognitionSets sets;
    const std::string ts = sources.timestamp.empty() ? util::now_iso8601() : sources.timestamp;

    auto build_top = [&](const std::filesystem::path& path, int top_n,
                         kg::RefKind hint, const std::string& tag) {
        PairTestSet set;
        set.kind = kat::KatKind::UriRecognition;
        set.retrieved_at = ts;
        set.provenance = "top-" + std::to_string(top_n) + " " + tag + " table " +
                         path.filename().string();
        int taken = 0;
        for (const auto& row : load_item_table(path)) {
            if (taken >= top_n) break;
            if (row.label.empty()) {
                set.build_log.push_back("dropped (no label): " + row.id);
                continue;
            }
            auto ref = kg::normalize_ref(row.id, kg::GraphTag::Wikidata, hint);
            set.items.push_back(uri_instance(ref, row.label, row.aliases, sources.direction,
                                             tag + ":" + kg::terminal_id(ref.normalized_iri)));
            set.popularity.push_back({ref, row.count, ts});
            ++taken;
        }
        return set;
    };

    sets.top_entities =
        build_top(sources.entities_path, sources.top_entities, kg::RefKind::Entity, "ent");
    sets.top_properties = build_top(sources.properties_path, sources.top_properties,
                                    kg::RefKind::Property, "prop");

    // Random sample from the mapping dump, fixed seed, without replacement.
    PairTestSet random_set;
    random_set.kind = kat::KatKind::UriRecognition;
    random_set.retrieved_at = ts;
    random_set.seed = sources.seed;
    random_set.provenance = "uniform sample of " + std::to_string(sources.random_sample) +
                            " mappings from " + sources.mapping_path.filename().string();
    std::vector<std::pair<std::string, std::string>> mappings; // (wikidata id, label)
    for (const auto& line : util::read_lines(sources.mapping_path)) {
        if (util::trim(line).empty() || line[0] == '#') continue;
        auto cols = util::split(line, '\t');
        if (cols.size() < 3) continue;
        mappings.emplace_back(util::trim(cols[1]), util::trim(cols[2]));
    }
    std::mt19937_64 rng(sources.seed);
    std::vector<std::size_t> order(mappings.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::set<std::string> seen;
    for (std::size_t idx : order) {
        if (static_cast<int>(random_set.items.size()) >= sources.random_sample) break;
        const auto& [id, label] = mappings[idx];
        if (label.empty()) {
            random_set.build_log.push_back("dropped (no label): " + id);
            continue;
        }
        auto ref = kg::normalize_ref(id, kg::GraphTag::Wikidata, kg::RefKind::Entity);
        if (!seen.insert(ref.normalized_iri).second) continue;
        random_set.items.push_back(uri_instance(ref, label, {}, sources.direction,
                                                "rand:" +
                                                    kg::terminal_id(ref.normalized_iri)));
    }
    sets.random_pairs = std::move(random_set);
    return sets;
}

SubsumptionSets build_subsumption_sets(kg::GraphBackend& backend,
                                       const SubsumptionBuildOptions& options) {
    const std::string ts = options.timestamp.empty() ? util::now_iso8601() : options.timestamp;
    auto edges = backend.select(std::string("SELECT ?a ?b WHERE { ?a <") + kSubClassOf +
                                "> ?b }");

    std::map<std::string, std::set<std::string>> parents;  // child -> parents
    std::map<std::string, std::set<std::string>> children; // parent -> children
    std::map<std::string, kg::KgRef> refs;
    for (const auto& row : edges.rows) {
        const auto* a = std::get_if<kg::KgRef>(&row.bindings.at("a"));
        const auto* b = std::get_if<kg::KgRef>(&row.bindings.at("b"));
        if (!a || !b) continue;
        parents[a->normalized_iri].insert(b->normalized_iri);
        children[b->normalized_iri].insert(a->normalized_iri);
        refs.emplace(a->normalized_iri, *a);
        refs.emplace(b->normalized_iri, *b);
    }

    std::vector<std::string> roots;
    for (const auto& [parent, kids] : children) {
        if (!parents.count(parent)) roots.push_back(parent);
    }
    std::sort(roots.begin(), roots.end());

    SubsumptionSets sets;
    sets.direct.kind = kat::KatKind::DirectSubsumption;
    sets.direct.retrieved_at = ts;
    sets.direct.provenance = "root classes of " + backend.identity();
    sets.inverse.kind = kat::KatKind::InverseSubsumption;
    sets.inverse.retrieved_at = ts;
    sets.inverse.provenance = sets.direct.provenance;

    pop::PopularityOptions pop_options;
    pop_options.type_predicate_iri = options.type_predicate_iri;
    pop_options.timestamp = ts;

    for (const auto& root : roots) {
        kat::KatInstance inst;
        inst.kind = kat::KatKind::DirectSubsumption;
        inst.given_class = refs.at(root);
        inst.id = "direct:" + kg::terminal_id(root);
        std::vector<std::string> kids(children[root].begin(), children[root].end());
        std::sort(kids.begin(), kids.end());
        for (const auto& kid : kids) inst.gold_classes.push_back(refs.at(kid));
        sets.direct.items.push_back(inst);
        sets.direct.popularity.push_back(pop::popularity(backend, refs.at(root), pop_options));

        for (const auto& kid : kids) {
            if (parents[kid].size() != 1) {
                sets.inverse.build_log.push_back("excluded (multiple direct superclasses): " +
                                                 kid);
                continue;
            }
            kat::KatInstance inv;
            inv.kind = kat::KatKind::InverseSubsumption;
            inv.given_class = refs.at(kid);
            inv.gold_classes = {refs.at(root)};
            inv.id = "inverse:" + kg::terminal_id(kid);
            sets.inverse.items.push_back(inv);
            sets.inverse.popularity.push_back(
                pop::popularity(backend, refs.at(kid), pop_options));
        }
    }
    return sets;
}

PairTestSet build_completion_set(const qald::Benchmark& benchmark, kg::GraphBackend* backend,
                                 const CompletionBuildOptions& options) {
    PairTestSet set;
    set.kind = kat::KatKind::SvObject; // mixed kinds; the field names the family
    set.retrieved_at = options.timestamp.empty() ? util::now_iso8601() : options.timestamp;
    set.provenance = "entity-property pairs of " + benchmark.name;

    std::set<std::string> seen;
    for (const auto& question : benchmark.questions) {
        std::vector<sparql::EntityPropertyPair> pairs;
        try {
            pairs = sparql::extract_pairs(question.gold_sparql, options.extract);
        } catch (const ParseError& e) {
            set.build_log.push_back("skipped question " + question.id + ": " + e.what());
            continue;
        }
        for (const auto& pair : pairs) {
            const bool subject_side = pair.position == sparql::PairPosition::Subject;
            if (options.verify_against_graph && backend) {
                kg::AskPattern probe;
                probe.predicate = pair.property;
                if (subject_side)
                    probe.subject = pair.entity;
                else
                    probe.object = kg::Term{pair.entity};
                if (!backend->ask(probe)) {
                    set.build_log.push_back("dropped unverifiable pair " + pair.key() +
                                            " of question " + question.id);
                    continue;
                }
            }
            kat::KatInstance inst;
            inst.kind = subject_side ? kat::KatKind::SvObject : kat::KatKind::VoSubject;
            inst.question_id = question.id;
            inst.pair = pair;
            inst.id = question.id + ":" + (subject_side ? "sv:" : "vo:") +
                      kg::terminal_id(pair.entity.normalized_iri) + ":" +
                      kg::terminal_id(pair.property.normalized_iri);
            if (seen.insert(inst.id).second) set.items.push_back(std::move(inst));
        }
    }
    return set;
}

PairTestSet build_lexical_probe_set(const qald::Benchmark& benchmark,
                                    kg::GraphBackend& backend,
                                    const LexicalProbeOptions& options) {
    PairTestSet set;
    set.kind = kat::KatKind::UriRecognition;
    set.retrieved_at = options.timestamp.empty() ? util::now_iso8601() : options.timestamp;
    set.provenance = "pair items of " + benchmark.name;

    std::set<std::string> seen;
    for (const auto& question : benchmark.questions) {
        std::vector<sparql::EntityPropertyPair> pairs;
        try {
            pairs = sparql::extract_pairs(question.gold_sparql, options.extract);
        } catch (const ParseError& e) {
            set.build_log.push_back("skipped question " + question.id + ": " + e.what());
            continue;
        }
        std::vector<kg::KgRef> items;
        std::set<std::string> in_question;
        for (const auto& pair : pairs) {
            for (const auto& ref : {pair.entity, pair.property}) {
                if (in_question.insert(ref.normalized_iri).second) items.push_back(ref);
            }
        }
        for (const auto& item : items) {
            const std::string id =
                question.id + ":lex:" + kg::terminal_id(item.normalized_iri);
            if (!seen.insert(id).second) continue;
            const std::string label = label_of(backend, item);
            if (label.empty()) {
                set.build_log.push_back("dropped (no label): " + item.normalized_iri +
                                        " of question " + question.id);
                continue;
            }
            set.items.push_back(uri_instance(item, label, aliases_of(backend, item),
                                             options.direction, id, question.id));
        }
    }
    return set;
}

PairTestSet build_hierarchical_probe_set(const qald::Benchmark& benchmark,
                                         const std::string& timestamp) {
    PairTestSet set;
    set.kind = kat::KatKind::InverseSubsumption;
    set.retrieved_at = timestamp.empty() ? util::now_iso8601() : timestamp;
    set.provenance = "bound subclass patterns of " + benchmark.name;

    std::set<std::string> seen;
    for (const auto& question : benchmark.questions) {
        sparql::ParsedQuery parsed;
        try {
            parsed = sparql::parse_query(question.gold_sparql);
        } catch (const ParseError& e) {
            set.build_log.push_back("skipped question " + question.id + ": " + e.what());
            continue;
        }
        for (const auto& tp : sparql::all_patterns(parsed)) {
            const auto* pred = std::get_if<kg::KgRef>(&tp.predicate);
            if (!pred) continue;
            if (pred->normalized_iri != kSubClassOf && pred->normalized_iri != kWdSubClassOf)
                continue;
            const auto* subject = std::get_if<kg::KgRef>(&tp.subject);
            const auto* object = std::get_if<kg::KgRef>(&tp.object);
            if (!subject || !object) continue;
            kat::KatInstance inst;
            inst.kind = kat::KatKind::InverseSubsumption;
            inst.question_id = question.id;
            inst.given_class = *subject;
            inst.gold_classes = {*object};
            inst.id = question.id + ":hier:" + kg::terminal_id(subject->normalized_iri);
            if (seen.insert(inst.id).second) set.items.push_back(std::move(inst));
        }
    }
    return set;
}

std::vector<pop::PopularityRecord> build_item_popularity(
    const qald::Benchmark& benchmark, kg::GraphBackend& backend,
    const pop::PopularityOptions& options, const sparql::ExtractOptions& extract) {
    std::map<std::string, kg::KgRef> items;
    for (const auto& question : benchmark.questions) {
        try {
            for (const auto& pair : sparql::extract_pairs(question.gold_sparql, extract)) {
                items.emplace(pair.entity.normalized_iri, pair.entity);
                items.emplace(pair.property.normalized_iri, pair.property);
            }
        } catch (const ParseError&) {
            continue;
        }
    }
    std::vector<pop::PopularityRecord> records;
    records.reserve(items.size());
    for (const auto& [iri, ref] : items)
        records.push_back(pop::popularity(backend, ref, options));
    return records;
}

} // namespace protokg::testset
