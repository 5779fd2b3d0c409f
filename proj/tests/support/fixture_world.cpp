#include "fixture_world.hpp"

#include "protokg/config.hpp"
#include "protokg/kat/prompts.hpp"
#include "protokg/kg/backend.hpp"
#include "protokg/kg/ref.hpp"
#include "protokg/sparql/eval.hpp"
#include "protokg/sparql/parser.hpp"
#include "protokg/t2s/runner.hpp"
#include "protokg/testset.hpp"
#include "protokg/util.hpp"

#include <unistd.h>

#include <atomic>
#include <cstdio>
#include <vector>

namespace protokg::testfix {

using nlohmann::json;

namespace {

constexpr const char* kWd = "http://www.wikidata.org/entity/";
constexpr const char* kWdt = "http://www.wikidata.org/prop/direct/";
constexpr const char* kLabel = "http://www.w3.org/2000/01/rdf-schema#label";
constexpr const char* kAlt = "http://www.w3.org/2004/02/skos/core#altLabel";
constexpr const char* kType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
constexpr const char* kSub = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
constexpr const char* kDbo = "http://dbpedia.org/ontology/";
constexpr const char* kDbr = "http://dbpedia.org/resource/";
constexpr const char* kXsdInt = "http://www.w3.org/2001/XMLSchema#integer";

std::string iri_line(const std::string& s, const std::string& p, const std::string& o) {
    return "<" + s + "> <" + p + "> <" + o + "> .\n";
}

std::string lit_line(const std::string& s, const std::string& p, const std::string& lit,
                     const std::string& datatype = {}) {
    std::string line = "<" + s + "> <" + p + "> \"" + lit + "\"";
    if (!datatype.empty()) line += "^^<" + datatype + ">";
    return line + " .\n";
}

std::string wd(const std::string& id) { return kWd + id; }
std::string wdt(const std::string& id) { return kWdt + id; }
std::string dbo(const std::string& id) { return kDbo + id; }
std::string dbr(const std::string& id) { return kDbr + id; }

} // namespace

std::string wikidata_ntriples() {
    std::string nt = "# synthetic solar-system / people graph (Wikidata-flavored)\n";

    const std::vector<std::pair<std::string, std::string>> labels = {
        {"Q405", "Moon"},        {"Q2", "Earth"},        {"Q111", "Mars"},
        {"Q319", "Jupiter"},     {"Q525", "Sun"},        {"Q544", "Solar System"},
        {"Q7547", "Phobos"},     {"Q7548", "Deimos"},    {"Q634", "planet"},
        {"Q523", "star"},        {"Q2151", "natural satellite"},
        {"Q6999", "astronomical object"},                {"Q5", "human"},
        {"Q6256", "country"},    {"Q30", "United States"},
        {"Q183", "Germany"},     {"Q142", "France"},     {"Q64", "Berlin"},
        {"Q61", "Washington"},   {"Q90", "Paris"},       {"Q36180", "writer"},
        {"Q82955", "politician"},{"Q11631", "astronaut"},{"Q339", "Pluto"},
        {"Q1001", "Ada Quill"},  {"Q1002", "Bo Marsh"},  {"Q1003", "Cy Dole"},
        {"Q1004", "Di Vega"},    {"Q1005", "Ed Sol"},    {"Q1006", "Fay Luna"},
    };
    for (const auto& [id, label] : labels) nt += lit_line(wd(id), kLabel, label);

    const std::vector<std::pair<std::string, std::string>> property_labels = {
        {"P31", "instance of"},    {"P279", "subclass of"},
        {"P397", "parent astronomical body"}, {"P361", "part of"},
        {"P17", "country"},        {"P27", "country of citizenship"},
        {"P106", "occupation"},    {"P36", "capital"},
        {"P19", "place of birth"}, {"P1082", "population"},
    };
    for (const auto& [id, label] : property_labels) nt += lit_line(wdt(id), kLabel, label);

    nt += lit_line(wd("Q405"), kAlt, "Luna");
    nt += lit_line(wd("Q30"), kAlt, "USA");

    // celestial bodies
    nt += iri_line(wd("Q405"), wdt("P31"), wd("Q2151"));
    nt += iri_line(wd("Q405"), wdt("P397"), wd("Q2"));
    nt += iri_line(wd("Q405"), wdt("P361"), wd("Q544"));
    nt += iri_line(wd("Q2"), wdt("P31"), wd("Q634"));
    nt += iri_line(wd("Q2"), wdt("P397"), wd("Q525"));
    nt += iri_line(wd("Q2"), wdt("P361"), wd("Q544"));
    nt += iri_line(wd("Q111"), wdt("P31"), wd("Q634"));
    nt += iri_line(wd("Q111"), wdt("P397"), wd("Q525"));
    nt += iri_line(wd("Q111"), wdt("P361"), wd("Q544"));
    nt += iri_line(wd("Q319"), wdt("P31"), wd("Q634"));
    nt += iri_line(wd("Q319"), wdt("P397"), wd("Q525"));
    nt += iri_line(wd("Q319"), wdt("P361"), wd("Q544"));
    nt += iri_line(wd("Q7547"), wdt("P31"), wd("Q2151"));
    nt += iri_line(wd("Q7547"), wdt("P397"), wd("Q111"));
    nt += iri_line(wd("Q7548"), wdt("P31"), wd("Q2151"));
    nt += iri_line(wd("Q7548"), wdt("P397"), wd("Q111"));
    nt += iri_line(wd("Q525"), wdt("P31"), wd("Q523"));
    nt += iri_line(wd("Q525"), wdt("P361"), wd("Q544"));

    // class hierarchy
    nt += iri_line(wd("Q634"), wdt("P279"), wd("Q6999"));
    nt += iri_line(wd("Q523"), wdt("P279"), wd("Q6999"));
    nt += iri_line(wd("Q2151"), wdt("P279"), wd("Q6999"));

    // countries and cities
    nt += iri_line(wd("Q30"), wdt("P31"), wd("Q6256"));
    nt += iri_line(wd("Q183"), wdt("P31"), wd("Q6256"));
    nt += iri_line(wd("Q142"), wdt("P31"), wd("Q6256"));
    nt += iri_line(wd("Q30"), wdt("P36"), wd("Q61"));
    nt += iri_line(wd("Q183"), wdt("P36"), wd("Q64"));
    nt += iri_line(wd("Q142"), wdt("P36"), wd("Q90"));
    nt += iri_line(wd("Q64"), wdt("P17"), wd("Q183"));
    nt += iri_line(wd("Q61"), wdt("P17"), wd("Q30"));
    nt += iri_line(wd("Q90"), wdt("P17"), wd("Q142"));
    nt += lit_line(wd("Q30"), wdt("P1082"), "331000000", kXsdInt);
    nt += lit_line(wd("Q183"), wdt("P1082"), "83000000", kXsdInt);

    // people
    const struct {
        const char* id;
        const char* citizenship;
        const char* occupation;
        const char* birthplace;
    } people[] = {
        {"Q1001", "Q183", "Q36180", "Q64"}, {"Q1002", "Q30", "Q82955", "Q61"},
        {"Q1003", "Q183", "Q82955", "Q64"}, {"Q1004", "Q142", "Q11631", "Q90"},
        {"Q1005", "Q30", "Q36180", "Q61"},  {"Q1006", "Q30", "Q11631", "Q61"},
    };
    for (const auto& person : people) {
        nt += iri_line(wd(person.id), wdt("P31"), wd("Q5"));
        nt += iri_line(wd(person.id), wdt("P27"), wd(person.citizenship));
        nt += iri_line(wd(person.id), wdt("P106"), wd(person.occupation));
        nt += iri_line(wd(person.id), wdt("P19"), wd(person.birthplace));
    }

    // deliberately unlabeled corner of the graph
    nt += iri_line(wd("Q99901"), wdt("P9999"), wd("Q99902"));
    return nt;
}

std::string dbpedia_ntriples() {
    std::string nt = "# synthetic ontology + instances (DBpedia-flavored)\n";

    const std::vector<std::pair<std::string, std::string>> class_labels = {
        {"Person", "person"},       {"Place", "place"},
        {"Work", "work"},           {"Organisation", "organisation"},
        {"Device", "device"},       {"Astronaut", "astronaut"},
        {"Politician", "politician"}, {"Journalist", "journalist"},
        {"Athlete", "athlete"},     {"Park", "park"},
        {"WineRegion", "wine region"}, {"City", "city"},
        {"Database", "database"},   {"MusicalWork", "musical work"},
        {"Film", "film"},           {"Company", "company"},
        {"NonProfitOrganisation", "non-profit organisation"},
        {"Battery", "battery"},     {"Engine", "engine"},
        {"Venue", "venue"},         {"Capital", "capital"},
    };
    for (const auto& [id, label] : class_labels) nt += lit_line(dbo(id), kLabel, label);

    const std::vector<std::pair<std::string, std::string>> edges = {
        {"Astronaut", "Person"},  {"Politician", "Person"}, {"Journalist", "Person"},
        {"Athlete", "Person"},    {"Park", "Place"},        {"WineRegion", "Place"},
        {"City", "Place"},        {"Database", "Work"},     {"MusicalWork", "Work"},
        {"Film", "Work"},         {"Company", "Organisation"},
        {"NonProfitOrganisation", "Organisation"},          {"Battery", "Device"},
        {"Engine", "Device"},     {"Venue", "Place"},       {"Venue", "Organisation"},
        {"Capital", "City"},
    };
    for (const auto& [child, parent] : edges) nt += iri_line(dbo(child), kSub, dbo(parent));

    const std::vector<std::pair<std::string, std::string>> property_labels = {
        {"birthPlace", "birth place"}, {"country", "country"},
        {"author", "author"},          {"location", "location"},
    };
    for (const auto& [id, label] : property_labels) nt += lit_line(dbo(id), kLabel, label);

    const std::vector<std::pair<std::string, std::string>> resource_labels = {
        {"Alice_Park", "Alice Park"},   {"Bob_Reed", "Bob Reed"},
        {"Carol_Swift", "Carol Swift"}, {"Dan_Brook", "Dan Brook"},
        {"Springfield", "Springfield"}, {"Rivertown", "Rivertown"},
        {"Freedonia", "Freedonia"},     {"Sylvania", "Sylvania"},
        {"Starlight_Archive", "Starlight Archive"},
        {"Night_Sonata", "Night Sonata"},
        {"Acme_Forge", "Acme Forge"},   {"Helping_Hands", "Helping Hands"},
    };
    for (const auto& [id, label] : resource_labels) nt += lit_line(dbr(id), kLabel, label);

    nt += iri_line(dbr("Alice_Park"), kType, dbo("Astronaut"));
    nt += iri_line(dbr("Alice_Park"), dbo("birthPlace"), dbr("Springfield"));
    nt += iri_line(dbr("Alice_Park"), dbo("country"), dbr("Freedonia"));
    nt += iri_line(dbr("Bob_Reed"), kType, dbo("Politician"));
    nt += iri_line(dbr("Bob_Reed"), dbo("birthPlace"), dbr("Rivertown"));
    nt += iri_line(dbr("Bob_Reed"), dbo("country"), dbr("Freedonia"));
    nt += iri_line(dbr("Carol_Swift"), kType, dbo("Journalist"));
    nt += iri_line(dbr("Carol_Swift"), dbo("birthPlace"), dbr("Springfield"));
    nt += iri_line(dbr("Carol_Swift"), dbo("country"), dbr("Sylvania"));
    nt += iri_line(dbr("Dan_Brook"), kType, dbo("Athlete"));
    nt += iri_line(dbr("Dan_Brook"), dbo("birthPlace"), dbr("Rivertown"));
    nt += iri_line(dbr("Dan_Brook"), dbo("country"), dbr("Sylvania"));
    nt += iri_line(dbr("Springfield"), kType, dbo("City"));
    nt += iri_line(dbr("Springfield"), dbo("country"), dbr("Freedonia"));
    nt += iri_line(dbr("Rivertown"), kType, dbo("City"));
    nt += iri_line(dbr("Rivertown"), dbo("country"), dbr("Sylvania"));
    nt += iri_line(dbr("Freedonia"), kType, dbo("Place"));
    nt += iri_line(dbr("Sylvania"), kType, dbo("Place"));
    nt += iri_line(dbr("Starlight_Archive"), kType, dbo("Database"));
    nt += iri_line(dbr("Starlight_Archive"), dbo("author"), dbr("Carol_Swift"));
    nt += iri_line(dbr("Night_Sonata"), kType, dbo("MusicalWork"));
    nt += iri_line(dbr("Night_Sonata"), dbo("author"), dbr("Alice_Park"));
    nt += iri_line(dbr("Acme_Forge"), kType, dbo("Company"));
    nt += iri_line(dbr("Acme_Forge"), dbo("location"), dbr("Springfield"));
    nt += iri_line(dbr("Helping_Hands"), kType, dbo("NonProfitOrganisation"));
    nt += iri_line(dbr("Helping_Hands"), dbo("location"), dbr("Rivertown"));
    return nt;
}

kg::LocalStore wikidata_store() {
    return kg::LocalStore::from_ntriples_text(wikidata_ntriples());
}

kg::LocalStore dbpedia_store() {
    return kg::LocalStore::from_ntriples_text(dbpedia_ntriples());
}

namespace {

const char* kWdPrologue =
    "PREFIX wd: <http://www.wikidata.org/entity/> "
    "PREFIX wdt: <http://www.wikidata.org/prop/direct/> ";
const char* kDbPrologue =
    "PREFIX dbo: <http://dbpedia.org/ontology/> "
    "PREFIX dbr: <http://dbpedia.org/resource/> "
    "PREFIX rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> "
    "PREFIX rdfs: <http://www.w3.org/2000/01/rdf-schema#> ";

struct BenchQuestion {
    const char* id;
    const char* text;
    std::string body; // query without the prologue
};

std::string benchmark_json(const std::string& name, const std::string& prologue,
                           const std::vector<BenchQuestion>& questions,
                           const kg::LocalStore& store) {
    json doc;
    doc["dataset"]["id"] = name;
    json out_questions = json::array();
    for (const auto& q : questions) {
        json jq;
        jq["id"] = q.id;
        jq["question"] = json::array({json{{"language", "en"}, {"string", q.text}}});
        const std::string sparql = prologue + q.body;
        jq["query"]["sparql"] = sparql;
        try {
            auto answers = sparql::evaluate_local(sparql, store);
            jq["answers"] = json::array({json::parse(kg::render_sparql_json(answers))});
        } catch (const QueryRejectedError&) {
            // gold uses features beyond the local engine; no stored answers
        }
        out_questions.push_back(std::move(jq));
    }
    doc["questions"] = std::move(out_questions);
    return doc.dump(2) + "\n";
}

const std::vector<BenchQuestion>& wd_questions() {
    static const std::vector<BenchQuestion> questions = {
        {"1", "What orbits the Earth?", "SELECT ?s WHERE { ?s wdt:P397 wd:Q2 . }"},
        {"2", "What does the Moon orbit?", "SELECT ?o WHERE { wd:Q405 wdt:P397 ?o . }"},
        {"3", "Which planets orbit the Sun?",
         "SELECT ?p WHERE { ?p wdt:P31 wd:Q634 . ?p wdt:P397 wd:Q525 . }"},
        {"4", "Who are the politicians?", "SELECT ?x WHERE { ?x wdt:P106 wd:Q82955 . }"},
        {"5", "Which politicians are citizens of Germany?",
         "SELECT ?x WHERE { ?x wdt:P106 wd:Q82955 . ?x wdt:P27 wd:Q183 . }"},
        {"6", "What is the capital of Germany?",
         "SELECT ?c WHERE { wd:Q183 wdt:P36 ?c . }"},
        {"7", "Is the Moon part of the Solar System?",
         "ASK { wd:Q405 wdt:P361 wd:Q544 . }"},
        {"8", "Who was born in Washington and is a writer?",
         "SELECT ?x WHERE { ?x wdt:P19 wd:Q61 . ?x wdt:P106 wd:Q36180 . }"},
        {"9", "Which humans are astronauts or politicians?",
         "SELECT DISTINCT ?x WHERE { ?x wdt:P31 wd:Q5 . { ?x wdt:P106 wd:Q11631 . } "
         "UNION { ?x wdt:P106 wd:Q82955 . } }"},
        {"10", "What is the population of the United States?",
         "SELECT ?n WHERE { wd:Q30 wdt:P1082 ?n . }"},
        {"11", "Which moons orbit Mars?",
         "SELECT ?m WHERE { ?m wdt:P31 wd:Q2151 . ?m wdt:P397 wd:Q111 . }"},
        {"12", "Is a planet a kind of astronomical object?",
         "ASK { wd:Q634 wdt:P279 wd:Q6999 . }"},
        {"13", "Which country is Berlin the capital of?",
         "SELECT ?c WHERE { ?c wdt:P36 wd:Q64 . }"},
        {"14", "Which French astronauts are there?",
         "SELECT ?x WHERE { ?x wdt:P27 wd:Q142 . ?x wdt:P106 wd:Q11631 . }"},
        {"15", "Which stars does Pluto orbit?",
         "SELECT ?s WHERE { wd:Q339 wdt:P397 ?s . }"},
        {"16", "Which capitals are in Germany or France?",
         "SELECT DISTINCT ?c WHERE { { ?c wdt:P17 wd:Q183 . } UNION { ?c wdt:P17 "
         "wd:Q142 . } }"},
        {"17", "Where were German politicians born?",
         "SELECT DISTINCT ?b WHERE { ?x wdt:P27 wd:Q183 . ?x wdt:P106 wd:Q82955 . ?x "
         "wdt:P19 ?b . }"},
        {"18", "Which writers are American citizens?",
         "SELECT ?x WHERE { ?x wdt:P106 wd:Q36180 . ?x wdt:P27 wd:Q30 . }"},
        {"19", "In which countries were astronauts born?",
         "SELECT DISTINCT ?c WHERE { ?x wdt:P106 wd:Q11631 . ?x wdt:P19 ?b . ?b "
         "wdt:P17 ?c . }"},
        {"20", "What is the Sun an instance of?",
         "SELECT ?c WHERE { wd:Q525 wdt:P31 ?c . }"},
        {"21", "Which celestial bodies are part of the Solar System?",
         "SELECT ?x WHERE { ?x wdt:P361 wd:Q544 . }"},
        {"22", "What is Phobos?", "SELECT ?c WHERE { wd:Q7547 wdt:P31 ?c . }"},
        {"23", "Which people born in Berlin are politicians?",
         "SELECT ?x WHERE { ?x wdt:P19 wd:Q64 . ?x wdt:P106 wd:Q82955 . }"},
        {"24", "Which German cities are capitals of Germany?",
         "SELECT ?c WHERE { ?c wdt:P17 wd:Q183 . wd:Q183 wdt:P36 ?c . }"},
        {"25", "Are Phobos and Deimos moons of Mars?",
         "ASK { wd:Q7547 wdt:P397 wd:Q111 . wd:Q7548 wdt:P397 wd:Q111 . }"},
        {"26", "Which French people were born in Paris?",
         "SELECT ?x WHERE { ?x wdt:P27 wd:Q142 . ?x wdt:P19 wd:Q90 . }"},
        {"27", "What does the mystery item point to?",
         "SELECT ?o WHERE { wd:Q99901 wdt:P9999 ?o . }"},
        {"28", "Which humans are known, with their birthplaces when recorded?",
         "SELECT DISTINCT ?x WHERE { ?x wdt:P31 wd:Q5 . OPTIONAL { ?x wdt:P19 ?b . } }"},
        {"29", "Which items are astronomical objects, directly or by subclass?",
         "SELECT ?x WHERE { ?x wdt:P31/wdt:P279* wd:Q6999 . }"},
    };
    return questions;
}

const std::vector<BenchQuestion>& db_questions() {
    static const std::vector<BenchQuestion> questions = {
        {"d1", "Who are the astronauts?",
         "SELECT ?x WHERE { ?x rdf:type dbo:Astronaut . }"},
        {"d2", "Is Journalist a subclass of Person?",
         "ASK { dbo:Journalist rdfs:subClassOf dbo:Person . }"},
        {"d3", "Where was Alice Park born?",
         "SELECT ?p WHERE { dbr:Alice_Park dbo:birthPlace ?p . }"},
        {"d4", "Which people were born in Springfield?",
         "SELECT ?x WHERE { ?x dbo:birthPlace dbr:Springfield . }"},
        {"d5", "Which cities are in Freedonia?",
         "SELECT ?c WHERE { ?c rdf:type dbo:City . ?c dbo:country dbr:Freedonia . }"},
        {"d6", "Who wrote the Starlight Archive?",
         "SELECT ?a WHERE { dbr:Starlight_Archive dbo:author ?a . }"},
        {"d7", "Which politicians are from Freedonia?",
         "SELECT ?x WHERE { ?x rdf:type dbo:Politician . ?x dbo:country dbr:Freedonia . }"},
        {"d8", "Is Venue a subclass of Organisation?",
         "ASK { dbo:Venue rdfs:subClassOf dbo:Organisation . }"},
    };
    return questions;
}

} // namespace

std::string qald_wd_json() {
    return benchmark_json("synth-qald-wd", kWdPrologue, wd_questions(), wikidata_store());
}

std::string qald_db_json() {
    return benchmark_json("synth-qald-db", kDbPrologue, db_questions(), dbpedia_store());
}

namespace {

const char* kWordsA[] = {"amber", "basalt", "cedar",  "delta", "ember",  "fjord",
                         "garnet", "harbor", "indigo", "juniper", "krill", "lagoon",
                         "marble", "nectar", "onyx",  "prairie", "quartz", "reef",
                         "saffron", "tundra"};
const char* kWordsB[] = {"arch",   "bay",    "cliff", "dune",  "estuary", "field",
                         "grove",  "hollow", "isle",  "jetty", "knoll",   "ledge",
                         "meadow", "notch",  "oasis", "pass",  "ridge",   "shoal",
                         "trail",  "vale"};

std::string word_label(std::size_t i) {
    return std::string(kWordsA[i % 20]) + " " + kWordsB[(i / 20) % 20] + " " +
           std::to_string(i % 7 + 1);
}

} // namespace

std::string popular_entities_tsv() {
    // ascending by popularity: 161 low-count rows then 39 high-count rows,
    // so the mean split lands exactly at 161/39
    std::string tsv = "# synthetic fixture: most common entities (id, label, count, aliases)\n";
    for (int i = 0; i < 200; ++i) {
        const std::string id = "Q" + std::to_string(2000000 + i);
        const std::string label = word_label(static_cast<std::size_t>(i));
        const std::uint64_t count =
            i < 161 ? 5000 + static_cast<std::uint64_t>(i) * 55
                    : 2000000 + static_cast<std::uint64_t>(i - 161) * 100000;
        tsv += id + "\t" + label + "\t" + std::to_string(count);
        if (i % 9 == 0) tsv += "\tthe " + label;
        tsv += "\n";
    }
    return tsv;
}

std::string popular_properties_tsv() {
    // 77 low rows, 22 generated high rows, and the instance-of property
    // with its documented triple count as the top row: 100 in all, with
    // the mean falling strictly between the two bands
    std::string tsv = "# synthetic fixture: top properties (id, label, count)\n";
    for (int i = 0; i < 99; ++i) {
        const std::string id = "P" + std::to_string(5000 + i);
        const std::string label = "has " + word_label(static_cast<std::size_t>(i));
        const std::uint64_t count =
            i < 77 ? 100000 + static_cast<std::uint64_t>(i) * 9000
                   : 8000000 + static_cast<std::uint64_t>(i - 77) * 400000;
        tsv += id + "\t" + label + "\t" + std::to_string(count) + "\n";
    }
    tsv += "P31\tinstance of\t118388701\n";
    return tsv;
}

std::string mapping_tsv() {
    std::string tsv = "# synthetic Freebase-Wikidata mapping (freebase id, wikidata id, label)\n";
    for (int i = 0; i < 3000; ++i) {
        char freebase[32];
        std::snprintf(freebase, sizeof(freebase), "/m/0%05x", 0x1000 + i * 7);
        const std::string id = "Q" + std::to_string(7000000 + i);
        std::string label = i % 41 == 0 ? "" : word_label(static_cast<std::size_t>(i));
        tsv += std::string(freebase) + "\t" + id + "\t" + label + "\n";
    }
    return tsv;
}

json config_wd_json() {
    json cfg;
    cfg["graphs"]["local"] = {{"kind", "local"},
                              {"triples_path", "kg_wikidata.nt"},
                              {"graph_name", "Wikidata"},
                              {"graph_tag", "wikidata"},
                              {"min_delay_ms", 0}};
    cfg["graph"] = "local";
    cfg["model"] = {{"kind", "replay"},
                    {"backend_id", "scripted-wd"},
                    {"transcript_path", "transcripts/scripted_wd.jsonl"}};
    cfg["decoding"] = {{"temperature", 0.0}, {"max_generation_length", 2048}, {"greedy", true}};
    cfg["benchmark"] = {{"path", "qald_synth_wd.json"}, {"language", "en"}};
    cfg["sets"] = {{"entities_path", "popular_entities.tsv"},
                   {"properties_path", "popular_properties.tsv"},
                   {"mapping_path", "fw_mapping.tsv"},
                   {"top_entities", 200},
                   {"top_properties", 100},
                   {"random_sample", 1000}};
    cfg["thresholds"] = {{"activation", 0.5},
                         {"correctness_f1", 1.0},
                         {"lexical_percentile", 50.0}};
    cfg["regimes"] = {"original", "no_label", "no_uri"};
    cfg["forms"] = {"lexical", "topological"};
    cfg["seed"] = 20260810;
    cfg["snapshot_label"] = kSnapshotLabel;
    return cfg;
}

json config_db_json() {
    json cfg;
    cfg["graphs"]["local"] = {{"kind", "local"},
                              {"triples_path", "kg_dbpedia.nt"},
                              {"graph_name", "DBpedia"},
                              {"graph_tag", "dbpedia"},
                              {"min_delay_ms", 0}};
    cfg["graph"] = "local";
    cfg["model"] = {{"kind", "replay"},
                    {"backend_id", "scripted-db"},
                    {"transcript_path", "transcripts/scripted_db.jsonl"}};
    cfg["decoding"] = {{"temperature", 0.0}, {"max_generation_length", 2048}, {"greedy", true}};
    cfg["benchmark"] = {{"path", "qald_synth_db.json"}, {"language", "en"}};
    cfg["thresholds"] = {{"activation", 0.5},
                         {"correctness_f1", 1.0},
                         {"lexical_percentile", 50.0}};
    cfg["regimes"] = {"original", "no_uri"};
    cfg["forms"] = {"hierarchical", "topological"};
    cfg["seed"] = 20260810;
    cfg["snapshot_label"] = kSnapshotLabel;
    return cfg;
}

std::string scripted_kat_response(const kat::KatInstance& instance,
                                  const kg::LocalStore& store) {
    const std::uint64_t h = util::fnv1a64(instance.id);

    auto decorate = [&](const kg::KgRef& ref) -> std::string {
        switch (h % 3) {
            case 0: return ref.normalized_iri;
            case 1: return "The answer is <" + ref.normalized_iri + ">.";
            default: return "`" + kg::compact_iri(ref.normalized_iri) + "`";
        }
    };

    switch (instance.kind) {
        case kat::KatKind::UriRecognition: {
            switch (h % 5) {
                case 0:
                case 1: return instance.gold_label;
                case 2: return util::lower_ascii(instance.gold_label);
                case 3:
                    return instance.aliases.empty() ? "\"" + instance.gold_label + "\""
                                                    : instance.aliases.front();
                default: return "something else entirely";
            }
        }
        case kat::KatKind::DirectSubsumption: {
            const auto n = instance.gold_classes.size();
            const std::size_t keep = h % (n + 1);
            std::string out;
            std::size_t line = 1;
            for (std::size_t i = 0; i < keep; ++i) {
                out += std::to_string(line++) + ". " +
                       instance.gold_classes[i].normalized_iri + "\n";
            }
            if (h % 3 == 0)
                out += std::to_string(line) + ". http://dbpedia.org/ontology/Mirage\n";
            return out.empty() ? "No subclasses come to mind." : out;
        }
        case kat::KatKind::InverseSubsumption: {
            switch (h % 4) {
                case 0:
                case 1: return decorate(instance.gold_classes.front());
                case 2: return "http://dbpedia.org/ontology/Work";
                default: return "The superclass is unclear to me.";
            }
        }
        case kat::KatKind::SvObject:
        case kat::KatKind::VoSubject: {
            const bool subject_side = instance.kind == kat::KatKind::SvObject;
            const auto& given = instance.pair.entity;
            const auto& property = instance.pair.property;
            const int roll = static_cast<int>(h % 10);

            auto perfect_candidate = [&]() -> std::optional<kg::KgRef> {
                for (const auto& t : store.triples()) {
                    if (t.predicate.normalized_iri != property.normalized_iri) continue;
                    if (subject_side) {
                        if (t.subject.normalized_iri != given.normalized_iri) continue;
                        if (const auto* o = std::get_if<kg::KgRef>(&t.object)) return *o;
                    } else {
                        if (!kg::term_equal(t.object, kg::Term{given})) continue;
                        return t.subject;
                    }
                }
                return std::nullopt;
            };
            auto soft_candidate = [&]() -> std::optional<kg::KgRef> {
                for (const auto& t : store.triples()) {
                    // connected to the given entity through a different property
                    if (t.subject.normalized_iri == given.normalized_iri &&
                        t.predicate.normalized_iri != property.normalized_iri) {
                        if (const auto* o = std::get_if<kg::KgRef>(&t.object)) {
                            kg::AskPattern exact{subject_side ? given : *o, property,
                                                 subject_side ? kg::Term{*o}
                                                              : kg::Term{given},
                                                 std::nullopt};
                            if (!store.ask(exact)) return *o;
                        }
                    }
                    if (kg::term_equal(t.object, kg::Term{given})) {
                        kg::AskPattern exact{subject_side ? given : t.subject, property,
                                             subject_side ? kg::Term{t.subject}
                                                          : kg::Term{given},
                                             std::nullopt};
                        if (!store.ask(exact)) return t.subject;
                    }
                }
                return std::nullopt;
            };

            if (roll < 5) {
                if (auto ref = perfect_candidate()) return decorate(*ref);
                return "The value is a literal I cannot name as a URI.";
            }
            if (roll < 7) {
                if (auto ref = soft_candidate()) return decorate(*ref);
                return "http://example.org/nowhere/N" + std::to_string(h % 97);
            }
            if (roll < 9)
                return "http://example.org/nowhere/N" + std::to_string(h % 97);
            return "I cannot complete this triple reliably.";
        }
    }
    return "";
}

std::string scripted_t2s_response(const qald::Question& question, t2s::PromptRegime regime,
                                  std::size_t index, const std::string& wrong_query) {
    const std::string tagged_gold = "<SPARQL>" + question.gold_sparql + "</SPARQL>";
    const std::string tagged_wrong = "<SPARQL>" + wrong_query + "</SPARQL>";
    const std::string broken = "<SPARQL>SELECT WHERE {</SPARQL>";

    if (question.id == "15" && regime == t2s::PromptRegime::Original) {
        // empty gold result; predict a different query that is also empty
        return "<SPARQL>PREFIX wd: <http://www.wikidata.org/entity/> "
               "PREFIX wdt: <http://www.wikidata.org/prop/direct/> "
               "SELECT ?s WHERE { wd:Q340 wdt:P397 ?s . }</SPARQL>";
    }

    switch (regime) {
        case t2s::PromptRegime::Original:
            if (index % 5 == 2) return "Here is the query: " + question.gold_sparql;
            if (index % 5 == 4) return tagged_wrong;
            return tagged_gold;
        case t2s::PromptRegime::NoLabel:
            if (index % 3 == 0) return tagged_gold;
            if (index % 3 == 1) return tagged_wrong;
            return broken;
        case t2s::PromptRegime::NoUri:
            if (index % 6 == 0) return tagged_gold;
            if (index % 6 == 1) return tagged_wrong;
            return "I do not know enough about the schema to answer confidently.";
    }
    return tagged_gold;
}

namespace {

// Mirror of the build/run enumeration: every prompt the pipeline renders
// is produced here once static inputs are on disk.
void write_transcript(const std::filesystem::path& dir, const json& config_doc,
                      const std::string& qald_file, const kg::LocalStore& store,
                      const std::string& wrong_query,
                      const std::vector<t2s::PromptRegime>& regimes, bool with_uri_sets,
                      bool with_subsumption, bool with_lexical, bool with_hierarchical,
                      const std::filesystem::path& transcript_path) {
    Config cfg = config_from_json(config_doc, dir);
    auto backend = kg::GraphBackend::local(store);
    const auto bench = qald::load_benchmark(dir / qald_file);
    const model::DecodingConfig decoding;
    std::vector<model::TranscriptRecord> records;
    const std::string backend_id = cfg.model.backend_id;

    auto add = [&](const std::string& prompt, const std::string& response) {
        records.push_back(
            {backend_id, model::prompt_hash(prompt), prompt, decoding, response});
    };
    auto add_instances = [&](const std::vector<kat::KatInstance>& instances) {
        for (const auto& inst : instances)
            add(kat::render_prompt(inst), scripted_kat_response(inst, store));
    };

    testset::CompletionBuildOptions completion_options;
    completion_options.timestamp = kSnapshotLabel;
    add_instances(
        testset::build_completion_set(bench, &backend, completion_options).items);

    if (with_lexical) {
        testset::LexicalProbeOptions lex;
        lex.timestamp = kSnapshotLabel;
        add_instances(testset::build_lexical_probe_set(bench, backend, lex).items);
    }
    if (with_hierarchical) {
        add_instances(testset::build_hierarchical_probe_set(bench, kSnapshotLabel).items);
    }
    if (with_subsumption) {
        testset::SubsumptionBuildOptions sub;
        sub.timestamp = kSnapshotLabel;
        auto sets = testset::build_subsumption_sets(backend, sub);
        add_instances(sets.direct.items);
        add_instances(sets.inverse.items);
    }
    if (with_uri_sets) {
        testset::UriSetSources sources;
        sources.entities_path = dir / "popular_entities.tsv";
        sources.properties_path = dir / "popular_properties.tsv";
        sources.mapping_path = dir / "fw_mapping.tsv";
        sources.seed = cfg.seed;
        sources.timestamp = kSnapshotLabel;
        auto sets = testset::build_uri_recognition_sets(sources);
        add_instances(sets.top_entities.items);
        add_instances(sets.top_properties.items);
        add_instances(sets.random_pairs.items);
    }

    const auto& graph_cfg = cfg.active_graph();
    for (const auto regime : regimes) {
        std::size_t index = 0;
        for (const auto& question : bench.questions) {
            t2s::PromptContext ctx;
            if (regime != t2s::PromptRegime::NoUri)
                ctx = t2s::gold_prompt_context(question.gold_sparql, backend);
            const std::string prompt =
                t2s::render_t2s_prompt(regime, question.text, ctx.entities, ctx.relations,
                                       graph_cfg.graph_name, graph_cfg.tag);
            add(prompt, scripted_t2s_response(question, regime, index, wrong_query));
            ++index;
        }
    }

    std::string text;
    for (const auto& rec : records) {
        json j;
        j["backend_id"] = rec.backend_id;
        j["prompt_hash"] = rec.prompt_hash;
        j["prompt"] = rec.prompt;
        j["config"] = {{"temperature", rec.config.temperature},
                       {"max_generation_length", rec.config.max_generation_length},
                       {"greedy", rec.config.greedy}};
        j["response"] = rec.response;
        text += j.dump();
        text += '\n';
    }
    util::write_file(transcript_path, text);
}

} // namespace

void write_fixture_bundle(const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir / "transcripts");
    util::write_file(dir / "kg_wikidata.nt", wikidata_ntriples());
    util::write_file(dir / "kg_dbpedia.nt", dbpedia_ntriples());
    util::write_file(dir / "qald_synth_wd.json", qald_wd_json());
    util::write_file(dir / "qald_synth_db.json", qald_db_json());
    util::write_file(dir / "popular_entities.tsv", popular_entities_tsv());
    util::write_file(dir / "popular_properties.tsv", popular_properties_tsv());
    util::write_file(dir / "fw_mapping.tsv", mapping_tsv());
    util::write_file(dir / "config_wd.json", config_wd_json().dump(2) + "\n");
    util::write_file(dir / "config_db.json", config_db_json().dump(2) + "\n");

    const std::string wd_wrong =
        "PREFIX wd: <http://www.wikidata.org/entity/> "
        "PREFIX wdt: <http://www.wikidata.org/prop/direct/> "
        "SELECT ?x WHERE { ?x wdt:P31 wd:Q6256 . }";
    write_transcript(dir, config_wd_json(), "qald_synth_wd.json", wikidata_store(),
                     wd_wrong,
                     {t2s::PromptRegime::Original, t2s::PromptRegime::NoLabel,
                      t2s::PromptRegime::NoUri},
                     /*with_uri_sets=*/true, /*with_subsumption=*/false,
                     /*with_lexical=*/true, /*with_hierarchical=*/false,
                     dir / "transcripts" / "scripted_wd.jsonl");

    const std::string db_wrong =
        "PREFIX dbo: <http://dbpedia.org/ontology/> "
        "PREFIX rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> "
        "SELECT ?x WHERE { ?x rdf:type dbo:City . }";
    write_transcript(dir, config_db_json(), "qald_synth_db.json", dbpedia_store(), db_wrong,
                     {t2s::PromptRegime::Original, t2s::PromptRegime::NoUri},
                     /*with_uri_sets=*/false, /*with_subsumption=*/true,
                     /*with_lexical=*/false, /*with_hierarchical=*/true,
                     dir / "transcripts" / "scripted_db.jsonl");
}

std::filesystem::path committed_fixture_dir() { return PROTOKG_FIXTURE_DIR; }

std::filesystem::path golden_dir() { return PROTOKG_GOLDEN_DIR; }

std::filesystem::path make_temp_dir(const std::string& tag) {
    static std::atomic<int> counter{0};
    auto dir = std::filesystem::temp_directory_path() /
               ("protokg_" + tag + "_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter.fetch_add(1)));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace protokg::testfix
