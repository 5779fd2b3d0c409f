#pragma once

// Synthetic fixture universe shared by the unit tests, the acceptance
// suite, and the committed fixture bundle: two small knowledge graphs
// (Wikidata- and DBpedia-flavored), QALD-style benchmarks over them, item
// tables for the URI-recognition sets, and a deterministic scripted model
// whose responses exercise every match level and parse path.

#include "protokg/kat/kat.hpp"
#include "protokg/kg/local_store.hpp"
#include "protokg/qald.hpp"
#include "protokg/t2s/prompts.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>

namespace protokg::testfix {

inline constexpr const char* kSnapshotLabel = "2026-08-10T00:00:00Z";

std::string wikidata_ntriples();
std::string dbpedia_ntriples();
kg::LocalStore wikidata_store();
kg::LocalStore dbpedia_store();

// Benchmarks with gold answers computed against the fixture stores.
std::string qald_wd_json();
std::string qald_db_json();

std::string popular_entities_tsv();
std::string popular_properties_tsv();
std::string mapping_tsv();

nlohmann::json config_wd_json();
nlohmann::json config_db_json();

// Deterministic response policy keyed on the instance id: perfect, soft,
// incorrect, and parse-failure responses all occur.
std::string scripted_kat_response(const kat::KatInstance& instance,
                                  const kg::LocalStore& store);
std::string scripted_t2s_response(const qald::Question& question, t2s::PromptRegime regime,
                                  std::size_t index, const std::string& wrong_query);

// Write the complete offline bundle (graphs, benchmarks, tables, configs,
// transcripts) into dir. Byte-deterministic.
void write_fixture_bundle(const std::filesystem::path& dir);

std::filesystem::path committed_fixture_dir();
std::filesystem::path golden_dir();

// Fresh scratch directory under the system temp root.
std::filesystem::path make_temp_dir(const std::string& tag);

} // namespace protokg::testfix
