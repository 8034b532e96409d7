#pragma once
// The materials bundle: JSON encoding of every mined result, the sentence
// store examples point into, the evaluation table, and bundle.json emission.

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gramex/corpus.hpp"
#include "gramex/geninfo.hpp"
#include "gramex/glossary.hpp"
#include "gramex/suffixes.hpp"
#include "gramex/tasks.hpp"
#include "gramex/vocabulary.hpp"

namespace gramex {

using nlohmann::json;

inline constexpr std::array<std::string_view, 5> kAspects{"general_information", "vocabulary", "word_order",
                                                          "suffix_usage", "agreement"};
// "General Information", "Vocabulary", ...; throws on an unknown key.
std::string_view aspect_title(std::string_view key);
// Accepts the bundle key or a short alias ("geninfo", "wordorder", "suffixes").
std::optional<std::string> canonical_aspect(std::string_view name);

// ---- sentences ------------------------------------------------------------

struct SentenceRecord {
  std::string text;             // L2 text
  std::string translation;      // English, when known
  std::string transliteration;  // romanized L2, when known
  std::vector<std::string> forms;
  bool operator==(const SentenceRecord&) const = default;
};

class SentenceStore {
 public:
  // Both return the reference ("tb:<id>" / "par:<id>").
  std::string add_treebank(const Sentence& sentence);
  std::string add_pair(const ParallelPair& pair);
  const SentenceRecord* find(const std::string& ref) const;
  bool contains(const std::string& ref) const { return records_.count(ref) != 0; }
  std::size_t size() const { return records_.size(); }
  void merge(const SentenceStore& other);
  const std::map<std::string, SentenceRecord>& records() const { return records_; }

  json to_json() const;
  static SentenceStore from_json(const json& j);

 private:
  std::map<std::string, SentenceRecord> records_;
};

// Turns a provenance into {"ref", "head", "dep"} and stores the sentence.
using ExampleRef = std::function<json(const Provenance&)>;
ExampleRef treebank_refs(const Corpus& corpus, SentenceStore& store);
// Provenance.order indexes `pairs`.
ExampleRef parallel_refs(std::span<const ParallelPair> pairs, SentenceStore& store);

// ---- results --------------------------------------------------------------

json rule_json(const GrammarRule& rule, const ExampleRef& refs);
json tree_task_json(const TreeTaskResult& task, const ExampleRef& refs);
json linear_task_json(const LinearTaskResult& task, const ExampleRef& refs);
json morphology_json(std::span<const MorphSummary> summaries, const Glossary& glossary, const Corpus& corpus,
                     SentenceStore& store);
json inventory_json(const SuffixInventory& inventory);
json subdivision_json(const DivergentPair& pair, const LinearTaskResult& task, const ExampleRef& refs);
json categories_json(const CategoryIndex& index, const ExampleRef& refs);
json adjectives_json(std::span<const AdjectiveEntry> entries, const ExampleRef& refs);

// Section skeleton with every required key present and empty.
json empty_aspect(std::string_view key);

// ---- evaluation -----------------------------------------------------------

struct EvaluationRow {
  std::string aspect;  // aspect title
  std::string task;
  std::string model_kind;
  double model_accuracy = 0.0;     // percent
  std::size_t count = 0;           // rules, or word pairs for the vocabulary total
  double baseline_accuracy = 0.0;  // percent
  std::size_t test = 0;            // held-out rows

  std::string cell() const;           // "97.02 (7)"
  std::string baseline_cell() const;  // "96.97"
  json to_json() const;
  static EvaluationRow from_json(const json& j);
};

std::string format_percent(double percent);

EvaluationRow evaluation_row(std::string aspect, std::string task, const Evaluation& evaluation,
                             std::size_t count);

inline constexpr std::string_view kVocabularyTotal = "all word pairs";

// Orders rows by aspect (word order, agreement, suffix usage, vocabulary,
// then anything else), keeping task order within a aspect, and appends a
// vocabulary total: mean accuracy over the word pairs, count = pairs.
std::vector<EvaluationRow> build_evaluation_table(std::vector<EvaluationRow> rows);
std::string render_evaluation_table(std::span<const EvaluationRow> rows);

// ---- bundle ---------------------------------------------------------------

struct MaterialsBundle {
  std::string language;
  std::uint64_t seed = 0;
  json config = json::object();
  json ingestion;
  SentenceStore sentences;
  std::map<std::string, json> aspects;  // keyed by kAspects
  std::vector<EvaluationRow> evaluation;

  // All five aspects present and empty.
  static MaterialsBundle empty(std::string language, std::uint64_t seed, json config);
  json to_json() const;
  static MaterialsBundle from_json(const json& j);
};

json empty_ingestion();

// Every "ref" inside the aspects must name a stored sentence.
std::vector<std::string> unresolved_refs(const json& bundle);
// Schema violations plus unresolved references.
std::vector<std::string> validate_bundle(const json& bundle);

// Sorted keys, two-space indent, trailing newline.
std::string serialize_json(const json& j);
// Validates first; throws Error listing the problems and writes nothing.
void emit_json(const MaterialsBundle& bundle, const std::filesystem::path& path);

}  // namespace gramex
