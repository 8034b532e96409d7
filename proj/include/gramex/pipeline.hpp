#pragma once
// Run configuration and the ingest -> mine -> evaluate -> render stages.
//
// Every stage reads the configuration and writes its artifacts under the
// output directory, so stages can be run one at a time:
//   work/ingest.json     ingestion statistics and notices
//   work/<aspect>.json   one mined aspect with the sentences it cites
//   bundle.json          the validated materials bundle
//   evaluation.txt       the evaluation table
//   site/                static HTML

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gramex/agreement.hpp"
#include "gramex/corpus.hpp"
#include "gramex/geninfo.hpp"
#include "gramex/glossary.hpp"
#include "gramex/reporting.hpp"
#include "gramex/tasks.hpp"
#include "gramex/vocabulary.hpp"
#include "gramex/wordorder.hpp"

namespace gramex {

struct InputPaths {
  std::optional<std::filesystem::path> treebank;
  std::optional<std::filesystem::path> transliterations;  // for the treebank
  std::optional<std::filesystem::path> parallel_source;   // English side
  std::optional<std::filesystem::path> parallel_target;   // L2 side
  std::string parallel_format = "conllu";                 // or "text"
  std::optional<std::filesystem::path> alignments;
  std::optional<std::filesystem::path> parallel_transliterations;  // for the L2 side
  std::optional<std::filesystem::path> hypernyms;
  std::optional<std::filesystem::path> senses;    // sense inventory (senses.tsv)
  std::optional<std::filesystem::path> antonyms;
  std::optional<std::filesystem::path> sense_annotations;
  std::optional<std::filesystem::path> glossary;
};

struct RunConfig {
  std::string language = "L2";
  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;
  std::filesystem::path out = "out";
  InputPaths inputs;
  TaskSettings settings;
  std::vector<OrderTask> word_order = default_order_tasks();
  std::vector<AgreementTask> agreement = default_agreement_tasks();
  std::vector<std::string> suffix_pos;  // defaults to default_suffix_pos()
  std::size_t suffix_min_count = 10;
  FilterConfig vocabulary_filter;
  std::vector<CategorySeed> categories = default_categories();
  std::size_t adjective_min_count = 2;
  std::size_t max_adjectives = 50;
  GenInfoConfig general_information;

  RunConfig();
  // Relative input paths are resolved against `base_dir`. Unknown keys are
  // errors.
  static RunConfig from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = ".");
  static RunConfig load(const std::filesystem::path& path);

  // Throws Error on inconsistent settings, including a missing seed.
  void validate() const;
  // The effective settings recorded in the bundle. Output directory and job
  // count are left out: neither changes the results.
  nlohmann::json to_json() const;

  std::uint64_t seed_value() const { return seed.value_or(0); }
  std::filesystem::path work_dir() const { return out / "work"; }
  std::filesystem::path bundle_path() const { return out / "bundle.json"; }
  std::filesystem::path site_dir() const { return out / "site"; }
};

struct Inputs {
  std::optional<Corpus> treebank;
  std::size_t transliterated_tokens = 0;
  std::vector<ParallelPair> pairs;
  bool aligned = false;
  TaxonomyResource taxonomy;
  std::optional<SenseAnnotations> senses;
  Glossary glossary;
  std::vector<std::string> notices;
};

// Reads every configured input. A configured path that does not exist or does
// not parse is an error; an input that is not configured only adds a notice.
Inputs load_inputs(const RunConfig& config);

nlohmann::json ingestion_json(const Inputs& inputs);

// Mined aspect: its bundle section, the sentences it cites and its
// evaluation rows.
struct AspectResult {
  std::string aspect;
  nlohmann::json section;
  SentenceStore sentences;
  std::vector<EvaluationRow> evaluation;

  nlohmann::json to_json() const;
  static AspectResult from_json(const nlohmann::json& j);
};

AspectResult mine_aspect(const RunConfig& config, const Inputs& inputs, const std::string& aspect);

MaterialsBundle assemble_bundle(const RunConfig& config, const nlohmann::json& ingestion,
                                const std::vector<AspectResult>& aspects);

// ---- stages ----------------------------------------------------------------

nlohmann::json cmd_ingest(const RunConfig& config);
AspectResult cmd_mine(const RunConfig& config, const std::string& aspect);
std::vector<EvaluationRow> cmd_evaluate(const RunConfig& config);
std::vector<std::string> cmd_render(const RunConfig& config);
// ingest, mine every aspect, evaluate, render.
void cmd_all(const RunConfig& config);

}  // namespace gramex
