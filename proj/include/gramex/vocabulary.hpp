#pragma once
// Vocabulary materials from aligned parallel data: semantic subdivisions
// (one English word, several context-dependent translations), words grouped
// by category through the sense taxonomy, and adjectives with synonyms and
// antonyms.

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "gramex/corpus.hpp"
#include "gramex/tasks.hpp"

namespace gramex {

// Lemma, or the lower-cased form when the lemma is missing.
std::string lexical_key(const Token& token);

struct Occurrence {
  std::size_t pair = 0;    // index into the pair list
  std::size_t source = 0;  // 0-based token positions
  std::size_t target = 0;
};

struct TranslationEntry {
  std::size_t count = 0;
  std::vector<Occurrence> occurrences;
};

struct TranslationTable {
  std::map<std::string, std::map<std::string, TranslationEntry>> entries;  // L1 -> L2 -> entry
  std::map<std::string, std::map<std::string, std::size_t>> source_pos;   // L1 -> UPOS -> count

  std::size_t total(const std::string& l1) const;
  // Most frequent UPOS of the L1 lemma (ties lexicographic); empty if unknown.
  std::string majority_pos(const std::string& l1) const;
  bool empty() const { return entries.empty(); }
};

// Every alignment link counts once, keyed by (L1 lemma, L2 lemma). Links
// touching punctuation are ignored.
TranslationTable aggregate_translations(std::span<const ParallelPair> pairs);

struct FilterConfig {
  std::size_t min_count = 10;
  std::size_t min_total = 30;
  double min_entropy = 0.3;  // bits
  std::set<std::string> excluded_pos{"PROPN"};

  void validate() const;
};

struct Candidate {
  std::string l2;
  std::size_t count = 0;
  std::string romanization;  // most frequent transliteration, or the lemma
  bool loanword = false;     // romanization equals the English lemma
};

struct DivergentPair {
  std::string l1;
  std::vector<Candidate> candidates;  // count descending, then lexicographic
  std::size_t total = 0;
  double entropy = 0.0;
};

// Entropy in bits of a count distribution.
double entropy_bits(std::span<const std::size_t> counts);

// Keeps L1 lemmas with at least two candidates of count >= min_count whose
// combined count reaches min_total and whose distribution has at least
// min_entropy bits; lemmas whose majority POS is excluded are dropped.
std::vector<DivergentPair> filter_divergent_pairs(const TranslationTable& table, const FilterConfig& config,
                                                  std::span<const ParallelPair> pairs);

struct LexicalResources {
  const SenseAnnotations* senses = nullptr;
  const TaxonomyResource* taxonomy = nullptr;
};

// One instance per occurrence of the L1 word translated by a kept candidate.
// Features come from both sides: English neighbours, head, dependents, sense
// and its ancestors; the translated token's morphology and neighbours.
std::vector<Instance> extract_lexsel_instances(const DivergentPair& pair, const TranslationTable& table,
                                               std::span<const ParallelPair> pairs,
                                               const LexicalResources& resources);

LinearTaskResult fit_lexical_selection(const DivergentPair& pair, const TranslationTable& table,
                                       std::span<const ParallelPair> pairs, const LexicalResources& resources,
                                       const TaskSettings& settings, const Glossary& glossary);

// ---- categories and adjectives ------------------------------------------

struct CategorySeed {
  std::string name;
  std::vector<std::string> senses;
  bool verbs = false;  // matches any verb sense (".v.")
};

// food, relationships, animals, fruits, colors, time, verbs, body parts,
// vehicle, elements, furniture, clothing.
std::vector<CategorySeed> default_categories();

struct CategoryEntry {
  std::string l2;
  std::string gloss;  // English lemma
  std::string sense;
  std::string romanization;
  std::size_t count = 0;
  std::vector<Provenance> examples;
};

struct CategoryIndex {
  std::map<std::string, std::vector<CategoryEntry>> categories;
  std::vector<std::string> warnings;
};

// Membership depends only on the sense, the taxonomy and the seeds: a sense
// belongs to every category with a seed among the sense and its ancestors.
std::vector<std::string> categories_of(const std::string& sense, const TaxonomyResource& taxonomy,
                                       std::span<const CategorySeed> seeds);

CategoryIndex build_category_index(std::span<const ParallelPair> pairs, const SenseAnnotations* senses,
                                   const TaxonomyResource& taxonomy, std::span<const CategorySeed> seeds,
                                   std::size_t max_examples = 5);

struct AdjectiveEntry {
  std::string l2;
  std::string english;
  std::string romanization;
  std::size_t count = 0;
  std::vector<std::string> synonyms;
  std::vector<std::string> antonyms;
  std::vector<Provenance> examples;
};

// Aligned L2 lemmas whose English counterpart is an adjective (tagged ADJ, or,
// without tags, having an adjective sense in the taxonomy).
std::vector<AdjectiveEntry> build_adjective_entries(std::span<const ParallelPair> pairs,
                                                    const TaxonomyResource& taxonomy,
                                                    const SenseAnnotations* senses, std::size_t min_count = 2,
                                                    std::size_t max_entries = 50, std::size_t max_examples = 5);

}  // namespace gramex
