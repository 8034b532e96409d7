#pragma once
// Suffix inventories from lemma-aligned segmentation, and "which suffix when"
// classification.
//
// Segmentation is the longest common prefix (in Unicode scalar values, after
// NFC normalization) of the surface form and its lemma: stem = LCP, suffix =
// the rest of the form. Sound changes at the morpheme boundary (sandhi) are
// not modelled, so "deshaala"/"desh" segments as desh + aala where a
// morphological analyser would give desh + laa.

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "gramex/corpus.hpp"
#include "gramex/tasks.hpp"

namespace gramex {

inline constexpr std::string_view kSegmentationMethod = "lcp";
// Shipped with every bundle's suffix section.
std::string_view segmentation_note();

std::string nfc(std::string_view utf8);
std::u32string to_u32(std::string_view utf8);
std::string to_utf8(std::u32string_view s);

struct Decomposition {
  std::string stem;
  std::string suffix;  // may be empty (form == lemma)
  bool suppletive = false;  // no shared prefix: empty stem, the whole form as suffix
  std::string method{kSegmentationMethod};
};

// Throws on an empty form or lemma.
Decomposition decompose(std::string_view form, std::string_view lemma);

struct SuffixInventory {
  std::string upos;
  std::map<std::string, std::size_t> counts;  // only suffixes at or above min_count
  std::size_t min_count = 10;
  std::size_t tokens = 0;      // tokens of this POS that were segmented
  std::size_t suppletive = 0;

  bool contains(const std::string& suffix) const { return counts.count(suffix) != 0; }
};

// The POS inventory reported by default.
std::vector<std::string> default_suffix_pos();

SuffixInventory build_inventory(const Corpus& corpus, const std::string& upos, std::size_t min_count = 10);

// One instance per token of the inventory's POS whose suffix is in the
// inventory; the label is the suffix.
std::vector<Instance> extract_suffix_instances(const Corpus& corpus, const SuffixInventory& inventory,
                                               const FeatureTemplate& tmpl, const LemmaVocabulary& lemmas);

// Linear model over the instances; skipped when the inventory has fewer than
// two suffixes.
LinearTaskResult run_suffix_task(const Corpus& corpus, const SuffixInventory& inventory,
                                 const TaskSettings& settings, const Glossary& glossary,
                                 const LemmaVocabulary& lemmas);

}  // namespace gramex
