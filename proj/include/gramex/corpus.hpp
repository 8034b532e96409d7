#pragma once
// Input readers: CoNLL-U treebanks, parallel pairs with Pharaoh alignments,
// sense annotations, lexical taxonomy exports and transliteration sidecars.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gramex {

struct Token {
  std::size_t index = 0;  // 1-based position in the sentence
  std::string form;
  std::string lemma;      // empty when the column is "_"
  std::string upos;
  std::string xpos;
  std::map<std::string, std::string> feats;
  std::size_t head = 0;   // 0 = root, otherwise index of the governing token
  std::string deprel;
  std::string deps;
  std::string misc;
  std::string translit;   // romanization; empty when unavailable

  bool has_feat(const std::string& attr) const { return feats.count(attr) != 0; }
  const std::string* feat(const std::string& attr) const;
  bool operator==(const Token&) const = default;
};

struct Sentence {
  std::string id;
  std::string text;         // "# text =" comment, or forms joined by spaces
  std::string translation;  // "# text_en =" comment when present
  std::vector<std::string> comments;  // raw comment lines, without the leading "#"
  std::vector<Token> tokens;

  // 1-based lookup.
  const Token& at(std::size_t index) const { return tokens.at(index - 1); }
  std::size_t size() const { return tokens.size(); }
  bool operator==(const Sentence&) const = default;
};

struct IngestStats {
  std::size_t sentences = 0;
  std::size_t tokens = 0;
  std::size_t multiword_ranges_skipped = 0;
  std::size_t empty_nodes_skipped = 0;
};

struct Corpus {
  std::string language;
  std::vector<Sentence> sentences;
  IngestStats stats;

  std::size_t token_count() const;
  const Sentence* find(std::string_view id) const;
};

// Throws ParseError naming `source` and the line number on malformed rows,
// duplicate token indices or unresolvable heads.
Corpus parse_conllu(std::string_view text, std::string_view source = "<conllu>");
std::string serialize_conllu(const Corpus& corpus);

// Tab-separated "sentence-id<TAB>token-index<TAB>romanization" rows.
using TransliterationMap = std::map<std::pair<std::string, std::size_t>, std::string>;
TransliterationMap parse_transliterations(std::string_view text, std::string_view source = "<translit>");
// Returns the number of tokens that received a romanization.
std::size_t apply_transliterations(Corpus& corpus, const TransliterationMap& map);

// ---- parallel data -------------------------------------------------------

struct ParallelPair {
  std::string id;  // "pair<N>", 1-based
  Sentence source;  // L1 (English) side
  Sentence target;  // L2 side
  std::set<std::pair<std::size_t, std::size_t>> alignment;  // 0-based (src, tgt)
};

// Pairs sentence i of `source` with sentence i of `target`. Throws on a
// sentence count mismatch.
std::vector<ParallelPair> make_pairs(const Corpus& source, const Corpus& target);

// Plain whitespace-tokenized text, one sentence per line. Lemmas are the
// lower-cased forms; no POS or morphology.
Corpus parse_plain_text(std::string_view text, std::string_view id_prefix = "s");

// One Pharaoh line ("i-j i-j ...") per pair, attached in order.
void parse_alignments(std::string_view text, std::vector<ParallelPair>& pairs,
                      std::string_view source = "<alignments>");

// ---- lexical taxonomy ----------------------------------------------------

struct TaxonomyResource {
  std::map<std::string, std::vector<std::string>> hypernyms;  // child -> parents
  std::map<std::string, std::set<std::string>> sense_lemmas;
  std::set<std::pair<std::string, std::string>> antonym_pairs;  // stored ordered (a < b)
  std::map<std::string, std::set<std::string>> lemma_senses;    // reverse index

  bool empty() const { return sense_lemmas.empty() && hypernyms.empty(); }
  bool has_sense(const std::string& sense) const { return sense_lemmas.count(sense) != 0; }
  // Transitive hypernym closure, excluding `sense` itself.
  std::set<std::string> ancestors(const std::string& sense) const;
  std::set<std::string> antonyms_of(const std::string& sense) const;
};

// Any argument may be empty. Throws on a hypernym cycle (message lists the
// cycle) or on an edge or antonym row naming a sense absent from senses.tsv.
TaxonomyResource parse_taxonomy(std::string_view hypernyms_tsv, std::string_view senses_tsv,
                                std::string_view antonyms_tsv);

struct SenseKey {
  std::string pair_id;
  std::size_t token = 0;  // 0-based, as in the alignments
  auto operator<=>(const SenseKey&) const = default;
};

struct SenseAnnotations {
  std::map<SenseKey, std::string> senses;
  std::vector<std::string> warnings;
};

// Rows "pair-id<TAB>token-index<TAB>sense-id". Unknown senses are skipped
// with a warning when `taxonomy` is non-empty.
SenseAnnotations parse_senses(std::string_view text, const TaxonomyResource& taxonomy,
                              std::string_view source = "<senses>");

}  // namespace gramex
