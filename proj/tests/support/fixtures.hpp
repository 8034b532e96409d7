#pragma once
// Synthetic corpora with planted regularities, used by the tests, the
// acceptance runner and the gramex-fixtures tool.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gramex/corpus.hpp"
#include "gramex/featurize.hpp"

namespace gramex::fixtures {

// A small Marathi-like treebank in Devanagari (romanization in MISC
// Translit=, English in "# text_en"). Every tenth sentence asks about its
// object, which then follows the verb; everywhere else the object precedes
// the verb. About one sentence in twenty asks about its subject instead.
// Adjectives agree with their noun in gender 95% of the time.
std::string planted_word_order_conllu(std::size_t sentences = 2000, std::uint64_t seed = 1);
Corpus planted_word_order(std::size_t sentences = 2000, std::uint64_t seed = 1);

// Sentences "ADJ NOUN VERB" giving one amod and one obj pair each. Gender
// matches in 95% of amod pairs and in 50% of obj pairs; nothing else varies.
Corpus planted_agreement(std::size_t sentences = 400);

// Nouns in the dative take -laa, in the ergative -ne.
Corpus planted_suffixes(std::size_t sentences = 400, std::uint64_t seed = 3);

struct ParallelFixture {
  std::string source_conllu;  // English
  std::string target_conllu;  // L2
  std::string alignments;     // Pharaoh, one line per pair
  std::string hypernyms;      // taxonomy exports
  std::string senses;
  std::string antonyms;
  std::string sense_annotations;
  std::vector<ParallelPair> pairs;  // parsed and aligned
};

// "rice" is translated tandul when it is raw (40% of pairs) and bhaat
// otherwise.
ParallelFixture planted_lexsel(std::size_t pairs = 250, std::uint64_t seed = 5);

// label = a XOR b over features "x:a=1" and "x:b=1"; rows split evenly over
// the four combinations.
std::vector<Instance> xor_instances(std::size_t rows = 400);
std::vector<Instance> single_class_instances(std::size_t rows = 200);

// Writes treebank.conllu, translit.tsv, en.conllu, l2.conllu, align.txt,
// hypernyms.tsv, senses.tsv, antonyms.tsv, sense_annotations.tsv and a
// config.json that uses them all. Returns the config path.
std::filesystem::path write_fixture_dir(const std::filesystem::path& dir, std::uint64_t seed = 7,
                                        std::size_t sentences = 2000);

}  // namespace gramex::fixtures
