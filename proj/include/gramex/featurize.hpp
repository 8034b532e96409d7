#pragma once
// Categorical context features for (head, dependent) pairs and their one-hot
// encoding.
//
// A feature is an atom "name=value", e.g. "dep:Gender=Fem" or "deprel=obj".
// Atoms are stored sorted and unique so an instance's feature set has a
// single canonical form.

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gramex/corpus.hpp"

namespace gramex {

struct FeatureTemplate {
  bool use_lemmas = true;
  std::size_t max_lemmas = 500;
  bool use_neighbor_pos = true;
  bool use_codependents = true;
  bool use_sentence_flags = true;
  // Morphological attributes never emitted (e.g. the attribute an agreement
  // task predicts).
  std::set<std::string> excluded_attributes;
};

// Top-K most frequent lemmas; ties broken lexicographically.
class LemmaVocabulary {
 public:
  LemmaVocabulary() = default;
  static LemmaVocabulary build(const Corpus& corpus, std::size_t max_lemmas);
  bool contains(const std::string& lemma) const { return lemmas_.count(lemma) != 0; }
  std::size_t size() const { return lemmas_.size(); }
  void insert(std::string lemma) { lemmas_.insert(std::move(lemma)); }

 private:
  std::set<std::string> lemmas_;
};

using FeatureSet = std::vector<std::string>;

// Sorts and deduplicates.
void canonicalize(FeatureSet& features);
std::string atom(std::string_view name, std::string_view value);

// Context features for the arc head -> dep (1-based token indices).
FeatureSet extract_context_features(const Sentence& sentence, std::size_t head_index, std::size_t dep_index,
                                    const FeatureTemplate& tmpl, const LemmaVocabulary& lemmas);

// Where an instance came from. `head` and `dep` are 1-based token indices in
// treebank sentences; for parallel data they are 0-based source/target
// indices and `sentence` is the pair id.
struct Provenance {
  std::string sentence;
  std::size_t head = 0;
  std::size_t dep = 0;
  std::size_t length = 0;  // tokens in the sentence, for shortest-first ordering
  std::size_t order = 0;   // position of the sentence in its corpus
};

struct Instance {
  FeatureSet features;
  std::string label;
  Provenance provenance;

  bool has(std::string_view feature) const;
};

class FeatureVocabulary {
 public:
  FeatureVocabulary() = default;
  explicit FeatureVocabulary(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t column) const { return names_.at(column); }
  const std::vector<std::string>& names() const { return names_; }
  // -1 when absent.
  long index(std::string_view name) const;

 private:
  std::vector<std::string> names_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

// Lexicographically ordered union of all instance features. Throws on empty input.
FeatureVocabulary build_vocabulary(std::span<const Instance> instances);

// Dense 0/1 matrix, row-major.
class BinaryMatrix {
 public:
  BinaryMatrix() = default;
  BinaryMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint8_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::uint8_t v) { data_[r * cols_ + c] = v; }
  std::span<const std::uint8_t> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::vector<float> row_as_float(std::size_t r) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> data_;
};

struct Design {
  BinaryMatrix X;
  std::vector<std::string> labels;
};

// Features not in `vocab` are dropped; row order follows `instances`.
Design vectorize(std::span<const Instance> instances, const FeatureVocabulary& vocab);

}  // namespace gramex
