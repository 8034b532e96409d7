#pragma once
// "General information" summaries: which morphological attributes the
// language marks, with what values, on which word classes, ordered by
// frequency.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "gramex/corpus.hpp"

namespace gramex {

struct FormExample {
  std::string form;
  std::size_t count = 0;
  std::string sentence;   // id of the shortest sentence containing the form with this value
  std::size_t token = 0;  // 1-based
};

struct ValueSummary {
  std::string value;
  std::size_t count = 0;
  std::map<std::string, std::size_t> pos;  // UPOS -> tokens
  std::vector<FormExample> examples;
};

struct MorphSummary {
  std::string attribute;
  std::size_t total = 0;
  std::vector<ValueSummary> values;  // count descending, ties by value
};

struct GenInfoConfig {
  std::size_t max_examples = 3;
  std::size_t min_attribute_count = 5;
};

// Attributes ordered by total count (descending, ties by name).
std::vector<MorphSummary> summarize_morphology(const Corpus& corpus, const GenInfoConfig& config = {});

}  // namespace gramex
