#pragma once
// Morphological agreement as binary match/mismatch classification.

#include <set>
#include <string>
#include <vector>

#include "gramex/corpus.hpp"
#include "gramex/tasks.hpp"

namespace gramex {

struct AgreementTask {
  std::string attribute;  // e.g. "Gender"
  std::set<std::string> deprels{"nsubj", "obj", "amod", "det"};

  void validate() const;
};

std::vector<AgreementTask> default_agreement_tasks();  // Gender, Person

// Pairs yield an instance only when both tokens carry the attribute; the label
// is "1" when the values are equal, else "0". The attribute itself is kept out
// of the feature set.
std::vector<Instance> extract_agreement_instances(const Corpus& corpus, const AgreementTask& task,
                                                  const FeatureTemplate& tmpl, const LemmaVocabulary& lemmas);

// Leaves are tested against the empirical training distribution and only
// majority-"1" leaves can become rules.
TreeTaskResult run_agreement_task(const Corpus& corpus, const AgreementTask& task, const TaskSettings& settings,
                                  const Glossary& glossary, const LemmaVocabulary& lemmas);

}  // namespace gramex
